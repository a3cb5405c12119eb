//! Corpus loading: embedded fixtures by default, graph6 or planar_code
//! files on request, with format sniffing for `auto`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use cyclespec::codec::{parse_graph6, parse_planar_code};
use cyclespec::embed::Embedding;
use cyclespec::fixtures;
use cyclespec::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Graph6,
    #[value(name = "planar_code", alias = "planar-code")]
    PlanarCode,
}

/// One graph to verify, with its provenance and, when the source carries
/// one, its embedding.
pub struct CorpusItem {
    pub file: String,
    pub ordinal: usize,
    pub name: Option<String>,
    pub graph: Graph,
    pub embedding: Option<Embedding>,
    pub fixture: bool,
}

#[derive(Debug)]
pub enum LoadError {
    Io(PathBuf, std::io::Error),
    Malformed(PathBuf, usize, String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            LoadError::Malformed(path, ordinal, msg) => {
                write!(f, "{} record {ordinal}: {msg}", path.display())
            }
        }
    }
}

/// Loads all inputs in order; with no inputs, the three embedded fixtures.
pub fn load(inputs: &[PathBuf], format: Format) -> Result<Vec<CorpusItem>, LoadError> {
    if inputs.is_empty() {
        return Ok(fixtures::all()
            .into_iter()
            .enumerate()
            .map(|(ordinal, (name, graph, embedding))| CorpusItem {
                file: "fixtures".into(),
                ordinal,
                name: Some(name.into()),
                graph,
                embedding: Some(embedding),
                fixture: true,
            })
            .collect());
    }
    let mut items = Vec::new();
    for path in inputs {
        let bytes = fs::read(path).map_err(|e| LoadError::Io(path.clone(), e))?;
        let file = path.display().to_string();
        match resolve_format(path, &bytes, format) {
            Format::Graph6 => {
                let text = String::from_utf8_lossy(&bytes);
                let mut ordinal = 0;
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line == ">>graph6<<" {
                        continue;
                    }
                    let graph = parse_graph6(line)
                        .map_err(|e| LoadError::Malformed(path.clone(), ordinal, e.to_string()))?;
                    items.push(CorpusItem {
                        file: file.clone(),
                        ordinal,
                        name: None,
                        graph,
                        embedding: None,
                        fixture: false,
                    });
                    ordinal += 1;
                }
            }
            Format::PlanarCode => {
                let records = parse_planar_code(&bytes)
                    .map_err(|e| LoadError::Malformed(path.clone(), 0, e.to_string()))?;
                for (ordinal, (graph, embedding)) in records.into_iter().enumerate() {
                    items.push(CorpusItem {
                        file: file.clone(),
                        ordinal,
                        name: None,
                        graph,
                        embedding: Some(embedding),
                        fixture: false,
                    });
                }
            }
            Format::Auto => unreachable!("resolve_format returns a concrete format"),
        }
    }
    Ok(items)
}

fn resolve_format(path: &Path, bytes: &[u8], format: Format) -> Format {
    if format != Format::Auto {
        return format;
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => return Format::Graph6,
        Some("pc") | Some("plc") => return Format::PlanarCode,
        _ => {}
    }
    if bytes.starts_with(b">>planar_code<<") {
        return Format::PlanarCode;
    }
    if bytes.starts_with(b">>graph6<<") {
        return Format::Graph6;
    }
    // graph6 payloads are printable ASCII plus line breaks; planar_code is
    // a binary stream.
    if bytes
        .iter()
        .all(|&b| (0x3f..=0x7e).contains(&b) || b == b'\n' || b == b'\r')
    {
        Format::Graph6
    } else {
        Format::PlanarCode
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclespec::codec::{write_graph6, write_planar_code};
    use std::io::Write;

    #[test]
    fn default_corpus_is_the_fixture_set() {
        let items = load(&[], Format::Auto).unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].name.as_deref(), Some("k4"));
        assert!(items.iter().all(|i| i.fixture && i.embedding.is_some()));
    }

    #[test]
    fn graph6_files_load_line_by_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        let g = fixtures::cube().0;
        writeln!(f, ">>graph6<<").unwrap();
        writeln!(f, "{}", write_graph6(&g)).unwrap();
        writeln!(f, "{}", write_graph6(&fixtures::k4().0)).unwrap();
        let items = load(&[f.path().to_path_buf()], Format::Auto).unwrap();
        assert_eq!(items.len(), 2);
        assert_eq!(items[0].graph, g);
        assert_eq!(items[1].ordinal, 1);
        assert!(items.iter().all(|i| !i.fixture && i.embedding.is_none()));
    }

    #[test]
    fn planar_code_files_carry_embeddings() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        let (g, emb) = fixtures::k4();
        f.write_all(&write_planar_code(&[(g.clone(), emb)])).unwrap();
        let items = load(&[f.path().to_path_buf()], Format::Auto).unwrap();
        assert_eq!(items.len(), 1);
        assert_eq!(items[0].graph, g);
        assert!(items[0].embedding.is_some());
    }

    #[test]
    fn missing_files_error_cleanly() {
        let err = load(&[PathBuf::from("/nonexistent/corpus.g6")], Format::Auto);
        assert!(matches!(err, Err(LoadError::Io(_, _))));
    }
}
