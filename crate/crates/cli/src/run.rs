//! Command implementations: corpus screening, per-result verification
//! suites, generated-input suites, and the tightness survey.

use std::collections::BTreeMap;
use std::error::Error;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use cyclespec::acyclic::{acyclic_spanning_subdigraph, degrees_retained, is_acyclic};
use cyclespec::connectivity::{is_cyclically_4ec, is_k_connected};
use cyclespec::cycles::{
    hamilton_cycles, tel_conditions_hold, tel_witness, Budget, CycleError, DEFAULT_NODE_BUDGET,
};
use cyclespec::embed::{compute_embedding, Embedding};
use cyclespec::fixtures;
use cyclespec::pipeline::{
    proposition_pair_report, replay_theorem, required_lengths, tightness_scan, Mode, TheoremReplay,
};
use cyclespec::triangles::{compute_s_map, extend_by_lambda, maximal_lambda};
use cyclespec::{Digraph, Graph};

use crate::corpus::{self, CorpusItem, Format};
use crate::report::{digest, exit_code, CheckResult, Predicates, Record, Sink, Verdict};

const CHECK_NAMES: [&str; 6] = [
    "proposition",
    "theorem",
    "triangle-identities",
    "lambda-bound",
    "circumference-bound",
    "tel-oracle",
];

#[derive(Subcommand)]
pub enum Command {
    /// Screen a corpus and run the selected per-graph checks.
    Check(CheckArgs),
    /// Verify interval witnesses for every reduced graph and even window.
    VerifyProposition(CorpusArgs),
    /// Certify avoidance cycles of every required length per line-graph vertex.
    VerifyTheorem(TheoremArgs),
    /// Survey worst interval ratios over corpus graphs and their reductions.
    TightnessScan(CorpusArgs),
    /// Check acyclic-subdigraph postconditions on generated digraphs.
    VerifyLemma(LemmaArgs),
    /// Search three-edge cycle witnesses across small plane graphs.
    VerifyTel(TelArgs),
}

#[derive(Args)]
pub struct CorpusArgs {
    /// Corpus file to verify; repeatable. Embedded fixtures when omitted.
    #[arg(long = "input", value_name = "PATH")]
    pub input: Vec<PathBuf>,
    /// Input format.
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    /// Node-expansion budget per search task.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Seed for randomized generation.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Limit the number of adjacent pairs examined per graph.
    #[arg(long, value_name = "N")]
    pub max_pairs: Option<usize>,
    /// Limit the number of forbidden vertices examined per line graph.
    #[arg(long, value_name = "N")]
    pub max_vertices: Option<usize>,
    /// Write the JSON-lines report here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a CSV summary here.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Omit per-record timings; reports become byte-reproducible.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Comma-separated list of checks to run, or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub verify: Vec<String>,
}

#[derive(Args)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Witness derivation: structural phases, or direct search per length.
    #[arg(long, value_enum, default_value_t = ModeArg::Constructive)]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Constructive,
    Oracle,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Constructive => Mode::Constructive,
            ModeArg::Oracle => Mode::Oracle,
        }
    }
}

#[derive(Args)]
pub struct LemmaArgs {
    /// Number of seeded random digraphs; 0 produces an empty report.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    /// Largest random digraph order.
    #[arg(long, default_value_t = 9)]
    pub max_n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Args)]
pub struct TelArgs {
    /// Largest vertex count for the exhaustive plane-graph sweep.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Node-expansion budget per witness search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub no_timings: bool,
}

pub fn dispatch(command: Command) -> i32 {
    let outcome = match command {
        Command::Check(args) => cmd_check(args),
        Command::VerifyProposition(args) => cmd_verify_proposition(args),
        Command::VerifyTheorem(args) => cmd_verify_theorem(args),
        Command::TightnessScan(args) => cmd_tightness_scan(args),
        Command::VerifyLemma(args) => cmd_verify_lemma(args),
        Command::VerifyTel(args) => cmd_verify_tel(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn predicates(g: &Graph) -> Predicates {
    Predicates {
        cubic: g.is_cubic(),
        planar: compute_embedding(g).is_ok(),
        three_connected: is_k_connected(g, 3),
        cyclically_4ec: is_cyclically_4ec(g).unwrap_or(false),
        girth: g.girth(),
    }
}

fn disqualifier(p: &Predicates) -> Option<&'static str> {
    if !p.cubic {
        Some("not cubic")
    } else if !p.planar {
        Some("not planar")
    } else if !p.three_connected {
        Some("not 3-connected")
    } else if !p.cyclically_4ec {
        Some("not cyclically 4-edge-connected")
    } else {
        None
    }
}

/// Record skeleton with predicates; `None` in the second slot means the
/// graph qualifies for verification.
fn base_record(command: &str, item: &CorpusItem) -> (Record, bool) {
    let mut rec = Record::new(command, &item.file, item.ordinal);
    rec.name = item.name.clone();
    rec.n = Some(item.graph.n());
    rec.m = Some(item.graph.m());
    let p = predicates(&item.graph);
    let dq = disqualifier(&p);
    rec.predicates = Some(p);
    if let Some(reason) = dq {
        rec.skip_reason = Some(format!("precondition: {reason}"));
    }
    (rec, dq.is_none())
}

fn embedding_for(item: &CorpusItem) -> Embedding {
    item.embedding
        .clone()
        .unwrap_or_else(|| compute_embedding(&item.graph).expect("qualifying graphs are planar"))
}

/// Default sampling: exhaustive on fixtures, first four units on ingested
/// graphs with more than 20 base vertices.
fn sample_limit(explicit: Option<usize>, item: &CorpusItem) -> Option<usize> {
    explicit.or(if !item.fixture && item.graph.n() > 20 {
        Some(4)
    } else {
        None
    })
}

fn take_limited<T>(mut items: Vec<T>, limit: Option<usize>) -> Vec<T> {
    if let Some(k) = limit {
        items.truncate(k);
    }
    items
}

fn summarize(records: &[Record]) -> String {
    let count = |v: Verdict| records.iter().filter(|r| r.status == v).count();
    format!(
        "summary: {} records, {} pass, {} skip, {} failure, {} budget",
        records.len(),
        count(Verdict::Pass),
        count(Verdict::Skip),
        count(Verdict::Failure),
        count(Verdict::Budget)
    )
}

fn emit(args_json: Option<&PathBuf>, args_csv: Option<&PathBuf>, timings: bool, records: Vec<Record>) -> Result<i32, Box<dyn Error>> {
    let mut sink = Sink::new(args_json.map(|p| p.as_path()), args_csv.map(|p| p.as_path()), timings)?;
    let mut records = records;
    for rec in &mut records {
        sink.write(rec)?;
    }
    sink.finish()?;
    println!("{}", summarize(&records));
    Ok(exit_code(&records))
}

/// Shared corpus-command scaffold: load, verify each item in parallel,
/// emit in corpus order.
fn run_over_corpus(
    args: &CorpusArgs,
    per_item: impl Fn(&CorpusItem) -> Record + Sync,
) -> Result<i32, Box<dyn Error>> {
    let items = corpus::load(&args.input, args.format).map_err(|e| e.to_string())?;
    let records: Vec<Record> = items
        .par_iter()
        .map(|item| {
            let start = Instant::now();
            let mut rec = per_item(item);
            rec.timing_ms = Some(start.elapsed().as_millis());
            rec
        })
        .collect();
    emit(args.json.as_ref(), args.csv.as_ref(), !args.no_timings, records)
}

// ---- check ----------------------------------------------------------

fn cmd_check(args: CheckArgs) -> Result<i32, Box<dyn Error>> {
    let selected = resolve_checks(&args.verify)?;
    let corpus_args = &args.corpus;
    run_over_corpus(corpus_args, |item| {
        let (mut rec, qualifies) = base_record("check", item);
        if !qualifies {
            rec.settle_status();
            return rec;
        }
        let emb = embedding_for(item);
        let run_theorem = selected.contains(&"theorem") || selected.contains(&"lambda-bound");
        let replays = if run_theorem {
            Some(theorem_replays(item, corpus_args, &emb, Mode::Constructive))
        } else {
            None
        };
        for &check in &selected {
            let result = match check {
                "proposition" => proposition_check(item, corpus_args),
                "theorem" => theorem_summary(item, replays.as_ref().unwrap()).0,
                "triangle-identities" => triangle_identities_check(item, corpus_args, 60),
                "lambda-bound" => lambda_check(item, replays.as_ref().unwrap()),
                "circumference-bound" => circumference_bound_check(item, corpus_args),
                "tel-oracle" => tel_oracle_check(item, corpus_args, &emb),
                _ => unreachable!("validated above"),
            };
            rec.checks.push(result);
        }
        rec.settle_status();
        rec
    })
}

fn resolve_checks(requested: &[String]) -> Result<Vec<&'static str>, Box<dyn Error>> {
    if requested.iter().any(|s| s == "all") {
        return Ok(CHECK_NAMES.to_vec());
    }
    let mut out = Vec::new();
    for name in requested {
        match CHECK_NAMES.iter().find(|&&c| c == name) {
            Some(&c) => {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            None => {
                return Err(format!(
                    "unknown check {name:?}; expected one of {} or \"all\"",
                    CHECK_NAMES.join(", ")
                )
                .into())
            }
        }
    }
    Ok(out)
}

type ReplayResults = Vec<(usize, Result<TheoremReplay, CycleError>)>;

fn theorem_replays(
    item: &CorpusItem,
    args: &CorpusArgs,
    emb: &Embedding,
    mode: Mode,
) -> ReplayResults {
    let line_n = 3 * item.graph.n() / 2;
    let vertices = take_limited((0..line_n).collect(), sample_limit(args.max_vertices, item));
    vertices
        .par_iter()
        .map(|&v| {
            let mut budget = Budget::new(args.budget);
            (v, replay_theorem(&item.graph, emb, v, mode, &mut budget))
        })
        .collect()
}

/// Aggregates replay outcomes into one check result plus machine data.
fn theorem_summary(item: &CorpusItem, replays: &ReplayResults) -> (CheckResult, serde_json::Value) {
    let (g, _) = item.graph.line_graph();
    let mut phases: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut failures: Vec<String> = Vec::new();
    let mut budget_hit = false;
    let mut digest_parts = Vec::new();
    let mut lengths_each = 0;
    for (v, outcome) in replays {
        match outcome {
            Err(CycleError::BudgetExceeded(_)) => budget_hit = true,
            Err(e) => failures.push(format!("vertex {v}: {e}")),
            Ok(replay) => {
                lengths_each = required_lengths(replay.n).len();
                for (l, w) in &replay.witnesses {
                    let valid = w.cycle.validate(&g).is_ok()
                        && !w.cycle.contains_vertex(*v)
                        && w.cycle.len() == *l;
                    if !valid {
                        failures.push(format!("vertex {v} length {l}: witness failed revalidation"));
                        continue;
                    }
                    *phases.entry(w.phase.name()).or_insert(0) += 1;
                    digest_parts.push(format!("v={v} l={l} c={}", w.cycle));
                }
                for (l, msg) in &replay.failures {
                    failures.push(format!("vertex {v} length {l}: {msg}"));
                }
            }
        }
    }
    let data = json!({
        "vertices": replays.len(),
        "lengths_each": lengths_each,
        "phases": phases,
    });
    let verdict = if !failures.is_empty() {
        Verdict::Failure
    } else if budget_hit {
        Verdict::Budget
    } else {
        Verdict::Pass
    };
    let detail = if failures.is_empty() {
        let phase_text = phases
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "vertices={} lengths-each={lengths_each} {phase_text}",
            replays.len()
        )
    } else {
        let mut text = failures[..failures.len().min(3)].join("; ");
        if failures.len() > 3 {
            text.push_str(&format!("; and {} more", failures.len() - 3));
        }
        text
    };
    let check = CheckResult::new("theorem", verdict, detail).with_digest(digest(digest_parts));
    (check, data)
}

fn proposition_check(item: &CorpusItem, args: &CorpusArgs) -> CheckResult {
    let y = &item.graph;
    if y.girth().is_none_or(|g| g < 4) {
        return CheckResult::new(
            "proposition",
            Verdict::Skip,
            "girth below 4 violates the interval precondition",
        );
    }
    let pairs = take_limited(y.edges(), sample_limit(args.max_pairs, item));
    let reports: Vec<_> = pairs
        .par_iter()
        .map(|e| {
            let mut budget = Budget::new(args.budget);
            proposition_pair_report(y, (e.u(), e.v()), &mut budget)
        })
        .collect();
    let mut windows = 0;
    let mut failures = Vec::new();
    let mut budget_hit = false;
    let mut digest_parts = Vec::new();
    for (e, outcome) in pairs.iter().zip(&reports) {
        match outcome {
            Err(CycleError::BudgetExceeded(_)) => budget_hit = true,
            Err(err) => failures.push(format!("pair {e}: {err}")),
            Ok(report) => {
                windows += report.checks.len();
                for (k, witness) in &report.checks {
                    match witness {
                        Some(c)
                            if c.validate(y).is_ok() && c.len() >= *k && 2 * c.len() <= 3 * k =>
                        {
                            digest_parts.push(format!("pair={e} k={k} c={c}"));
                        }
                        Some(c) => failures
                            .push(format!("pair {e} window {k}: witness length {}", c.len())),
                        None => failures.push(format!("pair {e} window {k}: no witness")),
                    }
                }
            }
        }
    }
    let verdict = if !failures.is_empty() {
        Verdict::Failure
    } else if budget_hit {
        Verdict::Budget
    } else {
        Verdict::Pass
    };
    let detail = if failures.is_empty() {
        format!("pairs={} windows={windows}", pairs.len())
    } else {
        failures[..failures.len().min(3)].join("; ")
    };
    CheckResult::new("proposition", verdict, detail).with_digest(digest(digest_parts))
}

fn triangle_identities_check(item: &CorpusItem, args: &CorpusArgs, limit: usize) -> CheckResult {
    let (g, lmap) = item.graph.line_graph();
    let mut budget = Budget::new(args.budget);
    let cycles = match hamilton_cycles(&g, limit, &mut budget) {
        Ok(c) => c,
        Err(CycleError::BudgetExceeded(_)) => {
            return CheckResult::new("triangle-identities", Verdict::Budget, "enumeration cut off")
        }
        Err(e) => return CheckResult::new("triangle-identities", Verdict::Failure, e.to_string()),
    };
    if cycles.is_empty() {
        return CheckResult::new(
            "triangle-identities",
            Verdict::Failure,
            "no Hamilton cycle found in the line graph",
        );
    }
    let mut digest_parts = Vec::new();
    for c in &cycles {
        match cyclespec::triangles::classify_triangles(&lmap, c) {
            Ok(cl) if cl.identities_hold() => {
                let [t0, t1, t2] = cl.tau();
                digest_parts.push(format!("c={c} tau={t0},{t1},{t2}"));
            }
            Ok(cl) => {
                return CheckResult::new(
                    "triangle-identities",
                    Verdict::Failure,
                    format!("identities fail for {c}: tau={:?}", cl.tau()),
                )
            }
            Err(e) => {
                return CheckResult::new("triangle-identities", Verdict::Failure, e.to_string())
            }
        }
    }
    CheckResult::new(
        "triangle-identities",
        Verdict::Pass,
        format!("cycles={}", cycles.len()),
    )
    .with_digest(digest(digest_parts))
}

fn lambda_check(item: &CorpusItem, replays: &ReplayResults) -> CheckResult {
    let y = &item.graph;
    let (g, lmap) = y.line_graph();
    let mut witnesses = 0;
    let mut extensions = 0;
    let mut digest_parts = Vec::new();
    for (v, outcome) in replays {
        let Ok(replay) = outcome else { continue };
        for ev in &replay.evidence {
            witnesses += 1;
            let smap = match compute_s_map(&lmap, &ev.lifted) {
                Ok(s) => s,
                Err(e) => {
                    return CheckResult::new(
                        "lambda-bound",
                        Verdict::Failure,
                        format!("vertex {v}: {e}"),
                    )
                }
            };
            // Duplication law: each third vertex appears once or twice,
            // twice exactly when its base edge is a chord of the base cycle.
            let chords: Vec<_> = y
                .edges()
                .into_iter()
                .filter(|&e| {
                    ev.base_cycle.contains_vertex(e.u())
                        && ev.base_cycle.contains_vertex(e.v())
                        && !ev.base_cycle.contains_edge(e)
                })
                .collect();
            let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
            for &(_, s) in smap.entries() {
                *mult.entry(s).or_insert(0) += 1;
            }
            for (&s, &m) in &mult {
                let is_chord = chords.contains(&lmap.edge_of(s));
                let expected = if is_chord { 2 } else { 1 };
                if m != expected {
                    return CheckResult::new(
                        "lambda-bound",
                        Verdict::Failure,
                        format!("vertex {v}: third vertex {s} appears {m} times, expected {expected}"),
                    );
                }
            }
            let lambda = maximal_lambda(&smap);
            let l = ev.lifted.len();
            if ev.constrained && lambda.len() < (l + 3).div_ceil(2) {
                return CheckResult::new(
                    "lambda-bound",
                    Verdict::Failure,
                    format!("vertex {v}: lambda size {} below bound for length {l}", lambda.len()),
                );
            }
            // Every singleton extension plus the full set.
            let mut subsets: Vec<Vec<_>> = lambda.edges().iter().map(|&e| vec![e]).collect();
            subsets.push(lambda.edges().to_vec());
            for subset in subsets {
                match extend_by_lambda(&lmap, &ev.lifted, &subset) {
                    Ok(ext)
                        if ext.len() == l + subset.len() && ext.validate(&g).is_ok() =>
                    {
                        extensions += 1;
                        digest_parts.push(format!("v={v} ext={ext}"));
                    }
                    Ok(ext) => {
                        return CheckResult::new(
                            "lambda-bound",
                            Verdict::Failure,
                            format!("vertex {v}: extension length {}", ext.len()),
                        )
                    }
                    Err(e) => {
                        return CheckResult::new(
                            "lambda-bound",
                            Verdict::Failure,
                            format!("vertex {v}: {e}"),
                        )
                    }
                }
            }
        }
    }
    if witnesses == 0 {
        return CheckResult::new(
            "lambda-bound",
            Verdict::Skip,
            "no interval witnesses were collected",
        );
    }
    CheckResult::new(
        "lambda-bound",
        Verdict::Pass,
        format!("witnesses={witnesses} extensions={extensions}"),
    )
    .with_digest(digest(digest_parts))
}

fn circumference_bound_check(item: &CorpusItem, args: &CorpusArgs) -> CheckResult {
    let y = &item.graph;
    if y.girth().is_none_or(|g| g < 4) {
        return CheckResult::new(
            "circumference-bound",
            Verdict::Skip,
            "girth below 4 leaves acyclic pair deletions",
        );
    }
    let pairs = take_limited(y.edges(), sample_limit(args.max_pairs, item));
    let results: Vec<_> = pairs
        .par_iter()
        .map(|e| {
            let (h, _) = y.delete_vertices(&[e.u(), e.v()]);
            let mut budget = Budget::new(args.budget);
            (h.n(), cyclespec::cycles::circumference(&h, &mut budget))
        })
        .collect();
    let mut min_margin: Option<i64> = None;
    for (e, (h_n, outcome)) in pairs.iter().zip(&results) {
        let bound = (3 * h_n + 2).div_ceil(4);
        match outcome {
            Ok(circ) => {
                if circ < &bound {
                    return CheckResult::new(
                        "circumference-bound",
                        Verdict::Failure,
                        format!("pair {e}: circumference {circ} below bound {bound}"),
                    );
                }
                let margin = *circ as i64 - bound as i64;
                min_margin = Some(min_margin.map_or(margin, |m| m.min(margin)));
            }
            Err(CycleError::BudgetExceeded(_)) => {
                return CheckResult::new("circumference-bound", Verdict::Budget, format!("pair {e}"))
            }
            Err(err) => {
                return CheckResult::new(
                    "circumference-bound",
                    Verdict::Failure,
                    format!("pair {e}: {err}"),
                )
            }
        }
    }
    CheckResult::new(
        "circumference-bound",
        Verdict::Pass,
        format!(
            "pairs={} min-margin={}",
            pairs.len(),
            min_margin.unwrap_or(0)
        ),
    )
}

fn tel_oracle_check(item: &CorpusItem, args: &CorpusArgs, emb: &Embedding) -> CheckResult {
    let y = &item.graph;
    let mut digest_parts = Vec::new();
    for (i, face) in emb.faces().iter().enumerate() {
        if face.len() < 3 {
            continue;
        }
        let edges = face.edges();
        let triple = [
            edges[0],
            edges[edges.len() / 3],
            edges[2 * edges.len() / 3],
        ];
        let mut budget = Budget::new(args.budget);
        match tel_witness(y, emb, face, triple[0], triple[1], triple[2], &mut budget) {
            Ok(c) => {
                let ok = c.validate(y).is_ok()
                    && triple.iter().all(|&e| c.contains_edge(e))
                    && tel_conditions_hold(y, face, &c);
                if !ok {
                    return CheckResult::new(
                        "tel-oracle",
                        Verdict::Failure,
                        format!("face {i}: witness failed revalidation"),
                    );
                }
                digest_parts.push(format!("face={i} c={c}"));
            }
            Err(CycleError::BudgetExceeded(_)) => {
                return CheckResult::new("tel-oracle", Verdict::Budget, format!("face {i}"))
            }
            Err(e) => {
                return CheckResult::new("tel-oracle", Verdict::Failure, format!("face {i}: {e}"))
            }
        }
    }
    CheckResult::new(
        "tel-oracle",
        Verdict::Pass,
        format!("faces={}", emb.face_count()),
    )
    .with_digest(digest(digest_parts))
}

// ---- verify-proposition ---------------------------------------------

fn cmd_verify_proposition(args: CorpusArgs) -> Result<i32, Box<dyn Error>> {
    run_over_corpus(&args, |item| {
        let (mut rec, qualifies) = base_record("verify-proposition", item);
        if !qualifies {
            rec.settle_status();
            return rec;
        }
        if item.graph.girth().is_none_or(|g| g < 4) {
            rec.skip_reason = Some("precondition: girth below 4".into());
            rec.settle_status();
            return rec;
        }
        let check = proposition_check(item, &args);
        let pairs = take_limited(item.graph.edges(), sample_limit(args.max_pairs, item));
        let mut rows = Vec::new();
        for e in &pairs {
            let mut budget = Budget::new(args.budget);
            if let Ok(report) = proposition_pair_report(&item.graph, (e.u(), e.v()), &mut budget) {
                rows.push(json!({
                    "pair": [e.u(), e.v()],
                    "h_n": report.h_vertex_count,
                    "circumference": report.circumference,
                    "windows": report
                        .checks
                        .iter()
                        .map(|(k, w)| json!({"k": k, "witness_len": w.as_ref().map(|c| c.len())}))
                        .collect::<Vec<_>>(),
                }));
            }
        }
        rec.data = Some(json!({ "pairs": rows }));
        rec.checks.push(check);
        rec.settle_status();
        rec
    })
}

// ---- verify-theorem --------------------------------------------------

fn cmd_verify_theorem(args: TheoremArgs) -> Result<i32, Box<dyn Error>> {
    let mode: Mode = args.mode.into();
    let corpus_args = &args.corpus;
    run_over_corpus(corpus_args, |item| {
        let (mut rec, qualifies) = base_record("verify-theorem", item);
        if !qualifies {
            rec.settle_status();
            return rec;
        }
        let emb = embedding_for(item);
        let replays = theorem_replays(item, corpus_args, &emb, mode);
        let (check, mut data) = theorem_summary(item, &replays);
        // Length 4 sits outside the required set; record whether the line
        // graph has one at all (absent exactly when the base girth is 5).
        let (line, _) = item.graph.line_graph();
        let mut probe = Budget::new(corpus_args.budget);
        let four_cycle = cyclespec::cycles::find_cycle_of_length(&line, 4, None, &mut probe)
            .ok()
            .map(|w| w.is_some());
        data["four_cycle_present"] = json!(four_cycle);
        rec.checks.push(check);
        rec.data = Some(data);
        rec.settle_status();
        rec
    })
}

// ---- tightness-scan ---------------------------------------------------

fn cmd_tightness_scan(args: CorpusArgs) -> Result<i32, Box<dyn Error>> {
    run_over_corpus(&args, |item| {
        let (mut rec, qualifies) = base_record("tightness-scan", item);
        if !qualifies {
            rec.settle_status();
            return rec;
        }
        let y = &item.graph;
        let mut targets: Vec<(String, Graph)> = vec![("self".into(), y.clone())];
        for e in take_limited(y.edges(), sample_limit(args.max_pairs, item)) {
            let (h, _) = y.delete_vertices(&[e.u(), e.v()]);
            targets.push((format!("pair:{}-{}", e.u(), e.v()), h));
        }
        let scans: Vec<_> = targets
            .par_iter()
            .map(|(_, g)| {
                let mut budget = Budget::new(args.budget);
                tightness_scan(g, &mut budget)
            })
            .collect();
        let mut rows = Vec::new();
        let mut worst: Option<(usize, usize)> = None;
        let mut flagged = 0usize;
        let mut budget_hit = false;
        for ((target, _), scan) in targets.iter().zip(&scans) {
            match scan {
                Err(CycleError::BudgetExceeded(_)) => budget_hit = true,
                Err(_) => {}
                Ok(report) => {
                    if report.counterexample {
                        flagged += 1;
                    }
                    if let Some((m, k)) = report.worst {
                        if worst.is_none_or(|(wm, wk)| m * wk > wm * k) {
                            worst = Some((m, k));
                        }
                    }
                    rows.push(json!({
                        "target": target,
                        "spectrum": report.spectrum,
                        "rows": report.rows,
                        "worst": report.worst,
                        "counterexample": report.counterexample,
                    }));
                }
            }
        }
        let verdict = if budget_hit { Verdict::Budget } else { Verdict::Pass };
        let detail = match worst {
            Some((m, k)) => format!(
                "targets={} worst-ratio={m}/{k} counterexamples={flagged}",
                targets.len()
            ),
            None => format!("targets={} no windows", targets.len()),
        };
        rec.checks.push(CheckResult::new("tightness", verdict, detail));
        rec.data = Some(json!({ "targets": rows }));
        rec.settle_status();
        rec
    })
}

// ---- verify-lemma ------------------------------------------------------

fn cmd_verify_lemma(args: LemmaArgs) -> Result<i32, Box<dyn Error>> {
    let mut records = Vec::new();
    if args.count > 0 {
        let start = Instant::now();
        let mut rec = Record::new("verify-lemma", "generated", 0);
        rec.name = Some("exhaustive-small".into());
        let mut checked = 0usize;
        let mut failed = 0usize;
        for n in 0..=3usize {
            for d in all_small_digraphs(n) {
                checked += 1;
                if !lemma_postconditions(&d) {
                    failed += 1;
                }
            }
        }
        let verdict = if failed == 0 { Verdict::Pass } else { Verdict::Failure };
        rec.checks.push(CheckResult::new(
            "lemma",
            verdict,
            format!("checked={checked} failed={failed}"),
        ));
        rec.data = Some(json!({"checked": checked, "failed": failed}));
        rec.timing_ms = Some(start.elapsed().as_millis());
        rec.settle_status();
        records.push(rec);

        let start = Instant::now();
        let mut rec = Record::new("verify-lemma", "generated", 1);
        rec.name = Some("seeded-random".into());
        let digraphs = random_digraphs(args.seed, args.count, args.max_n);
        let failures: usize = digraphs
            .par_iter()
            .map(|d| usize::from(!lemma_postconditions(d)))
            .sum();
        let verdict = if failures == 0 { Verdict::Pass } else { Verdict::Failure };
        rec.checks.push(CheckResult::new(
            "lemma",
            verdict,
            format!("checked={} failed={failures}", digraphs.len()),
        ));
        rec.data = Some(json!({"checked": digraphs.len(), "failed": failures, "seed": args.seed}));
        rec.timing_ms = Some(start.elapsed().as_millis());
        rec.settle_status();
        records.push(rec);
    }
    emit(args.json.as_ref(), args.csv.as_ref(), !args.no_timings, records)
}

fn lemma_postconditions(d: &Digraph) -> bool {
    let sub = acyclic_spanning_subdigraph(d);
    if sub.n() != d.n() || !is_acyclic(&sub) || !degrees_retained(d, &sub) {
        return false;
    }
    // Arc multiset containment.
    let mut remaining = d.arcs().to_vec();
    for arc in sub.arcs() {
        match remaining.iter().position(|a| a == arc) {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

/// Every loop-free digraph on `n` vertices with arc multiplicity at most 2.
fn all_small_digraphs(n: usize) -> Vec<Digraph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut code = vec![0u8; slots.len()];
    loop {
        let mut arcs = Vec::new();
        for (i, &(a, b)) in slots.iter().enumerate() {
            for _ in 0..code[i] {
                arcs.push((a, b));
            }
        }
        out.push(Digraph::new(n, arcs).expect("loop-free by construction"));
        let mut i = 0;
        while i < code.len() && code[i] == 2 {
            code[i] = 0;
            i += 1;
        }
        if i == code.len() {
            return out;
        }
        code[i] += 1;
    }
}

/// Seeded random loop-free digraphs with swept arc density and occasional
/// parallel arcs.
fn random_digraphs(seed: u64, count: usize, max_n: usize) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            let p: f64 = rng.gen_range(0.05..0.95);
            let mut arcs = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(p) {
                        arcs.push((a, b));
                    }
                }
            }
            if !arcs.is_empty() && rng.gen_bool(0.25) {
                let dup = arcs[rng.gen_range(0..arcs.len())];
                arcs.push(dup);
            }
            Digraph::new(n, arcs).expect("loop-free by construction")
        })
        .collect()
}

// ---- verify-tel --------------------------------------------------------

fn cmd_verify_tel(args: TelArgs) -> Result<i32, Box<dyn Error>> {
    let mut records = Vec::new();
    for n in 3..=args.max_n {
        let start = Instant::now();
        let mut rec = Record::new("verify-tel", "generated", records.len());
        rec.name = Some(format!("plane-sweep-n{n}"));
        let (graphs, faces, triples, failures, budget_hit) = tel_sweep(n, args.budget);
        let verdict = if !failures.is_empty() {
            Verdict::Failure
        } else if budget_hit {
            Verdict::Budget
        } else {
            Verdict::Pass
        };
        let detail = if failures.is_empty() {
            format!("graphs={graphs} faces={faces} triples={triples}")
        } else {
            failures[..failures.len().min(3)].join("; ")
        };
        rec.checks.push(CheckResult::new("tel-oracle", verdict, detail));
        rec.data = Some(json!({"graphs": graphs, "faces": faces, "triples": triples}));
        rec.timing_ms = Some(start.elapsed().as_millis());
        rec.settle_status();
        records.push(rec);
    }
    for (name, g, emb) in fixtures::all() {
        let start = Instant::now();
        let mut rec = Record::new("verify-tel", "fixtures", records.len());
        rec.name = Some(name.into());
        rec.n = Some(g.n());
        rec.m = Some(g.m());
        let mut triples = 0usize;
        let mut failures = Vec::new();
        let mut budget_hit = false;
        for (i, face) in emb.faces().iter().enumerate() {
            let outcomes: Vec<_> = edge_triples(face.edges().len())
                .into_par_iter()
                .map(|[a, b, c]| {
                    let edges = face.edges();
                    let mut budget = Budget::new(args.budget);
                    tel_witness(&g, &emb, face, edges[a], edges[b], edges[c], &mut budget)
                })
                .collect();
            for outcome in outcomes {
                triples += 1;
                match outcome {
                    Ok(_) => {}
                    Err(CycleError::BudgetExceeded(_)) => budget_hit = true,
                    Err(e) => failures.push(format!("face {i}: {e}")),
                }
            }
        }
        let verdict = if !failures.is_empty() {
            Verdict::Failure
        } else if budget_hit {
            Verdict::Budget
        } else {
            Verdict::Pass
        };
        let detail = if failures.is_empty() {
            format!("faces={} triples={triples}", emb.face_count())
        } else {
            failures[..failures.len().min(3)].join("; ")
        };
        rec.checks.push(CheckResult::new("tel-oracle", verdict, detail));
        rec.timing_ms = Some(start.elapsed().as_millis());
        rec.settle_status();
        records.push(rec);
    }
    emit(args.json.as_ref(), args.csv.as_ref(), !args.no_timings, records)
}

fn edge_triples(count: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..count {
        for b in a + 1..count {
            for c in b + 1..count {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Exhaustive witness sweep over every labeled 2-connected planar graph on
/// `n` vertices (one embedding each), every face, every edge triple.
fn tel_sweep(n: usize, budget_cap: u64) -> (usize, usize, usize, Vec<String>, bool) {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let masks: Vec<u32> = (0u32..1 << pairs.len()).collect();
    let results: Vec<(usize, usize, usize, Vec<String>, bool)> = masks
        .par_iter()
        .map(|&mask| {
            if (mask.count_ones() as usize) < n {
                return (0, 0, 0, Vec::new(), false);
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).expect("valid edge list");
            if (0..n).any(|v| g.degree(v) < 2) || !is_k_connected(&g, 2) {
                return (0, 0, 0, Vec::new(), false);
            }
            let Ok(emb) = compute_embedding(&g) else {
                return (0, 0, 0, Vec::new(), false);
            };
            let mut faces = 0;
            let mut triples = 0;
            let mut failures = Vec::new();
            let mut budget_hit = false;
            for face in emb.faces() {
                faces += 1;
                let edges = face.edges();
                for [a, b, c] in edge_triples(edges.len()) {
                    triples += 1;
                    let mut budget = Budget::new(budget_cap);
                    match tel_witness(&g, &emb, face, edges[a], edges[b], edges[c], &mut budget) {
                        Ok(_) => {}
                        Err(CycleError::BudgetExceeded(_)) => budget_hit = true,
                        Err(e) => failures.push(format!("n={n} mask={mask}: {e}")),
                    }
                }
            }
            (1, faces, triples, failures, budget_hit)
        })
        .collect();
    let mut graphs = 0;
    let mut faces = 0;
    let mut triples = 0;
    let mut failures = Vec::new();
    let mut budget_hit = false;
    for (g, f, t, mut fail, b) in results {
        graphs += g;
        faces += f;
        triples += t;
        failures.append(&mut fail);
        budget_hit |= b;
    }
    (graphs, faces, triples, failures, budget_hit)
}
