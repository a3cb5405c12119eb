//! Combinatorial embeddings as rotation systems.
//!
//! An embedding assigns each vertex a cyclic order of its neighbors. Faces
//! are traced by the successor rule: after arriving at v along the dart
//! (u, v), leave along (v, w) where w follows u in the rotation at v. A
//! rotation system of a connected graph is planar exactly when Euler's
//! formula n - m + f = 2 holds for the traced face count.

mod dmp;

pub use dmp::compute_embedding;

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("no face bounded by a cycle contains all degree-2 vertices")]
    NoSuchFace,
}

fn invalid(msg: impl Into<String>) -> EmbedError {
    EmbedError::InvalidRotation(msg.into())
}

/// A face boundary as a closed vertex walk: the darts are
/// `walk[i] -> walk[i+1]` (cyclically). Stored in canonical rotation, i.e.
/// starting at the lexicographically smallest dart sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Face {
    walk: Vec<usize>,
}

impl Face {
    fn from_walk(walk: Vec<usize>) -> Face {
        assert!(!walk.is_empty());
        let k = walk.len();
        let best = (0..k)
            .min_by(|&a, &b| {
                let ra = walk[a..].iter().chain(&walk[..a]);
                let rb = walk[b..].iter().chain(&walk[..b]);
                ra.cmp(rb)
            })
            .unwrap();
        let mut rotated = walk[best..].to_vec();
        rotated.extend_from_slice(&walk[..best]);
        Face { walk: rotated }
    }

    /// Number of edge occurrences on the boundary.
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn walk(&self) -> &[usize] {
        &self.walk
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.walk.contains(&v)
    }

    /// Boundary edges in walk order. A face of a 2-connected graph lists
    /// each edge once; bridges appear twice.
    pub fn edges(&self) -> Vec<Edge> {
        self.darts().map(|(a, b)| Edge::new(a, b)).collect()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.darts().any(|(a, b)| Edge::new(a, b) == e)
    }

    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    /// True when the boundary walk is a cycle (no repeated vertices).
    pub fn is_cycle(&self) -> bool {
        let mut seen = self.walk.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1]) && self.walk.len() >= 3
    }
}

/// Rotation system plus its traced faces. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
    faces: Vec<Face>,
}

impl Embedding {
    /// Validates that `rotation[v]` is a permutation of the neighbors of v,
    /// then traces all faces.
    pub fn from_rotation(g: &Graph, rotation: Vec<Vec<usize>>) -> Result<Embedding, EmbedError> {
        if rotation.len() != g.n() {
            return Err(invalid(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                g.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(invalid(format!(
                    "rotation at vertex {v} is not a permutation of its neighbors"
                )));
            }
        }
        let faces = trace_faces(&rotation);
        Ok(Embedding { rotation, faces })
    }

    /// Builds graph and embedding together from closed face walks. Every
    /// dart must occur exactly once over all walks, and the walks around
    /// each vertex must stitch into a single rotation.
    pub fn from_face_walks(walks: &[Vec<usize>]) -> Result<(Graph, Embedding), EmbedError> {
        let n = walks
            .iter()
            .flatten()
            .max()
            .map_or(0, |&v| v + 1);
        // successor[v]: map "came from u" -> "leave toward w".
        let mut successor = vec![std::collections::BTreeMap::new(); n];
        for walk in walks {
            let k = walk.len();
            if k < 3 {
                return Err(invalid("face walk shorter than 3"));
            }
            for i in 0..k {
                let prev = walk[(i + k - 1) % k];
                let v = walk[i];
                let next = walk[(i + 1) % k];
                if prev == v || next == v {
                    return Err(invalid(format!("self-loop at vertex {v} in face walk")));
                }
                if successor[v].insert(prev, next).is_some() {
                    return Err(invalid(format!(
                        "dart {prev}->{v} appears in more than one face"
                    )));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, succ) in successor.iter().enumerate() {
            if succ.is_empty() {
                return Err(invalid(format!("vertex {v} appears in no face")));
            }
            let first = *succ.keys().next().unwrap();
            let mut rot = vec![first];
            let mut cur = first;
            loop {
                let &next = succ
                    .get(&cur)
                    .ok_or_else(|| invalid(format!("dart {cur}->{v} missing its face")))?;
                if next == first {
                    break;
                }
                rot.push(next);
                cur = next;
                if rot.len() > succ.len() {
                    return Err(invalid(format!(
                        "rotation at vertex {v} does not close into a single cycle"
                    )));
                }
            }
            if rot.len() != succ.len() {
                return Err(invalid(format!(
                    "rotation at vertex {v} splits into several cycles"
                )));
            }
            rotation.push(rot);
        }
        let graph = Graph::from_adjacency(rotation.clone()).map_err(|e| invalid(e.to_string()))?;
        let embedding = Embedding::from_rotation(&graph, rotation)?;
        if embedding.faces.len() != walks.len() {
            return Err(invalid(format!(
                "walks describe {} faces but the rotation traces {}",
                walks.len(),
                embedding.faces.len()
            )));
        }
        Ok((graph, embedding))
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    /// Cyclic neighbor order at `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Euler's formula for connected graphs; an isolated vertex counts as
    /// one face even though the traversal yields none.
    pub fn satisfies_euler(&self, g: &Graph) -> bool {
        let f = self.faces.len().max(1);
        g.n() + f == g.m() + 2
    }
}

/// Traces the face walks of a rotation system. Deterministic: darts are
/// visited in vertex order, then rotation order.
fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Face> {
    let n = rotation.len();
    // Index of u within rotation[v], for O(1) successor lookup.
    let pos = |v: usize, u: usize| -> usize {
        rotation[v]
            .iter()
            .position(|&x| x == u)
            .expect("dart endpoint present in rotation")
    };
    let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for v0 in 0..n {
        for i0 in 0..rotation[v0].len() {
            if used[v0][i0] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut v, mut i) = (v0, i0);
            loop {
                used[v][i] = true;
                walk.push(v);
                let w = rotation[v][i];
                // Next dart: (w, successor of v in rotation at w).
                let j = (pos(w, v) + 1) % rotation[w].len();
                v = w;
                i = j;
                if v == v0 && i == i0 {
                    break;
                }
            }
            faces.push(Face::from_walk(walk));
        }
    }
    faces
}

/// The face whose boundary cycle carries all degree-2 vertices of `h`.
///
/// `h` is expected to have exactly four degree-2 vertices (the shape of a
/// cubic graph minus two adjacent vertices); anything else, or the absence
/// of such a face, is `NoSuchFace`. Ties go to the lexicographically
/// smallest boundary walk.
pub fn exterior_face_of_h(h: &Graph, emb: &Embedding) -> Result<Face, EmbedError> {
    let deg2: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == 2).collect();
    if deg2.len() != 4 {
        return Err(EmbedError::NoSuchFace);
    }
    let mut candidates: Vec<&Face> = emb
        .faces()
        .iter()
        .filter(|f| f.is_cycle() && deg2.iter().all(|&v| f.contains_vertex(v)))
        .collect();
    candidates.sort();
    candidates
        .first()
        .map(|&f| f.clone())
        .ok_or(EmbedError::NoSuchFace)
}

/// Restricts an embedding of Y to an induced subgraph H produced by
/// [`Graph::delete_vertices`]: surviving rotations keep their cyclic order,
/// deleted neighbors drop out. Restriction of a planar rotation system of a
/// connected graph stays planar whenever H is connected.
pub fn restrict_embedding(
    emb: &Embedding,
    h: &Graph,
    map: &VertexMap,
) -> Result<Embedding, EmbedError> {
    let rotation: Vec<Vec<usize>> = map
        .new_to_old
        .iter()
        .map(|&old| {
            emb.rotation(old)
                .iter()
                .filter_map(|&w| map.old_to_new[w])
                .collect()
        })
        .collect();
    Embedding::from_rotation(h, rotation)
}
