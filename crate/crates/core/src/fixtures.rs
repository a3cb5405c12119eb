//! Reference cubic planar graphs with hand-checked embeddings.
//!
//! Each fixture is built from its oriented face walks, so the embedding is
//! validated structurally at construction: every dart occurs in exactly one
//! walk and the walks stitch into a single rotation per vertex. All three
//! graphs are cyclically 4-edge-connected, which makes them the smallest
//! useful inputs for the cycle-spectrum machinery.

use crate::embed::Embedding;
use crate::graph::Graph;

/// Complete graph on four vertices, the unique girth-3 member of the family.
pub fn k4() -> (Graph, Embedding) {
    let walks = vec![
        vec![0, 1, 2],
        vec![0, 3, 1],
        vec![1, 3, 2],
        vec![2, 3, 0],
    ];
    Embedding::from_face_walks(&walks).expect("valid by construction")
}

/// The 3-cube. Vertex v encodes coordinates as 4z + 2y + x.
pub fn cube() -> (Graph, Embedding) {
    let walks = vec![
        vec![0, 2, 3, 1], // z = 0
        vec![4, 5, 7, 6], // z = 1
        vec![0, 1, 5, 4], // y = 0
        vec![2, 6, 7, 3], // y = 1
        vec![0, 4, 6, 2], // x = 0
        vec![1, 3, 7, 5], // x = 1
    ];
    Embedding::from_face_walks(&walks).expect("valid by construction")
}

/// The regular dodecahedron: outer pentagon 0..5, upper ring 5..10, lower
/// ring 10..15, inner pentagon 15..20. The two middle rings interleave as
/// the 10-cycle 5-10-6-11-7-12-8-13-9-14.
pub fn dodecahedron() -> (Graph, Embedding) {
    let walks = vec![
        vec![4, 3, 2, 1, 0],
        vec![0, 1, 6, 10, 5],
        vec![1, 2, 7, 11, 6],
        vec![2, 3, 8, 12, 7],
        vec![3, 4, 9, 13, 8],
        vec![4, 0, 5, 14, 9],
        vec![5, 10, 15, 19, 14],
        vec![6, 11, 16, 15, 10],
        vec![7, 12, 17, 16, 11],
        vec![8, 13, 18, 17, 12],
        vec![9, 14, 19, 18, 13],
        vec![15, 16, 17, 18, 19],
    ];
    Embedding::from_face_walks(&walks).expect("valid by construction")
}

/// All fixtures, in ascending order of size.
pub fn all() -> Vec<(&'static str, Graph, Embedding)> {
    let (k, ke) = k4();
    let (c, ce) = cube();
    let (d, de) = dodecahedron();
    vec![
        ("k4", k, ke),
        ("cube", c, ce),
        ("dodecahedron", d, de),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_cyclically_4ec;

    #[test]
    fn sizes_and_regularity() {
        for (name, g, emb) in all() {
            assert!(g.is_cubic(), "{name}");
            assert_eq!(g.m() * 2, g.n() * 3, "{name}");
            assert!(emb.satisfies_euler(&g), "{name}");
        }
        assert_eq!(k4().0.n(), 4);
        assert_eq!(cube().0.n(), 8);
        assert_eq!(dodecahedron().0.n(), 20);
    }

    #[test]
    fn girths() {
        assert_eq!(k4().0.girth(), Some(3));
        assert_eq!(cube().0.girth(), Some(4));
        assert_eq!(dodecahedron().0.girth(), Some(5));
    }

    #[test]
    fn cyclic_edge_connectivity() {
        for (name, g, _) in all() {
            assert_eq!(is_cyclically_4ec(&g), Ok(true), "{name}");
        }
    }

    #[test]
    fn dodecahedron_ring_structure() {
        let (g, _) = dodecahedron();
        // Outer and inner pentagons.
        for i in 0..5 {
            assert!(g.has_edge(i, (i + 1) % 5));
            assert!(g.has_edge(15 + i, 15 + (i + 1) % 5));
            assert!(g.has_edge(i, i + 5));
            assert!(g.has_edge(10 + i, 15 + i));
        }
        // Interleaved middle 10-cycle.
        for i in 0..5 {
            assert!(g.has_edge(5 + i, 10 + i));
            assert!(g.has_edge(10 + i, 5 + (i + 1) % 5));
        }
    }
}
