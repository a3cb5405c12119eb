//! Facial-triangle machinery for line graphs of cubic graphs: classifying
//! triangles against a Hamilton cycle, shortening a cycle by removing
//! triangle centers, lifting a base-graph cycle into the line graph, the
//! per-edge third-vertex map, and interval extension along it.
//!
//! Throughout, the line graph's edge set is partitioned into facial
//! triangles, one per base-graph vertex: the three line-graph vertices
//! whose base edges meet there. Every line-graph edge lies in exactly one
//! partition triangle, which is what makes simultaneous local rewrites
//! sound.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cycles::Cycle;
use crate::graph::{Edge, LineGraphMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangleError {
    #[error("not a Hamilton cycle of the line graph: {0}")]
    NotHamiltonian(String),
    #[error("triangle {0} does not meet the cycle in exactly two edges")]
    NotTwoTriangle(usize),
    #[error("facial triangle meets the cycle beyond a single edge: {0}")]
    UniquenessViolation(String),
    #[error("extension collision: {0}")]
    CollisionDetected(String),
}

/// Per-triangle classification against a reference Hamilton cycle: class j
/// counts the triangle's edges on the cycle, and a 2-triangle's center is
/// the vertex its two cycle edges share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleClassification {
    n: usize,
    classes: Vec<u8>,
    centers: Vec<Option<usize>>,
    tau: [usize; 3],
}

impl TriangleClassification {
    /// Counts (τ0, τ1, τ2) of triangles with 0, 1, 2 edges on the cycle.
    pub fn tau(&self) -> [usize; 3] {
        self.tau
    }

    pub fn class_of(&self, triangle: usize) -> u8 {
        self.classes[triangle]
    }

    pub fn triangle_count(&self) -> usize {
        self.classes.len()
    }

    /// Center vertex of `triangle` when it is a 2-triangle.
    pub fn center_of(&self, triangle: usize) -> Option<usize> {
        self.centers[triangle]
    }

    /// All 2-triangle indices, ascending.
    pub fn two_triangles(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&w| self.classes[w] == 2)
            .collect()
    }

    /// The 2-triangle centered at `v`, if any.
    pub fn triangle_with_center(&self, v: usize) -> Option<usize> {
        self.centers.iter().position(|&c| c == Some(v))
    }

    /// The four counting identities relating the classes to the cycle
    /// length: the classes partition the triangles, every cycle edge lies
    /// in exactly one triangle, the 0- and 2-classes balance, and the
    /// 2-class covers at least a third of the cycle.
    pub fn identities_hold(&self) -> bool {
        let [t0, t1, t2] = self.tau;
        t0 + t1 + t2 == 2 * self.n / 3
            && 2 * t2 + t1 == self.n
            && t2 == 3 * t0 + t1
            && 3 * t2 >= self.n
    }
}

/// Classifies every partition triangle by how many of its edges lie on the
/// Hamilton cycle `c`.
pub fn classify_triangles(
    lmap: &LineGraphMap,
    c: &Cycle,
) -> Result<TriangleClassification, TriangleError> {
    let n = lmap.edge_count();
    if c.len() != n {
        return Err(TriangleError::NotHamiltonian(format!(
            "cycle length {} differs from vertex count {n}",
            c.len()
        )));
    }
    let triangles = lmap
        .triangle_partition()
        .expect("triangle classification requires a cubic base graph");
    let mut classes = vec![0u8; triangles.len()];
    let mut cycle_edges: Vec<Vec<Edge>> = vec![Vec::new(); triangles.len()];
    for e in c.edges() {
        let w = triangle_home(lmap, e).ok_or_else(|| {
            TriangleError::NotHamiltonian(format!("{e} is not an edge of the line graph"))
        })?;
        classes[w] += 1;
        cycle_edges[w].push(e);
    }
    let mut centers = vec![None; triangles.len()];
    let mut tau = [0usize; 3];
    for w in 0..triangles.len() {
        // Three edges of one triangle would form the whole cycle, which a
        // Hamilton cycle on at least six vertices cannot be.
        assert!(classes[w] <= 2, "triangle {w} has three cycle edges");
        tau[classes[w] as usize] += 1;
        if classes[w] == 2 {
            let shared = cycle_edges[w][0]
                .shared_vertex(&cycle_edges[w][1])
                .expect("two cycle edges of one triangle share its center");
            centers[w] = Some(shared);
        }
    }
    Ok(TriangleClassification {
        n,
        classes,
        centers,
        tau,
    })
}

/// Index of the partition triangle containing line-graph edge `e`: the
/// base-graph endpoint shared by the two base edges.
pub(crate) fn triangle_home(lmap: &LineGraphMap, e: Edge) -> Option<usize> {
    lmap.edge_of(e.u()).shared_vertex(&lmap.edge_of(e.v()))
}

/// Removes the center of each chosen 2-triangle from `c` simultaneously,
/// closing each gap with the triangle's third edge. The result has length
/// `c.len() - chosen.len()` and avoids every removed center.
pub fn shorten_by_centers(
    lmap: &LineGraphMap,
    c: &Cycle,
    chosen: &[usize],
) -> Result<Cycle, TriangleError> {
    let classification = classify_triangles(lmap, c)?;
    let mut drop = vec![false; lmap.edge_count()];
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    for &w in &chosen {
        if w >= classification.triangle_count() || classification.class_of(w) != 2 {
            return Err(TriangleError::NotTwoTriangle(w));
        }
        drop[classification.center_of(w).unwrap()] = true;
    }
    if chosen.is_empty() {
        return Ok(c.clone());
    }
    let kept: Vec<usize> = c
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !drop[v])
        .collect();
    // Partition triangles are edge-disjoint, so distinct centers are never
    // adjacent on the cycle and the gap-closing edges exist and are
    // pairwise distinct.
    debug_assert_eq!(kept.len(), c.len() - chosen.len());
    Ok(Cycle::from_traversal(&kept))
}

/// Lifts a base-graph cycle into the line graph: its edges, in cyclic
/// order, are pairwise-adjacent line-graph vertices forming a cycle of the
/// same length.
pub fn lift_cycle(lmap: &LineGraphMap, c_h: &Cycle) -> Cycle {
    let k = c_h.len();
    let vs = c_h.vertices();
    let lifted: Vec<usize> = (0..k)
        .map(|i| {
            let e = Edge::new(vs[i], vs[(i + 1) % k]);
            lmap.vertex_of(e)
                .expect("cycle edge must exist in the base graph")
        })
        .collect();
    Cycle::from_traversal(&lifted)
}

/// For each edge of a lifted cycle, the third vertex of its partition
/// triangle, recorded in cyclic order from the cycle's canonical start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMap {
    entries: Vec<(Edge, usize)>,
}

impl SMap {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Edge and third-vertex pairs in cyclic order along the cycle.
    pub fn entries(&self) -> &[(Edge, usize)] {
        &self.entries
    }

    pub fn s_of(&self, e: Edge) -> Option<usize> {
        self.entries.iter().find(|&&(d, _)| d == e).map(|&(_, s)| s)
    }

    /// Number of distinct third vertices.
    pub fn distinct_count(&self) -> usize {
        self.entries
            .iter()
            .map(|&(_, s)| s)
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Computes the third-vertex map of a lifted cycle. Each cycle edge lies in
/// one partition triangle; that triangle must meet the cycle only in the
/// edge itself, so its third vertex is off the cycle.
pub fn compute_s_map(lmap: &LineGraphMap, c_g: &Cycle) -> Result<SMap, TriangleError> {
    let triangles = lmap
        .triangle_partition()
        .expect("third-vertex map requires a cubic base graph");
    let mut on_cycle = vec![false; lmap.edge_count()];
    for &v in c_g.vertices() {
        on_cycle[v] = true;
    }
    let mut entries = Vec::with_capacity(c_g.len());
    for e in c_g.edges() {
        let w = triangle_home(lmap, e).ok_or_else(|| {
            TriangleError::UniquenessViolation(format!(
                "{e} is not an edge of the line graph"
            ))
        })?;
        let s = triangles[w]
            .iter()
            .copied()
            .find(|&s| !e.contains(s))
            .expect("a triangle has a vertex off any one of its edges");
        if on_cycle[s] {
            return Err(TriangleError::UniquenessViolation(format!(
                "triangle {w} meets the cycle at {s} beyond the edge {e}"
            )));
        }
        entries.push((e, s));
    }
    Ok(SMap { entries })
}

/// A choice of cycle edges with pairwise-distinct third vertices, maximal
/// because it holds one edge per distinct value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSet {
    edges: Vec<Edge>,
    s_values: Vec<usize>,
}

impl LambdaSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn s_values(&self) -> &[usize] {
        &self.s_values
    }
}

/// One edge per distinct third vertex: the first edge carrying each value
/// in cyclic order from the cycle's canonical start.
pub fn maximal_lambda(smap: &SMap) -> LambdaSet {
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut s_values = Vec::new();
    for &(e, s) in smap.entries() {
        if seen.insert(s) {
            edges.push(e);
            s_values.push(s);
        }
    }
    LambdaSet { edges, s_values }
}

/// Replaces each chosen cycle edge by the two-edge path through its third
/// vertex, all at once. The result has length `c_g.len() + chosen.len()`.
pub fn extend_by_lambda(
    lmap: &LineGraphMap,
    c_g: &Cycle,
    chosen: &[Edge],
) -> Result<Cycle, TriangleError> {
    let smap = compute_s_map(lmap, c_g)?;
    let mut insert: Vec<Option<usize>> = vec![None; c_g.len()];
    let mut used = BTreeSet::new();
    let cycle_edges = c_g.edges();
    for &e in chosen {
        let i = cycle_edges
            .iter()
            .position(|&d| d == e)
            .unwrap_or_else(|| panic!("{e} is not an edge of the cycle"));
        let s = smap.s_of(e).unwrap();
        if !used.insert(s) {
            return Err(TriangleError::CollisionDetected(format!(
                "third vertex {s} chosen twice"
            )));
        }
        if insert[i].replace(s).is_some() {
            return Err(TriangleError::CollisionDetected(format!(
                "edge {e} chosen twice"
            )));
        }
    }
    let vs = c_g.vertices();
    let mut out = Vec::with_capacity(c_g.len() + chosen.len());
    for i in 0..c_g.len() {
        out.push(vs[i]);
        if let Some(s) = insert[i] {
            out.push(s);
        }
    }
    Ok(Cycle::from_traversal(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{hamilton_cycles, Budget};
    use crate::fixtures;
    use crate::graph::Graph;

    fn octahedron_setup() -> (Graph, Graph, LineGraphMap) {
        let y = fixtures::k4().0;
        let (g, lmap) = y.line_graph();
        (y, g, lmap)
    }

    fn cuboctahedron_setup() -> (Graph, Graph, LineGraphMap) {
        let y = fixtures::cube().0;
        let (g, lmap) = y.line_graph();
        (y, g, lmap)
    }

    fn chords_of(y: &Graph, c_h: &Cycle) -> Vec<Edge> {
        y.edges()
            .into_iter()
            .filter(|&e| {
                c_h.contains_vertex(e.u()) && c_h.contains_vertex(e.v()) && !c_h.contains_edge(e)
            })
            .collect()
    }

    #[test]
    fn every_octahedron_hamilton_cycle_classifies_consistently() {
        let (_, g, lmap) = octahedron_setup();
        let mut budget = Budget::default();
        let cycles = hamilton_cycles(&g, usize::MAX, &mut budget).unwrap();
        assert_eq!(cycles.len(), 16);
        for c in &cycles {
            let cl = classify_triangles(&lmap, c).unwrap();
            assert!(cl.identities_hold());
            let [t0, t1, t2] = cl.tau();
            assert_eq!(t0 + t1 + t2, 4);
            assert_eq!(2 * t2 + t1, 6);
            assert_eq!(t2, 3 * t0 + t1);
        }
    }

    #[test]
    fn every_cuboctahedron_hamilton_cycle_classifies_consistently() {
        let (_, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let cycles = hamilton_cycles(&g, usize::MAX, &mut budget).unwrap();
        assert!(!cycles.is_empty());
        for c in &cycles {
            let cl = classify_triangles(&lmap, c).unwrap();
            assert!(cl.identities_hold());
            let [t0, t1, _] = cl.tau();
            assert_eq!(2 * t0 + t1, 4);
        }
    }

    #[test]
    fn short_cycles_are_rejected_as_non_hamiltonian() {
        let (_, g, lmap) = octahedron_setup();
        let mut budget = Budget::default();
        let c = crate::cycles::find_cycle_of_length(&g, 4, None, &mut budget)
            .unwrap()
            .unwrap();
        assert!(matches!(
            classify_triangles(&lmap, &c),
            Err(TriangleError::NotHamiltonian(_))
        ));
    }

    #[test]
    fn centers_are_where_the_cycle_turns() {
        let (_, g, lmap) = octahedron_setup();
        let mut budget = Budget::default();
        let c = &hamilton_cycles(&g, 1, &mut budget).unwrap()[0];
        let cl = classify_triangles(&lmap, c).unwrap();
        for w in cl.two_triangles() {
            let center = cl.center_of(w).unwrap();
            assert_eq!(cl.triangle_with_center(center), Some(w));
            // Both cycle edges at the center belong to triangle w.
            let tri = lmap.triangle_partition().unwrap()[w];
            assert!(tri.contains(&center));
            let pos = c.vertices().iter().position(|&v| v == center).unwrap();
            let prev = c.vertices()[(pos + c.len() - 1) % c.len()];
            let next = c.vertices()[(pos + 1) % c.len()];
            assert!(tri.contains(&prev) && tri.contains(&next));
        }
    }

    #[test]
    fn shortening_by_no_centers_is_the_identity() {
        let (_, g, lmap) = octahedron_setup();
        let mut budget = Budget::default();
        let c = &hamilton_cycles(&g, 1, &mut budget).unwrap()[0];
        assert_eq!(&shorten_by_centers(&lmap, c, &[]).unwrap(), c);
    }

    #[test]
    fn shortening_removes_one_vertex_per_chosen_triangle() {
        let (_, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        for c in hamilton_cycles(&g, 5, &mut budget).unwrap() {
            let cl = classify_triangles(&lmap, &c).unwrap();
            let two = cl.two_triangles();
            // Every prefix of the 2-triangle list, including all of it.
            for take in 0..=two.len() {
                let chosen = &two[..take];
                let short = shorten_by_centers(&lmap, &c, chosen).unwrap();
                assert_eq!(short.len(), c.len() - take);
                short.validate(&g).unwrap();
                for &w in chosen {
                    assert!(!short.contains_vertex(cl.center_of(w).unwrap()));
                }
            }
        }
    }

    #[test]
    fn shortening_rejects_triangles_without_two_cycle_edges() {
        let (_, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let c = &hamilton_cycles(&g, 1, &mut budget).unwrap()[0];
        let cl = classify_triangles(&lmap, c).unwrap();
        let bad = (0..cl.triangle_count())
            .find(|&w| cl.class_of(w) != 2)
            .expect("some triangle has fewer than two cycle edges");
        assert_eq!(
            shorten_by_centers(&lmap, c, &[bad]),
            Err(TriangleError::NotTwoTriangle(bad))
        );
    }

    #[test]
    fn lifting_preserves_length_and_validity() {
        let (y, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        // A facial 4-cycle, and a Hamilton cycle of the base graph.
        let face = crate::cycles::find_cycle_of_length(&y, 4, None, &mut budget)
            .unwrap()
            .unwrap();
        let lifted = lift_cycle(&lmap, &face);
        assert_eq!(lifted.len(), 4);
        lifted.validate(&g).unwrap();

        let ham = crate::cycles::find_cycle_of_length(&y, 8, None, &mut budget)
            .unwrap()
            .unwrap();
        let lifted = lift_cycle(&lmap, &ham);
        assert_eq!(lifted.len(), 8);
        lifted.validate(&g).unwrap();

        let (k4, okta, olmap) = octahedron_setup();
        let tri = crate::cycles::find_cycle_of_length(&k4, 3, None, &mut budget)
            .unwrap()
            .unwrap();
        let lifted = lift_cycle(&olmap, &tri);
        assert_eq!(lifted.len(), 3);
        lifted.validate(&okta).unwrap();
    }

    #[test]
    fn third_vertex_duplicates_match_base_cycle_chords_exactly() {
        let (y, _, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        for len in [4usize, 6, 8] {
            let c_h = crate::cycles::find_cycle_of_length(&y, len, None, &mut budget)
                .unwrap()
                .unwrap();
            let c_g = lift_cycle(&lmap, &c_h);
            let smap = compute_s_map(&lmap, &c_g).unwrap();
            assert_eq!(smap.len(), len);
            let chords = chords_of(&y, &c_h);
            // Multiplicity of each third vertex: 2 exactly when its base
            // edge is a chord, 1 otherwise.
            let mut mult = std::collections::BTreeMap::new();
            for &(_, s) in smap.entries() {
                *mult.entry(s).or_insert(0usize) += 1;
            }
            for (&s, &m) in &mult {
                let base = lmap.edge_of(s);
                if chords.contains(&base) {
                    assert_eq!(m, 2, "chord {base} must be hit twice");
                } else {
                    assert_eq!(m, 1, "non-chord {base} must be hit once");
                }
            }
            assert_eq!(smap.distinct_count(), len - chords.len());
        }
    }

    #[test]
    fn third_vertices_are_adjacent_to_both_edge_endpoints() {
        let (y, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let c_h = crate::cycles::find_cycle_of_length(&y, 6, None, &mut budget)
            .unwrap()
            .unwrap();
        let c_g = lift_cycle(&lmap, &c_h);
        let smap = compute_s_map(&lmap, &c_g).unwrap();
        for &(e, s) in smap.entries() {
            assert!(g.has_edge(e.u(), s) && g.has_edge(e.v(), s));
            assert!(!c_g.contains_vertex(s));
        }
    }

    #[test]
    fn partition_triangles_themselves_violate_uniqueness() {
        let (_, _, lmap) = octahedron_setup();
        let tri = lmap.triangle_partition().unwrap()[0];
        let c_g = Cycle::from_traversal(&tri);
        // Each edge's partition triangle is the cycle itself, so the third
        // vertex is always on the cycle.
        assert!(matches!(
            compute_s_map(&lmap, &c_g),
            Err(TriangleError::UniquenessViolation(_))
        ));
    }

    #[test]
    fn lambda_selects_one_edge_per_value_in_cyclic_order() {
        let (y, _, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let c_h = crate::cycles::find_cycle_of_length(&y, 8, None, &mut budget)
            .unwrap()
            .unwrap();
        let c_g = lift_cycle(&lmap, &c_h);
        let smap = compute_s_map(&lmap, &c_g).unwrap();
        let lambda = maximal_lambda(&smap);
        assert_eq!(lambda.len(), smap.distinct_count());
        assert!(lambda.len() >= smap.len().div_ceil(2));
        // First occurrence wins: no earlier entry shares a chosen value
        // with a later chosen edge.
        let mut seen = BTreeSet::new();
        for &(e, s) in smap.entries() {
            if seen.insert(s) {
                assert!(lambda.edges().contains(&e));
            } else {
                assert!(!lambda.edges().contains(&e));
            }
        }
    }

    #[test]
    fn chordless_base_cycles_give_all_distinct_values() {
        let (y, _, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let c_h = crate::cycles::find_cycle_of_length(&y, 4, None, &mut budget)
            .unwrap()
            .unwrap();
        assert!(chords_of(&y, &c_h).is_empty());
        let c_g = lift_cycle(&lmap, &c_h);
        let smap = compute_s_map(&lmap, &c_g).unwrap();
        let lambda = maximal_lambda(&smap);
        assert_eq!(lambda.len(), 4);
        assert_eq!(lambda.edges(), c_g.edges());
    }

    #[test]
    fn extension_grows_length_one_per_chosen_edge() {
        let (y, g, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        let c_h = crate::cycles::find_cycle_of_length(&y, 4, None, &mut budget)
            .unwrap()
            .unwrap();
        let c_g = lift_cycle(&lmap, &c_h);
        let lambda = maximal_lambda(&compute_s_map(&lmap, &c_g).unwrap());
        for take in 0..=lambda.len() {
            let ext = extend_by_lambda(&lmap, &c_g, &lambda.edges()[..take]).unwrap();
            assert_eq!(ext.len(), c_g.len() + take);
            ext.validate(&g).unwrap();
            for &s in &lambda.s_values()[..take] {
                assert!(ext.contains_vertex(s));
            }
        }
    }

    #[test]
    fn extension_detects_duplicate_third_vertices() {
        let (y, _, lmap) = cuboctahedron_setup();
        let mut budget = Budget::default();
        // A Hamilton cycle of the cube has chords, so some third vertex
        // repeats; choosing both of its edges must collide.
        let c_h = crate::cycles::find_cycle_of_length(&y, 8, None, &mut budget)
            .unwrap()
            .unwrap();
        let c_g = lift_cycle(&lmap, &c_h);
        let smap = compute_s_map(&lmap, &c_g).unwrap();
        let mut by_value: std::collections::BTreeMap<usize, Vec<Edge>> =
            std::collections::BTreeMap::new();
        for &(e, s) in smap.entries() {
            by_value.entry(s).or_default().push(e);
        }
        let pair = by_value
            .values()
            .find(|v| v.len() == 2)
            .expect("a chord forces a repeated third vertex");
        assert!(matches!(
            extend_by_lambda(&lmap, &c_g, pair),
            Err(TriangleError::CollisionDetected(_))
        ));
    }
}
