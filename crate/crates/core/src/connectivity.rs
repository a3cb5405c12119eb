//! Exhaustive connectivity predicates, block decomposition, and small edge
//! cuts. Everything here is brute force on purpose: the point is to be an
//! oracle at desk scale, not to be fast.

use crate::graph::{Edge, Graph, GraphError};

/// A minimal disconnecting edge set together with the resulting bipartition.
/// `side_a` is the side containing vertex 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeCut {
    pub edges: Vec<Edge>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

/// A biconnected component: its vertices (ascending) and edges (sorted).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Connected components of `g` restricted to the vertices with `mask[v]`.
pub fn masked_components(g: &Graph, mask: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if !mask[root] || seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Biconnected components (blocks) via depth-first search with an edge
/// stack. Blocks partition the edge set; bridges are single-edge blocks.
/// Output is sorted by smallest edge.
pub fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut out = Vec::new();

    let pop_block = |edge_stack: &mut Vec<Edge>, boundary: Edge, out: &mut Vec<Block>| {
        let mut edges = Vec::new();
        while let Some(e) = edge_stack.pop() {
            edges.push(e);
            if e == boundary {
                break;
            }
        }
        edges.sort_unstable();
        let mut vertices: Vec<usize> = edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        out.push(Block { vertices, edges });
    };

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // Frames: (vertex, parent, next neighbor index).
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = (frame.0, frame.1, frame.2);
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == usize::MAX {
                    edge_stack.push(Edge::new(v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push(Edge::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(up) = stack.last_mut() {
                    let u = up.0;
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        pop_block(&mut edge_stack, Edge::new(u, v), &mut out);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out
}

/// Vertex connectivity test for k in {2, 3, 4} by deleting every vertex set
/// of size k-1. Requires n > k.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    assert!((2..=4).contains(&k), "k must be 2, 3, or 4");
    assert!(g.n() > k, "need more than k vertices");
    if !is_connected(g) {
        return false;
    }
    let n = g.n();
    let mut mask = vec![true; n];
    let mut sets: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k - 1 {
        sets = sets
            .into_iter()
            .flat_map(|s| {
                let lo = s.last().map_or(0, |&x| x + 1);
                (lo..n).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    for s in sets {
        for &v in &s {
            mask[v] = false;
        }
        let disconnected = masked_components(g, &mask).len() != 1;
        for &v in &s {
            mask[v] = true;
        }
        if disconnected {
            return false;
        }
    }
    true
}

/// Cyclic 4-edge-connectivity for cubic graphs: 3-connected, and every edge
/// set of size at most 3 whose removal disconnects the graph strands an
/// acyclic component. Equivalently, every 3-edge-cut is the star of a vertex.
pub fn is_cyclically_4ec(g: &Graph) -> Result<bool, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    if !is_k_connected(g, 3) {
        return Ok(false);
    }
    let edges = g.edges();
    for cut in edge_subsets_up_to(&edges, 3) {
        let comps = components_without_edges(g, &cut);
        if comps.len() < 2 {
            continue;
        }
        let all_cyclic = comps
            .iter()
            .all(|comp| component_has_cycle(g, comp, &cut));
        if all_cyclic {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All minimal disconnecting edge sets of size at most `max_size` (which must
/// be <= 3), with their bipartitions, sorted lexicographically by edge list.
/// A disconnected input yields the single empty cut.
pub fn enumerate_small_edge_cuts(g: &Graph, max_size: usize) -> Vec<EdgeCut> {
    assert!(max_size <= 3, "only cuts of size at most 3 are supported");
    let comps = connected_components(g);
    if comps.len() > 1 {
        let side_a = comps[0].clone();
        let side_b: Vec<usize> = comps[1..].iter().flatten().copied().collect();
        return vec![EdgeCut {
            edges: Vec::new(),
            side_a,
            side_b,
        }];
    }
    let edges = g.edges();
    let mut cuts = Vec::new();
    for cut in edge_subsets_up_to(&edges, max_size) {
        if cut.is_empty() {
            continue;
        }
        let comps = components_without_edges(g, &cut);
        if comps.len() < 2 {
            continue;
        }
        // Minimal: dropping any single edge from the cut must reconnect.
        let minimal = (0..cut.len()).all(|skip| {
            let sub: Vec<Edge> = cut
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e)
                .collect();
            components_without_edges(g, &sub).len() == 1
        });
        if !minimal {
            continue;
        }
        debug_assert_eq!(comps.len(), 2, "minimal cuts split into two sides");
        let (a, b) = (comps[0].clone(), comps[1].clone());
        let (side_a, side_b) = if a.contains(&0) { (a, b) } else { (b, a) };
        debug_assert!(cut.iter().all(|e| {
            side_a.contains(&e.u()) != side_a.contains(&e.v())
        }));
        cuts.push(EdgeCut {
            edges: cut,
            side_a,
            side_b,
        });
    }
    cuts.sort_by(|a, b| a.edges.cmp(&b.edges));
    cuts
}

fn edge_subsets_up_to(edges: &[Edge], max_size: usize) -> Vec<Vec<Edge>> {
    let mut out: Vec<Vec<Edge>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for s in &frontier {
            let lo = s.last().map_or(0, |&x| x + 1);
            for i in lo..edges.len() {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(
            next.iter()
                .map(|s| s.iter().map(|&i| edges[i]).collect::<Vec<_>>()),
        );
        frontier = next;
    }
    out
}

fn components_without_edges(g: &Graph, cut: &[Edge]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let banned = |a: usize, b: usize| cut.contains(&Edge::new(a, b));
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] && !banned(v, w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn component_has_cycle(g: &Graph, comp: &[usize], cut: &[Edge]) -> bool {
    // A component is acyclic iff it has |V| - 1 surviving edges.
    let mut member = vec![false; g.n()];
    for &v in comp {
        member[v] = true;
    }
    let mut m = 0;
    for &v in comp {
        for &w in g.neighbors(v) {
            if v < w && member[w] && !cut.contains(&Edge::new(v, w)) {
                m += 1;
            }
        }
    }
    m >= comp.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn connectivity_of_known_graphs() {
        assert!(is_k_connected(&k4(), 3));
        assert!(!is_k_connected(&cycle(6), 3));
        assert!(is_k_connected(&cycle(6), 2));
        let (cubocta, _) = fixtures::cube().0.line_graph();
        assert!(is_k_connected(&cubocta, 4));
    }

    #[test]
    fn components_and_blocks() {
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        edges.push((2, 3)); // bridge
        edges.extend([(3, 4), (4, 5), (5, 3)]);
        let g = Graph::from_edges(6, &edges).unwrap();
        assert!(is_connected(&g));
        let blocks = blocks(&g);
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[1].edges, vec![Edge::new(2, 3)]);
        assert_eq!(blocks[0].vertices, vec![0, 1, 2]);
        assert_eq!(blocks[2].vertices, vec![3, 4, 5]);

        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two).len(), 2);
    }

    #[test]
    fn cyclic_4ec_accepts_the_fixtures() {
        assert_eq!(is_cyclically_4ec(&k4()), Ok(true));
        assert_eq!(is_cyclically_4ec(&fixtures::cube().0), Ok(true));
        assert_eq!(is_cyclically_4ec(&fixtures::dodecahedron().0), Ok(true));
    }

    #[test]
    fn cyclic_4ec_rejects_the_prism_and_non_cubic_input() {
        // The prism's triangles are separated by a 3-edge cut that is not a
        // vertex star.
        assert_eq!(is_cyclically_4ec(&prism()), Ok(false));
        assert_eq!(
            is_cyclically_4ec(&cycle(5)),
            Err(GraphError::NotCubic)
        );
    }

    #[test]
    fn three_cuts_of_cubic_fixtures_are_vertex_stars() {
        for g in [k4(), fixtures::cube().0] {
            let cuts = enumerate_small_edge_cuts(&g, 3);
            assert_eq!(cuts.len(), g.n());
            for cut in &cuts {
                assert_eq!(cut.edges.len(), 3);
                // One side is a single vertex whose star is the cut.
                let small = if cut.side_a.len() == 1 {
                    &cut.side_a
                } else {
                    &cut.side_b
                };
                assert_eq!(small.len(), 1);
                let v = small[0];
                assert!(cut.edges.iter().all(|e| e.contains(v)));
            }
        }
    }

    #[test]
    fn four_cycle_has_all_six_edge_pairs_as_cuts() {
        let cuts = enumerate_small_edge_cuts(&cycle(4), 3);
        assert_eq!(cuts.len(), 6);
        assert!(cuts.iter().all(|c| c.edges.len() == 2));
        for c in &cuts {
            assert!(c.side_a.contains(&0));
            assert_eq!(c.side_a.len() + c.side_b.len(), 4);
        }
    }

    #[test]
    fn disconnected_input_yields_the_empty_cut() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cuts = enumerate_small_edge_cuts(&g, 3);
        assert_eq!(cuts.len(), 1);
        assert!(cuts[0].edges.is_empty());
        assert_eq!(cuts[0].side_a, vec![0, 1]);
        assert_eq!(cuts[0].side_b, vec![2, 3]);
    }

    #[test]
    fn prism_cut_structure() {
        let cuts = enumerate_small_edge_cuts(&prism(), 3);
        // Six vertex stars plus the matching between the triangles.
        assert_eq!(cuts.len(), 7);
        let non_star: Vec<_> = cuts
            .iter()
            .filter(|c| c.side_a.len() > 1 && c.side_b.len() > 1)
            .collect();
        assert_eq!(non_star.len(), 1);
        assert_eq!(non_star[0].side_a, vec![0, 1, 2]);
    }
}
