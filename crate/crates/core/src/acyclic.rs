//! Acyclic spanning subdigraphs in which every vertex keeps at least as
//! many arcs as its original out-degree.
//!
//! The construction is inductive: pick a vertex whose out-degree does not
//! exceed its in-degree, solve the rest, then restore the vertex with all
//! arcs from the rest directed into it. The restored vertex keeps its full
//! surviving in-degree plus its arcs to earlier-restored vertices, which
//! together dominate its original out-degree, and adding a sink to an
//! acyclic digraph keeps it acyclic.

use crate::graph::Digraph;

/// Spanning acyclic subdigraph of `d`. The result keeps, for the vertex
/// chosen at each level, every incoming arc; parallel arcs are preserved
/// with multiplicity.
pub fn acyclic_spanning_subdigraph(d: &Digraph) -> Digraph {
    let n = d.n();
    let mut alive = vec![true; n];
    // Removal order: repeatedly take the smallest vertex whose out-degree
    // is at most its in-degree among the survivors.
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick = None;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let mut outd = 0usize;
            let mut ind = 0usize;
            for &(a, b) in d.arcs() {
                if !alive[a] || !alive[b] {
                    continue;
                }
                if a == v {
                    outd += 1;
                }
                if b == v {
                    ind += 1;
                }
            }
            if outd <= ind {
                pick = Some(v);
                break;
            }
        }
        // Total out-degree equals total in-degree, so a qualifying vertex
        // always exists.
        let v = pick.expect("some vertex has out-degree at most in-degree");
        alive[v] = false;
        order.push(v);
    }
    // Rebuild in reverse: each vertex joins as a sink of the digraph
    // induced on the vertices restored after it.
    let mut restored = vec![false; n];
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        restored[v] = true;
        rank[v] = i;
    }
    let kept: Vec<(usize, usize)> = d
        .arcs()
        .iter()
        .copied()
        .filter(|&(a, b)| rank[b] < rank[a])
        .collect();
    Digraph::new(n, kept).expect("arcs of a valid digraph remain valid")
}

/// Kahn's algorithm, used as an independent acyclicity check.
pub fn is_acyclic(d: &Digraph) -> bool {
    let n = d.n();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in d.arcs() {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    seen == n
}

/// True when every vertex of `sub` retains at least as many arcs as its
/// out-degree in `d`.
pub fn degrees_retained(d: &Digraph, sub: &Digraph) -> bool {
    (0..d.n()).all(|v| sub.out_degree(v) + sub.in_degree(v) >= d.out_degree(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_postconditions(d: &Digraph) {
        let sub = acyclic_spanning_subdigraph(d);
        assert_eq!(sub.n(), d.n());
        assert!(is_acyclic(&sub), "result must be acyclic");
        for arc in sub.arcs() {
            assert!(d.arcs().contains(arc), "result must be a subdigraph");
        }
        assert!(
            degrees_retained(d, &sub),
            "every vertex must keep its out-degree's worth of arcs"
        );
    }

    #[test]
    fn directed_triangle_keeps_two_arcs() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let sub = acyclic_spanning_subdigraph(&d);
        assert_eq!(sub.arcs().len(), 2);
        check_postconditions(&d);
    }

    #[test]
    fn sink_stars_are_preserved_whole() {
        let d = Digraph::new(3, vec![(0, 2), (1, 2)]).unwrap();
        let sub = acyclic_spanning_subdigraph(&d);
        assert_eq!(sub.arcs().len(), 2);
    }

    #[test]
    fn diamond_dag_satisfies_the_postconditions() {
        check_postconditions(&Digraph::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
    }

    #[test]
    fn trivial_digraphs() {
        check_postconditions(&Digraph::new(0, vec![]).unwrap());
        check_postconditions(&Digraph::new(1, vec![]).unwrap());
        check_postconditions(&Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap());
    }

    #[test]
    fn two_way_arcs_keep_one_direction_each() {
        let d = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let sub = acyclic_spanning_subdigraph(&d);
        assert_eq!(sub.arcs().len(), 1);
    }

    #[test]
    fn parallel_arcs_are_kept_with_multiplicity() {
        let d = Digraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let sub = acyclic_spanning_subdigraph(&d);
        assert!(is_acyclic(&sub));
        assert_eq!(sub.arcs(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn exhaustive_small_digraphs_satisfy_the_postconditions() {
        for n in 0..=3usize {
            let slots: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
                .collect();
            for mask in 0u32..(1 << slots.len()) {
                let arcs: Vec<(usize, usize)> = slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &arc)| arc)
                    .collect();
                check_postconditions(&Digraph::new(n, arcs).unwrap());
            }
        }
    }

    #[test]
    fn exhaustive_four_vertex_multidigraphs_satisfy_the_postconditions() {
        // Every loop-free digraph on 4 vertices with arc multiplicity at
        // most 2, encoded base 3 over the 12 ordered pairs.
        let slots: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut code = vec![0u8; slots.len()];
        loop {
            let mut arcs = Vec::new();
            for (i, &(a, b)) in slots.iter().enumerate() {
                for _ in 0..code[i] {
                    arcs.push((a, b));
                }
            }
            let d = Digraph::new(4, arcs).unwrap();
            let sub = acyclic_spanning_subdigraph(&d);
            assert!(is_acyclic(&sub));
            assert!(degrees_retained(&d, &sub));
            let mut i = 0;
            while i < code.len() && code[i] == 2 {
                code[i] = 0;
                i += 1;
            }
            if i == code.len() {
                break;
            }
            code[i] += 1;
        }
    }

    #[test]
    fn random_digraphs_satisfy_the_postconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let mut arcs = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(0.3) {
                        arcs.push((a, b));
                    }
                }
            }
            check_postconditions(&Digraph::new(n, arcs).unwrap());
        }
    }

    #[test]
    fn kahn_detects_cycles() {
        let cyclic = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!is_acyclic(&cyclic));
        let dag = Digraph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(is_acyclic(&dag));
        assert!(is_acyclic(&Digraph::new(0, vec![]).unwrap()));
    }
}
