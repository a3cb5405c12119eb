//! End-to-end avoidance-cycle certification for line graphs of cyclically
//! 4-edge-connected cubic planar graphs, plus the interval and tightness
//! reports built on the same search engine.
//!
//! For each forbidden vertex the replay assembles, per required length, a
//! validated cycle that avoids it. Constructive mode derives witnesses the
//! structural way: a partition triangle for length 3, a lifted short face
//! for length 5, interval extension of a lifted cycle for middle lengths,
//! and center removal below a Hamilton cycle for large lengths, with exact
//! search as a recorded last resort. Oracle mode searches directly for
//! every length.

use std::collections::BTreeMap;

use crate::cycles::{
    circumference, cycle_spectrum, find_cycle_in_range_through, find_cycle_of_length,
    hamilton_cycle_through, Budget, Cycle, CycleError,
};
use crate::embed::Embedding;
use crate::graph::{Edge, Graph, LineGraphMap};
use crate::triangles::{
    classify_triangles, compute_s_map, extend_by_lambda, lift_cycle, maximal_lambda,
    shorten_by_centers, triangle_home,
};

/// Which derivation produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// A partition triangle away from the forbidden vertex.
    Triangle,
    /// A short base-graph face, lifted, with one extension when length 4.
    LiftedFace,
    /// A lifted interval witness grown edge by edge.
    IntervalExtend,
    /// A Hamilton cycle with triangle centers removed.
    HamiltonShorten,
    /// Exact search, used for the smallest base graph and as fallback.
    DirectSearch,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Triangle => "triangle",
            Phase::LiftedFace => "lifted-face",
            Phase::IntervalExtend => "interval-extend",
            Phase::HamiltonShorten => "hamilton-shorten",
            Phase::DirectSearch => "direct-search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Constructive,
    Oracle,
}

/// A certified cycle with the phase that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremWitness {
    pub cycle: Cycle,
    pub phase: Phase,
}

/// An interval witness consumed by the extension phase: the base-graph
/// cycle, its lift, and whether it was routed through three of the
/// boundary degree-2 vertices (which is what the extension-count bound
/// needs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionEvidence {
    pub base_cycle: Cycle,
    pub lifted: Cycle,
    pub constrained: bool,
}

/// Outcome of one (base graph, forbidden vertex) replay.
#[derive(Clone, Debug)]
pub struct TheoremReplay {
    pub n: usize,
    pub forbidden: usize,
    pub witnesses: BTreeMap<usize, TheoremWitness>,
    pub evidence: Vec<PropositionEvidence>,
    pub failures: Vec<(usize, String)>,
}

impl TheoremReplay {
    pub fn all_certified(&self) -> bool {
        self.failures.is_empty()
            && required_lengths(self.n)
                .iter()
                .all(|l| self.witnesses.contains_key(l))
    }

    pub fn phase_of(&self, l: usize) -> Option<Phase> {
        self.witnesses.get(&l).map(|w| w.phase)
    }
}

/// The lengths that must be certified for a line graph on `n` vertices:
/// 3 and everything from 5 to n - 1.
pub fn required_lengths(n: usize) -> Vec<usize> {
    let mut out = vec![3];
    out.extend(5..n);
    out
}

struct Replay<'a> {
    g: &'a Graph,
    lmap: &'a LineGraphMap,
    forbidden: usize,
    witnesses: BTreeMap<usize, TheoremWitness>,
    evidence: Vec<PropositionEvidence>,
    failures: Vec<(usize, String)>,
    notes: BTreeMap<usize, String>,
}

impl Replay<'_> {
    fn insert(&mut self, l: usize, cycle: Cycle, phase: Phase) {
        if cycle.len() != l {
            self.failures
                .push((l, format!("witness has length {}", cycle.len())));
            return;
        }
        if cycle.contains_vertex(self.forbidden) {
            self.failures
                .push((l, format!("witness passes through {}", self.forbidden)));
            return;
        }
        if let Err(e) = cycle.validate(self.g) {
            self.failures.push((l, format!("witness invalid: {e}")));
            return;
        }
        self.witnesses.insert(l, TheoremWitness { cycle, phase });
    }

    fn note(&mut self, l: usize, msg: impl Into<String>) {
        self.notes.entry(l).or_insert_with(|| msg.into());
    }
}

/// Certifies an avoidance cycle of every required length in the line graph
/// of `y`, for forbidden line-graph vertex `v`.
pub fn replay_theorem(
    y: &Graph,
    emb: &Embedding,
    v: usize,
    mode: Mode,
    budget: &mut Budget,
) -> Result<TheoremReplay, CycleError> {
    let (g, lmap) = y.line_graph();
    let n = g.n();
    assert!(v < n, "forbidden vertex out of range");
    let required = required_lengths(n);
    let mut replay = Replay {
        g: &g,
        lmap: &lmap,
        forbidden: v,
        witnesses: BTreeMap::new(),
        evidence: Vec::new(),
        failures: Vec::new(),
        notes: BTreeMap::new(),
    };

    if mode == Mode::Constructive && y.n() > 4 {
        triangle_phase(&mut replay);
        face_phase(&mut replay, y, emb, budget)?;
        middle_phase(&mut replay, y, budget)?;
        large_phase(&mut replay, budget)?;
    }

    for &l in &required {
        if replay.witnesses.contains_key(&l) {
            continue;
        }
        match find_cycle_of_length(&g, l, Some(v), budget)? {
            Some(c) => replay.insert(l, c, Phase::DirectSearch),
            None => {
                let msg = replay
                    .notes
                    .get(&l)
                    .cloned()
                    .unwrap_or_else(|| "no cycle of this length avoids the vertex".into());
                replay.failures.push((l, msg));
            }
        }
    }

    Ok(TheoremReplay {
        n,
        forbidden: v,
        witnesses: replay.witnesses,
        evidence: replay.evidence,
        failures: replay.failures,
    })
}

/// Length 3: the partition triangle of the smallest base vertex away from
/// the forbidden vertex's base edge.
fn triangle_phase(replay: &mut Replay<'_>) {
    let f = replay.lmap.edge_of(replay.forbidden);
    let triangles = replay
        .lmap
        .triangle_partition()
        .expect("replay requires a cubic base graph");
    let w = (0..triangles.len())
        .find(|&w| !f.contains(w))
        .expect("a cubic graph has more than two vertices");
    let tri = triangles[w];
    replay.insert(3, Cycle::from_traversal(&tri), Phase::Triangle);
}

/// Length 5: lift a face of length 5 whose edges miss the forbidden base
/// edge, or a face of length 4 grown by one third vertex.
fn face_phase(
    replay: &mut Replay<'_>,
    y: &Graph,
    emb: &Embedding,
    _budget: &mut Budget,
) -> Result<(), CycleError> {
    let f = replay.lmap.edge_of(replay.forbidden);
    let face = emb
        .faces()
        .iter()
        .find(|q| (4..=5).contains(&q.len()) && !q.contains_edge(f));
    let Some(face) = face else {
        replay.note(5, "no face of length 4 or 5 avoids the forbidden base edge");
        return Ok(());
    };
    let c_h = match Cycle::from_vertices(y, face.walk()) {
        Ok(c) => c,
        Err(e) => {
            replay.note(5, format!("face walk is not a cycle: {e}"));
            return Ok(());
        }
    };
    let c_g = lift_cycle(replay.lmap, &c_h);
    if c_g.len() == 5 {
        replay.insert(5, c_g, Phase::LiftedFace);
        return Ok(());
    }
    // Grow the lifted 4-cycle at the smallest face vertex that is not an
    // endpoint of the forbidden base edge: the third vertex added there is
    // that base vertex's remaining edge, which cannot be the forbidden one.
    let mut best: Option<(usize, Edge)> = None;
    for e in c_g.edges() {
        let w = triangle_home(replay.lmap, e).expect("lifted edges live in triangles");
        if !f.contains(w) && best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, e));
        }
    }
    let Some((_, e)) = best else {
        replay.note(5, "every face vertex touches the forbidden base edge");
        return Ok(());
    };
    match extend_by_lambda(replay.lmap, &c_g, &[e]) {
        Ok(ext) => replay.insert(5, ext, Phase::LiftedFace),
        Err(err) => replay.note(5, format!("face extension failed: {err}")),
    }
    Ok(())
}

/// Lengths from 6 up to (but excluding) two thirds of n: find an interval
/// witness in the base graph minus the forbidden edge's endpoints, lift
/// it, and extend one third vertex at a time.
fn middle_phase(replay: &mut Replay<'_>, y: &Graph, budget: &mut Budget) -> Result<(), CycleError> {
    let n = replay.g.n();
    let two_thirds = 2 * n / 3;
    if two_thirds <= 6 {
        return Ok(());
    }
    let f = replay.lmap.edge_of(replay.forbidden);
    let (h, hmap) = y.delete_vertices(&[f.u(), f.v()]);
    let boundary: Vec<usize> = (0..h.n()).filter(|&x| h.degree(x) == 2).collect();
    debug_assert_eq!(boundary.len(), 4);

    let mut bundles: BTreeMap<usize, Option<Bundle>> = BTreeMap::new();

    for l in 6..two_thirds {
        let a = l / 3;
        if let std::collections::btree_map::Entry::Vacant(slot) = bundles.entry(a) {
            slot.insert(interval_bundle(replay, y, &h, &hmap, &boundary, a, budget)?);
        }
        let Some(bundle) = bundles.get(&a).unwrap() else {
            replay.note(l, "no interval witness in the reduced base graph");
            continue;
        };
        let need = l - bundle.lifted.len();
        if need > bundle.lambda_edges.len() {
            replay.note(
                l,
                format!(
                    "only {} distinct third vertices for {need} extensions",
                    bundle.lambda_edges.len()
                ),
            );
            continue;
        }
        match extend_by_lambda(replay.lmap, &bundle.lifted, &bundle.lambda_edges[..need]) {
            Ok(ext) => replay.insert(l, ext, Phase::IntervalExtend),
            Err(err) => replay.note(l, format!("extension failed: {err}")),
        }
    }
    Ok(())
}

/// A lifted interval witness with its extension edges.
struct Bundle {
    lifted: Cycle,
    lambda_edges: Vec<Edge>,
}

/// A lifted interval witness for window [2a, 3a], preferring cycles routed
/// through three of the four boundary degree-2 vertices (tried in
/// ascending-triple order) and falling back to an unconstrained witness.
fn interval_bundle(
    replay: &mut Replay<'_>,
    y: &Graph,
    h: &Graph,
    hmap: &crate::graph::VertexMap,
    boundary: &[usize],
    a: usize,
    budget: &mut Budget,
) -> Result<Option<Bundle>, CycleError> {
    let (lo, hi) = (2 * a, 3 * a);
    let mut found: Option<(Cycle, bool)> = None;
    let triples: [[usize; 3]; 4] = [
        [boundary[0], boundary[1], boundary[2]],
        [boundary[0], boundary[1], boundary[3]],
        [boundary[0], boundary[2], boundary[3]],
        [boundary[1], boundary[2], boundary[3]],
    ];
    for triple in triples {
        if let Some(c) = find_cycle_in_range_through(h, lo, hi, &triple, None, budget)? {
            found = Some((c, true));
            break;
        }
    }
    if found.is_none() {
        if let Some(c) = find_cycle_in_range_through(h, lo, hi, &[], None, budget)? {
            found = Some((c, false));
        }
    }
    let Some((c_h_local, constrained)) = found else {
        return Ok(None);
    };
    let in_y: Vec<usize> = c_h_local
        .vertices()
        .iter()
        .map(|&x| hmap.new_to_old[x])
        .collect();
    let base_cycle = Cycle::from_vertices(y, &in_y).expect("witness survives index mapping");
    let lifted = lift_cycle(replay.lmap, &base_cycle);
    let smap = match compute_s_map(replay.lmap, &lifted) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    let lambda = maximal_lambda(&smap);
    replay.evidence.push(PropositionEvidence {
        base_cycle,
        lifted: lifted.clone(),
        constrained,
    });
    Ok(Some(Bundle {
        lifted,
        lambda_edges: lambda.edges().to_vec(),
    }))
}

/// Lengths from two thirds of n up to n - 1: one Hamilton cycle through
/// the forbidden vertex's triangle, then simultaneous center removals that
/// always include the forbidden center.
fn large_phase(replay: &mut Replay<'_>, budget: &mut Budget) -> Result<(), CycleError> {
    let n = replay.g.n();
    let two_thirds = 2 * n / 3;
    let v = replay.forbidden;
    let f = replay.lmap.edge_of(v);
    let triangles = replay.lmap.triangle_partition().unwrap();

    let mut base: Option<Cycle> = None;
    for w in [f.u().min(f.v()), f.u().max(f.v())] {
        let tri = triangles[w];
        debug_assert!(tri.contains(&v));
        let mut rest = tri.iter().copied().filter(|&x| x != v);
        let (x, y) = (rest.next().unwrap(), rest.next().unwrap());
        let e1 = Edge::new(v, x);
        let e2 = Edge::new(v, y);
        let e3 = Edge::new(x, y);
        if let Some(c) = hamilton_cycle_through(replay.g, e1, e2, e3, budget)? {
            base = Some(c);
            break;
        }
    }
    let Some(base) = base else {
        for l in two_thirds..n {
            replay.note(l, "no Hamilton cycle through the forbidden vertex's triangle");
        }
        return Ok(());
    };

    let classification = match classify_triangles(replay.lmap, &base) {
        Ok(cl) => cl,
        Err(err) => {
            for l in two_thirds..n {
                replay.note(l, format!("classification failed: {err}"));
            }
            return Ok(());
        }
    };
    debug_assert!(classification.identities_hold());
    let Some(t_v) = classification.triangle_with_center(v) else {
        for l in two_thirds..n {
            replay.note(l, "forbidden vertex is not a center of the Hamilton cycle");
        }
        return Ok(());
    };
    let pool: Vec<usize> = classification
        .two_triangles()
        .into_iter()
        .filter(|&w| w != t_v)
        .collect();

    for l in two_thirds..n {
        let j = n - l;
        if j - 1 > pool.len() {
            replay.note(l, format!("only {} removable centers", pool.len() + 1));
            continue;
        }
        let mut chosen = vec![t_v];
        chosen.extend_from_slice(&pool[..j - 1]);
        match shorten_by_centers(replay.lmap, &base, &chosen) {
            Ok(c) => replay.insert(l, c, Phase::HamiltonShorten),
            Err(err) => replay.note(l, format!("shortening failed: {err}")),
        }
    }
    Ok(())
}

/// Interval check for one adjacent base pair: for every even window start
/// up to the circumference of the reduced graph, a witness whose length
/// stays within one and a half times the start.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub pair: (usize, usize),
    pub h_vertex_count: usize,
    pub circumference: usize,
    pub checks: Vec<(usize, Option<Cycle>)>,
}

impl PairReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, w)| w.is_some())
    }
}

/// Runs the interval check on `y` minus the adjacent pair. Witnesses are
/// reported in the coordinates of `y`.
pub fn proposition_pair_report(
    y: &Graph,
    pair: (usize, usize),
    budget: &mut Budget,
) -> Result<PairReport, CycleError> {
    assert!(y.has_edge(pair.0, pair.1), "pair must be adjacent");
    let (h, hmap) = y.delete_vertices(&[pair.0, pair.1]);
    let circ = match circumference(&h, budget) {
        Ok(c) => c,
        Err(CycleError::Acyclic) => 0,
        Err(e) => return Err(e),
    };
    let mut checks = Vec::new();
    let mut k = 4;
    while k <= circ {
        let witness = find_cycle_in_range_through(&h, k, 3 * k / 2, &[], None, budget)?;
        let in_y = witness.map(|c| {
            let vs: Vec<usize> = c.vertices().iter().map(|&x| hmap.new_to_old[x]).collect();
            Cycle::from_vertices(y, &vs).expect("witness survives index mapping")
        });
        checks.push((k, in_y));
        k += 2;
    }
    Ok(PairReport {
        pair,
        h_vertex_count: h.n(),
        circumference: circ,
        checks,
    })
}

/// Interval tightness survey of one graph: for each even window start k up
/// to the circumference, the least cycle length at or above k, tracking
/// the worst ratio against the conjectured ceiling of one and a half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    pub spectrum: Vec<usize>,
    pub rows: Vec<(usize, usize)>,
    pub worst: Option<(usize, usize)>,
    pub counterexample: bool,
}

pub fn tightness_scan(g: &Graph, budget: &mut Budget) -> Result<TightnessReport, CycleError> {
    let spectrum = cycle_spectrum(g, None, budget)?;
    let lengths = spectrum.lengths();
    let circ = lengths.last().copied().unwrap_or(0);
    let mut rows = Vec::new();
    let mut worst: Option<(usize, usize)> = None;
    let mut counterexample = false;
    let mut k = 4;
    while k <= circ {
        let m = *lengths
            .iter()
            .find(|&&l| l >= k)
            .expect("circumference bounds the window start");
        rows.push((k, m));
        // Compare m/k against the running worst by cross-multiplication.
        if worst.is_none_or(|(wm, wk)| m * wk > wm * k) {
            worst = Some((m, k));
        }
        if 2 * m > 3 * k {
            counterexample = true;
        }
        k += 2;
    }
    Ok(TightnessReport {
        spectrum: lengths,
        rows,
        worst,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangles::compute_s_map;

    #[test]
    fn required_lengths_skip_four_only() {
        assert_eq!(required_lengths(6), vec![3, 5]);
        assert_eq!(required_lengths(12), vec![3, 5, 6, 7, 8, 9, 10, 11]);
    }

    #[test]
    fn smallest_fixture_certifies_by_direct_search() {
        let (y, emb) = fixtures::k4();
        for v in 0..6 {
            let mut budget = Budget::default();
            let replay = replay_theorem(&y, &emb, v, Mode::Constructive, &mut budget).unwrap();
            assert!(replay.all_certified(), "vertex {v}: {:?}", replay.failures);
            assert_eq!(replay.witnesses.len(), 2);
            for w in replay.witnesses.values() {
                assert_eq!(w.phase, Phase::DirectSearch);
                assert!(!w.cycle.contains_vertex(v));
            }
        }
    }

    #[test]
    fn cube_replay_uses_every_constructive_phase() {
        let (y, emb) = fixtures::cube();
        for v in 0..12 {
            let mut budget = Budget::default();
            let replay = replay_theorem(&y, &emb, v, Mode::Constructive, &mut budget).unwrap();
            assert!(replay.all_certified(), "vertex {v}: {:?}", replay.failures);
            assert_eq!(replay.phase_of(3), Some(Phase::Triangle));
            assert_eq!(replay.phase_of(5), Some(Phase::LiftedFace));
            for l in 6..8 {
                assert_eq!(replay.phase_of(l), Some(Phase::IntervalExtend), "l={l}");
            }
            for l in 8..12 {
                assert_eq!(replay.phase_of(l), Some(Phase::HamiltonShorten), "l={l}");
            }
            assert!(!replay.evidence.is_empty());
            for ev in &replay.evidence {
                assert!(ev.constrained, "vertex {v} needed a fallback witness");
                assert_eq!(ev.base_cycle.len(), ev.lifted.len());
            }
        }
    }

    #[test]
    fn oracle_mode_certifies_everything_directly() {
        let (y, emb) = fixtures::cube();
        let mut budget = Budget::default();
        let replay = replay_theorem(&y, &emb, 0, Mode::Oracle, &mut budget).unwrap();
        assert!(replay.all_certified());
        assert!(replay
            .witnesses
            .values()
            .all(|w| w.phase == Phase::DirectSearch));
        assert!(replay.evidence.is_empty());
    }

    #[test]
    fn largest_fixture_replays_for_sampled_vertices() {
        let (y, emb) = fixtures::dodecahedron();
        for v in [0usize, 17, 29] {
            let mut budget = Budget::default();
            let replay = replay_theorem(&y, &emb, v, Mode::Constructive, &mut budget).unwrap();
            assert!(replay.all_certified(), "vertex {v}: {:?}", replay.failures);
            assert_eq!(replay.phase_of(3), Some(Phase::Triangle));
            assert_eq!(replay.phase_of(5), Some(Phase::LiftedFace));
            for l in 6..20 {
                assert_eq!(replay.phase_of(l), Some(Phase::IntervalExtend), "l={l}");
            }
            for l in 20..30 {
                assert_eq!(replay.phase_of(l), Some(Phase::HamiltonShorten), "l={l}");
            }
        }
    }

    #[test]
    fn evidence_supports_the_extension_count_bound() {
        let (y, emb) = fixtures::cube();
        let (_, lmap) = y.line_graph();
        for v in 0..12 {
            let mut budget = Budget::default();
            let replay = replay_theorem(&y, &emb, v, Mode::Constructive, &mut budget).unwrap();
            for ev in &replay.evidence {
                let smap = compute_s_map(&lmap, &ev.lifted).unwrap();
                let lambda = maximal_lambda(&smap);
                let l = ev.lifted.len();
                assert!(
                    !ev.constrained || lambda.len() >= (l + 3).div_ceil(2),
                    "vertex {v}: lambda {} below bound for length {l}",
                    lambda.len()
                );
            }
        }
    }

    #[test]
    fn pair_report_covers_every_even_window() {
        let y = fixtures::cube().0;
        let mut budget = Budget::default();
        let report = proposition_pair_report(&y, (0, 1), &mut budget).unwrap();
        assert_eq!(report.h_vertex_count, 6);
        assert_eq!(report.circumference, 6);
        assert_eq!(report.checks.len(), 2);
        assert!(report.all_pass());
        let (k, w) = &report.checks[0];
        assert_eq!(*k, 4);
        let w = w.as_ref().unwrap();
        assert!(w.len() >= 4 && w.len() <= 6);
        let (k, w) = &report.checks[1];
        assert_eq!(*k, 6);
        assert_eq!(w.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn pair_reports_pass_on_the_largest_fixture() {
        let y = fixtures::dodecahedron().0;
        let mut budget = Budget::default();
        let report = proposition_pair_report(&y, (0, 1), &mut budget).unwrap();
        assert_eq!(report.h_vertex_count, 18);
        assert!(report.circumference >= 14);
        assert!(report.all_pass());
        for (k, w) in &report.checks {
            let len = w.as_ref().unwrap().len();
            assert!(len >= *k && 2 * len <= 3 * k);
        }
    }

    #[test]
    fn tightness_scan_of_the_cube_is_flat() {
        let y = fixtures::cube().0;
        let mut budget = Budget::default();
        let report = tightness_scan(&y, &mut budget).unwrap();
        assert_eq!(report.spectrum, vec![4, 6, 8]);
        assert_eq!(report.rows, vec![(4, 4), (6, 6), (8, 8)]);
        assert_eq!(report.worst, Some((4, 4)));
        assert!(!report.counterexample);
    }

    #[test]
    fn tightness_scan_of_the_largest_fixture_stays_in_bounds() {
        let y = fixtures::dodecahedron().0;
        let mut budget = Budget::default();
        let report = tightness_scan(&y, &mut budget).unwrap();
        assert_eq!(report.spectrum.first(), Some(&5));
        assert_eq!(report.spectrum.last(), Some(&20));
        assert!(!report.counterexample);
        for (k, m) in &report.rows {
            assert!(m >= k && 2 * m <= 3 * k);
        }
    }
}
