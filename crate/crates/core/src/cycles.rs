//! Exact cycle search: existence by length, full spectra, circumference,
//! and constrained variants (through prescribed vertices or edges, avoiding
//! a prescribed vertex).
//!
//! Every search is exact backtracking, never heuristic. Fixed-length
//! searches root at the minimum vertex of the sought cycle, restrict to one
//! biconnected block at a time, and prune with a visited-aware breadth-first
//! feasibility test. Exponential blowup is cut off by an explicit
//! node-expansion budget that fails loudly instead of returning a wrong
//! answer.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::connectivity::{blocks, masked_components};
use crate::embed::{Embedding, Face};
use crate::graph::{Edge, Graph};

/// Default node-expansion cap per search entry point.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("graph contains no cycle")]
    Acyclic,
    #[error("node budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("exhaustive search found no cycle satisfying the attachment conditions")]
    TheoremViolation,
}

fn invalid(msg: impl Into<String>) -> CycleError {
    CycleError::InvalidCycle(msg.into())
}

/// Mutable node-expansion allowance shared by a sequence of searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    cap: u64,
    spent: u64,
}

impl Budget {
    pub fn new(cap: u64) -> Budget {
        Budget { cap, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn charge(&mut self) -> Result<(), CycleError> {
        if self.spent >= self.cap {
            return Err(CycleError::BudgetExceeded(self.cap));
        }
        self.spent += 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

/// A simple cycle in canonical form: the minimum vertex first, then the
/// direction whose second vertex is smaller.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Validates that `vertices` is a cycle of `g` and canonicalizes it.
    pub fn from_vertices(g: &Graph, vertices: &[usize]) -> Result<Cycle, CycleError> {
        let k = vertices.len();
        if k < 3 {
            return Err(invalid(format!("{k} vertices, need at least 3")));
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated vertex"));
        }
        if sorted[k - 1] >= g.n() {
            return Err(invalid(format!("vertex {} out of range", sorted[k - 1])));
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !g.has_edge(a, b) {
                return Err(invalid(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(Cycle::from_traversal(vertices))
    }

    /// Canonicalizes a traversal already known to be a cycle.
    pub(crate) fn from_traversal(path: &[usize]) -> Cycle {
        let k = path.len();
        let start = (0..k).min_by_key(|&i| path[i]).unwrap();
        let mut vertices: Vec<usize> = path[start..].to_vec();
        vertices.extend_from_slice(&path[..start]);
        if vertices[1] > vertices[k - 1] {
            vertices[1..].reverse();
        }
        Cycle { vertices }
    }

    /// Number of edges (equal to the number of vertices).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let k = self.vertices.len();
        (0..k).any(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]) == e)
    }

    /// Re-checks the cycle against a host graph.
    pub fn validate(&self, g: &Graph) -> Result<(), CycleError> {
        Cycle::from_vertices(g, &self.vertices).map(|_| ())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Which cycle lengths are present, each with a stored witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpectrum {
    n: usize,
    forbid: Option<usize>,
    witnesses: BTreeMap<usize, Cycle>,
}

impl CycleSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forbid(&self) -> Option<usize> {
        self.forbid
    }

    pub fn present(&self, l: usize) -> bool {
        self.witnesses.contains_key(&l)
    }

    pub fn witness(&self, l: usize) -> Option<&Cycle> {
        self.witnesses.get(&l)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn shortest(&self) -> Option<usize> {
        self.witnesses.keys().next().copied()
    }

    pub fn longest(&self) -> Option<usize> {
        self.witnesses.keys().next_back().copied()
    }
}

/// First cycle of length exactly `l` avoiding `forbid`, by deterministic
/// exhaustive search.
pub fn find_cycle_of_length(
    g: &Graph,
    l: usize,
    forbid: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<Cycle>, CycleError> {
    find_cycle_through(g, l, &[], forbid, budget)
}

/// First cycle of length exactly `l` through every vertex of `required`,
/// avoiding `forbid`.
pub fn find_cycle_through(
    g: &Graph,
    l: usize,
    required: &[usize],
    forbid: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<Cycle>, CycleError> {
    let mut found = None;
    search_fixed_length(g, l, required, forbid, budget, |path| {
        found = Some(Cycle::from_traversal(path));
        true
    })?;
    Ok(found)
}

/// First witness over lengths `lo..=hi` in ascending order.
pub fn find_cycle_in_range_through(
    g: &Graph,
    lo: usize,
    hi: usize,
    required: &[usize],
    forbid: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<Cycle>, CycleError> {
    for l in lo..=hi {
        if let Some(c) = find_cycle_through(g, l, required, forbid, budget)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Witnessed existence for every length `3..=n`, avoiding `forbid`.
pub fn cycle_spectrum(
    g: &Graph,
    forbid: Option<usize>,
    budget: &mut Budget,
) -> Result<CycleSpectrum, CycleError> {
    let mut witnesses = BTreeMap::new();
    for l in 3..=g.n() {
        if let Some(c) = find_cycle_of_length(g, l, forbid, budget)? {
            witnesses.insert(l, c);
        }
    }
    Ok(CycleSpectrum {
        n: g.n(),
        forbid,
        witnesses,
    })
}

/// Length of a longest cycle.
pub fn circumference(g: &Graph, budget: &mut Budget) -> Result<usize, CycleError> {
    for l in (3..=g.n()).rev() {
        if find_cycle_of_length(g, l, None, budget)?.is_some() {
            return Ok(l);
        }
    }
    Err(CycleError::Acyclic)
}

/// Up to `limit` Hamilton cycles, each reported exactly once, in
/// deterministic search order.
pub fn hamilton_cycles(
    g: &Graph,
    limit: usize,
    budget: &mut Budget,
) -> Result<Vec<Cycle>, CycleError> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    search_fixed_length(g, g.n(), &[], None, budget, |path| {
        out.push(Cycle::from_traversal(path));
        out.len() == limit
    })?;
    Ok(out)
}

/// Hamilton cycle of `g - avoid` through the adjacent edges `e1` and `e2`.
pub fn hamilton_cycle_through(
    g: &Graph,
    e1: Edge,
    e2: Edge,
    avoid: Edge,
    budget: &mut Budget,
) -> Result<Option<Cycle>, CycleError> {
    let v = e1
        .shared_vertex(&e2)
        .expect("required edges must share a vertex");
    assert!(
        avoid != e1 && avoid != e2,
        "avoided edge must differ from the required edges"
    );
    debug_assert!(g.has_edge(e1.u(), e1.v()) && g.has_edge(e2.u(), e2.v()));
    let a = e1.other(v);
    let b = e2.other(v);
    if g.n() < 3 || a == b {
        return Ok(None);
    }
    let mut search = ForcedSearch {
        g,
        avoid,
        close_at: a,
        visited: vec![false; g.n()],
        path: vec![a, v, b],
        seen: vec![0; g.n()],
        generation: 0,
        queue: Vec::with_capacity(g.n()),
    };
    search.visited[a] = true;
    search.visited[v] = true;
    search.visited[b] = true;
    Ok(search.dfs(budget)?.map(|path| Cycle::from_traversal(&path)))
}

/// Fixed-length rooted search. Calls `on_found` with each cycle traversal
/// (original vertex indices, minimum vertex first); a `true` return stops
/// the search. Each qualifying cycle is reported exactly once.
fn search_fixed_length(
    g: &Graph,
    target: usize,
    required: &[usize],
    forbid: Option<usize>,
    budget: &mut Budget,
    mut on_found: impl FnMut(&[usize]) -> bool,
) -> Result<(), CycleError> {
    if target < 3 || target > g.n() {
        return Ok(());
    }
    let mut required = required.to_vec();
    required.sort_unstable();
    required.dedup();
    if let Some(f) = forbid {
        if required.contains(&f) {
            return Ok(());
        }
    }
    // The root is the minimum vertex of the cycle, so it cannot exceed any
    // required vertex.
    let root_max = required.first().copied().unwrap_or(g.n() - 1);
    for root in 0..=root_max {
        if Some(root) == forbid {
            continue;
        }
        let mut kill: Vec<usize> = (0..root).collect();
        if let Some(f) = forbid {
            if f > root {
                kill.push(f);
            }
        }
        let (sub, map) = g.delete_vertices(&kill);
        if sub.n() < target {
            break;
        }
        debug_assert_eq!(map.old_to_new[root], Some(0));
        let required_sub: Vec<usize> = required
            .iter()
            .map(|&v| map.old_to_new[v].expect("required vertex survives"))
            .collect();
        // A cycle through the root lies inside one biconnected block.
        for block in blocks(&sub) {
            if block.vertices.len() < target
                || block.vertices.binary_search(&0).is_err()
                || !required_sub
                    .iter()
                    .all(|v| block.vertices.binary_search(v).is_ok())
            {
                continue;
            }
            let mut scope = vec![false; sub.n()];
            for &v in &block.vertices {
                scope[v] = true;
            }
            let mut required_mark = vec![false; sub.n()];
            let mut required_missing = 0;
            for &v in &required_sub {
                if v != 0 && !required_mark[v] {
                    required_mark[v] = true;
                    required_missing += 1;
                }
            }
            let mut search = RootedSearch {
                g: &sub,
                target,
                scope,
                required_mark,
                required_missing,
                visited: vec![false; sub.n()],
                path: vec![0],
                seen: vec![0; sub.n()],
                dist: vec![0; sub.n()],
                generation: 0,
                queue: Vec::with_capacity(sub.n()),
            };
            search.visited[0] = true;
            let mut translated = vec![0usize; target];
            let stopped = search.dfs(budget, &mut |path: &[usize]| {
                for (slot, &v) in translated.iter_mut().zip(path) {
                    *slot = map.new_to_old[v];
                }
                on_found(&translated)
            })?;
            if stopped {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Backtracking state for fixed-length search rooted at vertex 0 of a
/// compacted subgraph.
struct RootedSearch<'a> {
    g: &'a Graph,
    target: usize,
    scope: Vec<bool>,
    required_mark: Vec<bool>,
    required_missing: usize,
    visited: Vec<bool>,
    path: Vec<usize>,
    // Scratch for the feasibility sweep, reused across nodes.
    seen: Vec<u32>,
    dist: Vec<u32>,
    generation: u32,
    queue: Vec<usize>,
}

impl RootedSearch<'_> {
    fn dfs(
        &mut self,
        budget: &mut Budget,
        on_found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, CycleError> {
        budget.charge()?;
        let k = self.path.len();
        let head = self.path[k - 1];
        if k == self.target {
            // Report each cycle once: of the two traversals from the root,
            // keep the one with the smaller second vertex.
            if self.required_missing == 0
                && self.path[1] < self.path[k - 1]
                && self.g.has_edge(head, 0)
            {
                return Ok(on_found(&self.path));
            }
            return Ok(false);
        }
        if !self.feasible() {
            return Ok(false);
        }
        for i in 0..self.g.neighbors(head).len() {
            let w = self.g.neighbors(head)[i];
            if w == 0 || !self.scope[w] || self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.path.push(w);
            let was_required = self.required_mark[w];
            if was_required {
                self.required_missing -= 1;
            }
            let stopped = self.dfs(budget, on_found)?;
            if was_required {
                self.required_missing += 1;
            }
            self.path.pop();
            self.visited[w] = false;
            if stopped {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Breadth-first sweep from the path head over unvisited in-scope
    /// vertices: the remaining vertices must be reachable in the remaining
    /// steps, some reachable vertex must close back to the root, and every
    /// outstanding required vertex must be reachable.
    fn feasible(&mut self) -> bool {
        let k = self.path.len();
        let head = self.path[k - 1];
        let needed_new = self.target - k;
        self.generation += 1;
        let generation = self.generation;
        self.queue.clear();
        self.queue.push(head);
        self.seen[head] = generation;
        self.dist[head] = 0;
        let mut new_count = 0usize;
        let mut required_reached = 0usize;
        let mut close_ok = false;
        let mut qi = 0;
        while qi < self.queue.len() {
            let u = self.queue[qi];
            qi += 1;
            let du = self.dist[u];
            if du as usize >= needed_new {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if w == 0 || !self.scope[w] || self.visited[w] || self.seen[w] == generation {
                    continue;
                }
                self.seen[w] = generation;
                self.dist[w] = du + 1;
                new_count += 1;
                if self.required_mark[w] {
                    required_reached += 1;
                }
                if !close_ok && self.g.has_edge(w, 0) {
                    close_ok = true;
                }
                self.queue.push(w);
            }
        }
        close_ok && new_count >= needed_new && required_reached == self.required_missing
    }
}

/// Hamilton search from a forced three-vertex start, honoring one globally
/// forbidden edge.
struct ForcedSearch<'a> {
    g: &'a Graph,
    avoid: Edge,
    close_at: usize,
    visited: Vec<bool>,
    path: Vec<usize>,
    seen: Vec<u32>,
    generation: u32,
    queue: Vec<usize>,
}

impl ForcedSearch<'_> {
    fn edge_allowed(&self, a: usize, b: usize) -> bool {
        Edge::new(a, b) != self.avoid
    }

    fn dfs(&mut self, budget: &mut Budget) -> Result<Option<Vec<usize>>, CycleError> {
        budget.charge()?;
        let n = self.g.n();
        let k = self.path.len();
        let head = self.path[k - 1];
        if k == n {
            if self.g.has_edge(head, self.close_at) && self.edge_allowed(head, self.close_at) {
                return Ok(Some(self.path.clone()));
            }
            return Ok(None);
        }
        if !self.feasible() {
            return Ok(None);
        }
        for i in 0..self.g.neighbors(head).len() {
            let w = self.g.neighbors(head)[i];
            if self.visited[w] || !self.edge_allowed(head, w) {
                continue;
            }
            self.visited[w] = true;
            self.path.push(w);
            let result = self.dfs(budget)?;
            self.path.pop();
            self.visited[w] = false;
            if result.is_some() {
                return Ok(result);
            }
        }
        Ok(None)
    }

    /// All unvisited vertices must be reachable from the head, the closing
    /// vertex must be reachable, and no unvisited vertex may have fewer than
    /// two usable neighbors.
    fn feasible(&mut self) -> bool {
        let n = self.g.n();
        let k = self.path.len();
        let head = self.path[k - 1];
        self.generation += 1;
        let generation = self.generation;
        self.queue.clear();
        self.queue.push(head);
        self.seen[head] = generation;
        let mut reached = 0usize;
        let mut close_ok = false;
        let mut qi = 0;
        while qi < self.queue.len() {
            let u = self.queue[qi];
            qi += 1;
            for &w in self.g.neighbors(u) {
                if !self.edge_allowed(u, w) {
                    continue;
                }
                if w == self.close_at {
                    close_ok = true;
                }
                if self.visited[w] || self.seen[w] == generation {
                    continue;
                }
                self.seen[w] = generation;
                reached += 1;
                self.queue.push(w);
            }
        }
        if !close_ok || reached != n - k {
            return false;
        }
        // Degree availability: an unvisited vertex needs two usable
        // neighbors (unvisited, or a path endpoint) to be passed through.
        for u in 0..n {
            if self.visited[u] {
                continue;
            }
            let mut usable = 0;
            for &w in self.g.neighbors(u) {
                if !self.edge_allowed(u, w) {
                    continue;
                }
                if !self.visited[w] || w == head || w == self.close_at {
                    usable += 1;
                }
            }
            if usable < 2 {
                return false;
            }
        }
        true
    }
}

/// Exhaustive witness for the attachment-bounded cycle through three face
/// edges: among all cycles through `t`, `y`, `s`, ordered by length then by
/// canonical vertex sequence, the first whose leftover components attach to
/// at most three cycle vertices (at most two for components meeting `x`).
pub fn tel_witness(
    g: &Graph,
    emb: &Embedding,
    x: &Face,
    t: Edge,
    y: Edge,
    s: Edge,
    budget: &mut Budget,
) -> Result<Cycle, CycleError> {
    debug_assert!(emb.n() == g.n());
    for e in [t, y, s] {
        assert!(x.contains_edge(e), "required edge {e} must lie on the face");
    }
    let mut enumerator = EdgeCycleEnum {
        g,
        close_at: t.u(),
        required: [y, s],
        on_path: [y == t, s == t],
        visited: vec![false; g.n()],
        path: vec![t.u(), t.v()],
        candidates: Vec::new(),
        seen: vec![0; g.n()],
        generation: 0,
        queue: Vec::with_capacity(g.n()),
    };
    enumerator.visited[t.u()] = true;
    enumerator.visited[t.v()] = true;
    enumerator.dfs(budget)?;
    let mut candidates = std::mem::take(&mut enumerator.candidates);
    candidates.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for c in candidates {
        if tel_conditions_hold(g, x, &c) {
            return Ok(c);
        }
    }
    Err(CycleError::TheoremViolation)
}

/// The attachment conditions: every component of `g - V(c)` joins at most
/// three vertices of `c`, and at most two if it meets the face `x`.
pub fn tel_conditions_hold(g: &Graph, x: &Face, c: &Cycle) -> bool {
    let mut keep = vec![true; g.n()];
    for &v in c.vertices() {
        keep[v] = false;
    }
    for comp in masked_components(g, &keep) {
        let mut joined = BTreeSet::new();
        for &u in &comp {
            for &w in g.neighbors(u) {
                if !keep[w] {
                    joined.insert(w);
                }
            }
        }
        if joined.len() > 3 {
            return false;
        }
        if joined.len() > 2 && comp.iter().any(|&u| x.contains_vertex(u)) {
            return false;
        }
    }
    true
}

/// Enumerates every cycle through the seed edge, recording those that also
/// traverse both required edges.
struct EdgeCycleEnum<'a> {
    g: &'a Graph,
    close_at: usize,
    required: [Edge; 2],
    on_path: [bool; 2],
    visited: Vec<bool>,
    path: Vec<usize>,
    candidates: Vec<Cycle>,
    seen: Vec<u32>,
    generation: u32,
    queue: Vec<usize>,
}

impl EdgeCycleEnum<'_> {
    fn dfs(&mut self, budget: &mut Budget) -> Result<(), CycleError> {
        budget.charge()?;
        let k = self.path.len();
        let head = self.path[k - 1];
        if k >= 3 && self.g.has_edge(head, self.close_at) {
            let closing = Edge::new(head, self.close_at);
            if (0..2).all(|i| self.on_path[i] || self.required[i] == closing) {
                self.candidates.push(Cycle::from_traversal(&self.path));
            }
        }
        if !self.feasible() {
            return Ok(());
        }
        for i in 0..self.g.neighbors(head).len() {
            let w = self.g.neighbors(head)[i];
            if self.visited[w] {
                continue;
            }
            let step = Edge::new(head, w);
            let mut toggled = [false; 2];
            for (j, t) in toggled.iter_mut().enumerate() {
                if !self.on_path[j] && self.required[j] == step {
                    self.on_path[j] = true;
                    *t = true;
                }
            }
            self.visited[w] = true;
            self.path.push(w);
            self.dfs(budget)?;
            self.path.pop();
            self.visited[w] = false;
            for (j, t) in toggled.iter().enumerate() {
                if *t {
                    self.on_path[j] = false;
                }
            }
        }
        Ok(())
    }

    /// The walk must still be able to return to the seed edge and to pick
    /// up each outstanding required edge.
    fn feasible(&mut self) -> bool {
        let k = self.path.len();
        let head = self.path[k - 1];
        for j in 0..2 {
            if self.on_path[j] {
                continue;
            }
            let e = self.required[j];
            if !e.contains(head) && self.visited[e.u()] && self.visited[e.v()] {
                return false;
            }
        }
        if self.g.has_edge(head, self.close_at) {
            return true;
        }
        self.generation += 1;
        let generation = self.generation;
        self.queue.clear();
        self.queue.push(head);
        self.seen[head] = generation;
        let mut qi = 0;
        while qi < self.queue.len() {
            let u = self.queue[qi];
            qi += 1;
            for &w in self.g.neighbors(u) {
                if w == self.close_at {
                    return true;
                }
                if self.visited[w] || self.seen[w] == generation {
                    continue;
                }
                self.seen[w] = generation;
                self.queue.push(w);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::compute_embedding;
    use crate::fixtures;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn octahedron() -> Graph {
        fixtures::k4().0.line_graph().0
    }

    fn cuboctahedron() -> Graph {
        fixtures::cube().0.line_graph().0
    }

    /// Independent oracle: a length is present when some vertex subset of
    /// that size carries a spanning cycle, found by trying permutations.
    fn naive_lengths(g: &Graph, forbid: Option<usize>) -> Vec<usize> {
        fn subset_has_spanning_cycle(g: &Graph, subset: &[usize]) -> bool {
            let k = subset.len();
            let mut perm: Vec<usize> = (1..k).collect();
            // Heap's algorithm over the tail, anchoring subset[0].
            let mut c = vec![0usize; k];
            let check = |tail: &[usize]| -> bool {
                let mut prev = subset[0];
                for &i in tail {
                    if !g.has_edge(prev, subset[i]) {
                        return false;
                    }
                    prev = subset[i];
                }
                g.has_edge(prev, subset[0])
            };
            if check(&perm) {
                return true;
            }
            let mut i = 0;
            while i < perm.len() {
                if c[i] < i {
                    if i % 2 == 0 {
                        perm.swap(0, i);
                    } else {
                        perm.swap(c[i], i);
                    }
                    if check(&perm) {
                        return true;
                    }
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            false
        }

        let n = g.n();
        let mut present = vec![false; n + 1];
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if subset.len() < 3 || present[subset.len()] {
                continue;
            }
            if forbid.is_some_and(|f| subset.contains(&f)) {
                continue;
            }
            if subset_has_spanning_cycle(g, &subset) {
                present[subset.len()] = true;
            }
        }
        (3..=n).filter(|&l| present[l]).collect()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for v in 0..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let g = fixtures::cube().0;
        let a = Cycle::from_vertices(&g, &[0, 1, 3, 2]).unwrap();
        let b = Cycle::from_vertices(&g, &[3, 1, 0, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[0, 1, 3, 2]);
        assert_eq!(a.len(), 4);
        assert!(a.contains_edge(Edge::new(0, 2)));
        assert!(!a.contains_edge(Edge::new(0, 3)));
        assert_eq!(a.to_string(), "0-1-3-2");
    }

    #[test]
    fn invalid_vertex_lists_are_rejected() {
        let g = fixtures::cube().0;
        assert!(Cycle::from_vertices(&g, &[0, 1]).is_err());
        assert!(Cycle::from_vertices(&g, &[0, 1, 1]).is_err());
        assert!(Cycle::from_vertices(&g, &[0, 1, 7]).is_err());
        assert!(Cycle::from_vertices(&g, &[0, 1, 99]).is_err());
    }

    #[test]
    fn octahedron_spectra_with_and_without_a_forbidden_vertex() {
        let g = octahedron();
        let mut budget = Budget::default();
        let full = cycle_spectrum(&g, None, &mut budget).unwrap();
        assert_eq!(full.lengths(), vec![3, 4, 5, 6]);
        for v in 0..6 {
            let s = cycle_spectrum(&g, Some(v), &mut budget).unwrap();
            assert_eq!(s.lengths(), vec![3, 4, 5], "forbidding {v}");
            for l in s.lengths() {
                let w = s.witness(l).unwrap();
                w.validate(&g).unwrap();
                assert!(!w.contains_vertex(v));
            }
        }
    }

    #[test]
    fn cuboctahedron_spectrum_is_full_even_with_a_forbidden_vertex() {
        let g = cuboctahedron();
        let mut budget = Budget::default();
        let s = cycle_spectrum(&g, Some(0), &mut budget).unwrap();
        assert_eq!(s.lengths(), (3..=11).collect::<Vec<_>>());
    }

    #[test]
    fn spectrum_shortest_length_is_the_girth() {
        for (name, g, _) in fixtures::all() {
            let mut budget = Budget::default();
            let s = cycle_spectrum(&g, None, &mut budget).unwrap();
            assert_eq!(s.shortest(), g.girth(), "{name}");
        }
    }

    #[test]
    fn spectra_match_the_naive_oracle_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = 4 + (trial % 5);
            let p = 0.25 + 0.1 * (trial % 6) as f64;
            let g = random_graph(&mut rng, n, p);
            let forbid = if trial % 3 == 0 { Some(trial % n) } else { None };
            let mut budget = Budget::default();
            let s = cycle_spectrum(&g, forbid, &mut budget).unwrap();
            assert_eq!(
                s.lengths(),
                naive_lengths(&g, forbid),
                "trial {trial} n {n} forbid {forbid:?}"
            );
        }
    }

    #[test]
    fn circumference_of_known_graphs() {
        let mut budget = Budget::default();
        assert_eq!(circumference(&fixtures::k4().0, &mut budget), Ok(4));
        assert_eq!(circumference(&fixtures::cube().0, &mut budget), Ok(8));
        assert_eq!(circumference(&fixtures::dodecahedron().0, &mut budget), Ok(20));
        let (h, _) = fixtures::cube().0.delete_vertices(&[0, 1]);
        assert_eq!(circumference(&h, &mut budget), Ok(6));
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(circumference(&tree, &mut budget), Err(CycleError::Acyclic));
    }

    #[test]
    fn hamilton_cycle_counts_match_the_classics() {
        let mut budget = Budget::default();
        let k4 = fixtures::k4().0;
        assert_eq!(hamilton_cycles(&k4, usize::MAX, &mut budget).unwrap().len(), 3);
        let cube = fixtures::cube().0;
        assert_eq!(hamilton_cycles(&cube, usize::MAX, &mut budget).unwrap().len(), 6);
        assert_eq!(
            hamilton_cycles(&octahedron(), usize::MAX, &mut budget).unwrap().len(),
            16
        );
        let two = hamilton_cycles(&cube, 2, &mut budget).unwrap();
        assert_eq!(two.len(), 2);
        assert_ne!(two[0], two[1]);
    }

    #[test]
    fn hamilton_through_adjacent_edges_avoiding_the_triangle_closer() {
        let mut budget = Budget::default();
        // Any facial triangle of the octahedron: force its two edges at a
        // chosen vertex, forbid the third.
        let g = octahedron();
        let (_, lmap) = fixtures::k4().0.line_graph();
        let tri = lmap.triangle_partition().unwrap()[0];
        let e1 = Edge::new(tri[0], tri[1]);
        let e2 = Edge::new(tri[0], tri[2]);
        let e3 = Edge::new(tri[1], tri[2]);
        let c = hamilton_cycle_through(&g, e1, e2, e3, &mut budget)
            .unwrap()
            .expect("octahedron is hamiltonian through any two triangle edges");
        c.validate(&g).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.contains_edge(e1) && c.contains_edge(e2) && !c.contains_edge(e3));

        let cb = cuboctahedron();
        let (_, cmap) = fixtures::cube().0.line_graph();
        let tri = cmap.triangle_partition().unwrap()[0];
        let e1 = Edge::new(tri[0], tri[1]);
        let e2 = Edge::new(tri[0], tri[2]);
        let e3 = Edge::new(tri[1], tri[2]);
        let c = hamilton_cycle_through(&cb, e1, e2, e3, &mut budget)
            .unwrap()
            .expect("guaranteed for line graphs of this family");
        assert_eq!(c.len(), 12);
        assert!(c.contains_edge(e1) && c.contains_edge(e2) && !c.contains_edge(e3));
    }

    #[test]
    fn four_cycle_minus_an_edge_has_no_hamilton_cycle() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mut budget = Budget::default();
        let found = hamilton_cycle_through(
            &c4,
            Edge::new(0, 1),
            Edge::new(1, 2),
            Edge::new(2, 3),
            &mut budget,
        )
        .unwrap();
        assert_eq!(found, None);
    }

    #[test]
    fn exhausted_budget_fails_loudly() {
        let g = fixtures::dodecahedron().0;
        let mut budget = Budget::new(10);
        assert_eq!(
            find_cycle_of_length(&g, 20, None, &mut budget),
            Err(CycleError::BudgetExceeded(10))
        );
        assert_eq!(budget.spent(), 10);
    }

    #[test]
    fn constrained_search_routes_through_required_vertices() {
        let g = fixtures::cube().0;
        let mut budget = Budget::default();
        let c = find_cycle_through(&g, 8, &[0, 7], None, &mut budget)
            .unwrap()
            .unwrap();
        assert!(c.contains_vertex(0) && c.contains_vertex(7));
        let c = find_cycle_in_range_through(&g, 4, 6, &[0, 3], None, &mut budget)
            .unwrap()
            .unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.contains_vertex(0) && c.contains_vertex(3));
        // Forbidding a required vertex is unsatisfiable by definition.
        let none = find_cycle_through(&g, 6, &[2], Some(2), &mut budget).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn tel_witness_on_a_bare_cycle_is_the_cycle_itself() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let emb = compute_embedding(&c5).unwrap();
        let x = emb.faces()[0].clone();
        let mut budget = Budget::default();
        let w = tel_witness(
            &c5,
            &emb,
            &x,
            Edge::new(0, 1),
            Edge::new(2, 3),
            Edge::new(4, 0),
            &mut budget,
        )
        .unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn tel_witness_on_k4_tolerates_the_interior_vertex() {
        let (g, emb) = fixtures::k4();
        let x = emb.faces()[0].clone();
        let edges = x.edges();
        let mut budget = Budget::default();
        let w = tel_witness(&g, &emb, &x, edges[0], edges[1], edges[2], &mut budget).unwrap();
        assert_eq!(w.len(), 3);
        assert!(tel_conditions_hold(&g, &x, &w));
    }

    #[test]
    fn tel_witness_through_three_edges_of_a_cube_face() {
        let (g, emb) = fixtures::cube();
        let x = emb.faces()[0].clone();
        let edges = x.edges();
        let mut budget = Budget::default();
        let w = tel_witness(&g, &emb, &x, edges[0], edges[1], edges[2], &mut budget).unwrap();
        for e in [edges[0], edges[1], edges[2]] {
            assert!(w.contains_edge(e));
        }
        assert!(tel_conditions_hold(&g, &x, &w));
    }
}
