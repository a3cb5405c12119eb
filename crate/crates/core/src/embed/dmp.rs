//! Planarity testing that produces an embedding, one biconnected block at a
//! time. Each block starts from a cycle (two faces) and grows by face
//! splitting: a fragment of the unembedded part is chosen, a path through it
//! is drawn across an admissible face, and the face splits in two. A
//! fragment admitting no face certifies non-planarity; a fragment admitting
//! exactly one is forced and handled first. Block embeddings merge at cut
//! vertices by concatenating rotations.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use super::{invalid, EmbedError, Embedding};
use crate::connectivity::{blocks, is_connected};
use crate::graph::{Edge, Graph};

pub fn compute_embedding(g: &Graph) -> Result<Embedding, EmbedError> {
    let n = g.n();
    if n == 0 {
        return Err(invalid("graph has no vertices"));
    }
    if !is_connected(g) {
        return Err(EmbedError::Disconnected);
    }
    if n >= 3 && g.m() > 3 * n - 6 {
        return Err(EmbedError::NonPlanar);
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.edges.len() == 1 {
            let e = block.edges[0];
            rotation[e.u()].push(e.v());
            rotation[e.v()].push(e.u());
        } else {
            embed_block(n, &block.vertices, &block.edges, &mut rotation)?;
        }
    }
    let embedding = Embedding::from_rotation(g, rotation)?;
    // Genus-0 blocks merged at cut vertices keep genus 0.
    debug_assert!(embedding.satisfies_euler(g));
    Ok(embedding)
}

enum FragmentKind {
    Chord(Edge),
    Component(Vec<usize>),
}

struct Fragment {
    attachments: Vec<usize>,
    kind: FragmentKind,
}

impl Fragment {
    fn sort_key(&self) -> (Vec<usize>, usize, usize, usize) {
        match &self.kind {
            FragmentKind::Chord(e) => (self.attachments.clone(), 0, e.u(), e.v()),
            FragmentKind::Component(c) => (self.attachments.clone(), 1, c[0], 0),
        }
    }
}

fn embed_block(
    n: usize,
    verts: &[usize],
    edges: &[Edge],
    rotation: &mut [Vec<usize>],
) -> Result<(), EmbedError> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        adj[e.u()].push(e.v());
        adj[e.v()].push(e.u());
    }
    for &v in verts {
        adj[v].sort_unstable();
    }

    let cycle = first_cycle(n, &adj, verts[0]);
    let mut embedded_v = vec![false; n];
    let mut embedded_e: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..cycle.len() {
        embedded_v[cycle[i]] = true;
        embedded_e.insert(Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let fragments = find_fragments(n, verts, edges, &adj, &embedded_v, &embedded_e);
        if fragments.is_empty() {
            break;
        }
        // Admissible faces: those whose boundary carries all attachments.
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|frag| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return Err(EmbedError::NonPlanar);
        }
        let pick = admissible
            .iter()
            .position(|faces| faces.len() == 1)
            .unwrap_or(0);
        let frag = &fragments[pick];
        let face_idx = admissible[pick][0];
        let path = fragment_path(&adj, &embedded_v, frag);
        split_face(&mut faces, face_idx, &path);
        for window in path.windows(2) {
            embedded_e.insert(Edge::new(window[0], window[1]));
        }
        for &v in &path[1..path.len() - 1] {
            embedded_v[v] = true;
        }
    }

    stitch_rotations(&faces, rotation);
    Ok(())
}

/// First cycle found by depth-first search with ascending neighbor order.
fn first_cycle(n: usize, adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut on_path = vec![false; n];
    let mut path = vec![start];
    on_path[start] = true;
    let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
    while let Some(frame) = stack.last_mut() {
        let (v, parent, idx) = (frame.0, frame.1, frame.2);
        if idx < adj[v].len() {
            frame.2 += 1;
            let w = adj[v][idx];
            if w == parent {
                continue;
            }
            if on_path[w] {
                let pos = path.iter().position(|&x| x == w).unwrap();
                return path[pos..].to_vec();
            }
            on_path[w] = true;
            path.push(w);
            stack.push((w, v, 0));
        } else {
            stack.pop();
            path.pop();
            on_path[v] = false;
        }
    }
    unreachable!("blocks with two or more edges contain a cycle")
}

fn find_fragments(
    n: usize,
    verts: &[usize],
    edges: &[Edge],
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    embedded_e: &BTreeSet<Edge>,
) -> Vec<Fragment> {
    let mut frags = Vec::new();
    for e in edges {
        if embedded_v[e.u()] && embedded_v[e.v()] && !embedded_e.contains(e) {
            frags.push(Fragment {
                attachments: vec![e.u(), e.v()],
                kind: FragmentKind::Chord(*e),
            });
        }
    }
    let mut seen = vec![false; n];
    for &root in verts {
        if embedded_v[root] || seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in &adj[v] {
                if !embedded_v[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        let mut attachments: Vec<usize> = comp
            .iter()
            .flat_map(|&v| adj[v].iter().copied())
            .filter(|&w| embedded_v[w])
            .collect();
        attachments.sort_unstable();
        attachments.dedup();
        debug_assert!(attachments.len() >= 2, "blocks are 2-connected");
        frags.push(Fragment {
            attachments,
            kind: FragmentKind::Component(comp),
        });
    }
    frags.sort_by_key(Fragment::sort_key);
    frags
}

/// A path between two attachments whose interior lies in the fragment.
fn fragment_path(adj: &[Vec<usize>], embedded_v: &[bool], frag: &Fragment) -> Vec<usize> {
    match &frag.kind {
        FragmentKind::Chord(e) => vec![e.u(), e.v()],
        FragmentKind::Component(comp) => {
            let a = frag.attachments[0];
            let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
            let mut queue: Vec<usize> = Vec::new();
            for &w in &adj[a] {
                if comp.binary_search(&w).is_ok() && !parent.contains_key(&w) {
                    parent.insert(w, a);
                    queue.push(w);
                }
            }
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                if let Some(&b) = adj[x].iter().find(|&&w| embedded_v[w] && w != a) {
                    let mut path = vec![b, x];
                    let mut cur = x;
                    while cur != a {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return path;
                }
                for &w in &adj[x] {
                    if !embedded_v[w] && !parent.contains_key(&w) {
                        parent.insert(w, x);
                        queue.push(w);
                    }
                }
            }
            unreachable!("fragments of 2-connected blocks attach at two vertices")
        }
    }
}

/// Splits `faces[face_idx]` along `path`, whose endpoints lie on the face.
fn split_face(faces: &mut Vec<Vec<usize>>, face_idx: usize, path: &[usize]) {
    let f = faces[face_idx].clone();
    let len = f.len();
    let a = path[0];
    let b = *path.last().unwrap();
    // Intermediate boundaries are cycles, so the positions are unique.
    let i = f.iter().position(|&v| v == a).unwrap();
    let j = f.iter().position(|&v| v == b).unwrap();
    let mut w1 = path.to_vec();
    let mut k = (j + 1) % len;
    while k != i {
        w1.push(f[k]);
        k = (k + 1) % len;
    }
    let mut w2 = Vec::new();
    let mut k = i;
    loop {
        w2.push(f[k]);
        if k == j {
            break;
        }
        k = (k + 1) % len;
    }
    w2.extend(path[1..path.len() - 1].iter().rev());
    faces[face_idx] = w1;
    faces.push(w2);
}

/// Recovers each vertex's rotation from the block's face walks and appends
/// it to the global rotation (concatenation merges blocks at cut vertices).
fn stitch_rotations(faces: &[Vec<usize>], rotation: &mut [Vec<usize>]) {
    let mut successor: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for walk in faces {
        let k = walk.len();
        for i in 0..k {
            let prev = walk[(i + k - 1) % k];
            let v = walk[i];
            let next = walk[(i + 1) % k];
            let dup = successor.entry(v).or_default().insert(prev, next);
            assert!(dup.is_none(), "face walks reuse a dart");
        }
    }
    for (v, succ) in successor {
        let first = *succ.keys().next().unwrap();
        let mut rot = vec![first];
        let mut cur = first;
        loop {
            let next = succ[&cur];
            if next == first {
                break;
            }
            rot.push(next);
            cur = next;
        }
        assert_eq!(rot.len(), succ.len(), "block rotation must be one cycle");
        rotation[v].extend(rot);
    }
}
