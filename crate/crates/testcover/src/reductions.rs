//! Reductions between vertex cover, test cover, and set cover, plus the
//! small graph-side oracle used to validate the size correspondence.

use std::collections::HashMap;

use crate::bitset::ItemSet;
use crate::error::{Error, Result};
use crate::instance::{Instance, TestRef};
use crate::limits::Limits;

/// Simple undirected graph on vertices `1..=p`. Edges keep their input
/// order (the reduction numbers items by edge position) with endpoints
/// normalized to `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    p: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(p: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut seen = HashMap::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (idx, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > p || b > p {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{a},{b}}} has an endpoint outside 1..={p}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if let Some(first) = seen.insert(e, idx) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge {{{},{}}} (positions {} and {})",
                    e.0,
                    e.1,
                    first + 1,
                    idx + 1
                )));
            }
            normalized.push(e);
        }
        Ok(Graph {
            p,
            edges: normalized,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// How the instance produced by [`is_to_tc`] maps back to the graph. Items
/// are laid out
/// as `e_i ↦ i` and `e'_i ↦ q + i` for the i-th edge (1-based).
#[derive(Clone, Debug)]
pub struct IsToTcMapping {
    /// Test holding each vertex's incident-edge set; `None` for isolated
    /// vertices (their test would be empty) and the fold representative's
    /// test for folded vertices.
    pub vertex_test: Vec<Option<TestRef>>,
    /// Vertices omitted because they have no incident edges.
    pub omitted: Vec<u32>,
    /// `(vertex, representative)` pairs whose incident-edge sets coincide;
    /// only the representative's test is emitted.
    pub folded: Vec<(u32, u32)>,
    /// Test `{e_i, e'_i}` for each `i` in `1..=q-1`.
    pub pair_test: Vec<TestRef>,
}

/// Builds the test cover instance whose minimum cover size is
/// `q - 1 + (minimum vertex cover of g)`: one item per edge `e_i` plus a
/// primed copy `e'_i`, one test per non-isolated vertex collecting its
/// incident edges, and pair tests `{e_i, e'_i}` for all but the last edge.
/// Equivalently, a cover of size `M - k` (with `M = q - 1 + p`) exists iff
/// the graph has an independent set of `k` vertices.
pub fn is_to_tc(g: &Graph) -> Result<(Instance, IsToTcMapping)> {
    let q = g.q();
    if q < 2 {
        return Err(Error::InvalidArgument(
            "the reduction needs at least two edges".into(),
        ));
    }
    let n = 2 * q as u32;
    let mut tests: Vec<ItemSet> = Vec::with_capacity(q - 1 + g.p() as usize);
    let mut vertex_test: Vec<Option<TestRef>> = vec![None; g.p() as usize];
    let mut omitted = Vec::new();
    let mut folded = Vec::new();
    let mut first_with: HashMap<ItemSet, u32> = HashMap::new();
    for v in 1..=g.p() {
        let mut t = ItemSet::empty(n);
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                t.insert(i as u32 + 1);
            }
        }
        if t.is_empty() {
            omitted.push(v);
            continue;
        }
        match first_with.get(&t) {
            Some(&rep) => {
                vertex_test[v as usize - 1] = vertex_test[rep as usize - 1];
                folded.push((v, rep));
            }
            None => {
                first_with.insert(t.clone(), v);
                vertex_test[v as usize - 1] = Some(TestRef(tests.len()));
                tests.push(t);
            }
        }
    }
    let mut pair_test = Vec::with_capacity(q - 1);
    for i in 1..q as u32 {
        let t = ItemSet::from_items(n, &[i, q as u32 + i]);
        debug_assert!(!tests.contains(&t), "pair tests contain a primed item");
        pair_test.push(TestRef(tests.len()));
        tests.push(t);
    }
    let mut inst = Instance::new(n, tests);
    let report = inst.validate();
    if !report.is_valid() {
        return Err(Error::Invariant(format!(
            "reduction produced an invalid instance: {report}"
        )));
    }
    Ok((
        inst,
        IsToTcMapping {
            vertex_test,
            omitted,
            folded,
            pair_test,
        },
    ))
}

/// Set cover instance over labeled ground elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub labels: Vec<String>,
    pub sets: Vec<ItemSet>,
}

// C(n,2) ground elements at the cap cost one megabyte per image set.
const MAX_PAIR_GROUND_N: u32 = 4096;

/// Maps an instance to set cover over the item pairs: ground element `i-j`
/// (i < j, lexicographic order) is covered by a test's image set exactly
/// when the test separates i from j, so subcollections are test covers iff
/// their images are set covers. Every image set has size |T|·(n − |T|).
pub fn tc_to_sc(inst: &Instance) -> Result<SetCoverInstance> {
    if !inst.is_validated() {
        return Err(Error::Unvalidated);
    }
    let n = inst.n();
    if n > MAX_PAIR_GROUND_N {
        return Err(Error::ResourceLimit {
            what: "items for the pair-ground construction",
            value: n as u64,
            limit: MAX_PAIR_GROUND_N as u64,
        });
    }
    let ground = n as usize * (n as usize - 1) / 2;
    let mut labels = Vec::with_capacity(ground);
    for i in 1..=n {
        for j in i + 1..=n {
            labels.push(format!("{i}-{j}"));
        }
    }
    let pair_index = |i: u32, j: u32| -> u32 {
        debug_assert!(i < j);
        (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
    };
    let mut sets = Vec::with_capacity(inst.m());
    for t in inst.tests() {
        let mut s = ItemSet::empty(ground as u32);
        let inside = t.items();
        for &i in &inside {
            for j in 1..=n {
                if !t.contains(j) {
                    let (a, b) = (i.min(j), i.max(j));
                    s.insert(pair_index(a, b) + 1);
                }
            }
        }
        assert_eq!(
            s.len(),
            inside.len() * (n as usize - inside.len()),
            "separated-pair count must be |T|·(n-|T|)"
        );
        sets.push(s);
    }
    Ok(SetCoverInstance { labels, sets })
}

/// Exact minimum vertex cover size by branching on an uncovered edge.
pub fn min_vertex_cover_exact(g: &Graph, limits: &Limits) -> Result<usize> {
    if g.p() as u64 > limits.max_vertices as u64 {
        return Err(Error::ResourceLimit {
            what: "vertices",
            value: g.p() as u64,
            limit: limits.max_vertices as u64,
        });
    }
    fn branch(edges: &[(u32, u32)], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        match edges
            .iter()
            .find(|(a, b)| !chosen[*a as usize] && !chosen[*b as usize])
        {
            None => *best = size,
            Some(&(a, b)) => {
                for v in [a, b] {
                    chosen[v as usize] = true;
                    branch(edges, chosen, size + 1, best);
                    chosen[v as usize] = false;
                }
            }
        }
    }
    let mut chosen = vec![false; g.p() as usize + 1];
    let mut best = g.q().min(g.p() as usize);
    if best == 0 {
        return Ok(0);
    }
    branch(g.edges(), &mut chosen, 0, &mut best);
    Ok(best)
}

/// Classic greedy set cover: repeatedly takes the set covering the most
/// still-uncovered ground elements (ties to the lowest index).
pub fn greedy_set_cover(sc: &SetCoverInstance) -> Result<Vec<usize>> {
    let width = sc.labels.len() as u32;
    let mut union = ItemSet::empty(width);
    for s in &sc.sets {
        union = union.union(s);
    }
    if !union.is_full() {
        return Err(Error::InvalidArgument(
            "the sets do not cover the ground".into(),
        ));
    }
    let mut covered = ItemSet::empty(width);
    let mut picked = Vec::new();
    while !covered.is_full() {
        let mut best: Option<(usize, usize)> = None; // (gain, index)
        for (i, s) in sc.sets.iter().enumerate() {
            let gain = s.difference(&covered).len();
            if gain > 0 && best.map_or(true, |(g, _)| gain > g) {
                best = Some((gain, i));
            }
        }
        let (_, i) = best.expect("uncovered ground without a gaining set");
        covered = covered.union(&sc.sets[i]);
        picked.push(i);
    }
    Ok(picked)
}
