//! Exact solvers and brute-force deciders.
//!
//! These are the reference answers the rest of the crate is checked
//! against, so they favor obvious correctness: size-ordered depth-first
//! search over subcollections in lexicographic order, pruned only by facts
//! that hold for every cover (classes at most double per added test, and a
//! test that splits nothing can be dropped from any optimum).

use crate::bitset::ItemSet;
use crate::error::{Error, Result};
use crate::instance::{class_count_idx, induced_partition, Instance, TestRef};
use crate::limits::{Budget, Limits};

/// `⌈log₂ n⌉`: no test cover is smaller, since `s` tests induce at most
/// `2^s` classes.
pub fn log_lower_bound(n: u32) -> u32 {
    assert!(n >= 1, "universe must be nonempty");
    if n == 1 {
        0
    } else {
        32 - (n - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum: usize,
    /// Lexicographically least optimum witness, ascending test indices.
    pub witness: Vec<TestRef>,
}

/// Splits partition labels by one test. `labels` maps 0-based item index to
/// class id; returns the new class count. Reuses internal scratch.
struct Refiner {
    seen_in: Vec<bool>,
    seen_out: Vec<bool>,
    new_id: Vec<u16>,
}

impl Refiner {
    fn new() -> Self {
        Refiner {
            seen_in: Vec::new(),
            seen_out: Vec::new(),
            new_id: Vec::new(),
        }
    }

    fn refine(&mut self, test: &ItemSet, labels_in: &[u16], cnt: u16, labels_out: &mut Vec<u16>) -> u16 {
        let cnt = cnt as usize;
        self.seen_in.clear();
        self.seen_in.resize(cnt, false);
        self.seen_out.clear();
        self.seen_out.resize(cnt, false);
        for (idx, &lab) in labels_in.iter().enumerate() {
            if test.contains(idx as u32 + 1) {
                self.seen_in[lab as usize] = true;
            } else {
                self.seen_out[lab as usize] = true;
            }
        }
        self.new_id.clear();
        self.new_id.resize(cnt, u16::MAX);
        let mut next = cnt as u16;
        for c in 0..cnt {
            if self.seen_in[c] && self.seen_out[c] {
                self.new_id[c] = next;
                next += 1;
            }
        }
        labels_out.clear();
        for (idx, &lab) in labels_in.iter().enumerate() {
            let split = self.new_id[lab as usize];
            if split != u16::MAX && test.contains(idx as u32 + 1) {
                labels_out.push(split);
            } else {
                labels_out.push(lab);
            }
        }
        next
    }
}

struct CoverSearch<'a> {
    inst: &'a Instance,
    budget: Budget<'a>,
    refiner: Refiner,
    labels: Vec<Vec<u16>>,
    counts: Vec<u16>,
    chosen: Vec<usize>,
}

impl<'a> CoverSearch<'a> {
    fn new(inst: &'a Instance, limits: &'a Limits) -> Result<Self> {
        if inst.n() > u16::MAX as u32 {
            return Err(Error::ResourceLimit {
                what: "item universe for exact search",
                value: inst.n() as u64,
                limit: u16::MAX as u64,
            });
        }
        Ok(CoverSearch {
            inst,
            budget: Budget::new(limits),
            refiner: Refiner::new(),
            labels: Vec::new(),
            counts: Vec::new(),
            chosen: Vec::new(),
        })
    }

    /// Lexicographically least cover of exactly `target` tests, if earlier
    /// sizes have already been ruled out.
    fn at_size(&mut self, target: usize) -> Result<Option<Vec<usize>>> {
        let n = self.inst.n() as usize;
        self.labels.resize(target + 1, Vec::new());
        self.counts.resize(target + 1, 0);
        self.labels[0].clear();
        self.labels[0].resize(n, 0);
        self.counts[0] = 1;
        self.chosen.clear();
        self.dfs(target, 0, 0)
    }

    fn dfs(&mut self, target: usize, start: usize, depth: usize) -> Result<Option<Vec<usize>>> {
        let n = self.inst.n() as usize;
        let cnt = self.counts[depth] as usize;
        if cnt == n {
            return Ok(Some(self.chosen.clone()));
        }
        let slots = target - depth;
        if slots == 0 {
            return Ok(None);
        }
        // classes at most double per added test
        if (cnt as u64) << slots.min(32) < n as u64 {
            return Ok(None);
        }
        let m = self.inst.m();
        for t in start..m {
            if m - t < slots {
                break;
            }
            self.budget.tick()?;
            let (head, tail) = self.labels.split_at_mut(depth + 1);
            let new_cnt = self.refiner.refine(
                &self.inst.tests()[t],
                &head[depth],
                cnt as u16,
                &mut tail[0],
            );
            if new_cnt as usize == cnt {
                continue; // splits nothing here, no optimum needs it
            }
            self.counts[depth + 1] = new_cnt;
            self.chosen.push(t);
            if let Some(w) = self.dfs(target, t + 1, depth + 1)? {
                return Ok(Some(w));
            }
            self.chosen.pop();
        }
        Ok(None)
    }
}

fn require_validated(inst: &Instance) -> Result<()> {
    if inst.is_validated() {
        Ok(())
    } else {
        Err(Error::Unvalidated)
    }
}

/// Minimum test cover with the lexicographically least optimum witness.
pub fn min_test_cover_exact(inst: &Instance, limits: &Limits) -> Result<ExactResult> {
    require_validated(inst)?;
    if inst.m() > limits.max_tests {
        return Err(Error::ResourceLimit {
            what: "test count for exact search",
            value: inst.m() as u64,
            limit: limits.max_tests as u64,
        });
    }
    let lb = log_lower_bound(inst.n()) as usize;
    let mut search = CoverSearch::new(inst, limits)?;
    for s in lb..=inst.m() {
        if let Some(w) = search.at_size(s)? {
            return Ok(ExactResult {
                optimum: s,
                witness: w.into_iter().map(TestRef).collect(),
            });
        }
    }
    Err(Error::Invariant(
        "validated instance has no cover; validation is broken".into(),
    ))
}

/// Is there a test cover of size at most `k`? Shortcut: below the
/// information-theoretic bound the answer is no without searching.
pub fn decide_k_param(inst: &Instance, k: usize, limits: &Limits) -> Result<bool> {
    require_validated(inst)?;
    let lb = log_lower_bound(inst.n()) as usize;
    if k < lb {
        return Ok(false);
    }
    let mut search = CoverSearch::new(inst, limits)?;
    for s in lb..=k.min(inst.m()) {
        if search.at_size(s)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Is there a test cover of size at most `n - k`? Defined directly through
/// the exact optimum; the kernelized decider is checked against this.
pub fn decide_nk_brute(inst: &Instance, k: usize, limits: &Limits) -> Result<bool> {
    require_validated(inst)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k as u64 > inst.n() as u64 {
        return Ok(false);
    }
    let target = inst.n() as usize - k;
    Ok(min_test_cover_exact(inst, limits)?.optimum <= target)
}

/// Streaming lexicographic combinations of `{0, …, m-1}` of fixed size.
pub(crate) struct Combinations {
    m: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(m: usize, k: usize) -> Self {
        Combinations {
            m,
            k,
            idx: (0..k).collect(),
            started: false,
            done: k > m,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        // advance the rightmost index that still has room
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] < self.m - self.k + i {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}

/// Searches for a subcollection `F'` with `|F'| <= 2k` inducing at least
/// `|F'| + k` classes, enumerating candidates in (size, lexicographic)
/// order. Such a subcollection exists iff a test cover of size `n - k`
/// does, which is what the kernelization ultimately decides.
pub fn find_k_mini_brute(inst: &Instance, k: usize, limits: &Limits) -> Result<Option<Vec<TestRef>>> {
    require_validated(inst)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let n = inst.n() as usize;
    let m = inst.m();
    // |F'| + k classes must fit into [n], so sizes beyond n - k are hopeless
    let max_s = (2 * k).min(m).min(n.saturating_sub(k));
    let mut budget = Budget::new(limits);
    let mut scratch = Vec::new();
    for s in 0..=max_s {
        // s tests induce at most min(2^s, n) classes; skip hopeless sizes
        if s < 63 && (1u64 << s) < (s + k) as u64 {
            continue;
        }
        if n < s + k {
            break;
        }
        let mut combos = Combinations::new(m, s);
        while let Some(refs) = combos.next() {
            budget.tick()?;
            if class_count_idx(inst, refs, &mut scratch) >= s + k {
                return Ok(Some(refs.iter().map(|&i| TestRef(i)).collect()));
            }
        }
    }
    Ok(None)
}

/// Test-cover size certified by a mini witness: extending it one split at a
/// time reaches a full cover within `n - k` tests. Exposed for reuse by the
/// verification paths; most callers want `find_k_mini_brute`.
pub fn mini_witness_classes(inst: &Instance, witness: &[TestRef]) -> usize {
    induced_partition(inst, witness).len()
}
