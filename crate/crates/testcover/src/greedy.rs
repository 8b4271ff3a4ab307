//! Greedy routines: the bounded mini-witness construction, extension of a
//! partial subcollection to a full cover, and the classic most-gain greedy
//! cover heuristic.

use crate::error::{Error, Result};
use crate::instance::{class_count, induced_partition, Instance, Partition, TestRef};

/// Terminal state of the bounded greedy construction for parameter `k`.
///
/// `saturated` means the stop threshold `|F| >= 2k - 2` was reached, which
/// certifies that `F` induces at least `⌈(3/2)|F|⌉ + 1 >= |F| + k` classes.
/// Unsaturated terminals certify the opposite kind of fact: no remaining
/// single test gains 2 classes and no pair gains 3.
#[derive(Clone, Debug)]
pub struct GreedyState {
    pub f: Vec<TestRef>,
    pub classes: Partition,
    pub saturated: bool,
    pub k: usize,
}

fn require_validated(inst: &Instance) -> Result<()> {
    if inst.is_validated() {
        Ok(())
    } else {
        Err(Error::Unvalidated)
    }
}

/// Builds `F` by repeatedly taking the first pair of tests that adds at
/// least 3 classes, else the first single test that adds at least 2,
/// stopping as soon as `|F| >= 2k - 2`. Scans are lexicographic on test
/// indices, so the run is deterministic. The stop check precedes each step:
/// for `k = 1` the empty collection is already saturated.
pub fn greedy_mini_test(inst: &Instance, k: usize) -> Result<GreedyState> {
    require_validated(inst)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let m = inst.m();
    let stop = 2 * k - 2;
    let mut f: Vec<TestRef> = Vec::new();
    let mut in_f = vec![false; m];
    let mut scratch = Vec::new();
    let saturated = loop {
        if f.len() >= stop {
            break true;
        }
        let cur = class_count(inst, &f, &mut scratch);
        let mut buf = f.clone();
        let mut stepped = false;
        'pairs: for i in 0..m {
            if in_f[i] {
                continue;
            }
            buf.push(TestRef(i));
            for j in i + 1..m {
                if in_f[j] {
                    continue;
                }
                buf.push(TestRef(j));
                let gain3 = class_count(inst, &buf, &mut scratch) >= cur + 3;
                buf.pop();
                if gain3 {
                    f.push(TestRef(i));
                    f.push(TestRef(j));
                    in_f[i] = true;
                    in_f[j] = true;
                    stepped = true;
                    break 'pairs;
                }
            }
            buf.pop();
        }
        if stepped {
            continue;
        }
        let mut buf = f.clone();
        for i in 0..m {
            if in_f[i] {
                continue;
            }
            buf.push(TestRef(i));
            let gain2 = class_count(inst, &buf, &mut scratch) >= cur + 2;
            buf.pop();
            if gain2 {
                f.push(TestRef(i));
                in_f[i] = true;
                stepped = true;
                break;
            }
        }
        if !stepped {
            break false;
        }
    };
    let classes = induced_partition(inst, &f);
    Ok(GreedyState {
        f,
        classes,
        saturated,
        k,
    })
}

/// Extends `f` to a full test cover, adding one class split at a time.
///
/// In the default mode each step adds the lowest-indexed test that strictly
/// increases the class count. With `singletons_only` every added test is
/// the singleton `{i}` for the smallest item `i` of the first multi-item
/// class, which requires all singletons to be present as tests.
///
/// If `f` induces at least `|f| + k` classes, the result has size at most
/// `n - k`, since each added test raises the class count by at least one.
pub fn extend_partial_to_cover(
    inst: &Instance,
    f: &[TestRef],
    singletons_only: bool,
) -> Result<Vec<TestRef>> {
    require_validated(inst)?;
    let n = inst.n();
    let m = inst.m();
    let singleton_index: Vec<Option<usize>> = if singletons_only {
        let mut idx = vec![None; n as usize + 1];
        for (i, t) in inst.tests().iter().enumerate() {
            if t.len() == 1 {
                idx[t.smallest().expect("nonempty") as usize] = Some(i);
            }
        }
        if let Some(missing) = (1..=n).find(|&item| idx[item as usize].is_none()) {
            return Err(Error::InvalidArgument(format!(
                "singletons-only extension needs every singleton test; {{{missing}}} is missing"
            )));
        }
        idx
    } else {
        Vec::new()
    };

    let mut sel = f.to_vec();
    let mut in_sel = vec![false; m];
    for &r in f {
        in_sel[r.0] = true;
    }
    let mut scratch = Vec::new();
    loop {
        let part = induced_partition(inst, &sel);
        if part.len() == n as usize {
            return Ok(sel);
        }
        let class = part
            .classes()
            .iter()
            .find(|c| c.len() >= 2)
            .expect("fewer than n classes implies a multi-item class");
        if singletons_only {
            let item = class.smallest().expect("nonempty");
            let t = singleton_index[item as usize].expect("checked above");
            if in_sel[t] {
                return Err(Error::Invariant(format!(
                    "singleton {{{item}}} already selected but {item} is unseparated"
                )));
            }
            sel.push(TestRef(t));
            in_sel[t] = true;
        } else {
            let cur = part.len();
            let mut buf = sel.clone();
            let mut found = None;
            for t in 0..m {
                if in_sel[t] {
                    continue;
                }
                buf.push(TestRef(t));
                let gains = class_count(inst, &buf, &mut scratch) > cur;
                buf.pop();
                if gains {
                    found = Some(t);
                    break;
                }
            }
            match found {
                Some(t) => {
                    sel.push(TestRef(t));
                    in_sel[t] = true;
                }
                None => {
                    return Err(Error::Invariant(
                        "no remaining test splits a class; full collection is not a cover".into(),
                    ))
                }
            }
        }
    }
}

/// Most-gain greedy cover: repeatedly takes the test separating the most
/// still-unseparated pairs (ties to the lowest index). The gain of a test
/// `S` under the current partition is `Σ |C ∩ S| · |C \ S|` over classes
/// `C`, i.e. exactly the number of newly separated pairs, so this is the
/// standard greedy set cover on the pair universe without materializing it.
pub fn greedy_setcover_approx(inst: &Instance) -> Result<Vec<TestRef>> {
    require_validated(inst)?;
    let n = inst.n();
    let m = inst.m();
    let mut sel: Vec<TestRef> = Vec::new();
    let mut in_sel = vec![false; m];
    let mut classes = induced_partition(inst, &[]).classes().to_vec();
    loop {
        if classes.len() == n as usize {
            return Ok(sel);
        }
        let mut best: Option<(usize, usize)> = None; // (gain, index)
        for t in 0..m {
            if in_sel[t] {
                continue;
            }
            let test = &inst.tests()[t];
            let mut gain = 0usize;
            for c in &classes {
                let inside = c.intersection(test).len();
                gain += inside * (c.len() - inside);
            }
            if gain > 0 && best.map_or(true, |(g, _)| gain > g) {
                best = Some((gain, t));
            }
        }
        let Some((_, t)) = best else {
            return Err(Error::Invariant(
                "unseparated pairs remain but no test separates them".into(),
            ));
        };
        sel.push(TestRef(t));
        in_sel[t] = true;
        let test = &inst.tests()[t];
        let mut next = Vec::with_capacity(classes.len() + 4);
        for c in classes {
            let inside = c.intersection(test);
            if inside.is_empty() || inside == c {
                next.push(c);
            } else {
                next.push(inside.clone());
                next.push(c.difference(test));
            }
        }
        classes = next;
    }
}
