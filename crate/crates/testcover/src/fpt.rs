//! Kernelization pipeline for the cover-size-at-most-(n − k) decision:
//! singleton closure, a bounded greedy bootstrap, normalization of local
//! portions, per-class containment trees with signatures, and two deletion
//! rules driven to a fixpoint before the shrunken instance is handed to the
//! exhaustive decider.
//!
//! Terminology: once a terminal collection `F` fixes a partition into
//! classes, a test that properly splits class `C` is called a `C`-test;
//! its local portion `L(S) = S ∩ C` and global portion `G(S) = S \ C`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;

use crate::bitset::ItemSet;
use crate::error::{Error, Result};
use crate::exact::find_k_mini_brute;
use crate::greedy::{extend_partial_to_cover, greedy_mini_test};
use crate::instance::{
    add_all_singletons, induced_partition, is_test_cover, Instance, Partition, TestRef,
};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Normalize,
    Path,
    Sibling,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Normalize => "normalize",
            RuleKind::Path => "path",
            RuleKind::Sibling => "sibling",
        })
    }
}

/// Audit record of one rule firing. Test numbers and items are 1-based and
/// refer to the instance state at the moment the rule fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTrace {
    pub rule: RuleKind,
    pub class: usize,
    pub tests: Vec<usize>,
    pub items: Vec<u32>,
}

impl RuleTrace {
    pub fn to_log_line(&self) -> String {
        let join = |xs: &[String]| xs.join(",");
        let tests: Vec<String> = self.tests.iter().map(ToString::to_string).collect();
        let items: Vec<String> = self.items.iter().map(ToString::to_string).collect();
        format!(
            "RULE {} class={} tests=[{}] items=[{}]",
            self.rule,
            self.class,
            join(&tests),
            join(&items)
        )
    }
}

/// The set of global portions of all tests sharing one local portion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub globals: BTreeSet<ItemSet>,
}

/// Containment tree of the distinct local portions of one class's tests.
/// Vertex 0 is the root (the class itself); the remaining vertices are in
/// lexicographic portion order. Arcs follow immediate strict containment.
#[derive(Clone, Debug)]
pub struct ClassTree {
    pub class: usize,
    pub portions: Vec<ItemSet>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    pub signatures: Vec<Signature>,
    /// Signature rendered over class identities (stable under renumbering).
    pub sig_keys: Vec<String>,
    /// Canonical code of the subtree below each vertex; equal codes iff the
    /// subtrees are isomorphic with matching signatures throughout.
    pub codes: Vec<String>,
}

impl ClassTree {
    fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.portions.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in self.children[v].iter().rev() {
                stack.push(c);
            }
        }
        order
    }
}

/// Reduction state: a singleton-closed, normalized instance, the carried
/// terminal collection `f`, the partition it induces, and one containment
/// tree per multi-item class.
#[derive(Clone, Debug)]
pub struct FptState {
    pub inst: Instance,
    pub k: usize,
    pub f: Vec<TestRef>,
    pub classes: Partition,
    pub trees: Vec<ClassTree>,
}

/// Renders a signature as the set of class-index sets its globals decompose
/// into, giving a canonical key that survives item renumbering.
fn signature_key(sig: &Signature, classes: &Partition, class: usize) -> String {
    let mut parts: Vec<String> = Vec::with_capacity(sig.globals.len());
    for g in &sig.globals {
        let mut ids: Vec<usize> = Vec::new();
        for (j, c) in classes.classes().iter().enumerate() {
            if j != class && c.is_subset_of(g) {
                ids.push(j);
            }
        }
        parts.push(format!("{ids:?}"));
    }
    parts.sort();
    format!("{{{}}}", parts.join(","))
}

fn build_tree(
    inst: &Instance,
    f_set: &HashSet<usize>,
    classes: &Partition,
    class: usize,
) -> Result<ClassTree> {
    let cset = &classes.classes()[class];
    let mut by_portion: BTreeMap<ItemSet, Vec<usize>> = BTreeMap::new();
    for (t, s) in inst.tests().iter().enumerate() {
        if f_set.contains(&t) {
            continue;
        }
        let inter = s.intersection(cset);
        if inter.is_empty() || inter == *cset {
            continue;
        }
        by_portion.entry(inter).or_default().push(t);
    }
    for item in cset.iter() {
        if !by_portion.contains_key(&ItemSet::singleton(inst.n(), item)) {
            return Err(Error::Invariant(format!(
                "singleton portion {{{item}}} missing from class tree"
            )));
        }
    }

    let mut portions: Vec<ItemSet> = Vec::with_capacity(by_portion.len() + 1);
    portions.push(cset.clone());
    portions.extend(by_portion.keys().cloned());
    let nv = portions.len();

    for i in 1..nv {
        for j in i + 1..nv {
            let (a, b) = (&portions[i], &portions[j]);
            if a.intersects(b) && !a.is_subset_of(b) && !b.is_subset_of(a) {
                return Err(Error::Invariant(format!(
                    "local portions {a} and {b} properly overlap"
                )));
            }
        }
    }

    let mut parent: Vec<Option<usize>> = vec![None; nv];
    for v in 1..nv {
        let mut best: usize = 0;
        for u in 1..nv {
            if u != v
                && portions[v].is_subset_of(&portions[u])
                && portions[v] != portions[u]
                && (best == 0 || portions[u].len() < portions[best].len())
            {
                best = u;
            }
        }
        parent[v] = Some(best);
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for v in 1..nv {
        children[parent[v].unwrap()].push(v);
    }
    // child ids ascend with lexicographic portion order by construction

    let mut depth = vec![0usize; nv];
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &c in &children[v] {
            depth[c] = depth[v] + 1;
            order.push(c);
        }
    }
    if order.len() != nv {
        return Err(Error::Invariant("portion containment is not a tree".into()));
    }

    for v in 0..nv {
        let deg = children[v].len();
        if deg == 0 {
            if portions[v].len() != 1 {
                return Err(Error::Invariant(format!(
                    "leaf portion {} is not a singleton",
                    portions[v]
                )));
            }
        } else if deg < 2 {
            return Err(Error::Invariant(format!(
                "internal portion {} has a single child",
                portions[v]
            )));
        }
    }

    let mut signatures: Vec<Signature> = Vec::with_capacity(nv);
    signatures.push(Signature {
        globals: BTreeSet::new(),
    });
    for p in &portions[1..] {
        let mut globals = BTreeSet::new();
        for &t in &by_portion[p] {
            let g = inst.test(TestRef(t)).difference(cset);
            let mut covered = ItemSet::empty(inst.n());
            for (j, c) in classes.classes().iter().enumerate() {
                if j == class {
                    continue;
                }
                let inter = g.intersection(c);
                if inter.is_empty() {
                    continue;
                }
                if inter != *c {
                    return Err(Error::Invariant(format!(
                        "global portion {g} cuts class {c} instead of covering it"
                    )));
                }
                covered = covered.union(c);
            }
            if covered != g {
                return Err(Error::Invariant(format!(
                    "global portion {g} is not a union of classes"
                )));
            }
            globals.insert(g);
        }
        signatures.push(Signature { globals });
    }

    let sig_keys: Vec<String> = signatures
        .iter()
        .map(|s| signature_key(s, classes, class))
        .collect();

    let l = classes.len();
    if l <= 4 {
        let distinct: HashSet<&str> = sig_keys.iter().map(String::as_str).collect();
        let bound = 1u64 << (1u64 << (l - 1));
        if distinct.len() as u64 > bound {
            return Err(Error::Invariant(format!(
                "{} distinct signatures exceed the 2^2^(l-1) = {bound} bound",
                distinct.len()
            )));
        }
    }

    let mut codes = vec![String::new(); nv];
    let mut by_depth: Vec<usize> = (0..nv).collect();
    by_depth.sort_by(|&a, &b| depth[b].cmp(&depth[a]));
    for v in by_depth {
        let mut ch: Vec<String> = children[v].iter().map(|&c| codes[c].clone()).collect();
        ch.sort();
        codes[v] = format!("({}|{})", sig_keys[v], ch.join(","));
    }

    Ok(ClassTree {
        class,
        portions,
        parent,
        children,
        depth,
        signatures,
        sig_keys,
        codes,
    })
}

/// Canonical code of the subtree rooted at `v`; equal codes characterize
/// arc-preserving, signature-preserving isomorphism.
pub fn canonical_tree_code(tree: &ClassTree, v: usize) -> &str {
    &tree.codes[v]
}

/// Signature of a portion that is a vertex of the tree of class `class`
/// (an index into `state.classes`).
pub fn signature_of<'a>(
    state: &'a FptState,
    class: usize,
    portion: &ItemSet,
) -> Result<&'a Signature> {
    let tree = state
        .trees
        .iter()
        .find(|t| t.class == class)
        .ok_or_else(|| Error::InvalidArgument(format!("class {class} has no portion tree")))?;
    match tree.portions.iter().position(|p| p == portion) {
        Some(v) => Ok(&tree.signatures[v]),
        None => Err(Error::InvalidArgument(format!(
            "{portion} is not a vertex of the tree of class {class}"
        ))),
    }
}

impl FptState {
    /// Normalizes the instance against the partition induced by `f` and
    /// builds the per-class trees. `inst` must be validated and contain
    /// every singleton; `f` must be terminal for the greedy step (no
    /// remaining test may split two classes — violations surface as
    /// internal-invariant errors).
    ///
    /// Normalization replaces any test whose local portion takes more than
    /// half of its class with the test's complement (which separates the
    /// same pairs); when the complement already exists the test is dropped
    /// instead, and the drop is traced.
    pub fn prepare(inst: &Instance, k: usize, f: &[TestRef]) -> Result<(Self, Vec<RuleTrace>)> {
        if !inst.is_validated() {
            return Err(Error::Unvalidated);
        }
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        let n = inst.n();
        let m = inst.m();
        let mut has_singleton = vec![false; n as usize + 1];
        for t in inst.tests() {
            if t.len() == 1 {
                has_singleton[t.smallest().expect("nonempty") as usize] = true;
            }
        }
        if let Some(i) = (1..=n).find(|&i| !has_singleton[i as usize]) {
            return Err(Error::InvalidArgument(format!(
                "singleton {{{i}}} missing; apply the singleton closure first"
            )));
        }
        let f_set: HashSet<usize> = f.iter().map(|r| r.0).collect();
        if f_set.len() != f.len() {
            return Err(Error::InvalidArgument("duplicate refs in f".into()));
        }
        if let Some(r) = f.iter().find(|r| r.0 >= m) {
            return Err(Error::InvalidArgument(format!(
                "test ref {} out of range",
                r.0
            )));
        }

        let classes = induced_partition(inst, f);
        let mut tests: Vec<ItemSet> = inst.tests().to_vec();
        let mut present: HashSet<ItemSet> = tests.iter().cloned().collect();
        let mut dropped = vec![false; m];
        let mut traces = Vec::new();
        for t in 0..m {
            if f_set.contains(&t) {
                continue;
            }
            let mut split: Option<usize> = None;
            for (ci, c) in classes.classes().iter().enumerate() {
                let inter = tests[t].intersection(c);
                if !inter.is_empty() && inter != *c {
                    if split.is_some() {
                        return Err(Error::Invariant(format!(
                            "test {} separates two classes; the supplied collection is not \
                             terminal",
                            t + 1
                        )));
                    }
                    split = Some(ci);
                }
            }
            let Some(ci) = split else { continue };
            let c = &classes.classes()[ci];
            if 2 * tests[t].intersection(c).len() > c.len() {
                let comp = tests[t].complement();
                if present.contains(&comp) {
                    present.remove(&tests[t]);
                    dropped[t] = true;
                    traces.push(RuleTrace {
                        rule: RuleKind::Normalize,
                        class: ci + 1,
                        tests: vec![t + 1],
                        items: vec![],
                    });
                } else {
                    present.remove(&tests[t]);
                    present.insert(comp.clone());
                    tests[t] = comp;
                }
            }
        }

        let mut new_idx = vec![usize::MAX; m];
        let mut kept = Vec::with_capacity(m);
        for (t, test) in tests.into_iter().enumerate() {
            if !dropped[t] {
                new_idx[t] = kept.len();
                kept.push(test);
            }
        }
        let f_new: Vec<TestRef> = f.iter().map(|r| TestRef(new_idx[r.0])).collect();

        let mut inst2 = Instance::new(n, kept);
        let report = inst2.validate();
        if !report.is_valid() {
            return Err(Error::Invariant(format!(
                "normalized instance failed validation: {report}"
            )));
        }
        let classes = induced_partition(&inst2, &f_new);
        let f_idx: HashSet<usize> = f_new.iter().map(|r| r.0).collect();
        let mut trees = Vec::new();
        for ci in 0..classes.len() {
            if classes.classes()[ci].len() >= 2 {
                trees.push(build_tree(&inst2, &f_idx, &classes, ci)?);
            }
        }
        Ok((
            FptState {
                inst: inst2,
                k,
                f: f_new,
                classes,
                trees,
            },
            traces,
        ))
    }

    fn rebuilt(
        n: u32,
        tests: Vec<ItemSet>,
        f: Vec<TestRef>,
        k: usize,
    ) -> Result<(Self, Vec<RuleTrace>)> {
        let mut inst = Instance::new(n, tests);
        let report = inst.validate();
        if !report.is_valid() {
            return Err(Error::Invariant(format!(
                "reduced instance failed validation: {report}"
            )));
        }
        FptState::prepare(&inst, k, &f)
    }

    /// Fires the long-path deletion rule if possible: a root-to-leaf path
    /// holding at least 32k vertices of one signature lets every test whose
    /// local portion is the 16k-th such vertex be deleted. Returns the
    /// successor state with the firing trace (plus any re-normalization
    /// traces), or `None` when no tree triggers.
    pub fn apply_path_rule(&self) -> Result<Option<(FptState, Vec<RuleTrace>)>> {
        let need = 32 * self.k;
        for tree in &self.trees {
            let cset = &self.classes.classes()[tree.class];
            for leaf in tree.preorder() {
                if !tree.children[leaf].is_empty() {
                    continue;
                }
                let mut path = Vec::new();
                let mut v = leaf;
                while let Some(p) = tree.parent[v] {
                    path.push(v);
                    v = p;
                }
                path.reverse();
                let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
                for &v in &path {
                    groups
                        .entry(tree.sig_keys[v].as_str())
                        .or_default()
                        .push(v);
                }
                let Some(hits) = groups.values().find(|g| g.len() >= need) else {
                    continue;
                };
                let star = &tree.portions[hits[16 * self.k - 1]];
                debug_assert!(star.len() >= 2, "selected portion must not be a singleton");

                let f_set: HashSet<usize> = self.f.iter().map(|r| r.0).collect();
                let m = self.inst.m();
                let mut del = vec![false; m];
                let mut deleted = Vec::new();
                for t in 0..m {
                    if !f_set.contains(&t) && self.inst.tests()[t].intersection(cset) == *star {
                        del[t] = true;
                        deleted.push(t + 1);
                    }
                }
                debug_assert!(!deleted.is_empty());
                let trace = RuleTrace {
                    rule: RuleKind::Path,
                    class: tree.class + 1,
                    tests: deleted,
                    items: vec![],
                };
                let mut new_idx = vec![usize::MAX; m];
                let mut kept = Vec::with_capacity(m - 1);
                for t in 0..m {
                    if !del[t] {
                        new_idx[t] = kept.len();
                        kept.push(self.inst.tests()[t].clone());
                    }
                }
                let f_new = self.f.iter().map(|r| TestRef(new_idx[r.0])).collect();
                let (state, mut extra) = FptState::rebuilt(self.inst.n(), kept, f_new, self.k)?;
                let mut traces = vec![trace];
                traces.append(&mut extra);
                return Ok(Some((state, traces)));
            }
        }
        Ok(None)
    }

    /// Fires the replicated-sibling deletion rule if possible: when a vertex
    /// has at least 2k+2 pairwise strongly isomorphic child subtrees, the
    /// subtree rooted at the lexicographically least such child is removed —
    /// its tests deleted, its root portion's items deleted, the remaining
    /// tests restricted, deduplicated, and renumbered densely.
    pub fn apply_sibling_rule(&self) -> Result<Option<(FptState, Vec<RuleTrace>)>> {
        let need = 2 * self.k + 2;
        for tree in &self.trees {
            for v in tree.preorder() {
                if tree.children[v].len() < need {
                    continue;
                }
                let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
                for &c in &tree.children[v] {
                    groups.entry(tree.codes[c].as_str()).or_default().push(c);
                }
                let group = groups
                    .values()
                    .filter(|g| g.len() >= need)
                    .min_by_key(|g| &tree.portions[g[0]]);
                let Some(group) = group else { continue };
                let w1 = group[0];
                return self.fire_sibling(tree, w1).map(Some);
            }
        }
        Ok(None)
    }

    fn fire_sibling(&self, tree: &ClassTree, w1: usize) -> Result<(FptState, Vec<RuleTrace>)> {
        let n = self.inst.n();
        let m = self.inst.m();
        let cset = &self.classes.classes()[tree.class];
        let w1_set = tree.portions[w1].clone();

        let mut sub_portions: HashSet<&ItemSet> = HashSet::new();
        let mut stack = vec![w1];
        while let Some(u) = stack.pop() {
            sub_portions.insert(&tree.portions[u]);
            stack.extend(tree.children[u].iter().copied());
        }

        let f_set: HashSet<usize> = self.f.iter().map(|r| r.0).collect();
        let mut gone = Vec::new();
        let mut kept: Vec<(ItemSet, bool, usize)> = Vec::new();
        let mut slot: HashMap<ItemSet, usize> = HashMap::new();
        for t in 0..m {
            let test = &self.inst.tests()[t];
            if !f_set.contains(&t) {
                let inter = test.intersection(cset);
                if !inter.is_empty() && inter != *cset && sub_portions.contains(&inter) {
                    gone.push(t);
                    continue;
                }
            }
            let r = test.difference(&w1_set);
            if r.is_empty() {
                gone.push(t);
                continue;
            }
            let is_f = f_set.contains(&t);
            match slot.get(&r) {
                Some(&pos) => {
                    if is_f && !kept[pos].1 {
                        gone.push(kept[pos].2);
                        kept[pos] = (r, true, t);
                    } else {
                        gone.push(t);
                    }
                }
                None => {
                    slot.insert(r.clone(), kept.len());
                    kept.push((r, is_f, t));
                }
            }
        }
        gone.sort_unstable();
        let trace = RuleTrace {
            rule: RuleKind::Sibling,
            class: tree.class + 1,
            tests: gone.iter().map(|t| t + 1).collect(),
            items: w1_set.items(),
        };

        let mut map: Vec<Option<u32>> = vec![None; n as usize];
        let mut next = 0u32;
        for item in 1..=n {
            if !w1_set.contains(item) {
                next += 1;
                map[item as usize - 1] = Some(next);
            }
        }
        let new_n = next;
        let mut orig_to_new: HashMap<usize, usize> = HashMap::new();
        let mut new_tests = Vec::with_capacity(kept.len());
        for (pos, (r, _, t)) in kept.into_iter().enumerate() {
            orig_to_new.insert(t, pos);
            new_tests.push(r.remap(&map, new_n));
        }
        let f_new: Vec<TestRef> = self.f.iter().map(|r| TestRef(orig_to_new[&r.0])).collect();
        let (state, mut extra) = FptState::rebuilt(new_n, new_tests, f_new, self.k)?;
        let mut traces = vec![trace];
        traces.append(&mut extra);
        Ok((state, traces))
    }
}

/// Decision outcome: the verdict, the audit log of every rule firing, and —
/// when the answer is YES and no firing disturbed test indices — a witness
/// cover of size at most n − k over the original instance.
#[derive(Clone, Debug)]
pub struct FptOutcome {
    pub answer: bool,
    pub traces: Vec<RuleTrace>,
    pub witness: Option<Vec<TestRef>>,
}

fn reconstruct_witness(orig: &Instance, orig_m: usize, f: &[TestRef], k: usize) -> Option<Vec<TestRef>> {
    let stripped: Vec<TestRef> = f.iter().copied().filter(|r| r.0 < orig_m).collect();
    let cover = extend_partial_to_cover(orig, &stripped, false).ok()?;
    if cover.len() + k <= orig.n() as usize && is_test_cover(orig, &cover) {
        Some(cover)
    } else {
        None
    }
}

/// Decides whether a test cover of size at most n − k exists.
///
/// Pipeline: singleton closure, bounded greedy (answering YES outright when
/// it saturates or its terminal collection already induces |F| + k
/// classes), normalization, the two deletion rules to a fixpoint, and an
/// exhaustive small-witness search on the kernel.
pub fn fpt_decide(inst: &Instance, k: usize, limits: &Limits) -> Result<FptOutcome> {
    if !inst.is_validated() {
        return Err(Error::Unvalidated);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let orig_m = inst.m();
    let (closed, _) = add_all_singletons(inst);
    let greedy = greedy_mini_test(&closed, k)?;
    let (fl, cl) = (greedy.f.len(), greedy.classes.len());
    if greedy.saturated || cl >= fl + k {
        debug_assert!(cl >= fl + k);
        let witness = reconstruct_witness(inst, orig_m, &greedy.f, k);
        return Ok(FptOutcome {
            answer: true,
            traces: vec![],
            witness,
        });
    }
    debug_assert!(cl <= 3 * k - 2);

    let budget = closed.m() + closed.n() as usize + 2;
    let (mut state, mut traces) = FptState::prepare(&closed, k, &greedy.f)?;
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > budget {
            return Err(Error::Invariant(
                "reduction fixpoint loop failed to terminate".into(),
            ));
        }
        if let Some((s, t)) = state.apply_path_rule()? {
            state = s;
            traces.extend(t);
            continue;
        }
        if let Some((s, t)) = state.apply_sibling_rule()? {
            state = s;
            traces.extend(t);
            continue;
        }
        break;
    }

    let mini = find_k_mini_brute(&state.inst, k, limits)?;
    let answer = mini.is_some();
    let witness = match (&mini, traces.is_empty()) {
        (Some(w), true) => reconstruct_witness(inst, orig_m, w, k),
        _ => None,
    };
    Ok(FptOutcome {
        answer,
        traces,
        witness,
    })
}

const F_BIT_BUDGET: u64 = 1 << 24;

/// Depth threshold above which the long-path rule is guaranteed to trigger:
/// (32k − 1) · 2^(2^(3k − 1)). `None` when the value would exceed the
/// evaluator's bit budget. Documentation/telemetry only — the rule itself
/// triggers on its combinatorial precondition.
pub fn f1_threshold(k: usize) -> Option<BigUint> {
    assert!(k >= 1);
    if 3 * k - 1 >= 64 {
        return None;
    }
    let e = 1u64 << (3 * k - 1);
    if e > F_BIT_BUDGET {
        return None;
    }
    Some(BigUint::from(32 * k - 1) * (BigUint::from(1u32) << e as usize))
}

/// Out-degree threshold 2k · g(d,k) · (2^(2^(3k−1)))^(2·f₃(d−1,k) − 1) for
/// vertices of height d, with the non-isomorphic-subtree count g supplied
/// by the caller. `None` when the tower exceeds the bit budget.
pub fn f2_threshold<G>(d: u32, k: usize, g: &G) -> Option<BigUint>
where
    G: Fn(u32, usize) -> BigUint,
{
    assert!(d >= 1 && k >= 1);
    let prev = f3_threshold(d - 1, k, g)?;
    if 3 * k - 1 >= 64 {
        return None;
    }
    let e = (BigUint::from(1u64) << (3 * k - 1)) * (BigUint::from(2u32) * prev - 1u32);
    let e = u64::try_from(&e).ok().filter(|&e| e <= F_BIT_BUDGET)?;
    Some(BigUint::from(2 * k) * g(d, k) * (BigUint::from(1u32) << e as usize))
}

/// Portion-size threshold f₃(d,k) = f₃(d−1,k) · f₂(d,k) with f₃(0,k) = 1
/// (leaves are singletons). `None` when the value exceeds the bit budget.
pub fn f3_threshold<G>(d: u32, k: usize, g: &G) -> Option<BigUint>
where
    G: Fn(u32, usize) -> BigUint,
{
    assert!(k >= 1);
    if d == 0 {
        return Some(BigUint::from(1u32));
    }
    let prev = f3_threshold(d - 1, k, g)?;
    let f2 = f2_threshold(d, k, g)?;
    let out = prev * f2;
    if out.bits() > F_BIT_BUDGET {
        None
    } else {
        Some(out)
    }
}
