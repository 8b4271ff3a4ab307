//! Test cover instances and the separation primitives everything else
//! builds on.
//!
//! An instance is an item universe `[n]` together with an ordered list of
//! tests (subsets of `[n]`). A test `T` separates items `i != j` when it
//! contains exactly one of them. A subcollection is a test cover when every
//! pair of items is separated by one of its tests. Instances carry a
//! validity flag recording that the *full* collection is a test cover;
//! solvers refuse instances without it.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::ItemSet;
use crate::error::{Error, Result};

/// Index of a test inside one specific instance. 0-based internally; all
/// file formats and log output use 1-based numbering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TestRef(pub usize);

#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    n: u32,
    tests: Vec<ItemSet>,
    validated: bool,
}

impl Instance {
    /// Wraps raw parts without validating. The validity flag starts unset.
    pub fn new(n: u32, tests: Vec<ItemSet>) -> Self {
        for t in &tests {
            assert_eq!(t.width(), n, "test width must equal n");
        }
        Instance {
            n,
            tests,
            validated: false,
        }
    }

    /// Builds from 1-based item lists, rejecting out-of-range items.
    pub fn from_lists(n: u32, lists: &[Vec<u32>]) -> Result<Self> {
        let mut tests = Vec::with_capacity(lists.len());
        for (i, list) in lists.iter().enumerate() {
            let set = ItemSet::checked_from_items(n, list).map_err(|item| {
                Error::InvalidArgument(format!("test {} contains item {item} outside [1, {n}]", i + 1))
            })?;
            tests.push(set);
        }
        Ok(Instance::new(n, tests))
    }

    /// `from_lists` followed by `validate`, erroring unless the result is a
    /// fully valid instance. Convenient for fixtures.
    pub fn validated_from_lists(n: u32, lists: &[Vec<u32>]) -> Result<Self> {
        let mut inst = Self::from_lists(n, lists)?;
        let report = inst.validate();
        if !report.is_valid() {
            return Err(Error::InvalidArgument(format!("instance invalid: {report}")));
        }
        Ok(inst)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.tests.len()
    }

    pub fn tests(&self) -> &[ItemSet] {
        &self.tests
    }

    /// Panics if `r` does not address a test of this instance.
    pub fn test(&self, r: TestRef) -> &ItemSet {
        &self.tests[r.0]
    }

    pub fn all_refs(&self) -> Vec<TestRef> {
        (0..self.m()).map(TestRef).collect()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Re-checks every structural invariant plus cover-ness of the full
    /// collection and sets the validity flag accordingly.
    pub fn validate(&mut self) -> ValidationReport {
        let mut report = ValidationReport {
            n: self.n,
            m: self.m(),
            empty_tests: Vec::new(),
            duplicate_tests: Vec::new(),
            out_of_range: Vec::new(),
            class_count: 0,
            is_test_cover: false,
        };
        let mut seen: HashMap<&ItemSet, usize> = HashMap::new();
        for (i, t) in self.tests.iter().enumerate() {
            if t.is_empty() {
                report.empty_tests.push(TestRef(i));
            }
            if let Some(&first) = seen.get(t) {
                report.duplicate_tests.push((TestRef(first), TestRef(i)));
            } else {
                seen.insert(t, i);
            }
        }
        let part = induced_partition(self, &self.all_refs());
        report.class_count = part.len();
        report.is_test_cover = part.len() == self.n as usize;
        self.validated = report.is_valid();
        report
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Instance(n={}, tests=[", self.n)?;
        for (i, t) in self.tests.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t:?}")?;
        }
        write!(f, "])")
    }
}

/// Everything `validate` found. The instance is valid when all violation
/// lists are empty and the full collection is a test cover.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub n: u32,
    pub m: usize,
    pub empty_tests: Vec<TestRef>,
    pub duplicate_tests: Vec<(TestRef, TestRef)>,
    /// Only populated when validating raw item lists; sets over `[n]`
    /// cannot hold out-of-range items.
    pub out_of_range: Vec<(usize, u32)>,
    pub class_count: usize,
    pub is_test_cover: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.empty_tests.is_empty()
            && self.duplicate_tests.is_empty()
            && self.out_of_range.is_empty()
            && self.is_test_cover
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(
                f,
                "valid: n={}, m={}, full collection induces {} classes",
                self.n, self.m, self.class_count
            );
        }
        write!(f, "invalid:")?;
        for r in &self.empty_tests {
            write!(f, " test {} is empty;", r.0 + 1)?;
        }
        for (a, b) in &self.duplicate_tests {
            write!(f, " test {} duplicates test {};", b.0 + 1, a.0 + 1)?;
        }
        for (t, item) in &self.out_of_range {
            write!(f, " test {} has out-of-range item {item};", t + 1)?;
        }
        if !self.is_test_cover {
            write!(
                f,
                " full collection induces {} classes, need {}",
                self.class_count, self.n
            )?;
        }
        Ok(())
    }
}

/// Validates raw 1-based item lists without building an instance first, so
/// out-of-range items can be reported instead of being unrepresentable.
pub fn validate_lists(n: u32, lists: &[Vec<u32>]) -> ValidationReport {
    let mut out_of_range = Vec::new();
    for (i, list) in lists.iter().enumerate() {
        for &item in list {
            if item == 0 || item > n {
                out_of_range.push((i, item));
            }
        }
    }
    if !out_of_range.is_empty() {
        return ValidationReport {
            n,
            m: lists.len(),
            empty_tests: Vec::new(),
            duplicate_tests: Vec::new(),
            out_of_range,
            class_count: 0,
            is_test_cover: false,
        };
    }
    let mut inst = Instance::from_lists(n, lists).expect("ranges pre-checked");
    inst.validate()
}

/// Does `test` contain exactly one of `i`, `j`?
pub fn separates(test: &ItemSet, i: u32, j: u32) -> Result<bool> {
    if i == j {
        return Err(Error::InvalidArgument(format!("items must differ, got {i} twice")));
    }
    let n = test.width();
    for item in [i, j] {
        if item == 0 || item > n {
            return Err(Error::InvalidArgument(format!("item {item} outside [1, {n}]")));
        }
    }
    Ok(test.contains(i) != test.contains(j))
}

/// The equivalence classes of "not separated by any test in `sub`",
/// ordered by smallest member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    classes: Vec<ItemSet>,
}

impl Partition {
    pub fn classes(&self) -> &[ItemSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// True when every class is a singleton, i.e. `sub` was a test cover.
    pub fn is_discrete(&self, n: u32) -> bool {
        self.len() == n as usize
    }

    /// Index of the class containing `item`, if any.
    pub fn class_of(&self, item: u32) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(item))
    }
}

/// Computes the partition of `[n]` induced by the given subcollection via
/// iterative refinement. Panics if a ref is out of range (caller bug).
pub fn induced_partition(inst: &Instance, sub: &[TestRef]) -> Partition {
    let n = inst.n();
    if n == 0 {
        return Partition { classes: Vec::new() };
    }
    let mut classes = vec![ItemSet::full(n)];
    for &r in sub {
        let test = inst.test(r);
        let mut next = Vec::with_capacity(classes.len() + 4);
        for class in classes {
            let inside = class.intersection(test);
            if inside.is_empty() || inside == class {
                next.push(class);
            } else {
                let outside = class.difference(test);
                next.push(inside);
                next.push(outside);
            }
        }
        classes = next;
    }
    classes.sort_by_key(|c| c.smallest().expect("classes are nonempty"));
    Partition { classes }
}

/// Number of classes `sub` induces, without materializing them. Each item
/// gets a membership signature over the (at most 64) chosen tests; classes
/// are the distinct signatures. Falls back to full refinement for larger
/// subcollections.
pub(crate) fn class_count(inst: &Instance, sub: &[TestRef], scratch: &mut Vec<u64>) -> usize {
    if sub.len() > 64 {
        return induced_partition(inst, sub).len();
    }
    let n = inst.n();
    scratch.clear();
    for item in 1..=n {
        let mut sig = 0u64;
        for (b, &r) in sub.iter().enumerate() {
            sig |= (inst.test(r).contains(item) as u64) << b;
        }
        scratch.push(sig);
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len()
}

/// Same as `class_count` but over raw indices, for enumeration loops that
/// never materialize `TestRef`s.
pub(crate) fn class_count_idx(inst: &Instance, sub: &[usize], scratch: &mut Vec<u64>) -> usize {
    if sub.len() > 64 {
        let refs: Vec<TestRef> = sub.iter().map(|&i| TestRef(i)).collect();
        return induced_partition(inst, &refs).len();
    }
    let n = inst.n();
    scratch.clear();
    for item in 1..=n {
        let mut sig = 0u64;
        for (b, &t) in sub.iter().enumerate() {
            sig |= (inst.tests()[t].contains(item) as u64) << b;
        }
        scratch.push(sig);
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len()
}

pub fn is_test_cover(inst: &Instance, sub: &[TestRef]) -> bool {
    let mut scratch = Vec::new();
    class_count(inst, sub, &mut scratch) == inst.n() as usize
}

/// Which singleton tests `add_all_singletons` appended, and for which items.
#[derive(Clone, Debug)]
pub struct SingletonClosure {
    /// (item, index of its new singleton test). Original test indices are
    /// unchanged: singletons are appended at the end in item order.
    pub added: Vec<(u32, TestRef)>,
}

/// Appends the missing singleton tests `{i}` in ascending item order.
/// Existing tests keep their indices; existing singletons are not
/// duplicated. The result is re-validated (a singleton-closed collection
/// always separates everything, so structurally sound input comes back
/// validated).
pub fn add_all_singletons(inst: &Instance) -> (Instance, SingletonClosure) {
    let n = inst.n();
    let mut present = vec![false; n as usize + 1];
    for t in inst.tests() {
        if t.len() == 1 {
            present[t.smallest().expect("nonempty") as usize] = true;
        }
    }
    let mut tests = inst.tests().to_vec();
    let mut added = Vec::new();
    for item in 1..=n {
        if !present[item as usize] {
            added.push((item, TestRef(tests.len())));
            tests.push(ItemSet::singleton(n, item));
        }
    }
    let mut closed = Instance::new(n, tests);
    closed.validate();
    (closed, SingletonClosure { added })
}

/// `[n] \ test`. Errors on the empty set and on `[n]` itself since both
/// complements would violate test nonemptiness or add a useless test.
pub fn complement_test(n: u32, test: &ItemSet) -> Result<ItemSet> {
    if test.width() != n {
        return Err(Error::InvalidArgument(format!(
            "test is over [1, {}], expected [1, {n}]",
            test.width()
        )));
    }
    if test.is_empty() {
        return Err(Error::InvalidArgument("cannot complement the empty test".into()));
    }
    if test.is_full() {
        return Err(Error::InvalidArgument("cannot complement the full test".into()));
    }
    Ok(test.complement())
}
