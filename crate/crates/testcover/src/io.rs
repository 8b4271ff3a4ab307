//! Text formats for instances, graphs, and set cover images, plus the
//! seeded random instance generator.
//!
//! Instance files look like
//!
//! ```text
//! # chain on four items
//! testcover 4 3
//! 1
//! 2
//! 3
//! ```
//!
//! Lines that are blank or start with `#` are skipped everywhere. Graph
//! files use a `graph <p> <q>` header followed by one `u v` line per edge,
//! and set cover images a `setcover <ground> <m>` header followed by one
//! line of ground-element labels per set.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ItemSet;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::reductions::{Graph, SetCoverInstance};

/// Declared sizes beyond this are rejected before any allocation happens.
const MAX_DECLARED: u32 = 1 << 20;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t))
        }
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    tag: &str,
) -> Result<(u32, usize, usize)> {
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("missing `{tag} <n> <m>` header")))?;
    let mut words = line.split_whitespace();
    let found = words.next().unwrap_or("");
    if found != tag {
        return Err(parse_err(
            lineno,
            format!("expected `{tag}` header, found `{found}`"),
        ));
    }
    let mut number = |what: &str| -> Result<u64> {
        let word = words
            .next()
            .ok_or_else(|| parse_err(lineno, format!("header is missing {what}")))?;
        word.parse()
            .map_err(|_| parse_err(lineno, format!("{what} `{word}` is not a number")))
    };
    let n = number("the size")?;
    let m = number("the count")?;
    if words.next().is_some() {
        return Err(parse_err(lineno, "trailing tokens after the header"));
    }
    if n == 0 {
        return Err(parse_err(lineno, "the size must be at least 1"));
    }
    if n > MAX_DECLARED as u64 {
        return Err(parse_err(
            lineno,
            format!("the size {n} exceeds the supported maximum {MAX_DECLARED}"),
        ));
    }
    Ok((n as u32, m as usize, lineno))
}

/// Parses the `testcover` format. The result preserves test order and is
/// not yet validated; run [`Instance::validate`] to check cover-ness.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = data_lines(text);
    let (n, m, _) = parse_header(&mut lines, "testcover")?;
    let mut tests: Vec<ItemSet> = Vec::with_capacity(m);
    let mut first_at: HashMap<ItemSet, usize> = HashMap::new();
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or_else(|| {
            parse_err(
                text.lines().count() + 1,
                format!("expected {m} test lines, found {}", tests.len()),
            )
        })?;
        let mut test = ItemSet::empty(n);
        let mut last = 0u32;
        for word in line.split_whitespace() {
            let item: u32 = word
                .parse()
                .map_err(|_| parse_err(lineno, format!("item `{word}` is not a number")))?;
            if item == 0 || item > n {
                return Err(parse_err(lineno, format!("item {item} out of range 1..={n}")));
            }
            if item <= last {
                return Err(parse_err(
                    lineno,
                    format!("items must be strictly ascending, {item} follows {last}"),
                ));
            }
            last = item;
            test.insert(item);
        }
        if let Some(&first) = first_at.get(&test) {
            return Err(parse_err(
                lineno,
                format!("duplicate of the test at line {first}"),
            ));
        }
        first_at.insert(test.clone(), lineno);
        tests.push(test);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(parse_err(
            lineno,
            format!("found more than the declared {m} test lines"),
        ));
    }
    Ok(Instance::new(n, tests))
}

/// Renders an instance in the `testcover` format. With `canonical` set the
/// tests are sorted lexicographically, which is the form whose files
/// round-trip byte-exactly through [`parse_instance`].
pub fn write_instance(inst: &Instance, canonical: bool) -> String {
    let mut order: Vec<&ItemSet> = inst.tests().iter().collect();
    if canonical {
        order.sort();
    }
    let mut out = format!("testcover {} {}\n", inst.n(), inst.m());
    for t in order {
        let items: Vec<String> = t.items().iter().map(|i| i.to_string()).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the `graph` format: 1-based endpoints, no self-loops, no
/// duplicate edges (regardless of orientation).
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let (p, q, _) = parse_header(&mut lines, "graph")?;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(q);
    let mut first_at: HashMap<(u32, u32), usize> = HashMap::new();
    for _ in 0..q {
        let (lineno, line) = lines.next().ok_or_else(|| {
            parse_err(
                text.lines().count() + 1,
                format!("expected {q} edge lines, found {}", edges.len()),
            )
        })?;
        let mut words = line.split_whitespace();
        let endpoint = |words: &mut std::str::SplitWhitespace<'_>| -> Result<u32> {
            let word = words
                .next()
                .ok_or_else(|| parse_err(lineno, "edge line needs two endpoints"))?;
            let v: u32 = word
                .parse()
                .map_err(|_| parse_err(lineno, format!("endpoint `{word}` is not a number")))?;
            if v == 0 || v > p {
                return Err(parse_err(lineno, format!("vertex {v} out of range 1..={p}")));
            }
            Ok(v)
        };
        let a = endpoint(&mut words)?;
        let b = endpoint(&mut words)?;
        if words.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens after the edge"));
        }
        if a == b {
            return Err(parse_err(lineno, format!("self-loop at vertex {a}")));
        }
        let e = (a.min(b), a.max(b));
        if let Some(&first) = first_at.get(&e) {
            return Err(parse_err(
                lineno,
                format!("duplicate of the edge at line {first}"),
            ));
        }
        first_at.insert(e, lineno);
        edges.push(e);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(parse_err(
            lineno,
            format!("found more than the declared {q} edge lines"),
        ));
    }
    Graph::new(p, &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.p(), g.q());
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Renders a set cover image: a `setcover <ground> <m>` header, then one
/// line per set listing the labels of its ground elements.
pub fn write_setcover(sc: &SetCoverInstance) -> String {
    let mut out = format!("setcover {} {}\n", sc.labels.len(), sc.sets.len());
    for s in &sc.sets {
        let labels: Vec<&str> = s
            .items()
            .iter()
            .map(|&i| sc.labels[i as usize - 1].as_str())
            .collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// How many distinct tests the generator may draw: everything nonempty and,
/// for n ≥ 2, not the full item set.
fn generator_capacity(n: u32) -> Option<u64> {
    if n == 1 {
        Some(1)
    } else if n >= 64 {
        None // effectively unbounded
    } else {
        Some((1u64 << n) - 2)
    }
}

/// Draws `m` distinct random tests (each item kept with probability
/// `density`), then appends singletons of still-merged items until the
/// collection is a test cover. Returns the validated instance along with
/// the number of appended singletons. Deterministic in `seed`.
pub fn gen_random(n: u32, m: usize, density: f64, seed: u64) -> Result<(Instance, usize)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(density > 0.0 && density < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "density must lie strictly between 0 and 1, got {density}"
        )));
    }
    if let Some(cap) = generator_capacity(n) {
        if m as u64 > cap {
            return Err(Error::InvalidArgument(format!(
                "cannot draw {m} distinct tests on {n} items (capacity {cap})"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tests: Vec<ItemSet> = Vec::with_capacity(m);
    let mut seen: HashSet<ItemSet> = HashSet::new();
    let attempt_limit = 1000 * (m as u64 + 10);
    let mut attempts = 0u64;
    while tests.len() < m {
        attempts += 1;
        if attempts > attempt_limit {
            return Err(Error::ResourceLimit {
                what: "generator attempts",
                value: attempts,
                limit: attempt_limit,
            });
        }
        let mut t = ItemSet::empty(n);
        for item in 1..=n {
            if rng.gen_bool(density) {
                t.insert(item);
            }
        }
        if t.is_empty() || (n >= 2 && t.is_full()) || seen.contains(&t) {
            continue;
        }
        seen.insert(t.clone());
        tests.push(t);
    }
    let mut inst = Instance::new(n, tests);
    let mut appended = 0;
    loop {
        if inst.validate().is_valid() {
            break;
        }
        let part = crate::instance::induced_partition(&inst, &inst.all_refs());
        let class = part
            .classes()
            .iter()
            .find(|c| c.len() >= 2)
            .expect("an invalid generated instance must have a merged class");
        let single = ItemSet::singleton(n, class.smallest().unwrap());
        debug_assert!(!inst.tests().contains(&single));
        let mut tests = inst.tests().to_vec();
        tests.push(single);
        inst = Instance::new(n, tests);
        appended += 1;
    }
    Ok((inst, appended))
}
