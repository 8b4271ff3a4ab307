//! Fixed-width bitsets over the item universe `[n] = {1, …, n}`.
//!
//! Items are 1-based at every public surface; bit positions are 0-based
//! internally. Ordering is lexicographic on the ascending item sequence,
//! which is the tie-breaking order used throughout the crate (note this is
//! not the numeric order of the raw words: `{1,3} < {2}`).

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ItemSet {
    width: u32,
    blocks: Vec<u64>,
}

fn blocks_for(width: u32) -> usize {
    (width as usize + 63) / 64
}

impl ItemSet {
    pub fn empty(width: u32) -> Self {
        ItemSet {
            width,
            blocks: vec![0; blocks_for(width)],
        }
    }

    pub fn full(width: u32) -> Self {
        let mut s = ItemSet::empty(width);
        for b in 0..s.blocks.len() {
            s.blocks[b] = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(width: u32, item: u32) -> Self {
        let mut s = ItemSet::empty(width);
        s.insert(item);
        s
    }

    /// Builds a set from 1-based items, reporting the first out-of-range one.
    pub fn checked_from_items(width: u32, items: &[u32]) -> std::result::Result<Self, u32> {
        let mut s = ItemSet::empty(width);
        for &it in items {
            if it == 0 || it > width {
                return Err(it);
            }
            s.insert(it);
        }
        Ok(s)
    }

    /// Panicking convenience for literals known to be in range.
    pub fn from_items(width: u32, items: &[u32]) -> Self {
        Self::checked_from_items(width, items).expect("item out of range")
    }

    fn trim(&mut self) {
        let tail = self.width as usize % 64;
        if tail != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn contains(&self, item: u32) -> bool {
        if item == 0 || item > self.width {
            return false;
        }
        let bit = (item - 1) as usize;
        self.blocks[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn insert(&mut self, item: u32) {
        assert!(item >= 1 && item <= self.width, "item out of range");
        let bit = (item - 1) as usize;
        self.blocks[bit / 64] |= 1 << (bit % 64);
    }

    pub fn remove(&mut self, item: u32) {
        assert!(item >= 1 && item <= self.width, "item out of range");
        let bit = (item - 1) as usize;
        self.blocks[bit / 64] &= !(1 << (bit % 64));
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width as usize
    }

    pub fn smallest(&self) -> Option<u32> {
        for (i, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some((i * 64) as u32 + b.trailing_zeros() + 1);
            }
        }
        None
    }

    /// Ascending 1-based items.
    pub fn iter(&self) -> Items<'_> {
        Items {
            set: self,
            block: 0,
            bits: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn items(&self) -> Vec<u32> {
        self.iter().collect()
    }

    fn zip_check(&self, other: &Self) {
        assert_eq!(self.width, other.width, "universe width mismatch");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_check(other);
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for a in out.blocks.iter_mut() {
            *a = !*a;
        }
        out.trim();
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.zip_check(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.zip_check(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Renames items through `map` (1-based old item -> new item, `None` for
    /// deleted) into a universe of width `new_width`.
    pub fn remap(&self, map: &[Option<u32>], new_width: u32) -> Self {
        let mut out = ItemSet::empty(new_width);
        for item in self.iter() {
            if let Some(new) = map[(item - 1) as usize] {
                out.insert(new);
            }
        }
        out
    }
}

pub struct Items<'a> {
    set: &'a ItemSet,
    block: usize,
    bits: u64,
}

impl Iterator for Items<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros();
                self.bits &= self.bits - 1;
                return Some((self.block * 64) as u32 + tz + 1);
            }
            self.block += 1;
            if self.block >= self.set.blocks.len() {
                return None;
            }
            self.bits = self.set.blocks[self.block];
        }
    }
}

impl Ord for ItemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return self.width.cmp(&other.width),
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for ItemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
