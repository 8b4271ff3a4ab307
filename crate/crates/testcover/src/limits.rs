//! Resource caps for the exponential-time searches.
//!
//! Every cap is configuration rather than a constant so callers can trade
//! time for completeness. The defaults keep the brute-force paths in the
//! sub-second range on ordinary hardware.

use std::time::Instant;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Limits {
    /// Hard cap on the number of tests accepted by the exact cover search.
    pub max_tests: usize,
    /// Budget on enumerated search nodes / candidate subcollections.
    pub max_enumeration: u64,
    /// Hard cap on graph order for the exact vertex cover search.
    pub max_vertices: usize,
    /// Optional wall-clock deadline checked cooperatively inside searches.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tests: 24,
            max_enumeration: 200_000_000,
            max_vertices: 20,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

/// Counts work units and enforces both the enumeration budget and the
/// deadline. Deadline checks are amortized to once per 4096 ticks.
pub(crate) struct Budget<'a> {
    limits: &'a Limits,
    used: u64,
}

impl<'a> Budget<'a> {
    pub(crate) fn new(limits: &'a Limits) -> Self {
        Budget { limits, used: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limits.max_enumeration {
            return Err(Error::ResourceLimit {
                what: "search enumeration",
                value: self.used,
                limit: self.limits.max_enumeration,
            });
        }
        if self.used == 1 || self.used % 4096 == 0 {
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::Timeout);
                }
            }
        }
        Ok(())
    }
}
