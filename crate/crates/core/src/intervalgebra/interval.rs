use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid(format!("interval endpoints must be finite, got [{lo}, {hi}]")));
        }
        if lo > hi {
            return Err(Error::invalid(format!("interval lower bound {lo} exceeds upper bound {hi}")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Interval::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`, compared with exact `>=`/`<=`.
    pub fn includes_in(&self, other: &Interval) -> bool {
        includes(self, other)
    }

    /// Smallest interval covering both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Widens the interval to cover `x`.
    pub fn extend(&mut self, x: f64) {
        if x < self.lo {
            self.lo = x;
        }
        if x > self.hi {
            self.hi = x;
        }
    }
}

/// True iff `a ⊆ b`.
pub fn includes(a: &Interval, b: &Interval) -> bool {
    a.lo >= b.lo && a.hi <= b.hi
}

/// True iff the closed intervals share at least one point.
pub fn intersects(a: &Interval, b: &Interval) -> bool {
    a.lo.max(b.lo) <= a.hi.min(b.hi)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[f64; 2]>::deserialize(deserializer)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}
