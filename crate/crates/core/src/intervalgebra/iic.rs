//! Inclusion detection and removal over a set of intervals.

use super::interval::{includes, intersects, Interval};

/// Outcome of [`reduce_iic`] over an indexed interval set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Indices of the surviving intervals, ascending.
    pub survivors: Vec<usize>,
    /// For every input index, the surviving index that stands in for it.
    /// Survivors map to themselves.
    pub remap: Vec<usize>,
}

impl Reduction {
    pub fn is_survivor(&self, index: usize) -> bool {
        self.remap[index] == index
    }

    pub fn removed(&self) -> impl Iterator<Item = usize> + '_ {
        self.remap.iter().enumerate().filter(|(i, r)| *i != **r).map(|(i, _)| i)
    }
}

/// Removes every interval included in another one.
///
/// The removal set is computed against the original set, so the result does
/// not depend on iteration order. Of several identical intervals only the
/// first (lowest index) is kept. Each removed interval is remapped to its
/// narrowest surviving superset, lowest index on ties.
pub fn reduce_iic(intervals: &[Interval]) -> Reduction {
    let n = intervals.len();
    let removed: Vec<bool> = (0..n)
        .map(|i| {
            (0..n).any(|j| j != i && includes(&intervals[i], &intervals[j]) && (intervals[i] != intervals[j] || j < i))
        })
        .collect();

    let survivors: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
    let remap = (0..n)
        .map(|i| {
            if !removed[i] {
                return i;
            }
            // A maximal superset always survives, so this search is never empty.
            survivors
                .iter()
                .copied()
                .filter(|&j| includes(&intervals[i], &intervals[j]))
                .min_by(|&a, &b| intervals[a].width().total_cmp(&intervals[b].width()).then(a.cmp(&b)))
                .expect("removed interval has a surviving superset")
        })
        .collect();
    Reduction { survivors, remap }
}

/// Pairwise overlap structure of an interval set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverlapReport {
    /// `(a, b)` with `a ⊆ b`, `a != b` as indices.
    pub inclusions: Vec<(usize, usize)>,
    /// Unordered pairs `(a, b)`, `a < b`, that intersect without either
    /// including the other.
    pub intersections: Vec<(usize, usize)>,
}

impl OverlapReport {
    pub fn is_disjoint(&self) -> bool {
        self.inclusions.is_empty() && self.intersections.is_empty()
    }
}

pub fn detect_overlaps(intervals: &[Interval]) -> OverlapReport {
    let mut report = OverlapReport::default();
    for (i, a) in intervals.iter().enumerate() {
        for (j, b) in intervals.iter().enumerate() {
            if i == j {
                continue;
            }
            if includes(a, b) {
                report.inclusions.push((i, j));
            } else if i < j && !includes(b, a) && intersects(a, b) {
                report.intersections.push((i, j));
            }
        }
    }
    report
}
