//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use fuzzdiag::intervalgebra::Interval;

pub fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

/// Straight-loop root mean square.
pub fn rms_oracle(xs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for x in xs {
        acc += x * x;
    }
    (acc / xs.len() as f64).sqrt()
}

pub fn subset(a: (f64, f64), b: (f64, f64)) -> bool {
    b.0 <= a.0 && a.1 <= b.1
}

/// Survivors of inclusion removal by pairwise comparison: `i` goes when a
/// different interval strictly contains it or an earlier copy equals it.
pub fn iic_oracle(set: &[Interval]) -> Vec<usize> {
    let raw: Vec<(f64, f64)> = set.iter().map(|i| (i.lo(), i.hi())).collect();
    let mut keep = Vec::new();
    'outer: for i in 0..raw.len() {
        for j in 0..raw.len() {
            if i == j {
                continue;
            }
            let strict = subset(raw[i], raw[j]) && raw[i] != raw[j];
            let earlier_copy = raw[i] == raw[j] && j < i;
            if strict || earlier_copy {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

/// Narrowest surviving superset of `i`, lowest index on ties.
pub fn remap_oracle(set: &[Interval], survivors: &[usize], i: usize) -> usize {
    let mut best: Option<usize> = None;
    for &j in survivors {
        if set[j].lo() <= set[i].lo() && set[i].hi() <= set[j].hi() {
            best = match best {
                Some(b) if set[b].width() <= set[j].width() => Some(b),
                _ => Some(j),
            };
        }
    }
    best.unwrap()
}

/// Output term of `level` on the `[-1, 7]` universe: a unit triangle.
pub fn output_term(level: usize, y: f64) -> f64 {
    (1.0 - (y - level as f64).abs()).max(0.0)
}

/// Uniform grid over `[-1, 7]`.
pub fn grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| -1.0 + 8.0 * i as f64 / (points - 1) as f64).collect()
}

/// Centroid by direct summation, `None` for an all-zero set.
pub fn centroid_oracle(grid: &[f64], degrees: &[f64]) -> Option<f64> {
    let area: f64 = degrees.iter().sum();
    if area == 0.0 {
        return None;
    }
    Some(grid.iter().zip(degrees).map(|(y, d)| y * d).sum::<f64>() / area)
}
