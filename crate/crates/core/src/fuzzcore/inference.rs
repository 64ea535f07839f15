//! Mamdani inference: min conjunction, min implication, max aggregation,
//! centroid defuzzification.

use crate::error::{Error, Result};
use crate::intervalgebra::RuleBase;

use super::decompose::{decompose_score, Decomposition};
use super::membership::MembershipFamily;
use super::universe::OutputUniverse;

/// Firing strengths below this are treated as no activation.
pub const DEFAULT_ACTIVATION_FLOOR: f64 = 0.015;

/// Aggregated output fuzzy set sampled on the universe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet<'u> {
    grid: &'u [f64],
    degrees: Vec<f64>,
}

impl<'u> FuzzySet<'u> {
    pub fn new(grid: &'u [f64], degrees: Vec<f64>) -> Result<Self> {
        if grid.len() != degrees.len() {
            return Err(Error::invalid(format!(
                "fuzzy set has {} degrees for {} grid points",
                degrees.len(),
                grid.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|d| !(0.0..=1.0).contains(*d)) {
            return Err(Error::invalid(format!("membership degree {d} outside [0, 1]")));
        }
        Ok(FuzzySet { grid, degrees })
    }

    pub fn grid(&self) -> &[f64] {
        self.grid
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0.0)
    }
}

/// Clips each consequent term at its activation and takes the pointwise max.
///
/// `activations` yields `(level, strength)` pairs. Rules sharing a
/// consequent level are folded first, since `max(min(a, mu), min(b, mu)) =
/// min(max(a, b), mu)`.
pub fn aggregate<'u, I>(universe: &'u OutputUniverse, activations: I) -> FuzzySet<'u>
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let mut per_level = vec![0.0_f64; universe.levels()];
    for (level, alpha) in activations {
        per_level[level] = per_level[level].max(alpha.clamp(0.0, 1.0));
    }
    let grid = universe.grid();
    let mut degrees = vec![0.0; grid.len()];
    for (level, &alpha) in per_level.iter().enumerate() {
        if alpha <= 0.0 {
            continue;
        }
        let (start, end) = universe.span(level);
        for i in start..end {
            let clipped = universe.term_degree(level, grid[i]).min(alpha);
            if clipped > degrees[i] {
                degrees[i] = clipped;
            }
        }
    }
    FuzzySet { grid, degrees }
}

/// Centroid of the set, `None` when nothing is activated.
pub fn defuzzify(set: &FuzzySet<'_>) -> Option<f64> {
    let (mut moment, mut area) = (0.0, 0.0);
    for (&y, &d) in set.grid.iter().zip(&set.degrees) {
        moment += y * d;
        area += d;
    }
    if area > 0.0 {
        let c = moment / area;
        // Grid rounding leaves residue of order 1e-17 on symmetric sets at 0.
        Some(if c.abs() < 1e-12 { 0.0 } else { c })
    } else {
        None
    }
}

/// Result of one crisp diagnosis.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosis {
    pub score: Option<f64>,
    pub decomposition: Decomposition,
    /// Number of rules with nonzero strength after the activation floor.
    pub fired: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RuleRef {
    v_term: usize,
    g_term: usize,
    level: usize,
}

/// A rule base bound to its membership families and output universe.
#[derive(Debug, Clone)]
pub struct InferenceEngine {
    rules: Vec<RuleRef>,
    v_family: MembershipFamily,
    g_family: MembershipFamily,
    universe: OutputUniverse,
    activation_floor: f64,
}

impl InferenceEngine {
    pub fn new(
        rule_base: &RuleBase,
        v_family: MembershipFamily,
        g_family: MembershipFamily,
        universe: OutputUniverse,
        activation_floor: f64,
    ) -> Result<Self> {
        for (name, terms, family) in [("v", rule_base.v_terms(), &v_family), ("g", rule_base.g_terms(), &g_family)] {
            if terms.len() != family.len() || terms.iter().zip(&family.terms).any(|(t, f)| t.id != f.id) {
                return Err(Error::invalid(format!("{name} membership family does not match the rule base terms")));
            }
        }
        if !(0.0..1.0).contains(&activation_floor) {
            return Err(Error::invalid(format!("activation floor must be in [0, 1), got {activation_floor}")));
        }
        let rules = rule_base
            .rules()
            .iter()
            .map(|r| RuleRef { v_term: r.v_term, g_term: r.g_term, level: r.consequent.severity() })
            .collect();
        Ok(InferenceEngine { rules, v_family, g_family, universe, activation_floor })
    }

    pub fn universe(&self) -> &OutputUniverse {
        &self.universe
    }

    pub fn v_family(&self) -> &MembershipFamily {
        &self.v_family
    }

    pub fn g_family(&self) -> &MembershipFamily {
        &self.g_family
    }

    pub fn activation_floor(&self) -> f64 {
        self.activation_floor
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Per-rule `min(mu_v(x_v), mu_g(x_g))`, zeroed below the activation floor.
    pub fn firing_strengths(&self, x_v: f64, x_g: f64) -> Vec<f64> {
        self.rules.iter().map(|r| self.strength(r, x_v, x_g)).collect()
    }

    fn strength(&self, rule: &RuleRef, x_v: f64, x_g: f64) -> f64 {
        let alpha = self.v_family.degree(rule.v_term, x_v).min(self.g_family.degree(rule.g_term, x_g));
        if alpha < self.activation_floor {
            0.0
        } else {
            alpha
        }
    }

    pub fn infer(&self, x_v: f64, x_g: f64) -> FuzzySet<'_> {
        aggregate(&self.universe, self.rules.iter().map(|r| (r.level, self.strength(r, x_v, x_g))))
    }

    /// Inference, defuzzification and decomposition in one pass.
    pub fn diagnose(&self, x_v: f64, x_g: f64) -> Diagnosis {
        let fired = self.rules.iter().filter(|r| self.strength(r, x_v, x_g) > 0.0).count();
        let score = defuzzify(&self.infer(x_v, x_g));
        Diagnosis { score, decomposition: decompose_score(score, &self.universe), fired }
    }
}
