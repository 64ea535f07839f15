use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervalgebra::{Interval, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Triangular,
    Trapezoidal,
    Gaussian,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Trapezoidal, FamilyKind::Triangular, FamilyKind::Gaussian];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Triangular => "triangular",
            FamilyKind::Trapezoidal => "trapezoidal",
            FamilyKind::Gaussian => "gaussian",
        }
    }

    /// Number of parameters per term.
    pub fn arity(self) -> usize {
        match self {
            FamilyKind::Triangular => 3,
            FamilyKind::Trapezoidal => 4,
            FamilyKind::Gaussian => 2,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "triangular" | "tri" | "trimf" => Ok(FamilyKind::Triangular),
            "trapezoidal" | "trap" | "trapmf" => Ok(FamilyKind::Trapezoidal),
            "gaussian" | "gauss" | "gaussmf" => Ok(FamilyKind::Gaussian),
            other => Err(Error::invalid(format!("unknown membership family {other:?}"))),
        }
    }
}

/// Shape knobs used when deriving membership functions from intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeParams {
    /// Gaussian `sigma = width / sigma_divisor`.
    pub sigma_divisor: f64,
    /// Trapezoid shoulders sit at this fraction of the width from each end.
    pub shoulder: f64,
}

impl Default for ShapeParams {
    fn default() -> Self {
        ShapeParams { sigma_divisor: 6.0, shoulder: 0.25 }
    }
}

impl ShapeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_divisor.is_finite() && self.sigma_divisor > 0.0) {
            return Err(Error::invalid(format!("sigma divisor must be positive, got {}", self.sigma_divisor)));
        }
        if !(self.shoulder > 0.0 && self.shoulder < 0.5) {
            return Err(Error::invalid(format!("shoulder fraction must be in (0, 0.5), got {}", self.shoulder)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFn {
    Triangular { a: f64, m: f64, b: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    Gaussian { mean: f64, sigma: f64 },
}

impl MembershipFn {
    /// Derives the membership function of `kind` that covers `interval`.
    ///
    /// Zero-width intervals become a unit spike with feet `±eps`,
    /// `eps = 1e-9 * max(1, |x|)`.
    pub fn from_interval(kind: FamilyKind, interval: &Interval, shape: &ShapeParams) -> Self {
        let (lo, hi) = (interval.lo(), interval.hi());
        let w = interval.width();
        if w == 0.0 {
            let eps = 1e-9 * lo.abs().max(1.0);
            return match kind {
                FamilyKind::Triangular => MembershipFn::Triangular { a: lo - eps, m: lo, b: lo + eps },
                FamilyKind::Trapezoidal => MembershipFn::Trapezoidal { a: lo - eps, b: lo, c: lo, d: lo + eps },
                FamilyKind::Gaussian => MembershipFn::Gaussian { mean: lo, sigma: eps },
            };
        }
        match kind {
            FamilyKind::Triangular => MembershipFn::Triangular { a: lo, m: interval.midpoint(), b: hi },
            FamilyKind::Trapezoidal => {
                MembershipFn::Trapezoidal { a: lo, b: lo + shape.shoulder * w, c: hi - shape.shoulder * w, d: hi }
            }
            FamilyKind::Gaussian => {
                MembershipFn::Gaussian { mean: interval.midpoint(), sigma: w / shape.sigma_divisor }
            }
        }
    }

    pub fn from_params(kind: FamilyKind, p: &[f64]) -> Result<Self> {
        if p.len() != kind.arity() {
            return Err(Error::invalid(format!("{kind} needs {} parameters, got {}", kind.arity(), p.len())));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("non-finite {kind} parameters {p:?}")));
        }
        let mf = match kind {
            FamilyKind::Triangular => MembershipFn::Triangular { a: p[0], m: p[1], b: p[2] },
            FamilyKind::Trapezoidal => MembershipFn::Trapezoidal { a: p[0], b: p[1], c: p[2], d: p[3] },
            FamilyKind::Gaussian => MembershipFn::Gaussian { mean: p[0], sigma: p[1] },
        };
        let ordered = match mf {
            MembershipFn::Triangular { a, m, b } => a <= m && m <= b,
            MembershipFn::Trapezoidal { a, b, c, d } => a <= b && b <= c && c <= d,
            MembershipFn::Gaussian { sigma, .. } => sigma > 0.0,
        };
        if !ordered {
            return Err(Error::invalid(format!("{kind} parameters out of order: {p:?}")));
        }
        Ok(mf)
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            MembershipFn::Triangular { .. } => FamilyKind::Triangular,
            MembershipFn::Trapezoidal { .. } => FamilyKind::Trapezoidal,
            MembershipFn::Gaussian { .. } => FamilyKind::Gaussian,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            MembershipFn::Triangular { a, m, b } => vec![a, m, b],
            MembershipFn::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
            MembershipFn::Gaussian { mean, sigma } => vec![mean, sigma],
        }
    }

    /// Degree of membership of `x`, in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        match *self {
            MembershipFn::Triangular { a, m, b } => {
                if x == m {
                    1.0
                } else if x <= a || x >= b {
                    0.0
                } else if x < m {
                    (x - a) / (m - a)
                } else {
                    (b - x) / (b - m)
                }
            }
            MembershipFn::Trapezoidal { a, b, c, d } => {
                if b <= x && x <= c {
                    1.0
                } else if x <= a || x >= d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (d - x) / (d - c)
                }
            }
            MembershipFn::Gaussian { mean, sigma } => {
                let z = (x - mean) / sigma;
                (-0.5 * z * z).exp()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyTerm {
    pub id: String,
    pub mf: MembershipFn,
}

/// Membership functions of one kind over the terms of one input variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFamily {
    pub kind: FamilyKind,
    pub terms: Vec<FamilyTerm>,
}

impl MembershipFamily {
    pub fn degree(&self, term: usize, x: f64) -> f64 {
        self.terms[term].mf.degree(x)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn build_family(terms: &[Term], kind: FamilyKind, shape: &ShapeParams) -> Result<MembershipFamily> {
    if terms.is_empty() {
        return Err(Error::invalid("cannot build a membership family without terms"));
    }
    shape.validate()?;
    Ok(MembershipFamily {
        kind,
        terms: terms
            .iter()
            .map(|t| FamilyTerm { id: t.id.clone(), mf: MembershipFn::from_interval(kind, &t.interval, shape) })
            .collect(),
    })
}

/// Degree of `x` in term `term` of `family`.
pub fn membership(family: &MembershipFamily, term: usize, x: f64) -> f64 {
    family.degree(term, x)
}
