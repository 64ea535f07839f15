use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::state::MachineState;

use super::universe::OutputUniverse;

/// Score split into whole-percent state shares, largest first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition(Vec<(MachineState, u32)>);

impl Decomposition {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shares(&self) -> &[(MachineState, u32)] {
        &self.0
    }

    /// Percentage attributed to `state`, zero when absent.
    pub fn share(&self, state: MachineState) -> u32 {
        self.0.iter().find(|(s, _)| *s == state).map(|(_, p)| *p).unwrap_or(0)
    }

    pub fn top(&self) -> Option<MachineState> {
        self.0.first().map(|(s, _)| *s)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|(_, p)| p).sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("NaN");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, p)| format!("{s} {p}%")).collect();
        f.write_str(&parts.join(" & "))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (s, p) in &self.0 {
            map.serialize_entry(s.code(), p)?;
        }
        map.end()
    }
}

/// Evaluates every output term at `score` and normalizes the nonzero degrees
/// to 100%. Shares under 1% are dropped; the rest are rounded.
pub fn decompose_score(score: Option<f64>, universe: &OutputUniverse) -> Decomposition {
    let Some(score) = score.filter(|s| s.is_finite()) else {
        return Decomposition::default();
    };
    let degrees: Vec<f64> = (0..universe.levels()).map(|l| universe.term_degree(l, score)).collect();
    let total: f64 = degrees.iter().sum();
    if total <= 0.0 {
        return Decomposition::default();
    }
    let mut shares: Vec<(MachineState, u32)> = degrees
        .iter()
        .enumerate()
        .map(|(l, d)| (l, 100.0 * d / total))
        .filter(|(_, pct)| *pct >= 1.0)
        .map(|(l, pct)| (MachineState::from_severity(l).expect("level in range"), pct.round() as u32))
        .collect();
    shares.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    Decomposition(shares)
}
