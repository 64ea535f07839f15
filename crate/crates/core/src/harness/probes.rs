use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::MachineState;
use crate::vibdata::StateIntervalTable;

/// Probe offset from each interval end, as a fraction of its width.
pub const DEFAULT_PROBE_OFFSET: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeEnd {
    Min,
    Max,
}

impl fmt::Display for ProbeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeEnd::Min => "min",
            ProbeEnd::Max => "max",
        })
    }
}

/// A crisp input placed just inside one end of a state's intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    /// 1-based position in the probe set.
    pub number: usize,
    pub state: MachineState,
    pub end: ProbeEnd,
    pub x_v: f64,
    pub x_g: f64,
}

impl Probe {
    pub fn id(&self) -> String {
        format!("{}-{}", self.state, self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSet {
    pub offset: f64,
    pub probes: Vec<Probe>,
}

impl ProbeSet {
    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }
}

/// Two probes per state, in severity order: near the minimum, then near the
/// maximum of both intervals.
pub fn build_probes(table: &StateIntervalTable, offset: f64) -> Result<ProbeSet> {
    if !(offset > 0.0 && offset < 0.5) {
        return Err(Error::invalid(format!("probe offset must be in (0, 0.5), got {offset}")));
    }
    let mut probes = Vec::with_capacity(2 * table.len());
    for (state, row) in table.rows() {
        let (dv, dg) = (offset * row.iv.width(), offset * row.ig.width());
        for (end, x_v, x_g) in
            [(ProbeEnd::Min, row.iv.lo() + dv, row.ig.lo() + dg), (ProbeEnd::Max, row.iv.hi() - dv, row.ig.hi() - dg)]
        {
            probes.push(Probe { number: probes.len() + 1, state, end, x_v, x_g });
        }
    }
    Ok(ProbeSet { offset, probes })
}
