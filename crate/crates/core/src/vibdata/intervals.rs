use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervalgebra::Interval;
use crate::state::MachineState;

use super::frame::{summarize_frame, FrameSummary, Position, SensorFrame};

pub const INTERVAL_SCHEMA: &str = "ittflm-intervals/1";

/// RMS intervals of one machine state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateIntervals {
    pub iv: Interval,
    pub ig: Interval,
}

/// Per-state `(I_v, I_g)` table, rows ordered by severity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StateIntervalTable {
    /// `None` when pooled over all positions.
    pub position: Option<Position>,
    rows: BTreeMap<MachineState, StateIntervals>,
}

impl StateIntervalTable {
    pub fn from_rows(rows: impl IntoIterator<Item = (MachineState, StateIntervals)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (state, row) in rows {
            if map.insert(state, row).is_some() {
                return Err(Error::invalid(format!("duplicate row for state {state}")));
            }
        }
        if map.is_empty() {
            return Err(Error::invalid("interval table has no rows"));
        }
        Ok(StateIntervalTable { position: None, rows: map })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, state: MachineState) -> Option<&StateIntervals> {
        self.rows.get(&state)
    }

    pub fn states(&self) -> impl Iterator<Item = MachineState> + '_ {
        self.rows.keys().copied()
    }

    /// Rows in severity order.
    pub fn rows(&self) -> impl Iterator<Item = (MachineState, &StateIntervals)> + '_ {
        self.rows.iter().map(|(s, r)| (*s, r))
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = TableWire {
            schema: INTERVAL_SCHEMA.to_string(),
            position: self.position,
            states: self.rows().map(|(state, r)| RowWire { state, iv: r.iv, ig: r.ig }).collect(),
        };
        Ok(serde_json::to_string_pretty(&wire)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: TableWire = serde_json::from_str(text).map_err(|e| Error::Schema(format!("interval table: {e}")))?;
        if wire.schema != INTERVAL_SCHEMA {
            return Err(Error::Schema(format!("expected schema {INTERVAL_SCHEMA:?}, found {:?}", wire.schema)));
        }
        let mut table = StateIntervalTable::from_rows(
            wire.states.into_iter().map(|r| (r.state, StateIntervals { iv: r.iv, ig: r.ig })),
        )
        .map_err(|e| Error::Schema(e.to_string()))?;
        table.position = wire.position;
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    position: Option<Position>,
    states: Vec<RowWire>,
}

#[derive(Serialize, Deserialize)]
struct RowWire {
    state: MachineState,
    iv: Interval,
    ig: Interval,
}

/// Running per-state min/max of frame summaries.
///
/// Memory is constant in the number of frames; two accumulators over disjoint
/// frame sets merge into the accumulator of their union.
#[derive(Debug, Clone, Default)]
pub struct IntervalAccumulator {
    rows: BTreeMap<MachineState, StateIntervals>,
}

impl IntervalAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, state: MachineState, summary: FrameSummary) -> Result<()> {
        let FrameSummary { v_rms, g_rms } = summary;
        match self.rows.get_mut(&state) {
            Some(row) => {
                row.iv.extend(v_rms);
                row.ig.extend(g_rms);
            }
            None => {
                let row = StateIntervals { iv: Interval::point(v_rms)?, ig: Interval::point(g_rms)? };
                self.rows.insert(state, row);
            }
        }
        Ok(())
    }

    pub fn push_frame(&mut self, frame: &SensorFrame) -> Result<()> {
        self.push(frame.state_label, summarize_frame(frame)?)
    }

    pub fn merge(mut self, other: IntervalAccumulator) -> Self {
        for (state, row) in other.rows {
            self.rows
                .entry(state)
                .and_modify(|r| {
                    r.iv = r.iv.hull(&row.iv);
                    r.ig = r.ig.hull(&row.ig);
                })
                .or_insert(row);
        }
        self
    }

    pub fn finish(self) -> Result<StateIntervalTable> {
        if self.rows.is_empty() {
            return Err(Error::NoData("no frames to extract intervals from".into()));
        }
        Ok(StateIntervalTable { position: None, rows: self.rows })
    }
}

/// Groups frames by state and takes the min/max of each RMS summary.
pub fn extract_intervals(frames: &[SensorFrame]) -> Result<StateIntervalTable> {
    let mut acc = IntervalAccumulator::new();
    for frame in frames {
        acc.push_frame(frame)?;
    }
    acc.finish()
}

/// One table per sensor position instead of the pooled table.
pub fn extract_intervals_per_position(frames: &[SensorFrame]) -> Result<BTreeMap<Position, StateIntervalTable>> {
    let mut per: BTreeMap<Position, IntervalAccumulator> = BTreeMap::new();
    for frame in frames {
        per.entry(frame.position).or_default().push_frame(frame)?;
    }
    if per.is_empty() {
        return Err(Error::NoData("no frames to extract intervals from".into()));
    }
    per.into_iter()
        .map(|(pos, acc)| {
            let mut table = acc.finish()?;
            table.position = Some(pos);
            Ok((pos, table))
        })
        .collect()
}

/// Frame counts per state.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassCounts(BTreeMap<MachineState, usize>);

impl ClassCounts {
    pub fn add(&mut self, state: MachineState) {
        *self.0.entry(state).or_default() += 1;
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn fractions(&self) -> BTreeMap<MachineState, f64> {
        let total = self.total() as f64;
        self.0.iter().map(|(s, n)| (*s, *n as f64 / total)).collect()
    }
}

/// Fraction of frames carrying each state label.
pub fn class_distribution(frames: &[SensorFrame]) -> Result<BTreeMap<MachineState, f64>> {
    if frames.is_empty() {
        return Err(Error::invalid("class distribution of an empty frame set"));
    }
    let mut counts = ClassCounts::default();
    for f in frames {
        counts.add(f.state_label);
    }
    Ok(counts.fractions())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(state: MachineState, v: f64, g: f64) -> SensorFrame {
        SensorFrame {
            position: Position::new(1).unwrap(),
            window_start: "2023-01-01T00:00:00Z".parse().unwrap(),
            g: vec![0.0],
            fft_v: vec![v],
            fft_g: vec![g],
            state_label: state,
        }
    }

    #[test]
    fn singleton_and_min_max() {
        let t = extract_intervals(&[frame(MachineState::Nr, 1.0, 2.0)]).unwrap();
        let row = t.get(MachineState::Nr).unwrap();
        assert_eq!((row.iv.lo(), row.iv.hi(), row.ig.lo(), row.ig.hi()), (1.0, 1.0, 2.0, 2.0));

        let t = extract_intervals(&[frame(MachineState::Nr, 1.0, 2.0), frame(MachineState::Nr, 3.0, 2.0)]).unwrap();
        assert_eq!(t.get(MachineState::Nr).unwrap().iv, Interval::new(1.0, 3.0).unwrap());
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(extract_intervals(&[]), Err(Error::NoData(_))));
        assert!(class_distribution(&[]).is_err());
    }

    #[test]
    fn rows_follow_severity() {
        let t = extract_intervals(&[
            frame(MachineState::Gf, 5.0, 5.0),
            frame(MachineState::Nr, 1.0, 1.0),
            frame(MachineState::Mi, 3.0, 3.0),
        ])
        .unwrap();
        let order: Vec<_> = t.states().collect();
        assert_eq!(order, vec![MachineState::Nr, MachineState::Mi, MachineState::Gf]);
    }

    #[test]
    fn distribution_examples() {
        let d = class_distribution(&[frame(MachineState::Nr, 1.0, 1.0)]).unwrap();
        assert_eq!(d[&MachineState::Nr], 1.0);
        let d = class_distribution(&[
            frame(MachineState::Nr, 1.0, 1.0),
            frame(MachineState::Im, 1.0, 1.0),
            frame(MachineState::Nr, 1.0, 1.0),
            frame(MachineState::Im, 1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(d[&MachineState::Nr], 0.5);
        assert_eq!(d[&MachineState::Im], 0.5);
    }

    #[test]
    fn json_schema_is_checked() {
        let t = extract_intervals(&[frame(MachineState::Nr, 1.0, 2.0)]).unwrap();
        let text = t.to_json().unwrap();
        assert!(text.contains("\"iv\""));
        assert_eq!(StateIntervalTable::from_json(&text).unwrap(), t);
        let wrong = text.replace(INTERVAL_SCHEMA, "other/1");
        assert!(matches!(StateIntervalTable::from_json(&wrong), Err(Error::Schema(_))));
        assert!(matches!(StateIntervalTable::from_json("{}"), Err(Error::Schema(_))));
    }

    #[test]
    fn merge_matches_single_pass() {
        let frames: Vec<_> = (0..20)
            .map(|i| {
                let s = MachineState::from_severity(i % 3).unwrap();
                frame(s, i as f64 * 0.7 % 5.0, (i * i) as f64 % 7.0)
            })
            .collect();
        let whole = extract_intervals(&frames).unwrap();
        let mut a = IntervalAccumulator::new();
        let mut b = IntervalAccumulator::new();
        for (i, f) in frames.iter().enumerate() {
            if i % 2 == 0 {
                a.push_frame(f).unwrap()
            } else {
                b.push_frame(f).unwrap()
            }
        }
        assert_eq!(a.merge(b).finish().unwrap(), whole);
    }
}
