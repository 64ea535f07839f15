use crate::state::MachineState;
use crate::vibdata::StateIntervalTable;

/// One retained row: antecedent interval indices and a flag per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    /// Index into the table's states of the `I_v` antecedent.
    pub iv_index: usize,
    /// Index into the table's states of the `I_g` antecedent.
    pub ig_index: usize,
    pub flags: Vec<bool>,
}

impl TruthRow {
    /// The single state whose flag is set.
    pub fn consequent(&self) -> Option<usize> {
        let mut set = self.flags.iter().enumerate().filter(|(_, f)| **f);
        match (set.next(), set.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    /// Column order of the flags, by severity.
    pub states: Vec<MachineState>,
    pub rows: Vec<TruthRow>,
    /// Number of `(iv, ig, state)` candidates examined.
    pub candidates: usize,
}

/// Enumerates every antecedent pair `(I_v(i), I_g(j))` against every state
/// under conjunction and keeps the pairs that identify some state.
///
/// The flag for state `s` holds iff both antecedents are the intervals
/// extracted for `s`, so exactly one row per state survives.
pub fn build_truth_table(table: &StateIntervalTable) -> TruthTable {
    let states: Vec<MachineState> = table.states().collect();
    let n = states.len();
    let mut rows = Vec::new();
    let mut candidates = 0;
    for iv_index in 0..n {
        for ig_index in 0..n {
            let flags: Vec<bool> = (0..n)
                .map(|s| {
                    candidates += 1;
                    iv_index == s && ig_index == s
                })
                .collect();
            if flags.iter().any(|f| *f) {
                rows.push(TruthRow { iv_index, ig_index, flags });
            }
        }
    }
    TruthTable { states, rows, candidates }
}
