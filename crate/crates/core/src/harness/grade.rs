use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fuzzcore::Decomposition;
use crate::state::MachineState;

/// Accuracy grade of one diagnosis, ordered from worst to best.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Grade {
    Bad,
    Poor,
    Average,
    Good,
    Excellent,
}

impl Grade {
    /// Best first.
    pub const ALL: [Grade; 5] = [Grade::Excellent, Grade::Good, Grade::Average, Grade::Poor, Grade::Bad];

    pub fn short(self) -> &'static str {
        match self {
            Grade::Excellent => "Exc",
            Grade::Good => "Good",
            Grade::Average => "Ave",
            Grade::Poor => "Poor",
            Grade::Bad => "Bad",
        }
    }

    /// Excellent or Good.
    pub fn is_detection(self) -> bool {
        self >= Grade::Good
    }

    /// Anything from Average up.
    pub fn is_usable(self) -> bool {
        self >= Grade::Average
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Grades a decomposition by the share it gives the expected state.
pub fn grade_accuracy(expected: MachineState, decomposition: &Decomposition) -> Grade {
    if decomposition.is_empty() {
        return Grade::Bad;
    }
    match decomposition.share(expected) {
        s if s >= 90 => Grade::Excellent,
        s if s >= 50 => Grade::Good,
        s if s >= 10 => Grade::Average,
        _ => Grade::Poor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzcore::{decompose_score, OutputUniverse};

    fn dec(score: f64) -> Decomposition {
        decompose_score(Some(score), &OutputUniverse::default())
    }

    #[test]
    fn thresholds() {
        use MachineState::*;
        assert_eq!(grade_accuracy(St, &dec(2.05)), Grade::Excellent);
        assert_eq!(grade_accuracy(Nr, &dec(0.3)), Grade::Good);
        assert_eq!(grade_accuracy(Mi, &dec(2.3)), Grade::Average);
        assert_eq!(grade_accuracy(Mi, &dec(2.05)), Grade::Poor);
        assert_eq!(grade_accuracy(Gf, &dec(2.0)), Grade::Poor);
        assert_eq!(grade_accuracy(Bl, &Decomposition::default()), Grade::Bad);
    }

    #[test]
    fn boundaries_are_inclusive_from_below() {
        use MachineState::*;
        assert_eq!(grade_accuracy(St, &dec(2.1)), Grade::Excellent);
        assert_eq!(grade_accuracy(St, &dec(2.5)), Grade::Good);
        assert_eq!(grade_accuracy(St, &dec(2.9)), Grade::Average);
    }

    #[test]
    fn rates() {
        assert!(Grade::Good.is_detection() && !Grade::Average.is_detection());
        assert!(Grade::Average.is_usable() && !Grade::Poor.is_usable());
        assert_eq!(Grade::Excellent.to_string(), "Exc");
    }
}
