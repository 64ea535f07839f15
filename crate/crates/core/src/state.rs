//! The seven machine state classes produced by the FMECA review.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Machine state class, ordered by severity level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MachineState {
    /// Normal operation.
    Nr,
    /// Imbalance.
    Im,
    /// Structural fault.
    St,
    /// Misalignment.
    Mi,
    /// Mechanical looseness.
    Ml,
    /// Bearing lubrication.
    Bl,
    /// Gear fault.
    Gf,
}

impl MachineState {
    pub const ALL: [MachineState; 7] = [
        MachineState::Nr,
        MachineState::Im,
        MachineState::St,
        MachineState::Mi,
        MachineState::Ml,
        MachineState::Bl,
        MachineState::Gf,
    ];

    pub const COUNT: usize = 7;

    pub fn severity(self) -> usize {
        self as usize
    }

    pub fn from_severity(level: usize) -> Option<Self> {
        Self::ALL.get(level).copied()
    }

    /// Short code used in files and reports ("Nr", "Im", ...).
    pub fn code(self) -> &'static str {
        match self {
            MachineState::Nr => "Nr",
            MachineState::Im => "Im",
            MachineState::St => "St",
            MachineState::Mi => "Mi",
            MachineState::Ml => "Ml",
            MachineState::Bl => "Bl",
            MachineState::Gf => "Gf",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MachineState::Nr => "Normal",
            MachineState::Im => "Imbalance",
            MachineState::St => "Structural fault",
            MachineState::Mi => "Misalignment",
            MachineState::Ml => "Mechanical looseness",
            MachineState::Bl => "Bearing lubrication",
            MachineState::Gf => "Gear fault",
        }
    }

    /// Failure cause class attached to the state by the expert review.
    pub fn cause(self) -> &'static str {
        match self {
            MachineState::Nr => "Normal",
            MachineState::Im => "Rotor",
            MachineState::St => "Frame",
            MachineState::Mi => "Link",
            MachineState::Ml => "Looseness",
            MachineState::Bl => "Lubrication fault",
            MachineState::Gf => "Gear",
        }
    }
}

impl fmt::Display for MachineState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for MachineState {
    type Err = Error;

    // Codes are case-sensitive: "Mi" and "Ml" differ only in one letter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        MachineState::ALL
            .iter()
            .copied()
            .find(|st| st.code() == s || st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown machine state {s:?}")))
    }
}

impl Serialize for MachineState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for MachineState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
