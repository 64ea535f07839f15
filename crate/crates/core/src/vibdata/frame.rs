use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::state::MachineState;

use super::rms::rms;

/// Sensor mounting position, `P1` to `P4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(u8);

impl Position {
    pub const ALL: [Position; 4] = [Position(1), Position(2), Position(3), Position(4)];

    pub fn new(index: u8) -> Result<Self> {
        if (1..=4).contains(&index) {
            Ok(Position(index))
        } else {
            Err(Error::invalid(format!("sensor position must be P1..P4, got P{index}")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().strip_prefix('P').ok_or_else(|| Error::invalid(format!("bad sensor position {s:?}")))?;
        let index: u8 = digits.parse().map_err(|_| Error::invalid(format!("bad sensor position {s:?}")))?;
        Position::new(index)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One polling-window record: raw waveform, the two spectra and the expert label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorFrame {
    pub position: Position,
    pub window_start: DateTime<Utc>,
    /// Acceleration time waveform, in g.
    pub g: Vec<f64>,
    /// Velocity spectrum magnitudes.
    pub fft_v: Vec<f64>,
    /// Acceleration spectrum magnitudes.
    pub fft_g: Vec<f64>,
    #[serde(rename = "state")]
    pub state_label: MachineState,
}

/// RMS summary of one frame's two spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSummary {
    pub v_rms: f64,
    pub g_rms: f64,
}

impl SensorFrame {
    /// Checks the frame invariants, returning a human readable reason on failure.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for (name, samples, non_negative) in
            [("g", &self.g, false), ("fft_v", &self.fft_v, true), ("fft_g", &self.fft_g, true)]
        {
            if samples.is_empty() {
                return Err(format!("{name} is empty"));
            }
            if let Some((i, x)) = samples.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(format!("{name}[{i}] is not finite ({x})"));
            }
            if non_negative {
                if let Some((i, x)) = samples.iter().enumerate().find(|(_, x)| **x < 0.0) {
                    return Err(format!("{name}[{i}] is negative ({x})"));
                }
            }
        }
        Ok(())
    }
}

/// `(rms(fft_v), rms(fft_g))` for one frame.
pub fn summarize_frame(frame: &SensorFrame) -> Result<FrameSummary> {
    Ok(FrameSummary { v_rms: rms(&frame.fft_v)?, g_rms: rms(&frame.fft_g)? })
}
