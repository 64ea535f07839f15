use crate::error::{Error, Result};
use crate::state::MachineState;

pub const DEFAULT_GRID_POINTS: usize = 1201;
const DOMAIN_LO: f64 = -1.0;
const DOMAIN_HI: f64 = 7.0;

/// Sampled output variable: one triangular term per severity level,
/// peaked at the level with feet at `level ± 1`, over `[-1, 7]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputUniverse {
    grid: Vec<f64>,
    /// Half-open grid index range where each level's term is nonzero.
    spans: Vec<(usize, usize)>,
}

impl OutputUniverse {
    pub fn new(points: usize) -> Result<Self> {
        if points < 3 {
            return Err(Error::invalid(format!("output grid needs at least 3 points, got {points}")));
        }
        let span = DOMAIN_HI - DOMAIN_LO;
        let steps = (points - 1) as f64;
        // i * span / steps keeps integer levels exact when steps divides evenly.
        let grid: Vec<f64> = (0..points).map(|i| DOMAIN_LO + (i as f64 * span) / steps).collect();
        let spans = (0..MachineState::COUNT)
            .map(|level| {
                let l = level as f64;
                let start = grid.partition_point(|&y| y <= l - 1.0);
                let end = grid.partition_point(|&y| y < l + 1.0);
                (start, end)
            })
            .collect();
        Ok(OutputUniverse { grid, spans })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn levels(&self) -> usize {
        MachineState::COUNT
    }

    pub fn domain(&self) -> (f64, f64) {
        (DOMAIN_LO, DOMAIN_HI)
    }

    pub fn span(&self, level: usize) -> (usize, usize) {
        self.spans[level]
    }

    /// Membership of `y` in the output term of `level`.
    pub fn term_degree(&self, level: usize, y: f64) -> f64 {
        (1.0 - (y - level as f64).abs()).max(0.0)
    }
}

impl Default for OutputUniverse {
    fn default() -> Self {
        OutputUniverse::new(DEFAULT_GRID_POINTS).expect("default grid is valid")
    }
}
