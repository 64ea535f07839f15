//! Seeded synthetic sensor data with a known interval geometry.
//!
//! The reference geometry reproduces the inclusion signature of the
//! reference plant: on the velocity axis St ⊆ Mi and Bl ⊆ Gf (seven intervals
//! reduce to five terms); on the acceleration axis Im, St, Mi ⊆ Nr and
//! Bl, Gf ⊆ Ml (seven reduce to two). About 63.74% of frames are labelled Nr.

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intervalgebra::{detect_overlaps, Interval};
use crate::state::MachineState;
use crate::vibdata::{rms, Position, SensorFrame, StateIntervalTable, StateIntervals};

/// Share of frames labelled Nr.
pub const NORMAL_SHARE: f64 = 0.6374;

const REFERENCE_V: [(f64, f64); 7] =
    [(1.16, 3.43), (3.03, 5.18), (4.10, 5.25), (3.96, 6.43), (5.48, 7.90), (8.51, 8.72), (8.01, 9.29)];
const REFERENCE_G: [(f64, f64); 7] =
    [(0.82, 5.72), (0.90, 2.25), (3.09, 5.18), (2.82, 4.70), (4.43, 8.05), (6.52, 6.94), (6.67, 8.04)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Seven states with the reference inclusion signature.
    Reference,
    /// Seven pairwise disjoint intervals on each axis.
    Disjoint,
    /// Only the Nr state.
    SingleState,
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reference" => Ok(Geometry::Reference),
            "disjoint" => Ok(Geometry::Disjoint),
            "single" | "single-state" => Ok(Geometry::SingleState),
            other => Err(Error::invalid(format!("unknown fixture geometry {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSpec {
    pub seed: u64,
    pub geometry: Geometry,
    pub frames: usize,
    pub spectrum_bins: usize,
    pub waveform_samples: usize,
    /// Endpoint jitter as a fraction of each interval's width.
    pub jitter: f64,
}

impl FixtureSpec {
    /// The canonical reference fixture: unjittered geometry, seed 0.
    pub fn canonical() -> Self {
        FixtureSpec {
            seed: 0,
            geometry: Geometry::Reference,
            frames: 1000,
            spectrum_bins: 64,
            waveform_samples: 256,
            jitter: 0.0,
        }
    }

    /// Reference fixture whose geometry is jittered by 4% under `seed`,
    /// keeping the inclusion signature.
    pub fn seeded(seed: u64) -> Self {
        FixtureSpec { seed, jitter: 0.04, ..Self::canonical() }
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Self {
        self.geometry = geometry;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.frames < 2 * MachineState::COUNT + 1 {
            return Err(Error::invalid(format!("fixture needs at least 15 frames, got {}", self.frames)));
        }
        if self.spectrum_bins == 0 || self.waveform_samples == 0 {
            return Err(Error::invalid("fixture spectra and waveforms need at least one sample"));
        }
        if !(0.0..0.25).contains(&self.jitter) {
            return Err(Error::invalid(format!("jitter must be in [0, 0.25), got {}", self.jitter)));
        }
        Ok(())
    }
}

fn to_intervals(pairs: &[(f64, f64)]) -> Vec<Interval> {
    pairs.iter().map(|&(lo, hi)| Interval::new(lo, hi).expect("fixture interval")).collect()
}

/// Smallest gap between distinct endpoints, relative to the axis span.
fn endpoint_separation(set: &[Interval]) -> f64 {
    let mut ends: Vec<f64> = set.iter().flat_map(|i| [i.lo(), i.hi()]).collect();
    ends.sort_by(f64::total_cmp);
    let span = ends[ends.len() - 1] - ends[0];
    ends.windows(2).map(|w| (w[1] - w[0]) / span).fold(f64::INFINITY, f64::min)
}

fn jitter_axis(base: &[Interval], jitter: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Interval>> {
    if jitter == 0.0 {
        return Ok(base.to_vec());
    }
    let signature = detect_overlaps(base).inclusions;
    for _ in 0..10_000 {
        let candidate: Option<Vec<Interval>> = base
            .iter()
            .map(|iv| {
                let w = iv.width();
                let lo = iv.lo() + rng.gen_range(-jitter..=jitter) * w;
                let hi = iv.hi() + rng.gen_range(-jitter..=jitter) * w;
                Interval::new(lo, hi).ok().filter(|_| lo > 0.0)
            })
            .collect();
        let Some(candidate) = candidate else { continue };
        if detect_overlaps(&candidate).inclusions == signature && endpoint_separation(&candidate) > 1e-3 {
            return Ok(candidate);
        }
    }
    Err(Error::invalid("could not jitter the fixture geometry while keeping its inclusion signature"))
}

/// Target intervals of each state before sampling.
pub fn target_geometry(spec: &FixtureSpec) -> Result<StateIntervalTable> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
    let (v, g) = match spec.geometry {
        Geometry::Reference => (
            jitter_axis(&to_intervals(&REFERENCE_V), spec.jitter, &mut rng)?,
            jitter_axis(&to_intervals(&REFERENCE_G), spec.jitter, &mut rng)?,
        ),
        Geometry::Disjoint => {
            let v: Vec<_> = (0..7).map(|i| (1.0 + 2.0 * i as f64, 2.0 + 2.0 * i as f64)).collect();
            let g: Vec<_> = (0..7).map(|i| (1.0 + 3.0 * i as f64, 2.5 + 3.0 * i as f64)).collect();
            (
                jitter_axis(&to_intervals(&v), spec.jitter, &mut rng)?,
                jitter_axis(&to_intervals(&g), spec.jitter, &mut rng)?,
            )
        }
        Geometry::SingleState => (to_intervals(&REFERENCE_V[..1]), to_intervals(&REFERENCE_G[..1])),
    };
    StateIntervalTable::from_rows(
        v.into_iter()
            .zip(g)
            .enumerate()
            .map(|(i, (iv, ig))| (MachineState::from_severity(i).expect("state"), StateIntervals { iv, ig })),
    )
}

/// Per-state frame counts: 63.74% Nr, the rest spread evenly over the faults.
fn state_counts(frames: usize, states: usize) -> Vec<usize> {
    if states == 1 {
        return vec![frames];
    }
    let faults = states - 1;
    let normal = ((frames as f64 * NORMAL_SHARE).round() as usize).min(frames - 2 * faults);
    let rest = frames - normal;
    let mut counts = vec![normal];
    counts.extend((0..faults).map(|k| rest / faults + usize::from(k < rest % faults)));
    counts
}

/// Non-negative spectrum with RMS equal to `target`.
fn spectrum(bins: usize, level: usize, target: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let fundamental = 2 + level;
    let mut shape: Vec<f64> = (0..bins)
        .map(|i| {
            let floor = 1.0 / (1.0 + i as f64 / 8.0);
            let harmonic = if i % fundamental == 0 && i > 0 { 3.0 / (i / fundamental) as f64 } else { 0.0 };
            floor + harmonic + rng.gen_range(0.0..0.2)
        })
        .collect();
    let scale = target / rms(&shape).expect("non-empty spectrum");
    for x in &mut shape {
        *x *= scale;
    }
    shape
}

fn waveform(samples: usize, level: usize, amplitude: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let cycles = 4.0 + level as f64;
    (0..samples)
        .map(|t| {
            let phase = std::f64::consts::TAU * cycles * t as f64 / samples as f64;
            amplitude * phase.sin() + rng.gen_range(-0.05..0.05) * amplitude
        })
        .collect()
}

fn epoch() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2023, 3, 1, 0, 0, 0).single().expect("valid epoch")
}

/// Generates the labelled frames of a fixture.
///
/// The first two frames of each state hit the lower and upper ends of its
/// target intervals, so extraction recovers the geometry.
pub fn generate(spec: &FixtureSpec) -> Result<Vec<SensorFrame>> {
    let geometry = target_geometry(spec)?;
    let rows: Vec<(MachineState, StateIntervals)> = geometry.rows().map(|(s, r)| (s, *r)).collect();
    let counts = state_counts(spec.frames, rows.len());

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut labels: Vec<usize> = counts.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n)).collect();
    labels.shuffle(&mut rng);

    let mut seen = vec![0usize; rows.len()];
    let mut frames = Vec::with_capacity(spec.frames);
    for (i, &k) in labels.iter().enumerate() {
        let (state, StateIntervals { iv, ig }) = rows[k];
        let pick = |interval: &Interval, nth: usize, rng: &mut ChaCha8Rng| match nth {
            0 => interval.lo(),
            1 => interval.hi(),
            _ => interval.lo() + rng.gen_range(0.0..=1.0) * interval.width(),
        };
        let v_target = pick(&iv, seen[k], &mut rng);
        let g_target = pick(&ig, seen[k], &mut rng);
        seen[k] += 1;

        let level = state.severity();
        frames.push(SensorFrame {
            position: Position::ALL[i % 4],
            window_start: epoch() + Duration::hours(4 * (i / 4) as i64),
            g: waveform(spec.waveform_samples, level, g_target * std::f64::consts::SQRT_2, &mut rng),
            fft_v: spectrum(spec.spectrum_bins, level, v_target, &mut rng),
            fft_g: spectrum(spec.spectrum_bins, level + 3, g_target, &mut rng),
            state_label: state,
        });
    }
    Ok(frames)
}
