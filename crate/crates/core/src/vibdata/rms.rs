use crate::error::{Error, Result};

/// Root mean square `sqrt(sum(x^2) / n)`.
///
/// Samples are scaled by the largest magnitude before squaring so that very
/// large or very small spectra neither overflow nor flush to zero.
pub fn rms(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("rms of an empty sequence"));
    }
    let mut peak = 0.0_f64;
    for &x in samples {
        if !x.is_finite() {
            return Err(Error::invalid(format!("rms input contains non-finite value {x}")));
        }
        peak = peak.max(x.abs());
    }
    if peak == 0.0 {
        return Ok(0.0);
    }
    let sum_sq: f64 = samples
        .iter()
        .map(|&x| {
            let s = x / peak;
            s * s
        })
        .sum();
    Ok(peak * (sum_sq / samples.len() as f64).sqrt())
}
