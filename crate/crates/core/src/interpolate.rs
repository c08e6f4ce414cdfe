//! Gap filling by inverse-distance weighted moving average.
//!
//! Each missing year `t` takes `Σ wᵢ vᵢ / Σ wᵢ` over the `half_window`
//! nearest entries on each side, with `wᵢ = 1 / |yearᵢ − t|`. Gaps that
//! neighbour each other are solved jointly: missing entries start on the
//! straight line between their observed neighbours and the weighted rule
//! is iterated (all gaps updated simultaneously) until the largest change
//! drops below [`TOLERANCE`] or [`MAX_ITERATIONS`] sweeps have run.

use crate::error::{Error, Result};
use crate::series::AnnualSeries;

pub const DEFAULT_HALF_WINDOW: usize = 3;
pub const TOLERANCE: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100;

pub fn interpolate_missing(series: &AnnualSeries, half_window: usize) -> Result<AnnualSeries> {
    if half_window == 0 {
        return Err(Error::Domain("half_window must be at least 1".into()));
    }
    if series.is_complete() {
        return Ok(series.clone());
    }
    let values = series.values();
    let observed: Vec<usize> = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|_| i))
        .collect();
    if observed.is_empty() {
        return Err(Error::EmptySeries(series.name().to_string()));
    }
    if values[0].is_none() || values[values.len() - 1].is_none() {
        return Err(Error::UnsupportedExtrapolation(series.name().to_string()));
    }
    // both endpoints observed and something is missing, so len >= 3 and >= 2 observed

    let n = values.len();
    let mut filled = linear_fill(values, &observed);
    let missing: Vec<usize> = (0..n).filter(|&i| values[i].is_none()).collect();

    let mut next = vec![0.0; missing.len()];
    for _ in 0..MAX_ITERATIONS {
        for (slot, &t) in next.iter_mut().zip(&missing) {
            *slot = weighted_average(&filled, t, half_window);
        }
        let mut change = 0.0_f64;
        for (&t, &v) in missing.iter().zip(&next) {
            change = change.max((filled[t] - v).abs());
            filled[t] = v;
        }
        if change < TOLERANCE {
            break;
        }
    }

    AnnualSeries::complete(series.name(), series.start_year(), filled, series.units())
}

fn linear_fill(values: &[Option<f64>], observed: &[usize]) -> Vec<f64> {
    let mut out: Vec<f64> = values.iter().map(|v| v.unwrap_or(0.0)).collect();
    for pair in observed.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (va, vb) = (out[a], out[b]);
        for (i, slot) in out.iter_mut().enumerate().take(b).skip(a + 1) {
            let frac = (i - a) as f64 / (b - a) as f64;
            *slot = va + frac * (vb - va);
        }
    }
    out
}

fn weighted_average(values: &[f64], t: usize, half_window: usize) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for d in 1..=half_window {
        let w = 1.0 / d as f64;
        if let Some(i) = t.checked_sub(d) {
            num += w * values[i];
            den += w;
        }
        if let Some(v) = values.get(t + d) {
            num += w * v;
            den += w;
        }
    }
    num / den
}
