//! Loading, interpolating and aligning the model data.

use std::path::Path;

use cotrend_core::interpolate::interpolate_missing;
use cotrend_core::series::{AnnualSeries, Frame, Units};
use cotrend_core::table::{load_table, Schema};

use crate::error::{CliError, CliResult, StageExt};

/// Units of the bundled model variables; anything else is a plain ratio.
fn units_for(name: &str) -> Units {
    match name {
        "Birth" => Units::PerThousand,
        "Expenditure" | "GDP" | "Employment" | "Oldies" | "Urban" => Units::Percent,
        _ => Units::Ratio,
    }
}

/// Every column of a model data file, with gaps filled.
pub fn load_series(path: &Path, half_window: usize) -> CliResult<Vec<AnnualSeries>> {
    let raw = load_table(path, &Schema::all(Units::Ratio)).stage("load")?;
    raw.into_iter()
        .map(|s| {
            let units = units_for(s.name());
            let s = AnnualSeries::new(s.name(), s.start_year(), s.values().to_vec(), units)
                .stage("load")?;
            interpolate_missing(&s, half_window).stage("interpolate")
        })
        .collect()
}

/// Fails with a usage error naming the first column not in `available`.
pub fn check_columns<'a>(
    available: &[AnnualSeries],
    wanted: impl IntoIterator<Item = &'a str>,
) -> CliResult<()> {
    for w in wanted {
        if !available.iter().any(|s| s.name() == w) {
            let names: Vec<&str> = available.iter().map(AnnualSeries::name).collect();
            return Err(CliError::Usage(format!(
                "unknown column `{w}` (available: {})",
                names.join(", ")
            )));
        }
    }
    Ok(())
}

/// Selected columns aligned to `[first, last]`; either bound defaults to
/// the widest common range.
pub fn frame(
    series: &[AnnualSeries],
    names: &[&str],
    first: Option<i32>,
    last: Option<i32>,
) -> CliResult<Frame> {
    check_columns(series, names.iter().copied())?;
    let chosen: Vec<AnnualSeries> = names
        .iter()
        .map(|n| {
            series
                .iter()
                .find(|s| s.name() == *n)
                .cloned()
                .expect("checked above")
        })
        .collect();
    let lo = first.unwrap_or_else(|| chosen.iter().map(|s| s.start_year()).max().unwrap_or(0));
    let hi = last.unwrap_or_else(|| chosen.iter().map(|s| s.end_year()).min().unwrap_or(0));
    Frame::align(chosen, lo, hi).stage("align")
}
