//! Derived-series arithmetic: dependency ratio, real rates, growth rates.

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Units};

/// Dependents per 100 people of working age.
pub fn dependency_ratio(pop_child: f64, pop_senior: f64, pop_working: f64) -> Result<f64> {
    if !(pop_working > 0.0) {
        return Err(Error::Domain(format!(
            "working-age population must be positive, got {pop_working}"
        )));
    }
    if pop_child < 0.0 || pop_senior < 0.0 {
        return Err(Error::Domain(
            "population counts must be non-negative".into(),
        ));
    }
    Ok(100.0 * (pop_child + pop_senior) / pop_working)
}

/// Inflation-adjusted rate, both arguments in percent.
pub fn real_rate(nominal: f64, inflation: f64) -> f64 {
    nominal - inflation
}

/// Element-wise [`real_rate`] over two aligned series.
pub fn real_rate_series(nominal: &AnnualSeries, inflation: &AnnualSeries) -> Result<AnnualSeries> {
    if nominal.start_year() != inflation.start_year() || nominal.len() != inflation.len() {
        return Err(Error::Structure(
            "nominal and inflation series must cover the same years".into(),
        ));
    }
    let values = nominal
        .to_vec()?
        .into_iter()
        .zip(inflation.to_vec()?)
        .map(|(n, i)| real_rate(n, i))
        .collect();
    AnnualSeries::complete(
        format!("real {}", nominal.name()),
        nominal.start_year(),
        values,
        Units::Percent,
    )
}

/// Year-over-year percent change. The result starts one year later.
pub fn growth_rate(series: &AnnualSeries) -> Result<AnnualSeries> {
    let v = series.to_vec()?;
    if v.len() < 2 {
        return Err(Error::Domain(
            "growth rate needs at least two values".into(),
        ));
    }
    if let Some(bad) = v.iter().find(|x| **x <= 0.0) {
        return Err(Error::Domain(format!(
            "growth rate needs positive values, `{}` has {bad}",
            series.name()
        )));
    }
    let rates = v.windows(2).map(|w| 100.0 * (w[1] - w[0]) / w[0]).collect();
    AnnualSeries::complete(
        format!("{} growth", series.name()),
        series.start_year() + 1,
        rates,
        Units::Percent,
    )
}

/// Last value minus first value, in the series' own units.
pub fn change_over_period(series: &AnnualSeries) -> Result<f64> {
    let v = series.to_vec()?;
    match (v.first(), v.last()) {
        (Some(a), Some(b)) if v.len() >= 2 => Ok(b - a),
        _ => Err(Error::Domain(
            "change over period needs at least two values".into(),
        )),
    }
}

/// Average of the year-to-year differences: `(last − first) / (len − 1)`.
/// Reported next to [`change_over_period`] because published tables are
/// not always explicit about which of the two they show.
pub fn mean_annual_change(series: &AnnualSeries) -> Result<f64> {
    let total = change_over_period(series)?;
    Ok(total / (series.len() - 1) as f64)
}

/// Level series as a percentage of a second (e.g. nominal GDP) series.
pub fn share_of(level: &AnnualSeries, base: &AnnualSeries, name: &str) -> Result<AnnualSeries> {
    if level.start_year() != base.start_year() || level.len() != base.len() {
        return Err(Error::Structure(
            "share needs series over the same years".into(),
        ));
    }
    let values = level
        .values()
        .iter()
        .zip(base.values())
        .map(|(l, b)| match (l, b) {
            (Some(l), Some(b)) if *b != 0.0 => Ok(Some(100.0 * l / b)),
            (Some(_), Some(_)) => Err(Error::Domain("zero base value".into())),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    AnnualSeries::new(name, level.start_year(), values, Units::Percent)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
