//! Annual series with an explicit missing-value mask, and year-aligned frames of them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Units {
    Percent,
    PerThousand,
    Years,
    Ratio,
    Currency,
}

impl Units {
    pub fn as_str(self) -> &'static str {
        match self {
            Units::Percent => "percent",
            Units::PerThousand => "per-1000",
            Units::Years => "years",
            Units::Ratio => "ratio",
            Units::Currency => "currency",
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Units {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "percent" | "%" => Ok(Units::Percent),
            "per-1000" | "per1000" | "per-thousand" => Ok(Units::PerThousand),
            "years" => Ok(Units::Years),
            "ratio" => Ok(Units::Ratio),
            "currency" => Ok(Units::Currency),
            other => Err(Error::Domain(format!("unknown units label `{other}`"))),
        }
    }
}

/// One named annual series. Years are consecutive starting at `start_year`;
/// a missing observation is `None`, never an omitted row.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualSeries {
    name: String,
    start_year: i32,
    values: Vec<Option<f64>>,
    units: Units,
}

impl AnnualSeries {
    pub fn new(
        name: impl Into<String>,
        start_year: i32,
        values: Vec<Option<f64>>,
        units: Units,
    ) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::Structure(format!("series `{name}` has no rows")));
        }
        if let Some(bad) = values.iter().flatten().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "series `{name}` contains non-finite value {bad}"
            )));
        }
        Ok(Self {
            name,
            start_year,
            values,
            units,
        })
    }

    /// A series with every year observed.
    pub fn complete(
        name: impl Into<String>,
        start_year: i32,
        values: Vec<f64>,
        units: Units,
    ) -> Result<Self> {
        Self::new(
            name,
            start_year,
            values.into_iter().map(Some).collect(),
            units,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn start_year(&self) -> i32 {
        self.start_year
    }

    pub fn end_year(&self) -> i32 {
        self.start_year + self.values.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.values.len()).map(move |i| self.start_year + i as i32)
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        let idx = year.checked_sub(self.start_year)?;
        self.values
            .get(usize::try_from(idx).ok()?)
            .copied()
            .flatten()
    }

    pub fn missing_mask(&self) -> Vec<bool> {
        self.values.iter().map(Option::is_none).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn observed_count(&self) -> usize {
        self.values.iter().flatten().count()
    }

    /// The values as plain numbers; fails if anything is missing.
    pub fn to_vec(&self) -> Result<Vec<f64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Structure(format!(
                        "series `{}` is missing a value at {}",
                        self.name,
                        self.start_year + i as i32
                    ))
                })
            })
            .collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Restrict to `[first, last]`, which must lie inside the series.
    pub fn slice_years(&self, first: i32, last: i32) -> Result<Self> {
        if first > last || first < self.start_year || last > self.end_year() {
            return Err(Error::Structure(format!(
                "series `{}` covers {}-{}, cannot take {first}-{last}",
                self.name,
                self.start_year,
                self.end_year()
            )));
        }
        let lo = (first - self.start_year) as usize;
        let hi = (last - self.start_year) as usize;
        Ok(Self {
            name: self.name.clone(),
            start_year: first,
            values: self.values[lo..=hi].to_vec(),
            units: self.units,
        })
    }
}

/// Year-aligned, fully observed collection of series.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    series: Vec<AnnualSeries>,
    first_year: i32,
    last_year: i32,
}

impl Frame {
    /// Aligns every series to `[first, last]`. Each must cover the range
    /// and be fully observed inside it.
    pub fn align(series: Vec<AnnualSeries>, first: i32, last: i32) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::Structure("frame needs at least one series".into()));
        }
        let mut out = Vec::with_capacity(series.len());
        for s in series {
            if out.iter().any(|o: &AnnualSeries| o.name == s.name) {
                return Err(Error::Structure(format!(
                    "duplicate series name `{}`",
                    s.name
                )));
            }
            let sliced = s.slice_years(first, last)?;
            if !sliced.is_complete() {
                return Err(Error::Structure(format!(
                    "series `{}` has missing values in {first}-{last}; interpolate first",
                    sliced.name
                )));
            }
            out.push(sliced);
        }
        Ok(Self {
            series: out,
            first_year: first,
            last_year: last,
        })
    }

    /// Aligns to the widest range covered by every series.
    pub fn from_common_range(series: Vec<AnnualSeries>) -> Result<Self> {
        let first = series.iter().map(AnnualSeries::start_year).max();
        let last = series.iter().map(AnnualSeries::end_year).min();
        match (first, last) {
            (Some(f), Some(l)) if f <= l => Self::align(series, f, l),
            _ => Err(Error::Structure("series share no common years".into())),
        }
    }

    pub fn first_year(&self) -> i32 {
        self.first_year
    }

    pub fn last_year(&self) -> i32 {
        self.last_year
    }

    pub fn len(&self) -> usize {
        (self.last_year - self.first_year + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn series(&self) -> &[AnnualSeries] {
        &self.series
    }

    pub fn names(&self) -> Vec<&str> {
        self.series.iter().map(AnnualSeries::name).collect()
    }

    pub fn get(&self, name: &str) -> Option<&AnnualSeries> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&AnnualSeries> {
        self.get(name)
            .ok_or_else(|| Error::Structure(format!("no column named `{name}`")))
    }

    /// Column values; every series in a frame is complete.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        self.require(name)?.to_vec()
    }

    /// A sub-frame with the named series in the given order.
    pub fn select(&self, names: &[&str]) -> Result<Self> {
        let series = names
            .iter()
            .map(|n| self.require(n).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::align(series, self.first_year, self.last_year)
    }

    pub fn restrict(&self, first: i32, last: i32) -> Result<Self> {
        Self::align(self.series.clone(), first, last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_rejected() {
        assert!(AnnualSeries::new("x", 2000, vec![], Units::Ratio).is_err());
    }

    #[test]
    fn get_and_slice() {
        let s =
            AnnualSeries::new("x", 2000, vec![Some(1.0), None, Some(3.0)], Units::Ratio).unwrap();
        assert_eq!(s.end_year(), 2002);
        assert_eq!(s.get(2001), None);
        assert_eq!(s.get(2002), Some(3.0));
        assert_eq!(s.get(1999), None);
        assert_eq!(s.missing_mask(), vec![false, true, false]);
        let t = s.slice_years(2002, 2002).unwrap();
        assert_eq!(t.values(), &[Some(3.0)]);
        assert!(s.slice_years(1999, 2001).is_err());
    }

    #[test]
    fn frame_requires_complete_range() {
        let a = AnnualSeries::complete("a", 2000, vec![1.0, 2.0, 3.0], Units::Ratio).unwrap();
        let b =
            AnnualSeries::new("b", 2001, vec![Some(1.0), None, Some(2.0)], Units::Ratio).unwrap();
        assert!(Frame::align(vec![a.clone(), b.clone()], 2001, 2002).is_err());
        let f = Frame::align(vec![a.clone(), b], 2001, 2001).unwrap();
        assert_eq!(f.len(), 1);
        assert!(Frame::align(vec![a.clone(), a], 2000, 2001).is_err());
    }

    #[test]
    fn units_parse() {
        assert_eq!("per-1000".parse::<Units>().unwrap(), Units::PerThousand);
        assert!("furlongs".parse::<Units>().is_err());
    }
}
