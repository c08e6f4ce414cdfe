//! Engle–Granger two-step cointegration with a combined ADF/KPSS verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::critical::{
    adf_critical_value, adf_pvalue_surface, engle_granger_critical_value, Deterministic, KpssSpec,
    Level,
};
use crate::error::{Error, Result};
use crate::linreg::{ols_fit, Design, OlsFit};
use crate::result::TestResult;
use crate::unitroot::{adf_with, kpss_test, AdfResult, AdfSpec, Bandwidth, MaxLag};

/// Which table the residual τ statistic is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalValueMode {
    /// The ordinary single-series Dickey–Fuller table (constant case).
    #[default]
    #[serde(alias = "paper-adf")]
    DickeyFuller,
    /// Response surfaces for residuals of an estimated cointegrating
    /// regression.
    EngleGranger,
}

impl CriticalValueMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalValueMode::DickeyFuller => "dickey-fuller",
            CriticalValueMode::EngleGranger => "engle-granger",
        }
    }
}

impl fmt::Display for CriticalValueMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriticalValueMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dickey-fuller" | "paper-adf" | "df" => Ok(CriticalValueMode::DickeyFuller),
            "engle-granger" | "eg" => Ok(CriticalValueMode::EngleGranger),
            other => Err(Error::Domain(format!(
                "unknown critical value mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Cointegrated,
    NotCointegrated,
    ConflictingEvidence,
}

impl Verdict {
    /// ADF rejecting a unit root and KPSS not rejecting stationarity is
    /// cointegration; the mirror image is its absence; anything else
    /// conflicts.
    pub fn from_decisions(adf_rejects: bool, kpss_rejects: bool) -> Self {
        match (adf_rejects, kpss_rejects) {
            (true, false) => Verdict::Cointegrated,
            (false, true) => Verdict::NotCointegrated,
            _ => Verdict::ConflictingEvidence,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Cointegrated => "cointegrated",
            Verdict::NotCointegrated => "not-cointegrated",
            Verdict::ConflictingEvidence => "conflicting-evidence",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CointegrationResult {
    #[serde(skip)]
    pub static_fit: Option<OlsFit>,
    pub residual_adf: AdfResult,
    pub residual_kpss: TestResult,
    pub level: Level,
    pub verdict: Verdict,
    pub critical_value_mode: CriticalValueMode,
}

pub fn engle_granger(d: &Design, mode: CriticalValueMode) -> Result<CointegrationResult> {
    engle_granger_at(d, mode, Level::Five)
}

pub fn engle_granger_at(
    d: &Design,
    mode: CriticalValueMode,
    level: Level,
) -> Result<CointegrationResult> {
    engle_granger_with(d, mode, level, MaxLag::Auto, Bandwidth::Auto)
}

/// Full control over the residual ADF lag ceiling and the KPSS bandwidth.
pub fn engle_granger_with(
    d: &Design,
    mode: CriticalValueMode,
    level: Level,
    max_lag: MaxLag,
    bandwidth: Bandwidth,
) -> Result<CointegrationResult> {
    let fit = ols_fit(d)?;
    let e = &fit.residuals;
    let spec = AdfSpec {
        max_lag,
        ..AdfSpec::new(Deterministic::None)
    };
    let name = format!("resid({})", d.response());
    let adf = match mode {
        CriticalValueMode::DickeyFuller => adf_with(
            &name,
            e,
            &spec,
            |n, l| adf_critical_value(n, l, Deterministic::Constant),
            |s| Some(adf_pvalue_surface(s, Deterministic::Constant)),
        )?,
        CriticalValueMode::EngleGranger => {
            let variables = d.regressors().len() + 1;
            adf_with(
                &name,
                e,
                &spec,
                |n, l| engle_granger_critical_value(n, variables, l, Deterministic::Constant),
                |_| None,
            )?
        }
    };
    let kpss = kpss_test(e, KpssSpec::Level, bandwidth)?;
    let verdict = Verdict::from_decisions(adf.rejects(level), kpss.rejects(level));
    Ok(CointegrationResult {
        static_fit: Some(fit),
        residual_adf: adf,
        residual_kpss: kpss,
        level,
        verdict,
        critical_value_mode: mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table() {
        assert_eq!(Verdict::from_decisions(true, false), Verdict::Cointegrated);
        assert_eq!(
            Verdict::from_decisions(false, true),
            Verdict::NotCointegrated
        );
        assert_eq!(
            Verdict::from_decisions(true, true),
            Verdict::ConflictingEvidence
        );
        assert_eq!(
            Verdict::from_decisions(false, false),
            Verdict::ConflictingEvidence
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "dickey-fuller".parse::<CriticalValueMode>().unwrap(),
            CriticalValueMode::DickeyFuller
        );
        assert_eq!(
            "Engle-Granger".parse::<CriticalValueMode>().unwrap(),
            CriticalValueMode::EngleGranger
        );
        assert_eq!(
            "paper-adf".parse::<CriticalValueMode>().unwrap(),
            CriticalValueMode::DickeyFuller
        );
        assert!("johansen".parse::<CriticalValueMode>().is_err());
        assert_eq!(
            CriticalValueMode::default(),
            CriticalValueMode::DickeyFuller
        );
    }

    #[test]
    fn verdict_consistent_with_component_decisions() {
        let n = 40;
        let x: Vec<f64> = (0..n).map(|i| i as f64 + ((i * 7) % 5) as f64).collect();
        let y: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, v)| 2.0 * v + ((i * i * 31 + 7) % 17) as f64 / 17.0 - 0.5)
            .collect();
        let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
        for mode in [
            CriticalValueMode::DickeyFuller,
            CriticalValueMode::EngleGranger,
        ] {
            let r = engle_granger(&d, mode).unwrap();
            let want = Verdict::from_decisions(
                r.residual_adf.rejects(Level::Five),
                r.residual_kpss.rejects(Level::Five),
            );
            assert_eq!(r.verdict, want);
            assert_eq!(r.residual_adf.deterministic, Deterministic::None);
        }
    }
}
