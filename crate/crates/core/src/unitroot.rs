//! Augmented Dickey–Fuller and KPSS tests.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::critical::{
    adf_critical_value, adf_pvalue_surface, kpss_bracket, kpss_critical_value, left_tail_bracket,
    Bracket, Deterministic, KpssSpec, Level,
};
use crate::error::{Error, Result};
use crate::linreg::{least_squares, ols_fit, sic_value, Design, OlsFit};
use crate::result::{CriticalValue, PValue, Reference, Statistic, Tail, TestResult};

pub const MIN_LENGTH: usize = 10;
pub const LAGGED_LEVEL: &str = "y(-1)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaxLag {
    /// `⌊12 (T/100)^{1/4}⌋`, clamped below `T/3`.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LagSelection {
    Sic,
    /// Use `max_lag` as is.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdfSpec {
    pub deterministic: Deterministic,
    pub max_lag: MaxLag,
    pub selection: LagSelection,
}

impl Default for AdfSpec {
    fn default() -> Self {
        Self {
            deterministic: Deterministic::Constant,
            max_lag: MaxLag::Auto,
            selection: LagSelection::Sic,
        }
    }
}

impl AdfSpec {
    pub fn new(deterministic: Deterministic) -> Self {
        Self {
            deterministic,
            ..Self::default()
        }
    }

    pub fn fixed_lag(deterministic: Deterministic, lag: usize) -> Self {
        Self {
            deterministic,
            max_lag: MaxLag::Fixed(lag),
            selection: LagSelection::Fixed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdfResult {
    pub series: String,
    pub deterministic: Deterministic,
    /// τ = γ̂ / se(γ̂).
    pub statistic: f64,
    pub lag: usize,
    pub max_lag: usize,
    /// Observations in the test regression.
    pub n_eff: usize,
    pub gamma_hat: f64,
    pub critical_values: Vec<CriticalValue>,
    pub bracket: Bracket,
    /// Smooth approximate p-value where one is available.
    pub p_estimate: Option<f64>,
    #[serde(skip)]
    pub regression: Option<OlsFit>,
}

impl AdfResult {
    pub fn critical_value(&self, level: Level) -> f64 {
        self.critical_values
            .iter()
            .find(|c| c.level == level)
            .map(|c| c.value)
            .expect("all levels tabulated")
    }

    pub fn rejects(&self, level: Level) -> bool {
        self.statistic < self.critical_value(level)
    }

    pub fn to_test_result(&self) -> Result<TestResult> {
        let stat = Statistic {
            label: "ADF".into(),
            value: self.statistic,
            reference: Reference::Table {
                tail: Tail::Left,
                critical_values: self.critical_values.clone(),
            },
            p_value: PValue::Bracket {
                bracket: self.bracket,
            },
            p_estimate: self.p_estimate,
        };
        TestResult::new(format!("ADF ({})", self.series), "Unit root", vec![stat])
    }
}

/// Schwert's rule, clamped so that the largest candidate regression keeps
/// `max_lag < T/3` and at least two residual degrees of freedom.
pub fn auto_max_lag(t: usize, deterministic: Deterministic) -> usize {
    let schwert = (12.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize;
    let mut p = schwert.min(t.saturating_sub(1) / 3);
    while p > 0 && !estimable(t, p, deterministic) {
        p -= 1;
    }
    p
}

fn n_deterministic(d: Deterministic) -> usize {
    match d {
        Deterministic::None => 0,
        Deterministic::Constant => 1,
        Deterministic::ConstantTrend => 2,
    }
}

fn estimable(t: usize, p: usize, d: Deterministic) -> bool {
    let n = t as isize - 1 - p as isize;
    let k = (n_deterministic(d) + 1 + p) as isize;
    n - k >= 2
}

fn resolve_max_lag(t: usize, spec: &AdfSpec) -> Result<usize> {
    match spec.max_lag {
        MaxLag::Auto => Ok(auto_max_lag(t, spec.deterministic)),
        MaxLag::Fixed(p) => {
            if 3 * p >= t {
                return Err(Error::Precondition(format!(
                    "max lag {p} must be below T/3 (T = {t})"
                )));
            }
            if !estimable(t, p, spec.deterministic) {
                return Err(Error::Precondition(format!(
                    "too few observations for {p} lags (T = {t})"
                )));
            }
            Ok(p)
        }
    }
}

fn check_series(y: &[f64]) -> Result<()> {
    if y.len() < MIN_LENGTH {
        return Err(Error::Precondition(format!(
            "unit-root tests need at least {MIN_LENGTH} observations, got {}",
            y.len()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("series contains non-finite values".into()));
    }
    Ok(())
}

/// Test-regression columns for lag `p` using rows `t = first..T−1`
/// (`t` indexes levels, so `Δy_t = y_t − y_{t−1}`).
fn adf_columns(
    y: &[f64],
    p: usize,
    first: usize,
    det: Deterministic,
) -> (Vec<f64>, Vec<(String, Vec<f64>)>) {
    let rows = first..y.len();
    let dy = |t: usize| y[t] - y[t - 1];
    let response = rows.clone().map(dy).collect();
    let mut cols = Vec::with_capacity(p + 2);
    if det == Deterministic::ConstantTrend {
        cols.push((
            "trend".to_string(),
            rows.clone().map(|t| t as f64).collect(),
        ));
    }
    cols.push((
        LAGGED_LEVEL.to_string(),
        rows.clone().map(|t| y[t - 1]).collect(),
    ));
    for j in 1..=p {
        cols.push((
            format!("dy(-{j})"),
            rows.clone().map(|t| dy(t - j)).collect(),
        ));
    }
    (response, cols)
}

fn matrix(
    response: Vec<f64>,
    cols: &[(String, Vec<f64>)],
    intercept: bool,
) -> (DMatrix<f64>, DVector<f64>, Vec<String>) {
    let n = response.len();
    let k = cols.len() + usize::from(intercept);
    let mut x = DMatrix::zeros(n, k);
    let mut names = Vec::with_capacity(k);
    let mut j = 0;
    if intercept {
        x.column_mut(0).fill(1.0);
        names.push("C".to_string());
        j = 1;
    }
    for (name, c) in cols {
        x.column_mut(j).copy_from_slice(c);
        names.push(name.clone());
        j += 1;
    }
    (x, DVector::from_vec(response), names)
}

/// Lag order minimizing SIC over a common sample; ties go to the smaller lag.
pub fn select_lag_sic(y: &[f64], spec: &AdfSpec) -> Result<usize> {
    check_series(y)?;
    let max = resolve_max_lag(y.len(), spec)?;
    if max == 0 {
        return Ok(0);
    }
    let det = spec.deterministic;
    let first = max + 1;
    let mut best = (0, f64::INFINITY);
    for p in 0..=max {
        let (resp, cols) = adf_columns(y, p, first, det);
        let (x, yv, names) = matrix(resp, &cols, det != Deterministic::None);
        // a collinear candidate cannot win; skip it
        let rss = match least_squares(&x, &yv, &names) {
            Ok(sol) => sol.rss,
            Err(Error::SingularDesign { .. }) if p > 0 => continue,
            Err(e) => return Err(e),
        };
        let sic = sic_value(rss, yv.len(), names.len());
        if sic < best.1 {
            best = (p, sic);
        }
    }
    Ok(best.0)
}

fn is_constant(y: &[f64]) -> bool {
    y.iter().all(|v| *v == y[0])
}

/// ADF test with critical values from the finite-sample Dickey–Fuller table.
pub fn adf_test(name: &str, y: &[f64], spec: &AdfSpec) -> Result<AdfResult> {
    let det = spec.deterministic;
    adf_with(
        name,
        y,
        spec,
        |n, level| adf_critical_value(n, level, det),
        |s| Some(adf_pvalue_surface(s, det)),
    )
}

/// ADF test with caller-supplied critical values and p-value estimate.
pub(crate) fn adf_with(
    name: &str,
    y: &[f64],
    spec: &AdfSpec,
    critical: impl Fn(usize, Level) -> Result<f64>,
    p_estimate: impl Fn(f64) -> Option<f64>,
) -> Result<AdfResult> {
    check_series(y)?;
    if is_constant(y) {
        return Err(Error::Degenerate(format!("series `{name}` is constant")));
    }
    let max_lag = resolve_max_lag(y.len(), spec)?;
    let lag = match spec.selection {
        LagSelection::Sic => select_lag_sic(y, spec)?,
        LagSelection::Fixed => max_lag,
    };
    let det = spec.deterministic;
    let (resp, cols) = adf_columns(y, lag, lag + 1, det);
    let design = Design::new(format!("d({name})"), resp, cols, det != Deterministic::None)?;
    let fit = ols_fit(&design)?;
    let i = fit.index(LAGGED_LEVEL).expect("lagged level column");
    let statistic = fit.t_stats[i];
    let n_eff = fit.n;
    let critical_values = Level::ALL
        .iter()
        .map(|&level| {
            Ok(CriticalValue {
                level,
                value: critical(n_eff, level)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cv = [
        critical_values[0].value,
        critical_values[1].value,
        critical_values[2].value,
    ];
    Ok(AdfResult {
        series: name.to_string(),
        deterministic: det,
        statistic,
        lag,
        max_lag,
        n_eff,
        gamma_hat: fit.coefficients[i],
        critical_values,
        bracket: left_tail_bracket(statistic, cv),
        p_estimate: p_estimate(statistic),
        regression: Some(fit),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bandwidth {
    /// `⌊4 (T/100)^{1/4}⌋`
    Auto,
    Fixed(usize),
}

impl Bandwidth {
    pub fn resolve(self, t: usize) -> usize {
        match self {
            Bandwidth::Auto => (4.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize,
            Bandwidth::Fixed(l) => l,
        }
    }
}

/// Bartlett-kernel long-run variance with autocovariances divided by T.
pub fn long_run_variance(e: &[f64], lags: usize) -> f64 {
    let t = e.len() as f64;
    let gamma = |j: usize| e[j..].iter().zip(e).map(|(a, b)| a * b).sum::<f64>() / t;
    let mut s = gamma(0);
    for j in 1..=lags.min(e.len() - 1) {
        s += 2.0 * (1.0 - j as f64 / (lags as f64 + 1.0)) * gamma(j);
    }
    s
}

fn kpss_residuals(y: &[f64], spec: KpssSpec) -> Result<Vec<f64>> {
    match spec {
        KpssSpec::Level => {
            let m = y.iter().sum::<f64>() / y.len() as f64;
            Ok(y.iter().map(|v| v - m).collect())
        }
        KpssSpec::Trend => {
            let trend = (1..=y.len()).map(|t| t as f64).collect();
            let d = Design::new("y", y.to_vec(), vec![("trend".into(), trend)], true)?;
            Ok(ols_fit(&d)?.residuals)
        }
    }
}

/// KPSS statistic `Σ S_t² / (T² σ̂²_LR)`.
pub fn kpss_statistic(y: &[f64], spec: KpssSpec, bandwidth: Bandwidth) -> Result<f64> {
    check_series(y)?;
    let t = y.len();
    let lags = bandwidth.resolve(t);
    if lags >= t {
        return Err(Error::Precondition(format!(
            "bandwidth {lags} must be below T = {t}"
        )));
    }
    let e = kpss_residuals(y, spec)?;
    let scale = y.iter().map(|v| v * v).sum::<f64>() / t as f64;
    let lrv = long_run_variance(&e, lags);
    let gamma0 = e.iter().map(|v| v * v).sum::<f64>() / t as f64;
    if !(lrv > 0.0) || gamma0 <= 1e-24 * scale {
        return Err(Error::Degenerate("KPSS long-run variance is zero".into()));
    }
    let mut s = 0.0;
    let mut acc = 0.0;
    for v in &e {
        s += v;
        acc += s * s;
    }
    Ok(acc / ((t * t) as f64 * lrv))
}

pub fn kpss_test(y: &[f64], spec: KpssSpec, bandwidth: Bandwidth) -> Result<TestResult> {
    let eta = kpss_statistic(y, spec, bandwidth)?;
    let critical_values = Level::ALL
        .iter()
        .map(|&level| CriticalValue {
            level,
            value: kpss_critical_value(level, spec),
        })
        .collect();
    let stat = Statistic {
        label: "KPSS".into(),
        value: eta,
        reference: Reference::Table {
            tail: Tail::Right,
            critical_values,
        },
        p_value: PValue::Bracket {
            bracket: kpss_bracket(eta, spec),
        },
        p_estimate: None,
    };
    let null = match spec {
        KpssSpec::Level => "Level stationarity",
        KpssSpec::Trend => "Trend stationarity",
    };
    TestResult::new("KPSS", null, vec![stat])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wiggle(n: usize) -> Vec<f64> {
        // deterministic, irregular, mean-reverting
        (0..n)
            .map(|i| ((i * i * 37 + 11) % 23) as f64 / 7.0 + (i as f64 * 0.7).sin())
            .collect()
    }

    #[test]
    fn max_lag_zero_selects_zero() {
        let spec = AdfSpec {
            max_lag: MaxLag::Fixed(0),
            ..AdfSpec::default()
        };
        assert_eq!(select_lag_sic(&wiggle(30), &spec).unwrap(), 0);
    }

    #[test]
    fn auto_lag_rules() {
        assert_eq!(auto_max_lag(100, Deterministic::Constant), 12);
        assert_eq!(auto_max_lag(25, Deterministic::Constant), 8);
        assert!(auto_max_lag(12, Deterministic::ConstantTrend) < 4);
        assert_eq!(Bandwidth::Auto.resolve(25), 2);
        assert_eq!(Bandwidth::Auto.resolve(100), 4);
    }

    #[test]
    fn statistic_is_embedded_t_ratio() {
        let y = wiggle(40);
        let r = adf_test("w", &y, &AdfSpec::fixed_lag(Deterministic::Constant, 2)).unwrap();
        let fit = r.regression.as_ref().unwrap();
        let i = fit.index(LAGGED_LEVEL).unwrap();
        assert_eq!(r.statistic, fit.coefficients[i] / fit.std_errors[i]);
        assert_eq!(r.gamma_hat, fit.coefficients[i]);
        assert_eq!(r.n_eff, 40 - 3);
        assert!(r.rejects(Level::Five));
    }

    #[test]
    fn lag_zero_matches_hand_regression() {
        // Δy on y(-1) without deterministics: γ̂ = Σ Δy y₋₁ / Σ y₋₁²
        let y = wiggle(20);
        let r = adf_test("w", &y, &AdfSpec::fixed_lag(Deterministic::None, 0)).unwrap();
        let num: f64 = (1..20).map(|t| (y[t] - y[t - 1]) * y[t - 1]).sum();
        let den: f64 = (1..20).map(|t| y[t - 1] * y[t - 1]).sum();
        assert!((r.gamma_hat - num / den).abs() < 1e-12);
    }

    #[test]
    fn constant_series_degenerate() {
        assert!(matches!(
            adf_test("c", &[3.0; 20], &AdfSpec::default()),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            kpss_test(&[3.0; 20], KpssSpec::Level, Bandwidth::Auto),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn short_series_rejected() {
        assert!(matches!(
            select_lag_sic(&[1.0, 2.0, 1.5], &AdfSpec::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            adf_test(
                "w",
                &wiggle(30),
                &AdfSpec::fixed_lag(Deterministic::Constant, 10)
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn kpss_hand_value() {
        // y = [1, -1, 1, -1, ...], level spec, bandwidth 0: e = y, S alternates 1, 0
        let y: Vec<f64> = (0..10)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let eta = kpss_statistic(&y, KpssSpec::Level, Bandwidth::Fixed(0)).unwrap();
        assert!((eta - 5.0 / 100.0).abs() < 1e-15);
        // bandwidth 1: γ₁ = −9/10, σ² = 1 − 0.9 = 0.1
        let eta = kpss_statistic(&y, KpssSpec::Level, Bandwidth::Fixed(1)).unwrap();
        assert!((eta - 5.0 / (100.0 * 0.1)).abs() < 1e-12);
    }

    // statsmodels.tsa.stattools.kpss(y, regression, nlags=2)
    #[test]
    fn kpss_matches_statsmodels() {
        let y: Vec<f64> = (0..30)
            .scan(0.0, |acc, i| {
                *acc += (i as f64 * 1.7).sin();
                Some(*acc)
            })
            .collect();
        let level = kpss_statistic(&y, KpssSpec::Level, Bandwidth::Fixed(2)).unwrap();
        let trend = kpss_statistic(&y, KpssSpec::Trend, Bandwidth::Fixed(2)).unwrap();
        assert!((level - 0.091_200_302_123_594_65).abs() < 1e-12, "{level}");
        assert!((trend - 0.079_033_203_203_211_54).abs() < 1e-12, "{trend}");
    }

    fn series() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0..1.0f64, 30..60).prop_map(|e| {
            let mut y = Vec::with_capacity(e.len());
            let mut acc = 0.0;
            for v in e {
                acc = 0.6 * acc + v;
                y.push(acc);
            }
            y
        })
    }

    proptest! {
        #[test]
        fn adf_shift_and_scale_invariance(y in series(), c in -100.0..100.0f64, b in -0.5..0.5f64, lambda in 0.01..100.0f64) {
            let spec = AdfSpec::new(Deterministic::Constant);
            let base = adf_test("y", &y, &spec).unwrap();
            let shifted: Vec<f64> = y.iter().map(|v| v + c).collect();
            let s = adf_test("y", &shifted, &spec).unwrap();
            prop_assert_eq!(s.lag, base.lag);
            prop_assert!((s.statistic - base.statistic).abs() < 1e-8);
            let scaled: Vec<f64> = y.iter().map(|v| v * lambda).collect();
            let s = adf_test("y", &scaled, &spec).unwrap();
            prop_assert!((s.statistic - base.statistic).abs() < 1e-9 * (1.0 + base.statistic.abs()));

            let spec = AdfSpec::new(Deterministic::ConstantTrend);
            let base = adf_test("y", &y, &spec).unwrap();
            let trended: Vec<f64> = y.iter().enumerate().map(|(i, v)| v + c + b * i as f64).collect();
            let s = adf_test("y", &trended, &spec).unwrap();
            prop_assert_eq!(s.lag, base.lag);
            prop_assert!((s.statistic - base.statistic).abs() < 1e-8);
        }

        #[test]
        fn kpss_affine_invariance(y in series(), a in -100.0..100.0f64, b in 0.01..100.0f64, neg in any::<bool>()) {
            let b = if neg { -b } else { b };
            let eta = kpss_statistic(&y, KpssSpec::Level, Bandwidth::Auto).unwrap();
            let ya: Vec<f64> = y.iter().map(|v| a + b * v).collect();
            let eta2 = kpss_statistic(&ya, KpssSpec::Level, Bandwidth::Auto).unwrap();
            prop_assert!((eta - eta2).abs() < 1e-9 * (1.0 + eta));
        }
    }
}
