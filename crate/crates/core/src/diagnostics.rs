//! Correlation matrix and residual diagnostics for a fitted regression.

use serde::{Deserialize, Serialize};

use crate::dist::DistRef;
use crate::error::{Error, Result};
use crate::linreg::{joint_f, ols_fit, Design, OlsFit, PERFECT_FIT_RTOL};
use crate::result::{Statistic, TestResult};
use crate::series::Frame;

pub const DEFAULT_BG_ORDER: usize = 2;
pub const DEFAULT_RESET_POWER: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    /// Row-major, symmetric, unit diagonal.
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.values[i][j])
    }

    /// `(row, column, r)` for the lower triangle including the diagonal,
    /// row by row.
    pub fn lower_triangle(&self) -> Vec<(&str, &str, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.labels.iter().enumerate() {
            for (j, col) in self.labels.iter().enumerate().take(i + 1) {
                out.push((row.as_str(), col.as_str(), self.values[i][j]));
            }
        }
        out
    }
}

fn centered(x: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let c: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let ss = c.iter().map(|v| v * v).sum::<f64>();
    (c, ss)
}

/// Pearson correlation of two equal-length samples.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Precondition(
            "correlation needs two samples of equal length >= 2".into(),
        ));
    }
    let (cx, sx) = centered(x);
    let (cy, sy) = centered(y);
    if sx == 0.0 || sy == 0.0 {
        return Err(Error::Degenerate("zero-variance sample".into()));
    }
    let sxy: f64 = cx.iter().zip(&cy).map(|(a, b)| a * b).sum();
    // sqrt(s * s) == s exactly, so identical samples give exactly 1
    Ok((sxy / (sx * sy).sqrt()).clamp(-1.0, 1.0))
}

pub fn pearson_matrix(frame: &Frame) -> Result<CorrelationMatrix> {
    if frame.series().len() < 2 {
        return Err(Error::Precondition(
            "correlation matrix needs at least two series".into(),
        ));
    }
    let mut cols = Vec::new();
    for s in frame.series() {
        let (c, ss) = centered(&s.to_vec()?);
        if ss == 0.0 {
            return Err(Error::Degenerate(format!(
                "series `{}` has zero variance",
                s.name()
            )));
        }
        cols.push((c, ss));
    }
    let m = cols.len();
    let mut values = vec![vec![0.0; m]; m];
    for i in 0..m {
        values[i][i] = 1.0;
        for j in 0..i {
            let sxy: f64 = cols[i].0.iter().zip(&cols[j].0).map(|(a, b)| a * b).sum();
            let r = (sxy / (cols[i].1 * cols[j].1).sqrt()).clamp(-1.0, 1.0);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: frame.names().iter().map(|s| s.to_string()).collect(),
        values,
    })
}

fn check_fit(fit: &OlsFit, d: &Design) -> Result<()> {
    if fit.n != d.n() || fit.k != d.k() || fit.names != d.names() {
        return Err(Error::Precondition(
            "fit was not produced from this design".into(),
        ));
    }
    Ok(())
}

/// True when the auxiliary response has no variation beyond rounding.
fn flat_response(aux: &OlsFit, sum_sq: f64) -> bool {
    aux.tss <= PERFECT_FIT_RTOL * sum_sq
}

/// Breusch–Pagan: squared residuals on the regressors.
pub fn breusch_pagan(fit: &OlsFit, d: &Design) -> Result<TestResult> {
    check_fit(fit, d)?;
    let regs = d.regressors();
    if regs.is_empty() {
        return Err(Error::Precondition(
            "Breusch-Pagan needs at least one regressor".into(),
        ));
    }
    let q = regs.len();
    let e2: Vec<f64> = fit.residuals.iter().map(|e| e * e).collect();
    let sum_sq = e2.iter().map(|v| v * v).sum();
    let aux = ols_fit(&Design::new("resid^2", e2, regs, true)?)?;
    let n = fit.n;
    let df = n - q - 1;
    let (lm, f) = if flat_response(&aux, sum_sq) {
        (0.0, 0.0)
    } else {
        let r2 = (1.0 - aux.rss / aux.tss).clamp(0.0, 1.0);
        (n as f64 * r2, joint_f(aux.tss, aux.rss, q, df))
    };
    TestResult::new(
        "Breusch-Pagan",
        "Homoscedasticity",
        vec![
            Statistic::upper_tail("LM", lm, DistRef::chi_square(q as f64))?,
            Statistic::upper_tail("F", f, DistRef::f(q as f64, df as f64))?,
        ],
    )
}

/// Breusch–Godfrey LM test for serial correlation up to `order`.
/// Pre-sample lagged residuals are zero.
pub fn breusch_godfrey(fit: &OlsFit, d: &Design, order: usize) -> Result<TestResult> {
    check_fit(fit, d)?;
    let n = fit.n;
    let k = fit.k;
    if order == 0 {
        return Err(Error::Precondition(
            "Breusch-Godfrey order must be at least 1".into(),
        ));
    }
    if order >= n - k {
        return Err(Error::Precondition(format!(
            "Breusch-Godfrey order {order} too large for n = {n}, k = {k}"
        )));
    }
    let e = &fit.residuals;
    let ss: f64 = e.iter().map(|v| v * v).sum();
    if ss == 0.0 {
        return Err(Error::Degenerate(
            "Breusch-Godfrey needs nonzero residuals".into(),
        ));
    }
    let lags: Vec<(String, Vec<f64>)> = (1..=order)
        .map(|j| {
            let col = (0..n)
                .map(|t| if t >= j { e[t - j] } else { 0.0 })
                .collect();
            (format!("resid(-{j})"), col)
        })
        .collect();
    let aux = ols_fit(&d.with_response("resid", e.clone())?.with_columns(lags)?)?;
    // residuals of a fit on X are orthogonal to X, so the restricted RSS is Σe²
    let r2 = (1.0 - aux.rss / ss).clamp(0.0, 1.0);
    let lm = n as f64 * r2;
    let df = n - k - order;
    let f = joint_f(ss, aux.rss, order, df);
    TestResult::new(
        "Breusch-Godfrey",
        "No serial correlation",
        vec![
            Statistic::upper_tail("LM", lm, DistRef::chi_square(order as f64))?,
            Statistic::upper_tail("F", f, DistRef::f(order as f64, df as f64))?,
        ],
    )
}

/// Biased sample skewness and (non-excess) kurtosis.
pub fn skew_kurtosis(x: &[f64]) -> Result<(f64, f64)> {
    let n = x.len() as f64;
    let (c, ss) = centered(x);
    let m2 = ss / n;
    if m2 == 0.0 {
        return Err(Error::Degenerate("zero-variance sample".into()));
    }
    let m3 = c.iter().map(|v| v.powi(3)).sum::<f64>() / n;
    let m4 = c.iter().map(|v| v.powi(4)).sum::<f64>() / n;
    Ok((m3 / m2.powf(1.5), m4 / (m2 * m2)))
}

pub fn jarque_bera(x: &[f64]) -> Result<TestResult> {
    if x.len() < 4 {
        return Err(Error::Precondition(
            "Jarque-Bera needs at least 4 observations".into(),
        ));
    }
    let (s, k) = skew_kurtosis(x)?;
    let jb = x.len() as f64 / 6.0 * (s * s + (k - 3.0).powi(2) / 4.0);
    TestResult::new(
        "Jarque-Bera",
        "Residuals are normally distributed",
        vec![Statistic::upper_tail("JB", jb, DistRef::chi_square(2.0))?],
    )
}

/// Ramsey RESET with powers 2..=`max_power` of the standardized fitted
/// values.
pub fn ramsey_reset(fit: &OlsFit, d: &Design, max_power: usize) -> Result<TestResult> {
    check_fit(fit, d)?;
    if max_power < 2 {
        return Err(Error::Precondition("RESET needs max_power >= 2".into()));
    }
    let n = fit.n;
    let q = max_power - 1;
    if n <= fit.k + q {
        return Err(Error::Precondition(format!(
            "RESET with {q} added terms needs more than {} observations",
            fit.k + q
        )));
    }
    let (c, ss) = centered(&fit.fitted);
    if ss == 0.0 {
        return Err(Error::Degenerate(
            "RESET needs fitted values with nonzero variance".into(),
        ));
    }
    let sd = (ss / n as f64).sqrt();
    let z: Vec<f64> = c.iter().map(|v| v / sd).collect();
    let extra = (2..=max_power)
        .map(|p| {
            (
                format!("fitted^{p}"),
                z.iter().map(|v| v.powi(p as i32)).collect(),
            )
        })
        .collect();
    let aug = d.with_columns(extra)?;
    let df = n - fit.k - q;
    let rss_r = fit.rss;

    // a restricted model that already fits exactly leaves nothing to detect
    let exact = rss_r <= PERFECT_FIT_RTOL * fit.tss.max(f64::MIN_POSITIVE);
    let (f, t, lr) = if exact {
        (0.0, 0.0, 0.0)
    } else {
        let u = ols_fit(&aug)?;
        let f = joint_f(rss_r, u.rss, q, df);
        let lr = if u.rss > 0.0 {
            (n as f64 * (rss_r / u.rss).ln()).max(0.0)
        } else {
            f64::INFINITY
        };
        (f, *u.t_stats.last().expect("augmented fit has columns"), lr)
    };
    let mut stats = vec![Statistic::upper_tail(
        "F",
        f,
        DistRef::f(q as f64, df as f64),
    )?];
    if q == 1 {
        stats.push(Statistic::two_sided_t("t", t, df as f64)?);
    }
    stats.push(Statistic::upper_tail(
        "LR",
        lr,
        DistRef::chi_square(q as f64),
    )?);
    TestResult::new("Ramsey RESET", "The model is well specified", stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{AnnualSeries, Units};
    use proptest::prelude::*;

    fn frame(cols: &[(&str, Vec<f64>)]) -> Frame {
        let s = cols
            .iter()
            .map(|(n, v)| AnnualSeries::complete(*n, 2000, v.clone(), Units::Ratio).unwrap())
            .collect();
        Frame::from_common_range(s).unwrap()
    }

    #[test]
    fn exact_correlations() {
        let f = frame(&[
            ("x", vec![1.0, 2.0, 3.0]),
            ("y", vec![2.0, 4.0, 6.0]),
            ("z", vec![3.0, 2.0, 1.0]),
        ]);
        let m = pearson_matrix(&f).unwrap();
        assert!((m.get("x", "y").unwrap() - 1.0).abs() < 1e-15);
        assert!((m.get("x", "z").unwrap() + 1.0).abs() < 1e-15);
        let tri = m.lower_triangle();
        assert_eq!(tri.len(), 6);
        assert_eq!((tri[1].0, tri[1].1), ("y", "x"));
    }

    #[test]
    fn identical_columns_correlate_exactly() {
        let v = vec![3.0, 1.5, 4.25, 1.0, 5.5, 9.0, 2.75];
        let f = frame(&[("a", v.clone()), ("b", v.clone())]);
        assert_eq!(pearson_matrix(&f).unwrap().get("a", "b"), Some(1.0));
        assert_eq!(pearson(&v, &v).unwrap(), 1.0);
    }

    #[test]
    fn zero_variance_named() {
        let f = frame(&[("x", vec![1.0, 2.0, 3.0]), ("flat", vec![5.0; 3])]);
        match pearson_matrix(&f) {
            Err(Error::Degenerate(m)) => assert!(m.contains("flat")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jarque_bera_hand_value() {
        let r = jarque_bera(&[-1.0, 0.0, 1.0, 0.0, -1.0, 1.0]).unwrap();
        // same moments as [-1, 0, 1]: S = 0, K = 1.5
        assert!((r.primary().value - 6.0 / 6.0 * 2.25 / 4.0).abs() < 1e-14);
        let (s, k) = skew_kurtosis(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(s, 0.0);
        assert!((k - 1.5).abs() < 1e-15);
        assert!((3.0 / 6.0 * (s * s + (k - 3.0).powi(2) / 4.0) - 0.28125).abs() < 1e-15);
    }

    #[test]
    fn bg_order_zero_rejected() {
        let d = Design::new(
            "y",
            vec![1.0, 3.0, 2.0, 5.0, 4.0, 6.0],
            vec![("x".into(), vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0])],
            true,
        )
        .unwrap();
        let fit = ols_fit(&d).unwrap();
        assert!(matches!(
            breusch_godfrey(&fit, &d, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            breusch_godfrey(&fit, &d, 4),
            Err(Error::Precondition(_))
        ));
        assert!(breusch_godfrey(&fit, &d, 1).is_ok());
    }

    #[test]
    fn bp_null_by_construction() {
        // ε̂² constant: residuals ±1 with x symmetric
        let x = vec![-2.0, -1.0, 0.0, 1.0, 2.0, -2.0, -1.0, 0.0, 1.0, 2.0];
        let y: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { -1.0 }).collect();
        let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
        let fit = ols_fit(&d).unwrap();
        let r = breusch_pagan(&fit, &d).unwrap();
        assert!(r.primary().value.abs() < 1e-12);
        assert!((r.primary().p().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reset_noiseless_linear() {
        let x: Vec<f64> = (0..12).map(|i| (i as f64).sin() * 3.0 + i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 1.5 - 2.0 * v).collect();
        let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
        let fit = ols_fit(&d).unwrap();
        let r = ramsey_reset(&fit, &d, 2).unwrap();
        assert_eq!(r.statistic("F").unwrap().value, 0.0);
    }

    fn sample() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0..100.0f64, 5..40)
    }

    proptest! {
        #[test]
        fn pearson_affine_invariance(x in sample(), seed in 0u64..1000, a in -5.0..5.0f64, b in 0.1..10.0f64) {
            let y: Vec<f64> = x.iter().enumerate().map(|(i, v)| v * 0.3 + ((i as u64 * 7919 + seed) % 13) as f64).collect();
            prop_assume!(pearson(&x, &y).is_ok());
            let r = pearson(&x, &y).unwrap();
            let xa: Vec<f64> = x.iter().map(|v| a + b * v).collect();
            prop_assert!((pearson(&xa, &y).unwrap() - r).abs() < 1e-12);
            let neg: Vec<f64> = y.iter().map(|v| -v).collect();
            prop_assert!((pearson(&x, &neg).unwrap() + r).abs() < 1e-12);
        }

        #[test]
        fn jb_nonnegative_and_affine_invariant(x in sample(), a in -50.0..50.0f64, b in 0.01..100.0f64) {
            prop_assume!(skew_kurtosis(&x).is_ok());
            let jb = jarque_bera(&x).unwrap().primary().value;
            prop_assert!(jb >= 0.0);
            let xa: Vec<f64> = x.iter().map(|v| a + b * v).collect();
            let jb2 = jarque_bera(&xa).unwrap().primary().value;
            prop_assert!((jb - jb2).abs() < 1e-9 * (1.0 + jb));
        }

        #[test]
        fn correlation_matrix_invariants(cols in prop::collection::vec(prop::collection::vec(-10.0..10.0f64, 12), 2..5)) {
            let named: Vec<(String, Vec<f64>)> = cols.into_iter().enumerate().map(|(i, c)| (format!("s{i}"), c)).collect();
            let refs: Vec<(&str, Vec<f64>)> = named.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
            let m = match pearson_matrix(&frame(&refs)) { Ok(m) => m, Err(_) => return Ok(()) };
            let k = m.labels.len();
            let mat = nalgebra::DMatrix::from_fn(k, k, |i, j| m.values[i][j]);
            for i in 0..k {
                prop_assert_eq!(m.values[i][i], 1.0);
                for j in 0..k {
                    prop_assert_eq!(m.values[i][j], m.values[j][i]);
                    prop_assert!(m.values[i][j].abs() <= 1.0);
                }
            }
            prop_assert!(mat.symmetric_eigenvalues().min() >= -1e-8);
        }

        #[test]
        fn reset_f_is_t_squared(noise in prop::collection::vec(-1.0..1.0f64, 20)) {
            let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.5).collect();
            let y: Vec<f64> = x.iter().zip(&noise).map(|(x, e)| 1.0 + x + 0.05 * x * x + e).collect();
            let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
            let fit = ols_fit(&d).unwrap();
            let r = ramsey_reset(&fit, &d, 2).unwrap();
            let f = r.statistic("F").unwrap().value;
            let t = r.statistic("t").unwrap().value;
            prop_assert!((f - t * t).abs() < 1e-9 * (1.0 + f));
            let bp = breusch_pagan(&fit, &d).unwrap();
            let bg = breusch_godfrey(&fit, &d, 2).unwrap();
            prop_assert!(bp.primary().value >= 0.0 && bg.primary().value >= 0.0);
        }
    }
}
