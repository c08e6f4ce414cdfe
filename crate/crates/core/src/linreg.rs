//! Ordinary least squares.
//!
//! Columns are scaled to unit Euclidean norm and the scaled design is
//! factored with a Householder QR; the normal equations are never formed.
//! A design whose scaled R factor has a 2-norm condition number above
//! [`MAX_CONDITION`] is rejected, naming the first column at which the
//! leading sub-design becomes ill-conditioned.

use nalgebra::{DMatrix, DVector};

use crate::dist::{t_two_sided, DistRef};
use crate::error::{Error, Result};
use crate::result::{Statistic, TestResult};
use crate::series::{AnnualSeries, Frame};

pub const MAX_CONDITION: f64 = 1e12;
pub const INTERCEPT: &str = "C";
/// An unrestricted RSS this small relative to the restricted RSS is
/// treated as an exact fit (residual norm at rounding level).
pub const PERFECT_FIT_RTOL: f64 = 1e-24;

/// Response plus regressor matrix. When `intercept` is set the first
/// column of `x` is the constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    response: String,
    y: DVector<f64>,
    x: DMatrix<f64>,
    names: Vec<String>,
    intercept: bool,
}

impl Design {
    pub fn new(
        response: impl Into<String>,
        y: Vec<f64>,
        regressors: Vec<(String, Vec<f64>)>,
        intercept: bool,
    ) -> Result<Self> {
        let n = y.len();
        let k = regressors.len() + usize::from(intercept);
        if k == 0 {
            return Err(Error::Precondition("design has no columns".into()));
        }
        if n <= k {
            return Err(Error::Precondition(format!(
                "need more observations than parameters (n = {n}, k = {k})"
            )));
        }
        let mut names = Vec::with_capacity(k);
        let mut x = DMatrix::zeros(n, k);
        let mut col = 0;
        if intercept {
            x.column_mut(0).fill(1.0);
            names.push(INTERCEPT.to_string());
            col = 1;
        }
        for (name, values) in regressors {
            if values.len() != n {
                return Err(Error::Structure(format!(
                    "regressor `{name}` has {} rows, response has {n}",
                    values.len()
                )));
            }
            for (i, v) in values.into_iter().enumerate() {
                x[(i, col)] = v;
            }
            names.push(name);
            col += 1;
        }
        if y.iter().chain(x.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("design contains non-finite values".into()));
        }
        Ok(Self {
            response: response.into(),
            y: DVector::from_vec(y),
            x,
            names,
            intercept,
        })
    }

    pub fn from_series(
        response: &AnnualSeries,
        regressors: &[AnnualSeries],
        intercept: bool,
    ) -> Result<Self> {
        for r in regressors {
            if r.start_year() != response.start_year() || r.len() != response.len() {
                return Err(Error::Structure(format!(
                    "regressor `{}` is not year-aligned with `{}`",
                    r.name(),
                    response.name()
                )));
            }
        }
        let cols = regressors
            .iter()
            .map(|r| Ok((r.name().to_string(), r.to_vec()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(response.name(), response.to_vec()?, cols, intercept)
    }

    pub fn from_frame(
        frame: &Frame,
        response: &str,
        regressors: &[&str],
        intercept: bool,
    ) -> Result<Self> {
        if regressors.contains(&response) {
            return Err(Error::Precondition(format!(
                "response `{response}` also listed as a regressor"
            )));
        }
        let y = frame.require(response)?;
        let xs = regressors
            .iter()
            .map(|r| frame.require(r).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::from_series(y, &xs, intercept)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn k(&self) -> usize {
        self.x.ncols()
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn response(&self) -> &str {
        &self.response
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_intercept(&self) -> bool {
        self.intercept
    }

    /// Regressor columns other than the intercept.
    pub fn regressors(&self) -> Vec<(String, Vec<f64>)> {
        let skip = usize::from(self.intercept);
        self.names
            .iter()
            .enumerate()
            .skip(skip)
            .map(|(j, name)| (name.clone(), self.x.column(j).iter().copied().collect()))
            .collect()
    }

    /// Same regressors with a different response.
    pub fn with_response(&self, name: impl Into<String>, y: Vec<f64>) -> Result<Self> {
        Self::new(name, y, self.regressors(), self.intercept)
    }

    /// Same response with extra regressor columns appended.
    pub fn with_columns(&self, extra: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let mut cols = self.regressors();
        cols.extend(extra);
        Self::new(
            self.response.clone(),
            self.y.iter().copied().collect(),
            cols,
            self.intercept,
        )
    }

    /// Scale `y` by `factor` (used by invariance checks and simulations).
    pub fn scaled_response(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.y *= factor;
        out
    }
}

/// Raw least-squares solution on a design matrix.
#[derive(Debug, Clone)]
pub(crate) struct Solution {
    pub beta: DVector<f64>,
    pub residuals: DVector<f64>,
    pub rss: f64,
    /// `(X'X)⁻¹`
    pub xtx_inv: DMatrix<f64>,
}

fn column_scales(x: &DMatrix<f64>, names: &[String]) -> Result<DVector<f64>> {
    let scales = DVector::from_iterator(x.ncols(), x.column_iter().map(|c| c.norm()));
    if let Some(j) = scales.iter().position(|s| *s == 0.0) {
        return Err(Error::SingularDesign {
            column: names[j].clone(),
            condition: f64::INFINITY,
        });
    }
    Ok(scales)
}

fn condition(r: &DMatrix<f64>) -> f64 {
    let sv = r.clone().svd(false, false).singular_values;
    let max = sv.max();
    let min = sv.min();
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Index and condition of the first leading sub-design that is ill-conditioned.
fn find_culprit(r: &DMatrix<f64>) -> (usize, f64) {
    let k = r.ncols();
    for j in 0..k {
        let lead = r.view((0, 0), (j + 1, j + 1)).clone_owned();
        let c = condition(&lead);
        if !(c <= MAX_CONDITION) {
            return (j, c);
        }
    }
    (k - 1, condition(r))
}

pub(crate) fn least_squares(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    names: &[String],
) -> Result<Solution> {
    let k = x.ncols();
    let scales = column_scales(x, names)?;
    let mut xs = x.clone();
    for (j, s) in scales.iter().enumerate() {
        xs.column_mut(j).unscale_mut(*s);
    }
    let qr = xs.qr();
    let r = qr.r();
    let cond = condition(&r);
    if !(cond <= MAX_CONDITION) {
        let (j, c) = find_culprit(&r);
        return Err(Error::SingularDesign {
            column: names[j].clone(),
            condition: c,
        });
    }
    let mut qty = y.clone();
    qr.q_tr_mul(&mut qty);
    let qty_k = qty.rows(0, k).clone_owned();
    let beta_scaled = r
        .solve_upper_triangular(&qty_k)
        .ok_or_else(|| Error::SingularDesign {
            column: names[k - 1].clone(),
            condition: f64::INFINITY,
        })?;
    let beta = beta_scaled.component_div(&scales);
    let residuals = y - x * &beta;
    let rss = residuals.norm_squared();

    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or_else(|| Error::SingularDesign {
            column: names[k - 1].clone(),
            condition: f64::INFINITY,
        })?;
    let mut xtx_inv = &r_inv * r_inv.transpose();
    for i in 0..k {
        for j in 0..k {
            xtx_inv[(i, j)] /= scales[i] * scales[j];
        }
    }
    Ok(Solution {
        beta,
        residuals,
        rss,
        xtx_inv,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub response: String,
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    pub rss: f64,
    pub tss: f64,
    pub r2: f64,
    pub adj_r2: f64,
    /// Joint significance of all non-intercept coefficients; `None`
    /// without an intercept or without slopes.
    pub f_stat: Option<f64>,
    pub f_prob: Option<f64>,
    pub sic: f64,
    /// `None` when every residual is exactly zero.
    pub dw: Option<f64>,
    pub n: usize,
    pub k: usize,
    pub intercept: bool,
}

impl OlsFit {
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.index(name).map(|i| self.coefficients[i])
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Residual variance estimate `RSS / (n − k)`.
    pub fn sigma2(&self) -> f64 {
        self.rss / (self.n - self.k) as f64
    }

    pub fn df_resid(&self) -> usize {
        self.n - self.k
    }
}

pub fn ols_fit(d: &Design) -> Result<OlsFit> {
    let sol = least_squares(&d.x, &d.y, &d.names)?;
    let n = d.n();
    let k = d.k();
    let df = (n - k) as f64;
    let rss = sol.rss;
    let s2 = rss / df;

    let mut std_errors = Vec::with_capacity(k);
    let mut t_stats = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in 0..k {
        let b = sol.beta[j];
        let se = (s2 * sol.xtx_inv[(j, j)]).max(0.0).sqrt();
        let t = if se > 0.0 {
            b / se
        } else if b == 0.0 {
            0.0
        } else {
            b.signum() * f64::INFINITY
        };
        std_errors.push(se);
        t_stats.push(t);
        p_values.push(t_two_sided(t, df)?);
    }

    let y = &d.y;
    let tss = if d.intercept {
        let mean = y.mean();
        y.iter().map(|v| (v - mean).powi(2)).sum()
    } else {
        y.norm_squared()
    };
    let r2 = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let n_f = n as f64;
    let adj_r2 = if d.intercept {
        1.0 - (1.0 - r2) * (n_f - 1.0) / df
    } else {
        1.0 - (1.0 - r2) * n_f / df
    };

    let (f_stat, f_prob) = if d.intercept && k >= 2 {
        let f = joint_f(tss, rss, k - 1, n - k);
        let p = DistRef::f((k - 1) as f64, df).survival(f)?;
        (Some(f), Some(p))
    } else {
        (None, None)
    };

    let residuals: Vec<f64> = sol.residuals.iter().copied().collect();
    let fitted: Vec<f64> = y.iter().zip(&residuals).map(|(y, e)| y - e).collect();
    let dw = durbin_watson(&residuals).ok();

    Ok(OlsFit {
        response: d.response.clone(),
        names: d.names.clone(),
        coefficients: sol.beta.iter().copied().collect(),
        std_errors,
        t_stats,
        p_values,
        residuals,
        fitted,
        rss,
        tss,
        r2,
        adj_r2,
        f_stat,
        f_prob,
        sic: sic_value(rss, n, k),
        dw,
        n,
        k,
        intercept: d.intercept,
    })
}

/// `((RSS_r − RSS_u)/q) / (RSS_u/(n − p))`, with +∞ for a perfect
/// unrestricted fit and 0 when nothing is explained.
pub(crate) fn joint_f(rss_restricted: f64, rss_unrestricted: f64, q: usize, df: usize) -> f64 {
    let gain = (rss_restricted - rss_unrestricted).max(0.0);
    if gain == 0.0 {
        0.0
    } else if rss_unrestricted <= PERFECT_FIT_RTOL * rss_restricted {
        f64::INFINITY
    } else {
        (gain / q as f64) / (rss_unrestricted / df as f64)
    }
}

/// Joint F-test that every coefficient except the intercept is zero.
pub fn f_test_joint(fit: &OlsFit) -> Result<TestResult> {
    if !fit.intercept {
        return Err(Error::Precondition(
            "joint F-test needs a model estimated with an intercept".into(),
        ));
    }
    if fit.k < 2 {
        return Err(Error::Precondition(
            "joint F-test needs at least one regressor besides the intercept".into(),
        ));
    }
    let q = fit.k - 1;
    let df = fit.n - fit.k;
    let f = joint_f(fit.tss, fit.rss, q, df);
    let stat = Statistic::upper_tail("F", f, DistRef::f(q as f64, df as f64))?;
    TestResult::new("Joint F", "All slope coefficients are zero", vec![stat])
}

/// Schwarz criterion `ln(RSS/n) + k·ln(n)/n`; −∞ for a perfect fit.
pub fn sic_value(rss: f64, n: usize, k: usize) -> f64 {
    let n = n as f64;
    if rss <= 0.0 {
        f64::NEG_INFINITY
    } else {
        (rss / n).ln() + k as f64 * n.ln() / n
    }
}

pub fn sic(fit: &OlsFit) -> f64 {
    fit.sic
}

pub fn durbin_watson(residuals: &[f64]) -> Result<f64> {
    if residuals.len() < 2 {
        return Err(Error::Precondition(
            "Durbin-Watson needs at least two residuals".into(),
        ));
    }
    let ss: f64 = residuals.iter().map(|e| e * e).sum();
    if ss == 0.0 {
        return Err(Error::Degenerate(
            "Durbin-Watson is undefined for all-zero residuals".into(),
        ));
    }
    let num: f64 = residuals.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum();
    Ok(num / ss)
}

/// Standardized one-step-ahead prediction errors
/// `ŵ_t = (y_t − x_t'b_{t−1}) / √(1 + x_t'(X'_{t−1}X_{t−1})⁻¹x_t)` for
/// `t = k+1..T`, computed by Givens updating of the QR factor.
pub fn recursive_residuals(d: &Design) -> Result<Vec<f64>> {
    let n = d.n();
    let k = d.k();
    let scales = column_scales(&d.x, &d.names)?;
    let row_scaled = |t: usize| -> DVector<f64> {
        DVector::from_iterator(k, (0..k).map(|j| d.x[(t, j)] / scales[j]))
    };

    let mut lead = DMatrix::zeros(k, k);
    for t in 0..k {
        lead.set_row(t, &row_scaled(t).transpose());
    }
    let qr = lead.qr();
    let mut r = qr.r();
    if !(condition(&r) <= MAX_CONDITION) {
        return Err(Error::SingularPrefix { t: k });
    }
    let mut z = d.y.rows(0, k).clone_owned();
    qr.q_tr_mul(&mut z);

    let mut out = Vec::with_capacity(n - k);
    for t in k..n {
        let x = row_scaled(t);
        let yt = d.y[t];
        let beta = r
            .solve_upper_triangular(&z)
            .ok_or(Error::SingularPrefix { t })?;
        let u = r
            .tr_solve_upper_triangular(&x)
            .ok_or(Error::SingularPrefix { t })?;
        let f = 1.0 + u.norm_squared();
        out.push((yt - x.dot(&beta)) / f.sqrt());

        // absorb row t into (R, z)
        let mut row = x;
        let mut yy = yt;
        for j in 0..k {
            let a = r[(j, j)];
            let b = row[j];
            if b == 0.0 {
                continue;
            }
            let h = a.hypot(b);
            let (c, s) = (a / h, b / h);
            for l in j..k {
                let rl = r[(j, l)];
                let xl = row[l];
                r[(j, l)] = c * rl + s * xl;
                row[l] = -s * rl + c * xl;
            }
            let zj = z[j];
            z[j] = c * zj + s * yy;
            yy = -s * zj + c * yy;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn design(y: Vec<f64>, cols: Vec<Vec<f64>>, intercept: bool) -> Design {
        let regs = cols
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("x{}", i + 1), c))
            .collect();
        Design::new("y", y, regs, intercept).unwrap()
    }

    #[test]
    fn exact_fit() {
        let d = design(vec![2.0, 4.0, 6.0], vec![vec![1.0, 2.0, 3.0]], true);
        let fit = ols_fit(&d).unwrap();
        assert!(fit.coefficients[0].abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-12));
    }

    // Σ(x−x̄)(y−ȳ) = 3, Σ(x−x̄)² = 5 → slope 0.6, intercept 2 − 0.6·2.5 = 0.5
    #[test]
    fn hand_normal_equations() {
        let d = design(
            vec![1.0, 2.0, 2.0, 3.0],
            vec![vec![1.0, 2.0, 3.0, 4.0]],
            true,
        );
        let fit = ols_fit(&d).unwrap();
        assert!((fit.coefficients[1] - 0.6).abs() < 1e-12);
        assert!((fit.coefficients[0] - 0.5).abs() < 1e-12);
        assert!(fit.r2 >= fit.adj_r2);
        // residuals -0.1, 0.3, -0.3, 0.1
        let dw = fit.dw.unwrap();
        assert!((dw - (0.16 + 0.36 + 0.16) / 0.2).abs() < 1e-9);
    }

    #[test]
    fn singular_design_names_column() {
        let x1 = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let x2: Vec<f64> = x1.iter().map(|v| 2.0 * v + 1.0).collect();
        let x3 = vec![0.3, -1.0, 2.0, 0.1, 0.5];
        let d = design(vec![1.0, 3.0, 2.0, 5.0, 4.0], vec![x1, x2, x3], true);
        match ols_fit(&d) {
            Err(Error::SingularDesign { column, .. }) => assert_eq!(column, "x2"),
            other => panic!("expected singular design, got {other:?}"),
        }
        let zero = design(vec![1.0, 2.0, 3.0], vec![vec![0.0; 3]], true);
        assert!(matches!(ols_fit(&zero), Err(Error::SingularDesign { .. })));
    }

    #[test]
    fn too_few_observations() {
        assert!(Design::new(
            "y",
            vec![1.0, 2.0],
            vec![("x".into(), vec![1.0, 2.0])],
            true
        )
        .is_err());
    }

    #[test]
    fn f_test_edges() {
        // slope exactly zero: residual variance unchanged by the regressor
        let d = design(
            vec![1.0, -1.0, -1.0, 1.0],
            vec![vec![1.0, 2.0, 3.0, 4.0]],
            true,
        );
        let fit = ols_fit(&d).unwrap();
        let f = f_test_joint(&fit).unwrap();
        assert_eq!(f.primary().value, 0.0);
        assert_eq!(f.primary().p(), Some(1.0));

        let d = design(
            vec![3.0, 5.0, 7.0, 9.0],
            vec![vec![1.0, 2.0, 3.0, 4.0]],
            true,
        );
        let fit = ols_fit(&d).unwrap();
        let f = f_test_joint(&fit).unwrap();
        assert_eq!(f.primary().value, f64::INFINITY);
        assert_eq!(f.primary().p(), Some(0.0));

        let no_c = design(vec![1.0, 2.0, 2.5], vec![vec![1.0, 2.0, 3.0]], false);
        assert!(matches!(
            f_test_joint(&ols_fit(&no_c).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sic_hand_value() {
        assert!((sic_value(10.0, 10, 1) - 0.2303).abs() < 1e-4);
        assert_eq!(sic_value(0.0, 10, 1), f64::NEG_INFINITY);
    }

    #[test]
    fn durbin_watson_values() {
        assert_eq!(durbin_watson(&[0.7, 0.7, 0.7]).unwrap(), 0.0);
        assert!((durbin_watson(&[1.0, -1.0, 1.0, -1.0]).unwrap() - 3.0).abs() < 1e-15);
        assert!(matches!(
            durbin_watson(&[0.0, 0.0]),
            Err(Error::Degenerate(_))
        ));
        assert!(durbin_watson(&[1.0]).is_err());
    }

    #[test]
    fn recursive_residuals_on_exact_line() {
        let x: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).sin() + i as f64).collect();
        let z: Vec<f64> = (0..12).map(|i| ((i * i) % 7) as f64).collect();
        let y: Vec<f64> = x
            .iter()
            .zip(&z)
            .map(|(a, b)| 1.5 - 2.0 * a + 0.25 * b)
            .collect();
        let d = design(y, vec![x, z], true);
        let w = recursive_residuals(&d).unwrap();
        assert_eq!(w.len(), 12 - 3);
        assert!(w.iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn recursive_residuals_singular_prefix() {
        // first two rows identical → X_2'X_2 singular
        let d = design(
            vec![1.0, 2.0, 0.5, 3.0, 4.0, 2.0],
            vec![vec![1.0, 1.0, 2.0, 3.0, 5.0, 8.0]],
            true,
        );
        assert!(matches!(
            recursive_residuals(&d),
            Err(Error::SingularPrefix { t: 2 })
        ));
    }

    fn small_design() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>)> {
        (8usize..25, 1usize..4).prop_flat_map(|(n, p)| {
            (
                prop::collection::vec(-10.0..10.0f64, n),
                prop::collection::vec(prop::collection::vec(-5.0..5.0f64, n), p),
            )
        })
    }

    proptest! {
        #[test]
        fn invariants((y, cols) in small_design()) {
            let d = design(y.clone(), cols.clone(), true);
            let fit = match ols_fit(&d) { Ok(f) => f, Err(_) => return Ok(()) };
            let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            for (i, (e, f)) in fit.residuals.iter().zip(&fit.fitted).enumerate() {
                prop_assert!((e + f - y[i]).abs() < 1e-9);
            }
            prop_assert!(fit.residuals.iter().sum::<f64>().abs() < 1e-8 * ynorm.max(1.0));
            let xnorm = d.x().norm();
            for j in 0..d.k() {
                let dot: f64 = d.x().column(j).iter().zip(&fit.residuals).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() < 1e-8 * ynorm.max(1.0) * xnorm);
            }
            prop_assert!((0.0..=1.0).contains(&fit.r2));
            prop_assert!(fit.adj_r2 <= fit.r2 + 1e-15);
            if let Some(dw) = fit.dw { prop_assert!((0.0..=4.0).contains(&dw)); }
        }

        #[test]
        fn scale_equivariance((y, cols) in small_design(), a in 0.01..100.0f64) {
            let d = design(y.clone(), cols.clone(), true);
            let Ok(base) = ols_fit(&d) else { return Ok(()) };
            let scaled = ols_fit(&d.scaled_response(a)).unwrap();
            for j in 0..base.k {
                prop_assert!((scaled.coefficients[j] - a * base.coefficients[j]).abs() < 1e-9 * (1.0 + (a * base.coefficients[j]).abs()));
                prop_assert!((scaled.t_stats[j] - base.t_stats[j]).abs() < 1e-9 * (1.0 + base.t_stats[j].abs()));
            }
            prop_assert!((scaled.r2 - base.r2).abs() < 1e-9);
            if let (Some(a), Some(b)) = (scaled.f_stat, base.f_stat) {
                prop_assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()));
            }
            if let (Some(a), Some(b)) = (scaled.dw, base.dw) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn regressor_shift_only_moves_intercept((y, cols) in small_design(), shift in -50.0..50.0f64) {
            let d = design(y.clone(), cols.clone(), true);
            let Ok(base) = ols_fit(&d) else { return Ok(()) };
            let mut shifted_cols = cols.clone();
            for v in shifted_cols[0].iter_mut() { *v += shift; }
            let shifted = ols_fit(&design(y, shifted_cols, true)).unwrap();
            for j in 1..base.k {
                prop_assert!((shifted.coefficients[j] - base.coefficients[j]).abs() < 1e-9 * (1.0 + base.coefficients[j].abs()));
                prop_assert!((shifted.std_errors[j] - base.std_errors[j]).abs() < 1e-9 * (1.0 + base.std_errors[j]));
            }
            prop_assert!((shifted.r2 - base.r2).abs() < 1e-9);
        }
    }
}
