//! CUSUM of recursive residuals with Brown–Durbin–Evans boundaries.

use serde::{Deserialize, Serialize};

use crate::critical::{cusum_coefficient, Level};
use crate::error::{Error, Result};
use crate::linreg::{ols_fit, recursive_residuals, Design, PERFECT_FIT_RTOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CusumBounds {
    /// Observation index, 1-based.
    pub t: Vec<usize>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

/// Boundary lines `±a [√(T−k) + 2(t−k)/√(T−k)]` for `t = k..T`.
pub fn cusum_bounds(t_total: usize, k: usize, level: Level) -> Result<CusumBounds> {
    if t_total <= k {
        return Err(Error::Domain(format!(
            "CUSUM bounds need T > k (T = {t_total}, k = {k})"
        )));
    }
    let a = cusum_coefficient(level);
    let root = ((t_total - k) as f64).sqrt();
    let t: Vec<usize> = (k..=t_total).collect();
    let upper: Vec<f64> = t
        .iter()
        .map(|&t| a * (root + 2.0 * (t - k) as f64 / root))
        .collect();
    let lower = upper.iter().map(|u| -u).collect();
    Ok(CusumBounds { t, upper, lower })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CusumResult {
    pub level: Level,
    pub k: usize,
    /// `t = k+1..T`, 1-based.
    pub t: Vec<usize>,
    pub recursive_residuals: Vec<f64>,
    pub psi: Vec<f64>,
    pub sigma_hat: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub breach: bool,
    pub first_breach: Option<usize>,
}

pub fn cusum(d: &Design, level: Level) -> Result<CusumResult> {
    let n = d.n();
    let k = d.k();
    let fit = ols_fit(d)?;
    if fit.rss <= PERFECT_FIT_RTOL * fit.tss.max(d.y().norm_squared()) {
        return Err(Error::Degenerate(
            "CUSUM is undefined for a perfect fit".into(),
        ));
    }
    let sigma_hat = (fit.rss / (n - k) as f64).sqrt();
    let w = recursive_residuals(d)?;
    let mut psi = Vec::with_capacity(w.len());
    let mut acc = 0.0;
    for v in &w {
        acc += v;
        psi.push(acc / sigma_hat);
    }
    let bounds = cusum_bounds(n, k, level)?;
    let upper = bounds.upper[1..].to_vec();
    let lower = bounds.lower[1..].to_vec();
    let t = bounds.t[1..].to_vec();
    let first_breach = psi
        .iter()
        .zip(&upper)
        .zip(&t)
        .find(|((p, u), _)| p.abs() > **u)
        .map(|(_, t)| *t);
    Ok(CusumResult {
        level,
        k,
        t,
        recursive_residuals: w,
        psi,
        sigma_hat,
        upper,
        lower,
        breach: first_breach.is_some(),
        first_breach,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bounds_shape() {
        let b = cusum_bounds(25, 6, Level::Five).unwrap();
        assert_eq!(b.t.first(), Some(&6));
        assert_eq!(b.t.len(), 20);
        assert!((b.upper[0] - 0.948 * 19f64.sqrt()).abs() < 1e-12);
        assert!((b.upper[19] - 3.0 * 0.948 * 19f64.sqrt()).abs() < 1e-12);
        let step = b.upper[1] - b.upper[0];
        for w in b.upper.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-12);
        }
        let one = cusum_bounds(25, 6, Level::One).unwrap();
        for (a, b) in one.upper.iter().zip(&b.upper) {
            assert!(a > b);
        }
        assert!(b.upper.iter().zip(&b.lower).all(|(u, l)| *u == -*l));
        assert!(cusum_bounds(6, 6, Level::Five).is_err());
    }

    #[test]
    fn perfect_fit_degenerate() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y = x.iter().map(|v| 1.0 + 2.0 * v).collect();
        let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
        assert!(matches!(cusum(&d, Level::Five), Err(Error::Degenerate(_))));
    }

    fn noisy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0..1.0f64, 15..40)
    }

    proptest! {
        #[test]
        fn psi_reconstruction_and_scale(e in noisy(), lambda in 0.01..100.0f64) {
            let n = e.len();
            let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let y: Vec<f64> = x.iter().zip(&e).map(|(x, e)| 0.5 * x + e).collect();
            let d = Design::new("y", y, vec![("x".into(), x)], true).unwrap();
            let r = cusum(&d, Level::Five).unwrap();
            prop_assert_eq!(r.psi.len(), n - 2);
            let mut prev = 0.0;
            for (p, w) in r.psi.iter().zip(&r.recursive_residuals) {
                prop_assert!(((p - prev) - w / r.sigma_hat).abs() < 1e-10);
                prev = *p;
            }
            let s = cusum(&d.scaled_response(lambda), Level::Five).unwrap();
            for (a, b) in r.psi.iter().zip(&s.psi) {
                prop_assert!((a - b).abs() < 1e-9);
            }
            prop_assert_eq!(s.breach, r.breach);
        }
    }
}
