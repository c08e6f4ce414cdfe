//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

/// Gauss–Jordan inverse with partial pivoting.
pub fn invert(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        m.swap(c, p);
        let piv = m[c][c];
        assert!(piv != 0.0, "singular matrix in oracle");
        for v in m[c].iter_mut() {
            *v /= piv;
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let f = row[c];
            if r != c && f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Rows of X (with leading 1 when `intercept`).
pub fn rows(cols: &[Vec<f64>], intercept: bool) -> Vec<Vec<f64>> {
    let n = cols[0].len();
    (0..n)
        .map(|t| {
            let mut r = Vec::new();
            if intercept {
                r.push(1.0);
            }
            r.extend(cols.iter().map(|c| c[t]));
            r
        })
        .collect()
}

pub fn xtx(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = x[0].len();
    let mut m = vec![vec![0.0; k]; k];
    for r in x {
        for i in 0..k {
            for j in 0..k {
                m[i][j] += r[i] * r[j];
            }
        }
    }
    m
}

/// β̂ = (X'X)⁻¹X'y from the normal equations.
pub fn normal_equations(x: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let k = x[0].len();
    let inv = invert(&xtx(x));
    let mut xty = vec![0.0; k];
    for (r, yv) in x.iter().zip(y) {
        for i in 0..k {
            xty[i] += r[i] * yv;
        }
    }
    (0..k)
        .map(|i| (0..k).map(|j| inv[i][j] * xty[j]).sum())
        .collect()
}

/// Recursive residuals by refitting every prefix from scratch.
pub fn brute_recursive(x: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let k = x[0].len();
    (k..y.len())
        .map(|t| {
            let b = normal_equations(&x[..t], &y[..t]);
            let inv = invert(&xtx(&x[..t]));
            let xt = &x[t];
            let pred: f64 = xt.iter().zip(&b).map(|(a, b)| a * b).sum();
            let mut q = 0.0;
            for i in 0..k {
                for j in 0..k {
                    q += xt[i] * inv[i][j] * xt[j];
                }
            }
            (y[t] - pred) / (1.0 + q).sqrt()
        })
        .collect()
}
