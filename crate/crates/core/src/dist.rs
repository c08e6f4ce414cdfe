//! Reference distributions for test statistics.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{beta_reg, erfc, gamma_pq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    StandardNormal,
    StudentT,
    ChiSquare,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistRef {
    pub family: Family,
    pub df1: f64,
    pub df2: f64,
}

impl DistRef {
    pub fn normal() -> Self {
        Self {
            family: Family::StandardNormal,
            df1: 0.0,
            df2: 0.0,
        }
    }

    pub fn student_t(df: f64) -> Self {
        Self {
            family: Family::StudentT,
            df1: df,
            df2: 0.0,
        }
    }

    pub fn chi_square(df: f64) -> Self {
        Self {
            family: Family::ChiSquare,
            df1: df,
            df2: 0.0,
        }
    }

    pub fn f(df1: f64, df2: f64) -> Self {
        Self {
            family: Family::F,
            df1,
            df2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |d: f64| d.is_finite() && d > 0.0;
        let valid = match self.family {
            Family::StandardNormal => true,
            Family::StudentT | Family::ChiSquare => ok(self.df1),
            Family::F => ok(self.df1) && ok(self.df2),
        };
        if valid {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "invalid degrees of freedom for {self}"
            )))
        }
    }

    /// `P(X > x)`.
    pub fn survival(&self, x: f64) -> Result<f64> {
        survival(self, x)
    }

    /// Degrees of freedom as printed in tables, e.g. `5` or `(5,19)`.
    pub fn df_label(&self) -> String {
        match self.family {
            Family::StandardNormal => String::new(),
            Family::StudentT | Family::ChiSquare => fmt_df(self.df1),
            Family::F => format!("({},{})", fmt_df(self.df1), fmt_df(self.df2)),
        }
    }
}

fn fmt_df(d: f64) -> String {
    if d.fract() == 0.0 {
        format!("{}", d as i64)
    } else {
        format!("{d}")
    }
}

impl fmt::Display for DistRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::StandardNormal => write!(f, "N(0,1)"),
            Family::StudentT => write!(f, "t({})", fmt_df(self.df1)),
            Family::ChiSquare => write!(f, "chi2({})", fmt_df(self.df1)),
            Family::F => write!(f, "F({},{})", fmt_df(self.df1), fmt_df(self.df2)),
        }
    }
}

pub fn survival(d: &DistRef, x: f64) -> Result<f64> {
    d.validate()?;
    if x.is_nan() {
        return Err(Error::Domain("survival of NaN".into()));
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    if x == f64::NEG_INFINITY {
        return Ok(1.0);
    }
    let p = match d.family {
        Family::StandardNormal => 0.5 * erfc(x / SQRT_2),
        Family::StudentT => {
            let nu = d.df1;
            let tail = 0.5 * beta_reg(0.5 * nu, 0.5, nu / (nu + x * x));
            if x >= 0.0 {
                tail
            } else {
                1.0 - tail
            }
        }
        Family::ChiSquare => {
            if x <= 0.0 {
                1.0
            } else {
                gamma_pq(0.5 * d.df1, 0.5 * x).1
            }
        }
        Family::F => {
            if x <= 0.0 {
                1.0
            } else {
                let (d1, d2) = (d.df1, d.df2);
                beta_reg(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x))
            }
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Two-sided Student-t p-value for a t-ratio.
pub fn t_two_sided(t: f64, df: f64) -> Result<f64> {
    if t.is_nan() {
        return Err(Error::Domain("t statistic is NaN".into()));
    }
    Ok((2.0 * survival(&DistRef::student_t(df), t.abs())?).min(1.0))
}
