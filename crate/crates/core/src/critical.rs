//! Embedded critical-value tables and response surfaces.
//!
//! * Dickey–Fuller τ, finite-sample rows (T = 25, 50, 100, 250, 500, ∞) as
//!   tabulated by Fuller (1976, Table 8.5.2). Between rows the value is
//!   linear in `1/T`; below T = 25 the first segment is extended.
//! * MacKinnon (2010) response surfaces `β∞ + β₁/T + β₂/T² + β₃/T³` for
//!   residual-based (Engle–Granger) tests with N = 1..6 variables.
//! * MacKinnon (1994) approximate asymptotic p-value surface for the
//!   single-series τ statistic.
//! * KPSS asymptotic upper-tail values (Kwiatkowski et al. 1992, Table 1).
//! * Brown–Durbin–Evans CUSUM boundary constants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::erfc;

/// The three significance levels every table supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "0.01")]
    One,
    #[serde(rename = "0.05")]
    Five,
    #[serde(rename = "0.10")]
    Ten,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::One, Level::Five, Level::Ten];

    pub fn from_f64(level: f64) -> Result<Self> {
        const EPS: f64 = 1e-9;
        if (level - 0.01).abs() < EPS {
            Ok(Level::One)
        } else if (level - 0.05).abs() < EPS {
            Ok(Level::Five)
        } else if (level - 0.10).abs() < EPS {
            Ok(Level::Ten)
        } else {
            Err(Error::Domain(format!(
                "unsupported significance level {level}; use 0.01, 0.05 or 0.10"
            )))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Level::One => 0.01,
            Level::Five => 0.05,
            Level::Ten => 0.10,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::One => f.write_str("1%"),
            Level::Five => f.write_str("5%"),
            Level::Ten => f.write_str("10%"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let v = if let Some(pct) = s.strip_suffix('%') {
            pct.trim().parse::<f64>().map(|p| p / 100.0)
        } else {
            s.parse::<f64>()
        }
        .map_err(|_| Error::Domain(format!("cannot parse significance level `{s}`")))?;
        Level::from_f64(v)
    }
}

/// Deterministic terms in a unit-root regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deterministic {
    None,
    Constant,
    ConstantTrend,
}

impl Deterministic {
    pub fn as_str(self) -> &'static str {
        match self {
            Deterministic::None => "none",
            Deterministic::Constant => "constant",
            Deterministic::ConstantTrend => "constant+trend",
        }
    }
}

impl fmt::Display for Deterministic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Deterministic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "n" | "nc" => Ok(Deterministic::None),
            "constant" | "c" | "level" => Ok(Deterministic::Constant),
            "constant+trend" | "ct" | "trend" => Ok(Deterministic::ConstantTrend),
            other => Err(Error::Domain(format!(
                "unknown deterministic spec `{other}`"
            ))),
        }
    }
}

const FULLER_T: [f64; 6] = [25.0, 50.0, 100.0, 250.0, 500.0, f64::INFINITY];

// rows: sample size; columns: 1%, 5%, 10%
const FULLER_NONE: [[f64; 3]; 6] = [
    [-2.66, -1.95, -1.60],
    [-2.62, -1.95, -1.61],
    [-2.60, -1.95, -1.61],
    [-2.58, -1.95, -1.62],
    [-2.58, -1.95, -1.62],
    [-2.58, -1.95, -1.62],
];
const FULLER_CONSTANT: [[f64; 3]; 6] = [
    [-3.75, -3.00, -2.63],
    [-3.58, -2.93, -2.60],
    [-3.51, -2.89, -2.58],
    [-3.46, -2.88, -2.57],
    [-3.44, -2.87, -2.57],
    [-3.43, -2.86, -2.57],
];
const FULLER_TREND: [[f64; 3]; 6] = [
    [-4.38, -3.60, -3.24],
    [-4.15, -3.50, -3.18],
    [-4.04, -3.45, -3.15],
    [-3.99, -3.43, -3.13],
    [-3.98, -3.42, -3.13],
    [-3.96, -3.41, -3.12],
];

/// Finite-sample Dickey–Fuller τ critical value.
pub fn adf_critical_value(sample_size: usize, level: Level, spec: Deterministic) -> Result<f64> {
    if sample_size < 10 {
        return Err(Error::Domain(format!(
            "ADF critical values need T >= 10, got {sample_size}"
        )));
    }
    let table = match spec {
        Deterministic::None => &FULLER_NONE,
        Deterministic::Constant => &FULLER_CONSTANT,
        Deterministic::ConstantTrend => &FULLER_TREND,
    };
    Ok(interpolate_inverse_t(
        sample_size as f64,
        table,
        level.index(),
    ))
}

/// The asymptotic (T = ∞) row.
pub fn adf_asymptotic_critical_value(level: Level, spec: Deterministic) -> f64 {
    let table = match spec {
        Deterministic::None => &FULLER_NONE,
        Deterministic::Constant => &FULLER_CONSTANT,
        Deterministic::ConstantTrend => &FULLER_TREND,
    };
    table[5][level.index()]
}

fn interpolate_inverse_t(t: f64, table: &[[f64; 3]; 6], col: usize) -> f64 {
    let inv = 1.0 / t;
    let inv_row = |i: usize| 1.0 / FULLER_T[i];
    // segment whose 1/T interval contains inv; first segment extends past T = 25
    let seg = (0..5).find(|&i| inv >= inv_row(i + 1)).unwrap_or(4);
    let (x0, x1) = (inv_row(seg), inv_row(seg + 1));
    let (y0, y1) = (table[seg][col], table[seg + 1][col]);
    y1 + (y0 - y1) * (inv - x1) / (x0 - x1)
}

// MacKinnon (2010), Table 2: [β∞, β₁, β₂, β₃] per level (1%, 5%, 10%).
const MACKINNON_NONE_1: [[f64; 4]; 3] = [
    [-2.56574, -2.2358, -3.627, 0.0],
    [-1.94100, -0.2686, -3.365, 31.223],
    [-1.61682, 0.2656, -2.714, 25.364],
];
const MACKINNON_TREND_1: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];
const MACKINNON_CONSTANT: [[[f64; 4]; 3]; 6] = [
    [
        [-3.43035, -6.5393, -16.786, -79.433],
        [-2.86154, -2.8903, -4.234, -40.040],
        [-2.56677, -1.5384, -2.809, 0.0],
    ],
    [
        [-3.89644, -10.9519, -33.527, 0.0],
        [-3.33613, -6.1101, -6.823, 0.0],
        [-3.04445, -4.2412, -2.720, 0.0],
    ],
    [
        [-4.29374, -14.4354, -33.195, 47.433],
        [-3.74066, -8.5632, -10.852, 27.982],
        [-3.45218, -6.2143, -3.718, 0.0],
    ],
    [
        [-4.64332, -18.1031, -37.972, 0.0],
        [-4.09600, -11.2349, -11.175, 0.0],
        [-3.81020, -8.3931, -4.137, 0.0],
    ],
    [
        [-4.95756, -21.8883, -45.142, 0.0],
        [-4.41519, -14.0405, -12.575, 0.0],
        [-4.13157, -10.7417, -3.784, 0.0],
    ],
    [
        [-5.24568, -25.6688, -57.737, 88.639],
        [-4.70693, -16.9178, -17.492, 60.007],
        [-4.42501, -13.1875, -5.104, 27.877],
    ],
];

/// Largest variable count supported by [`engle_granger_critical_value`].
pub const MAX_COINTEGRATION_VARIABLES: usize = 6;

/// Response-surface critical value for a τ statistic computed on residuals
/// of a cointegrating regression among `variables` series (response
/// included). `variables == 1` is the ordinary single-series case.
pub fn engle_granger_critical_value(
    sample_size: usize,
    variables: usize,
    level: Level,
    spec: Deterministic,
) -> Result<f64> {
    if sample_size < 10 {
        return Err(Error::Domain(format!(
            "critical values need T >= 10, got {sample_size}"
        )));
    }
    if variables == 0 || variables > MAX_COINTEGRATION_VARIABLES {
        return Err(Error::Domain(format!(
            "response surface covers 1..={MAX_COINTEGRATION_VARIABLES} variables, got {variables}"
        )));
    }
    let row = match (spec, variables) {
        (Deterministic::None, 1) => MACKINNON_NONE_1[level.index()],
        (Deterministic::ConstantTrend, 1) => MACKINNON_TREND_1[level.index()],
        (Deterministic::Constant, n) => MACKINNON_CONSTANT[n - 1][level.index()],
        (other, n) => {
            return Err(Error::Domain(format!(
                "no response surface for {other} with {n} variables"
            )))
        }
    };
    let inv = 1.0 / sample_size as f64;
    Ok(row[0] + inv * (row[1] + inv * (row[2] + inv * row[3])))
}

// MacKinnon (1994) p-value surface, N = 1.
struct PSurface {
    tau_min: f64,
    tau_max: f64,
    tau_star: f64,
    small: [f64; 3],
    large: [f64; 4],
}

const PSURF_NONE: PSurface = PSurface {
    tau_min: -19.04,
    tau_max: f64::INFINITY,
    tau_star: -1.04,
    small: [0.6344, 1.2378, 0.032496],
    large: [0.4797, 0.93557, -0.06999, 0.033066],
};
const PSURF_CONSTANT: PSurface = PSurface {
    tau_min: -18.83,
    tau_max: 2.74,
    tau_star: -1.61,
    small: [2.1659, 1.4412, 0.038269],
    large: [1.7339, 0.93202, -0.12745, -0.010368],
};
const PSURF_TREND: PSurface = PSurface {
    tau_min: -16.18,
    tau_max: 0.7,
    tau_star: -2.89,
    small: [3.2512, 1.6047, 0.049588],
    large: [2.5261, 0.61654, -0.37956, -0.060285],
};

/// Approximate asymptotic p-value of a single-series τ statistic.
pub fn adf_pvalue_surface(stat: f64, spec: Deterministic) -> f64 {
    let s = match spec {
        Deterministic::None => &PSURF_NONE,
        Deterministic::Constant => &PSURF_CONSTANT,
        Deterministic::ConstantTrend => &PSURF_TREND,
    };
    if stat > s.tau_max {
        return 1.0;
    }
    if stat < s.tau_min {
        return 0.0;
    }
    let z = if stat <= s.tau_star {
        s.small[0] + stat * (s.small[1] + stat * s.small[2])
    } else {
        s.large[0] + stat * (s.large[1] + stat * (s.large[2] + stat * s.large[3]))
    };
    // standard normal cdf
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Null hypothesis of a KPSS test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KpssSpec {
    Level,
    Trend,
}

impl FromStr for KpssSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "level" | "c" => Ok(KpssSpec::Level),
            "trend" | "ct" => Ok(KpssSpec::Trend),
            other => Err(Error::Domain(format!("unknown KPSS spec `{other}`"))),
        }
    }
}

/// Upper-tail levels tabulated for KPSS, descending significance.
const KPSS_LEVELS: [f64; 4] = [0.10, 0.05, 0.025, 0.01];
const KPSS_LEVEL_CV: [f64; 4] = [0.347, 0.463, 0.574, 0.739];
const KPSS_TREND_CV: [f64; 4] = [0.119, 0.146, 0.176, 0.216];

pub fn kpss_critical_value(level: Level, spec: KpssSpec) -> f64 {
    let table = kpss_table(spec);
    match level {
        Level::Ten => table[0],
        Level::Five => table[1],
        Level::One => table[3],
    }
}

fn kpss_table(spec: KpssSpec) -> &'static [f64; 4] {
    match spec {
        KpssSpec::Level => &KPSS_LEVEL_CV,
        KpssSpec::Trend => &KPSS_TREND_CV,
    }
}

/// p-value interval `[lower, upper]` read off a table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower <= 0.0 {
            write!(f, "<{}", fmt_p(self.upper))
        } else if self.upper >= 1.0 {
            write!(f, ">{}", fmt_p(self.lower))
        } else {
            write!(f, "{}-{}", fmt_p(self.lower), fmt_p(self.upper))
        }
    }
}

fn fmt_p(p: f64) -> String {
    if ((p * 100.0).round() - p * 100.0).abs() < 1e-9 {
        format!("{p:.2}")
    } else {
        format!("{p:.3}")
    }
}

/// Left-tail bracket from critical values at 1%, 5%, 10%.
pub fn left_tail_bracket(stat: f64, cv: [f64; 3]) -> Bracket {
    let levels = [0.01, 0.05, 0.10];
    let mut lower = 0.0;
    for (i, c) in cv.iter().enumerate() {
        if stat < *c {
            return Bracket {
                lower,
                upper: levels[i],
            };
        }
        lower = levels[i];
    }
    Bracket { lower, upper: 1.0 }
}

pub fn kpss_bracket(stat: f64, spec: KpssSpec) -> Bracket {
    let table = kpss_table(spec);
    let mut upper = 1.0;
    for (i, c) in table.iter().enumerate() {
        if stat > *c {
            upper = KPSS_LEVELS[i];
        } else {
            return Bracket {
                lower: KPSS_LEVELS[i],
                upper,
            };
        }
    }
    Bracket { lower: 0.0, upper }
}

/// Brown–Durbin–Evans constant `a` for the CUSUM boundary lines.
pub fn cusum_coefficient(level: Level) -> f64 {
    match level {
        Level::One => 1.143,
        Level::Five => 0.948,
        Level::Ten => 0.850,
    }
}
