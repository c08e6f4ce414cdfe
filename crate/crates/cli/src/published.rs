//! Reference values printed next to our own estimates, as published for
//! the 1995–2019 model. Rounded as published.

/// year, inflation, nominal deposit rate, real rate
pub const RATES: [(i32, f64, f64, f64); 8] = [
    (2012, 2.6, 3.0, 0.4),
    (2013, 2.6, 3.0, 0.4),
    (2014, 1.9, 2.8, 0.9),
    (2015, 1.4, 1.5, 0.1),
    (2016, 2.0, 1.5, -0.5),
    (2017, 1.6, 1.5, -0.1),
    (2018, 2.1, 1.5, -0.6),
    (2019, 2.9, 1.5, -1.4),
];

/// Averages of inflation, nominal and real rates.
pub const RATE_AVERAGES: (f64, f64, f64) = (2.14, 2.04, -0.1);

/// Change-over-period row for dependency ratio, birth rate and life
/// expectancy.
pub const DEMOGRAPHIC_CHANGE: [f64; 3] = [2.36, -1.04, 0.32];

/// Dependency ratio in the last demographic year.
pub const DEPENDENCY_RATIO_2019: f64 = 41.50;

/// Mean annual growth of pension expenditure, 2012–2020, percent.
pub const EXPENDITURE_GROWTH: f64 = 8.1;

/// Correlation lower triangle without the diagonal.
pub const CORRELATIONS: [(&str, &str, f64); 15] = [
    ("Birth", "Expenditure", -0.72),
    ("GDP", "Expenditure", -0.63),
    ("GDP", "Birth", 0.28),
    ("Employment", "Expenditure", -0.93),
    ("Employment", "Birth", 0.91),
    ("Employment", "GDP", 0.44),
    ("Oldies", "Expenditure", 0.96),
    ("Oldies", "Birth", -0.87),
    ("Oldies", "GDP", -0.52),
    ("Oldies", "Employment", -0.97),
    ("Urban", "Expenditure", 0.94),
    ("Urban", "Birth", -0.89),
    ("Urban", "GDP", -0.44),
    ("Urban", "Employment", -0.99),
    ("Urban", "Oldies", 0.98),
];

/// ADF statistic and p-value per variable, in published order.
pub const UNIT_ROOT: [(&str, f64, f64); 6] = [
    ("Employment", -3.27, 0.03),
    ("Urban", -1.72, 0.41),
    ("Birth", -0.69, 0.83),
    ("Expenditure", -0.10, 0.94),
    ("GDP", -1.38, 0.57),
    ("Oldies", 1.32, 0.99),
];

/// term, coefficient, t statistic, p-value
pub const COEFFICIENTS: [(&str, f64, f64, f64); 6] = [
    ("C", 12.76, 0.62, 0.54),
    ("Birth", 1.04, 5.59, 0.00),
    ("GDP", -0.11, -3.63, 0.00),
    ("Employment", -0.38, -1.55, 0.14),
    ("Oldies", 0.64, 4.94, 0.00),
    ("Urban", -0.13, -0.66, 0.52),
];

pub const R2: f64 = 0.995;
pub const ADJ_R2: f64 = 0.993;
pub const F_STAT: f64 = 700.60;
pub const SIC: f64 = -0.40;
pub const DW: f64 = 1.68;

/// Residual diagnostics: (test, statistic, value, p-value).
pub const DIAGNOSTICS: [(&str, &str, f64, f64); 5] = [
    ("Breusch-Pagan", "F", 2.11, 0.10),
    ("Breusch-Pagan", "LM", 8.94, 0.11),
    ("Breusch-Godfrey", "F", 2.69, 0.09),
    ("Breusch-Godfrey", "LM", 6.01, 0.05),
    ("Jarque-Bera", "JB", 1.43, 0.49),
];

pub const RESIDUAL_ADF: f64 = -5.07;
pub const RESIDUAL_ADF_CV: f64 = -3.00;
pub const RESIDUAL_KPSS: f64 = 0.13;
pub const RESIDUAL_KPSS_CV: f64 = 0.46;

/// RESET: (statistic, value, p-value).
pub const RESET: [(&str, f64, f64); 3] = [("t", 1.29, 0.21), ("F", 1.68, 0.21), ("LR", 2.23, 0.13)];

pub fn correlation(a: &str, b: &str) -> Option<f64> {
    CORRELATIONS
        .iter()
        .find(|(r, c, _)| (*r == a && *c == b) || (*r == b && *c == a))
        .map(|t| t.2)
}

pub fn unit_root(name: &str) -> Option<(f64, f64)> {
    UNIT_ROOT.iter().find(|t| t.0 == name).map(|t| (t.1, t.2))
}

pub fn coefficient(name: &str) -> Option<(f64, f64, f64)> {
    COEFFICIENTS
        .iter()
        .find(|t| t.0 == name)
        .map(|t| (t.1, t.2, t.3))
}
