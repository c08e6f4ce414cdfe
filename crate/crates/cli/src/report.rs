//! Turning library results into [`Table`]s.

use cotrend_core::critical::Level;
use cotrend_core::cusum::CusumResult;
use cotrend_core::diagnostics::CorrelationMatrix;
use cotrend_core::linreg::OlsFit;
use cotrend_core::result::{PValue, Reference, Statistic, TestResult};
use cotrend_core::unitroot::AdfResult;

use crate::format::{Cell, Table};

pub const TEST_HEADERS: [&str; 10] = [
    "test",
    "statistic",
    "value",
    "reference",
    "p_value",
    "p_estimate",
    "cv_1pct",
    "cv_5pct",
    "cv_10pct",
    "reject_5pct",
];

fn reference_label(s: &Statistic) -> String {
    match &s.reference {
        Reference::Distribution { dist } => dist.to_string(),
        Reference::Table { .. } => "table".into(),
    }
}

pub fn p_cell(s: &Statistic) -> Cell {
    match s.p_value {
        PValue::Exact { p } => Cell::Num(p),
        PValue::Bracket { bracket } => Cell::text(bracket.to_string()),
    }
}

pub fn yes_no(b: bool) -> Cell {
    Cell::text(if b { "yes" } else { "no" })
}

/// One row per statistic; decisions follow the first statistic of each
/// test, the others are judged on their own p-values.
pub fn test_rows(table: &mut Table, results: &[&TestResult]) {
    for r in results {
        for s in &r.statistics {
            let cv = |l| Cell::opt(s.critical_value(l));
            let reject = s.decide(Level::Five).map(|d| d.is_reject()).ok();
            table.row(vec![
                Cell::text(&r.test_name),
                Cell::text(&s.label),
                Cell::Num(s.value),
                Cell::text(reference_label(s)),
                p_cell(s),
                Cell::opt(s.p_estimate),
                cv(Level::One),
                cv(Level::Five),
                cv(Level::Ten),
                reject.map_or(Cell::Empty, yes_no),
            ]);
        }
    }
}

pub fn tests_table(name: &str, title: &str, results: &[&TestResult]) -> Table {
    let mut t = Table::new(name, title, &TEST_HEADERS);
    test_rows(&mut t, results);
    t
}

pub fn adf_table(name: &str, title: &str, results: &[AdfResult]) -> Table {
    let mut t = Table::new(
        name,
        title,
        &[
            "variable",
            "deterministic",
            "lag",
            "max_lag",
            "n_eff",
            "statistic",
            "p_estimate",
            "p_bracket",
            "cv_1pct",
            "cv_5pct",
            "cv_10pct",
            "reject_5pct",
        ],
    );
    for r in results {
        t.row(vec![
            Cell::text(&r.series),
            Cell::text(r.deterministic.as_str()),
            Cell::Int(r.lag as i64),
            Cell::Int(r.max_lag as i64),
            Cell::Int(r.n_eff as i64),
            Cell::Num(r.statistic),
            Cell::opt(r.p_estimate),
            Cell::text(r.bracket.to_string()),
            Cell::Num(r.critical_value(Level::One)),
            Cell::Num(r.critical_value(Level::Five)),
            Cell::Num(r.critical_value(Level::Ten)),
            yes_no(r.rejects(Level::Five)),
        ]);
    }
    t
}

/// Coefficient rows followed by fit statistics in the `coefficient`
/// column.
pub fn ols_table(name: &str, title: &str, fit: &OlsFit) -> Table {
    let mut t = Table::new(
        name,
        title,
        &["term", "coefficient", "std_error", "t_stat", "p_value"],
    );
    for i in 0..fit.names.len() {
        t.row(vec![
            Cell::text(&fit.names[i]),
            Cell::Num(fit.coefficients[i]),
            Cell::Num(fit.std_errors[i]),
            Cell::Num(fit.t_stats[i]),
            Cell::Num(fit.p_values[i]),
        ]);
    }
    for (label, v) in fit_statistics(fit) {
        t.row(vec![
            Cell::text(label),
            Cell::opt(v),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    t.note(format!(
        "dependent variable: {}, n = {}, k = {}",
        fit.response, fit.n, fit.k
    ));
    t
}

pub fn fit_statistics(fit: &OlsFit) -> Vec<(&'static str, Option<f64>)> {
    vec![
        ("R-squared", Some(fit.r2)),
        ("Adjusted R-squared", Some(fit.adj_r2)),
        ("F-statistic", fit.f_stat),
        ("Prob(F)", fit.f_prob),
        ("SIC", Some(fit.sic)),
        ("Durbin-Watson", fit.dw),
    ]
}

/// Square matrix with the upper triangle left blank.
pub fn correlation_table(name: &str, title: &str, m: &CorrelationMatrix) -> Table {
    let mut headers = vec!["variable"];
    headers.extend(m.labels.iter().map(String::as_str));
    let mut t = Table::new(name, title, &headers);
    for (i, label) in m.labels.iter().enumerate() {
        let mut row = vec![Cell::text(label)];
        for j in 0..m.labels.len() {
            row.push(if j <= i {
                Cell::Num(m.values[i][j])
            } else {
                Cell::Empty
            });
        }
        t.row(row);
    }
    t
}

/// CUSUM path and boundaries; `first_year` labels observation 1.
pub fn cusum_table(name: &str, title: &str, c: &CusumResult, first_year: i32) -> Table {
    let mut t = Table::new(
        name,
        title,
        &["t", "year", "recursive_residual", "psi", "lower", "upper"],
    );
    for i in 0..c.t.len() {
        t.row(vec![
            Cell::Int(c.t[i] as i64),
            Cell::Int(first_year as i64 + c.t[i] as i64 - 1),
            Cell::Num(c.recursive_residuals[i]),
            Cell::Num(c.psi[i]),
            Cell::Num(c.lower[i]),
            Cell::Num(c.upper[i]),
        ]);
    }
    t.note(cusum_verdict(c, first_year));
    t
}

/// `no breach at 5%`, or the first year where Ψ leaves the band.
pub fn cusum_verdict(c: &CusumResult, first_year: i32) -> String {
    match c.first_breach {
        None => format!("no breach at {}", c.level),
        Some(t) => format!(
            "breach at {} (first at t = {t}, year {})",
            c.level,
            first_year as i64 + t as i64 - 1
        ),
    }
}
