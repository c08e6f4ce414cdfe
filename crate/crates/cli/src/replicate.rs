//! The end-to-end replication run: every statistic is computed first, then
//! the tables, figure data and manifest are written in a fixed order.

use std::path::{Path, PathBuf};

use cotrend_core::coint::{engle_granger_with, CointegrationResult};
use cotrend_core::critical::{Deterministic, Level};
use cotrend_core::cusum::{cusum, CusumResult};
use cotrend_core::derived::{
    change_over_period, dependency_ratio, growth_rate, mean, mean_annual_change, real_rate_series,
};
use cotrend_core::diagnostics::{
    breusch_godfrey, breusch_pagan, jarque_bera, pearson_matrix, ramsey_reset, CorrelationMatrix,
};
use cotrend_core::linreg::{ols_fit, Design, OlsFit};
use cotrend_core::result::TestResult;
use cotrend_core::series::{AnnualSeries, Frame, Units};
use cotrend_core::table::{load_table, Schema};
use cotrend_core::unitroot::{adf_test, AdfResult, AdfSpec, Bandwidth, MaxLag};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::config::{hex, RunConfig};
use crate::data;
use crate::error::{CliError, CliResult, StageExt};
use crate::format::{Cell, Format, Table};
use crate::published as publ;
use crate::report;
use crate::svg;

/// Differences larger than this (after both sides are rounded to two
/// decimals) are flagged against the published values.
pub const DISCREPANCY_TOL: f64 = 0.011;

#[derive(Debug, Clone)]
pub struct RateRow {
    pub year: i32,
    pub inflation: f64,
    pub nominal: f64,
    pub real: f64,
}

#[derive(Debug, Clone)]
pub struct UnitRootRow {
    pub variable: String,
    pub configured: Deterministic,
    pub constant: AdfResult,
    pub trend: AdfResult,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub rates: Vec<RateRow>,
    pub rate_averages: (f64, f64, f64),
    pub demographics: Vec<AnnualSeries>,
    /// Dependency ratio recomputed from population counts, by year.
    pub dependency_from_counts: Vec<(i32, f64)>,
    /// Mean annual growth of the response over 2012–2020, when covered.
    pub response_growth: Option<f64>,
    pub frame: Frame,
    pub correlations: CorrelationMatrix,
    pub unit_roots: Vec<UnitRootRow>,
    pub design: Design,
    pub fit: OlsFit,
    pub breusch_pagan: TestResult,
    pub breusch_godfrey: TestResult,
    pub jarque_bera: TestResult,
    pub cointegration: CointegrationResult,
    pub reset: TestResult,
    pub cusum: CusumResult,
}

fn rates(path: &Path) -> CliResult<(Vec<RateRow>, (f64, f64, f64))> {
    let schema = Schema::default()
        .column("inflation", "inflation", Units::Percent)
        .column("nominal_deposit_rate", "nominal", Units::Percent);
    let s = load_table(path, &schema).stage("table1")?;
    let real = real_rate_series(&s[1], &s[0]).stage("table1")?;
    let (inf, nom, re) = (
        s[0].to_vec().stage("table1")?,
        s[1].to_vec().stage("table1")?,
        real.to_vec().stage("table1")?,
    );
    let rows = s[0]
        .years()
        .enumerate()
        .map(|(i, year)| RateRow {
            year,
            inflation: inf[i],
            nominal: nom[i],
            real: re[i],
        })
        .collect();
    Ok((rows, (mean(&inf), mean(&nom), mean(&re))))
}

fn demographics(path: &Path) -> CliResult<Vec<AnnualSeries>> {
    let schema = Schema::default()
        .column("dependency_ratio", "dependency_ratio", Units::Ratio)
        .column("birth_rate", "birth_rate", Units::PerThousand)
        .column("life_expectancy", "life_expectancy", Units::Years);
    load_table(path, &schema).stage("table2")
}

fn dependency_from_counts(path: &Path) -> CliResult<Vec<(i32, f64)>> {
    let schema = Schema::default()
        .column("pop_0_14", "children", Units::Ratio)
        .column("pop_15_64", "working", Units::Ratio)
        .column("pop_65_up", "seniors", Units::Ratio);
    let s = load_table(path, &schema).stage("table2")?;
    let (c, w, o) = (
        s[0].to_vec().stage("table2")?,
        s[1].to_vec().stage("table2")?,
        s[2].to_vec().stage("table2")?,
    );
    s[0].years()
        .enumerate()
        .map(|(i, y)| Ok((y, dependency_ratio(c[i], o[i], w[i]).stage("table2")?)))
        .collect()
}

fn response_growth(series: &[AnnualSeries], response: &str) -> CliResult<Option<f64>> {
    let Some(s) = series.iter().find(|s| s.name() == response) else {
        return Ok(None);
    };
    if s.start_year() > 2012 || s.end_year() < 2020 {
        return Ok(None);
    }
    let window = s.slice_years(2012, 2020).stage("table2")?;
    let g = growth_rate(&window).stage("table2")?;
    Ok(Some(mean(&g.to_vec().stage("table2")?)))
}

/// Runs every estimation step. Nothing is written.
pub fn analyze(cfg: &RunConfig, base: &Path) -> CliResult<Analysis> {
    cfg.validate()?;
    let path = |p: &Path| RunConfig::resolve(base, p);
    let level = cfg.level()?;

    let (rates, rate_averages) = rates(&path(&cfg.rates_data))?;
    let demographics = demographics(&path(&cfg.demographics_data))?;
    let dependency_from_counts = dependency_from_counts(&path(&cfg.age_groups_data))?;

    let series = data::load_series(&path(&cfg.data), cfg.half_window)?;
    let names: Vec<&str> = cfg.variables().collect();
    let frame = data::frame(&series, &names, Some(cfg.first_year), Some(cfg.last_year))?;
    let response_growth = response_growth(&series, &cfg.response)?;

    let correlations = pearson_matrix(&frame).stage("table3")?;

    let max_lag = cfg.adf_max_lag.map_or(MaxLag::Auto, MaxLag::Fixed);
    let adf = |name: &str, det| {
        let spec = AdfSpec {
            max_lag,
            ..AdfSpec::new(det)
        };
        adf_test(name, &frame.column(name)?, &spec)
    };
    let unit_roots = names
        .iter()
        .map(|n| {
            Ok(UnitRootRow {
                variable: n.to_string(),
                configured: cfg.deterministic_for(n),
                constant: adf(n, Deterministic::Constant)?,
                trend: adf(n, Deterministic::ConstantTrend)?,
            })
        })
        .collect::<cotrend_core::Result<Vec<_>>>()
        .stage("table4")?;

    let regressors: Vec<&str> = cfg.regressors.iter().map(String::as_str).collect();
    let design = Design::from_frame(&frame, &cfg.response, &regressors, true).stage("table5")?;
    let fit = ols_fit(&design).stage("table5")?;

    let bp = breusch_pagan(&fit, &design).stage("table6")?;
    let bg = breusch_godfrey(&fit, &design, cfg.bg_order).stage("table6")?;
    let jb = jarque_bera(&fit.residuals).stage("table6")?;

    let bandwidth = cfg.kpss_bandwidth.map_or(Bandwidth::Auto, Bandwidth::Fixed);
    let cointegration = engle_granger_with(
        &design,
        cfg.critical_value_mode,
        Level::Five,
        max_lag,
        bandwidth,
    )
    .stage("table7")?;
    let reset = ramsey_reset(&fit, &design, cfg.reset_max_power).stage("table7")?;

    let cusum = cusum(&design, level).stage("figure4")?;

    Ok(Analysis {
        rates,
        rate_averages,
        demographics,
        dependency_from_counts,
        response_growth,
        frame,
        correlations,
        unit_roots,
        design,
        fit,
        breusch_pagan: bp,
        breusch_godfrey: bg,
        jarque_bera: jb,
        cointegration,
        reset,
        cusum,
    })
}

fn differs(ours: f64, published: f64) -> bool {
    let r = |v: f64| (v * 100.0).round() / 100.0;
    (r(ours) - published).abs() > DISCREPANCY_TOL
}

fn flag(ours: f64, published: f64) -> Cell {
    Cell::text(if differs(ours, published) {
        "DIFF"
    } else {
        "ok"
    })
}

pub fn table1(a: &Analysis) -> Table {
    let mut t = Table::new(
        "table1",
        "Inflation, nominal and real deposit rates (%)",
        &[
            "year",
            "inflation",
            "nominal_rate",
            "real_rate",
            "published_real",
            "check",
        ],
    );
    for r in &a.rates {
        let published = publ::RATES.iter().find(|p| p.0 == r.year).map(|p| p.3);
        t.row(vec![
            Cell::Int(r.year as i64),
            Cell::Num(r.inflation),
            Cell::Num(r.nominal),
            Cell::Num(r.real),
            Cell::opt(published),
            published.map_or(Cell::Empty, |p| flag(r.real, p)),
        ]);
    }
    let (i, n, re) = a.rate_averages;
    t.row(vec![
        Cell::text("Average"),
        Cell::Num(i),
        Cell::Num(n),
        Cell::Num(re),
        Cell::Num(publ::RATE_AVERAGES.2),
        flag(re, publ::RATE_AVERAGES.2),
    ]);
    t
}

pub fn table2(a: &Analysis) -> CliResult<Table> {
    let mut t = Table::new(
        "table2",
        "Dependency ratio, birth rate and life expectancy",
        &["row", "dependency_ratio", "birth_rate", "life_expectancy"],
    );
    let d = &a.demographics;
    let cols: Vec<Vec<f64>> = d
        .iter()
        .map(|s| s.to_vec())
        .collect::<cotrend_core::Result<_>>()
        .stage("table2")?;
    for (i, year) in d[0].years().enumerate() {
        let mut row = vec![Cell::text(year.to_string())];
        row.extend(cols.iter().map(|c| Cell::Num(c[i])));
        t.row(row);
    }
    let change: Vec<f64> = d
        .iter()
        .map(change_over_period)
        .collect::<cotrend_core::Result<_>>()
        .stage("table2")?;
    let annual: Vec<f64> = d
        .iter()
        .map(mean_annual_change)
        .collect::<cotrend_core::Result<_>>()
        .stage("table2")?;
    let labelled = |label: &str, v: &[f64]| {
        let mut row = vec![Cell::text(label)];
        row.extend(v.iter().map(|x| Cell::Num(*x)));
        row
    };
    t.row(labelled("change (last - first)", &change));
    t.row(labelled("mean annual change", &annual));
    t.row(labelled("published change", &publ::DEMOGRAPHIC_CHANGE));
    let mut flags = vec![Cell::text("check")];
    for j in 0..3 {
        let p = publ::DEMOGRAPHIC_CHANGE[j];
        let matches = !differs(change[j], p) || !differs(annual[j], p);
        flags.push(Cell::text(if matches { "ok" } else { "DIFF" }));
    }
    t.row(flags);

    for (year, ratio) in &a.dependency_from_counts {
        t.note(format!(
            "dependency ratio {year} from age-group counts: {} (published {:.2})",
            crate::format::fmt2(*ratio),
            publ::DEPENDENCY_RATIO_2019
        ));
    }
    if let Some(g) = a.response_growth {
        t.note(format!(
            "mean annual growth of {} 2012-2020: {}% (published {}%)",
            a.fit.response,
            crate::format::fmt2(g),
            publ::EXPENDITURE_GROWTH
        ));
    }
    Ok(t)
}

pub fn table3(a: &Analysis) -> Table {
    let mut t = report::correlation_table(
        "table3",
        &format!(
            "Pearson correlations, {}-{}",
            a.frame.first_year(),
            a.frame.last_year()
        ),
        &a.correlations,
    );
    let mut worst: Option<(String, f64)> = None;
    for (r, c, v) in a.correlations.lower_triangle() {
        if let Some(p) = publ::correlation(r, c) {
            let d = (v - p).abs();
            if worst.as_ref().is_none_or(|w| d > w.1) {
                worst = Some((format!("{r}/{c}"), d));
            }
        }
    }
    if let Some((pair, d)) = worst {
        t.note(format!(
            "largest deviation from published correlations: {pair} ({})",
            crate::format::fmt2(d)
        ));
    }
    t
}

pub fn table4(a: &Analysis) -> Table {
    let mut t = Table::new(
        "table4",
        "ADF unit-root tests on levels, SIC lag selection",
        &[
            "variable",
            "deterministic",
            "lag",
            "statistic",
            "p_estimate",
            "cv_5pct",
            "configured",
            "published_statistic",
            "published_p",
            "closest",
        ],
    );
    for u in &a.unit_roots {
        let published = publ::unit_root(&u.variable);
        let dc = published.map(|p| (u.constant.statistic - p.0).abs());
        let dt = published.map(|p| (u.trend.statistic - p.0).abs());
        for r in [&u.constant, &u.trend] {
            let closest = match (dc, dt) {
                (Some(c), Some(tr)) => {
                    let mine = if r.deterministic == Deterministic::Constant {
                        c
                    } else {
                        tr
                    };
                    report::yes_no(mine <= c.min(tr))
                }
                _ => Cell::Empty,
            };
            t.row(vec![
                Cell::text(&u.variable),
                Cell::text(r.deterministic.as_str()),
                Cell::Int(r.lag as i64),
                Cell::Num(r.statistic),
                Cell::opt(r.p_estimate),
                Cell::Num(r.critical_value(Level::Five)),
                report::yes_no(r.deterministic == u.configured),
                Cell::opt(published.map(|p| p.0)),
                Cell::opt(published.map(|p| p.1)),
                closest,
            ]);
        }
    }
    t
}

pub fn table5(a: &Analysis) -> Table {
    let fit = &a.fit;
    let mut t = Table::new(
        "table5",
        &format!(
            "OLS, dependent variable {}, {}-{}",
            fit.response,
            a.frame.first_year(),
            a.frame.last_year()
        ),
        &[
            "term",
            "coefficient",
            "std_error",
            "t_stat",
            "p_value",
            "published_coefficient",
            "published_t",
            "published_p",
            "sign_match",
        ],
    );
    for i in 0..fit.names.len() {
        let p = publ::coefficient(&fit.names[i]);
        t.row(vec![
            Cell::text(&fit.names[i]),
            Cell::Num(fit.coefficients[i]),
            Cell::Num(fit.std_errors[i]),
            Cell::Num(fit.t_stats[i]),
            Cell::Num(fit.p_values[i]),
            Cell::opt(p.map(|p| p.0)),
            Cell::opt(p.map(|p| p.1)),
            Cell::opt(p.map(|p| p.2)),
            p.map_or(Cell::Empty, |p| {
                report::yes_no(p.0.signum() == fit.coefficients[i].signum())
            }),
        ]);
    }
    let published = [
        Some(publ::R2),
        Some(publ::ADJ_R2),
        Some(publ::F_STAT),
        None,
        Some(publ::SIC),
        Some(publ::DW),
    ];
    for ((label, v), p) in report::fit_statistics(fit).into_iter().zip(published) {
        t.row(vec![
            Cell::text(label),
            Cell::opt(v),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::opt(p),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    t.note(format!("n = {}, k = {}", fit.n, fit.k));
    t
}

fn diagnostic_rows(t: &mut Table, r: &TestResult, published: &dyn Fn(&str) -> Option<(f64, f64)>) {
    for s in &r.statistics {
        let p = published(&s.label);
        t.row(vec![
            Cell::text(&r.test_name),
            Cell::text(&s.label),
            Cell::Num(s.value),
            Cell::text(s.dist().map(|d| d.df_label()).unwrap_or_default()),
            Cell::opt(s.p()),
            Cell::opt(p.map(|p| p.0)),
            Cell::opt(p.map(|p| p.1)),
        ]);
    }
}

const DIAGNOSTIC_HEADERS: [&str; 7] = [
    "test",
    "statistic",
    "value",
    "df",
    "p_value",
    "published_value",
    "published_p",
];

pub fn table6(a: &Analysis) -> Table {
    let mut t = Table::new("table6", "Residual diagnostics", &DIAGNOSTIC_HEADERS);
    for (r, key) in [
        (&a.breusch_pagan, "Breusch-Pagan"),
        (&a.breusch_godfrey, "Breusch-Godfrey"),
        (&a.jarque_bera, "Jarque-Bera"),
    ] {
        diagnostic_rows(&mut t, r, &|label| {
            publ::DIAGNOSTICS
                .iter()
                .find(|d| d.0 == key && d.1 == label)
                .map(|d| (d.2, d.3))
        });
    }
    t
}

pub fn table7(a: &Analysis) -> Table {
    let c = &a.cointegration;
    let mut t = Table::new(
        "table7",
        "Cointegration and specification tests on the residuals",
        &[
            "test",
            "statistic",
            "value",
            "df",
            "p_value",
            "cv_5pct",
            "published_value",
            "published_p",
            "published_cv",
        ],
    );
    let adf = &c.residual_adf;
    t.row(vec![
        Cell::text("ADF (residuals)"),
        Cell::text("tau"),
        Cell::Num(adf.statistic),
        Cell::text(format!("lag {}", adf.lag)),
        Cell::text(adf.bracket.to_string()),
        Cell::Num(adf.critical_value(Level::Five)),
        Cell::Num(publ::RESIDUAL_ADF),
        Cell::Empty,
        Cell::Num(publ::RESIDUAL_ADF_CV),
    ]);
    let k = c.residual_kpss.primary();
    t.row(vec![
        Cell::text("KPSS (residuals)"),
        Cell::text("LM"),
        Cell::Num(k.value),
        Cell::Empty,
        report::p_cell(k),
        Cell::opt(k.critical_value(Level::Five)),
        Cell::Num(publ::RESIDUAL_KPSS),
        Cell::Empty,
        Cell::Num(publ::RESIDUAL_KPSS_CV),
    ]);
    for s in &a.reset.statistics {
        let p = publ::RESET.iter().find(|r| r.0 == s.label);
        t.row(vec![
            Cell::text("Ramsey RESET"),
            Cell::text(&s.label),
            Cell::Num(s.value),
            Cell::text(s.dist().map(|d| d.df_label()).unwrap_or_default()),
            Cell::opt(s.p()),
            Cell::Empty,
            Cell::opt(p.map(|p| p.1)),
            Cell::opt(p.map(|p| p.2)),
            Cell::Empty,
        ]);
    }
    t.note(format!(
        "verdict at {}: {} (ADF critical values: {})",
        c.level, c.verdict, c.critical_value_mode
    ));
    t
}

pub fn figure4(a: &Analysis) -> Table {
    report::cusum_table(
        "figure4",
        "CUSUM of recursive residuals",
        &a.cusum,
        a.frame.first_year(),
    )
}

pub fn tables(a: &Analysis) -> CliResult<Vec<Table>> {
    Ok(vec![
        table1(a),
        table2(a)?,
        table3(a),
        table4(a),
        table5(a),
        table6(a),
        table7(a),
    ])
}

/// One output file, already rendered.
#[derive(Debug, Clone)]
pub struct Output {
    pub file: String,
    pub contents: Vec<u8>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

/// Every output file in write order, manifest last.
pub fn render(cfg: &RunConfig, base: &Path, a: &Analysis) -> CliResult<Vec<Output>> {
    let mut out = Vec::new();
    let formats = cfg.output_formats();
    for t in tables(a)? {
        for f in &formats {
            out.push(Output {
                file: format!("{}.{}", t.name, f.extension()),
                contents: t.render(*f).into_bytes(),
            });
        }
    }
    let fig = figure4(a);
    out.push(Output {
        file: "figure4.csv".into(),
        contents: fig.render(Format::Csv).into_bytes(),
    });
    if cfg.figure_svg {
        out.push(Output {
            file: "figure4.svg".into(),
            contents: svg::cusum_svg(&a.cusum, a.frame.first_year()).into_bytes(),
        });
    }

    let mut inputs = serde_json::Map::new();
    for (key, p) in [
        ("data", &cfg.data),
        ("rates_data", &cfg.rates_data),
        ("demographics_data", &cfg.demographics_data),
        ("age_groups_data", &cfg.age_groups_data),
    ] {
        let full = RunConfig::resolve(base, p);
        let bytes = std::fs::read(&full).map_err(|source| CliError::Stage {
            stage: "manifest".into(),
            source: cotrend_core::Error::Io {
                path: full.display().to_string(),
                source,
            },
        })?;
        inputs.insert(
            key.into(),
            json!({ "path": p.display().to_string(), "sha256": sha256_hex(&bytes) }),
        );
    }
    let outputs: Vec<_> = out
        .iter()
        .map(|o| json!({ "file": o.file, "sha256": sha256_hex(&o.contents) }))
        .collect();
    let manifest = json!({
        "config_sha256": cfg.hash(),
        "library_version": cotrend_core::VERSION,
        "seeds": { "monte_carlo_base": cfg.seed },
        "critical_value_mode": cfg.critical_value_mode.as_str(),
        "verdict": a.cointegration.verdict.as_str(),
        "inputs": inputs,
        "outputs": outputs,
    });
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    out.push(Output {
        file: "manifest.json".into(),
        contents: text.into_bytes(),
    });
    Ok(out)
}

/// Writes the outputs; on failure every file written so far is removed.
pub fn write_all(dir: &Path, outputs: &[Output]) -> CliResult<Vec<PathBuf>> {
    let created_dir = !dir.exists();
    let io_err = |path: &Path, source| CliError::Output {
        path: path.display().to_string(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::new();
    for o in outputs {
        let path = dir.join(&o.file);
        if let Err(e) = std::fs::write(&path, &o.contents) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            let _ = std::fs::remove_file(&path);
            if created_dir {
                let _ = std::fs::remove_dir(dir);
            }
            return Err(io_err(&path, e));
        }
        written.push(path);
    }
    Ok(written)
}

/// Analyze, render and write. Returns the paths written.
pub fn replicate(cfg: &RunConfig, base: &Path) -> CliResult<Vec<PathBuf>> {
    let analysis = analyze(cfg, base)?;
    let outputs = render(cfg, base, &analysis)?;
    write_all(&RunConfig::resolve(base, &cfg.output_dir), &outputs)
}

/// Short human summary printed after a run.
pub fn summary(a: &Analysis) -> Vec<String> {
    let c = &a.cointegration;
    vec![
        format!(
            "R-squared {}, residual ADF {} (5% cv {}), residual KPSS {}",
            crate::format::fmt2(a.fit.r2),
            crate::format::fmt2(c.residual_adf.statistic),
            crate::format::fmt2(c.residual_adf.critical_value(Level::Five)),
            crate::format::fmt2(c.residual_kpss.primary().value),
        ),
        format!("verdict: {}", c.verdict),
        report::cusum_verdict(&a.cusum, a.frame.first_year()),
    ]
}
