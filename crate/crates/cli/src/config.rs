//! Run configuration for `replicate`. A flat TOML file; every key is
//! optional and the defaults reproduce the reference analysis.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cotrend_core::coint::CriticalValueMode;
use cotrend_core::critical::{Deterministic, Level};
use cotrend_core::simulate::DEFAULT_SEED;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::format::Format;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Model variables, one column per series.
    pub data: PathBuf,
    /// Inflation and nominal deposit rate.
    pub rates_data: PathBuf,
    /// Dependency ratio, birth rate, life expectancy.
    pub demographics_data: PathBuf,
    /// Population by age group, used to recompute the dependency ratio.
    pub age_groups_data: PathBuf,
    pub response: String,
    pub regressors: Vec<String>,
    pub first_year: i32,
    pub last_year: i32,
    pub half_window: usize,
    pub adf_deterministic: Deterministic,
    /// Per-variable deterministic terms, overriding `adf_deterministic`.
    pub adf_overrides: BTreeMap<String, Deterministic>,
    /// Absent means the Schwert rule.
    pub adf_max_lag: Option<usize>,
    /// Absent means `⌊4 (T/100)^{1/4}⌋`.
    pub kpss_bandwidth: Option<usize>,
    pub bg_order: usize,
    pub reset_max_power: usize,
    pub cusum_level: f64,
    pub critical_value_mode: CriticalValueMode,
    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
    pub figure_svg: bool,
    /// Base seed for the Monte Carlo suites. `replicate` draws no random
    /// numbers; the seed is only recorded.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            data: "data/china.csv".into(),
            rates_data: "data/table1.csv".into(),
            demographics_data: "data/table2.csv".into(),
            age_groups_data: "data/age_groups.csv".into(),
            response: "Expenditure".into(),
            regressors: ["Birth", "GDP", "Employment", "Oldies", "Urban"]
                .map(String::from)
                .to_vec(),
            first_year: 1995,
            last_year: 2019,
            half_window: cotrend_core::interpolate::DEFAULT_HALF_WINDOW,
            adf_deterministic: Deterministic::Constant,
            adf_overrides: BTreeMap::new(),
            adf_max_lag: None,
            kpss_bandwidth: None,
            bg_order: cotrend_core::diagnostics::DEFAULT_BG_ORDER,
            reset_max_power: cotrend_core::diagnostics::DEFAULT_RESET_POWER,
            cusum_level: 0.05,
            critical_value_mode: CriticalValueMode::default(),
            output_dir: "out".into(),
            formats: vec![Format::Plain],
            figure_svg: false,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file. Relative paths inside it are resolved against
    /// the file's directory by [`RunConfig::resolve`].
    pub fn load(path: &Path) -> CliResult<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
        Ok((cfg, base))
    }

    pub fn resolve(base: &Path, p: &Path) -> PathBuf {
        if p.is_relative() {
            base.join(p)
        } else {
            p.to_path_buf()
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.regressors.is_empty() {
            return usage("at least one regressor is required".into());
        }
        if self.regressors.contains(&self.response) {
            return usage(format!("response `{}` is also a regressor", self.response));
        }
        for (i, r) in self.regressors.iter().enumerate() {
            if self.regressors[..i].contains(r) {
                return usage(format!("regressor `{r}` listed twice"));
            }
        }
        if self.first_year >= self.last_year {
            return usage(format!(
                "first_year {} must precede last_year {}",
                self.first_year, self.last_year
            ));
        }
        if self.half_window == 0 {
            return usage("half_window must be at least 1".into());
        }
        if self.bg_order == 0 {
            return usage("bg_order must be at least 1".into());
        }
        if self.reset_max_power < 2 {
            return usage("reset_max_power must be at least 2".into());
        }
        if self.formats.is_empty() {
            return usage("formats must name at least one format".into());
        }
        self.level()?;
        for name in self.adf_overrides.keys() {
            if !self.variables().any(|v| v == name) {
                return usage(format!("adf_overrides names unknown variable `{name}`"));
            }
        }
        Ok(())
    }

    pub fn level(&self) -> CliResult<Level> {
        Level::from_f64(self.cusum_level).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Response first, then regressors in order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.response.as_str()).chain(self.regressors.iter().map(String::as_str))
    }

    pub fn deterministic_for(&self, name: &str) -> Deterministic {
        self.adf_overrides
            .get(name)
            .copied()
            .unwrap_or(self.adf_deterministic)
    }

    /// Formats in a fixed order with duplicates removed.
    pub fn output_formats(&self) -> Vec<Format> {
        let mut f = self.formats.clone();
        f.sort();
        f.dedup();
        f
    }

    /// SHA-256 of the serialized config without `output_dir`, so moving the
    /// output does not change the hash.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output_dir = PathBuf::new();
        let text = toml::to_string(&c).expect("config serializes");
        hex(&Sha256::digest(text.as_bytes()))
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn overrides_and_modes() {
        let cfg = RunConfig::from_toml(
            r#"
            critical_value_mode = "paper-adf"
            formats = ["csv", "plain", "csv"]
            [adf_overrides]
            Oldies = "constant-trend"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.critical_value_mode, CriticalValueMode::DickeyFuller);
        assert_eq!(
            cfg.deterministic_for("Oldies"),
            Deterministic::ConstantTrend
        );
        assert_eq!(cfg.deterministic_for("GDP"), Deterministic::Constant);
        assert_eq!(cfg.output_formats(), vec![Format::Plain, Format::Csv]);
    }

    #[test]
    fn invalid_configs_are_usage_errors() {
        for text in [
            "response = \"GDP\"",
            "bogus_key = 1",
            "cusum_level = 0.2",
            "first_year = 2020",
            "half_window = 0",
            "[adf_overrides]\nNope = \"none\"",
        ] {
            let err = RunConfig::from_toml(text).unwrap_err();
            assert!(matches!(err, CliError::Usage(_)), "{text}: {err}");
        }
    }

    #[test]
    fn hash_ignores_output_dir() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.output_dir = "elsewhere".into();
        assert_eq!(a.hash(), b.hash());
        b.bg_order = 3;
        assert_ne!(a.hash(), b.hash());
    }
}
