//! Uniform representation of a hypothesis test outcome.

use serde::{Deserialize, Serialize};

use crate::critical::{Bracket, Level};
use crate::dist::DistRef;
use crate::error::{Error, Result};

/// Serde adapter writing non-finite floats as the strings `"inf"`,
/// `"-inf"` and `"nan"` so they survive JSON.
pub mod sentinel {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("bad float sentinel `{other}`"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tail {
    /// Reject for small values (ADF).
    Left,
    /// Reject for large values (KPSS, LM, F).
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Reference {
    Distribution {
        dist: DistRef,
    },
    Table {
        tail: Tail,
        critical_values: Vec<CriticalValue>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValue {
    pub level: Level,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum PValue {
    Exact { p: f64 },
    Bracket { bracket: Bracket },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Reject,
    FailToReject,
}

impl Decision {
    pub fn is_reject(self) -> bool {
        self == Decision::Reject
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Statistic {
    pub label: String,
    #[serde(with = "sentinel")]
    pub value: f64,
    pub reference: Reference,
    pub p_value: PValue,
    /// Optional smooth p-value estimate for table-based statistics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_estimate: Option<f64>,
}

impl Statistic {
    /// A statistic referred to a continuous distribution, upper tail.
    pub fn upper_tail(label: impl Into<String>, value: f64, dist: DistRef) -> Result<Self> {
        let p = dist.survival(value)?;
        Ok(Self {
            label: label.into(),
            value,
            reference: Reference::Distribution { dist },
            p_value: PValue::Exact { p },
            p_estimate: None,
        })
    }

    /// A two-sided Student-t statistic.
    pub fn two_sided_t(label: impl Into<String>, value: f64, df: f64) -> Result<Self> {
        let p = crate::dist::t_two_sided(value, df)?;
        Ok(Self {
            label: label.into(),
            value,
            reference: Reference::Distribution {
                dist: DistRef::student_t(df),
            },
            p_value: PValue::Exact { p },
            p_estimate: None,
        })
    }

    pub fn p(&self) -> Option<f64> {
        match self.p_value {
            PValue::Exact { p } => Some(p),
            PValue::Bracket { .. } => None,
        }
    }

    pub fn dist(&self) -> Option<DistRef> {
        match self.reference {
            Reference::Distribution { dist } => Some(dist),
            Reference::Table { .. } => None,
        }
    }

    pub fn critical_value(&self, level: Level) -> Option<f64> {
        match &self.reference {
            Reference::Table {
                critical_values, ..
            } => critical_values
                .iter()
                .find(|c| c.level == level)
                .map(|c| c.value),
            Reference::Distribution { .. } => None,
        }
    }

    /// Decision at `level`: p-value against level, or statistic against
    /// the tabulated critical value.
    pub fn decide(&self, level: Level) -> Result<Decision> {
        let reject = match (&self.reference, self.p_value) {
            (Reference::Distribution { .. }, PValue::Exact { p }) => p < level.value(),
            (Reference::Table { tail, .. }, _) => {
                let cv = self.critical_value(level).ok_or_else(|| {
                    Error::Domain(format!("no critical value at {level} for {}", self.label))
                })?;
                match tail {
                    Tail::Left => self.value < cv,
                    Tail::Right => self.value > cv,
                }
            }
            (Reference::Distribution { .. }, PValue::Bracket { .. }) => {
                return Err(Error::Domain("bracketed p-value on a distribution".into()))
            }
        };
        Ok(if reject {
            Decision::Reject
        } else {
            Decision::FailToReject
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelDecision {
    pub level: Level,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub null_hypothesis: String,
    /// The first statistic drives the decisions.
    pub statistics: Vec<Statistic>,
    pub decisions: Vec<LevelDecision>,
}

impl TestResult {
    pub fn new(
        test_name: impl Into<String>,
        null_hypothesis: impl Into<String>,
        statistics: Vec<Statistic>,
    ) -> Result<Self> {
        let primary = statistics
            .first()
            .ok_or_else(|| Error::Domain("a test result needs at least one statistic".into()))?;
        let decisions = Level::ALL
            .iter()
            .map(|&level| {
                Ok(LevelDecision {
                    level,
                    decision: primary.decide(level)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            test_name: test_name.into(),
            null_hypothesis: null_hypothesis.into(),
            statistics,
            decisions,
        })
    }

    pub fn primary(&self) -> &Statistic {
        &self.statistics[0]
    }

    pub fn statistic(&self, label: &str) -> Option<&Statistic> {
        self.statistics.iter().find(|s| s.label == label)
    }

    pub fn decision(&self, level: Level) -> Decision {
        self.decisions
            .iter()
            .find(|d| d.level == level)
            .map(|d| d.decision)
            .unwrap_or(Decision::FailToReject)
    }

    pub fn rejects(&self, level: Level) -> bool {
        self.decision(level).is_reject()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decisions_follow_p_values() {
        let s = Statistic::upper_tail("LM", 6.01, DistRef::chi_square(2.0)).unwrap();
        let r = TestResult::new("BG", "no serial correlation", vec![s]).unwrap();
        assert!(r.rejects(Level::Ten));
        assert!(r.rejects(Level::Five)); // p = 0.0495
        assert!(!r.rejects(Level::One));
    }

    #[test]
    fn table_decision_left_tail() {
        let s = Statistic {
            label: "tau".into(),
            value: -3.2,
            reference: Reference::Table {
                tail: Tail::Left,
                critical_values: vec![
                    CriticalValue {
                        level: Level::One,
                        value: -3.75,
                    },
                    CriticalValue {
                        level: Level::Five,
                        value: -3.0,
                    },
                    CriticalValue {
                        level: Level::Ten,
                        value: -2.63,
                    },
                ],
            },
            p_value: PValue::Bracket {
                bracket: Bracket {
                    lower: 0.01,
                    upper: 0.05,
                },
            },
            p_estimate: None,
        };
        let r = TestResult::new("ADF", "unit root", vec![s]).unwrap();
        assert!(!r.rejects(Level::One));
        assert!(r.rejects(Level::Five));
    }

    #[test]
    fn infinite_statistic_round_trips() {
        let s = Statistic::upper_tail("F", f64::INFINITY, DistRef::f(2.0, 10.0)).unwrap();
        assert_eq!(s.p(), Some(0.0));
        let r = TestResult::new("F", "all slopes zero", vec![s]).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"inf\""));
        let back: TestResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
