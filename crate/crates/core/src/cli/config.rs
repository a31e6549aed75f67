//! JSON analysis configuration.
//!
//! ```json
//! {
//!   "model": { "kind": "mvn_identity_mean", "n": 100, "xbar": [0.14, -0.16] },
//!   "nulls": [
//!     { "label": "origin", "type": "point", "theta": [0.0, 0.0] },
//!     { "label": "equal_means", "type": "linear", "C": [[1.0, -1.0]], "d": [0.0] }
//!   ],
//!   "alpha": 0.05
//! }
//! ```
//!
//! Model kinds: `mvn_identity_mean {n, xbar}`, `linear_regression {data}`
//! (CSV path relative to the config file, with a `y` column) and
//! `trinomial {counts}`. Null types: `point {theta}`, `linear {C, d}`,
//! `curve {name}` (only `hardy_weinberg`), `box {lo, hi}`,
//! `union {members}`, `complement {of}`, `full`, `empty`. Each entry of
//! `nulls` may also carry `label` and a `codim` override.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::OutputFormat;
use crate::error::{Error, Result};
use crate::hypotheses::{Curve, NullSet};
use crate::models::{
    LinearRegressionKnownVar, LogLikModel, MvnIdentityMean, ParamVector, Trinomial,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub nulls: Vec<NullSpec>,
    /// Degrees of freedom of the reference F, overriding dim Θ.
    #[serde(default)]
    pub f_dof: Option<u32>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub conservative: bool,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    MvnIdentityMean { n: usize, xbar: Vec<f64> },
    LinearRegression { data: PathBuf },
    Trinomial { counts: [u64; 3] },
}

#[derive(Debug, Clone, Deserialize)]
pub struct NullSpec {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub codim: Option<usize>,
    #[serde(flatten)]
    pub set: NullSetSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NullSetSpec {
    Point {
        theta: Vec<f64>,
    },
    Linear {
        #[serde(rename = "C")]
        c: Vec<Vec<f64>>,
        d: Vec<f64>,
    },
    Curve {
        name: String,
    },
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Union {
        members: Vec<NullSetSpec>,
    },
    Complement {
        of: Box<NullSetSpec>,
    },
    Full,
    Empty,
}

impl NullSetSpec {
    pub fn build(&self) -> Result<NullSet> {
        Ok(match self {
            NullSetSpec::Point { theta } => NullSet::point(theta)?,
            NullSetSpec::Linear { c, d } => NullSet::linear(c, d)?,
            NullSetSpec::Curve { name } => match name.as_str() {
                "hardy_weinberg" => NullSet::Curve(Curve::hardy_weinberg()),
                other => return Err(Error::InvalidInput(format!("unknown curve `{other}`"))),
            },
            NullSetSpec::Box { lo, hi } => NullSet::Box {
                lo: ParamVector::new(lo.clone())?,
                hi: ParamVector::new(hi.clone())?,
            },
            NullSetSpec::Union { members } => {
                if members.is_empty() {
                    return Err(Error::InvalidInput("union with no members".into()));
                }
                NullSet::Union(
                    members
                        .iter()
                        .map(NullSetSpec::build)
                        .collect::<Result<_>>()?,
                )
            }
            NullSetSpec::Complement { of } => of.build()?.complement(),
            NullSetSpec::Full => NullSet::Full,
            NullSetSpec::Empty => NullSet::Empty,
        })
    }
}

impl AnalysisConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        if let Some(a) = cfg.alpha {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "alpha must lie in (0, 1), got {a}"
                )));
            }
        }
        if cfg.f_dof == Some(0) {
            return Err(Error::InvalidInput("f_dof must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn build_model(&self) -> Result<Box<dyn LogLikModel>> {
        Ok(match &self.model {
            ModelSpec::MvnIdentityMean { n, xbar } => {
                Box::new(MvnIdentityMean::new(*n, ParamVector::new(xbar.clone())?)?)
            }
            ModelSpec::LinearRegression { data } => {
                let path = self.base_dir.join(data);
                let file = fs::File::open(&path).map_err(|e| {
                    Error::InvalidInput(format!("cannot open {}: {e}", path.display()))
                })?;
                Box::new(LinearRegressionKnownVar::from_csv(file)?)
            }
            ModelSpec::Trinomial { counts: [a, b, c] } => Box::new(Trinomial::new(*a, *b, *c)?),
        })
    }

    pub fn trinomial(&self) -> Option<Trinomial> {
        match self.model {
            ModelSpec::Trinomial { counts: [a, b, c] } => Trinomial::new(a, b, c).ok(),
            _ => None,
        }
    }

    /// Labelled null sets in config order.
    pub fn build_nulls(&self) -> Result<Vec<(String, Option<usize>, NullSet)>> {
        if self.nulls.is_empty() {
            return Err(Error::InvalidInput("config lists no null sets".into()));
        }
        self.nulls
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let label = n.label.clone().unwrap_or_else(|| format!("null_{}", i + 1));
                Ok((label, n.codim, n.set.build()?))
            })
            .collect()
    }
}
