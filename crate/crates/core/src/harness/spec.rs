//! JSON problem files.
//!
//! ```json
//! {
//!   "name": "fig3",
//!   "points": [[8, -1], [-2, -6], [1, 6], [4, -4]],
//!   "method": "kmeanspp",
//!   "centroids": [0, 1, 2],
//!   "centroid_states": [[1], [0], [-1]],
//!   "anneal": { "steps": 2000, "dt": 0.1, "h": 8.0, "mode": "exact" },
//!   "output": { "emit": ["table", "svg"], "dir": "out/fig3" }
//! }
//! ```
//!
//! Everything but `points` and `method` is optional. `k` defaults to 3 for the
//! three-cluster methods, 2 for `one-hot-k2-penalty` and the centroid count
//! for `kmeanspp`; `one-hot-multispin` requires it. `pinned` (two-cluster
//! method only) defaults to `true`. `penalty` defaults to twice the largest
//! distance entering the Hamiltonian, or 1 if that distance is zero. A
//! missing `anneal` block, or any missing field in it, takes `steps = 2000`,
//! `dt = 0.1`, `h = 8`, `mode = "exact"`, `split_substeps = 8`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::anneal::{AnnealConfig, StepMode};
use crate::clustering::{Point, PointSet};
use crate::error::{Error, Result};
use crate::hamiltonian::{default_centroid_states, EncodingScheme, Method};
use crate::qutrit::projections;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmitFormat {
    Table,
    Csv,
    Svg,
}

impl std::str::FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "table" => Ok(EmitFormat::Table),
            "csv" => Ok(EmitFormat::Csv),
            "svg" => Ok(EmitFormat::Svg),
            other => Err(Error::Validation(format!(
                "unknown output format `{other}` (expected table, csv or svg)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<StepMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_substeps: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub emit: Vec<EmitFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

/// On-disk form of a problem, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinned: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centroids: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centroid_states: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anneal: Option<AnnealSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

/// A validated problem: instance, encoding and schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    pub points: PointSet,
    pub scheme: EncodingScheme,
    /// k-means++ centroid point indices, in cluster order.
    pub centroids: Option<Vec<usize>>,
    pub anneal: AnnealConfig,
    /// Generator seed the instance came from, if any.
    pub seed: Option<u64>,
    pub emit: Vec<EmitFormat>,
    pub out_dir: Option<PathBuf>,
}

impl ProblemSpec {
    pub fn from_file(file: SpecFile) -> Result<Self> {
        let v = |msg: String| Error::Validation(msg);
        let points = PointSet::new(file.points.iter().map(|&[x, y]| Point::new(x, y)).collect())
            .map_err(|e| v(format!("points: {e}")))?;
        let points = match file.labels {
            Some(l) => points
                .with_labels(l)
                .map_err(|e| v(format!("labels: {e}")))?,
            None => points,
        };
        let n = points.len();

        if file.method != Method::Kmeanspp {
            if file.centroids.is_some() {
                return Err(v(format!(
                    "`centroids` is only valid with method kmeanspp, not {}",
                    file.method.name()
                )));
            }
            if file.centroid_states.is_some() {
                return Err(v(format!(
                    "`centroid_states` is only valid with method kmeanspp, not {}",
                    file.method.name()
                )));
            }
        }
        if file.pinned.is_some() && file.method != Method::OneHotK2Penalty {
            return Err(v(
                "`pinned` is only valid with method one-hot-k2-penalty".into()
            ));
        }

        let fixed_k = |expected: usize| -> Result<()> {
            match file.k {
                Some(k) if k != expected => Err(v(format!(
                    "method {} partitions into {expected} clusters, but k = {k}",
                    file.method.name()
                ))),
                _ => Ok(()),
            }
        };
        let mut centroids = None;
        let mut scheme = match file.method {
            Method::OneHotK3 => {
                fixed_k(3)?;
                EncodingScheme::onehot_k3()
            }
            Method::OneHotK3Pinned => {
                fixed_k(3)?;
                EncodingScheme::onehot_k3_pinned()
            }
            Method::OneHotK2Penalty => {
                fixed_k(2)?;
                EncodingScheme::k2_penalty(file.pinned.unwrap_or(true))
            }
            Method::OneHotMultispin => {
                let k = file
                    .k
                    .ok_or_else(|| v("method one-hot-multispin requires `k`".into()))?;
                EncodingScheme::multispin(k).map_err(|e| v(e.to_string()))?
            }
            Method::Kmeanspp => {
                let cs = file
                    .centroids
                    .clone()
                    .ok_or_else(|| v("method kmeanspp requires `centroids`".into()))?;
                if let Some(k) = file.k {
                    if k != cs.len() {
                        return Err(v(format!("k = {k} but {} centroids given", cs.len())));
                    }
                }
                for (i, &c) in cs.iter().enumerate() {
                    if c >= n {
                        return Err(v(format!("centroid index {c} is out of range (0..{n})")));
                    }
                    if cs[..i].contains(&c) {
                        return Err(v(format!("centroid index {c} is listed twice")));
                    }
                }
                if cs.len() >= n {
                    return Err(v("at least one point must not be a centroid".into()));
                }
                let states = match &file.centroid_states {
                    Some(raw) => raw
                        .iter()
                        .map(|s| projections(s))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| v(format!("centroid_states: {e}")))?,
                    None => default_centroid_states(cs.len()),
                };
                if states.len() != cs.len() {
                    return Err(v(format!(
                        "{} centroid states for {} centroids",
                        states.len(),
                        cs.len()
                    )));
                }
                centroids = Some(cs);
                EncodingScheme::kmeanspp(states).map_err(|e| v(format!("centroid_states: {e}")))?
            }
        };
        if let Some(c) = file.penalty {
            scheme = scheme.with_penalty(c).map_err(|e| v(e.to_string()))?;
        }

        let sec = file.anneal.unwrap_or_default();
        let d = AnnealConfig::default();
        let anneal = AnnealConfig {
            steps: sec.steps.unwrap_or(d.steps),
            dt: sec.dt.unwrap_or(d.dt),
            h: sec.h.unwrap_or(d.h),
            mode: sec.mode.unwrap_or(d.mode),
            split_substeps: sec.split_substeps.unwrap_or(d.split_substeps),
        };
        anneal.validate().map_err(|e| v(format!("anneal: {e}")))?;

        let output = file.output.unwrap_or_default();
        Ok(ProblemSpec {
            name: file.name.unwrap_or_else(|| "problem".to_string()),
            points,
            scheme,
            centroids,
            anneal,
            seed: file.seed,
            emit: output.emit,
            out_dir: output.dir,
        })
    }

    /// Back to the on-disk form, with every default written out.
    pub fn to_file(&self) -> SpecFile {
        let s = &self.scheme;
        SpecFile {
            name: Some(self.name.clone()),
            points: self.points.points().iter().map(|p| [p.x, p.y]).collect(),
            labels: self.points.labels().map(|l| l.to_vec()),
            method: s.method,
            k: Some(s.k),
            pinned: (s.method == Method::OneHotK2Penalty).then_some(s.pinned),
            centroids: self.centroids.clone(),
            centroid_states: s.centroid_states.as_ref().map(|cs| {
                cs.iter()
                    .map(|st| st.iter().map(|p| i64::from(p.m())).collect())
                    .collect()
            }),
            penalty: s.penalty_constant,
            anneal: Some(AnnealSection {
                steps: Some(self.anneal.steps),
                dt: Some(self.anneal.dt),
                h: Some(self.anneal.h),
                mode: Some(self.anneal.mode),
                split_substeps: Some(self.anneal.split_substeps),
            }),
            seed: self.seed,
            output: (!self.emit.is_empty() || self.out_dir.is_some()).then(|| OutputSection {
                emit: self.emit.clone(),
                dir: self.out_dir.clone(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spec serializes")
    }
}

pub fn parse_spec(text: &str, origin: &str) -> Result<ProblemSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(|source| Error::Parse {
        path: origin.to_string(),
        source,
    })?;
    ProblemSpec::from_file(file)
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text, &path.display().to_string())
}
