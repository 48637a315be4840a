//! Declarative experiment manifests (TOML or JSON) and their summary tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{run_experiment, Bounds, EvalReport, ExperimentConfig};

/// A parsed manifest. Experiments without their own `seed` inherit the
/// manifest-level one.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub seed: u64,
    pub experiments: Vec<std::result::Result<ExperimentConfig, String>>,
    /// Directory that relative data paths resolve against.
    pub base: PathBuf,
}

#[derive(Deserialize)]
struct RawManifest {
    #[serde(default)]
    seed: u64,
    #[serde(default, alias = "experiments")]
    experiment: Vec<serde_json::Value>,
}

impl Manifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Manifest> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Manifest::parse(&text, is_json, base)
    }

    pub fn parse(text: &str, json: bool, base: PathBuf) -> Result<Manifest> {
        let raw: RawManifest = if json {
            serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?
        };
        let experiments = raw
            .experiment
            .into_iter()
            .enumerate()
            .map(|(i, mut v)| {
                if let Some(obj) = v.as_object_mut() {
                    obj.entry("seed").or_insert(raw.seed.into());
                }
                serde_json::from_value::<ExperimentConfig>(v)
                    .map_err(|e| format!("experiment {i}: {e}"))
            })
            .collect();
        Ok(Manifest {
            seed: raw.seed,
            experiments,
            base,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub name: String,
    pub status: Status,
    pub bounds: Option<Bounds>,
    pub report: Option<EvalReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub experiments: Vec<ExperimentOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.experiments.iter().all(|e| e.status == Status::Pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Aligned plain-text table, one row per experiment.
    pub fn summary_table(&self) -> String {
        let header = [
            "experiment",
            "protocol",
            "k",
            "e",
            "b",
            "alpha",
            "accuracy",
            "std",
            "reference",
            "bounds",
            "status",
            "secs",
        ];
        let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for o in &self.experiments {
            let bounds = o.bounds.map_or("-".to_string(), |b| b.to_string());
            let status = format!("{:?}", o.status).to_uppercase();
            match &o.report {
                Some(r) => rows.push(vec![
                    o.name.clone(),
                    r.protocol.clone(),
                    r.best.k.to_string(),
                    r.best.e.to_string(),
                    r.best.b.to_string(),
                    r.best.alpha.to_string(),
                    format!("{:.3}", r.accuracy),
                    format!("{:.3}", r.std_accuracy),
                    r.reference.map_or("-".into(), |v| format!("{v:.3}")),
                    bounds,
                    status,
                    format!("{:.1}", r.wall_clock_secs),
                ]),
                None => {
                    let mut row = vec![o.name.clone()];
                    row.extend(std::iter::repeat_n("-".to_string(), 8));
                    row.push(bounds);
                    row.push(status);
                    row.push("-".into());
                    rows.push(row);
                }
            }
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in rows.iter().enumerate() {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, &w))| {
                    if c == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
            if i == 0 {
                let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                let _ = writeln!(out, "{}", "-".repeat(total));
            }
        }
        for o in &self.experiments {
            if let Some(e) = &o.error {
                let _ = writeln!(out, "error in {}: {e}", o.name);
            }
        }
        out
    }
}

/// Runs every experiment of a manifest in order. Failures of individual
/// experiments are recorded and the suite continues.
pub fn run_experiment_suite(path: impl AsRef<Path>) -> Result<SuiteReport> {
    run_manifest(&Manifest::load(path)?)
}

pub fn run_manifest(manifest: &Manifest) -> Result<SuiteReport> {
    let experiments = manifest
        .experiments
        .iter()
        .enumerate()
        .map(|(i, entry)| match entry {
            Err(msg) => ExperimentOutcome {
                name: format!("#{i}"),
                status: Status::Error,
                bounds: None,
                report: None,
                error: Some(msg.clone()),
            },
            Ok(config) => match run_experiment(config, &manifest.base) {
                Ok(report) => {
                    let ok = config.bounds.is_none_or(|b| b.contains(report.accuracy));
                    ExperimentOutcome {
                        name: config.name.clone(),
                        status: if ok { Status::Pass } else { Status::Fail },
                        bounds: config.bounds,
                        report: Some(report),
                        error: None,
                    }
                }
                Err(e) => ExperimentOutcome {
                    name: config.name.clone(),
                    status: Status::Error,
                    bounds: config.bounds,
                    report: None,
                    error: Some(e.to_string()),
                },
            },
        })
        .collect();
    Ok(SuiteReport {
        seed: manifest.seed,
        experiments,
    })
}
