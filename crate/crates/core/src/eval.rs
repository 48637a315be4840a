//! Accuracy measurement, repeated cross-validation, holdout evaluation and
//! grid search.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{predict_batch, PredictMode, Prediction};
use crate::data::{
    derive_seed, generate_circles, generate_moons, kfold, load_csv, stratified_split, Dataset,
    Instance, LabelColumn, SplitSpec,
};
use crate::error::{Error, Result};
use crate::graph::{HyperParams, TrainedModel};

/// Percentage of predictions equal to their truth.
pub fn accuracy<P: AsRef<str>, T: AsRef<str>>(predictions: &[P], truths: &[T]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::InvalidParameter(
            "accuracy of an empty prediction set".into(),
        ));
    }
    if predictions.len() != truths.len() {
        return Err(Error::InvalidParameter(format!(
            "{} predictions for {} truths",
            predictions.len(),
            truths.len()
        )));
    }
    let correct = predictions
        .iter()
        .zip(truths)
        .filter(|(p, t)| p.as_ref() == t.as_ref())
        .count();
    Ok(100.0 * correct as f64 / predictions.len() as f64)
}

/// Counts indexed by `[truth][predicted]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub classes: Vec<String>,
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(classes: Vec<String>) -> Self {
        let c = classes.len();
        ConfusionMatrix {
            classes,
            counts: vec![vec![0; c]; c],
        }
    }

    pub fn from_labels<P: AsRef<str>, T: AsRef<str>>(
        classes: Vec<String>,
        predictions: &[P],
        truths: &[T],
    ) -> Self {
        let mut m = ConfusionMatrix::new(classes);
        for (p, t) in predictions.iter().zip(truths) {
            m.record(t.as_ref(), p.as_ref());
        }
        m
    }

    fn index_of(&mut self, class: &str) -> usize {
        if let Some(i) = self.classes.iter().position(|c| c == class) {
            return i;
        }
        self.classes.push(class.to_string());
        for row in &mut self.counts {
            row.push(0);
        }
        self.counts.push(vec![0; self.classes.len()]);
        self.classes.len() - 1
    }

    pub fn record(&mut self, truth: &str, predicted: &str) {
        let t = self.index_of(truth);
        let p = self.index_of(predicted);
        self.counts[t][p] += 1;
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (t, row) in other.counts.iter().enumerate() {
            for (p, &n) in row.iter().enumerate() {
                if n > 0 {
                    let ti = self.index_of(&other.classes[t]);
                    let pi = self.index_of(&other.classes[p]);
                    self.counts[ti][pi] += n;
                }
            }
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Row sums: the number of test instances of each class.
    pub fn support(&self) -> Vec<usize> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn accuracy(&self) -> Option<f64> {
        let total = self.total();
        (total > 0).then(|| 100.0 * self.trace() as f64 / total as f64)
    }
}

/// Running check that every emitted class distribution is valid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionCheck {
    pub predictions: usize,
    /// Largest `|sum(H) - 1|` seen.
    pub max_sum_error: f64,
    /// Smallest entry of any `H`.
    pub min_entry: f64,
    /// Predictions at `alpha` 0 or 1 whose `H` differs from `T^n` or `W^n`.
    pub endpoint_violations: usize,
}

impl Default for DistributionCheck {
    fn default() -> Self {
        DistributionCheck {
            predictions: 0,
            max_sum_error: 0.0,
            min_entry: f64::INFINITY,
            endpoint_violations: 0,
        }
    }
}

impl DistributionCheck {
    pub fn observe(&mut self, prediction: &Prediction, alpha: f64) {
        let s = &prediction.scores;
        self.predictions += 1;
        let sum: f64 = s.h.iter().sum();
        self.max_sum_error = self.max_sum_error.max((sum - 1.0).abs());
        for &v in &s.h {
            self.min_entry = self.min_entry.min(v);
        }
        if (alpha == 1.0 && s.h != s.w_norm) || (alpha == 0.0 && s.h != s.t_norm) {
            self.endpoint_violations += 1;
        }
    }

    pub fn merge(&mut self, other: &DistributionCheck) {
        self.predictions += other.predictions;
        self.max_sum_error = self.max_sum_error.max(other.max_sum_error);
        self.min_entry = self.min_entry.min(other.min_entry);
        self.endpoint_violations += other.endpoint_violations;
    }

    pub fn is_valid(&self, tolerance: f64) -> bool {
        self.endpoint_violations == 0
            && self.max_sum_error <= tolerance
            && (self.predictions == 0 || self.min_entry >= 0.0)
    }
}

/// Where an experiment's data comes from. Relative CSV paths resolve against
/// the manifest directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DataSource {
    Csv {
        path: PathBuf,
        /// Column name, zero-based index, or "last" (the default).
        #[serde(default)]
        label_column: Option<String>,
        #[serde(default = "yes")]
        header: bool,
    },
    Moons {
        n: usize,
        noise: f64,
    },
    Circles {
        n: usize,
        noise: f64,
        #[serde(default = "default_inner_ratio")]
        inner_radius_ratio: f64,
    },
    /// A literal dataset embedded in the config.
    Inline {
        instances: Vec<Instance>,
    },
}

fn yes() -> bool {
    true
}

pub const DEFAULT_INNER_RADIUS_RATIO: f64 = 0.8;

fn default_inner_ratio() -> f64 {
    DEFAULT_INNER_RADIUS_RATIO
}

impl DataSource {
    fn is_generated(&self) -> bool {
        matches!(self, DataSource::Moons { .. } | DataSource::Circles { .. })
    }

    /// Materializes the data; generators use `seed`.
    pub fn load(&self, base: &Path, seed: u64) -> Result<Dataset> {
        match self {
            DataSource::Csv {
                path,
                label_column,
                header,
            } => {
                let column: LabelColumn =
                    label_column.as_deref().unwrap_or("last").parse().unwrap();
                load_csv(base.join(path), &column, *header)
            }
            DataSource::Moons { n, noise } => generate_moons(*n, *noise, seed),
            DataSource::Circles {
                n,
                noise,
                inner_radius_ratio,
            } => generate_circles(*n, *noise, *inner_radius_ratio, seed),
            DataSource::Inline { instances } => Dataset::new("inline", instances.clone()),
        }
    }
}

/// Cartesian product of hyperparameter lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub k: Vec<usize>,
    pub e: Vec<f64>,
    pub b: Vec<usize>,
    pub alpha: Vec<f64>,
}

impl ParamGrid {
    pub fn single(p: HyperParams) -> Self {
        ParamGrid {
            k: vec![p.k],
            e: vec![p.e],
            b: vec![p.b],
            alpha: vec![p.alpha],
        }
    }

    /// Every combination, `k` varying slowest and `alpha` fastest.
    pub fn cells(&self) -> Result<Vec<HyperParams>> {
        let mut out = Vec::new();
        for &k in &self.k {
            for &e in &self.e {
                for &b in &self.b {
                    for &alpha in &self.alpha {
                        out.push(HyperParams::new(k, e, b, alpha)?);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("parameter grid is empty".into()));
        }
        Ok(out)
    }
}

/// Evaluation protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Protocol {
    /// `repeats` runs of `folds`-fold cross-validation.
    CrossValidation {
        folds: usize,
        #[serde(default = "one")]
        repeats: usize,
        #[serde(default = "yes")]
        stratified: bool,
    },
    /// `repeats` stratified train/test splits. With more than one grid cell
    /// the parameters are chosen per split by cross-validation on the
    /// training part only.
    Holdout {
        train_fraction: f64,
        #[serde(default = "one")]
        repeats: usize,
        #[serde(default = "ten")]
        inner_folds: usize,
    },
}

fn one() -> usize {
    1
}

fn ten() -> usize {
    10
}

impl Protocol {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Protocol::CrossValidation { folds, repeats, .. } => folds >= 2 && repeats >= 1,
            Protocol::Holdout {
                train_fraction,
                repeats,
                inner_folds,
            } => train_fraction > 0.0 && train_fraction < 1.0 && repeats >= 1 && inner_folds >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid protocol {self:?}"
            )))
        }
    }

    fn describe(&self) -> String {
        match *self {
            Protocol::CrossValidation { folds, repeats, .. } => {
                format!("{repeats}x{folds}-fold CV")
            }
            Protocol::Holdout {
                train_fraction,
                repeats,
                ..
            } => format!(
                "{repeats}x holdout {:.0}/{:.0}",
                100.0 * train_fraction,
                100.0 * (1.0 - train_fraction)
            ),
        }
    }
}

/// Inclusive acceptance band on the headline accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
}

impl Bounds {
    pub fn contains(&self, v: f64) -> bool {
        self.min.is_none_or(|m| v >= m) && self.max.is_none_or(|m| v <= m)
    }
}

impl std::fmt::Display for Bounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.min, self.max) {
            (Some(a), Some(b)) => write!(f, "[{a}, {b}]"),
            (Some(a), None) => write!(f, ">= {a}"),
            (None, Some(b)) => write!(f, "<= {b}"),
            (None, None) => f.write_str("-"),
        }
    }
}

/// A fully specified experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub source: DataSource,
    pub grid: ParamGrid,
    pub protocol: Protocol,
    #[serde(default)]
    pub mode: PredictMode,
    /// Min-max scale features using training statistics.
    #[serde(default)]
    pub scale: bool,
    #[serde(default)]
    pub seed: u64,
    /// Restrict the experiment to the training part of a stratified split
    /// with this fraction (drawn once from `seed`).
    #[serde(default)]
    pub train_split: Option<f64>,
    #[serde(default)]
    pub bounds: Option<Bounds>,
    /// Published accuracy, carried into reports for comparison.
    #[serde(default)]
    pub reference: Option<f64>,
}

/// Accuracy of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub params: HyperParams,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    /// One entry per fold (CV) or per split (holdout).
    pub fold_accuracies: Vec<f64>,
}

impl CellReport {
    fn from_accuracies(params: HyperParams, fold_accuracies: Vec<f64>) -> Self {
        let (mean_accuracy, std_accuracy) = mean_std(&fold_accuracies);
        CellReport {
            params,
            mean_accuracy,
            std_accuracy,
            fold_accuracies,
        }
    }
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (0.0, 0.0);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Outcome of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub name: String,
    pub protocol: String,
    pub mode: PredictMode,
    pub scaled: bool,
    /// Per grid cell. Under holdout with a multi-cell grid these are the
    /// inner cross-validation scores, pooled over splits.
    pub cells: Vec<CellReport>,
    /// Selected configuration (for holdout searches, the most frequently
    /// selected one).
    pub best: HyperParams,
    /// Headline accuracy: best CV mean, or mean test accuracy under holdout.
    pub accuracy: f64,
    pub std_accuracy: f64,
    pub confusion: ConfusionMatrix,
    pub distribution: DistributionCheck,
    pub reference: Option<f64>,
    #[serde(skip)]
    pub wall_clock_secs: f64,
}

/// Result of evaluating one parameter setting on one train/test pair.
struct FoldOutcome {
    accuracy: f64,
    confusion: ConfusionMatrix,
    distribution: DistributionCheck,
}

/// Trains on `train`, predicts `test` in order, and scores the predictions.
pub fn train_and_test(
    train: &Dataset,
    test: &Dataset,
    params: HyperParams,
    mode: PredictMode,
    scale: bool,
) -> Result<(f64, ConfusionMatrix, DistributionCheck)> {
    let o = run_fold(train, test, params, mode, scale)?;
    Ok((o.accuracy, o.confusion, o.distribution))
}

fn run_fold(
    train: &Dataset,
    test: &Dataset,
    params: HyperParams,
    mode: PredictMode,
    scale: bool,
) -> Result<FoldOutcome> {
    let mut model = TrainedModel::fit(train, params, scale)?;
    let predictions = predict_batch(&mut model, test.instances(), mode)?;
    let mut distribution = DistributionCheck::default();
    for p in &predictions {
        distribution.observe(p, params.alpha);
    }
    let predicted: Vec<&str> = predictions.iter().map(|p| p.label.as_str()).collect();
    let truths: Vec<&str> = test
        .instances()
        .iter()
        .map(|i| i.label.as_deref().unwrap_or(""))
        .collect();
    Ok(FoldOutcome {
        accuracy: accuracy(&predicted, &truths)?,
        confusion: ConfusionMatrix::from_labels(train.classes().to_vec(), &predicted, &truths),
        distribution,
    })
}

/// Options shared by every fold of a cross-validation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvOptions {
    pub folds: usize,
    pub stratified: bool,
    pub mode: PredictMode,
    pub scale: bool,
}

/// One pass of k-fold cross-validation of `params` on `ds`. Folds run in
/// parallel; results are merged in fold order.
fn cv_pass(
    ds: &Dataset,
    params: HyperParams,
    opts: CvOptions,
    seed: u64,
) -> Result<Vec<FoldOutcome>> {
    let folds = kfold(ds, opts.folds, seed, opts.stratified)?;
    folds
        .par_iter()
        .map(|f| run_fold(&f.train, &f.test, params, opts.mode, opts.scale))
        .collect()
}

/// Cross-validated search over `cells` using only `train`. Returns the
/// per-cell reports (in cell order) and the index of the winner.
pub fn grid_search_on(
    train: &Dataset,
    cells: &[HyperParams],
    opts: CvOptions,
    seed: u64,
) -> Result<(Vec<CellReport>, usize)> {
    let mut reports = Vec::with_capacity(cells.len());
    for &p in cells {
        let accs = cv_pass(train, p, opts, seed)?
            .into_iter()
            .map(|o| o.accuracy)
            .collect();
        reports.push(CellReport::from_accuracies(p, accs));
    }
    let best = select_best(&reports);
    Ok((reports, best))
}

/// Highest mean accuracy; ties to smaller `k`, then smaller `b`, then grid order.
fn select_best(cells: &[CellReport]) -> usize {
    let mut best = 0;
    for (i, c) in cells.iter().enumerate().skip(1) {
        let b = &cells[best];
        let better = c.mean_accuracy > b.mean_accuracy
            || (c.mean_accuracy == b.mean_accuracy
                && (c.params.k, c.params.b) < (b.params.k, b.params.b));
        if better {
            best = i;
        }
    }
    best
}

/// Evaluates a single-setting experiment.
pub fn cross_validate(config: &ExperimentConfig, base: &Path) -> Result<EvalReport> {
    if config.grid.cells()?.len() != 1 {
        return Err(Error::InvalidParameter(
            "cross_validate takes exactly one parameter setting; use grid_search".into(),
        ));
    }
    run_experiment(config, base)
}

/// Evaluates every grid cell and selects the best.
pub fn grid_search(config: &ExperimentConfig, base: &Path) -> Result<EvalReport> {
    run_experiment(config, base)
}

/// Runs an experiment under its protocol. Relative data paths resolve
/// against `base`.
pub fn run_experiment(config: &ExperimentConfig, base: &Path) -> Result<EvalReport> {
    let started = Instant::now();
    config.protocol.validate()?;
    let cells = config.grid.cells()?;

    let fixed = if config.source.is_generated() {
        None
    } else {
        Some(prepare(config, base, config.seed)?)
    };
    let dataset_for = |repeat_seed: u64| -> Result<Dataset> {
        match &fixed {
            Some(ds) => Ok(ds.clone()),
            None => prepare(config, base, repeat_seed),
        }
    };

    let mut confusion = ConfusionMatrix::new(Vec::new());
    let mut distribution = DistributionCheck::default();

    let (cell_reports, best, accuracy, std_accuracy) = match config.protocol {
        Protocol::CrossValidation {
            folds,
            repeats,
            stratified,
        } => {
            let opts = CvOptions {
                folds,
                stratified,
                mode: config.mode,
                scale: config.scale,
            };
            let mut datasets = Vec::with_capacity(repeats);
            for r in 0..repeats {
                let repeat_seed = derive_seed(config.seed, r as u64);
                datasets.push((dataset_for(repeat_seed)?, derive_seed(repeat_seed, 1)));
            }
            let mut per_cell = Vec::with_capacity(cells.len());
            let mut per_cell_outcomes = Vec::with_capacity(cells.len());
            for &p in &cells {
                let mut outcomes = Vec::new();
                for (ds, fold_seed) in &datasets {
                    outcomes.extend(cv_pass(ds, p, opts, *fold_seed)?);
                }
                per_cell.push(CellReport::from_accuracies(
                    p,
                    outcomes.iter().map(|o| o.accuracy).collect(),
                ));
                per_cell_outcomes.push(outcomes);
            }
            let best = select_best(&per_cell);
            for outcomes in &per_cell_outcomes {
                for o in outcomes {
                    distribution.merge(&o.distribution);
                }
            }
            for o in &per_cell_outcomes[best] {
                confusion.merge(&o.confusion);
            }
            let (acc, std) = (per_cell[best].mean_accuracy, per_cell[best].std_accuracy);
            (per_cell, cells[best], acc, std)
        }
        Protocol::Holdout {
            train_fraction,
            repeats,
            inner_folds,
        } => {
            let inner = CvOptions {
                folds: inner_folds,
                stratified: true,
                mode: config.mode,
                scale: config.scale,
            };
            let mut test_accs = Vec::with_capacity(repeats);
            let mut inner_accs: Vec<Vec<f64>> = vec![Vec::new(); cells.len()];
            let mut chosen_count = vec![0usize; cells.len()];
            for r in 0..repeats {
                let repeat_seed = derive_seed(config.seed, r as u64);
                let ds = dataset_for(repeat_seed)?;
                let (train, test) =
                    stratified_split(&ds, SplitSpec::stratified(train_fraction, repeat_seed))?;
                let chosen = if cells.len() == 1 {
                    0
                } else {
                    let (reports, best) =
                        grid_search_on(&train, &cells, inner, derive_seed(repeat_seed, 2))?;
                    for (acc, rep) in inner_accs.iter_mut().zip(reports) {
                        acc.extend(rep.fold_accuracies);
                    }
                    best
                };
                chosen_count[chosen] += 1;
                let o = run_fold(&train, &test, cells[chosen], config.mode, config.scale)?;
                test_accs.push(o.accuracy);
                confusion.merge(&o.confusion);
                distribution.merge(&o.distribution);
            }
            let best = (0..cells.len())
                .max_by(|&a, &b| chosen_count[a].cmp(&chosen_count[b]).then(b.cmp(&a)))
                .unwrap();
            let cell_reports = if cells.len() == 1 {
                vec![CellReport::from_accuracies(cells[0], test_accs.clone())]
            } else {
                cells
                    .iter()
                    .zip(inner_accs)
                    .map(|(&p, accs)| CellReport::from_accuracies(p, accs))
                    .collect()
            };
            let (acc, std) = mean_std(&test_accs);
            (cell_reports, cells[best], acc, std)
        }
    };

    Ok(EvalReport {
        name: config.name.clone(),
        protocol: config.protocol.describe(),
        mode: config.mode,
        scaled: config.scale,
        cells: cell_reports,
        best,
        accuracy,
        std_accuracy,
        confusion,
        distribution,
        reference: config.reference,
        wall_clock_secs: started.elapsed().as_secs_f64(),
    })
}

/// Loads the source and applies the optional training-split restriction.
fn prepare(config: &ExperimentConfig, base: &Path, seed: u64) -> Result<Dataset> {
    let ds = config.source.load(base, seed)?;
    match config.train_split {
        Some(f) => Ok(stratified_split(&ds, SplitSpec::stratified(f, config.seed))?.0),
        None => Ok(ds),
    }
}
