//! Labeled tabular data: CSV ingestion, synthetic generators, splitting and
//! feature scaling.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One feature vector with an optional class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub features: Vec<f64>,
    pub label: Option<String>,
}

impl Instance {
    pub fn new(features: Vec<f64>, label: impl Into<String>) -> Self {
        Instance {
            features,
            label: Some(label.into()),
        }
    }

    pub fn unlabeled(features: Vec<f64>) -> Self {
        Instance {
            features,
            label: None,
        }
    }

    pub fn dims(&self) -> usize {
        self.features.len()
    }
}

/// An ordered collection of instances sharing one dimensionality.
///
/// `classes` lists the distinct labels in order of first appearance and is
/// always recomputed from the instances, so it never drifts from the data.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    instances: Vec<Instance>,
    classes: Vec<String>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, instances: Vec<Instance>) -> Result<Self> {
        if let Some(first) = instances.first() {
            let d = first.dims();
            for (index, inst) in instances.iter().enumerate() {
                if inst.dims() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: inst.dims(),
                    });
                }
                if let Some(feature) = inst.features.iter().position(|v| !v.is_finite()) {
                    return Err(Error::NonFinite { index, feature });
                }
            }
        }
        let mut classes: Vec<String> = Vec::new();
        for label in instances.iter().filter_map(|i| i.label.as_ref()) {
            if !classes.contains(label) {
                classes.push(label.clone());
            }
        }
        Ok(Dataset {
            name: name.into(),
            instances,
            classes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn into_instances(self) -> Vec<Instance> {
        self.instances
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Feature dimensionality, or 0 for an empty dataset.
    pub fn dims(&self) -> usize {
        self.instances.first().map_or(0, Instance::dims)
    }

    /// Instance indices grouped by class, in class order.
    pub fn indices_by_class(&self) -> Vec<(String, Vec<usize>)> {
        self.classes
            .iter()
            .map(|c| {
                let idx = self
                    .instances
                    .iter()
                    .enumerate()
                    .filter(|(_, i)| i.label.as_ref() == Some(c))
                    .map(|(n, _)| n)
                    .collect();
                (c.clone(), idx)
            })
            .collect()
    }

    pub fn class_counts(&self) -> Vec<(String, usize)> {
        self.indices_by_class()
            .into_iter()
            .map(|(c, idx)| (c, idx.len()))
            .collect()
    }

    /// A new dataset holding the instances at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let instances = indices.iter().map(|&i| self.instances[i].clone()).collect();
        Dataset::new(self.name.clone(), instances).expect("subset of a valid dataset")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Writes the dataset as CSV with a header row and the label column last.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut buf = Vec::new();
        self.write_csv_to(&mut buf).map_err(|source| Error::Csv {
            path: path.into(),
            source,
        })?;
        std::fs::write(path, buf).map_err(|e| Error::io(path, e))
    }

    pub fn write_csv_to<W: std::io::Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (0..self.dims()).map(|j| format!("x{j}")).collect();
        header.push("label".into());
        w.write_record(&header)?;
        for inst in &self.instances {
            let mut rec: Vec<String> = inst.features.iter().map(|v| v.to_string()).collect();
            rec.push(inst.label.clone().unwrap_or_default());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
    #[default]
    Last,
    /// Every column is a feature.
    None,
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "last" => LabelColumn::Last,
            "none" => LabelColumn::None,
            _ => match s.parse::<usize>() {
                Ok(i) => LabelColumn::Index(i),
                Err(_) => LabelColumn::Name(s.to_string()),
            },
        })
    }
}

impl fmt::Display for LabelColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelColumn::Index(i) => write!(f, "{i}"),
            LabelColumn::Name(n) => write!(f, "{n:?}"),
            LabelColumn::Last => f.write_str("last"),
            LabelColumn::None => f.write_str("none"),
        }
    }
}

/// Loads a labeled dataset. Empty files are rejected.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: &LabelColumn,
    header: bool,
) -> Result<Dataset> {
    let path = path.as_ref();
    let instances = read_csv_instances(path, label_column, header)?;
    if instances.is_empty() {
        return Err(Error::NoDataRows);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Dataset::new(name, instances)
}

/// Reads every row of a CSV file as an instance. Unlike [`load_csv`] an
/// empty file yields an empty vector.
pub fn read_csv_instances(
    path: impl AsRef<Path>,
    label_column: &LabelColumn,
    header: bool,
) -> Result<Vec<Instance>> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&bytes, label_column, header).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv {
            path: path.into(),
            source,
        },
        other => other,
    })
}

pub(crate) fn parse_csv(
    bytes: &[u8],
    label_column: &LabelColumn,
    header: bool,
) -> Result<Vec<Instance>> {
    let csv_err = |source| Error::Csv {
        path: Default::default(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);

    let named_index = match label_column {
        LabelColumn::Name(name) => {
            if !header {
                return Err(Error::LabelColumnNotFound(name.clone()));
            }
            let headers = reader.headers().map_err(csv_err)?;
            Some(
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::LabelColumnNotFound(name.clone()))?,
            )
        }
        _ => None,
    };

    let mut width: Option<usize> = None;
    let mut instances = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let row = record
            .position()
            .map_or(instances.len() + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRow {
                row,
                expected,
                found: record.len(),
            });
        }
        let label_at = match label_column {
            LabelColumn::Index(i) => {
                if *i >= expected {
                    return Err(Error::LabelColumnNotFound(i.to_string()));
                }
                Some(*i)
            }
            LabelColumn::Name(_) => named_index,
            LabelColumn::Last => Some(expected - 1),
            LabelColumn::None => None,
        };

        let mut features = Vec::with_capacity(expected);
        let mut label = None;
        for (column, cell) in record.iter().enumerate() {
            if Some(column) == label_at {
                if cell.is_empty() {
                    return Err(Error::MissingLabel { row });
                }
                label = Some(cell.to_string());
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => features.push(v),
                _ => {
                    return Err(Error::ParseCell {
                        row,
                        column,
                        value: cell.to_string(),
                    })
                }
            }
        }
        instances.push(Instance { features, label });
    }
    Ok(instances)
}

/// Two interleaving half circles: `ceil(n/2)` points on the upper unit half
/// circle (label "0") and `floor(n/2)` on the lower one shifted by (1, 0.5)
/// (label "1"), with isotropic Gaussian noise of standard deviation `noise`.
pub fn generate_moons(n: usize, noise: f64, seed: u64) -> Result<Dataset> {
    check_generator(n, noise)?;
    let n_outer = n.div_ceil(2);
    let n_inner = n / 2;
    let mut points = Vec::with_capacity(n);
    for t in linspace(0.0, std::f64::consts::PI, n_outer, true) {
        points.push((vec![t.cos(), t.sin()], "0"));
    }
    for t in linspace(0.0, std::f64::consts::PI, n_inner, true) {
        points.push((vec![1.0 - t.cos(), 0.5 - t.sin()], "1"));
    }
    Dataset::new(format!("moons-{noise}"), add_noise(points, noise, seed))
}

/// Two concentric circles: `ceil(n/2)` points of radius 1 (label "0") and
/// `floor(n/2)` of radius `inner_radius_ratio` (label "1").
pub fn generate_circles(
    n: usize,
    noise: f64,
    inner_radius_ratio: f64,
    seed: u64,
) -> Result<Dataset> {
    check_generator(n, noise)?;
    if !(inner_radius_ratio > 0.0 && inner_radius_ratio < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "inner radius ratio must lie in (0, 1), got {inner_radius_ratio}"
        )));
    }
    let n_outer = n.div_ceil(2);
    let n_inner = n / 2;
    let tau = std::f64::consts::TAU;
    let mut points = Vec::with_capacity(n);
    for t in linspace(0.0, tau, n_outer, false) {
        points.push((vec![t.cos(), t.sin()], "0"));
    }
    for t in linspace(0.0, tau, n_inner, false) {
        points.push((
            vec![inner_radius_ratio * t.cos(), inner_radius_ratio * t.sin()],
            "1",
        ));
    }
    Dataset::new(format!("circles-{noise}"), add_noise(points, noise, seed))
}

fn check_generator(n: usize, noise: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 instances, got {n}"
        )));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise must be a finite non-negative standard deviation, got {noise}"
        )));
    }
    Ok(())
}

fn linspace(start: f64, stop: f64, n: usize, endpoint: bool) -> Vec<f64> {
    let div = if endpoint { n.saturating_sub(1) } else { n };
    if div == 0 {
        return vec![start; n];
    }
    let step = (stop - start) / div as f64;
    (0..n).map(|i| start + step * i as f64).collect()
}

fn add_noise(points: Vec<(Vec<f64>, &str)>, noise: f64, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise).expect("validated noise");
    points
        .into_iter()
        .map(|(mut x, label)| {
            if noise > 0.0 {
                for v in &mut x {
                    *v += normal.sample(&mut rng);
                }
            }
            Instance::new(x, label)
        })
        .collect()
}

/// Parameters of a train/test partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitSpec {
    pub fn stratified(train_fraction: f64, seed: u64) -> Self {
        SplitSpec {
            train_fraction,
            seed,
            stratified: true,
        }
    }
}

/// Splits `ds` into a training and a test set.
///
/// The test size is `ceil((1 - train_fraction) * N)`. Under stratification
/// each class first receives `floor(train_fraction * n_c)` training slots and
/// the remaining slots go to the classes with the largest fractional parts,
/// so every per-class count is within one instance of the target proportion.
/// Both halves come out in a seeded random order.
pub fn stratified_split(ds: &Dataset, spec: SplitSpec) -> Result<(Dataset, Dataset)> {
    let f = spec.train_fraction;
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train fraction must lie in (0, 1), got {f}"
        )));
    }
    let n = ds.len();
    let n_test = (((1.0 - f) * n as f64) - 1e-9).ceil().max(0.0) as usize;
    let n_train = n - n_test.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let (mut train, mut test) = if spec.stratified {
        let groups = ds.indices_by_class();
        for (class, idx) in &groups {
            if idx.len() < 2 {
                return Err(Error::ClassTooSmall {
                    class: class.clone(),
                    count: idx.len(),
                    required: 2,
                });
            }
        }
        if groups.is_empty() {
            return Err(Error::NoDataRows);
        }
        let quotas = allocate(
            &groups.iter().map(|(_, i)| i.len()).collect::<Vec<_>>(),
            f,
            n_train,
        );
        let mut train = Vec::new();
        let mut test = Vec::new();
        for ((_, mut idx), quota) in groups.into_iter().zip(quotas) {
            idx.shuffle(&mut rng);
            test.extend_from_slice(&idx[quota..]);
            idx.truncate(quota);
            train.extend(idx);
        }
        (train, test)
    } else {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        let test = idx.split_off(n_train);
        (idx, test)
    };
    train.shuffle(&mut rng);
    test.shuffle(&mut rng);
    Ok((ds.subset(&train), ds.subset(&test)))
}

/// Largest-remainder allocation of `total` training slots across classes,
/// keeping at least one training and one test instance per class.
fn allocate(counts: &[usize], fraction: f64, total: usize) -> Vec<usize> {
    let exact: Vec<f64> = counts.iter().map(|&c| c as f64 * fraction).collect();
    let mut quota: Vec<usize> = exact
        .iter()
        .zip(counts)
        .map(|(e, &c)| (e.floor() as usize).clamp(1, c - 1))
        .collect();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    // stable sort keeps class order among equal remainders
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra)
    });
    let mut assigned: usize = quota.iter().sum();
    for &c in order.iter().cycle().take(order.len() * 2) {
        if assigned >= total {
            break;
        }
        if quota[c] + 1 < counts[c] && (quota[c] as f64) < exact[c].ceil() {
            quota[c] += 1;
            assigned += 1;
        }
    }
    quota
}

/// One cross-validation fold.
#[derive(Debug, Clone)]
pub struct Fold {
    pub train: Dataset,
    pub test: Dataset,
    /// Positions of the test instances in the source dataset.
    pub test_indices: Vec<usize>,
}

/// Partitions `ds` into `folds` disjoint test sets.
///
/// Instances are shuffled (within each class when stratified), laid out class
/// after class and dealt round-robin, so fold sizes differ by at most one and
/// each class is spread evenly. Training sets keep the source order.
pub fn kfold(ds: &Dataset, folds: usize, seed: u64, stratified: bool) -> Result<Vec<Fold>> {
    if folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 folds, got {folds}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order: Vec<usize> = if stratified {
        let mut order = Vec::with_capacity(ds.len());
        for (class, mut idx) in ds.indices_by_class() {
            if idx.len() < folds {
                return Err(Error::ClassTooSmall {
                    class,
                    count: idx.len(),
                    required: folds,
                });
            }
            idx.shuffle(&mut rng);
            order.extend(idx);
        }
        order
    } else {
        if ds.len() < folds {
            return Err(Error::InvalidParameter(format!(
                "{} instances cannot fill {folds} folds",
                ds.len()
            )));
        }
        let mut idx: Vec<usize> = (0..ds.len()).collect();
        idx.shuffle(&mut rng);
        idx
    };

    let mut assignment = vec![0usize; ds.len()];
    let mut tests: Vec<Vec<usize>> = vec![Vec::new(); folds];
    for (pos, &i) in order.iter().enumerate() {
        assignment[i] = pos % folds;
        tests[pos % folds].push(i);
    }
    Ok(tests
        .into_iter()
        .enumerate()
        .map(|(f, test_indices)| {
            let train: Vec<usize> = (0..ds.len()).filter(|&i| assignment[i] != f).collect();
            Fold {
                train: ds.subset(&train),
                test: ds.subset(&test_indices),
                test_indices,
            }
        })
        .collect())
}

/// Per-feature affine map onto [0, 1] fitted on a training set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaling {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Scaling {
    pub fn fit(train: &Dataset) -> Result<Scaling> {
        let first = train.instances().first().ok_or(Error::NoDataRows)?;
        let mut min = first.features.clone();
        let mut max = first.features.clone();
        for inst in train.instances() {
            for (j, &v) in inst.features.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(Scaling { min, max })
    }

    pub fn dims(&self) -> usize {
        self.min.len()
    }

    /// Constant training features map to 0.
    pub fn apply(&self, features: &[f64]) -> Vec<f64> {
        features
            .iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(&v, (&lo, &hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }

    pub fn apply_instance(&self, inst: &Instance) -> Instance {
        Instance {
            features: self.apply(&inst.features),
            label: inst.label.clone(),
        }
    }

    pub fn apply_dataset(&self, ds: &Dataset) -> Result<Dataset> {
        if !ds.is_empty() && ds.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: ds.dims(),
            });
        }
        let instances = ds
            .instances()
            .iter()
            .map(|i| self.apply_instance(i))
            .collect();
        Dataset::new(ds.name(), instances)
    }
}

/// Fits min-max scaling on `train` and applies the same map to `others`.
pub fn min_max_scale(
    train: &Dataset,
    others: &[&Dataset],
) -> Result<(Dataset, Vec<Dataset>, Scaling)> {
    let scaling = Scaling::fit(train)?;
    let scaled_train = scaling.apply_dataset(train)?;
    let scaled_others = others
        .iter()
        .map(|d| scaling.apply_dataset(d))
        .collect::<Result<Vec<_>>>()?;
    Ok((scaled_train, scaled_others, scaling))
}

/// Derives an independent seed for stream `stream` of a master seed.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(rows: &[(&[f64], &str)]) -> Dataset {
        Dataset::new(
            "t",
            rows.iter()
                .map(|(x, l)| Instance::new(x.to_vec(), *l))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn classes_follow_first_appearance() {
        let ds = labeled(&[(&[1.0], "b"), (&[2.0], "a"), (&[3.0], "b")]);
        assert_eq!(ds.classes(), ["b", "a"]);
    }

    #[test]
    fn rejects_non_finite_and_ragged_instances() {
        let bad = Dataset::new("t", vec![Instance::new(vec![f64::NAN], "a")]);
        assert!(matches!(
            bad,
            Err(Error::NonFinite {
                index: 0,
                feature: 0
            })
        ));
        let ragged = Dataset::new(
            "t",
            vec![
                Instance::new(vec![1.0], "a"),
                Instance::new(vec![1.0, 2.0], "a"),
            ],
        );
        assert!(matches!(ragged, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn parse_single_row() {
        let rows = parse_csv(b"1.0,2.0,A\n", &LabelColumn::Last, false).unwrap();
        let ds = Dataset::new("one", rows).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.dims(), 2);
        assert_eq!(ds.classes(), ["A"]);
    }

    #[test]
    fn parse_reports_cell_location() {
        let err = parse_csv(b"a,b,c\n1,2,x\n3,oops,y\n", &LabelColumn::Last, true).unwrap_err();
        match err {
            Error::ParseCell { row, column, value } => {
                assert_eq!((row, column, value.as_str()), (3, 1, "oops"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn parse_missing_label_and_ragged() {
        let err = parse_csv(b"1,2,\n", &LabelColumn::Last, false).unwrap_err();
        assert!(matches!(err, Error::MissingLabel { row: 1 }));
        let err = parse_csv(b"1,2,a\n1,a\n", &LabelColumn::Last, false).unwrap_err();
        assert!(matches!(
            err,
            Error::RaggedRow {
                row: 2,
                expected: 3,
                found: 2
            }
        ));
    }

    #[test]
    fn label_column_by_name_and_index() {
        let text = b"cls,x,y\nA,1,2\nB,3,4\n";
        let by_name = parse_csv(text, &LabelColumn::Name("cls".into()), true).unwrap();
        let by_index = parse_csv(text, &LabelColumn::Index(0), true).unwrap();
        assert_eq!(by_name, by_index);
        assert_eq!(by_name[1].features, vec![3.0, 4.0]);
        assert_eq!(by_name[1].label.as_deref(), Some("B"));
        assert!(matches!(
            parse_csv(text, &LabelColumn::Name("nope".into()), true),
            Err(Error::LabelColumnNotFound(_))
        ));
    }

    #[test]
    fn label_column_from_str() {
        assert_eq!("last".parse::<LabelColumn>().unwrap(), LabelColumn::Last);
        assert_eq!("3".parse::<LabelColumn>().unwrap(), LabelColumn::Index(3));
        assert_eq!(
            "class".parse::<LabelColumn>().unwrap(),
            LabelColumn::Name("class".into())
        );
    }

    #[test]
    fn empty_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        std::fs::write(&path, "").unwrap();
        let err = load_csv(&path, &LabelColumn::Last, false).unwrap_err();
        assert_eq!(err.to_string(), "no data rows");
    }

    #[test]
    fn csv_write_then_read() {
        let ds = generate_moons(20, 0.1, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        ds.write_csv(&path).unwrap();
        let back = load_csv(&path, &LabelColumn::Last, true).unwrap();
        assert_eq!(back.instances(), ds.instances());
    }

    #[test]
    fn generators_reject_bad_parameters() {
        assert!(generate_moons(1, 0.0, 0).is_err());
        assert!(generate_moons(10, -1.0, 0).is_err());
        assert!(generate_circles(10, 0.0, 1.0, 0).is_err());
        assert!(generate_circles(10, 0.0, 0.0, 0).is_err());
    }

    #[test]
    fn moons_zero_noise_geometry() {
        let ds = generate_moons(100, 0.0, 99).unwrap();
        assert_eq!(ds.class_counts(), vec![("0".into(), 50), ("1".into(), 50)]);
        for inst in ds.instances() {
            let (x, y) = (inst.features[0], inst.features[1]);
            let r = if inst.label.as_deref() == Some("0") {
                (x * x + y * y).sqrt()
            } else {
                ((x - 1.0).powi(2) + (y - 0.5).powi(2)).sqrt()
            };
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_counts_put_extra_point_in_first_class() {
        let ds = generate_moons(7, 0.0, 0).unwrap();
        assert_eq!(ds.class_counts(), vec![("0".into(), 4), ("1".into(), 3)]);
    }

    #[test]
    fn circles_zero_noise_radii() {
        let ds = generate_circles(100, 0.0, 0.5, 1).unwrap();
        for inst in ds.instances() {
            let r = inst.features.iter().map(|v| v * v).sum::<f64>().sqrt();
            let want = if inst.label.as_deref() == Some("0") {
                1.0
            } else {
                0.5
            };
            assert!((r - want).abs() < 1e-12);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            generate_moons(100, 0.25, 7).unwrap(),
            generate_moons(100, 0.25, 7).unwrap()
        );
        assert_eq!(
            generate_circles(100, 0.25, 0.8, 7).unwrap(),
            generate_circles(100, 0.25, 0.8, 7).unwrap()
        );
        assert_ne!(
            generate_moons(100, 0.25, 7).unwrap(),
            generate_moons(100, 0.25, 8).unwrap()
        );
    }

    fn blocks(sizes: &[(&str, usize)]) -> Dataset {
        let mut rows = Vec::new();
        let mut v = 0.0;
        for (label, n) in sizes {
            for _ in 0..*n {
                rows.push(Instance::new(vec![v], *label));
                v += 1.0;
            }
        }
        Dataset::new("blocks", rows).unwrap()
    }

    #[test]
    fn stratified_split_iris_shape() {
        let ds = blocks(&[("a", 50), ("b", 50), ("c", 50)]);
        let (train, test) = stratified_split(&ds, SplitSpec::stratified(0.75, 1)).unwrap();
        assert_eq!(train.len() + test.len(), 150);
        for (_, n) in train.class_counts() {
            assert!(n == 37 || n == 38, "{n}");
        }
    }

    #[test]
    fn stratified_split_zoo_sizes() {
        let ds = blocks(&[
            ("mammal", 41),
            ("bird", 20),
            ("reptile", 5),
            ("fish", 13),
            ("amphibian", 4),
            ("insect", 8),
            ("invertebrate", 10),
        ]);
        let (train, test) = stratified_split(&ds, SplitSpec::stratified(0.75, 5)).unwrap();
        assert!(train.len() == 75 || train.len() == 76, "{}", train.len());
        assert_eq!(test.len(), 101 - train.len());
        let train_counts = train.class_counts();
        for (class, total) in ds.class_counts() {
            let n = train_counts.iter().find(|(c, _)| *c == class).unwrap().1;
            assert!(
                (n as f64 - 0.75 * total as f64).abs() <= 1.0,
                "{class}: {n} of {total}"
            );
        }
    }

    #[test]
    fn stratified_split_rejects_singleton_class() {
        let ds = blocks(&[("a", 5), ("lonely", 1)]);
        let err = stratified_split(&ds, SplitSpec::stratified(0.75, 0)).unwrap_err();
        assert!(err.to_string().contains("lonely"));
    }

    #[test]
    fn kfold_sizes_and_errors() {
        let ds = blocks(&[("a", 50), ("b", 50), ("c", 50)]);
        let folds = kfold(&ds, 10, 3, true).unwrap();
        assert!(folds
            .iter()
            .all(|f| f.test.len() == 15 && f.train.len() == 135));

        let four = blocks(&[("a", 2), ("b", 2)]);
        let folds = kfold(&four, 2, 0, false).unwrap();
        assert_eq!(folds[0].test.len(), 2);
        assert!(folds[0]
            .test_indices
            .iter()
            .all(|i| !folds[1].test_indices.contains(i)));

        assert!(matches!(
            kfold(&blocks(&[("a", 3), ("b", 20)]), 5, 0, true),
            Err(Error::ClassTooSmall { required: 5, .. })
        ));
        assert!(kfold(&four, 1, 0, false).is_err());
    }

    #[test]
    fn min_max_examples() {
        let train = labeled(&[(&[2.0, 5.0], "a"), (&[4.0, 5.0], "a"), (&[6.0, 5.0], "b")]);
        let test = labeled(&[(&[8.0, 7.0], "a")]);
        let (scaled, others, scaling) = min_max_scale(&train, &[&test]).unwrap();
        let col0: Vec<f64> = scaled.instances().iter().map(|i| i.features[0]).collect();
        let col1: Vec<f64> = scaled.instances().iter().map(|i| i.features[1]).collect();
        assert_eq!(col0, vec![0.0, 0.5, 1.0]);
        assert_eq!(col1, vec![0.0, 0.0, 0.0]);
        assert_eq!(others[0].instances()[0].features[0], 1.5);
        assert_eq!(scaling.min, vec![2.0, 5.0]);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(9, 4), derive_seed(9, 4));
    }
}
