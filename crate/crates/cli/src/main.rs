use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nbhl_core::{
    generate_circles, generate_moons, load_csv, predict_batch, read_csv_instances, run_experiment,
    run_experiment_suite, DataSource, DifferenceMode, Error, ExperimentConfig, ExperimentOutcome,
    HyperParams, LabelColumn, ParamGrid, PredictMode, PredictionRecord, Protocol, Status,
    SuiteReport, TrainedModel, UnlinkedClass,
};

/// Network-based high-level classification with betweenness centrality.
#[derive(Debug, Parser)]
#[command(name = "nbhl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic two-class dataset as CSV (label column last).
    Generate(GenerateArgs),
    /// Build a model from a labeled CSV and save it as JSON.
    Train(TrainArgs),
    /// Classify CSV rows with a saved model; emits JSON lines.
    Predict(PredictArgs),
    /// Evaluate one hyperparameter setting.
    Evaluate(EvaluateArgs),
    /// Grid-search hyperparameter lists.
    Sweep(SweepArgs),
    /// Run an experiment manifest and print the summary table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Moons,
    Circles,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    kind: Shape,
    #[arg(long, default_value_t = 100, value_parser = parse_count)]
    n: usize,
    #[arg(long, default_value_t = 0.0, value_parser = parse_noise)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inner circle radius relative to the outer one (circles only).
    #[arg(long, default_value_t = nbhl_core::eval::DEFAULT_INNER_RADIUS_RATIO, value_parser = parse_open_unit)]
    inner_ratio: f64,
    /// Output path; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CsvArgs {
    /// Label column: name, zero-based index, "last" or "none".
    #[arg(long, default_value = "last")]
    label_column: LabelColumn,
    /// The CSV has no header row.
    #[arg(long)]
    no_header: bool,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Neighbors per node.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Quantile of kNN distances used as the radius; 0 disables the radius rule.
    #[arg(long, default_value_t = 0.0, value_parser = parse_unit)]
    e: f64,
    /// Most similar nodes averaged per class.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    b: u64,
    /// Weight of the betweenness term against the link-count term.
    #[arg(long, default_value_t = 1.0, value_parser = parse_unit)]
    alpha: f64,
}

impl ParamArgs {
    fn params(&self) -> HyperParams {
        HyperParams::new(self.k as usize, self.e, self.b as usize, self.alpha)
            .expect("validated by the parser")
    }
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Labeled training CSV.
    data: PathBuf,
    #[command(flatten)]
    csv: CsvArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Min-max scale features using the training data.
    #[arg(long)]
    scale: bool,
    /// Compare betweenness by signed rather than absolute difference.
    #[arg(long)]
    signed_differences: bool,
    /// Score classes the instance has no links into like any other class,
    /// instead of treating them as maximally dissimilar.
    #[arg(long)]
    literal_unlinked: bool,
    /// Where to write the model JSON.
    #[arg(long, short)]
    out: PathBuf,
    /// Print a JSON summary instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    /// Rows to classify.
    data: PathBuf,
    /// Label column to ignore, if the rows carry one.
    #[arg(long, default_value = "none")]
    label_column: LabelColumn,
    #[arg(long)]
    no_header: bool,
    #[arg(long, default_value = "growth")]
    mode: PredictMode,
    /// Write the grown model here (growth mode).
    #[arg(long)]
    save_model: Option<PathBuf>,
    /// Output path; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Labeled CSV dataset.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    data: Option<PathBuf>,
    #[command(flatten)]
    csv: CsvArgs,
    /// Use a synthetic dataset regenerated per repeat.
    #[arg(long)]
    generate: Option<Shape>,
    #[arg(long, default_value_t = 100, value_parser = parse_count)]
    n: usize,
    #[arg(long, default_value_t = 0.0, value_parser = parse_noise)]
    noise: f64,
    #[arg(long, default_value_t = nbhl_core::eval::DEFAULT_INNER_RADIUS_RATIO, value_parser = parse_open_unit)]
    inner_ratio: f64,
}

impl SourceArgs {
    fn source(&self) -> DataSource {
        match (&self.data, self.generate) {
            (Some(path), _) => DataSource::Csv {
                path: path.clone(),
                label_column: Some(match &self.csv.label_column {
                    LabelColumn::Name(n) => n.clone(),
                    other => other.to_string(),
                }),
                header: !self.csv.no_header,
            },
            (None, Some(Shape::Moons)) => DataSource::Moons {
                n: self.n,
                noise: self.noise,
            },
            (None, Some(Shape::Circles)) => DataSource::Circles {
                n: self.n,
                noise: self.noise,
                inner_radius_ratio: self.inner_ratio,
            },
            (None, None) => unreachable!("clap requires a source"),
        }
    }
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    folds: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use stratified holdout with this training fraction instead of CV.
    #[arg(long, value_parser = parse_open_unit)]
    train_fraction: Option<f64>,
    #[arg(long, default_value = "growth")]
    mode: PredictMode,
    #[arg(long)]
    scale: bool,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
}

impl ProtocolArgs {
    fn protocol(&self) -> Protocol {
        match self.train_fraction {
            Some(train_fraction) => Protocol::Holdout {
                train_fraction,
                repeats: self.repeats as usize,
                inner_folds: self.folds as usize,
            },
            None => Protocol::CrossValidation {
                folds: self.folds as usize,
                repeats: self.repeats as usize,
                stratified: true,
            },
        }
    }
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    protocol: ProtocolArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    k: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "0.0", value_parser = parse_unit)]
    e: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = clap::value_parser!(u64).range(1..))]
    b: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1.0", value_parser = parse_unit)]
    alpha: Vec<f64>,
    #[command(flatten)]
    protocol: ProtocolArgs,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    manifest: PathBuf,
    /// Also write the JSON report to this file.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("expected an integer >= 2, got {s:?}")),
    }
}

fn parse_noise(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a non-negative number, got {s:?}")),
    }
}

fn parse_unit(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("expected a number in [0, 1], got {s:?}")),
    }
}

fn parse_open_unit(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v < 1.0 => Ok(v),
        _ => Err(format!("expected a number in (0, 1), got {s:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn run(command: Command) -> CliResult {
    match command {
        Command::Generate(a) => generate(a),
        Command::Train(a) => train(a),
        Command::Predict(a) => predict(a),
        Command::Evaluate(a) => {
            let grid = ParamGrid::single(a.params.params());
            evaluate(&a.source, grid, &a.protocol)
        }
        Command::Sweep(a) => {
            let grid = ParamGrid {
                k: a.k.iter().map(|&v| v as usize).collect(),
                e: a.e.clone(),
                b: a.b.iter().map(|&v| v as usize).collect(),
                alpha: a.alpha.clone(),
            };
            evaluate(&a.source, grid, &a.protocol)
        }
        Command::Reproduce(a) => reproduce(a),
    }
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                io::Error::new(e.kind(), format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn generate(a: GenerateArgs) -> CliResult {
    let ds = match a.kind {
        Shape::Moons => generate_moons(a.n, a.noise, a.seed)?,
        Shape::Circles => generate_circles(a.n, a.noise, a.inner_ratio, a.seed)?,
    };
    let mut out = output(a.out.as_deref())?;
    ds.write_csv_to(&mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn train(a: TrainArgs) -> CliResult {
    let params = a.params.params();
    let ds = load_csv(&a.data, &a.csv.label_column, !a.csv.no_header)?;
    let mut model = TrainedModel::fit(&ds, params, a.scale)?;
    if a.signed_differences {
        model.set_difference_mode(DifferenceMode::Signed);
    }
    if a.literal_unlinked {
        model.set_unlinked_class(UnlinkedClass::Literal);
    }
    model.save(&a.out)?;
    let sizes: Vec<(String, usize, usize)> = model
        .components()
        .iter()
        .map(|c| (c.class_id().to_string(), c.len(), c.edge_count()))
        .collect();
    if a.json {
        let summary = serde_json::json!({
            "model": a.out,
            "instances": ds.len(),
            "dims": model.dims(),
            "components": sizes.iter().map(|(c, n, e)| serde_json::json!({"class": c, "nodes": n, "edges": e})).collect::<Vec<_>>(),
        });
        println!("{summary}");
    } else {
        println!(
            "trained on {} instances ({} features) -> {}",
            ds.len(),
            model.dims(),
            a.out.display()
        );
        for (c, n, e) in sizes {
            println!("  class {c}: {n} nodes, {e} edges");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn predict(a: PredictArgs) -> CliResult {
    let mut model = TrainedModel::load(&a.model)?;
    let rows = read_csv_instances(&a.data, &a.label_column, !a.no_header)?;
    let predictions = predict_batch(&mut model, &rows, a.mode)?;
    let mut out = output(a.out.as_deref())?;
    for (i, p) in predictions.iter().enumerate() {
        serde_json::to_writer(&mut out, &PredictionRecord::new(i, p))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    if let Some(path) = a.save_model {
        model.save(path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate(source: &SourceArgs, grid: ParamGrid, p: &ProtocolArgs) -> CliResult {
    let source = source.source();
    let name = match &source {
        DataSource::Csv { path, .. } => path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        ),
        DataSource::Moons { noise, .. } => format!("moons {noise}"),
        DataSource::Circles { noise, .. } => format!("circles {noise}"),
        DataSource::Inline { .. } => "inline".into(),
    };
    let config = ExperimentConfig {
        name,
        source,
        grid,
        protocol: p.protocol(),
        mode: p.mode,
        scale: p.scale,
        seed: p.seed,
        train_split: None,
        bounds: None,
        reference: None,
    };
    let report = run_experiment(&config, Path::new("."))?;
    if p.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let suite = SuiteReport {
            seed: p.seed,
            experiments: vec![ExperimentOutcome {
                name: config.name.clone(),
                status: Status::Pass,
                bounds: None,
                report: Some(report.clone()),
                error: None,
            }],
        };
        print!("{}", suite.summary_table());
        if report.cells.len() > 1 {
            println!();
            println!(
                "{:>4} {:>6} {:>4} {:>6} {:>9} {:>7}",
                "k", "e", "b", "alpha", "accuracy", "std"
            );
            for c in &report.cells {
                println!(
                    "{:>4} {:>6} {:>4} {:>6} {:>9.3} {:>7.3}",
                    c.params.k,
                    c.params.e,
                    c.params.b,
                    c.params.alpha,
                    c.mean_accuracy,
                    c.std_accuracy
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn reproduce(a: ReproduceArgs) -> CliResult {
    let report = run_experiment_suite(&a.manifest).map_err(|e| match e {
        Error::Io { .. } => e,
        other => Error::Manifest(format!("{}: {other}", a.manifest.display())),
    })?;
    let json = report.to_json()?;
    if let Some(path) = &a.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if a.json {
        println!("{json}");
    } else {
        print!("{}", report.summary_table());
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
