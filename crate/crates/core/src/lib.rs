//! High-level classification by betweenness-centrality patterns.
//!
//! Training builds one similarity network per class (kNN for sparse regions,
//! ε-radius for dense ones). A new instance is inserted into every class
//! network; the class whose nodes have betweenness most similar to the
//! inserted node's wins, optionally blended with how many links the instance
//! forms into each class.
//!
//! ```
//! use nbhl_core::{build_network, generate_moons, predict, HyperParams, Instance, PredictMode};
//!
//! let train = generate_moons(60, 0.0, 1).unwrap();
//! let mut model = build_network(&train, HyperParams::new(5, 0.5, 5, 1.0).unwrap()).unwrap();
//! let p = predict(&mut model, &Instance::unlabeled(vec![0.0, 1.0]), PredictMode::Stateless).unwrap();
//! assert_eq!(p.label, "0");
//! ```

pub mod centrality;
pub mod classifier;
pub mod data;
pub mod error;
pub mod eval;
pub mod graph;
pub mod suite;

pub use centrality::{betweenness, betweenness_oracle, CentralityScores, Graph};
pub use classifier::{
    fuse, predict, predict_batch, predict_stateless, score, score_probe, ClassScores,
    DifferenceMode, PredictMode, Prediction, PredictionRecord, UnlinkedClass,
};
pub use data::{
    derive_seed, generate_circles, generate_moons, kfold, load_csv, min_max_scale,
    read_csv_instances, stratified_split, Dataset, Fold, Instance, LabelColumn, Scaling, SplitSpec,
};
pub use error::{Error, Result};
pub use eval::{
    accuracy, cross_validate, grid_search, grid_search_on, run_experiment, train_and_test, Bounds,
    CellReport, ConfusionMatrix, CvOptions, DataSource, DistributionCheck, EvalReport,
    ExperimentConfig, ParamGrid, Protocol,
};
pub use graph::{
    build_network, pairwise_distance, ClassComponent, HyperParams, InsertionProbe, ModelDocument,
    NodeId, TrainedModel, MODEL_FORMAT,
};
pub use suite::{
    run_experiment_suite, run_manifest, ExperimentOutcome, Manifest, Status, SuiteReport,
};
