//! Betweenness-pattern classification of new instances.
//!
//! A probe is inserted into every class component. For each class the
//! normalized betweenness of the augmented component is recomputed and the
//! probe's score is compared with every original member; the mean of the `b`
//! smallest differences is that class's `W`. Link counts give `T`. Both are
//! normalized and mixed by `alpha` into the class distribution `H`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{betweenness, normalize_padded};
use crate::data::Instance;
use crate::error::Result;
use crate::graph::{InsertionProbe, TrainedModel};

/// How a probe's betweenness is compared with member nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DifferenceMode {
    /// `|B(probe) - B(j)|`: the `b` most similar nodes are averaged.
    #[default]
    Absolute,
    /// `B(probe) - B(j)` taken literally; kept for comparison runs only.
    Signed,
}

/// How a class the probe forms no links into is scored.
///
/// An isolated probe has betweenness 0, which every leaf of the component
/// matches exactly, so a literal comparison hands such classes `W = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnlinkedClass {
    /// `W = 1`: nothing structural to compare against.
    #[default]
    Dissimilar,
    /// Compare the isolated probe like any other.
    Literal,
}

/// Whether prediction grows the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictMode {
    /// The classified probe stays in the winning component.
    #[default]
    Growth,
    /// The model is left untouched.
    Stateless,
}

impl std::str::FromStr for PredictMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "growth" => Ok(PredictMode::Growth),
            "stateless" => Ok(PredictMode::Stateless),
            other => Err(format!(
                "unknown mode {other:?} (expected growth or stateless)"
            )),
        }
    }
}

/// Per-class intermediate arrays and the decision for one probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub w: Vec<f64>,
    pub t: Vec<usize>,
    pub w_norm: Vec<f64>,
    pub t_norm: Vec<f64>,
    pub h: Vec<f64>,
    /// Index of the decided class in the model's class order.
    pub decided: usize,
}

/// Scores `x` against every class without modifying the model.
pub fn score(model: &TrainedModel, x: &Instance) -> Result<ClassScores> {
    let mut probe = model.insert_probe(x)?;
    Ok(score_probe(model, &mut probe))
}

/// Scores an already inserted probe, filling its difference lists.
pub fn score_probe(model: &TrainedModel, probe: &mut InsertionProbe) -> ClassScores {
    let params = model.params();
    let mode = model.difference_mode();
    let unlinked = model.unlinked_class();
    let per_class: Vec<(f64, Vec<f64>)> = model
        .components()
        .par_iter()
        .zip(probe.links.par_iter())
        .enumerate()
        .map(|(c, (component, links))| {
            let p = component.len();
            let scores = if links.is_empty() {
                normalize_padded(model.component_raw(c), p + 1)
            } else {
                let (mut graph, ids) = component.to_graph();
                graph.add_node();
                for node in links {
                    let local = ids
                        .binary_search(node)
                        .expect("probe link inside component");
                    graph.add_edge(p, local);
                }
                betweenness(&graph)
            };
            let bp = scores[p];
            let mut nb: Vec<f64> = scores.as_slice()[..p]
                .iter()
                .map(|&bj| match mode {
                    DifferenceMode::Absolute => (bp - bj).abs(),
                    DifferenceMode::Signed => bp - bj,
                })
                .collect();
            nb.sort_by(f64::total_cmp);
            let pool = params.b.min(nb.len());
            let mut total = 0.0;
            for d in &nb[..pool] {
                total += d;
            }
            let w = if links.is_empty() && unlinked == UnlinkedClass::Dissimilar {
                1.0
            } else {
                total / pool as f64
            };
            (w, nb)
        })
        .collect();

    let (w, differences): (Vec<f64>, Vec<Vec<f64>>) = per_class.into_iter().unzip();
    probe.differences = differences;
    let t = probe.link_counts();
    fuse(w, t, params.alpha)
}

/// Normalizes `W` and `T`, mixes them by `alpha` and picks the winner.
pub fn fuse(w: Vec<f64>, t: Vec<usize>, alpha: f64) -> ClassScores {
    let c = w.len();
    let uniform = || vec![1.0 / c as f64; c];

    let complement: Vec<f64> = w.iter().map(|wi| 1.0 - wi).collect();
    let sum_complement: f64 = complement.iter().sum();
    let w_norm = if sum_complement > 0.0 {
        complement.iter().map(|v| v / sum_complement).collect()
    } else {
        uniform()
    };

    let sum_t: usize = t.iter().sum();
    let t_norm = if sum_t > 0 {
        t.iter().map(|&v| v as f64 / sum_t as f64).collect()
    } else {
        uniform()
    };

    let h = if alpha == 1.0 {
        w_norm.clone()
    } else if alpha == 0.0 {
        t_norm.clone()
    } else {
        let mixed: Vec<f64> = w_norm
            .iter()
            .zip(&t_norm)
            .map(|(wn, tn)| alpha * wn + (1.0 - alpha) * tn)
            .collect();
        let total: f64 = mixed.iter().sum();
        mixed.iter().map(|v| v / total).collect()
    };

    let decided = decide(&h, &t);
    ClassScores {
        w,
        t,
        w_norm,
        t_norm,
        h,
        decided,
    }
}

/// Highest `h`; ties go to more links, then to the earlier class.
fn decide(h: &[f64], t: &[usize]) -> usize {
    let mut best = 0;
    for c in 1..h.len() {
        if h[c] > h[best] || (h[c] == h[best] && t[c] > t[best]) {
            best = c;
        }
    }
    best
}

/// One classified instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    pub scores: ClassScores,
}

/// Classifies `x`; in growth mode the probe joins the winning component.
pub fn predict(model: &mut TrainedModel, x: &Instance, mode: PredictMode) -> Result<Prediction> {
    let mut probe = model.insert_probe(x)?;
    let scores = score_probe(model, &mut probe);
    let label = model.classes()[scores.decided].clone();
    if mode == PredictMode::Growth {
        model.attach(&probe, &label)?;
    }
    Ok(Prediction { label, scores })
}

/// Classifies a sequence of instances.
///
/// Growth mode is sequential and order dependent. Stateless mode scores
/// instances in parallel against the unchanged model and returns results in
/// input order.
pub fn predict_batch(
    model: &mut TrainedModel,
    xs: &[Instance],
    mode: PredictMode,
) -> Result<Vec<Prediction>> {
    match mode {
        PredictMode::Growth => xs.iter().map(|x| predict(model, x, mode)).collect(),
        PredictMode::Stateless => predict_stateless(model, xs),
    }
}

/// Stateless batch prediction through a shared reference.
pub fn predict_stateless(model: &TrainedModel, xs: &[Instance]) -> Result<Vec<Prediction>> {
    xs.par_iter()
        .map(|x| {
            let scores = score(model, x)?;
            Ok(Prediction {
                label: model.classes()[scores.decided].clone(),
                scores,
            })
        })
        .collect()
}

/// One line of the JSON-lines prediction output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub index: usize,
    pub decided: String,
    pub h: Vec<f64>,
    pub w: Vec<f64>,
    pub t: Vec<usize>,
}

impl PredictionRecord {
    pub fn new(index: usize, prediction: &Prediction) -> Self {
        PredictionRecord {
            index,
            decided: prediction.label.clone(),
            h: prediction.scores.h.clone(),
            w: prediction.scores.w.clone(),
            t: prediction.scores.t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;
    use crate::graph::{build_network, HyperParams};

    #[test]
    fn link_fractions_at_alpha_zero() {
        let s = fuse(vec![0.3, 0.1, 0.2], vec![3, 0, 0], 0.0);
        assert_eq!(s.h, vec![1.0, 0.0, 0.0]);
        assert_eq!(s.decided, 0);
    }

    #[test]
    fn betweenness_only_at_alpha_one() {
        let s = fuse(vec![0.2, 0.6], vec![1, 4], 1.0);
        assert!((s.w_norm[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.w_norm[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.h, s.w_norm);
        assert_eq!(s.decided, 0);
    }

    #[test]
    fn degenerate_sums_fall_back_to_uniform() {
        let s = fuse(vec![1.0, 1.0], vec![0, 0], 0.5);
        assert_eq!(s.w_norm, vec![0.5, 0.5]);
        assert_eq!(s.t_norm, vec![0.5, 0.5]);
        assert_eq!(s.h, vec![0.5, 0.5]);
    }

    #[test]
    fn ties_prefer_more_links_then_earlier_class() {
        assert_eq!(fuse(vec![0.2, 0.2], vec![1, 2], 1.0).decided, 1);
        assert_eq!(fuse(vec![0.2, 0.2, 0.2], vec![2, 2, 1], 1.0).decided, 0);
    }

    #[test]
    fn mixed_h_is_a_distribution() {
        let s = fuse(vec![0.05, 0.4, 0.9], vec![2, 5, 0], 0.4);
        assert!((s.h.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(s.h.iter().all(|&v| v >= 0.0));
    }

    fn two_cluster_model() -> TrainedModel {
        let mut rows = Vec::new();
        for i in 0..6 {
            rows.push(Instance::new(vec![i as f64, 0.0], "a"));
            rows.push(Instance::new(vec![i as f64, 10.0 + (i % 2) as f64], "b"));
        }
        build_network(
            &Dataset::new("t", rows).unwrap(),
            HyperParams::new(2, 0.0, 2, 1.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn stateless_prediction_is_pure() {
        let mut m = two_cluster_model();
        let hash = m.structural_hash();
        let x = Instance::unlabeled(vec![2.5, 0.5]);
        let a = predict(&mut m, &x, PredictMode::Stateless).unwrap();
        let b = predict(&mut m, &x, PredictMode::Stateless).unwrap();
        assert_eq!(a, b);
        assert_eq!(m.structural_hash(), hash);
    }

    #[test]
    fn growth_adds_node_to_winner_only() {
        let mut m = two_cluster_model();
        let sizes: Vec<usize> = m.components().iter().map(|c| c.len()).collect();
        let p = predict(
            &mut m,
            &Instance::unlabeled(vec![6.0, 0.0]),
            PredictMode::Growth,
        )
        .unwrap();
        let winner = m.class_index(&p.label).unwrap();
        for (c, comp) in m.components().iter().enumerate() {
            assert_eq!(comp.len(), sizes[c] + usize::from(c == winner));
        }
    }

    #[test]
    fn differences_cover_every_member() {
        let m = two_cluster_model();
        let mut probe = m
            .insert_probe(&Instance::unlabeled(vec![1.0, 1.0]))
            .unwrap();
        score_probe(&m, &mut probe);
        for (comp, nb) in m.components().iter().zip(&probe.differences) {
            assert_eq!(nb.len(), comp.len());
            assert!(nb.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "growth".parse::<PredictMode>().unwrap(),
            PredictMode::Growth
        );
        assert!("other".parse::<PredictMode>().is_err());
    }
}
