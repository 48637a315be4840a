//! Brute-force reference implementations shared by the integration tests.
//! They deliberately avoid the library's neighbor and scoring code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nbhl_core::{betweenness, Dataset, Graph, HyperParams, Instance};

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// numpy-style linear-interpolation quantile.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = q * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

/// Indices of `candidates` sorted by distance to `q`, ties to the lower index.
pub fn sorted_by_distance(q: &[f64], points: &[Vec<f64>], candidates: &[usize]) -> Vec<usize> {
    let mut c = candidates.to_vec();
    c.sort_by(|&a, &b| {
        dist(q, &points[a])
            .total_cmp(&dist(q, &points[b]))
            .then(a.cmp(&b))
    });
    c
}

/// Training edges by applying the construction rule node by node.
pub fn naive_edges(train: &Dataset, p: &HyperParams) -> BTreeSet<(usize, usize)> {
    let points: Vec<Vec<f64>> = train
        .instances()
        .iter()
        .map(|i| i.features.clone())
        .collect();
    let labels: Vec<&str> = train
        .instances()
        .iter()
        .map(|i| i.label.as_deref().unwrap())
        .collect();
    let mut edges = BTreeSet::new();
    for class in train.classes() {
        let members: Vec<usize> = (0..points.len()).filter(|&i| labels[i] == class).collect();
        let knn = |i: usize| -> Vec<usize> {
            let others: Vec<usize> = members.iter().copied().filter(|&j| j != i).collect();
            sorted_by_distance(&points[i], &points, &others)
                .into_iter()
                .take(p.k)
                .collect()
        };
        let mut all_knn_distances = Vec::new();
        for &i in &members {
            for j in knn(i) {
                all_knn_distances.push(dist(&points[i], &points[j]));
            }
        }
        let eps = if p.e > 0.0 && !all_knn_distances.is_empty() {
            Some(quantile(&all_knn_distances, p.e))
        } else {
            None
        };
        for &i in &members {
            let ball: Vec<usize> = match eps {
                Some(eps) => members
                    .iter()
                    .copied()
                    .filter(|&j| j != i && dist(&points[i], &points[j]) < eps)
                    .collect(),
                None => Vec::new(),
            };
            let chosen = if ball.len() > p.k { ball } else { knn(i) };
            for j in chosen {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    edges
}

/// The probe's global neighbor set over the training points.
pub fn naive_probe_neighbors(train: &Dataset, p: &HyperParams, x: &[f64]) -> Vec<usize> {
    let points: Vec<Vec<f64>> = train
        .instances()
        .iter()
        .map(|i| i.features.clone())
        .collect();
    let all: Vec<usize> = (0..points.len()).collect();
    let knn: Vec<usize> = sorted_by_distance(x, &points, &all)
        .into_iter()
        .take(p.k)
        .collect();
    if p.e == 0.0 {
        return knn;
    }
    let mut train_knn = Vec::new();
    for i in 0..points.len() {
        let others: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        for j in sorted_by_distance(&points[i], &points, &others)
            .into_iter()
            .take(p.k)
        {
            train_knn.push(dist(&points[i], &points[j]));
        }
    }
    let eps = quantile(&train_knn, p.e);
    let ball: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&j| dist(x, &points[j]) < eps)
        .collect();
    if ball.len() > p.k {
        ball
    } else {
        knn
    }
}

/// Per-class intermediate values of one literal classification run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleScores {
    pub w: Vec<f64>,
    pub t: Vec<usize>,
    pub h: Vec<f64>,
    pub decided: usize,
}

/// Step-by-step classification of `x` against a model built from `train`.
///
/// Each class graph is rebuilt from the naive edge set, the probe is appended
/// as the last node, and node betweenness comes from the library's exact
/// routine (itself checked against the path-enumeration oracle). Classes the
/// probe has no link into score `W = 1`; `H` at `alpha` 0 or 1 is the matching
/// normalized array itself.
pub fn literal_classification(train: &Dataset, p: &HyperParams, x: &Instance) -> OracleScores {
    let edges = naive_edges(train, p);
    let neighbors = naive_probe_neighbors(train, p, &x.features);
    let labels: Vec<&str> = train
        .instances()
        .iter()
        .map(|i| i.label.as_deref().unwrap())
        .collect();

    let mut w_list = Vec::new();
    let mut t_list = Vec::new();
    for class in train.classes() {
        let vertices: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        let index = vertices.len();
        let mut g = Graph::with_nodes(index + 1);
        for &(a, b) in &edges {
            if let (Ok(la), Ok(lb)) = (vertices.binary_search(&a), vertices.binary_search(&b)) {
                g.add_edge(la, lb);
            }
        }
        let mut links = 0;
        for (local, j) in vertices.iter().enumerate() {
            if neighbors.contains(j) {
                g.add_edge(index, local);
                links += 1;
            }
        }
        let b_scores = betweenness(&g);
        let mut nb = Vec::new();
        for j in 0..index {
            nb.push((b_scores[index] - b_scores[j]).abs());
        }
        nb.sort_by(f64::total_cmp);
        let pool = p.b.min(nb.len());
        let mut total = 0.0;
        let mut count = 0;
        while count < pool {
            total += nb[count];
            count += 1;
        }
        total /= pool as f64;
        w_list.push(if links == 0 { 1.0 } else { total });
        t_list.push(links);
    }

    let c = w_list.len();
    let mut wn: Vec<f64> = w_list.iter().map(|w| 1.0 - w).collect();
    let s: f64 = wn.iter().sum();
    if s > 0.0 {
        wn.iter_mut().for_each(|v| *v /= s);
    } else {
        wn = vec![1.0 / c as f64; c];
    }
    let st: usize = t_list.iter().sum();
    let tn: Vec<f64> = if st > 0 {
        t_list.iter().map(|&t| t as f64 / st as f64).collect()
    } else {
        vec![1.0 / c as f64; c]
    };
    let h: Vec<f64> = if p.alpha == 1.0 {
        wn
    } else if p.alpha == 0.0 {
        tn
    } else {
        let raw: Vec<f64> = wn
            .iter()
            .zip(&tn)
            .map(|(a, b)| p.alpha * a + (1.0 - p.alpha) * b)
            .collect();
        let s: f64 = raw.iter().sum();
        raw.iter().map(|v| v / s).collect()
    };
    let mut decided = 0;
    for i in 1..c {
        if h[i] > h[decided] || (h[i] == h[decided] && t_list[i] > t_list[decided]) {
            decided = i;
        }
    }
    OracleScores {
        w: w_list,
        t: t_list,
        h,
        decided,
    }
}

/// Small deterministic generator for fixtures (no dependency on the
/// library's seeding).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize % n
    }
}

/// Random points in the unit square, labeled round-robin over `classes`.
pub fn random_dataset(n: usize, dims: usize, classes: usize, seed: u64) -> Dataset {
    let mut rng = Lcg(seed);
    let rows = (0..n)
        .map(|i| {
            let f = (0..dims).map(|_| rng.next_f64()).collect();
            Instance::new(f, format!("c{}", i % classes))
        })
        .collect();
    Dataset::new("random", rows).unwrap()
}

/// The frozen two-class fixture: six nodes per class at fixed coordinates.
pub fn twelve_node_fixture() -> Dataset {
    let a = [
        [0.0, 0.0],
        [1.0, 0.2],
        [2.1, 0.1],
        [0.4, 1.1],
        [1.6, 1.3],
        [3.0, 0.9],
    ];
    let b = [
        [0.5, 4.0],
        [1.4, 4.6],
        [2.2, 3.8],
        [3.1, 4.4],
        [0.9, 5.5],
        [2.6, 5.2],
    ];
    let mut rows = Vec::new();
    for p in a {
        rows.push(Instance::new(p.to_vec(), "A"));
    }
    for p in b {
        rows.push(Instance::new(p.to_vec(), "B"));
    }
    Dataset::new("twelve", rows).unwrap()
}

pub fn uci(name: &str) -> Dataset {
    let path = format!("{}/../../data/{name}.csv", env!("CARGO_MANIFEST_DIR"));
    nbhl_core::load_csv(path, &nbhl_core::LabelColumn::Last, true).unwrap()
}
