//! Per-class similarity networks.
//!
//! Every training instance becomes a node linked to its same-class
//! neighborhood: the ε-ball when it holds more than `k` nodes, otherwise the
//! `k` nearest same-class nodes. Classes therefore never share an edge and
//! each class owns one [`ClassComponent`].

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::centrality::Graph;
use crate::classifier::{DifferenceMode, UnlinkedClass};
use crate::data::{Dataset, Instance, Scaling};
use crate::error::{Error, Result};

pub type NodeId = usize;

/// The four knobs of the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    /// Neighbor count for kNN linking.
    pub k: usize,
    /// Quantile of the kNN distances used as the ε radius; 0 disables the
    /// radius rule entirely.
    pub e: f64,
    /// Number of most similar betweenness values averaged per class.
    pub b: usize,
    /// Weight of the betweenness term against the link-count term.
    pub alpha: f64,
}

impl HyperParams {
    pub fn new(k: usize, e: f64, b: usize, alpha: f64) -> Result<Self> {
        let p = HyperParams { k, e, b, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.e) {
            return Err(Error::InvalidParameter(format!(
                "e must lie in [0, 1], got {}",
                self.e
            )));
        }
        if self.b < 1 {
            return Err(Error::InvalidParameter("b must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    fn radius_enabled(&self) -> bool {
        self.e > 0.0
    }
}

/// Undirected, unweighted subgraph holding the nodes of one class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassComponent {
    class_id: String,
    adjacency: BTreeMap<NodeId, BTreeSet<NodeId>>,
}

impl ClassComponent {
    pub fn new(class_id: impl Into<String>) -> Self {
        ClassComponent {
            class_id: class_id.into(),
            adjacency: BTreeMap::new(),
        }
    }

    pub fn class_id(&self) -> &str {
        &self.class_id
    }

    /// Member nodes in ascending order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.adjacency.contains_key(&node)
    }

    pub fn neighbors(&self, node: NodeId) -> Option<&BTreeSet<NodeId>> {
        self.adjacency.get(&node)
    }

    /// Each undirected edge once, as `(low, high)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&a, ns)| ns.range((a + 1)..).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn add_node(&mut self, node: NodeId) {
        self.adjacency.entry(node).or_default();
    }

    /// Links two member nodes. Self-loops are ignored.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        assert!(
            self.contains(a) && self.contains(b),
            "edge endpoints must be members"
        );
        if a != b {
            self.adjacency.get_mut(&a).unwrap().insert(b);
            self.adjacency.get_mut(&b).unwrap().insert(a);
        }
    }

    /// Removes a node with its incident edges; returns whether it was present.
    pub fn remove_node(&mut self, node: NodeId) -> bool {
        let Some(ns) = self.adjacency.remove(&node) else {
            return false;
        };
        for n in ns {
            if let Some(set) = self.adjacency.get_mut(&n) {
                set.remove(&node);
            }
        }
        true
    }

    /// Compact copy of the component; local index `i` is the `i`-th member id.
    pub fn to_graph(&self) -> (Graph, Vec<NodeId>) {
        let ids: Vec<NodeId> = self.node_ids().collect();
        let mut g = Graph::with_nodes(ids.len());
        for (a, b) in self.edges() {
            let la = ids.binary_search(&a).unwrap();
            let lb = ids.binary_search(&b).unwrap();
            g.add_edge(la, lb);
        }
        (g, ids)
    }

    /// Normalized betweenness of every member, keyed by node id.
    pub fn betweenness(&self) -> BTreeMap<NodeId, f64> {
        let (g, ids) = self.to_graph();
        let scores = crate::centrality::betweenness(&g);
        ids.into_iter().zip(scores.into_vec()).collect()
    }
}

/// A test instance placed tentatively next to its neighbors in every class.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionProbe {
    /// Probe features after the model's scaling.
    pub features: Vec<f64>,
    /// Neighbors of the probe, partitioned by class index (ascending ids).
    pub links: Vec<Vec<NodeId>>,
    /// Sorted betweenness differences per class; filled in by scoring.
    pub differences: Vec<Vec<f64>>,
}

impl InsertionProbe {
    /// Number of probe links into each class.
    pub fn link_counts(&self) -> Vec<usize> {
        self.links.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct AttachedNode {
    features: Vec<f64>,
    class: usize,
}

/// The trained classifier: one component per class over the training nodes,
/// plus any probes attached in growth mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    params: HyperParams,
    difference: DifferenceMode,
    unlinked: UnlinkedClass,
    classes: Vec<String>,
    components: Vec<ClassComponent>,
    /// Raw betweenness sums per component, in `to_graph` order.
    component_raw: Vec<Vec<f64>>,
    train_points: Vec<Vec<f64>>,
    train_class: Vec<usize>,
    attached: BTreeMap<NodeId, AttachedNode>,
    class_epsilon: Vec<f64>,
    probe_epsilon: f64,
    scaling: Option<Scaling>,
}

/// Builds the training network on raw features.
pub fn build_network(train: &Dataset, params: HyperParams) -> Result<TrainedModel> {
    TrainedModel::fit(train, params, false)
}

impl TrainedModel {
    /// Builds the training network, optionally min-max scaling the features
    /// first (the same map is then applied to every probe).
    pub fn fit(train: &Dataset, params: HyperParams, scale: bool) -> Result<TrainedModel> {
        params.validate()?;
        if train.is_empty() {
            return Err(Error::NoDataRows);
        }
        if let Some(i) = train.instances().iter().position(|i| i.label.is_none()) {
            return Err(Error::UnlabeledTraining(i));
        }
        let classes = train.classes().to_vec();
        if classes.len() < 2 {
            return Err(Error::TooFewClasses(classes.len()));
        }
        let scaling = if scale {
            Some(Scaling::fit(train)?)
        } else {
            None
        };
        let train_points: Vec<Vec<f64>> = train
            .instances()
            .iter()
            .map(|i| match &scaling {
                Some(s) => s.apply(&i.features),
                None => i.features.clone(),
            })
            .collect();
        let train_class: Vec<usize> = train
            .instances()
            .iter()
            .map(|i| {
                let l = i.label.as_ref().unwrap();
                classes.iter().position(|c| c == l).unwrap()
            })
            .collect();

        let mut components = Vec::with_capacity(classes.len());
        let mut class_epsilon = Vec::with_capacity(classes.len());
        for (c, class) in classes.iter().enumerate() {
            let members: Vec<NodeId> = (0..train_points.len())
                .filter(|&i| train_class[i] == c)
                .collect();
            let (component, eps) = link_class(class, &members, &train_points, &params);
            components.push(component);
            class_epsilon.push(eps);
        }

        let probe_epsilon = if params.radius_enabled() {
            let all: Vec<NodeId> = (0..train_points.len()).collect();
            let mut knn_distances = Vec::new();
            for &i in &all {
                let ranked = ranked_neighbors(&train_points[i], &all, &train_points, Some(i));
                knn_distances.extend(ranked.iter().take(params.k).map(|&(d, _)| d));
            }
            quantile(&mut knn_distances, params.e)
        } else {
            0.0
        };

        Ok(TrainedModel {
            params,
            difference: DifferenceMode::Absolute,
            unlinked: UnlinkedClass::Dissimilar,
            classes,
            component_raw: components.iter().map(raw_sums).collect(),
            components,
            train_points,
            train_class,
            attached: BTreeMap::new(),
            class_epsilon,
            probe_epsilon,
            scaling,
        })
    }

    pub fn params(&self) -> &HyperParams {
        &self.params
    }

    /// Replaces `b` and `alpha`, which only affect scoring.
    pub fn set_scoring_params(&mut self, b: usize, alpha: f64) -> Result<()> {
        let p = HyperParams {
            b,
            alpha,
            ..self.params
        };
        p.validate()?;
        self.params = p;
        Ok(())
    }

    pub fn difference_mode(&self) -> DifferenceMode {
        self.difference
    }

    pub fn set_difference_mode(&mut self, mode: DifferenceMode) {
        self.difference = mode;
    }

    pub fn unlinked_class(&self) -> UnlinkedClass {
        self.unlinked
    }

    pub fn set_unlinked_class(&mut self, policy: UnlinkedClass) {
        self.unlinked = policy;
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn class_index(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn components(&self) -> &[ClassComponent] {
        &self.components
    }

    /// Cached raw betweenness sums of component `c`.
    pub(crate) fn component_raw(&self, c: usize) -> &[f64] {
        &self.component_raw[c]
    }

    pub fn dims(&self) -> usize {
        self.train_points.first().map_or(0, Vec::len)
    }

    pub fn train_count(&self) -> usize {
        self.train_points.len()
    }

    /// Training nodes plus attached probes.
    pub fn node_count(&self) -> usize {
        self.train_points.len() + self.attached.len()
    }

    pub fn attached_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.attached.keys().copied()
    }

    /// ε radius of each class (0 when the radius rule is disabled).
    pub fn class_epsilon(&self) -> &[f64] {
        &self.class_epsilon
    }

    /// ε radius applied to probes.
    pub fn probe_epsilon(&self) -> f64 {
        self.probe_epsilon
    }

    pub fn scaling(&self) -> Option<&Scaling> {
        self.scaling.as_ref()
    }

    /// Features of a node in model space (after scaling).
    pub fn node_features(&self, node: NodeId) -> Option<&[f64]> {
        if node < self.train_points.len() {
            Some(&self.train_points[node])
        } else {
            self.attached.get(&node).map(|a| a.features.as_slice())
        }
    }

    pub fn node_class(&self, node: NodeId) -> Option<usize> {
        if node < self.train_class.len() {
            Some(self.train_class[node])
        } else {
            self.attached.get(&node).map(|a| a.class)
        }
    }

    /// Maps raw instance features into model space.
    pub fn transform(&self, x: &Instance) -> Result<Vec<f64>> {
        if x.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: x.dims(),
            });
        }
        if let Some(feature) = x.features.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: 0, feature });
        }
        Ok(match &self.scaling {
            Some(s) => s.apply(&x.features),
            None => x.features.clone(),
        })
    }

    /// Computes where `x` would link in every class component.
    ///
    /// The neighbor set is label-free: the `k` nearest nodes over the whole
    /// network, replaced by the global ε-ball when that ball holds more than
    /// `k` nodes. The set is then split by the class of each neighbor, so a
    /// class may receive no links at all.
    pub fn insert_probe(&self, x: &Instance) -> Result<InsertionProbe> {
        let q = self.transform(x)?;
        let ranked = self.rank_all(&q);
        let k = self.params.k.min(ranked.len());
        let chosen: &[(f64, NodeId)] = if self.params.radius_enabled() {
            let ball = ranked.partition_point(|&(d, _)| d < self.probe_epsilon);
            if ball > self.params.k {
                &ranked[..ball]
            } else {
                &ranked[..k]
            }
        } else {
            &ranked[..k]
        };
        let mut links = vec![Vec::new(); self.classes.len()];
        for &(_, node) in chosen {
            links[self.node_class(node).unwrap()].push(node);
        }
        for l in &mut links {
            l.sort_unstable();
        }
        Ok(InsertionProbe {
            features: q,
            links,
            differences: Vec::new(),
        })
    }

    fn rank_all(&self, q: &[f64]) -> Vec<(f64, NodeId)> {
        let mut ranked: Vec<(f64, NodeId)> = self
            .train_points
            .iter()
            .enumerate()
            .map(|(i, p)| (euclidean(q, p), i))
            .chain(
                self.attached
                    .iter()
                    .map(|(&id, a)| (euclidean(q, &a.features), id)),
            )
            .collect();
        ranked.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        ranked
    }

    /// Adds the probe to `class` permanently, keeping only its links into that
    /// class. Returns the new node id.
    pub fn attach(&mut self, probe: &InsertionProbe, class: &str) -> Result<NodeId> {
        let c = self
            .class_index(class)
            .ok_or_else(|| Error::UnknownClass(class.to_string()))?;
        if probe.features.len() != self.dims() || probe.links.len() != self.classes.len() {
            return Err(Error::InvalidParameter(
                "probe was computed against another model".into(),
            ));
        }
        if let Some(&stale) = probe.links[c]
            .iter()
            .find(|&&n| !self.components[c].contains(n))
        {
            return Err(Error::InvalidParameter(format!(
                "probe links to node {stale}, which is no longer in the model"
            )));
        }
        let id = self
            .attached
            .last_key_value()
            .map_or(self.train_points.len(), |(&last, _)| last + 1);
        let component = &mut self.components[c];
        component.add_node(id);
        for &n in &probe.links[c] {
            component.add_edge(id, n);
        }
        self.component_raw[c] = raw_sums(&self.components[c]);
        self.attached.insert(
            id,
            AttachedNode {
                features: probe.features.clone(),
                class: c,
            },
        );
        Ok(id)
    }

    /// Removes a previously attached probe and its edges.
    pub fn detach(&mut self, node: NodeId) -> Result<()> {
        let a = self
            .attached
            .remove(&node)
            .ok_or(Error::NotAttached(node))?;
        self.components[a.class].remove_node(node);
        self.component_raw[a.class] = raw_sums(&self.components[a.class]);
        Ok(())
    }

    /// Hash over every structural and numeric field of the model.
    pub fn structural_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.classes.hash(&mut h);
        self.components.hash(&mut h);
        self.train_class.hash(&mut h);
        for p in &self.train_points {
            p.iter().for_each(|v| v.to_bits().hash(&mut h));
        }
        for (id, a) in &self.attached {
            id.hash(&mut h);
            a.class.hash(&mut h);
            a.features.iter().for_each(|v| v.to_bits().hash(&mut h));
        }
        self.class_epsilon
            .iter()
            .for_each(|v| v.to_bits().hash(&mut h));
        self.probe_epsilon.to_bits().hash(&mut h);
        h.finish()
    }

    pub fn to_document(&self) -> ModelDocument {
        let nodes = (0..self.train_points.len())
            .map(|i| NodeRecord {
                id: i,
                class: self.classes[self.train_class[i]].clone(),
                features: self.train_points[i].clone(),
                attached: false,
            })
            .chain(self.attached.iter().map(|(&id, a)| NodeRecord {
                id,
                class: self.classes[a.class].clone(),
                features: a.features.clone(),
                attached: true,
            }))
            .collect();
        let components = self
            .components
            .iter()
            .zip(&self.class_epsilon)
            .map(|(comp, &epsilon)| ComponentRecord {
                class: comp.class_id.clone(),
                epsilon,
                nodes: comp.node_ids().collect(),
                edges: comp.edges().map(|(a, b)| [a, b]).collect(),
            })
            .collect();
        ModelDocument {
            format: MODEL_FORMAT.to_string(),
            params: self.params,
            difference: self.difference,
            unlinked: self.unlinked,
            classes: self.classes.clone(),
            dims: self.dims(),
            scaling: self.scaling.clone(),
            probe_epsilon: self.probe_epsilon,
            nodes,
            components,
        }
    }

    pub fn from_document(doc: ModelDocument) -> Result<TrainedModel> {
        let bad = |m: String| Error::ModelFormat(m);
        if doc.format != MODEL_FORMAT {
            return Err(bad(format!("unsupported format tag {:?}", doc.format)));
        }
        doc.params.validate()?;
        if doc.components.len() != doc.classes.len() {
            return Err(bad("one component per class required".into()));
        }
        if let Some(s) = &doc.scaling {
            if s.min.len() != doc.dims || s.max.len() != doc.dims {
                return Err(bad("scaling dimensionality mismatch".into()));
            }
        }
        let class_of = |name: &str| {
            doc.classes
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| bad(format!("unknown class {name:?}")))
        };

        let mut train_points = Vec::new();
        let mut train_class = Vec::new();
        let mut attached = BTreeMap::new();
        for node in &doc.nodes {
            if node.features.len() != doc.dims || node.features.iter().any(|v| !v.is_finite()) {
                return Err(bad(format!("node {} has invalid features", node.id)));
            }
            let class = class_of(&node.class)?;
            if node.attached {
                if node.id < train_points.len() || attached.contains_key(&node.id) {
                    return Err(bad(format!("attached node id {} collides", node.id)));
                }
                attached.insert(
                    node.id,
                    AttachedNode {
                        features: node.features.clone(),
                        class,
                    },
                );
            } else {
                if node.id != train_points.len() || !attached.is_empty() {
                    return Err(bad(
                        "training nodes must be numbered 0..n and listed first".into()
                    ));
                }
                train_points.push(node.features.clone());
                train_class.push(class);
            }
        }

        let mut components = Vec::with_capacity(doc.classes.len());
        let mut class_epsilon = Vec::with_capacity(doc.classes.len());
        for (c, rec) in doc.components.iter().enumerate() {
            if rec.class != doc.classes[c] {
                return Err(bad("components must follow class order".into()));
            }
            let mut comp = ClassComponent::new(rec.class.clone());
            for &n in &rec.nodes {
                let owner = if n < train_class.len() {
                    Some(train_class[n])
                } else {
                    attached.get(&n).map(|a: &AttachedNode| a.class)
                };
                if owner != Some(c) {
                    return Err(bad(format!(
                        "node {n} does not belong to class {:?}",
                        rec.class
                    )));
                }
                comp.add_node(n);
            }
            for &[a, b] in &rec.edges {
                if !comp.contains(a) || !comp.contains(b) || a == b {
                    return Err(bad(format!("edge ({a}, {b}) leaves its component")));
                }
                comp.add_edge(a, b);
            }
            components.push(comp);
            class_epsilon.push(rec.epsilon);
        }
        let listed: usize = components.iter().map(ClassComponent::len).sum();
        if listed != train_points.len() + attached.len() {
            return Err(bad("components must partition the nodes".into()));
        }

        Ok(TrainedModel {
            params: doc.params,
            difference: doc.difference,
            unlinked: doc.unlinked,
            classes: doc.classes,
            component_raw: components.iter().map(raw_sums).collect(),
            components,
            train_points,
            train_class,
            attached,
            class_epsilon,
            probe_epsilon: doc.probe_epsilon,
            scaling: doc.scaling,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(text: &str) -> Result<TrainedModel> {
        TrainedModel::from_document(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TrainedModel> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TrainedModel::from_json(&text)
    }
}

pub const MODEL_FORMAT: &str = "nbhl-bc-model/1";

/// Self-describing JSON form of a [`TrainedModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub format: String,
    pub params: HyperParams,
    pub difference: DifferenceMode,
    #[serde(default)]
    pub unlinked: UnlinkedClass,
    pub classes: Vec<String>,
    pub dims: usize,
    pub scaling: Option<Scaling>,
    pub probe_epsilon: f64,
    pub nodes: Vec<NodeRecord>,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub class: String,
    pub features: Vec<f64>,
    #[serde(default)]
    pub attached: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub class: String,
    pub epsilon: f64,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<[NodeId; 2]>,
}

/// Links the members of one class and returns the component with its ε.
fn link_class(
    class: &str,
    members: &[NodeId],
    points: &[Vec<f64>],
    params: &HyperParams,
) -> (ClassComponent, f64) {
    let ranked: Vec<Vec<(f64, NodeId)>> = members
        .iter()
        .map(|&i| ranked_neighbors(&points[i], members, points, Some(i)))
        .collect();

    let epsilon = if params.radius_enabled() {
        let mut knn_distances: Vec<f64> = ranked
            .iter()
            .flat_map(|r| r.iter().take(params.k).map(|&(d, _)| d))
            .collect();
        quantile(&mut knn_distances, params.e)
    } else {
        0.0
    };

    let mut component = ClassComponent::new(class);
    for &i in members {
        component.add_node(i);
    }
    for (&i, r) in members.iter().zip(&ranked) {
        let ball = if params.radius_enabled() {
            r.partition_point(|&(d, _)| d < epsilon)
        } else {
            0
        };
        let take = if ball > params.k {
            ball
        } else {
            params.k.min(r.len())
        };
        for &(_, j) in &r[..take] {
            component.add_edge(i, j);
        }
    }
    (component, epsilon)
}

/// Candidates sorted by distance to `q`, ties broken by lower id.
fn ranked_neighbors(
    q: &[f64],
    candidates: &[NodeId],
    points: &[Vec<f64>],
    exclude: Option<NodeId>,
) -> Vec<(f64, NodeId)> {
    let mut out: Vec<(f64, NodeId)> = candidates
        .iter()
        .filter(|&&j| Some(j) != exclude)
        .map(|&j| (euclidean(q, &points[j]), j))
        .collect();
    out.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// Linearly interpolated quantile; 0 for an empty sample.
fn raw_sums(component: &ClassComponent) -> Vec<f64> {
    crate::centrality::raw_betweenness(&component.to_graph().0)
}

pub(crate) fn quantile(values: &mut [f64], q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable_by(f64::total_cmp);
    let pos = q * (values.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    values[lo] + (values[hi] - values[lo]) * (pos - lo as f64)
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Euclidean distance between two instances of equal dimensionality.
pub fn pairwise_distance(a: &Instance, b: &Instance) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            expected: a.dims(),
            found: b.dims(),
        });
    }
    Ok(euclidean(&a.features, &b.features))
}
