//! Hypergraph data model, validation, weight configurations, and file I/O.
//!
//! A [`Hypergraph`] is a finite ordered vertex set plus a set of named,
//! pairwise-distinct, nonempty hyperedges. Vertex and edge order is the
//! document order of the input; every matrix in the crate is indexed by that
//! canonical order.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("empty vertex label")]
    EmptyVertexLabel,
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge name {0:?}")]
    DuplicateEdgeName(String),
    #[error("edge {0:?} is empty")]
    EmptyEdge(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertexInEdge { edge: String, vertex: String },
    #[error("edge {edge:?} lists vertex {vertex:?} twice")]
    RepeatedMember { edge: String, vertex: String },
    #[error("duplicate edge: {first:?} and {second:?} have the same member set")]
    DuplicateEdge { first: String, second: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("empty vertex set given")]
    EmptyVertexSet,
    #[error("weight for {0} must be positive, got {1}")]
    NonPositiveWeight(String, f64),
    #[error("preset {preset} requires |e| >= 2, but edge {edge:?} is a singleton")]
    SingletonEdgeUnderPreset { preset: char, edge: String },
    #[error("preset N requires a nonempty star, but vertex {0:?} is isolated")]
    IsolatedVertexUnderN(String),
    #[error("weight map entry {0:?} does not match any vertex or edge")]
    DanglingWeight(String),
    #[error("missing weight for {0:?}")]
    MissingWeight(String),
}

/// A finite hypergraph with canonical (input-order) vertex and edge indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edge_names: Vec<String>,
    edges: Vec<BTreeSet<usize>>,
    stars: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates and builds a hypergraph. Edge member sets must be pairwise
    /// distinct and nonempty; every member must be a declared vertex.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, Vec<String>)>,
    ) -> Result<Self, HypergraphError> {
        let mut vertex_index = HashMap::new();
        for (i, label) in vertices.iter().enumerate() {
            if label.is_empty() {
                return Err(HypergraphError::EmptyVertexLabel);
            }
            if vertex_index.insert(label.clone(), i).is_some() {
                return Err(HypergraphError::DuplicateVertex(label.clone()));
            }
        }
        let mut edge_names = Vec::with_capacity(edges.len());
        let mut member_sets: Vec<BTreeSet<usize>> = Vec::with_capacity(edges.len());
        let mut seen_names = HashSet::new();
        let mut seen_sets: HashMap<BTreeSet<usize>, String> = HashMap::new();
        for (name, members) in edges {
            if !seen_names.insert(name.clone()) {
                return Err(HypergraphError::DuplicateEdgeName(name));
            }
            if members.is_empty() {
                return Err(HypergraphError::EmptyEdge(name));
            }
            let mut set = BTreeSet::new();
            for label in &members {
                let &idx = vertex_index.get(label).ok_or_else(|| {
                    HypergraphError::UnknownVertexInEdge {
                        edge: name.clone(),
                        vertex: label.clone(),
                    }
                })?;
                if !set.insert(idx) {
                    return Err(HypergraphError::RepeatedMember {
                        edge: name.clone(),
                        vertex: label.clone(),
                    });
                }
            }
            if let Some(first) = seen_sets.get(&set) {
                return Err(HypergraphError::DuplicateEdge {
                    first: first.clone(),
                    second: name,
                });
            }
            seen_sets.insert(set.clone(), name.clone());
            edge_names.push(name);
            member_sets.push(set);
        }
        let mut stars = vec![Vec::new(); vertices.len()];
        for (e, set) in member_sets.iter().enumerate() {
            for &v in set {
                stars[v].push(e);
            }
        }
        Ok(Self {
            vertices,
            vertex_index,
            edge_names,
            edges: member_sets,
            stars,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, label: &str) -> Result<usize, HypergraphError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| HypergraphError::UnknownVertex(label.to_string()))
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn edge_members(&self, e: usize) -> &BTreeSet<usize> {
        &self.edges[e]
    }

    pub fn edge_size(&self, e: usize) -> usize {
        self.edges[e].len()
    }

    pub fn edge_contains(&self, e: usize, v: usize) -> bool {
        self.edges[e].contains(&v)
    }

    /// The star `E_v(H)`: indices of all edges containing `v`, in edge order.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    /// Star of a set of vertices: the intersection of the member stars.
    pub fn star_of_set(&self, vertices: &[usize]) -> Result<Vec<usize>, HypergraphError> {
        if vertices.is_empty() {
            return Err(HypergraphError::EmptyVertexSet);
        }
        let mut result: Vec<usize> = self.stars[vertices[0]].clone();
        for &v in &vertices[1..] {
            let star: HashSet<usize> = self.stars[v].iter().copied().collect();
            result.retain(|e| star.contains(e));
        }
        Ok(result)
    }

    /// Edges shared by `u` and `v`, i.e. `E_{uv}(H)`.
    pub fn shared_star(&self, u: usize, v: usize) -> Vec<usize> {
        let sv: HashSet<usize> = self.stars[v].iter().copied().collect();
        self.stars[u]
            .iter()
            .copied()
            .filter(|e| sv.contains(e))
            .collect()
    }

    /// Connectivity under alternating vertex-edge paths. Vacuously true for
    /// hypergraphs with at most one vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut edge_seen = vec![false; self.n_edges()];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &e in &self.stars[v] {
                if edge_seen[e] {
                    continue;
                }
                edge_seen[e] = true;
                for &u in &self.edges[e] {
                    if !seen[u] {
                        seen[u] = true;
                        count += 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        count == n
    }

    /// True iff no edge is strictly contained in another.
    pub fn is_simple(&self) -> bool {
        for (i, e) in self.edges.iter().enumerate() {
            for (j, f) in self.edges.iter().enumerate() {
                if i != j && e.is_subset(f) {
                    return false;
                }
            }
        }
        true
    }

    pub fn edge_label_set(&self, e: usize) -> Vec<String> {
        self.edges[e]
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    /// Looks up an edge by member set, if present.
    pub fn find_edge(&self, members: &BTreeSet<usize>) -> Option<usize> {
        self.edges.iter().position(|e| e == members)
    }
}

/// Tag for the three weight presets from the literature plus custom weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightPreset {
    /// `delta_V = 1`, `delta_E(e) = |e|^2`.
    R,
    /// `delta_V = 1`, `delta_E(e) = |e|^2 / (|e| - 1)`.
    B,
    /// `delta_V(v) = |E_v(H)|`, `delta_E(e) = |e|^2 / (|e| - 1)`.
    N,
    Custom,
}

impl std::fmt::Display for WeightPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightPreset::R => write!(f, "R"),
            WeightPreset::B => write!(f, "B"),
            WeightPreset::N => write!(f, "N"),
            WeightPreset::Custom => write!(f, "custom"),
        }
    }
}

/// Positive vertex weights `delta_V` and edge weights `delta_E`; indexed by
/// the hypergraph's canonical order. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfig {
    preset: WeightPreset,
    vertex_weights: Vec<f64>,
    edge_weights: Vec<f64>,
}

impl WeightConfig {
    /// Builds one of the three presets. B and N reject singleton edges
    /// (the `|e| - 1` denominator); N additionally rejects isolated vertices.
    pub fn preset(h: &Hypergraph, preset: WeightPreset) -> Result<Self, HypergraphError> {
        if matches!(preset, WeightPreset::B | WeightPreset::N) {
            for e in 0..h.n_edges() {
                if h.edge_size(e) < 2 {
                    return Err(HypergraphError::SingletonEdgeUnderPreset {
                        preset: if preset == WeightPreset::B { 'B' } else { 'N' },
                        edge: h.edge_name(e).to_string(),
                    });
                }
            }
        }
        let vertex_weights: Vec<f64> = match preset {
            WeightPreset::R | WeightPreset::B => vec![1.0; h.n_vertices()],
            WeightPreset::N => {
                let mut w = Vec::with_capacity(h.n_vertices());
                for v in 0..h.n_vertices() {
                    let deg = h.star(v).len();
                    if deg == 0 {
                        return Err(HypergraphError::IsolatedVertexUnderN(
                            h.vertex_label(v).to_string(),
                        ));
                    }
                    w.push(deg as f64);
                }
                w
            }
            WeightPreset::Custom => unreachable!("custom preset goes through WeightConfig::custom"),
        };
        let edge_weights: Vec<f64> = (0..h.n_edges())
            .map(|e| {
                let k = h.edge_size(e) as f64;
                match preset {
                    WeightPreset::R => k * k,
                    WeightPreset::B | WeightPreset::N => k * k / (k - 1.0),
                    WeightPreset::Custom => unreachable!(),
                }
            })
            .collect();
        Ok(Self {
            preset,
            vertex_weights,
            edge_weights,
        })
    }

    /// Custom weights from explicit per-vertex and per-edge values.
    pub fn custom(
        h: &Hypergraph,
        vertex_weights: Vec<f64>,
        edge_weights: Vec<f64>,
    ) -> Result<Self, HypergraphError> {
        assert_eq!(vertex_weights.len(), h.n_vertices());
        assert_eq!(edge_weights.len(), h.n_edges());
        for (v, &w) in vertex_weights.iter().enumerate() {
            if !(w > 0.0) {
                return Err(HypergraphError::NonPositiveWeight(
                    format!("vertex {}", h.vertex_label(v)),
                    w,
                ));
            }
        }
        for (e, &w) in edge_weights.iter().enumerate() {
            if !(w > 0.0) {
                return Err(HypergraphError::NonPositiveWeight(
                    format!("edge {}", h.edge_name(e)),
                    w,
                ));
            }
        }
        Ok(Self {
            preset: WeightPreset::Custom,
            vertex_weights,
            edge_weights,
        })
    }

    pub fn preset_tag(&self) -> WeightPreset {
        self.preset
    }

    pub fn delta_v(&self, v: usize) -> f64 {
        self.vertex_weights[v]
    }

    pub fn delta_e(&self, e: usize) -> f64 {
        self.edge_weights[e]
    }

    /// `sigma_H(e) = delta_E(e) / |e|^2`.
    pub fn sigma(&self, h: &Hypergraph, e: usize) -> f64 {
        let k = h.edge_size(e) as f64;
        self.edge_weights[e] / (k * k)
    }

    /// `rho_H(e) = delta_E(e) / |e|`.
    pub fn rho(&self, h: &Hypergraph, e: usize) -> f64 {
        self.edge_weights[e] / h.edge_size(e) as f64
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.vertex_weights
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }
}

/// On-disk `.hg.json` document shape.
#[derive(Serialize, Deserialize)]
struct Document {
    vertices: Vec<String>,
    edges: serde_json::Map<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_weights: Option<serde_json::Map<String, serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_weights: Option<serde_json::Map<String, serde_json::Value>>,
}

/// Parses a `.hg.json` document. Vertex and edge order is document order.
/// Returns the embedded weights as well when both weight maps are present.
pub fn parse_hypergraph(text: &str) -> Result<(Hypergraph, Option<WeightConfig>), HypergraphError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| HypergraphError::Malformed(e.to_string()))?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (name, value) in &doc.edges {
        let members: Vec<String> = serde_json::from_value(value.clone())
            .map_err(|e| HypergraphError::Malformed(format!("edge {name:?}: {e}")))?;
        edges.push((name.clone(), members));
    }
    let h = Hypergraph::new(doc.vertices, edges)?;
    let weights = match (doc.vertex_weights, doc.edge_weights) {
        (Some(vw), Some(ew)) => {
            let mut vertex_weights = vec![f64::NAN; h.n_vertices()];
            for (label, value) in &vw {
                let idx = h
                    .vertex_id(label)
                    .map_err(|_| HypergraphError::DanglingWeight(label.clone()))?;
                vertex_weights[idx] = value
                    .as_f64()
                    .ok_or_else(|| HypergraphError::Malformed(format!("weight {label:?}")))?;
            }
            let mut edge_weights = vec![f64::NAN; h.n_edges()];
            for (name, value) in &ew {
                let idx = h
                    .edge_id(name)
                    .ok_or_else(|| HypergraphError::DanglingWeight(name.clone()))?;
                edge_weights[idx] = value
                    .as_f64()
                    .ok_or_else(|| HypergraphError::Malformed(format!("weight {name:?}")))?;
            }
            for v in 0..h.n_vertices() {
                if vertex_weights[v].is_nan() {
                    return Err(HypergraphError::MissingWeight(
                        h.vertex_label(v).to_string(),
                    ));
                }
            }
            for e in 0..h.n_edges() {
                if edge_weights[e].is_nan() {
                    return Err(HypergraphError::MissingWeight(h.edge_name(e).to_string()));
                }
            }
            Some(WeightConfig::custom(&h, vertex_weights, edge_weights)?)
        }
        _ => None,
    };
    Ok((h, weights))
}

/// Serializes to the `.hg.json` format, round-tripping with
/// [`parse_hypergraph`] bit-exactly for canonical ordering.
pub fn serialize_hypergraph(h: &Hypergraph, weights: Option<&WeightConfig>) -> String {
    let mut edges = serde_json::Map::new();
    for e in 0..h.n_edges() {
        edges.insert(
            h.edge_name(e).to_string(),
            serde_json::json!(h.edge_label_set(e)),
        );
    }
    let (vertex_weights, edge_weights) = match weights {
        Some(w) => {
            let mut vw = serde_json::Map::new();
            for v in 0..h.n_vertices() {
                vw.insert(
                    h.vertex_label(v).to_string(),
                    serde_json::json!(w.delta_v(v)),
                );
            }
            let mut ew = serde_json::Map::new();
            for e in 0..h.n_edges() {
                ew.insert(h.edge_name(e).to_string(), serde_json::json!(w.delta_e(e)));
            }
            (Some(vw), Some(ew))
        }
        None => (None, None),
    };
    let doc = Document {
        vertices: h.vertex_labels().to_vec(),
        edges,
        vertex_weights,
        edge_weights,
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}
