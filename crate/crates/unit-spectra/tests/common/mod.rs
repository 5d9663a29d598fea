//! Shared helpers for integration tests: seeded random hypergraph samplers.
//!
//! Not every test target uses every sampler.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use unit_spectra::hypergraph::Hypergraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraph with `1..=n_max` vertices and `0..=m_max` distinct
/// edges of at least `min_edge_size` members.
pub fn random_hypergraph(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    m_max: usize,
    min_edge_size: usize,
) -> Hypergraph {
    let n = rng.gen_range(min_edge_size.max(1)..=n_max.max(min_edge_size.max(1)));
    let m = rng.gen_range(0..=m_max);
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut edges = Vec::new();
    for _ in 0..m {
        for _attempt in 0..20 {
            let size = rng.gen_range(min_edge_size..=n);
            let mut members: Vec<usize> = (0..n).collect();
            members.shuffle(rng);
            members.truncate(size);
            let set: BTreeSet<usize> = members.iter().copied().collect();
            if seen.insert(set.clone()) {
                edges.push((
                    format!("e{}", edges.len() + 1),
                    set.iter().map(|&v| vertices[v].clone()).collect::<Vec<_>>(),
                ));
                break;
            }
        }
    }
    Hypergraph::new(vertices, edges).expect("sampler produces valid hypergraphs")
}

/// Random hypergraph guaranteed to support a random walk (every vertex in
/// some edge of size >= 2) and to contain a planted unit of size >= 2
/// (one vertex is cloned star-for-star).
pub fn random_walkable_with_unit(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> Hypergraph {
    loop {
        let base = random_hypergraph(rng, n_max.saturating_sub(1).max(2), m_max, 2);
        if base.n_edges() == 0 {
            continue;
        }
        // Every vertex must lie in some edge; resample otherwise.
        if (0..base.n_vertices()).any(|v| base.star(v).is_empty()) {
            continue;
        }
        let target = rng.gen_range(0..base.n_vertices());
        let clone_label = (base.n_vertices() + 1).to_string();
        let mut vertices: Vec<String> = base.vertex_labels().to_vec();
        vertices.push(clone_label.clone());
        let edges: Vec<(String, Vec<String>)> = (0..base.n_edges())
            .map(|e| {
                let mut members = base.edge_label_set(e);
                if base.edge_contains(e, target) {
                    members.push(clone_label.clone());
                }
                (base.edge_name(e).to_string(), members)
            })
            .collect();
        return Hypergraph::new(vertices, edges).expect("cloning preserves validity");
    }
}

/// Random simple connected hypergraph with more than one edge, all edges of
/// size >= 2 (rejection sampling).
pub fn random_simple_connected(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> Hypergraph {
    loop {
        let h = random_hypergraph(rng, n_max, m_max.max(2), 2);
        if h.n_edges() > 1 && h.is_simple() && h.is_connected() {
            return h;
        }
    }
}
