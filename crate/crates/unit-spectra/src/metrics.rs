//! Unit graph, unit-distance pseudometric, distance-based centralities,
//! girth, clique and partition numbers, and unit-walk counts.
//!
//! All distances run through the *unit graph* `G_H`: one node per unit, an
//! edge when two units lie together in some hyperedge. The unit distance
//! between two vertices is the graph distance of their units; it is a
//! pseudometric whose zero classes are exactly the units.

use std::collections::VecDeque;

use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::units::{unit_neighbours, UnitPartition};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("unit-walk count overflows u64 at length {0}")]
    CountOverflow(usize),
    #[error("exact clique search supports at most {max} units, got {got}")]
    TooManyUnits { max: usize, got: usize },
}

/// The simple graph on units with unit-neighbour pairs as edges.
#[derive(Debug, Clone)]
pub struct UnitGraph {
    pub n: usize,
    pub adjacency: Vec<Vec<bool>>,
    pub edges: Vec<(usize, usize)>,
}

pub fn unit_graph(h: &Hypergraph, p: &UnitPartition) -> UnitGraph {
    let n = p.n_units();
    let mut adjacency = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for (i, j) in unit_neighbours(h, p) {
        adjacency[i][j] = true;
        adjacency[j][i] = true;
        edges.push((i, j));
    }
    UnitGraph {
        n,
        adjacency,
        edges,
    }
}

impl UnitGraph {
    fn bfs(&self, start: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in 0..self.n {
                if self.adjacency[u][v] && dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs distances; `None` marks unreachable pairs.
    pub fn distances(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.n).map(|s| self.bfs(s)).collect()
    }

    /// Girth: length of the shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for &(a, b) in &self.edges {
            // Shortest a-b path avoiding the edge {a, b} closes the
            // shortest cycle through that edge.
            let mut dist = vec![None; self.n];
            dist[a] = Some(0u32);
            let mut queue = VecDeque::from([a]);
            while let Some(u) = queue.pop_front() {
                let d = dist[u].unwrap();
                for v in 0..self.n {
                    if !self.adjacency[u][v] || dist[v].is_some() {
                        continue;
                    }
                    if (u == a && v == b) || (u == b && v == a) {
                        continue;
                    }
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
            if let Some(d) = dist[b] {
                let cycle = d + 1;
                best = Some(best.map_or(cycle, |g| g.min(cycle)));
            }
        }
        best
    }

    /// Exact maximum clique via branch and bound with a greedy coloring
    /// bound. Intended for desk scale; refuses beyond 64 units.
    pub fn clique_number(&self) -> Result<usize, MetricsError> {
        const MAX_UNITS: usize = 64;
        if self.n > MAX_UNITS {
            return Err(MetricsError::TooManyUnits {
                max: MAX_UNITS,
                got: self.n,
            });
        }
        if self.n == 0 {
            return Ok(0);
        }
        fn greedy_bound(g: &UnitGraph, candidates: &[usize]) -> usize {
            // Number of colors a greedy proper coloring needs bounds the
            // clique size among the candidates.
            let mut n_colors = 0usize;
            let mut assigned: Vec<(usize, usize)> = Vec::new();
            for &v in candidates {
                let mut used = vec![false; n_colors];
                for &(u, c) in &assigned {
                    if g.adjacency[u][v] {
                        used[c] = true;
                    }
                }
                match used.iter().position(|&taken| !taken) {
                    Some(c) => assigned.push((v, c)),
                    None => {
                        assigned.push((v, n_colors));
                        n_colors += 1;
                    }
                }
            }
            n_colors
        }
        fn expand(g: &UnitGraph, current: usize, candidates: Vec<usize>, best: &mut usize) {
            if candidates.is_empty() {
                *best = (*best).max(current);
                return;
            }
            if current + greedy_bound(g, &candidates) <= *best {
                return;
            }
            for (idx, &v) in candidates.iter().enumerate() {
                if current + (candidates.len() - idx) <= *best {
                    break;
                }
                let next: Vec<usize> = candidates[idx + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| g.adjacency[v][u])
                    .collect();
                expand(g, current + 1, next, best);
            }
        }
        let mut best = 1;
        expand(self, 0, (0..self.n).collect(), &mut best);
        Ok(best)
    }
}

/// Distance report over a hypergraph: the unit-distance pseudometric plus
/// the derived quantities.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    /// Unit-level distance table; `None` marks unreachable pairs.
    pub unit_distances: Vec<Vec<Option<u32>>>,
    pub connected: bool,
    /// Per-vertex eccentricity; `None` when the hypergraph is disconnected.
    pub eccentricity: Vec<Option<u32>>,
    pub diameter: Option<u32>,
    pub radius: Option<u32>,
    pub girth: Option<u32>,
    pub clique_number: usize,
    /// Units per edge, `n_e`.
    pub partition_numbers: Vec<usize>,
    pub max_partition_number: usize,
    pub min_partition_number: usize,
    /// Unit-closeness centrality `1 / sum_u d(u, v)`; `None` when undefined.
    pub closeness: Vec<Option<f64>>,
    /// Eccentricity centrality `1 / xi(v)`; `None` when undefined.
    pub eccentricity_centrality: Vec<Option<f64>>,
}

impl DistanceReport {
    /// Unit distance between two vertices.
    pub fn vertex_distance(&self, p: &UnitPartition, u: usize, v: usize) -> Option<u32> {
        self.unit_distances[p.unit_of(u)][p.unit_of(v)]
    }
}

pub fn distance_report(
    h: &Hypergraph,
    p: &UnitPartition,
    g: &UnitGraph,
) -> Result<DistanceReport, MetricsError> {
    let unit_distances = g.distances();
    let connected = unit_distances
        .iter()
        .all(|row| row.iter().all(|d| d.is_some()));
    let unit_sizes: Vec<usize> = p.units.iter().map(|u| u.size()).collect();
    let mut eccentricity = Vec::with_capacity(h.n_vertices());
    let mut closeness = Vec::with_capacity(h.n_vertices());
    let mut eccentricity_centrality = Vec::with_capacity(h.n_vertices());
    for v in 0..h.n_vertices() {
        let row = &unit_distances[p.unit_of(v)];
        if connected {
            let ecc = row.iter().map(|d| d.unwrap()).max().unwrap_or(0);
            eccentricity.push(Some(ecc));
            let total: f64 = row
                .iter()
                .enumerate()
                .map(|(j, d)| unit_sizes[j] as f64 * d.unwrap() as f64)
                .sum();
            closeness.push(if total > 0.0 { Some(1.0 / total) } else { None });
            eccentricity_centrality.push(if ecc > 0 {
                Some(1.0 / ecc as f64)
            } else {
                None
            });
        } else {
            eccentricity.push(None);
            closeness.push(None);
            eccentricity_centrality.push(None);
        }
    }
    let diameter = if connected {
        eccentricity.iter().map(|e| e.unwrap()).max()
    } else {
        None
    };
    let radius = if connected {
        eccentricity.iter().map(|e| e.unwrap()).min()
    } else {
        None
    };
    let partition_numbers: Vec<usize> =
        (0..h.n_edges()).map(|e| p.edge_units(h, e).len()).collect();
    Ok(DistanceReport {
        connected,
        eccentricity,
        diameter,
        radius,
        girth: g.girth(),
        clique_number: g.clique_number()?,
        max_partition_number: partition_numbers.iter().copied().max().unwrap_or(0),
        min_partition_number: partition_numbers.iter().copied().min().unwrap_or(0),
        partition_numbers,
        closeness,
        eccentricity_centrality,
        unit_distances,
    })
}

/// Number of unit-walks of length `k` between units `i` and `j`: the
/// `(i, j)` entry of the k-th power of the 0/1 adjacency matrix of `G_H`.
pub fn unit_walk_count(g: &UnitGraph, i: usize, j: usize, k: usize) -> Result<u64, MetricsError> {
    let n = g.n;
    let mut power: Vec<Vec<u64>> = (0..n)
        .map(|a| (0..n).map(|b| u64::from(a == b)).collect())
        .collect();
    let adj: Vec<Vec<u64>> = (0..n)
        .map(|a| (0..n).map(|b| u64::from(g.adjacency[a][b])).collect())
        .collect();
    for step in 0..k {
        let mut next = vec![vec![0u64; n]; n];
        for a in 0..n {
            for c in 0..n {
                if power[a][c] == 0 {
                    continue;
                }
                for b in 0..n {
                    if adj[c][b] == 0 {
                        continue;
                    }
                    next[a][b] = power[a][c]
                        .checked_mul(adj[c][b])
                        .and_then(|x| next[a][b].checked_add(x))
                        .ok_or(MetricsError::CountOverflow(step + 1))?;
                }
            }
        }
        power = next;
    }
    Ok(power[i][j])
}
