//! Units (equal-star vertex classes), twin units, contractions, and local
//! automorphisms.
//!
//! Two vertices are equivalent when their stars coincide; the classes are
//! *units* and every hyperedge is a disjoint union of units. Two units are
//! *twin* when the canonical substitution `e -> (e \ W_E) u W_F` carries the
//! generator of one of them entirely into the edge set; when the generators
//! are equipotent this substitution is a bijection between them.

use std::collections::{BTreeSet, HashMap};

use crate::hypergraph::Hypergraph;

/// A unit `W_E`: the maximal set of vertices whose star equals the
/// generating set `E`. Isolated vertices form the single unit with `E` empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    /// Vertex indices, ascending.
    pub members: Vec<usize>,
    /// Edge indices of the common star, ascending.
    pub generator: Vec<usize>,
}

impl Unit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The full unit partition of a hypergraph, ordered by least member vertex.
#[derive(Debug, Clone)]
pub struct UnitPartition {
    pub units: Vec<Unit>,
    pub vertex_to_unit: Vec<usize>,
}

impl UnitPartition {
    pub fn n_units(&self) -> usize {
        self.units.len()
    }

    pub fn unit_of(&self, v: usize) -> usize {
        self.vertex_to_unit[v]
    }

    /// Distinct units meeting edge `e`, ascending. By the edge-unit
    /// decomposition each of these units is wholly contained in `e`.
    pub fn edge_units(&self, h: &Hypergraph, e: usize) -> Vec<usize> {
        let mut us: Vec<usize> = h
            .edge_members(e)
            .iter()
            .map(|&v| self.vertex_to_unit[v])
            .collect();
        us.sort_unstable();
        us.dedup();
        us
    }
}

/// Groups vertices by star equality. Unit order is by smallest member in
/// vertex order; members and generators are sorted ascending.
pub fn compute_units(h: &Hypergraph) -> UnitPartition {
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in 0..h.n_vertices() {
        groups.entry(h.star(v).to_vec()).or_default().push(v);
    }
    let mut units: Vec<Unit> = groups
        .into_iter()
        .map(|(generator, members)| Unit { members, generator })
        .collect();
    units.sort_by_key(|u| u.members[0]);
    let mut vertex_to_unit = vec![0; h.n_vertices()];
    for (i, unit) in units.iter().enumerate() {
        for &v in &unit.members {
            vertex_to_unit[v] = i;
        }
    }
    UnitPartition {
        units,
        vertex_to_unit,
    }
}

/// Unordered pairs of distinct units jointly contained in some hyperedge.
pub fn unit_neighbours(h: &Hypergraph, p: &UnitPartition) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for e in 0..h.n_edges() {
        let us = p.edge_units(h, e);
        for a in 0..us.len() {
            for b in a + 1..us.len() {
                pairs.insert((us[a], us[b]));
            }
        }
    }
    pairs
}

/// Which contraction a quotient hypergraph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionKind {
    /// One quotient vertex per unit; edge projection is a bijection.
    Unit,
    /// One quotient vertex per twin class; edges may collapse, multiplicity
    /// counts the preimages.
    Twin,
}

/// A quotient hypergraph together with its vertex and edge projections.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub kind: ContractionKind,
    pub quotient: Hypergraph,
    /// Original vertex -> quotient vertex index.
    pub projection: Vec<usize>,
    /// Original edge -> quotient edge index.
    pub edge_projection: Vec<usize>,
    /// Quotient edge -> number of original edges projecting onto it.
    pub edge_multiplicity: Vec<usize>,
}

impl Contraction {
    /// Pushes per-edge weights forward: each quotient edge gets the sum of
    /// the weights of its preimages.
    pub fn push_edge_weights(&self, alpha: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.edge_multiplicity.len()];
        for (e, &q) in self.edge_projection.iter().enumerate() {
            out[q] += alpha[e];
        }
        out
    }
}

fn contraction_from_blocks(
    h: &Hypergraph,
    kind: ContractionKind,
    vertex_to_block: &[usize],
    n_blocks: usize,
    label: impl Fn(usize) -> String,
) -> Contraction {
    let labels: Vec<String> = (0..n_blocks).map(label).collect();
    let mut quotient_edges: Vec<(String, Vec<String>)> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut edge_projection = Vec::with_capacity(h.n_edges());
    let mut edge_multiplicity: Vec<usize> = Vec::new();
    for e in 0..h.n_edges() {
        let mut blocks: Vec<usize> = h
            .edge_members(e)
            .iter()
            .map(|&v| vertex_to_block[v])
            .collect();
        blocks.sort_unstable();
        blocks.dedup();
        match seen.get(&blocks) {
            Some(&q) => {
                edge_projection.push(q);
                edge_multiplicity[q] += 1;
            }
            None => {
                let q = quotient_edges.len();
                seen.insert(blocks.clone(), q);
                quotient_edges.push((
                    h.edge_name(e).to_string(),
                    blocks.iter().map(|&b| labels[b].clone()).collect(),
                ));
                edge_projection.push(q);
                edge_multiplicity.push(1);
            }
        }
    }
    let quotient =
        Hypergraph::new(labels, quotient_edges).expect("quotient of a valid hypergraph is valid");
    Contraction {
        kind,
        quotient,
        projection: vertex_to_block.to_vec(),
        edge_projection,
        edge_multiplicity,
    }
}

/// The unit contraction: one quotient vertex per unit, edges replaced by
/// their unit decompositions. The edge projection is always a bijection.
pub fn unit_contraction(h: &Hypergraph, p: &UnitPartition) -> Contraction {
    let c = contraction_from_blocks(
        h,
        ContractionKind::Unit,
        &p.vertex_to_unit,
        p.n_units(),
        |i| format!("U{}", i + 1),
    );
    debug_assert_eq!(c.quotient.n_edges(), h.n_edges());
    c
}

/// Witness that two units are twins: the canonical substitution maps, in
/// whichever direction(s) they land inside the edge set.
#[derive(Debug, Clone)]
pub struct TwinWitness {
    /// Edge pairs `(e, f)` with `f = (e \ W_i) u W_j`, defined when every
    /// generator edge of `i` maps to an edge.
    pub forward: Option<Vec<(usize, usize)>>,
    /// Same from `j` to `i`.
    pub backward: Option<Vec<(usize, usize)>>,
}

impl TwinWitness {
    /// True when the canonical substitution is a bijection between the two
    /// generators (both directions total, hence equipotent generators).
    pub fn bijective(&self) -> bool {
        self.forward.is_some() && self.backward.is_some()
    }
}

fn substitution_map(h: &Hypergraph, from: &Unit, to: &Unit) -> Option<Vec<(usize, usize)>> {
    let from_set: BTreeSet<usize> = from.members.iter().copied().collect();
    let mut map = Vec::with_capacity(from.generator.len());
    for &e in &from.generator {
        let mut image: BTreeSet<usize> = h
            .edge_members(e)
            .iter()
            .copied()
            .filter(|v| !from_set.contains(v))
            .collect();
        image.extend(to.members.iter().copied());
        let f = h.find_edge(&image)?;
        map.push((e, f));
    }
    Some(map)
}

/// Tests whether units `i` and `j` are twins. Twins must have disjoint,
/// nonempty generators and the canonical substitution from at least one of
/// the two generators must land entirely inside the edge set.
pub fn are_twin_units(
    h: &Hypergraph,
    p: &UnitPartition,
    i: usize,
    j: usize,
) -> Option<TwinWitness> {
    assert_ne!(i, j, "twin test needs two distinct units");
    let (ui, uj) = (&p.units[i], &p.units[j]);
    if ui.generator.is_empty() || uj.generator.is_empty() {
        return None;
    }
    if ui.generator.iter().any(|e| uj.generator.contains(e)) {
        return None;
    }
    let forward = substitution_map(h, ui, uj);
    let backward = substitution_map(h, uj, ui);
    if forward.is_none() && backward.is_none() {
        return None;
    }
    Some(TwinWitness { forward, backward })
}

/// A twin equivalence class of units.
#[derive(Debug, Clone)]
pub struct TwinClass {
    /// Unit indices, ascending.
    pub units: Vec<usize>,
    /// Whether every pair inside the class passes the twin test directly.
    /// Union-find closure can in principle join units that are not pairwise
    /// twins; the flag records what actually held on this data.
    pub pairwise: bool,
}

impl TwinClass {
    pub fn size(&self) -> usize {
        self.units.len()
    }
}

/// Partitions the units into twin classes. Pairwise twin tests feed a
/// union-find; the transitivity the underlying relation is supposed to have
/// is then verified per class rather than assumed.
pub fn twin_classes(h: &Hypergraph, p: &UnitPartition) -> Vec<TwinClass> {
    let m = p.n_units();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut twin = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            if are_twin_units(h, p, i, j).is_some() {
                twin[i][j] = true;
                twin[j][i] = true;
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut out: Vec<TwinClass> = classes
        .into_values()
        .map(|mut units| {
            units.sort_unstable();
            let pairwise = units
                .iter()
                .enumerate()
                .all(|(a, &i)| units[a + 1..].iter().all(|&j| twin[i][j]));
            TwinClass { units, pairwise }
        })
        .collect();
    out.sort_by_key(|c| c.units[0]);
    out
}

/// The twin contraction: one quotient vertex per twin class. Distinct edges
/// may project to the same quotient edge; the multiplicity map records how
/// many.
pub fn twin_contraction(h: &Hypergraph, p: &UnitPartition, classes: &[TwinClass]) -> Contraction {
    let mut unit_to_class = vec![0; p.n_units()];
    for (c, class) in classes.iter().enumerate() {
        for &u in &class.units {
            unit_to_class[u] = c;
        }
    }
    let vertex_to_class: Vec<usize> = (0..h.n_vertices())
        .map(|v| unit_to_class[p.vertex_to_unit[v]])
        .collect();
    contraction_from_blocks(
        h,
        ContractionKind::Twin,
        &vertex_to_class,
        classes.len(),
        |i| format!("C{}", i + 1),
    )
}

/// A vertex permutation given as the image table `v -> perm[v]`.
pub type Permutation = Vec<usize>;

fn preserves_edges(h: &Hypergraph, perm: &Permutation) -> bool {
    let edge_set: BTreeSet<&BTreeSet<usize>> =
        (0..h.n_edges()).map(|e| h.edge_members(e)).collect();
    (0..h.n_edges()).all(|e| {
        let image: BTreeSet<usize> = h.edge_members(e).iter().map(|&v| perm[v]).collect();
        edge_set.contains(&image)
    })
}

/// Generating set of local automorphisms: every transposition inside a unit,
/// plus one swap for each equipotent twin pair whose canonical substitution
/// is bijective. Every returned permutation is verified to map the edge set
/// onto itself.
pub fn local_automorphisms(
    h: &Hypergraph,
    p: &UnitPartition,
    classes: &[TwinClass],
) -> Vec<Permutation> {
    let identity: Permutation = (0..h.n_vertices()).collect();
    let mut out = Vec::new();
    for unit in &p.units {
        for a in 0..unit.members.len() {
            for b in a + 1..unit.members.len() {
                let mut perm = identity.clone();
                perm.swap(unit.members[a], unit.members[b]);
                debug_assert!(preserves_edges(h, &perm));
                if preserves_edges(h, &perm) {
                    out.push(perm);
                }
            }
        }
    }
    for class in classes {
        for a in 0..class.units.len() {
            for b in a + 1..class.units.len() {
                let (i, j) = (class.units[a], class.units[b]);
                let (ui, uj) = (&p.units[i], &p.units[j]);
                if ui.size() != uj.size() {
                    continue;
                }
                match are_twin_units(h, p, i, j) {
                    Some(w) if w.bijective() => {}
                    _ => continue,
                }
                let mut perm = identity.clone();
                for (&x, &y) in ui.members.iter().zip(uj.members.iter()) {
                    perm[x] = y;
                    perm[y] = x;
                }
                if preserves_edges(h, &perm) {
                    out.push(perm);
                }
            }
        }
    }
    out
}
