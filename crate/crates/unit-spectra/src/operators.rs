//! The three general operators, their unit quotients, the twin-class matrix,
//! the random-walk transition matrix, and the compatibility checker.
//!
//! Acting on `x` at a vertex `v`, with `sigma(e) = delta_E(e)/|e|^2`:
//!
//! - signless Laplacian `Q`: `sum_{e in E_v} sigma(e)/delta_V(v) * sum_{u in e} x(u)`
//! - Laplacian `L`:          `sum_{e in E_v} sigma(e)/delta_V(v) * sum_{u in e} (x(v) - x(u))`
//! - adjacency `A`:          `sum_{e in E_v} sigma(e)/delta_V(v) * sum_{u in e, u != v} x(u)`
//!
//! All three are self-adjoint with respect to the `delta_V`-weighted inner
//! product, which is what every eigensolve in the crate goes through.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, WeightConfig};
use crate::tol;
use crate::units::{are_twin_units, TwinClass, UnitPartition};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("weights cover {got} vertices / {got_e} edges, hypergraph has {want}/{want_e}")]
    WeightMismatch {
        got: usize,
        got_e: usize,
        want: usize,
        want_e: usize,
    },
    #[error("delta_V is not constant on unit {unit} (values {a} and {b})")]
    DeltaVNotConstantOnUnit { unit: usize, a: f64, b: f64 },
    #[error("delta_V is not constant on the support of twin class {class} (values {a} and {b})")]
    DeltaVNotConstantOnClass { class: usize, a: f64, b: f64 },
    #[error("units of twin class {class} are not equipotent ({a} vs {b} vertices)")]
    NonEquipotentClass { class: usize, a: usize, b: usize },
    #[error(
        "twin class {class} has no bijective canonical substitution between units {i} and {j}"
    )]
    NonBijectiveClass { class: usize, i: usize, j: usize },
    #[error("canonical substitution in class {class} is not sigma-preserving (edge {e} vs {f})")]
    NotSigmaPreserving { class: usize, e: usize, f: usize },
    #[error("pair sum between classes {p} and {q} depends on the representative ({a} vs {b})")]
    RepresentativeDependent { p: usize, q: usize, a: f64, b: f64 },
    #[error("class constants differ ({a} vs {b}); the eigenvector lift needs a single constant")]
    ClassConstantsDiffer { a: f64, b: f64 },
    #[error("walk rate r({vertex}) = 0: vertex is isolated or lies only in singleton edges")]
    ZeroWalkRate { vertex: String },
    #[error("operator is not self-adjoint for the given weights (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },
}

/// Which of the three general operators a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OperatorKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [
        OperatorKind::Adjacency,
        OperatorKind::Laplacian,
        OperatorKind::SignlessLaplacian,
    ];
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorKind::Adjacency => write!(f, "A"),
            OperatorKind::Laplacian => write!(f, "L"),
            OperatorKind::SignlessLaplacian => write!(f, "Q"),
        }
    }
}

/// Dense matrix form of a general operator, indexed by canonical vertex
/// order. Row `v` holds the action `(T x)(v)`.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub kind: OperatorKind,
    pub matrix: DMatrix<f64>,
    /// `delta_V` copied from the weights; the inner product making the
    /// operator self-adjoint.
    pub vertex_weights: Vec<f64>,
}

impl DenseOperator {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// Max absolute row sum; the scale used by relative residual checks.
    pub fn inf_norm(&self) -> f64 {
        inf_norm(&self.matrix)
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.matrix * x
    }
}

pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn check_weights(h: &Hypergraph, w: &WeightConfig) -> Result<(), OperatorError> {
    if w.vertex_weights().len() != h.n_vertices() || w.edge_weights().len() != h.n_edges() {
        return Err(OperatorError::WeightMismatch {
            got: w.vertex_weights().len(),
            got_e: w.edge_weights().len(),
            want: h.n_vertices(),
            want_e: h.n_edges(),
        });
    }
    Ok(())
}

/// Builds the dense matrix of the requested operator.
pub fn build_operator(
    h: &Hypergraph,
    w: &WeightConfig,
    kind: OperatorKind,
) -> Result<DenseOperator, OperatorError> {
    check_weights(h, w)?;
    let n = h.n_vertices();
    let mut m = DMatrix::zeros(n, n);
    for v in 0..n {
        let dv = w.delta_v(v);
        for &e in h.star(v) {
            let s = w.sigma(h, e) / dv;
            match kind {
                OperatorKind::SignlessLaplacian => {
                    for &u in h.edge_members(e) {
                        m[(v, u)] += s;
                    }
                }
                OperatorKind::Laplacian => {
                    m[(v, v)] += s * h.edge_size(e) as f64;
                    for &u in h.edge_members(e) {
                        m[(v, u)] -= s;
                    }
                }
                OperatorKind::Adjacency => {
                    for &u in h.edge_members(e) {
                        if u != v {
                            m[(v, u)] += s;
                        }
                    }
                }
            }
        }
    }
    Ok(DenseOperator {
        kind,
        matrix: m,
        vertex_weights: w.vertex_weights().to_vec(),
    })
}

/// Matrix-free action of an operator, straight from the defining sums.
/// Used by property tests to validate the assembled matrices.
pub fn apply_operator(
    h: &Hypergraph,
    w: &WeightConfig,
    kind: OperatorKind,
    x: &DVector<f64>,
) -> DVector<f64> {
    let n = h.n_vertices();
    let mut out = DVector::zeros(n);
    for v in 0..n {
        let mut acc = 0.0;
        for &e in h.star(v) {
            let s = w.sigma(h, e) / w.delta_v(v);
            let sum: f64 = match kind {
                OperatorKind::SignlessLaplacian => h.edge_members(e).iter().map(|&u| x[u]).sum(),
                OperatorKind::Laplacian => h.edge_members(e).iter().map(|&u| x[v] - x[u]).sum(),
                OperatorKind::Adjacency => h
                    .edge_members(e)
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| x[u])
                    .sum(),
            };
            acc += s * sum;
        }
        out[v] = acc;
    }
    out
}

/// Result of the swap-commutation check of an operator against a vertex
/// partition: `T` commutes with every within-class transposition.
#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    pub max_violation: f64,
    /// `(class, u, v)` attaining the maximum, if any pair exists.
    pub worst_pair: Option<(usize, usize, usize)>,
}

impl CompatibilityReport {
    pub fn is_compatible(&self, tolerance: f64) -> bool {
        self.max_violation <= tolerance
    }
}

/// Checks `T . S_uv = S_uv . T` for every pair `u, v` inside every class of
/// `partition`, as a matrix identity; `S_uv` is the transposition permutation.
pub fn check_compatibility(t: &DenseOperator, partition: &[Vec<usize>]) -> CompatibilityReport {
    let n = t.n();
    let m = &t.matrix;
    let mut max_violation: f64 = 0.0;
    let mut worst_pair = None;
    for (ci, class) in partition.iter().enumerate() {
        for a in 0..class.len() {
            for b in a + 1..class.len() {
                let (u, v) = (class[a], class[b]);
                let swap = |i: usize| {
                    if i == u {
                        v
                    } else if i == v {
                        u
                    } else {
                        i
                    }
                };
                let mut local: f64 = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        local = local.max((m[(swap(i), swap(j))] - m[(i, j)]).abs());
                    }
                }
                if local >= max_violation {
                    max_violation = local;
                    worst_pair = Some((ci, u, v));
                }
            }
        }
    }
    CompatibilityReport {
        max_violation,
        worst_pair,
    }
}

fn constant_over<'a>(values: impl Iterator<Item = &'a f64>) -> Result<f64, (f64, f64)> {
    let mut first: Option<f64> = None;
    for &v in values {
        match first {
            None => first = Some(v),
            Some(f) => {
                if (v - f).abs() > tol::EXACT * f.abs().max(1.0) {
                    return Err((f, v));
                }
            }
        }
    }
    Ok(first.expect("nonempty"))
}

/// The m x m quotient of an operator on unit indicator functions. Entry
/// `(j, i)` is the coefficient `c^i_j` of `chi_{W_j}` in `T chi_{W_i}`,
/// matching the displayed matrix layout.
#[derive(Debug, Clone)]
pub struct QuotientOperator {
    pub kind: OperatorKind,
    pub matrix: DMatrix<f64>,
    /// `delta_V` value on each unit.
    pub class_constants: Vec<f64>,
    pub unit_sizes: Vec<usize>,
}

impl QuotientOperator {
    pub fn m(&self) -> usize {
        self.matrix.nrows()
    }

    /// Full eigendecomposition. The quotient is self-adjoint for the inner
    /// product weighted by `c_E * |W_E|`, so it is solved by symmetrization.
    pub fn eigenpairs(&self) -> Result<(Vec<f64>, DMatrix<f64>), OperatorError> {
        let d: Vec<f64> = self
            .class_constants
            .iter()
            .zip(&self.unit_sizes)
            .map(|(&c, &s)| c * s as f64)
            .collect();
        self_adjoint_eigen(&self.matrix, &d)
    }
}

/// Builds the quotient of the given operator over the unit partition.
/// Requires `delta_V` constant on every unit.
pub fn build_quotient(
    h: &Hypergraph,
    w: &WeightConfig,
    p: &UnitPartition,
    kind: OperatorKind,
) -> Result<QuotientOperator, OperatorError> {
    check_weights(h, w)?;
    let m = p.n_units();
    let mut class_constants = Vec::with_capacity(m);
    for (i, unit) in p.units.iter().enumerate() {
        let c = constant_over(unit.members.iter().map(|&v| &w.vertex_weights()[v]))
            .map_err(|(a, b)| OperatorError::DeltaVNotConstantOnUnit { unit: i, a, b })?;
        class_constants.push(c);
    }
    let unit_sizes: Vec<usize> = p.units.iter().map(|u| u.size()).collect();
    let mut matrix = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let cj = class_constants[j];
            let mut c_ij = 0.0;
            match kind {
                OperatorKind::SignlessLaplacian => {
                    // sum over E_i n E_j of delta_E(e) / (c_j |e|^2) * |W_i|
                    for &e in &p.units[j].generator {
                        if p.units[i].generator.contains(&e) {
                            c_ij += w.sigma(h, e) / cj * unit_sizes[i] as f64;
                        }
                    }
                }
                OperatorKind::Laplacian => {
                    for &e in &p.units[j].generator {
                        let overlap = if p.units[i].generator.contains(&e) {
                            unit_sizes[i] as f64
                        } else {
                            0.0
                        };
                        let kron = if i == j { h.edge_size(e) as f64 } else { 0.0 };
                        c_ij += w.sigma(h, e) / cj * (kron - overlap);
                    }
                }
                OperatorKind::Adjacency => {
                    if i != j {
                        for &e in &p.units[j].generator {
                            if p.units[i].generator.contains(&e) {
                                c_ij += w.sigma(h, e) / cj * unit_sizes[i] as f64;
                            }
                        }
                    } else {
                        for &e in &p.units[i].generator {
                            c_ij += w.sigma(h, e) / cj * (unit_sizes[i] as f64 - 1.0);
                        }
                    }
                }
            }
            matrix[(j, i)] = c_ij;
        }
    }
    Ok(QuotientOperator {
        kind,
        matrix,
        class_constants,
        unit_sizes,
    })
}

/// The twin-class matrix over a twin partition: off-diagonal
/// `c_pq = |pi^{-1}(a_p)| / c_q * sum_{e in E_i n E_j} sigma(e)` and diagonal
/// `c_pp = (m_p - 1) * sum_{e in E_i} sigma(e)`, stored as `matrix[(p, q)]`.
#[derive(Debug, Clone)]
pub struct TwinClassMatrix {
    pub matrix: DMatrix<f64>,
    /// `delta_V` value on the support of each class.
    pub class_constants: Vec<f64>,
    /// Vertices per class, `|pi^{-1}(a_p)|`.
    pub support_sizes: Vec<usize>,
    /// Common unit size `m_p` within each class.
    pub unit_sizes: Vec<usize>,
    /// Vertex -> class index.
    pub class_of_vertex: Vec<usize>,
}

/// Builds the twin-class matrix. Hypotheses checked per class: `delta_V`
/// constant on the support, units equipotent, all canonical substitutions
/// bijective and sigma-preserving, and pair sums independent of the chosen
/// representatives.
pub fn build_c_h(
    h: &Hypergraph,
    w: &WeightConfig,
    p: &UnitPartition,
    classes: &[TwinClass],
) -> Result<TwinClassMatrix, OperatorError> {
    check_weights(h, w)?;
    let k = classes.len();
    let mut class_constants = Vec::with_capacity(k);
    let mut support_sizes = Vec::with_capacity(k);
    let mut unit_sizes = Vec::with_capacity(k);
    for (ci, class) in classes.iter().enumerate() {
        let support: Vec<usize> = class
            .units
            .iter()
            .flat_map(|&u| p.units[u].members.iter().copied())
            .collect();
        let c = constant_over(support.iter().map(|&v| &w.vertex_weights()[v]))
            .map_err(|(a, b)| OperatorError::DeltaVNotConstantOnClass { class: ci, a, b })?;
        class_constants.push(c);
        support_sizes.push(support.len());
        let sizes: Vec<usize> = class.units.iter().map(|&u| p.units[u].size()).collect();
        if let Some(&bad) = sizes.iter().find(|&&s| s != sizes[0]) {
            return Err(OperatorError::NonEquipotentClass {
                class: ci,
                a: sizes[0],
                b: bad,
            });
        }
        unit_sizes.push(sizes[0]);
        for a in 0..class.units.len() {
            for b in a + 1..class.units.len() {
                let (i, j) = (class.units[a], class.units[b]);
                let witness = are_twin_units(h, p, i, j);
                let bijective = witness.as_ref().map(|x| x.bijective()).unwrap_or(false);
                if !bijective {
                    return Err(OperatorError::NonBijectiveClass { class: ci, i, j });
                }
                for &(e, f) in witness.unwrap().forward.as_ref().unwrap() {
                    let (se, sf) = (w.sigma(h, e), w.sigma(h, f));
                    if (se - sf).abs() > tol::EXACT * se.abs().max(1.0) {
                        return Err(OperatorError::NotSigmaPreserving { class: ci, e, f });
                    }
                }
            }
        }
    }
    // Pair sums s_pq = sum_{e in E_i n E_j} sigma(e), with representative
    // independence asserted over all unit pairs drawn from the two classes.
    let sigma_sum_between = |i: usize, j: usize| -> f64 {
        p.units[i]
            .generator
            .iter()
            .filter(|e| p.units[j].generator.contains(e))
            .map(|&e| w.sigma(h, e))
            .sum()
    };
    let mut pair_sums = DMatrix::zeros(k, k);
    for pi in 0..k {
        for q in 0..k {
            if pi == q {
                continue;
            }
            let mut value: Option<f64> = None;
            for &i in &classes[pi].units {
                for &j in &classes[q].units {
                    let s = sigma_sum_between(i, j);
                    match value {
                        None => value = Some(s),
                        Some(v) => {
                            if (v - s).abs() > tol::EXACT * v.abs().max(1.0) {
                                return Err(OperatorError::RepresentativeDependent {
                                    p: pi,
                                    q,
                                    a: v,
                                    b: s,
                                });
                            }
                        }
                    }
                }
            }
            pair_sums[(pi, q)] = value.unwrap_or(0.0);
        }
    }
    let mut self_sums = vec![0.0; k];
    for (pi, class) in classes.iter().enumerate() {
        let mut value: Option<f64> = None;
        for &i in &class.units {
            let s: f64 = p.units[i].generator.iter().map(|&e| w.sigma(h, e)).sum();
            match value {
                None => value = Some(s),
                Some(v) => {
                    if (v - s).abs() > tol::EXACT * v.abs().max(1.0) {
                        return Err(OperatorError::RepresentativeDependent {
                            p: pi,
                            q: pi,
                            a: v,
                            b: s,
                        });
                    }
                }
            }
        }
        self_sums[pi] = value.unwrap_or(0.0);
    }
    let mut matrix = DMatrix::zeros(k, k);
    for pi in 0..k {
        for q in 0..k {
            matrix[(pi, q)] = if pi == q {
                (unit_sizes[pi] as f64 - 1.0) * self_sums[pi]
            } else {
                support_sizes[pi] as f64 / class_constants[q] * pair_sums[(pi, q)]
            };
        }
    }
    let mut class_of_vertex = vec![0; h.n_vertices()];
    for (ci, class) in classes.iter().enumerate() {
        for &u in &class.units {
            for &v in &p.units[u].members {
                class_of_vertex[v] = ci;
            }
        }
    }
    Ok(TwinClassMatrix {
        matrix,
        class_constants,
        support_sizes,
        unit_sizes,
        class_of_vertex,
    })
}

impl TwinClassMatrix {
    /// Eigenpairs of the class matrix lifted to adjacency eigenpairs on
    /// `V(H)`. Requires a single `delta_V` constant `c` across all classes;
    /// an eigenvalue `lambda` of the matrix lifts to the adjacency eigenvalue
    /// `lambda / c`.
    pub fn eigen_lift(&self) -> Result<Vec<(f64, DVector<f64>)>, OperatorError> {
        let c = self.class_constants[0];
        for &other in &self.class_constants[1..] {
            if (other - c).abs() > tol::EXACT * c.abs().max(1.0) {
                return Err(OperatorError::ClassConstantsDiffer { a: c, b: other });
            }
        }
        // With one constant the matrix is self-adjoint for weights 1/|pi^{-1}(a_p)|.
        let d: Vec<f64> = self.support_sizes.iter().map(|&s| 1.0 / s as f64).collect();
        let (values, vectors) = self_adjoint_eigen(&self.matrix, &d)?;
        let n = self.class_of_vertex.len();
        let mut out = Vec::with_capacity(values.len());
        for (idx, &lambda) in values.iter().enumerate() {
            let y = vectors.column(idx);
            let mut lifted = DVector::zeros(n);
            for v in 0..n {
                let p = self.class_of_vertex[v];
                lifted[v] = y[p] / (self.support_sizes[p] as f64 * c);
            }
            out.push((lambda / c, lifted));
        }
        Ok(out)
    }
}

/// Row-stochastic random-walk transition matrix with zero diagonal, plus the
/// normalizers `r(u)`.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub matrix: DMatrix<f64>,
    pub rates: Vec<f64>,
}

impl TransitionMatrix {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// `Delta = I - P`.
    pub fn walk_laplacian(&self) -> DMatrix<f64> {
        DMatrix::identity(self.n(), self.n()) - &self.matrix
    }

    pub fn row_sum(&self, u: usize) -> f64 {
        self.matrix.row(u).sum()
    }
}

/// Builds `P_H`. Errors when some vertex has walk rate zero (isolated, or
/// lying only in singleton edges).
pub fn build_transition(
    h: &Hypergraph,
    w: &WeightConfig,
) -> Result<TransitionMatrix, OperatorError> {
    check_weights(h, w)?;
    let n = h.n_vertices();
    let mut rates = vec![0.0; n];
    for u in 0..n {
        for &e in h.star(u) {
            rates[u] += w.sigma(h, e) * (h.edge_size(e) as f64 - 1.0) / w.delta_v(u);
        }
        if rates[u] <= 0.0 {
            return Err(OperatorError::ZeroWalkRate {
                vertex: h.vertex_label(u).to_string(),
            });
        }
    }
    let mut m = DMatrix::zeros(n, n);
    for u in 0..n {
        for &e in h.star(u) {
            let s = w.sigma(h, e) / (w.delta_v(u) * rates[u]);
            for &v in h.edge_members(e) {
                if v != u {
                    m[(u, v)] += s;
                }
            }
        }
    }
    Ok(TransitionMatrix { matrix: m, rates })
}

/// Eigendecomposition of a matrix `M` that is self-adjoint for the inner
/// product with positive weights `d` (i.e. `diag(d) * M` is symmetric).
/// Returns eigenvalues ascending with matching eigenvector columns of `M`.
pub(crate) fn self_adjoint_eigen(
    m: &DMatrix<f64>,
    d: &[f64],
) -> Result<(Vec<f64>, DMatrix<f64>), OperatorError> {
    let n = m.nrows();
    let sqrt: Vec<f64> = d.iter().map(|&x| x.sqrt()).collect();
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = sqrt[i] * m[(i, j)] / sqrt[j];
        }
    }
    let scale = inf_norm(&s).max(1.0);
    let mut defect: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            defect = defect.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    if defect > tol::SELF_ADJOINT * scale {
        return Err(OperatorError::NotSelfAdjoint {
            defect: defect / scale,
        });
    }
    let sym = (&s + s.transpose()) * 0.5;
    let (raw_values, raw_vectors) = jacobi_eigen(&sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw_values[a].total_cmp(&raw_values[b]));
    let values: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = raw_vectors[(row, i)] / sqrt[row];
        }
    }
    Ok((values, vectors))
}

/// Cyclic Jacobi eigensolver for a symmetric matrix: residuals at the level
/// of machine epsilon times the matrix norm, which the certificate residual
/// tolerances rely on. Intended for the dense desk-scale matrices this crate
/// works with.
fn jacobi_eigen(sym: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = sym.nrows();
    let mut a = sym.clone();
    let mut v = DMatrix::identity(n, n);
    let frobenius = a.norm().max(f64::MIN_POSITIVE);
    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= 1e-15 * frobenius {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let (aip, aiq) = (a[(i, p)], a[(i, q)]);
                        a[(i, p)] = c * aip - s * aiq;
                        a[(p, i)] = a[(i, p)];
                        a[(i, q)] = s * aip + c * aiq;
                        a[(q, i)] = a[(i, q)];
                    }
                }
                for i in 0..n {
                    let (vip, viq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    (values, v)
}
