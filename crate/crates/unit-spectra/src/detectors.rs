//! Detectors for alpha-regular, alpha-symmetric, unit-saturated, and
//! alpha-co-regular vertex sets, plus the closed-form eigenvalues such sets
//! contribute.
//!
//! For a positive edge weighting `alpha`, a set `U` is *regular* when the
//! star sums `sum_{e in E_u} alpha(e)` agree over `u in U`, *symmetric* when
//! for each fixed `v` the pair sums `sum_{e in E_uv} alpha(e)` agree over
//! `u in U \ {v}`, and *co-regular* when it is additionally unit-saturated
//! with balanced star differences. Co-regular sets carry `|U| - 1` explicit
//! eigenvectors of each operator.

use nalgebra::DVector;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, WeightConfig};
use crate::operators::{build_operator, OperatorKind};
use crate::tol;
use crate::units::UnitPartition;

#[derive(Debug, Error)]
pub enum DetectorError {
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
    #[error("alpha weighting must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("hypothesis failed for {kind} eigenvalue: {reason}")]
    Hypothesis { kind: OperatorKind, reason: String },
}

/// Edge weighting used by the detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaTag {
    Sigma,
    Rho,
    Eta,
    ConstantOne,
    Custom,
}

#[derive(Debug, Clone)]
pub struct AlphaWeighting {
    pub tag: AlphaTag,
    pub values: Vec<f64>,
}

impl AlphaWeighting {
    pub fn sigma(h: &Hypergraph, w: &WeightConfig) -> Self {
        Self {
            tag: AlphaTag::Sigma,
            values: (0..h.n_edges()).map(|e| w.sigma(h, e)).collect(),
        }
    }

    pub fn rho(h: &Hypergraph, w: &WeightConfig) -> Self {
        Self {
            tag: AlphaTag::Rho,
            values: (0..h.n_edges()).map(|e| w.rho(h, e)).collect(),
        }
    }

    /// `eta(e) = (|e| - 1) * sigma(e)`.
    pub fn eta(h: &Hypergraph, w: &WeightConfig) -> Self {
        Self {
            tag: AlphaTag::Eta,
            values: (0..h.n_edges())
                .map(|e| (h.edge_size(e) as f64 - 1.0) * w.sigma(h, e))
                .collect(),
        }
    }

    pub fn ones(h: &Hypergraph) -> Self {
        Self {
            tag: AlphaTag::ConstantOne,
            values: vec![1.0; h.n_edges()],
        }
    }

    pub fn custom(values: Vec<f64>) -> Result<Self, DetectorError> {
        if let Some(&bad) = values.iter().find(|&&v| !(v > 0.0)) {
            return Err(DetectorError::NonPositiveAlpha(bad));
        }
        Ok(Self {
            tag: AlphaTag::Custom,
            values,
        })
    }
}

/// Outcome of classifying one vertex set against one weighting.
#[derive(Debug, Clone)]
pub struct StructureVerdict {
    /// Common star sum `w^alpha_U` when the set is regular.
    pub regular: Option<f64>,
    /// Per-vertex pair-sum constants `c^v_U` when the set is symmetric.
    pub symmetric: Option<Vec<f64>>,
    pub unit_saturated: bool,
    /// Common within-set pair sum `s^alpha_U` when the set is co-regular.
    pub coregular: Option<f64>,
}

impl StructureVerdict {
    pub fn is_regular(&self) -> bool {
        self.regular.is_some()
    }
    pub fn is_symmetric(&self) -> bool {
        self.symmetric.is_some()
    }
    pub fn is_coregular(&self) -> bool {
        self.coregular.is_some()
    }
}

fn star_sum(h: &Hypergraph, alpha: &AlphaWeighting, u: usize) -> f64 {
    h.star(u).iter().map(|&e| alpha.values[e]).sum()
}

fn pair_sum(h: &Hypergraph, alpha: &AlphaWeighting, u: usize, v: usize) -> f64 {
    h.shared_star(u, v).iter().map(|&e| alpha.values[e]).sum()
}

fn all_equal(values: &[f64]) -> Option<f64> {
    let first = *values.first()?;
    for &v in values {
        if (v - first).abs() > tol::EXACT * first.abs().max(1.0) {
            return None;
        }
    }
    Some(first)
}

/// Classifies `U` as regular / symmetric / unit-saturated / co-regular for
/// the given weighting.
pub fn classify_set(
    h: &Hypergraph,
    set: &[usize],
    alpha: &AlphaWeighting,
    p: &UnitPartition,
) -> Result<StructureVerdict, DetectorError> {
    if set.is_empty() {
        return Err(DetectorError::EmptySet);
    }
    if let Some(&bad) = set.iter().find(|&&v| v >= h.n_vertices()) {
        return Err(DetectorError::BadVertex(bad));
    }
    let star_sums: Vec<f64> = set.iter().map(|&u| star_sum(h, alpha, u)).collect();
    let regular = all_equal(&star_sums);

    // Symmetry: for each v in V(H), the pair sum over u in U \ {v} is constant.
    let mut symmetric = Some(Vec::with_capacity(h.n_vertices()));
    for v in 0..h.n_vertices() {
        let sums: Vec<f64> = set
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| pair_sum(h, alpha, u, v))
            .collect();
        if sums.is_empty() {
            // |U| = 1 and v is the single member; no constraint.
            if let Some(cs) = symmetric.as_mut() {
                cs.push(0.0);
            }
            continue;
        }
        match all_equal(&sums) {
            Some(c) => {
                if let Some(cs) = symmetric.as_mut() {
                    cs.push(c);
                }
            }
            None => {
                symmetric = None;
                break;
            }
        }
    }

    let unit_saturated = p.units.iter().all(|unit| {
        let inside = unit.members.iter().filter(|v| set.contains(v)).count();
        inside == 0 || inside == unit.members.len()
    });

    // Co-regular: saturated, symmetric, and star differences balanced.
    let mut coregular = None;
    if unit_saturated && symmetric.is_some() {
        let mut balanced = true;
        'outer: for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                let shared = pair_sum(h, alpha, u, v);
                let du = star_sum(h, alpha, u) - shared;
                let dv = star_sum(h, alpha, v) - shared;
                if (du - dv).abs() > tol::EXACT * du.abs().max(1.0) {
                    balanced = false;
                    break 'outer;
                }
            }
        }
        if balanced {
            let pair_sums: Vec<f64> = set
                .iter()
                .enumerate()
                .flat_map(|(a, &u)| set[a + 1..].iter().map(move |&v| (u, v)))
                .map(|(u, v)| pair_sum(h, alpha, u, v))
                .collect();
            coregular = if pair_sums.is_empty() {
                // Singleton set: the common pair sum degenerates to the star sum.
                Some(star_sums[0])
            } else {
                all_equal(&pair_sums)
            };
        }
    }

    Ok(StructureVerdict {
        regular,
        symmetric,
        unit_saturated,
        coregular,
    })
}

/// One closed-form eigenvalue contributed by a co-regular set.
#[derive(Debug, Clone)]
pub struct CoregularEntry {
    pub kind: OperatorKind,
    pub value: f64,
    /// Faria basis of `S_U`, `|U| - 1` vectors.
    pub basis: Vec<DVector<f64>>,
    /// Relative residual against the dense operator.
    pub residual: f64,
}

/// Closed-form eigenvalues of a co-regular set `U` for the requested
/// operators. A and Q require a sigma-co-regular set with `delta_V` constant
/// on `U`; L additionally requires rho-regularity. Each entry is
/// residual-checked against the dense operator before it is returned.
pub fn coregular_eigenvalues(
    h: &Hypergraph,
    w: &WeightConfig,
    set: &[usize],
    kinds: &[OperatorKind],
) -> Result<Vec<CoregularEntry>, DetectorError> {
    if set.is_empty() {
        return Err(DetectorError::EmptySet);
    }
    let p = crate::units::compute_units(h);
    let sigma = AlphaWeighting::sigma(h, w);
    let rho = AlphaWeighting::rho(h, w);
    let verdict = classify_set(h, set, &sigma, &p)?;
    let c_u = {
        let values: Vec<f64> = set.iter().map(|&v| w.delta_v(v)).collect();
        all_equal(&values)
    };
    let mut out = Vec::new();
    for &kind in kinds {
        let s = verdict.coregular.ok_or_else(|| DetectorError::Hypothesis {
            kind,
            reason: "set is not sigma-co-regular".into(),
        })?;
        let w_sigma = verdict.regular.expect("co-regular implies regular");
        let c = c_u.ok_or_else(|| DetectorError::Hypothesis {
            kind,
            reason: "delta_V is not constant on the set".into(),
        })?;
        let value = match kind {
            OperatorKind::Adjacency => -s / c,
            OperatorKind::SignlessLaplacian => (w_sigma - s) / c,
            OperatorKind::Laplacian => {
                let rho_verdict = classify_set(h, set, &rho, &p)?;
                let w_rho = rho_verdict
                    .regular
                    .ok_or_else(|| DetectorError::Hypothesis {
                        kind,
                        reason: "set is not rho-regular".into(),
                    })?;
                (w_rho - w_sigma + s) / c
            }
        };
        let basis: Vec<DVector<f64>> = set[1..]
            .iter()
            .map(|&v| {
                let mut x = DVector::zeros(h.n_vertices());
                x[set[0]] = -1.0;
                x[v] = 1.0;
                x
            })
            .collect();
        let dense = build_operator(h, w, kind).expect("weights already validated");
        let scale = 1.0 + dense.inf_norm();
        let residual = basis
            .iter()
            .map(|x| (dense.apply(x) - value * x).amax() / scale)
            .fold(0.0, f64::max);
        if residual > tol::RESIDUAL {
            return Err(DetectorError::Hypothesis {
                kind,
                reason: format!("residual {residual:.3e} exceeds tolerance"),
            });
        }
        out.push(CoregularEntry {
            kind,
            value,
            basis,
            residual,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::WeightPreset;
    use crate::samples;
    use crate::units::compute_units;

    #[test]
    fn any_unit_is_coregular_for_any_alpha() {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, WeightPreset::B).unwrap();
        let p = compute_units(&h);
        for alpha in [
            AlphaWeighting::sigma(&h, &w),
            AlphaWeighting::rho(&h, &w),
            AlphaWeighting::ones(&h),
        ] {
            for unit in &p.units {
                let v = classify_set(&h, &unit.members, &alpha, &p).unwrap();
                assert!(v.is_coregular(), "unit {:?}", unit.members);
                if unit.size() >= 2 {
                    let gen_sum: f64 = unit.generator.iter().map(|&e| alpha.values[e]).sum();
                    assert!((v.coregular.unwrap() - gen_sum).abs() <= tol::EXACT);
                }
            }
        }
    }

    #[test]
    fn regular_set_that_is_not_a_unit() {
        let h = samples::regular_not_unit();
        let p = compute_units(&h);
        let alpha = AlphaWeighting::ones(&h);
        let set: Vec<usize> = ["1", "2", "3"]
            .iter()
            .map(|l| h.vertex_id(l).unwrap())
            .collect();
        let v = classify_set(&h, &set, &alpha, &p).unwrap();
        assert_eq!(v.regular, Some(2.0));
        assert!(p.units.iter().all(|u| u.members != set));
    }

    #[test]
    fn coregular_implies_regular_and_symmetric() {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let p = compute_units(&h);
        let alpha = AlphaWeighting::sigma(&h, &w);
        for unit in &p.units {
            let v = classify_set(&h, &unit.members, &alpha, &p).unwrap();
            if v.is_coregular() {
                assert!(v.is_regular() && v.is_symmetric());
            }
        }
    }

    #[test]
    fn empty_set_is_rejected() {
        let h = samples::fig1();
        let p = compute_units(&h);
        let alpha = AlphaWeighting::ones(&h);
        assert!(matches!(
            classify_set(&h, &[], &alpha, &p),
            Err(DetectorError::EmptySet)
        ));
    }

    #[test]
    fn unit_coregular_eigenvalue_matches_unit_closed_form() {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, WeightPreset::B).unwrap();
        let p = compute_units(&h);
        // W_{E_3} = {5, 6, 15} with generator {e3}.
        let unit = &p.units[2];
        let entries = coregular_eigenvalues(
            &h,
            &w,
            &unit.members,
            &[OperatorKind::Adjacency, OperatorKind::SignlessLaplacian],
        )
        .unwrap();
        let sigma_sum: f64 = unit.generator.iter().map(|&e| w.sigma(&h, e)).sum();
        assert!((entries[0].value + sigma_sum).abs() <= tol::EXACT);
        assert_eq!(entries[0].basis.len(), unit.size() - 1);
    }

    #[test]
    fn hyperflower_periphery_is_regular_but_not_symmetric() {
        // The periphery is a twin-class support, hence sigma-regular. It is
        // not sigma-symmetric: a peripheral vertex shares r edges with its
        // own component and none with the other components.
        use crate::families::{make_hyperflower, HyperflowerSpec};
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let h = &f.hypergraph;
        let w = WeightConfig::preset(h, WeightPreset::R).unwrap();
        let p = compute_units(h);
        let sigma = AlphaWeighting::sigma(h, &w);
        let v = classify_set(h, &f.periphery(), &sigma, &p).unwrap();
        assert_eq!(v.regular, Some(2.0));
        assert!(!v.is_symmetric());
        assert!(v.unit_saturated);
    }

    #[test]
    fn multilayer_center_and_periphery_closed_forms() {
        use crate::families::{make_multilayer, MultiLayerSpec};
        // k = 2 center under R: Q eigenvalue (w_sigma - s_sigma)/c = 3.
        let f = make_multilayer(MultiLayerSpec { k: 2 }).unwrap();
        let w = WeightConfig::preset(&f.hypergraph, WeightPreset::R).unwrap();
        let entries = coregular_eigenvalues(
            &f.hypergraph,
            &w,
            &f.center,
            &[OperatorKind::SignlessLaplacian],
        )
        .unwrap();
        assert!((entries[0].value - 3.0).abs() <= tol::EXACT);
        // k = 3 periphery under R: L eigenvalue (5k/9) f(3) = 15.
        let f = make_multilayer(MultiLayerSpec { k: 3 }).unwrap();
        let w = WeightConfig::preset(&f.hypergraph, WeightPreset::R).unwrap();
        let entries =
            coregular_eigenvalues(&f.hypergraph, &w, &f.periphery, &[OperatorKind::Laplacian])
                .unwrap();
        assert!((entries[0].value - 15.0).abs() <= tol::EXACT);
        assert_eq!(entries[0].basis.len(), 2);
        let dense =
            crate::operators::build_operator(&f.hypergraph, &w, OperatorKind::Laplacian).unwrap();
        let oracle = crate::spectra::dense_oracle(&dense).unwrap();
        assert!(oracle.multiplicity_at(15.0) >= 2);
    }

    #[test]
    fn hypothesis_failure_is_reported() {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        // {1, 3} is not unit-saturated, hence not co-regular.
        let set = vec![0, 2];
        let err = coregular_eigenvalues(&h, &w, &set, &[OperatorKind::Adjacency]).unwrap_err();
        assert!(matches!(err, DetectorError::Hypothesis { .. }));
    }
}
