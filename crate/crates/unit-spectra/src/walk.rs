//! Random walks: exact first-hitting distributions, expected hitting times,
//! the structured spectrum of the transition matrix, and seeded Monte Carlo.
//!
//! The walk Laplacian `Delta = I - P` coincides with the general Laplacian
//! for the reweighted vertex weights `delta'_V(v) = r(v) delta_V(v)`, so the
//! spectrum of `P` comes out of the structured Laplacian machinery via
//! `lambda_P = 1 - mu_Delta`. Exact absorbing-state propagation is the
//! primary verification tool; Monte Carlo is a seeded sanity layer on top.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, WeightConfig};
use crate::operators::{build_transition, OperatorError, OperatorKind, TransitionMatrix};
use crate::spectra::{self, SpectraError, SpectralCertificate, SpectrumReport};
use crate::tol;
use crate::units::{are_twin_units, TwinClass, UnitPartition};

#[derive(Debug, Error)]
pub enum WalkError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("source and target must differ")]
    SameVertex,
    #[error("twin hitting hypotheses failed for class {class}: {reason}")]
    TwinHypothesis { class: usize, reason: String },
}

/// A random-walk model: the transition matrix plus the weights it came from.
#[derive(Debug, Clone)]
pub struct WalkModel {
    pub transition: TransitionMatrix,
}

impl WalkModel {
    pub fn new(h: &Hypergraph, w: &WeightConfig) -> Result<Self, WalkError> {
        Ok(Self {
            transition: build_transition(h, w)?,
        })
    }

    pub fn n(&self) -> usize {
        self.transition.n()
    }
}

/// Exact first-hitting data from `source` to `target`.
#[derive(Debug, Clone)]
pub struct HittingProfile {
    pub source: usize,
    pub target: usize,
    /// `probabilities[t-1] = Prob(T^u_v = t)` for `t = 1..=t_max`.
    pub probabilities: Vec<f64>,
    /// Expected hitting time from the absorbing linear system; infinite when
    /// the target is unreachable.
    pub expected: f64,
}

/// Computes the exact first-hitting distribution by propagating the
/// distribution with `target` absorbing, plus the expected hitting time from
/// `(I - P_sub) h = 1` restricted to the vertices that can reach the target.
pub fn hitting_distribution(
    model: &WalkModel,
    source: usize,
    target: usize,
    t_max: usize,
) -> Result<HittingProfile, WalkError> {
    if source == target {
        return Err(WalkError::SameVertex);
    }
    let n = model.n();
    let p = &model.transition.matrix;
    // Distribution over non-absorbed states.
    let mut mass = vec![0.0; n];
    mass[source] = 1.0;
    let mut probabilities = Vec::with_capacity(t_max);
    for _ in 1..=t_max {
        let mut next = vec![0.0; n];
        let mut absorbed = 0.0;
        for u in 0..n {
            if u == target || mass[u] == 0.0 {
                continue;
            }
            absorbed += mass[u] * p[(u, target)];
            for v in 0..n {
                if v != target {
                    next[v] += mass[u] * p[(u, v)];
                }
            }
        }
        next[target] = 0.0;
        probabilities.push(absorbed);
        mass = next;
    }

    // Vertices that can reach the target. P has symmetric support (positive
    // entries mean a shared edge), so this is the target's component and is
    // closed under transitions; the restricted system below is nonsingular.
    let mut can_reach = vec![false; n];
    can_reach[target] = true;
    let mut frontier = vec![target];
    while let Some(v) = frontier.pop() {
        for u in 0..n {
            if !can_reach[u] && p[(u, v)] > 0.0 {
                can_reach[u] = true;
                frontier.push(u);
            }
        }
    }
    let expected = if !can_reach[source] {
        f64::INFINITY
    } else {
        let interior: Vec<usize> = (0..n).filter(|&u| u != target && can_reach[u]).collect();
        let k = interior.len();
        let mut a = DMatrix::zeros(k, k);
        for (i, &u) in interior.iter().enumerate() {
            for (j, &v) in interior.iter().enumerate() {
                a[(i, j)] = if i == j { 1.0 - p[(u, v)] } else { -p[(u, v)] };
            }
        }
        let rhs = DVector::from_element(k, 1.0);
        let sol = a
            .lu()
            .solve(&rhs)
            .expect("absorbing system is nonsingular on the reaching set");
        let idx = interior
            .iter()
            .position(|&u| u == source)
            .expect("source reaches target");
        sol[idx]
    };
    Ok(HittingProfile {
        source,
        target,
        probabilities,
        expected,
    })
}

/// Structured spectrum of `P_H`. When the reweighted vertex weights
/// `r(v) delta_V(v)` are constant on every unit, the full spectrum comes
/// from the structured Laplacian via `lambda = 1 - mu`; otherwise the oracle
/// list is returned alone with a warning flag.
#[derive(Debug)]
pub struct WalkSpectrum {
    /// Certificate for `P_H` (values `1 - mu`), present on the structured route.
    pub certificate: Option<SpectralCertificate>,
    pub report: SpectrumReport,
    /// Set when the structured hypotheses failed and only the oracle ran.
    pub warning: Option<String>,
}

pub fn walk_spectrum(h: &Hypergraph, w: &WeightConfig) -> Result<WalkSpectrum, WalkError> {
    let model = WalkModel::new(h, w)?;
    let reweighted = WeightConfig::custom(
        h,
        (0..h.n_vertices())
            .map(|v| model.transition.rates[v] * w.delta_v(v))
            .collect(),
        w.edge_weights().to_vec(),
    )?;
    // P = I - Delta is self-adjoint for the reweighted inner product, so the
    // dense oracle runs on P directly.
    let dense_p = crate::operators::DenseOperator {
        kind: OperatorKind::Adjacency,
        matrix: model.transition.matrix.clone(),
        vertex_weights: reweighted.vertex_weights().to_vec(),
    };
    let oracle = spectra::dense_oracle(&dense_p)?;
    match spectra::assemble_full_spectrum(h, &reweighted, OperatorKind::Laplacian) {
        Ok(full) => {
            let entries = full
                .certificate
                .entries
                .into_iter()
                .map(|mut e| {
                    e.value = 1.0 - e.value;
                    e
                })
                .collect();
            let certificate = SpectralCertificate {
                kind: OperatorKind::Adjacency,
                n: h.n_vertices(),
                entries,
            };
            let structured = certificate.sorted_values();
            let max_pair_gap = structured
                .iter()
                .zip(oracle.values.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let max_residual = certificate.max_residual(&dense_p);
            Ok(WalkSpectrum {
                report: SpectrumReport {
                    structured,
                    oracle: oracle.values,
                    max_pair_gap,
                    max_residual,
                },
                certificate: Some(certificate),
                warning: None,
            })
        }
        Err(err) => Ok(WalkSpectrum {
            certificate: None,
            report: SpectrumReport {
                structured: Vec::new(),
                oracle: oracle.values,
                max_pair_gap: f64::NAN,
                max_residual: f64::NAN,
            },
            warning: Some(format!("structured route unavailable: {err}")),
        }),
    }
}

/// Result of verifying the twin hitting-time equality on one class.
#[derive(Debug, Clone)]
pub struct TwinHittingReport {
    pub class: usize,
    /// Largest observed difference `|Prob(T^u_{u1} = t) - Prob(T^u_{u2} = t)|`.
    pub max_difference: f64,
    pub pairs_checked: usize,
}

/// Verifies that hitting distributions agree on twin targets: for an
/// equipotent twin pair with a `delta_V`-preserving vertex bijection and a
/// `delta_E`-preserving canonical bijection, `Prob(T^u_{u1} = t)` equals
/// `Prob(T^u_{u2} = t)` for every start `u` outside both units.
pub fn twin_hitting_check(
    model: &WalkModel,
    h: &Hypergraph,
    w: &WeightConfig,
    p: &UnitPartition,
    classes: &[TwinClass],
    class_index: usize,
    t_max: usize,
) -> Result<TwinHittingReport, WalkError> {
    let class = &classes[class_index];
    if class.size() < 2 {
        return Err(WalkError::TwinHypothesis {
            class: class_index,
            reason: "class has a single unit".into(),
        });
    }
    let mut max_difference: f64 = 0.0;
    let mut pairs_checked = 0;
    for a in 0..class.size() {
        for b in a + 1..class.size() {
            let (i, j) = (class.units[a], class.units[b]);
            let (ui, uj) = (&p.units[i], &p.units[j]);
            if ui.size() != uj.size() {
                return Err(WalkError::TwinHypothesis {
                    class: class_index,
                    reason: format!("units {i} and {j} are not equipotent"),
                });
            }
            let witness = are_twin_units(h, p, i, j).ok_or_else(|| WalkError::TwinHypothesis {
                class: class_index,
                reason: format!("units {i} and {j} are not twins"),
            })?;
            let forward = witness
                .forward
                .as_ref()
                .filter(|_| witness.bijective())
                .ok_or_else(|| WalkError::TwinHypothesis {
                    class: class_index,
                    reason: format!("no bijective canonical substitution between {i} and {j}"),
                })?;
            for &(e, f) in forward {
                if (w.delta_e(e) - w.delta_e(f)).abs() > tol::EXACT * w.delta_e(e).abs().max(1.0) {
                    return Err(WalkError::TwinHypothesis {
                        class: class_index,
                        reason: format!(
                            "canonical substitution not delta_E-preserving at edge {e}"
                        ),
                    });
                }
            }
            // delta_V-preserving vertex bijection in sorted member order.
            for (&x, &y) in ui.members.iter().zip(uj.members.iter()) {
                if (w.delta_v(x) - w.delta_v(y)).abs() > tol::EXACT * w.delta_v(x).abs().max(1.0) {
                    return Err(WalkError::TwinHypothesis {
                        class: class_index,
                        reason: format!("vertex bijection not delta_V-preserving at {x}"),
                    });
                }
            }
            for (&u1, &u2) in ui.members.iter().zip(uj.members.iter()) {
                for start in 0..h.n_vertices() {
                    if ui.members.contains(&start) || uj.members.contains(&start) {
                        continue;
                    }
                    let p1 = hitting_distribution(model, start, u1, t_max)?;
                    let p2 = hitting_distribution(model, start, u2, t_max)?;
                    for (x, y) in p1.probabilities.iter().zip(p2.probabilities.iter()) {
                        max_difference = max_difference.max((x - y).abs());
                    }
                    pairs_checked += 1;
                }
            }
        }
    }
    Ok(TwinHittingReport {
        class: class_index,
        max_difference,
        pairs_checked,
    })
}

/// Reproducible walk trajectory under a fixed 64-bit seed (ChaCha8 counter
/// RNG). The trajectory starts at `start` and contains `steps` further
/// states.
pub fn simulate(model: &WalkModel, start: usize, steps: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(start);
    let mut current = start;
    let p = &model.transition.matrix;
    for _ in 0..steps {
        let draw: f64 = rng.gen();
        let mut acc = 0.0;
        let mut next = current;
        for v in 0..model.n() {
            acc += p[(current, v)];
            if draw < acc {
                next = v;
                break;
            }
        }
        current = next;
        trajectory.push(current);
    }
    trajectory
}

/// Monte Carlo estimate of `Prob(T^u_v = t)` for `t = 1..=t_max` from
/// `runs` trajectories with per-run derived seeds.
pub fn empirical_hitting(
    model: &WalkModel,
    source: usize,
    target: usize,
    t_max: usize,
    runs: usize,
    seed: u64,
) -> Vec<f64> {
    let mut counts = vec![0usize; t_max];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..runs {
        let mut current = source;
        let run_seed: u64 = rng.gen();
        let mut walk_rng = ChaCha8Rng::seed_from_u64(run_seed);
        for t in 1..=t_max {
            let draw: f64 = walk_rng.gen();
            let mut acc = 0.0;
            let mut next = current;
            for v in 0..model.n() {
                acc += model.transition.matrix[(current, v)];
                if draw < acc {
                    next = v;
                    break;
                }
            }
            current = next;
            if current == target {
                counts[t - 1] += 1;
                break;
            }
        }
    }
    counts.iter().map(|&c| c as f64 / runs as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::WeightPreset;
    use crate::samples;
    use crate::units::{compute_units, twin_classes};

    fn fig1_model(preset: WeightPreset) -> (Hypergraph, WeightConfig, WalkModel) {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, preset).unwrap();
        let model = WalkModel::new(&h, &w).unwrap();
        (h, w, model)
    }

    #[test]
    fn two_vertex_chain_hits_in_one_step() {
        let h = samples::two_vertex_chain();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let model = WalkModel::new(&h, &w).unwrap();
        let profile = hitting_distribution(&model, 0, 1, 5).unwrap();
        assert!((profile.probabilities[0] - 1.0).abs() <= tol::EXACT);
        assert!(profile.probabilities[1..].iter().all(|&p| p == 0.0));
        assert!((profile.expected - 1.0).abs() <= tol::EXACT);
    }

    #[test]
    fn same_vertex_rejected() {
        let h = samples::two_vertex_chain();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let model = WalkModel::new(&h, &w).unwrap();
        assert!(matches!(
            hitting_distribution(&model, 0, 0, 5),
            Err(WalkError::SameVertex)
        ));
    }

    #[test]
    fn unreachable_target_reports_infinite_expectation() {
        let h = Hypergraph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("e".into(), vec!["a".into(), "b".into()]),
                ("f".into(), vec!["c".into(), "d".into()]),
            ],
        )
        .unwrap();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let model = WalkModel::new(&h, &w).unwrap();
        let profile = hitting_distribution(&model, 0, 2, 10).unwrap();
        assert!(profile.expected.is_infinite());
        assert!(profile.probabilities.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn same_unit_targets_have_identical_distributions() {
        let (h, _, model) = fig1_model(WeightPreset::B);
        let (v1, v2) = (h.vertex_id("1").unwrap(), h.vertex_id("2").unwrap());
        for start_label in ["5", "11", "16", "7"] {
            let start = h.vertex_id(start_label).unwrap();
            let p1 = hitting_distribution(&model, start, v1, 20).unwrap();
            let p2 = hitting_distribution(&model, start, v2, 20).unwrap();
            for (a, b) in p1.probabilities.iter().zip(p2.probabilities.iter()) {
                assert!((a - b).abs() <= tol::EXACT);
            }
            assert!((p1.expected - p2.expected).abs() <= 1e-9);
        }
    }

    #[test]
    fn probabilities_partial_sums_nondecreasing_and_below_one() {
        let (h, _, model) = fig1_model(WeightPreset::B);
        let profile = hitting_distribution(&model, h.vertex_id("16").unwrap(), 0, 30).unwrap();
        let mut acc = 0.0;
        for &p in &profile.probabilities {
            assert!(p >= 0.0);
            acc += p;
            assert!(acc <= 1.0 + tol::EXACT);
        }
    }

    #[test]
    fn walk_spectrum_two_vertex_chain() {
        let h = samples::two_vertex_chain();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let s = walk_spectrum(&h, &w).unwrap();
        assert!(s.warning.is_none());
        let mut values = s.report.structured.clone();
        values.sort_by(f64::total_cmp);
        assert!((values[0] + 1.0).abs() <= 1e-12);
        assert!((values[1] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn walk_spectrum_fig1_matches_oracle() {
        let h = samples::fig1();
        let w = WeightConfig::preset(&h, WeightPreset::B).unwrap();
        let s = walk_spectrum(&h, &w).unwrap();
        assert!(s.warning.is_none(), "{:?}", s.warning);
        assert!(s.report.max_pair_gap <= tol::PAIR_GAP);
        assert!(s.report.max_residual <= tol::RESIDUAL);
        // Row stochasticity: eigenvalue 1 present with the constant vector.
        let top = s.report.structured.last().copied().unwrap();
        assert!((top - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn walk_spectrum_hyperflower_unit_eigenvalue() {
        // hyperflower(2,2,2,2) under R: every unit carries the walk
        // eigenvalue 1 - sum_{e in E_0} delta_E(e) / (c' |e|) with the
        // compound constant c' = r(v) delta_V(v) = 6, i.e. -1/3, once per
        // extra unit member: multiplicity >= 4 over the four units.
        let f = crate::families::make_hyperflower(crate::families::HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let w = WeightConfig::preset(&f.hypergraph, WeightPreset::R).unwrap();
        let s = walk_spectrum(&f.hypergraph, &w).unwrap();
        assert!(s.warning.is_none());
        assert!(s.report.max_pair_gap <= tol::PAIR_GAP);
        let hits = s
            .report
            .oracle
            .iter()
            .filter(|&&v| (v + 1.0 / 3.0).abs() <= tol::PAIR_GAP)
            .count();
        assert!(hits >= 4, "unit eigenvalue -1/3 with multiplicity {hits}");
    }

    #[test]
    fn twin_hitting_fig1_class_e6_e7() {
        let (h, w, model) = fig1_model(WeightPreset::R);
        let p = compute_units(&h);
        let classes = twin_classes(&h, &p);
        // Class containing W_{E_6} (unit index 5).
        let class_index = classes.iter().position(|c| c.units.contains(&5)).unwrap();
        let report = twin_hitting_check(&model, &h, &w, &p, &classes, class_index, 20).unwrap();
        assert!(report.max_difference <= tol::EXACT, "{report:?}");
        assert!(report.pairs_checked > 0);
    }

    #[test]
    fn twin_hitting_rejects_non_bijective_class() {
        let (h, w, model) = fig1_model(WeightPreset::R);
        let p = compute_units(&h);
        let classes = twin_classes(&h, &p);
        // Class {W_{E_1}, W_{E_8}} has units of different sizes.
        let class_index = classes
            .iter()
            .position(|c| c.units.contains(&0) && c.size() > 1)
            .unwrap();
        assert!(matches!(
            twin_hitting_check(&model, &h, &w, &p, &classes, class_index, 5),
            Err(WalkError::TwinHypothesis { .. })
        ));
    }

    #[test]
    fn simulation_is_reproducible_and_alternates_on_the_chain() {
        let h = samples::two_vertex_chain();
        let w = WeightConfig::preset(&h, WeightPreset::R).unwrap();
        let model = WalkModel::new(&h, &w).unwrap();
        let t1 = simulate(&model, 0, 10, 42);
        let t2 = simulate(&model, 0, 10, 42);
        assert_eq!(t1, t2);
        let expected: Vec<usize> = (0..=10).map(|i| i % 2).collect();
        assert_eq!(t1, expected);
    }

    #[test]
    fn symmetric_set_targets_have_identical_distributions() {
        // The periphery of the k-layer flower is a sigma-symmetric set that
        // is not a unit; hitting distributions toward its members agree.
        let f = crate::families::make_multilayer(crate::families::MultiLayerSpec { k: 2 }).unwrap();
        let h = &f.hypergraph;
        let w = WeightConfig::preset(h, WeightPreset::R).unwrap();
        let p = compute_units(h);
        let sigma = crate::detectors::AlphaWeighting::sigma(h, &w);
        let verdict = crate::detectors::classify_set(h, &f.periphery, &sigma, &p).unwrap();
        assert!(verdict.is_symmetric());
        let model = WalkModel::new(h, &w).unwrap();
        // delta'_V = r * delta_V constant on the periphery.
        let rates: Vec<f64> = f
            .periphery
            .iter()
            .map(|&v| model.transition.rates[v])
            .collect();
        assert!(rates.iter().all(|&r| (r - rates[0]).abs() <= tol::EXACT));
        for &start in &f.center {
            let profiles: Vec<_> = f
                .periphery
                .iter()
                .map(|&u| hitting_distribution(&model, start, u, 20).unwrap())
                .collect();
            for other in &profiles[1..] {
                for (a, b) in profiles[0]
                    .probabilities
                    .iter()
                    .zip(other.probabilities.iter())
                {
                    assert!((a - b).abs() <= tol::EXACT);
                }
            }
        }
    }

    #[test]
    fn monte_carlo_matches_exact_within_three_sigma() {
        let (h, _, model) = fig1_model(WeightPreset::B);
        let source = h.vertex_id("16").unwrap();
        let target = h.vertex_id("1").unwrap();
        let exact = hitting_distribution(&model, source, target, 5).unwrap();
        let runs = 100_000;
        let empirical = empirical_hitting(&model, source, target, 5, runs, 7);
        for t in 0..5 {
            let p = exact.probabilities[t];
            let sigma = (p * (1.0 - p) / runs as f64).sqrt();
            let diff = (empirical[t] - p).abs();
            assert!(
                diff <= 3.0 * sigma.max(1e-4),
                "t={} exact={} empirical={} sigma={}",
                t + 1,
                p,
                empirical[t],
                sigma
            );
        }
    }
}
