//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;
use unit_spectra::coloring;
use unit_spectra::detectors::{classify_set, AlphaWeighting};
use unit_spectra::families::{
    hyperflower_closed_spectrum, make_hyperflower, make_multilayer, multilayer_closed_spectrum,
    HyperflowerSpec, MultiLayerSpec,
};
use unit_spectra::hypergraph::{Hypergraph, WeightConfig, WeightPreset};
use unit_spectra::metrics;
use unit_spectra::operators::{build_operator, build_quotient, check_compatibility, OperatorKind};
use unit_spectra::samples;
use unit_spectra::spectra::{
    assemble_full_spectrum, cospectral_sufficient, dense_oracle,
    extract_structures_from_eigenspace, extract_units_from_kernel,
};
use unit_spectra::tol;
use unit_spectra::units::{compute_units, twin_classes, twin_contraction, unit_neighbours};
use unit_spectra::walk::{empirical_hitting, hitting_distribution, WalkModel};

fn pass(criterion: usize, name: &str) {
    println!("[criterion {criterion}] {name}: PASS");
}

/// Criterion 1: the co-spectral example's quotients reproduce the reference
/// matrices entrywise (1e-12) and the full Q spectra agree within 1e-9.
#[test]
fn criterion_1_quotient_reproduction() {
    let start = Instant::now();
    let scale = 2.0 / 3.0;
    let expect_h: [[f64; 4]; 4] = [
        [2.0, 1.0, 1.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 1.0, 2.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ];
    let expect_hp: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 1.0],
        [1.0, 1.0, 1.0, 3.0],
    ];
    for (h, expected) in [
        (samples::cospectral_h(), expect_h),
        (samples::cospectral_h_prime(), expect_hp),
    ] {
        let w = WeightConfig::preset(&h, WeightPreset::B).unwrap();
        let p = compute_units(&h);
        let q = build_quotient(&h, &w, &p, OperatorKind::SignlessLaplacian).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (q.matrix[(i, j)] - scale * expected[i][j]).abs() <= 1e-12,
                    "quotient entry ({i},{j})"
                );
            }
        }
    }
    let h1 = samples::cospectral_h();
    let h2 = samples::cospectral_h_prime();
    let w1 = WeightConfig::preset(&h1, WeightPreset::B).unwrap();
    let w2 = WeightConfig::preset(&h2, WeightPreset::B).unwrap();
    let s1 = assemble_full_spectrum(&h1, &w1, OperatorKind::SignlessLaplacian).unwrap();
    let s2 = assemble_full_spectrum(&h2, &w2, OperatorKind::SignlessLaplacian).unwrap();
    for (a, b) in s1.report.structured.iter().zip(s2.report.structured.iter()) {
        assert!((a - b).abs() <= 1e-9, "full Q spectra match");
    }
    let verdict = cospectral_sufficient(&h1, &w1, &h2, &w2).unwrap();
    assert!(verdict.cospectral);
    assert!(start.elapsed().as_secs_f64() < 1.0, "runtime under 1 s");
    pass(1, "quotient reproduction");
}

/// Criterion 2: units, twin classes, and neighbour pairs of the 18-vertex
/// running example.
#[test]
fn criterion_2_fig1_structure() {
    let start = Instant::now();
    let h = samples::fig1();
    let p = compute_units(&h);
    let expected_units: Vec<Vec<&str>> = vec![
        vec!["1", "2"],
        vec!["3", "4"],
        vec!["5", "6", "15"],
        vec!["7", "8"],
        vec!["9", "10"],
        vec!["11", "12"],
        vec!["13", "14"],
        vec!["16", "17", "18"],
    ];
    assert_eq!(p.n_units(), 8);
    for (unit, want) in p.units.iter().zip(expected_units.iter()) {
        let got: Vec<&str> = unit.members.iter().map(|&v| h.vertex_label(v)).collect();
        assert_eq!(&got, want);
    }
    // Twin classes {E1,E8}, {E2}, {E3,E4,E5}, {E6,E7} in unit indices.
    let classes = twin_classes(&h, &p);
    let got: Vec<Vec<usize>> = classes.iter().map(|c| c.units.clone()).collect();
    assert_eq!(got, vec![vec![0, 7], vec![1], vec![2, 3, 4], vec![5, 6]]);
    // Neighbour pair (W_{E_6}, W_{E_8}) present, (W_{E_6}, W_{E_7}) absent.
    let neighbours = unit_neighbours(&h, &p);
    assert!(neighbours.contains(&(5, 7)));
    assert!(!neighbours.contains(&(5, 6)));
    assert!(start.elapsed().as_secs_f64() < 1.0, "runtime under 1 s");
    pass(2, "fig1 structure");
}

fn criterion_instances() -> Vec<Hypergraph> {
    let mut rng = common::rng(0x5eed_0003);
    (0..200)
        .map(|_| common::random_hypergraph(&mut rng, 12, 8, 2))
        .collect()
}

/// Criterion 3: structured spectra of 200 random hypergraphs match the
/// dense oracle for presets R and B and all three operators.
#[test]
fn criterion_3_completeness_on_random_instances() {
    let start = Instant::now();
    let instances = criterion_instances();
    assert_eq!(instances.len(), 200);
    for h in &instances {
        for preset in [WeightPreset::R, WeightPreset::B] {
            let w = WeightConfig::preset(h, preset).unwrap();
            for kind in OperatorKind::ALL {
                let full = assemble_full_spectrum(h, &w, kind).unwrap();
                assert!(
                    full.report.max_pair_gap <= tol::PAIR_GAP,
                    "pair gap {} on n={} m={} kind={kind}",
                    full.report.max_pair_gap,
                    h.n_vertices(),
                    h.n_edges()
                );
                assert!(full.report.max_residual <= tol::RESIDUAL);
                assert_eq!(full.certificate.claimed_total(), h.n_vertices());
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "runtime {elapsed:.1}s under 60 s");
    pass(3, "completeness on 200 random instances");
}

/// Criterion 4: the swap-commutation identity holds to 1e-12 for all unit
/// pairs, kinds, and presets on the same 200 instances.
#[test]
fn criterion_4_compatibility() {
    let instances = criterion_instances();
    for h in &instances {
        let p = compute_units(h);
        let partition: Vec<Vec<usize>> = p.units.iter().map(|u| u.members.clone()).collect();
        for preset in [WeightPreset::R, WeightPreset::B, WeightPreset::N] {
            // N is skipped where its hypotheses fail (isolated vertices).
            let Ok(w) = WeightConfig::preset(h, preset) else {
                continue;
            };
            for kind in OperatorKind::ALL {
                let t = build_operator(h, &w, kind).unwrap();
                let report = check_compatibility(&t, &partition);
                assert!(
                    report.max_violation <= tol::EXACT,
                    "violation {} under {preset} {kind}",
                    report.max_violation
                );
            }
        }
    }
    pass(4, "compatibility on 200 random instances");
}

/// Criterion 5: hyperflower closed-form spectra for all parameters in
/// {1,2,3}^4 match the oracle, and the two global eigenvalues appear.
#[test]
fn criterion_5_hyperflower_closed_forms() {
    let start = Instant::now();
    for l in 1..=3usize {
        for r in 1..=3usize {
            for t in 1..=3usize {
                for m in 1..=3usize {
                    let f = make_hyperflower(HyperflowerSpec { l, r, t, m }).unwrap();
                    let w = WeightConfig::preset(&f.hypergraph, WeightPreset::R).unwrap();
                    let (lf, rf, tf, mf) = (l as f64, r as f64, t as f64, m as f64);
                    for kind in OperatorKind::ALL {
                        let cert = hyperflower_closed_spectrum(&f, &w, kind).unwrap();
                        assert_eq!(cert.claimed_total(), f.hypergraph.n_vertices());
                        let dense = build_operator(&f.hypergraph, &w, kind).unwrap();
                        let oracle = dense_oracle(&dense).unwrap();
                        let got = cert.sorted_values();
                        for (g, o) in got.iter().zip(oracle.values.iter()) {
                            assert!(
                                (g - o).abs() <= tol::PAIR_GAP,
                                "({l},{r},{t},{m}) {kind}: {g} vs {o}"
                            );
                        }
                        assert!(cert.max_residual(&dense) <= tol::RESIDUAL);
                        // sigma = 1 and delta_V = 1 under R.
                        match kind {
                            OperatorKind::SignlessLaplacian => {
                                let want = lf * mf + rf * tf;
                                assert!(
                                    cert.sorted_values()
                                        .iter()
                                        .any(|v| (v - want).abs() <= tol::PAIR_GAP),
                                    "Q global eigenvalue (w/c)(lm+rt)"
                                );
                            }
                            OperatorKind::Laplacian => {
                                let want = lf * tf + rf * mf;
                                assert!(
                                    cert.sorted_values()
                                        .iter()
                                        .any(|v| (v - want).abs() <= tol::PAIR_GAP),
                                    "L global eigenvalue (w/c)(lt+rm)"
                                );
                            }
                            OperatorKind::Adjacency => {}
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "runtime {elapsed:.1}s under 120 s");
    pass(5, "hyperflower closed forms over {{1,2,3}}^4");
}

/// Criterion 6: multi-layer flower eigenvalues appear with at least the
/// claimed multiplicities for k = 1..=5 under R.
#[test]
fn criterion_6_multilayer_flower() {
    for k in 1..=5usize {
        let f = make_multilayer(MultiLayerSpec { k }).unwrap();
        let w = WeightConfig::preset(&f.hypergraph, WeightPreset::R).unwrap();
        let kf = k as f64;
        // R preset: f(3) = 9, c_U = c_V = 1.
        let claims: [(OperatorKind, Vec<(f64, usize)>); 3] = [
            (OperatorKind::Adjacency, vec![(-kf, 2), (0.0, k - 1)]),
            (OperatorKind::Laplacian, vec![(5.0 * kf, 2), (6.0, k - 1)]),
            (OperatorKind::SignlessLaplacian, vec![(kf, 2), (3.0, k - 1)]),
        ];
        for (kind, values) in claims {
            let dense = build_operator(&f.hypergraph, &w, kind).unwrap();
            let oracle = dense_oracle(&dense).unwrap();
            // Cluster the claims: coinciding values pool their multiplicities.
            let mut clusters: Vec<(f64, usize)> = Vec::new();
            for (value, mult) in values {
                if mult == 0 {
                    continue;
                }
                match clusters
                    .iter_mut()
                    .find(|(v, _)| (*v - value).abs() <= tol::PAIR_GAP)
                {
                    Some((_, m)) => *m += mult,
                    None => clusters.push((value, mult)),
                }
            }
            for (value, mult) in clusters {
                assert!(
                    oracle.multiplicity_at(value) >= mult,
                    "k={k} {kind}: eigenvalue {value} multiplicity {} < {mult}",
                    oracle.multiplicity_at(value)
                );
            }
            // The closed-form certificate itself passes residual checks.
            let cert = multilayer_closed_spectrum(&f, &w, kind).unwrap();
            assert!(cert.max_residual(&dense) <= tol::RESIDUAL);
        }
    }
    pass(6, "multi-layer flower eigenvalues for k in 1..=5");
}

/// Criterion 7: walk identities and hitting equalities, exact and Monte
/// Carlo.
#[test]
fn criterion_7_random_walk() {
    // Fig. 1 under B plus 50 random walkable instances with a planted unit.
    let mut rng = common::rng(0x5eed_0007);
    let mut instances = vec![(samples::fig1(), WeightPreset::B)];
    for _ in 0..50 {
        instances.push((
            common::random_walkable_with_unit(&mut rng, 10, 6),
            WeightPreset::R,
        ));
    }
    for (h, preset) in &instances {
        let w = WeightConfig::preset(h, *preset).unwrap();
        let model = WalkModel::new(h, &w).unwrap();
        // Rows sum to one.
        for u in 0..h.n_vertices() {
            assert!((model.transition.row_sum(u) - 1.0).abs() <= tol::EXACT);
        }
        // Delta = I - P equals the reweighted Laplacian entrywise.
        let delta = model.transition.walk_laplacian();
        let reweighted = WeightConfig::custom(
            h,
            (0..h.n_vertices())
                .map(|v| model.transition.rates[v] * w.delta_v(v))
                .collect(),
            w.edge_weights().to_vec(),
        )
        .unwrap();
        let l = build_operator(h, &reweighted, OperatorKind::Laplacian).unwrap();
        for i in 0..h.n_vertices() {
            for j in 0..h.n_vertices() {
                assert!((delta[(i, j)] - l.matrix[(i, j)]).abs() <= tol::EXACT);
            }
        }
        // Same-unit hitting distributions and expected times agree.
        let p = compute_units(h);
        let unit = p
            .units
            .iter()
            .find(|u| u.size() >= 2)
            .expect("instance has a unit of size >= 2");
        let (u1, u2) = (unit.members[0], unit.members[1]);
        for source in 0..h.n_vertices() {
            if source == u1 || source == u2 {
                continue;
            }
            let p1 = hitting_distribution(&model, source, u1, 20).unwrap();
            let p2 = hitting_distribution(&model, source, u2, 20).unwrap();
            for (a, b) in p1.probabilities.iter().zip(p2.probabilities.iter()) {
                assert!((a - b).abs() <= tol::EXACT, "distribution equality");
            }
            if p1.expected.is_finite() || p2.expected.is_finite() {
                assert!((p1.expected - p2.expected).abs() <= 1e-9, "ET equality");
            }
        }
    }
    // Monte Carlo at 1e5 samples within 3 standard errors, fixed seed.
    let h = samples::fig1();
    let w = WeightConfig::preset(&h, WeightPreset::B).unwrap();
    let model = WalkModel::new(&h, &w).unwrap();
    let source = h.vertex_id("16").unwrap();
    let target = h.vertex_id("1").unwrap();
    let exact = hitting_distribution(&model, source, target, 5).unwrap();
    let runs = 100_000;
    let empirical = empirical_hitting(&model, source, target, 5, runs, 0x5eed_cafe);
    for t in 0..5 {
        let p = exact.probabilities[t];
        let sigma = (p * (1.0 - p) / runs as f64).sqrt();
        assert!(
            (empirical[t] - p).abs() <= 3.0 * sigma.max(1e-4),
            "Monte Carlo at t={}",
            t + 1
        );
    }
    pass(7, "random walk identities and hitting equalities");
}

/// Criterion 8: converse extractions recover units from the kernel and
/// produce detector-certified sets from eigenspaces.
#[test]
fn criterion_8_converse_extraction() {
    let mut rng = common::rng(0x5eed_0008);
    let mut instances: Vec<(Hypergraph, WeightPreset)> = vec![
        (samples::fig1(), WeightPreset::R),
        (samples::fig1(), WeightPreset::B),
        (samples::cospectral_h(), WeightPreset::B),
        (samples::cospectral_h_prime(), WeightPreset::B),
        (
            make_hyperflower(HyperflowerSpec {
                l: 2,
                r: 2,
                t: 2,
                m: 2,
            })
            .unwrap()
            .hypergraph,
            WeightPreset::R,
        ),
    ];
    for _ in 0..30 {
        instances.push((
            common::random_hypergraph(&mut rng, 10, 6, 2),
            if rng.gen() {
                WeightPreset::R
            } else {
                WeightPreset::B
            },
        ));
    }
    for (h, preset) in &instances {
        let w = WeightConfig::preset(h, *preset).unwrap();
        let p = compute_units(h);
        // Kernel-derived units equal the computed units of size >= 2.
        let recovered = extract_units_from_kernel(h, &w).unwrap();
        let expected: Vec<Vec<usize>> = p
            .units
            .iter()
            .filter(|u| u.size() >= 2)
            .map(|u| u.members.clone())
            .collect();
        assert_eq!(recovered, expected, "kernel units on n={}", h.n_vertices());
        // Eigenspace-derived maximal sets pass the converse detectors.
        let sigma = AlphaWeighting::sigma(h, &w);
        let eta = AlphaWeighting::eta(h, &w);
        for kind in OperatorKind::ALL {
            let dense = build_operator(h, &w, kind).unwrap();
            let oracle = dense_oracle(&dense).unwrap();
            let mut distinct: Vec<f64> = Vec::new();
            for &v in &oracle.values {
                if distinct.iter().all(|&d| (d - v).abs() > tol::PAIR_GAP) {
                    distinct.push(v);
                }
            }
            for lambda in distinct {
                let sets = extract_structures_from_eigenspace(h, &w, kind, lambda).unwrap();
                for set in &sets {
                    let sv = classify_set(h, &set.vertices, &sigma, &p).unwrap();
                    assert!(sv.unit_saturated, "unit saturation at {lambda} for {kind}");
                    assert!(sv.is_symmetric(), "sigma symmetry at {lambda} for {kind}");
                    match kind {
                        OperatorKind::Laplacian => {
                            let ev = classify_set(h, &set.vertices, &eta, &p).unwrap();
                            assert!(ev.is_regular(), "eta regularity at {lambda}");
                        }
                        OperatorKind::SignlessLaplacian => {
                            // delta_V is globally constant under R and B.
                            assert!(sv.is_coregular(), "sigma co-regularity at {lambda}");
                        }
                        OperatorKind::Adjacency => {}
                    }
                }
            }
        }
    }
    pass(8, "converse extraction");
}

/// Criterion 9: the coloring chain holds on 100 random simple connected
/// instances and is tight on the hyperflower.
#[test]
fn criterion_9_coloring_chain() {
    let mut rng = common::rng(0x5eed_0009);
    for _ in 0..100 {
        let h = common::random_simple_connected(&mut rng, 9, 5);
        let p = compute_units(&h);
        let classes = twin_classes(&h, &p);
        let c = twin_contraction(&h, &p, &classes);
        let report = coloring::bound_report(&h, &c).unwrap();
        let chi = report.chi_exact.expect("exact chi at this scale");
        assert!(chi <= report.chi_contraction, "chi <= chi(contraction)");
        assert!(
            report.chi_contraction <= report.n_classes,
            "chi(contraction) <= #classes"
        );
        // Every lifted coloring is proper (bound_report already lifts and
        // asserts internally; re-verify explicitly).
        let quotient_coloring = coloring::chromatic_upper(&c.quotient).unwrap();
        let lifted = coloring::lift_coloring(&h, &c, &quotient_coloring).unwrap();
        assert!(coloring::is_proper(&h, &lifted.assignment));
    }
    let f = make_hyperflower(HyperflowerSpec {
        l: 2,
        r: 2,
        t: 2,
        m: 2,
    })
    .unwrap();
    let p = compute_units(&f.hypergraph);
    let classes = twin_classes(&f.hypergraph, &p);
    let c = twin_contraction(&f.hypergraph, &p, &classes);
    let report = coloring::bound_report(&f.hypergraph, &c).unwrap();
    assert_eq!(report.chi_exact, Some(2));
    assert_eq!(report.chi_contraction, 2);
    assert_eq!(report.n_classes, 2);
    pass(9, "coloring chain on 100 random instances");
}

/// Criterion 10: metric invariants hold on fixtures and 100 random
/// instances.
#[test]
fn criterion_10_metrics() {
    let mut rng = common::rng(0x5eed_0010);
    let mut instances = vec![
        samples::fig1(),
        samples::complete_3_uniform_4(),
        make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap()
        .hypergraph,
        make_hyperflower(HyperflowerSpec {
            l: 3,
            r: 1,
            t: 2,
            m: 3,
        })
        .unwrap()
        .hypergraph,
    ];
    for _ in 0..100 {
        instances.push(common::random_hypergraph(&mut rng, 10, 6, 1));
    }
    let mut girth_hypothesis_seen = false;
    for h in &instances {
        let p = compute_units(h);
        let g = metrics::unit_graph(h, &p);
        let report = metrics::distance_report(h, &p, &g).unwrap();
        // Pseudometric axioms where distances exist.
        let m = p.n_units();
        for i in 0..m {
            assert_eq!(report.unit_distances[i][i], Some(0));
            for j in 0..m {
                assert_eq!(report.unit_distances[i][j], report.unit_distances[j][i]);
                for k in 0..m {
                    if let (Some(dij), Some(dik), Some(dkj)) = (
                        report.unit_distances[i][j],
                        report.unit_distances[i][k],
                        report.unit_distances[k][j],
                    ) {
                        assert!(dij <= dik + dkj, "triangle inequality");
                    }
                }
            }
        }
        // Same-unit distance is zero; distinct units have positive distance.
        for u in 0..h.n_vertices() {
            for v in 0..h.n_vertices() {
                let d = report.unit_distances[p.unit_of(u)][p.unit_of(v)];
                if p.unit_of(u) == p.unit_of(v) {
                    assert_eq!(d, Some(0));
                } else if let Some(d) = d {
                    assert!(d > 0);
                }
            }
        }
        assert!(
            report.max_partition_number <= report.clique_number,
            "partition number bounded by unit-clique number"
        );
        if report.connected {
            if let Some(d) = report.diameter {
                assert!(h.n_edges() as u32 >= d, "edge count bounds unit diameter");
            }
        }
        if h.n_edges() > 0 && report.min_partition_number >= 3 {
            girth_hypothesis_seen = true;
            assert_eq!(report.girth, Some(3), "min partition >= 3 forces girth 3");
        }
    }
    assert!(
        girth_hypothesis_seen,
        "the girth hypothesis case was exercised"
    );
    pass(10, "metric invariants");
}

/// Certificate entries are genuine eigenvectors: spot-check the per-entry
/// residual path on one random instance per preset (supporting criterion 3).
#[test]
fn certificates_expose_residuals() {
    let mut rng = common::rng(0x5eed_0011);
    let h = common::random_hypergraph(&mut rng, 10, 6, 2);
    for preset in [WeightPreset::R, WeightPreset::B] {
        let w = WeightConfig::preset(&h, preset).unwrap();
        let full = assemble_full_spectrum(&h, &w, OperatorKind::Laplacian).unwrap();
        let dense = build_operator(&h, &w, OperatorKind::Laplacian).unwrap();
        let scale = 1.0 + dense.inf_norm();
        for entry in &full.certificate.entries {
            for x in &entry.basis {
                let r = (dense.apply(x) - entry.value * x).amax() / scale;
                assert!(r <= tol::RESIDUAL);
                assert!(x.iter().any(|&c| c != 0.0));
            }
        }
        // The combined system spans R^n.
        assert_eq!(full.certificate.basis_rank(), h.n_vertices());
        let _ = DVector::<f64>::zeros(h.n_vertices());
    }
}
