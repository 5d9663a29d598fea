//! Parametric hypergraph families with closed-form spectra: the
//! `(l, r)`-hyperflower with `t`-twins and `m`-homogeneous center, and the
//! `k`-layer flower.
//!
//! A hyperflower has `l` peripheral `t`-sets `U_i` and `r` disjoint central
//! `m`-sets `e_k`; its edges are all unions `e_k u U_i`, so `|E| = l r` and
//! every edge has `t + m` vertices. Peripheral and central components are the
//! units, the two component families form the twin classes, and the whole
//! spectrum of each operator is known in closed form.

use nalgebra::DVector;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, WeightConfig};
use crate::operators::OperatorKind;
use crate::spectra::{CertEntry, Provenance, SpectralCertificate};
use crate::tol;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("hyperflower parameters must be positive: l={l}, r={r}, t={t}, m={m}")]
    ZeroParameter {
        l: usize,
        r: usize,
        t: usize,
        m: usize,
    },
    #[error("k-layer flower needs k >= 1")]
    ZeroLayers,
    #[error("closed spectrum needs {what} constant, found {a} and {b}")]
    NonConstant { what: &'static str, a: f64, b: f64 },
    #[error(
        "edge weights do not come from a size function f: edges of size {size} carry {a} and {b}"
    )]
    NotSizeFunction { size: usize, a: f64, b: f64 },
}

/// Parameters of an `(l, r)`-hyperflower with `t`-twins and an
/// `m`-homogeneous center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperflowerSpec {
    pub l: usize,
    pub r: usize,
    pub t: usize,
    pub m: usize,
}

impl HyperflowerSpec {
    pub fn n_vertices(&self) -> usize {
        self.l * self.t + self.r * self.m
    }

    pub fn n_edges(&self) -> usize {
        self.l * self.r
    }
}

/// A generated hyperflower with its structure labels.
#[derive(Debug, Clone)]
pub struct Hyperflower {
    pub spec: HyperflowerSpec,
    pub hypergraph: Hypergraph,
    /// Vertex indices of each peripheral component `U_i`.
    pub peripheral: Vec<Vec<usize>>,
    /// Vertex indices of each central component `e_k`.
    pub central: Vec<Vec<usize>>,
}

impl Hyperflower {
    /// All peripheral vertices `U`.
    pub fn periphery(&self) -> Vec<usize> {
        self.peripheral.iter().flatten().copied().collect()
    }

    /// All central vertices `W`.
    pub fn center(&self) -> Vec<usize> {
        self.central.iter().flatten().copied().collect()
    }
}

/// Builds the hyperflower: vertices `p{i}_{s}` (peripheral) and `c{k}_{s}`
/// (central), edges `e{k}_{i} = e_k u U_i`.
pub fn make_hyperflower(spec: HyperflowerSpec) -> Result<Hyperflower, FamilyError> {
    let HyperflowerSpec { l, r, t, m } = spec;
    if l == 0 || r == 0 || t == 0 || m == 0 {
        return Err(FamilyError::ZeroParameter { l, r, t, m });
    }
    let mut vertices = Vec::with_capacity(spec.n_vertices());
    let mut peripheral = Vec::with_capacity(l);
    for i in 1..=l {
        let mut comp = Vec::with_capacity(t);
        for s in 1..=t {
            comp.push(vertices.len());
            vertices.push(format!("p{i}_{s}"));
        }
        peripheral.push(comp);
    }
    let mut central = Vec::with_capacity(r);
    for k in 1..=r {
        let mut comp = Vec::with_capacity(m);
        for s in 1..=m {
            comp.push(vertices.len());
            vertices.push(format!("c{k}_{s}"));
        }
        central.push(comp);
    }
    let mut edges = Vec::with_capacity(spec.n_edges());
    for k in 1..=r {
        for i in 1..=l {
            let mut members: Vec<String> = central[k - 1]
                .iter()
                .map(|&v| vertices[v].clone())
                .collect();
            members.extend(peripheral[i - 1].iter().map(|&v| vertices[v].clone()));
            edges.push((format!("e{k}_{i}"), members));
        }
    }
    let hypergraph = Hypergraph::new(vertices, edges).expect("hyperflower construction is valid");
    Ok(Hyperflower {
        spec,
        hypergraph,
        peripheral,
        central,
    })
}

fn constant<I: Iterator<Item = f64>>(
    mut values: I,
    what: &'static str,
) -> Result<f64, FamilyError> {
    let first = values.next().expect("nonempty");
    for v in values {
        if (v - first).abs() > tol::EXACT * first.abs().max(1.0) {
            return Err(FamilyError::NonConstant {
                what,
                a: first,
                b: v,
            });
        }
    }
    Ok(first)
}

fn indicator(n: usize, set: &[usize], value: f64) -> DVector<f64> {
    let mut x = DVector::zeros(n);
    for &v in set {
        x[v] = value;
    }
    x
}

fn faria_basis(n: usize, members: &[usize]) -> Vec<DVector<f64>> {
    members[1..]
        .iter()
        .map(|&v| {
            let mut x = DVector::zeros(n);
            x[members[0]] = -1.0;
            x[v] = 1.0;
            x
        })
        .collect()
}

/// The complete closed-form spectrum of a hyperflower for one operator.
/// Requires `sigma` and `delta_V` globally constant (checked). The list has
/// exactly `l t + r m` entries split into per-component, twin, and global
/// contributions, keyed off the construction labels rather than re-detected
/// structure.
pub fn hyperflower_closed_spectrum(
    flower: &Hyperflower,
    w: &WeightConfig,
    kind: OperatorKind,
) -> Result<SpectralCertificate, FamilyError> {
    let h = &flower.hypergraph;
    let spec = flower.spec;
    let n = h.n_vertices();
    let (l, r, t, m) = (spec.l as f64, spec.r as f64, spec.t as f64, spec.m as f64);
    let sigma = constant((0..h.n_edges()).map(|e| w.sigma(h, e)), "sigma")?;
    let c = constant((0..n).map(|v| w.delta_v(v)), "delta_V")?;
    let wc = sigma / c;
    let family = "hyperflower".to_string();
    let mut entries: Vec<CertEntry> = Vec::new();
    let mut push = |value: f64, basis: Vec<DVector<f64>>, label: String| {
        if !basis.is_empty() {
            entries.push(CertEntry {
                value,
                basis,
                provenance: Provenance::ClosedForm {
                    family: family.clone(),
                    label,
                },
            });
        }
    };

    // Per-component entries (multiplicity t-1 per peripheral, m-1 per
    // central component).
    let unit_value = |comp_is_peripheral: bool| -> f64 {
        // Every component lies in r (peripheral) or l (central) edges, each
        // of size t + m.
        let star = if comp_is_peripheral { r } else { l };
        match kind {
            OperatorKind::SignlessLaplacian => 0.0,
            OperatorKind::Adjacency => -wc * star,
            OperatorKind::Laplacian => wc * star * (t + m),
        }
    };
    for (i, comp) in flower.peripheral.iter().enumerate() {
        push(
            unit_value(true),
            faria_basis(n, comp),
            format!("peripheral U{}", i + 1),
        );
    }
    for (k, comp) in flower.central.iter().enumerate() {
        push(
            unit_value(false),
            faria_basis(n, comp),
            format!("central e{}", k + 1),
        );
    }

    // Twin entries: differences of component indicators, multiplicities
    // l-1 and r-1.
    let twin_basis = |comps: &[Vec<usize>]| -> Vec<DVector<f64>> {
        let anchor = comps.last().expect("nonempty family");
        comps[..comps.len() - 1]
            .iter()
            .map(|comp| {
                let mut x = indicator(n, anchor, comp.len() as f64);
                for &v in comp {
                    x[v] = -(anchor.len() as f64);
                }
                x
            })
            .collect()
    };
    let peripheral_twin = match kind {
        OperatorKind::Adjacency => wc * r * (t - 1.0),
        OperatorKind::Laplacian => wc * r * m,
        OperatorKind::SignlessLaplacian => wc * r * t,
    };
    push(
        peripheral_twin,
        twin_basis(&flower.peripheral),
        "peripheral twins".into(),
    );
    let central_twin = match kind {
        OperatorKind::Adjacency => wc * l * (m - 1.0),
        OperatorKind::Laplacian => wc * l * t,
        OperatorKind::SignlessLaplacian => wc * l * m,
    };
    push(
        central_twin,
        twin_basis(&flower.central),
        "central twins".into(),
    );

    // The remaining two eigenvalues.
    let periphery = flower.periphery();
    let center = flower.center();
    match kind {
        OperatorKind::Adjacency => {
            // Roots of r m x^2 + [r(t-1) - l(m-1)] x - l t = 0; eigenvector
            // gamma * chi_W + chi_U.
            let a = r * m;
            let b = r * (t - 1.0) - l * (m - 1.0);
            let cq = -l * t;
            let disc = (b * b - 4.0 * a * cq).sqrt();
            for (idx, gamma) in [(-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a)]
                .into_iter()
                .enumerate()
            {
                let mut x = indicator(n, &center, gamma);
                for &v in &periphery {
                    x[v] = 1.0;
                }
                push(
                    wc * r * (t - 1.0 + m * gamma),
                    vec![x],
                    format!("quadratic root {}", idx + 1),
                );
            }
        }
        OperatorKind::Laplacian => {
            push(
                0.0,
                vec![DVector::from_element(n, 1.0)],
                "constant vector".into(),
            );
            let mut x = indicator(n, &periphery, center.len() as f64);
            for &v in &center {
                x[v] = -(periphery.len() as f64);
            }
            push(wc * (l * t + r * m), vec![x], "periphery vs center".into());
        }
        OperatorKind::SignlessLaplacian => {
            let mut y = indicator(n, &center, l);
            for &v in &periphery {
                y[v] = r;
            }
            push(wc * (l * m + r * t), vec![y], "global positive".into());
            let mut z = DVector::zeros(n);
            for comp in &flower.peripheral {
                z[comp[0]] = 1.0;
            }
            for comp in &flower.central {
                z[comp[0]] = -1.0;
            }
            push(0.0, vec![z], "alternating representatives".into());
        }
    }

    Ok(SpectralCertificate { kind, n, entries })
}

/// Parameters of a `k`-layer flower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiLayerSpec {
    pub k: usize,
}

/// A generated `k`-layer flower: three peripheral vertices `u1, u2, u3` and
/// `k` centers `v1..vk`, with the three 3-edges of layer `i` joining each
/// peripheral pair to `vi`.
#[derive(Debug, Clone)]
pub struct MultiLayer {
    pub spec: MultiLayerSpec,
    pub hypergraph: Hypergraph,
    /// Indices of `u1, u2, u3`.
    pub periphery: Vec<usize>,
    /// Indices of `v1..vk`.
    pub center: Vec<usize>,
}

pub fn make_multilayer(spec: MultiLayerSpec) -> Result<MultiLayer, FamilyError> {
    let k = spec.k;
    if k == 0 {
        return Err(FamilyError::ZeroLayers);
    }
    let mut vertices: Vec<String> = vec!["u1".into(), "u2".into(), "u3".into()];
    for i in 1..=k {
        vertices.push(format!("v{i}"));
    }
    let mut edges = Vec::with_capacity(3 * k);
    for i in 1..=k {
        let vi = format!("v{i}");
        edges.push((
            format!("a{i}"),
            vec!["u1".to_string(), "u2".to_string(), vi.clone()],
        ));
        edges.push((
            format!("b{i}"),
            vec!["u2".to_string(), "u3".to_string(), vi.clone()],
        ));
        edges.push((
            format!("c{i}"),
            vec!["u3".to_string(), "u1".to_string(), vi],
        ));
    }
    let hypergraph = Hypergraph::new(vertices, edges).expect("multilayer construction is valid");
    Ok(MultiLayer {
        spec,
        hypergraph,
        periphery: vec![0, 1, 2],
        center: (3..3 + k).collect(),
    })
}

/// Closed-form eigenvalues of the `k`-layer flower, with `delta_E = f(3)` on
/// every (3-element) edge, `delta_V = c_U` on the periphery and `c_V` on the
/// center. These are partial spectra: the stated multiplicities are lower
/// bounds.
pub fn multilayer_closed_spectrum(
    flower: &MultiLayer,
    w: &WeightConfig,
    kind: OperatorKind,
) -> Result<SpectralCertificate, FamilyError> {
    let h = &flower.hypergraph;
    let n = h.n_vertices();
    let k = flower.spec.k as f64;
    // All edges have size 3, so delta_E = f(|e|) just means delta_E constant.
    let f3 = {
        let first = w.delta_e(0);
        for e in 1..h.n_edges() {
            let v = w.delta_e(e);
            if (v - first).abs() > tol::EXACT * first.abs().max(1.0) {
                return Err(FamilyError::NotSizeFunction {
                    size: 3,
                    a: first,
                    b: v,
                });
            }
        }
        first
    };
    let c_u = constant(
        flower.periphery.iter().map(|&v| w.delta_v(v)),
        "delta_V on periphery",
    )?;
    let c_v = constant(
        flower.center.iter().map(|&v| w.delta_v(v)),
        "delta_V on center",
    )?;
    let family = "multilayer".to_string();
    let mut entries = Vec::new();
    let (periph_value, center_value) = match kind {
        OperatorKind::Adjacency => (-k / (9.0 * c_u) * f3, 0.0),
        OperatorKind::Laplacian => (5.0 * k / (9.0 * c_u) * f3, 2.0 / (3.0 * c_v) * f3),
        OperatorKind::SignlessLaplacian => (k / (9.0 * c_u) * f3, 1.0 / (3.0 * c_v) * f3),
    };
    entries.push(CertEntry {
        value: periph_value,
        basis: faria_basis(n, &flower.periphery),
        provenance: Provenance::ClosedForm {
            family: family.clone(),
            label: "periphery".into(),
        },
    });
    if flower.center.len() >= 2 {
        entries.push(CertEntry {
            value: center_value,
            basis: faria_basis(n, &flower.center),
            provenance: Provenance::ClosedForm {
                family,
                label: "center".into(),
            },
        });
    }
    Ok(SpectralCertificate { kind, n, entries })
}
