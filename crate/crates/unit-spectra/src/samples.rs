//! Bundled sample hypergraphs used across tests, docs, and the CLI.

use crate::hypergraph::Hypergraph;

fn build(vertices: &[&str], edges: &[(&str, &[&str])]) -> Hypergraph {
    Hypergraph::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(n, m)| (n.to_string(), m.iter().map(|s| s.to_string()).collect()))
            .collect(),
    )
    .expect("sample hypergraphs are valid")
}

/// The 18-vertex, 7-edge running example with eight units
/// `{1,2}, {3,4}, {5,6,15}, {7,8}, {9,10}, {11,12}, {13,14}, {16,17,18}`
/// and four twin classes.
pub fn fig1() -> Hypergraph {
    build(
        &[
            "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
            "17", "18",
        ],
        &[
            ("e1", &["1", "2", "3", "4", "9", "10"]),
            ("e2", &["1", "2", "3", "4", "7", "8"]),
            ("e3", &["1", "2", "3", "4", "5", "6", "15"]),
            ("e4", &["1", "2", "11", "12"]),
            ("e5", &["1", "2", "13", "14"]),
            ("e6", &["11", "12", "16", "17", "18"]),
            ("e7", &["13", "14", "16", "17", "18"]),
        ],
    )
}

/// First half of the co-spectral pair: three 4-edges on `{1..6}` plus the
/// isolated vertices 7 and 8.
pub fn cospectral_h() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &[
            ("e1", &["1", "2", "3", "4"]),
            ("e2", &["1", "2", "5", "6"]),
            ("e3", &["3", "4", "5", "6"]),
        ],
    )
}

/// Second half of the co-spectral pair: a sunflower of three 4-edges through
/// the common core `{7,8}`.
pub fn cospectral_h_prime() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &[
            ("f1", &["1", "2", "7", "8"]),
            ("f2", &["3", "4", "7", "8"]),
            ("f3", &["5", "6", "7", "8"]),
        ],
    )
}

/// Regular-but-not-unit example: `U = {1,2,3}` is a regular set that is
/// neither a unit nor a union of twin units.
pub fn regular_not_unit() -> Hypergraph {
    build(
        &["1", "2", "3", "4"],
        &[
            ("e1", &["1", "2", "4"]),
            ("e2", &["2", "3", "4"]),
            ("e3", &["1", "3", "4"]),
        ],
    )
}

/// Complete 3-uniform hypergraph on four vertices; minimum partition number 3.
pub fn complete_3_uniform_4() -> Hypergraph {
    build(
        &["1", "2", "3", "4"],
        &[
            ("e1", &["1", "2", "3"]),
            ("e2", &["1", "2", "4"]),
            ("e3", &["1", "3", "4"]),
            ("e4", &["2", "3", "4"]),
        ],
    )
}

/// The 6-cycle as a 2-uniform hypergraph: chromatic number 2 with six
/// singleton twin classes, so the coloring chain is strict.
pub fn cycle6() -> Hypergraph {
    build(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("e1", &["1", "2"]),
            ("e2", &["2", "3"]),
            ("e3", &["3", "4"]),
            ("e4", &["4", "5"]),
            ("e5", &["5", "6"]),
            ("e6", &["6", "1"]),
        ],
    )
}

/// Two-vertex chain: a single edge `{a, b}`.
pub fn two_vertex_chain() -> Hypergraph {
    build(&["a", "b"], &[("e", &["a", "b"])])
}

/// One vertex carrying one singleton edge.
pub fn singleton() -> Hypergraph {
    build(&["a"], &[("e", &["a"])])
}
