//! Symmetry building blocks of finite hypergraphs and the spectra they certify.
//!
//! A finite hypergraph carries three weighted operators on functions over its
//! vertex set: the general adjacency `A`, Laplacian `L`, and signless
//! Laplacian `Q`. Vertices sharing the same star (the set of hyperedges
//! through them) form *units*; units, their *twin* classes, and a handful of
//! coarser vertex-set structures (regular, symmetric, co-regular sets) pin
//! down most of the spectrum of all three operators in closed form. The
//! remainder comes from a small quotient operator with one row per unit.
//!
//! The crate computes these building blocks, assembles full spectra as
//! structured certificates (eigenvalue, eigenbasis, provenance), and
//! cross-checks every certificate against a dense eigensolver oracle. On top
//! of that sit derived analyses: random walks and hitting times, a
//! unit-distance pseudometric with centralities, coloring bounds via
//! contraction, and a sufficient co-spectrality test.
//!
//! Entry points:
//! - [`hypergraph::Hypergraph`] and [`hypergraph::WeightConfig`] — data model,
//!   validation, `.hg.json` I/O.
//! - [`units::UnitPartition`] — units, twin classes, both contractions.
//! - [`operators`] — dense `A`/`L`/`Q`, quotients, transition matrix.
//! - [`spectra::assemble_full_spectrum`] — certified complete spectra.
//! - [`families`] — hyperflowers and multi-layer flowers with closed-form
//!   spectra.

pub mod coloring;
pub mod detectors;
pub mod families;
pub mod hypergraph;
pub mod metrics;
pub mod operators;
pub mod samples;
pub mod spectra;
pub mod units;
pub mod walk;

/// Central numeric tolerances. All thresholds used by certificates, reports,
/// and hypothesis checks live here so they are pinned in one place.
pub mod tol {
    /// Identities that hold exactly in exact arithmetic (matrix identities,
    /// row sums, compatibility commutators).
    pub const EXACT: f64 = 1e-12;
    /// Relative bound on the self-adjointness defect of `D_V . M`.
    pub const SELF_ADJOINT: f64 = 1e-10;
    /// Relative residual bound for an accepted certificate entry:
    /// `||T v - lambda v||_inf <= RESIDUAL * (1 + ||T||_inf)`.
    pub const RESIDUAL: f64 = 1e-9;
    /// Maximum gap allowed when pairing a structured spectrum with the
    /// oracle multiset.
    pub const PAIR_GAP: f64 = 1e-8;
    /// Relative threshold for eigenspace membership of a candidate vector.
    pub const MEMBERSHIP: f64 = 1e-8;
}
