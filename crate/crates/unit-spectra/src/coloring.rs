//! Proper colorings and bounds via the twin contraction.
//!
//! A coloring is proper when no hyperedge is monochromatic. Any proper
//! coloring of the contraction lifts through the class projection, giving
//! the chain `chi(H) <= chi(H-hat) <= #twin classes`; independent sets lift
//! the same way.

use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::units::{Contraction, ContractionKind};

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("hypergraph has {0} vertices, over the exact-search limit {1}")]
    TooLarge(usize, usize),
    #[error("hypergraph with a singleton edge admits no proper coloring")]
    SingletonEdge,
    #[error("contraction bounds need a simple, connected hypergraph with more than one edge")]
    HypothesisFailure,
    #[error("the given coloring is not proper on the contraction (edge {0} monochromatic)")]
    ImproperInput(String),
    #[error("the given set is not independent in the contraction (contains edge {0})")]
    NotIndependent(String),
}

/// A proper vertex coloring with colors `0..num_colors`.
#[derive(Debug, Clone)]
pub struct Coloring {
    pub assignment: Vec<usize>,
    pub num_colors: usize,
}

/// True iff no hyperedge is monochromatic under `assignment`.
pub fn is_proper(h: &Hypergraph, assignment: &[usize]) -> bool {
    (0..h.n_edges()).all(|e| {
        let mut members = h.edge_members(e).iter();
        let first = assignment[*members.next().expect("edges are nonempty")];
        members.any(|&v| assignment[v] != first)
    })
}

const EXACT_LIMIT: usize = 20;

/// Exact chromatic number by branch-and-bound over color assignments in
/// vertex order, with symmetry breaking (a vertex may open at most one new
/// color). Documented brute-force bound: 20 vertices.
pub fn chromatic_exact(h: &Hypergraph, limit: Option<usize>) -> Result<usize, ColoringError> {
    let max_n = limit.unwrap_or(EXACT_LIMIT);
    let n = h.n_vertices();
    if n > max_n {
        return Err(ColoringError::TooLarge(n, max_n));
    }
    if (0..h.n_edges()).any(|e| h.edge_size(e) == 1) {
        return Err(ColoringError::SingletonEdge);
    }
    if h.n_edges() == 0 {
        return Ok(if n == 0 { 0 } else { 1 });
    }

    fn feasible(h: &Hypergraph, k: usize) -> bool {
        fn assign(h: &Hypergraph, k: usize, colors: &mut Vec<usize>, used: usize) -> bool {
            let v = colors.len();
            if v == h.n_vertices() {
                return true;
            }
            let tryable = k.min(used + 1);
            for c in 0..tryable {
                colors.push(c);
                // Prune: any fully-colored edge must be polychromatic.
                let ok = h.star(v).iter().all(|&e| {
                    let members = h.edge_members(e);
                    if members.iter().any(|&u| u >= colors.len()) {
                        // Not fully colored yet; if every remaining slot were
                        // forced to c it could still be fixed later.
                        return true;
                    }
                    let first = colors[*members.iter().next().unwrap()];
                    members.iter().any(|&u| colors[u] != first)
                });
                if ok && assign(h, k, colors, used.max(c + 1)) {
                    return true;
                }
                colors.pop();
            }
            false
        }
        let mut colors = Vec::with_capacity(h.n_vertices());
        assign(h, k, &mut colors, 0)
    }

    for k in 1..=n {
        if feasible(h, k) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice without singleton edges")
}

fn check_contract_hypotheses(h: &Hypergraph) -> Result<(), ColoringError> {
    if h.is_simple() && h.is_connected() && h.n_edges() > 1 {
        Ok(())
    } else {
        Err(ColoringError::HypothesisFailure)
    }
}

/// Lifts a proper coloring of the twin contraction to the original
/// hypergraph by coloring each vertex with its class color. The result is
/// verified to be proper.
pub fn lift_coloring(
    h: &Hypergraph,
    contraction: &Contraction,
    quotient_coloring: &Coloring,
) -> Result<Coloring, ColoringError> {
    check_contract_hypotheses(h)?;
    let q = &contraction.quotient;
    if !is_proper(q, &quotient_coloring.assignment) {
        let bad = (0..q.n_edges())
            .find(|&e| {
                let first = quotient_coloring.assignment[*q.edge_members(e).iter().next().unwrap()];
                q.edge_members(e)
                    .iter()
                    .all(|&v| quotient_coloring.assignment[v] == first)
            })
            .map(|e| q.edge_name(e).to_string())
            .unwrap_or_default();
        return Err(ColoringError::ImproperInput(bad));
    }
    let assignment: Vec<usize> = (0..h.n_vertices())
        .map(|v| quotient_coloring.assignment[contraction.projection[v]])
        .collect();
    debug_assert!(is_proper(h, &assignment));
    Ok(Coloring {
        assignment,
        num_colors: quotient_coloring.num_colors,
    })
}

/// Greedy coloring in descending 2-section degree order, refined by the
/// exact search when the quotient is small enough. Returns an upper bound on
/// the chromatic number.
pub fn chromatic_upper(h: &Hypergraph) -> Result<Coloring, ColoringError> {
    if (0..h.n_edges()).any(|e| h.edge_size(e) == 1) {
        return Err(ColoringError::SingletonEdge);
    }
    let n = h.n_vertices();
    // 2-section adjacency: vertices sharing an edge.
    let mut adjacent = vec![vec![false; n]; n];
    for e in 0..h.n_edges() {
        let members: Vec<usize> = h.edge_members(e).iter().copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                adjacent[u][v] = true;
                adjacent[v][u] = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let degree = |v: usize| adjacent[v].iter().filter(|&&a| a).count();
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));
    // Greedy proper coloring of the 2-section is proper on the hypergraph:
    // any edge with two vertices gets two colors.
    let mut assignment = vec![usize::MAX; n];
    let mut num_colors = 0;
    for &v in &order {
        let mut used = vec![false; num_colors];
        for u in 0..n {
            if adjacent[v][u] && assignment[u] != usize::MAX {
                used[assignment[u]] = true;
            }
        }
        let c = used.iter().position(|&t| !t).unwrap_or(num_colors);
        if c == num_colors {
            num_colors += 1;
        }
        assignment[v] = c;
    }
    let mut best = Coloring {
        assignment,
        num_colors,
    };
    if n <= EXACT_LIMIT {
        if let Ok(chi) = chromatic_exact(h, None) {
            if chi < best.num_colors {
                // Re-run the exact search to extract a witness coloring.
                best = exact_coloring(h, chi).expect("chi is feasible");
            }
        }
    }
    debug_assert!(is_proper(h, &best.assignment));
    Ok(best)
}

fn exact_coloring(h: &Hypergraph, k: usize) -> Option<Coloring> {
    fn assign(h: &Hypergraph, k: usize, colors: &mut Vec<usize>, used: usize) -> bool {
        let v = colors.len();
        if v == h.n_vertices() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            colors.push(c);
            let ok = h.star(v).iter().all(|&e| {
                let members = h.edge_members(e);
                if members.iter().any(|&u| u >= colors.len()) {
                    return true;
                }
                let first = colors[*members.iter().next().unwrap()];
                members.iter().any(|&u| colors[u] != first)
            });
            if ok && assign(h, k, colors, used.max(c + 1)) {
                return true;
            }
            colors.pop();
        }
        false
    }
    let mut colors = Vec::with_capacity(h.n_vertices());
    if assign(h, k, &mut colors, 0) {
        Some(Coloring {
            assignment: colors,
            num_colors: k,
        })
    } else {
        None
    }
}

/// The coloring bound chain for one hypergraph.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Exact chromatic number, when the instance is within the search limit.
    pub chi_exact: Option<usize>,
    /// Upper bound via a proper coloring of the twin contraction, lifted.
    pub chi_contraction: usize,
    /// Number of twin classes.
    pub n_classes: usize,
    /// `|V(H-hat)| - rank(H-hat) + 2`, the independent-set bound.
    pub rank_bound: usize,
}

/// Computes the chain `chi(H) <= chi(H-hat) <= #classes` plus the rank
/// bound. Requires a simple, connected hypergraph with more than one edge.
pub fn bound_report(
    h: &Hypergraph,
    contraction: &Contraction,
) -> Result<BoundReport, ColoringError> {
    debug_assert_eq!(contraction.kind, ContractionKind::Twin);
    check_contract_hypotheses(h)?;
    let q = &contraction.quotient;
    let quotient_coloring = chromatic_upper(q)?;
    let lifted = lift_coloring(h, contraction, &quotient_coloring)?;
    debug_assert!(is_proper(h, &lifted.assignment));
    let chi_exact = chromatic_exact(h, None).ok();
    let rank = (0..q.n_edges()).map(|e| q.edge_size(e)).max().unwrap_or(0);
    Ok(BoundReport {
        chi_exact,
        chi_contraction: quotient_coloring.num_colors,
        n_classes: q.n_vertices(),
        rank_bound: q.n_vertices() - rank + 2,
    })
}

/// Lifts an independent set of the contraction: the preimage of an
/// independent set contains no hyperedge.
pub fn lift_independent_set(
    h: &Hypergraph,
    contraction: &Contraction,
    quotient_set: &[usize],
) -> Result<Vec<usize>, ColoringError> {
    check_contract_hypotheses(h)?;
    let q = &contraction.quotient;
    for e in 0..q.n_edges() {
        if q.edge_members(e).iter().all(|v| quotient_set.contains(v)) {
            return Err(ColoringError::NotIndependent(q.edge_name(e).to_string()));
        }
    }
    let lifted: Vec<usize> = (0..h.n_vertices())
        .filter(|&v| quotient_set.contains(&contraction.projection[v]))
        .collect();
    debug_assert!(
        (0..h.n_edges()).all(|e| { !h.edge_members(e).iter().all(|v| lifted.contains(v)) })
    );
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_hyperflower, HyperflowerSpec};
    use crate::samples;
    use crate::units::{compute_units, twin_classes, twin_contraction};

    fn contraction(h: &Hypergraph) -> Contraction {
        let p = compute_units(h);
        let classes = twin_classes(h, &p);
        twin_contraction(h, &p, &classes)
    }

    #[test]
    fn single_edge_needs_two_colors() {
        let h = samples::two_vertex_chain();
        assert_eq!(chromatic_exact(&h, None).unwrap(), 2);
    }

    #[test]
    fn hyperflower_chromatic_number_is_two() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        assert_eq!(chromatic_exact(&f.hypergraph, None).unwrap(), 2);
    }

    #[test]
    fn fig1_chromatic_number_is_two() {
        let h = samples::fig1();
        assert_eq!(chromatic_exact(&h, None).unwrap(), 2);
    }

    #[test]
    fn singleton_edge_uncolorable() {
        let h = samples::singleton();
        assert!(matches!(
            chromatic_exact(&h, None),
            Err(ColoringError::SingletonEdge)
        ));
    }

    #[test]
    fn size_limit_respected() {
        let h = samples::fig1();
        assert!(matches!(
            chromatic_exact(&h, Some(5)),
            Err(ColoringError::TooLarge(18, 5))
        ));
    }

    #[test]
    fn lift_from_k2_contraction() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let c = contraction(&f.hypergraph);
        assert_eq!(c.quotient.n_vertices(), 2);
        let two = Coloring {
            assignment: vec![0, 1],
            num_colors: 2,
        };
        let lifted = lift_coloring(&f.hypergraph, &c, &two).unwrap();
        assert!(is_proper(&f.hypergraph, &lifted.assignment));
        assert_eq!(lifted.num_colors, 2);
    }

    #[test]
    fn improper_quotient_coloring_rejected() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let c = contraction(&f.hypergraph);
        let mono = Coloring {
            assignment: vec![0, 0],
            num_colors: 1,
        };
        assert!(matches!(
            lift_coloring(&f.hypergraph, &c, &mono),
            Err(ColoringError::ImproperInput(_))
        ));
    }

    #[test]
    fn identity_contraction_lift_is_identity() {
        // cycle6 has all-singleton twin classes, so the contraction is H itself.
        let h = samples::cycle6();
        let c = contraction(&h);
        assert_eq!(c.quotient.n_vertices(), h.n_vertices());
        let coloring = chromatic_upper(&c.quotient).unwrap();
        let lifted = lift_coloring(&h, &c, &coloring).unwrap();
        let back: Vec<usize> = (0..h.n_vertices())
            .map(|v| coloring.assignment[c.projection[v]])
            .collect();
        assert_eq!(lifted.assignment, back);
    }

    #[test]
    fn fig1_bound_chain() {
        let h = samples::fig1();
        let c = contraction(&h);
        let report = bound_report(&h, &c).unwrap();
        assert_eq!(report.chi_exact, Some(2));
        assert!(report.chi_exact.unwrap() <= report.chi_contraction);
        assert!(report.chi_contraction <= report.n_classes);
        assert_eq!(report.n_classes, 4);
        assert!(report.chi_exact.unwrap() <= report.rank_bound);
    }

    #[test]
    fn hyperflower_chain_is_tight() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let c = contraction(&f.hypergraph);
        let report = bound_report(&f.hypergraph, &c).unwrap();
        assert_eq!(report.chi_exact, Some(2));
        assert_eq!(report.chi_contraction, 2);
        assert_eq!(report.n_classes, 2);
    }

    #[test]
    fn chain_can_be_strict() {
        // The 6-cycle: chi = 2 but six singleton twin classes.
        let h = samples::cycle6();
        let c = contraction(&h);
        let report = bound_report(&h, &c).unwrap();
        assert_eq!(report.chi_exact, Some(2));
        assert!(report.chi_contraction < report.n_classes);
        assert_eq!(report.n_classes, 6);
    }

    #[test]
    fn rank_bound_hyperflower_2122() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 1,
            t: 2,
            m: 2,
        })
        .unwrap();
        let c = contraction(&f.hypergraph);
        let report = bound_report(&f.hypergraph, &c).unwrap();
        // H-hat = K_2: |V| = 2, rank = 2, bound = 2.
        assert_eq!(report.rank_bound, 2);
        assert!(report.chi_exact.unwrap() <= report.rank_bound);
    }

    #[test]
    fn independent_set_lifting() {
        let h = samples::fig1();
        let c = contraction(&h);
        // A single class preimage is independent.
        for class in 0..c.quotient.n_vertices() {
            let lifted = lift_independent_set(&h, &c, &[class]).unwrap();
            assert!(!lifted.is_empty());
        }
        // Empty set lifts to the empty set.
        assert!(lift_independent_set(&h, &c, &[]).unwrap().is_empty());
    }

    #[test]
    fn min_partition_bound_gives_independent_union() {
        // Complete 3-uniform on 4 vertices: min partition number 3, so any
        // 2 class preimages union to an independent set.
        let h = samples::complete_3_uniform_4();
        let c = contraction(&h);
        let m = c.quotient.n_vertices();
        for a in 0..m {
            for b in a + 1..m {
                let lifted = lift_independent_set(&h, &c, &[a, b]).unwrap();
                for e in 0..h.n_edges() {
                    assert!(!h.edge_members(e).iter().all(|v| lifted.contains(v)));
                }
            }
        }
    }

    #[test]
    fn dependent_set_rejected() {
        let f = make_hyperflower(HyperflowerSpec {
            l: 2,
            r: 2,
            t: 2,
            m: 2,
        })
        .unwrap();
        let c = contraction(&f.hypergraph);
        // Both classes together contain the quotient edge.
        assert!(matches!(
            lift_independent_set(&f.hypergraph, &c, &[0, 1]),
            Err(ColoringError::NotIndependent(_))
        ));
    }
}
