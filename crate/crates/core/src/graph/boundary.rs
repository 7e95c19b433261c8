//! Boundary measures of the branching graphs, approached along canonical
//! label sequences.
//!
//! A boundary point is an eventually constant nondecreasing sequence (a
//! two-tailed one for type A, a one-tailed nonnegative one for B/C/D). Its
//! canonical finite-level labels read the sequence backwards from a
//! family-specific origin, and the multi-step rows out of those labels
//! stabilize as the level grows; the stable row is the boundary measure on
//! levels of fixed rank k.

use rug::Rational;

use crate::arith::EvalConfig;
use crate::chars::{NonnegSignature, Signature};
use crate::contour::{BoundaryPointA, BoundaryPointBC};
use crate::error::{QError, Result};

use super::kernels::kernel_a_multi_exact;
use super::sample::ChainSampler;
use super::{BranchingGraph, KernelRow, SignSequence};

/// Canonical level-N label of a type-A boundary sequence: with b = #{minus
/// signs among the first N}, the label reads λ(N)_j = t_{b+1−j}.
pub fn canonical_sequence_a(
    t: &BoundaryPointA,
    sigma: &SignSequence,
    n: usize,
) -> Result<Signature> {
    let b = sigma.minus_count(n as u64) as i64;
    let parts: Vec<i64> = (1..=n as i64).map(|j| t.value(b + 1 - j)).collect();
    Signature::new(parts)
}

/// Canonical level-N label of a B/C/D boundary sequence: λ(N)_j = y_{N+1−j}.
pub fn canonical_sequence_bc(y: &BoundaryPointBC, n: usize) -> Result<NonnegSignature> {
    let parts: Vec<i64> = (1..=n).map(|j| y.value((n + 1 - j) as i64)).collect();
    NonnegSignature::new(parts)
}

/// A boundary point of one of the branching graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPoint {
    A(BoundaryPointA),
    Bc(BoundaryPointBC),
}

/// How to approximate a boundary measure.
#[derive(Clone, Debug)]
pub enum BoundaryMethod {
    /// Exact multi-step rows out of the canonical labels at level `n_trunc`
    /// and a deeper control level; errors with [`QError::NotConverged`] if
    /// the two rows differ by more than `tol` in total variation. Type A
    /// only.
    ExactMulti { n_trunc: usize, tol: f64 },
    /// Empirical measure of `samples` sampled chains from the canonical
    /// label at level `n_trunc` down to level k.
    MonteCarlo {
        n_trunc: usize,
        samples: u64,
        seed: u64,
    },
}

/// The boundary measure of `point` on level k of `graph`, computed by
/// truncating the canonical label sequence as directed by `method`.
pub fn boundary_measure(
    graph: &BranchingGraph,
    point: &BoundaryPoint,
    k: usize,
    cfg: &EvalConfig,
    method: &BoundaryMethod,
) -> Result<KernelRow> {
    if k == 0 {
        return Err(QError::InvalidConfig(
            "boundary measures live on levels k >= 1".into(),
        ));
    }
    let top_label = |n: usize| -> Result<Signature> {
        match (graph, point) {
            (BranchingGraph::SymA(sigma), BoundaryPoint::A(t)) => {
                canonical_sequence_a(t, sigma, n)
            }
            (BranchingGraph::Bc(_), BoundaryPoint::Bc(y)) => {
                Ok((*canonical_sequence_bc(y, n)?).clone())
            }
            _ => Err(QError::BadShape(
                "boundary point family does not match the graph".into(),
            )),
        }
    };
    match method {
        BoundaryMethod::ExactMulti { n_trunc, tol } => {
            let sigma = match graph {
                BranchingGraph::SymA(sigma) => sigma,
                BranchingGraph::Bc(_) => {
                    return Err(QError::InvalidConfig(
                        "closed-form multi-step rows are only available for the type-A graph"
                            .into(),
                    ))
                }
            };
            if *n_trunc <= k {
                return Err(QError::InvalidConfig(format!(
                    "truncation level {n_trunc} must exceed the target level {k}"
                )));
            }
            let control = n_trunc + 8;
            let row = kernel_a_multi_exact(&top_label(*n_trunc)?, k, sigma, cfg)?;
            let deeper = kernel_a_multi_exact(&top_label(control)?, k, sigma, cfg)?;
            let tv = row.tv_distance(&deeper);
            if tv > *tol {
                return Err(QError::NotConverged(format!(
                    "rows at truncation levels {n_trunc} and {control} are {tv:.3e} apart \
                     in total variation (tolerance {tol:.1e})"
                )));
            }
            Ok(deeper)
        }
        BoundaryMethod::MonteCarlo {
            n_trunc,
            samples,
            seed,
        } => {
            if *n_trunc < k {
                return Err(QError::InvalidConfig(format!(
                    "truncation level {n_trunc} must be at least the target level {k}"
                )));
            }
            if *samples == 0 {
                return Err(QError::InvalidConfig(
                    "need at least one sampled chain".into(),
                ));
            }
            let top = top_label(*n_trunc)?;
            let mut sampler = ChainSampler::new(graph.clone(), cfg);
            let mut counts = std::collections::BTreeMap::<Signature, u64>::new();
            for i in 0..*samples {
                let chain = sampler.sample(&top, k, *seed, i)?;
                *counts.entry(chain.bottom().clone()).or_insert(0) += 1;
            }
            let mut row = KernelRow::new();
            for (mu, c) in counts {
                row.insert(mu, cfg.scalar_from_rational(&Rational::from((c, *samples))));
            }
            Ok(row)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::GroupType;

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    fn cfg_half() -> EvalConfig {
        EvalConfig::exact(Rational::from((1, 2))).unwrap()
    }

    #[test]
    fn canonical_labels_read_the_sequence_backwards() {
        // t = (..., 0, [0, 1, 2] at indices 0..2, 2, ...), alternating signs:
        // b(6) = 3 gives λ(6) = (t_3, ..., t_{-2}) = (2, 2, 1, 0, 0, 0)
        let t = BoundaryPointA::new(0, vec![0, 1, 2], 0, 2).unwrap();
        let lam = canonical_sequence_a(&t, &SignSequence::Alternating, 6).unwrap();
        assert_eq!(lam, sig(&[2, 2, 1, 0, 0, 0]));

        // y = (0, 1, 2, 2, ...): λ(4) = (y_4, y_3, y_2, y_1) = (2, 2, 1, 0)
        let y = BoundaryPointBC::new(vec![0, 1, 2, 2]).unwrap();
        let lam = canonical_sequence_bc(&y, 4).unwrap();
        assert_eq!(*lam, sig(&[2, 2, 1, 0]));
        let lam6 = canonical_sequence_bc(&y, 6).unwrap();
        assert_eq!(*lam6, sig(&[2, 2, 2, 2, 1, 0]));
    }

    #[test]
    fn exact_boundary_rows_stabilize() {
        // the two-sided 0/1 step sequence with alternating signs
        let cfg = cfg_half();
        let t = BoundaryPointA::new(0, vec![], 1, 1).unwrap();
        let graph = BranchingGraph::SymA(SignSequence::Alternating);
        let point = BoundaryPoint::A(t);
        let method = BoundaryMethod::ExactMulti {
            n_trunc: 12,
            tol: 1e-3,
        };
        let row = boundary_measure(&graph, &point, 1, &cfg, &method).unwrap();
        assert!(row.is_stochastic(0.0));
        // level-1 labels concentrate on small values of the single part
        let bulk = row.event_mass_f64(|mu| mu.part(1).abs() <= 1);
        assert!(bulk > 0.9, "bulk {bulk}");
    }

    #[test]
    fn monte_carlo_matches_exact_rows() {
        let cfg = cfg_half();
        let t = BoundaryPointA::new(0, vec![], 1, 1).unwrap();
        let graph = BranchingGraph::SymA(SignSequence::Alternating);
        let point = BoundaryPoint::A(t);
        let exact = boundary_measure(
            &graph,
            &point,
            1,
            &cfg,
            &BoundaryMethod::ExactMulti {
                n_trunc: 10,
                tol: 1e-2,
            },
        )
        .unwrap();
        let empirical = boundary_measure(
            &graph,
            &point,
            1,
            &cfg,
            &BoundaryMethod::MonteCarlo {
                n_trunc: 10,
                samples: 2000,
                seed: 17,
            },
        )
        .unwrap();
        assert!(empirical.is_stochastic(0.0));
        let tv = exact.tv_distance(&empirical);
        assert!(tv < 0.06, "tv {tv}");
    }

    #[test]
    fn family_mismatch_is_rejected() {
        let cfg = cfg_half();
        let y = BoundaryPointBC::zero();
        let graph = BranchingGraph::SymA(SignSequence::AllPlus);
        let err = boundary_measure(
            &graph,
            &BoundaryPoint::Bc(y),
            1,
            &cfg,
            &BoundaryMethod::MonteCarlo {
                n_trunc: 4,
                samples: 1,
                seed: 0,
            },
        )
        .unwrap_err();
        assert!(matches!(err, QError::BadShape(_)));

        let graph = BranchingGraph::Bc(GroupType::C);
        let t = BoundaryPointA::constant(0);
        let err = boundary_measure(
            &graph,
            &BoundaryPoint::A(t),
            1,
            &cfg,
            &BoundaryMethod::ExactMulti {
                n_trunc: 6,
                tol: 1.0,
            },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            QError::BadShape(_) | QError::InvalidConfig(_)
        ));
    }
}
