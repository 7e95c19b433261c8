//! Stochastic kernels, chain samplers, and boundary-measure machinery of the
//! q-deformed branching graphs.
//!
//! Two graded graphs appear: the type-A graph whose vertices at level N are
//! arbitrary signatures of length N and whose links come from principally
//! specialized Schur ratios (steered level-by-level by a sign sequence
//! choosing between the two geometric alphabets), and the equal-rank graphs of
//! the deformed B/C/D families whose links come from one-variable skew
//! characters. Rows of every link are exact probability distributions in
//! exact arithmetic; samplers are deterministic functions of an explicit
//! 64-bit seed.

pub mod boundary;
pub mod functional;
pub mod kernels;
pub mod sample;

pub use boundary::{
    boundary_measure, canonical_sequence_a, canonical_sequence_bc, BoundaryMethod, BoundaryPoint,
};
pub use functional::f_mu_functional;
pub use kernels::{kernel_a_multi_exact, kernel_a_multi_via_steps, kernel_a_step, kernel_bc_step};
pub use sample::{chain_rng, sample_chain, ChainSample, ChainSampler, LazyStepSampler};

use std::collections::BTreeMap;

use crate::arith::Scalar;
use crate::chars::{GroupType, Signature};
use crate::error::{QError, Result};

/// An infinite ±1 sequence indexed from 1, steering the type-A graph: the
/// link from level n down to level n−1 uses the sign at index n, and the
/// running count of minus signs decides which geometric alphabet each level
/// is specialized at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignSequence {
    /// +1 everywhere.
    AllPlus,
    /// −1 everywhere.
    AllMinus,
    /// +1 at odd indices, −1 at even indices; `minus_count(n) = ⌊n/2⌋`.
    /// Both `minus_count(n)` and `n − minus_count(n)` are unbounded, so this
    /// sequence is generic in the sense required by the boundary theory.
    Alternating,
    /// An explicit head (index 1 onward) followed by a constant tail.
    Custom { head: Vec<i8>, tail: i8 },
}

impl SignSequence {
    /// Validated constructor for the explicit-head variant.
    pub fn custom(head: Vec<i8>, tail: i8) -> Result<Self> {
        if head.iter().any(|s| *s != 1 && *s != -1) || (tail != 1 && tail != -1) {
            return Err(QError::InvalidConfig(
                "sign sequences take values +1 and -1 only".into(),
            ));
        }
        Ok(SignSequence::Custom { head, tail })
    }

    /// The sign at index n ≥ 1.
    pub fn sign(&self, n: u64) -> i8 {
        debug_assert!(n >= 1);
        match self {
            SignSequence::AllPlus => 1,
            SignSequence::AllMinus => -1,
            SignSequence::Alternating => {
                if n % 2 == 1 {
                    1
                } else {
                    -1
                }
            }
            SignSequence::Custom { head, tail } => {
                head.get((n - 1) as usize).copied().unwrap_or(*tail)
            }
        }
    }

    /// Number of −1 entries among indices 1..=n.
    pub fn minus_count(&self, n: u64) -> u64 {
        match self {
            SignSequence::AllPlus => 0,
            SignSequence::AllMinus => n,
            SignSequence::Alternating => n / 2,
            SignSequence::Custom { head, tail } => {
                let cut = n.min(head.len() as u64) as usize;
                let in_head = head[..cut].iter().filter(|s| **s < 0).count() as u64;
                in_head
                    + if *tail < 0 {
                        n - cut as u64
                    } else {
                        0
                    }
            }
        }
    }

    /// Number of −1 entries among indices k+1..=n (zero when k ≥ n); this is
    /// the alphabet offset of the multi-step link from level n to level k.
    pub fn minus_count_between(&self, k: u64, n: u64) -> u64 {
        self.minus_count(n).saturating_sub(self.minus_count(k))
    }

    /// True when both the minus count and the plus count are unbounded, the
    /// condition under which the canonical label sequences stabilize to every
    /// boundary point.
    pub fn is_generic(&self) -> bool {
        matches!(self, SignSequence::Alternating)
    }
}

/// Which branching graph a kernel or sampler walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchingGraph {
    /// Type-A graph on signatures with arbitrary integer parts.
    SymA(SignSequence),
    /// Equal-rank graph of one of the deformed B/C/D families, on
    /// nonnegative signatures.
    Bc(GroupType),
}

/// A finitely supported row of a branching-graph link: signature keys with
/// scalar masses. Rows produced by the kernel constructors are probability
/// distributions — nonnegative masses summing to exactly one in exact mode.
#[derive(Clone, Debug, Default)]
pub struct KernelRow {
    masses: BTreeMap<Signature, Scalar>,
}

impl KernelRow {
    pub fn new() -> Self {
        KernelRow {
            masses: BTreeMap::new(),
        }
    }

    /// Add mass at a key, accumulating if the key is already present.
    pub fn insert(&mut self, key: Signature, mass: Scalar) {
        match self.masses.get_mut(&key) {
            Some(m) => *m = m.add(&mass),
            None => {
                self.masses.insert(key, mass);
            }
        }
    }

    pub fn get(&self, key: &Signature) -> Option<&Scalar> {
        self.masses.get(key)
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Entries in ascending key order (deterministic).
    pub fn iter(&self) -> impl Iterator<Item = (&Signature, &Scalar)> {
        self.masses.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Signature> {
        self.masses.keys()
    }

    /// Sum of all masses; `None` for an empty row.
    pub fn total(&self) -> Option<Scalar> {
        let mut it = self.masses.values();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.add(m)))
    }

    /// Whether the row is a probability distribution. Exact entries must be
    /// nonnegative rationals summing to exactly one; float entries must be
    /// real and nonnegative within `tol`, with the total within `tol` of one.
    pub fn is_stochastic(&self, tol: f64) -> bool {
        if self.masses.is_empty() {
            return false;
        }
        let mut all_exact = true;
        for m in self.masses.values() {
            match m {
                Scalar::Exact(r) => {
                    if *r < 0 {
                        return false;
                    }
                }
                Scalar::Float(c) => {
                    all_exact = false;
                    if c.re.to_f64() < -tol || c.im.to_f64().abs() > tol {
                        return false;
                    }
                }
            }
        }
        let total = self.total().expect("nonempty row has a total");
        if all_exact {
            total.eq_exact(&total.one_like())
        } else {
            total.dist(&total.one_like()) <= tol
        }
    }

    /// Total-variation distance (half the ℓ¹ distance over the union of the
    /// two supports), as a double.
    pub fn tv_distance(&self, other: &KernelRow) -> f64 {
        let mut sum = 0.0f64;
        for (key, m) in &self.masses {
            match other.masses.get(key) {
                Some(o) => sum += m.sub(o).abs_f64(),
                None => sum += m.abs_f64(),
            }
        }
        for (key, o) in &other.masses {
            if !self.masses.contains_key(key) {
                sum += o.abs_f64();
            }
        }
        sum / 2.0
    }

    /// Mass of the event `pred`; `None` when no key satisfies it.
    pub fn event_mass(&self, mut pred: impl FnMut(&Signature) -> bool) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        for (key, m) in &self.masses {
            if pred(key) {
                acc = Some(match acc {
                    Some(a) => a.add(m),
                    None => m.clone(),
                });
            }
        }
        acc
    }

    /// Mass of the event `pred` as a double (zero when empty).
    pub fn event_mass_f64(&self, pred: impl FnMut(&Signature) -> bool) -> f64 {
        self.event_mass(pred).map(|m| m.abs_f64()).unwrap_or(0.0)
    }

    /// Push the row (viewed as a measure on its keys) through a one-step
    /// kernel: the result has mass Σ_λ row(λ)·step(λ)(μ) at μ.
    pub fn push_forward<F>(&self, mut step: F) -> Result<KernelRow>
    where
        F: FnMut(&Signature) -> Result<KernelRow>,
    {
        let mut out = KernelRow::new();
        for (lam, w) in &self.masses {
            let row = step(lam)?;
            for (mu, m) in &row.masses {
                out.insert(mu.clone(), w.mul(m));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::Exact(Rational::from((n, d)))
    }

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sign_sequence_counts() {
        let alt = SignSequence::Alternating;
        assert_eq!(alt.sign(1), 1);
        assert_eq!(alt.sign(2), -1);
        assert_eq!(alt.minus_count(7), 3);
        assert_eq!(alt.minus_count_between(2, 7), 2);
        assert!(alt.is_generic());

        assert_eq!(SignSequence::AllPlus.minus_count(10), 0);
        assert_eq!(SignSequence::AllMinus.minus_count(10), 10);
        assert!(!SignSequence::AllPlus.is_generic());

        let custom = SignSequence::custom(vec![1, -1, -1], 1).unwrap();
        assert_eq!(custom.sign(2), -1);
        assert_eq!(custom.sign(9), 1);
        assert_eq!(custom.minus_count(2), 1);
        assert_eq!(custom.minus_count(5), 2);
        assert!(SignSequence::custom(vec![0], 1).is_err());
    }

    #[test]
    fn row_accounting() {
        let mut row = KernelRow::new();
        row.insert(sig(&[0]), ex(1, 3));
        row.insert(sig(&[1]), ex(1, 3));
        row.insert(sig(&[1]), ex(1, 3));
        assert_eq!(row.len(), 2);
        assert!(row.get(&sig(&[1])).unwrap().eq_exact(&ex(2, 3)));
        assert!(row.total().unwrap().eq_exact(&ex(1, 1)));
        assert!(row.is_stochastic(0.0));

        let mut other = KernelRow::new();
        other.insert(sig(&[0]), ex(1, 2));
        other.insert(sig(&[2]), ex(1, 2));
        // |1/3−1/2| + |2/3| + |1/2| = 1/6 + 2/3 + 1/2 = 4/3; half is 2/3
        assert!((row.tv_distance(&other) - 2.0 / 3.0).abs() < 1e-15);

        let mass = row.event_mass(|s| s.part(1) == 1).unwrap();
        assert!(mass.eq_exact(&ex(2, 3)));

        let mut defective = KernelRow::new();
        defective.insert(sig(&[0]), ex(1, 2));
        assert!(!defective.is_stochastic(0.0));
        defective.insert(sig(&[3]), ex(-1, 2));
        assert!(!defective.is_stochastic(0.0));
    }

    #[test]
    fn push_forward_composes_masses() {
        let mut row = KernelRow::new();
        row.insert(sig(&[1]), ex(1, 4));
        row.insert(sig(&[0]), ex(3, 4));
        let pushed = row
            .push_forward(|lam| {
                let mut r = KernelRow::new();
                r.insert(sig(&[lam.part(1), 0]), ex(1, 1));
                Ok(r)
            })
            .unwrap();
        assert_eq!(pushed.len(), 2);
        assert!(pushed.get(&sig(&[1, 0])).unwrap().eq_exact(&ex(1, 4)));
        assert!(pushed.is_stochastic(0.0));
    }
}
