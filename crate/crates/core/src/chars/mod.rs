//! Character theory of the classical groups: Schur polynomials and the
//! three families of symplectic/orthogonal characters, with exact and
//! float evaluation, closed principal specializations, hook and
//! determinantal expansions, and branching/skew weights.

pub mod hooks;
pub mod schur;
pub mod skewbc;
pub mod sympoly;
pub mod weyl;

pub use hooks::{frobenius_det_eval, hook_char_eval, jacobi_trudi_eval, CharFamily};
pub use schur::{
    schur_eval, schur_eval_multiset, schur_geometric, schur_principal, skew_schur_alphabet,
};
pub use skewbc::{bc_skew_char, bc_skew_supports, tau_weight};
pub use sympoly::{sym_poly_eval, SymPolyKind};
pub use weyl::{bcd_eval, bcd_principal, CharPoint};

use crate::arith::HalfInt;
use crate::error::{QError, Result};
use std::fmt;
use std::str::FromStr;

/// A signature: a weakly decreasing tuple of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    parts: Vec<i64>,
}

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(QError::BadShape(format!(
                "signature parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Signature { parts })
    }

    pub fn empty() -> Self {
        Signature { parts: Vec::new() }
    }

    /// All-zero signature of the given length.
    pub fn zeros(n: usize) -> Self {
        Signature {
            parts: vec![0; n],
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part access; parts beyond the stored length read as 0.
    pub fn part(&self, i: usize) -> i64 {
        assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// |λ| = Σ λ_i.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// n(λ) = Σ (i−1) λ_i  (1-based i).
    pub fn n_stat(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as i64 * p)
            .sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.parts.last().map_or(true, |&p| p >= 0)
    }

    /// Extend with zeros to length n. Fails if that would break monotonicity.
    pub fn pad(&self, n: usize) -> Result<Self> {
        if n < self.parts.len() {
            return Err(QError::LengthMismatch(format!(
                "cannot pad a signature of length {} down to {}",
                self.parts.len(),
                n
            )));
        }
        if n > self.parts.len() && !self.is_nonneg() {
            return Err(QError::BadShape(
                "cannot zero-pad a signature with negative parts".into(),
            ));
        }
        let mut parts = self.parts.clone();
        parts.resize(n, 0);
        Ok(Signature { parts })
    }

    /// Add the same constant to every part.
    pub fn shift(&self, c: i64) -> Self {
        Signature {
            parts: self.parts.iter().map(|&p| p + c).collect(),
        }
    }

    /// Drop trailing zeros.
    pub fn trim(&self) -> Self {
        let mut parts = self.parts.clone();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Signature { parts }
    }

    /// Number of strictly positive parts.
    pub fn positive_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    /// Conjugate partition (requires nonnegative parts).
    pub fn conjugate(&self) -> Result<Self> {
        if !self.is_nonneg() {
            return Err(QError::BadShape(
                "conjugate requires nonnegative parts".into(),
            ));
        }
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as i64)
            .collect();
        Ok(Signature { parts })
    }

    /// The reversed-negated signature (−λ_M, …, −λ_1).
    pub fn negate_reverse(&self) -> Self {
        Signature {
            parts: self.parts.iter().rev().map(|&p| -p).collect(),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Signature {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Signature::empty());
        }
        let parts: std::result::Result<Vec<i64>, _> =
            t.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match parts {
            Ok(v) => Signature::new(v),
            Err(e) => Err(QError::BadShape(format!("cannot parse signature '{s}': {e}"))),
        }
    }
}

/// A signature with all parts ≥ 0 (a partition padded with zeros).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonnegSignature(Signature);

impl NonnegSignature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        Self::from_signature(Signature::new(parts)?)
    }

    pub fn from_signature(sig: Signature) -> Result<Self> {
        if !sig.is_nonneg() {
            return Err(QError::BadShape(format!(
                "expected nonnegative parts, got {}",
                sig
            )));
        }
        Ok(NonnegSignature(sig))
    }

    pub fn zeros(n: usize) -> Self {
        NonnegSignature(Signature::zeros(n))
    }

    pub fn pad(&self, n: usize) -> Result<Self> {
        Ok(NonnegSignature(self.0.pad(n)?))
    }
}

impl std::ops::Deref for NonnegSignature {
    type Target = Signature;
    fn deref(&self) -> &Signature {
        &self.0
    }
}

impl fmt::Display for NonnegSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The three deformation families, with their half-integer offsets
/// ε = 1/2, 1, 0 respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupType {
    B,
    C,
    D,
}

impl GroupType {
    pub const ALL: [GroupType; 3] = [GroupType::B, GroupType::C, GroupType::D];

    pub fn epsilon(&self) -> HalfInt {
        match self {
            GroupType::B => HalfInt::HALF,
            GroupType::C => HalfInt::ONE,
            GroupType::D => HalfInt::ZERO,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
        }
    }
}

impl FromStr for GroupType {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "B" => Ok(GroupType::B),
            "C" => Ok(GroupType::C),
            "D" => Ok(GroupType::D),
            other => Err(QError::InvalidConfig(format!(
                "unknown group type '{other}' (expected B, C, or D)"
            ))),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Frobenius coordinates of a partition: a_i = λ_i − i, b_i = λ′_i − i for
/// i = 1, …, d with d the side of the Durfee square. Both sequences are
/// strictly decreasing and nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl FrobeniusCoords {
    pub fn from_signature(lambda: &NonnegSignature) -> Result<Self> {
        let conj = lambda.conjugate()?;
        let d = lambda
            .parts()
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p >= (i + 1) as i64)
            .count();
        let a = (1..=d).map(|i| lambda.part(i) - i as i64).collect();
        let b = (1..=d).map(|i| conj.part(i) - i as i64).collect();
        Ok(FrobeniusCoords { a, b })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Reconstruct the partition, trimmed of trailing zeros.
    pub fn to_signature(&self) -> Result<NonnegSignature> {
        let d = self.rank();
        let rows = if d == 0 {
            0
        } else {
            (self.b[0] + 1) as usize
        };
        let mut parts = vec![0i64; rows];
        for i in 0..d {
            parts[i] = self.a[i] + (i + 1) as i64;
        }
        for i in 0..d {
            // column i+1 has height b_i + (i+1); rows below the Durfee square
            // in that column contribute part value ≥ i+1
            let height = (self.b[i] + (i + 1) as i64) as usize;
            for part in parts.iter_mut().take(height).skip(d) {
                *part = (*part).max((i + 1) as i64);
            }
        }
        NonnegSignature::new(parts)
    }
}

/// The two interlacing relations used by the branching graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterlaceKind {
    /// λ ∈ 𝔾𝕋_{N+1}, ν ∈ 𝔾𝕋_N with λ_i ≥ ν_i ≥ λ_{i+1}.
    TypeA,
    /// λ, ν ∈ 𝔾𝕋⁺_N with λ_1 ≥ ν_1 ≥ λ_2 ≥ ν_2 ≥ … ≥ λ_N ≥ ν_N ≥ 0.
    BcSameLength,
}

/// Test whether `upper` interlaces `lower` in the given sense.
pub fn interlaces(kind: InterlaceKind, upper: &Signature, lower: &Signature) -> Result<bool> {
    match kind {
        InterlaceKind::TypeA => {
            if upper.len() != lower.len() + 1 {
                return Err(QError::LengthMismatch(format!(
                    "type-A interlacing needs lengths (N+1, N), got ({}, {})",
                    upper.len(),
                    lower.len()
                )));
            }
            Ok((1..=lower.len())
                .all(|i| upper.part(i) >= lower.part(i) && lower.part(i) >= upper.part(i + 1)))
        }
        InterlaceKind::BcSameLength => {
            if upper.len() != lower.len() {
                return Err(QError::LengthMismatch(format!(
                    "equal-length interlacing needs equal lengths, got ({}, {})",
                    upper.len(),
                    lower.len()
                )));
            }
            if !upper.is_nonneg() || !lower.is_nonneg() {
                return Err(QError::BadShape(
                    "equal-length interlacing requires nonnegative signatures".into(),
                ));
            }
            let n = upper.len();
            Ok((1..=n).all(|i| {
                upper.part(i) >= lower.part(i)
                    && (i == n || lower.part(i) >= upper.part(i + 1))
            }))
        }
    }
}

/// All signatures of length N−1 interlaced below λ ∈ 𝔾𝕋_N (type A),
/// in deterministic (lexicographically decreasing) order.
pub fn type_a_lower_signatures(lambda: &Signature) -> Vec<Signature> {
    let n = lambda.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Signature::empty()];
    }
    let ranges: Vec<(i64, i64)> = (1..n)
        .map(|i| (lambda.part(i + 1), lambda.part(i)))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<i64> = ranges.iter().map(|&(_, hi)| hi).collect();
    loop {
        out.push(Signature {
            parts: current.clone(),
        });
        // decrement like an odometer, keeping within each range
        let mut idx = ranges.len();
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if current[idx] > ranges[idx].0 {
                current[idx] -= 1;
                for j in (idx + 1)..ranges.len() {
                    current[j] = ranges[j].1;
                }
                break;
            }
            current[idx] = ranges[idx].1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn signature_validation_and_stats() {
        assert!(Signature::new(vec![3, 1, 2]).is_err());
        let s = sig(&[3, 1, -2]);
        assert_eq!(s.size(), 2);
        assert_eq!(s.n_stat(), 1 - 4);
        assert!(!s.is_nonneg());
        assert_eq!(s.part(2), 1);
        assert_eq!(s.part(5), 0);
        assert_eq!(s.shift(2).parts(), &[5, 3, 0]);
        assert_eq!(s.negate_reverse().parts(), &[2, -1, -3]);
        assert!(s.pad(5).is_err());
        assert_eq!(sig(&[2, 1]).pad(4).unwrap().parts(), &[2, 1, 0, 0]);
    }

    #[test]
    fn signature_parse_and_display() {
        let s: Signature = "4,2,0,-1".parse().unwrap();
        assert_eq!(s.parts(), &[4, 2, 0, -1]);
        assert_eq!(format!("{s}"), "4,2,0,-1");
        let e: Signature = "".parse().unwrap();
        assert!(e.is_empty());
        assert!("1,2".parse::<Signature>().is_err());
    }

    #[test]
    fn conjugate_and_frobenius() {
        let lam = NonnegSignature::new(vec![4, 3, 1, 1]).unwrap();
        let conj = lam.conjugate().unwrap();
        assert_eq!(conj.parts(), &[4, 2, 2, 1]);
        let fc = FrobeniusCoords::from_signature(&lam).unwrap();
        assert_eq!(fc.a, vec![3, 1]);
        assert_eq!(fc.b, vec![3, 0]);
        let back = fc.to_signature().unwrap();
        assert_eq!(back.parts(), &[4, 3, 1, 1]);
        // hook (a|b) = (a+1, 1^b)
        let hook = FrobeniusCoords {
            a: vec![2],
            b: vec![3],
        };
        assert_eq!(hook.to_signature().unwrap().parts(), &[3, 1, 1, 1]);
        // empty partition
        let fc0 = FrobeniusCoords::from_signature(&NonnegSignature::zeros(3)).unwrap();
        assert_eq!(fc0.rank(), 0);
    }

    #[test]
    fn interlacing_type_a() {
        let lam = sig(&[3, 1, 0]);
        assert!(interlaces(InterlaceKind::TypeA, &lam, &sig(&[2, 1])).unwrap());
        assert!(interlaces(InterlaceKind::TypeA, &lam, &sig(&[3, 0])).unwrap());
        assert!(!interlaces(InterlaceKind::TypeA, &lam, &sig(&[4, 0])).unwrap());
        assert!(!interlaces(InterlaceKind::TypeA, &lam, &sig(&[0, 0])).unwrap());
        assert!(!interlaces(InterlaceKind::TypeA, &lam, &sig(&[2, 2])).unwrap());
        assert!(interlaces(InterlaceKind::TypeA, &lam, &sig(&[2])).is_err());
        // negative parts are fine for type A
        let neg = sig(&[1, -1]);
        assert!(interlaces(InterlaceKind::TypeA, &neg, &sig(&[0])).unwrap());
    }

    #[test]
    fn interlacing_bc() {
        let lam = sig(&[3, 1]);
        assert!(interlaces(InterlaceKind::BcSameLength, &lam, &sig(&[2, 1])).unwrap());
        assert!(interlaces(InterlaceKind::BcSameLength, &lam, &sig(&[1, 0])).unwrap());
        assert!(!interlaces(InterlaceKind::BcSameLength, &lam, &sig(&[2, 2])).unwrap());
        assert!(interlaces(InterlaceKind::BcSameLength, &lam, &sig(&[2])).is_err());
        assert!(interlaces(InterlaceKind::BcSameLength, &sig(&[1, -1]), &sig(&[0, 0])).is_err());
    }

    #[test]
    fn lower_signature_enumeration() {
        let lam = sig(&[2, 1, 0]);
        let lows = type_a_lower_signatures(&lam);
        // ranges: [1,2] × [0,1] → 4 signatures
        assert_eq!(lows.len(), 4);
        assert_eq!(lows[0].parts(), &[2, 1]);
        assert_eq!(lows[3].parts(), &[1, 0]);
        for m in &lows {
            assert!(interlaces(InterlaceKind::TypeA, &lam, m).unwrap());
        }
        // λ of length 1 has exactly the empty lower signature
        assert_eq!(type_a_lower_signatures(&sig(&[5])).len(), 1);
    }

    #[test]
    fn group_type_metadata() {
        assert_eq!(GroupType::B.epsilon(), HalfInt::HALF);
        assert_eq!(GroupType::C.epsilon(), HalfInt::ONE);
        assert_eq!(GroupType::D.epsilon(), HalfInt::ZERO);
        assert_eq!("c".parse::<GroupType>().unwrap(), GroupType::C);
        assert!("x".parse::<GroupType>().is_err());
    }
}
