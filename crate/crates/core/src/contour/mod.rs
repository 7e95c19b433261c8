//! Contour-integral evaluation of normalized character ratios and their limits.
//!
//! Two kinds of evaluators live here:
//!
//! * finite-rank identities: exact residue summation (type A) and
//!   high-precision quadrature of double-contour representations (all
//!   families), each equal to a directly computable normalized character
//!   ratio;
//! * limit functions: the one-parameter families obtained from the finite
//!   ratios when the rank grows, evaluated from their own integral
//!   representations with truncated infinite products.
//!
//! The shared quadrature core substitutes sigma = q^v in the inner integral,
//! turning the full-period vertical segment into a closed circle which is
//! integrated exactly by residues; only the horizontal two-line contour is
//! discretized (Gauss-Legendre panels of unit width).

pub mod bcd;
pub mod engine;
pub mod quadrature;
pub mod typea;

use crate::error::{QError, Result};

/// Eventually-constant doubly infinite nondecreasing integer sequence.
///
/// Entries are indexed by all integers: `t(i) = left_tail` for `i < offset`,
/// `t(i) = middle[i - offset]` for `offset <= i < offset + middle.len()`,
/// and `t(i) = right_tail` afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPointA {
    left_tail: i64,
    middle: Vec<i64>,
    offset: i64,
    right_tail: i64,
}

impl BoundaryPointA {
    pub fn new(left_tail: i64, middle: Vec<i64>, offset: i64, right_tail: i64) -> Result<Self> {
        for w in middle.windows(2) {
            if w[0] > w[1] {
                return Err(QError::InvalidConfig(
                    "boundary sequence must be nondecreasing".into(),
                ));
            }
        }
        if let Some(&first) = middle.first() {
            if left_tail > first {
                return Err(QError::InvalidConfig(
                    "left tail exceeds first middle entry".into(),
                ));
            }
        }
        if let Some(&last) = middle.last() {
            if last > right_tail {
                return Err(QError::InvalidConfig(
                    "last middle entry exceeds right tail".into(),
                ));
            }
        }
        if middle.is_empty() && left_tail > right_tail {
            return Err(QError::InvalidConfig(
                "left tail exceeds right tail".into(),
            ));
        }
        Ok(Self {
            left_tail,
            middle,
            offset,
            right_tail,
        })
    }

    /// Constant sequence t = (..., c, c, c, ...).
    pub fn constant(c: i64) -> Self {
        Self {
            left_tail: c,
            middle: Vec::new(),
            offset: 0,
            right_tail: c,
        }
    }

    /// Entry t_i.
    pub fn value(&self, i: i64) -> i64 {
        if i < self.offset {
            self.left_tail
        } else {
            let rel = (i - self.offset) as usize;
            if rel < self.middle.len() {
                self.middle[rel]
            } else {
                self.right_tail
            }
        }
    }

    pub fn left_tail(&self) -> i64 {
        self.left_tail
    }

    pub fn right_tail(&self) -> i64 {
        self.right_tail
    }

    /// Index shift: `shifted(m)` is the sequence t' with t'_n = t_{n+1-m}.
    pub fn shifted(&self, m: i64) -> Self {
        Self {
            left_tail: self.left_tail,
            middle: self.middle.clone(),
            offset: self.offset + m - 1,
            right_tail: self.right_tail,
        }
    }
}

/// Eventually-constant nondecreasing sequence of nonnegative integers,
/// indexed from 1; `y(i) = head[i-1]` for `i <= head.len()`, then constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPointBC {
    head: Vec<i64>,
}

impl BoundaryPointBC {
    pub fn new(head: Vec<i64>) -> Result<Self> {
        if let Some(&first) = head.first() {
            if first < 0 {
                return Err(QError::InvalidConfig(
                    "boundary sequence entries must be nonnegative".into(),
                ));
            }
        }
        for w in head.windows(2) {
            if w[0] > w[1] {
                return Err(QError::InvalidConfig(
                    "boundary sequence must be nondecreasing".into(),
                ));
            }
        }
        Ok(Self { head })
    }

    pub fn zero() -> Self {
        Self { head: Vec::new() }
    }

    /// Entry y_i for i >= 1.
    pub fn value(&self, i: i64) -> i64 {
        debug_assert!(i >= 1);
        let idx = (i - 1) as usize;
        if idx < self.head.len() {
            self.head[idx]
        } else {
            self.head.last().copied().unwrap_or(0)
        }
    }

    pub fn tail_value(&self) -> i64 {
        self.head.last().copied().unwrap_or(0)
    }
}

/// Tuning parameters for the contour quadrature.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Node count reserved for a discretized vertical segment. The inner
    /// integral is evaluated exactly by residues, so this field is retained
    /// for interface stability but not consumed by the evaluator.
    pub v_nodes: usize,
    /// Gauss-Legendre nodes per unit-width panel on the horizontal lines.
    pub u_nodes_per_unit: usize,
    /// Initial half-width U of the truncated horizontal contour.
    pub u_halfwidth: f64,
    /// Truncation index for infinite products in limit functions.
    pub product_truncation: usize,
    /// Target tolerance; doubling checks and endpoint checks use it.
    pub tol: f64,
    /// Integer abscissa R of the vertical segment (free parameter of the
    /// representation; the value is provably R-independent).
    pub r_shift: i64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            v_nodes: 64,
            u_nodes_per_unit: 24,
            u_halfwidth: 24.0,
            product_truncation: 48,
            tol: 1e-10,
            r_shift: 0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.v_nodes == 0
            || self.u_nodes_per_unit == 0
            || self.u_halfwidth <= 0.0
            || self.product_truncation == 0
            || !(self.tol > 0.0)
        {
            return Err(QError::InvalidConfig(
                "quadrature parameters must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Evaluation route for the finite-rank B/C/D integral representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcdRoute {
    /// Two-line strip representation (default; valid on q^N < |x| < q^-N).
    Strip,
    /// Closed (z, w) double-circle representation.
    Circle,
}

pub use bcd::{
    bcd_direct_ratio, bcd_finiteN_integral, bcd_multivar_det, bcd_multivar_direct_ratio, phiBCD,
    phiBCD_multivar,
};
pub use typea::{
    phiA, phiA_multivar, typeA_finiteN_residue, typeA_finiteN_strip, typeA_multivar_det,
    typea_direct_ratio, typea_multivar_direct_ratio,
};
