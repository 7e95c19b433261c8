//! Rational Schur functions: alternant evaluation at distinct points,
//! multiset (repeated-point) evaluation through complete homogeneous
//! determinants, closed geometric specializations, and skew evaluations
//! over an explicit alphabet.

use super::Signature;
use crate::arith::det::{determinant, vandermonde};
use crate::arith::poly::complete_homogeneous;
use crate::arith::{EvalConfig, Scalar};
use crate::chars::NonnegSignature;
use crate::error::{QError, Result};

fn check_points(points: &[Scalar]) -> Result<()> {
    for p in points {
        if p.is_zero() {
            return Err(QError::ZeroPoint);
        }
    }
    Ok(())
}

/// Pad λ to the point count, shifting negatives is the caller's concern.
fn padded(lambda: &Signature, n: usize) -> Result<Signature> {
    if lambda.len() > n {
        return Err(QError::LengthMismatch(format!(
            "signature has {} parts but only {} points were given",
            lambda.len(),
            n
        )));
    }
    lambda.pad(n)
}

/// Rational Schur function s_λ(x_1, …, x_N) at pairwise distinct nonzero
/// points, through the bialternant determinant
/// det[x_i^{λ_j+N−j}] / ∏_{i<j}(x_i − x_j).
///
/// Signatures may have negative parts; those are handled through
/// s_λ(x) = (∏ x_i)^{λ_N} · s_{λ − λ_N}(x).
pub fn schur_eval(lambda: &Signature, points: &[Scalar]) -> Result<Scalar> {
    let n = points.len();
    if n == 0 {
        return Ok(Scalar::Exact(rug::Rational::from(1)));
    }
    check_points(points)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i].eq_exact(&points[j]) {
                return Err(QError::CoincidentPoints(format!(
                    "points {i} and {j} coincide; use the multiset evaluation"
                )));
            }
        }
    }
    let lam = padded(lambda, n)?;
    let c = lam.part(n);
    let shifted = lam.shift(-c);
    let one = points[0].one_like();
    let matrix: Vec<Vec<Scalar>> = points
        .iter()
        .map(|x| {
            (1..=n)
                .map(|j| x.pow_i64(shifted.part(j) + (n - j) as i64))
                .collect()
        })
        .collect();
    let num = determinant(matrix, &one);
    let den = vandermonde(points, &one);
    let mut value = num.div(&den);
    if c != 0 {
        let mut prod = one;
        for x in points {
            prod = prod.mul(x);
        }
        value = value.mul(&prod.pow_i64(c));
    }
    Ok(value)
}

/// Rational Schur function at an arbitrary multiset of nonzero points
/// (repetitions allowed), via the Jacobi–Trudi determinant
/// det[h_{λ_i − i + j}(x)] over complete homogeneous polynomials of the
/// point multiset.
pub fn schur_eval_multiset(lambda: &Signature, points: &[Scalar]) -> Result<Scalar> {
    let n = points.len();
    if n == 0 {
        return Ok(Scalar::Exact(rug::Rational::from(1)));
    }
    let lam = padded(lambda, n)?;
    let c = lam.part(n);
    let shifted = lam.shift(-c);
    if c != 0 {
        check_points(points)?;
    }
    let one = points[0].one_like();
    let zero = points[0].zero_like();
    let hmax = (shifted.part(1) + n as i64).max(0) as usize;
    let h = complete_homogeneous(points, hmax, &one);
    let matrix: Vec<Vec<Scalar>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let idx = shifted.part(i) - i as i64 + j as i64;
                    if idx < 0 {
                        zero.clone()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut value = determinant(matrix, &one);
    if c != 0 {
        let mut prod = one;
        for x in points {
            prod = prod.mul(x);
        }
        value = value.mul(&prod.pow_i64(c));
    }
    Ok(value)
}

/// Closed form for the principal specialization
/// s_λ(1, q, …, q^{N−1}) = q^{n(λ)} ∏_{i<j} (1 − q^{λ_i−λ_j+j−i})/(1 − q^{j−i}).
pub fn schur_principal(lambda: &Signature, n: usize, cfg: &EvalConfig) -> Result<Scalar> {
    let lam = padded(lambda, n)?;
    let mut value = cfg.q_int_power(lam.n_stat());
    let one = cfg.one();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let e = lam.part(i) - lam.part(j) + (j - i) as i64;
            let num = one.sub(&cfg.q_int_power(e));
            let den = one.sub(&cfg.q_int_power((j - i) as i64));
            value = value.mul(&num).div(&den);
        }
    }
    Ok(value)
}

/// s_λ(y, yq, …, yq^{N−1}) = y^{|λ|} · s_λ(1, q, …, q^{N−1}).
///
/// `y` must be nonzero when |λ| < 0.
pub fn schur_geometric(lambda: &Signature, n: usize, y: &Scalar, cfg: &EvalConfig) -> Result<Scalar> {
    let lam = padded(lambda, n)?;
    let size = lam.size();
    if y.is_zero() && size < 0 {
        return Err(QError::ZeroPoint);
    }
    Ok(y.pow_i64(size).mul(&schur_principal(&lam, n, cfg)?))
}

/// Skew Schur function s_{λ/μ} evaluated on an explicit alphabet of values,
/// via the Jacobi–Trudi determinant det[h_{λ_i − i − μ_j + j}(alphabet)].
/// The result is zero whenever μ ⊄ λ. The alphabet may contain zeros and
/// repetitions; its size is unrelated to the signature lengths.
pub fn skew_schur_alphabet(
    lambda: &NonnegSignature,
    mu: &NonnegSignature,
    alphabet: &[Scalar],
    one: &Scalar,
) -> Result<Scalar> {
    let n = lambda.len();
    if mu.trim().len() > n {
        // μ has more (positive) parts than λ: the skew function vanishes
        return Ok(one.zero_like());
    }
    let mu_p = mu.trim().pad(n)?;
    if n == 0 {
        return Ok(one.one_like());
    }
    let zero = one.zero_like();
    let hmax = (lambda.part(1) + n as i64).max(0) as usize;
    let h = complete_homogeneous(alphabet, hmax, one);
    let matrix: Vec<Vec<Scalar>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let idx = lambda.part(i) - i as i64 - mu_p.part(j) + j as i64;
                    if idx < 0 || idx as usize >= h.len() {
                        zero.clone()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(matrix, &one.one_like()))
}
