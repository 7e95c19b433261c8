//! Determinants over [`Scalar`] matrices: exact Gaussian elimination for
//! rational entries, partial-pivot elimination for complex floats.

use super::{CFloat, Scalar};
use rug::Rational;

/// Determinant of a square matrix. The `one` argument fixes the result's
/// mode for the empty matrix (det of a 0×0 matrix is 1).
///
/// If any entry is a float the whole matrix is promoted to complex floats
/// at the largest precision present; otherwise the computation is exact.
pub fn determinant(m: Vec<Vec<Scalar>>, one: &Scalar) -> Scalar {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    if n == 0 {
        return one.one_like();
    }
    let mut max_prec: Option<u32> = match one {
        Scalar::Float(f) => Some(f.prec()),
        Scalar::Exact(_) => None,
    };
    let mut any_float = false;
    for row in &m {
        for e in row {
            if let Scalar::Float(f) = e {
                any_float = true;
                max_prec = Some(max_prec.map_or(f.prec(), |p| p.max(f.prec())));
            }
        }
    }
    if any_float || matches!(one, Scalar::Float(_)) {
        let prec = max_prec.unwrap();
        let fm: Vec<Vec<CFloat>> = m
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.to_cfloat(prec)).collect())
            .collect();
        Scalar::Float(determinant_cfloat(fm))
    } else {
        let rm: Vec<Vec<Rational>> = m
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Scalar::Exact(r) => r,
                        Scalar::Float(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        Scalar::Exact(determinant_exact(rm))
    }
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant_exact(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::from(1);
    }
    let mut det = Rational::from(1);
    for k in 0..n {
        // find a nonzero pivot in column k
        let mut pivot = None;
        for (r, row) in m.iter().enumerate().skip(k) {
            if row[k] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            return Rational::new();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot_val = m[k][k].clone();
        det *= &pivot_val;
        for i in (k + 1)..n {
            if m[i][k] == 0 {
                continue;
            }
            let factor = Rational::from(&m[i][k] / &pivot_val);
            for j in k..n {
                let sub = Rational::from(&factor * &m[k][j]);
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Determinant of a complex-float matrix by partial-pivot elimination.
pub fn determinant_cfloat(mut m: Vec<Vec<CFloat>>) -> CFloat {
    let n = m.len();
    if n == 0 {
        return CFloat::one(53);
    }
    let prec = m[0][0].prec();
    let mut det = CFloat::one(prec);
    let mut sign_flip = false;
    for k in 0..n {
        // partial pivoting: largest modulus in column k
        let mut best = k;
        let mut best_mag = m[k][k].abs_sq();
        for r in (k + 1)..n {
            let mag = m[r][k].abs_sq();
            if mag > best_mag {
                best = r;
                best_mag = mag;
            }
        }
        if best_mag.is_zero() {
            return CFloat::new(prec);
        }
        if best != k {
            m.swap(best, k);
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].div(&pivot);
            for j in k..n {
                let sub = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
        }
    }
    if sign_flip {
        det = det.neg();
    }
    det
}

/// Vandermonde product ∏_{i<j} (x_i − x_j).
pub fn vandermonde(points: &[Scalar], one: &Scalar) -> Scalar {
    let mut acc = one.one_like();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            acc = acc.mul(&points[i].sub(&points[j]));
        }
    }
    acc
}
