//! Complete homogeneous and elementary symmetric polynomials, plain or over
//! the inversion-closed alphabets used by the symplectic and orthogonal
//! determinantal formulas.

use crate::arith::poly::{complete_homogeneous, elementary};
use crate::arith::Scalar;
use crate::error::{QError, Result};

/// Which symmetric polynomial family to evaluate.
///
/// * `H`, `E` — h_m and e_m of the points as given.
/// * `HB`, `EB` — of the alphabet {1} ∪ {z_i, z_i^{−1}}.
/// * `HCD`, `ECD` — of the alphabet {z_i, z_i^{−1}}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymPolyKind {
    H,
    E,
    HB,
    EB,
    HCD,
    ECD,
}

impl SymPolyKind {
    fn needs_inverses(&self) -> bool {
        !matches!(self, SymPolyKind::H | SymPolyKind::E)
    }

    fn is_elementary(&self) -> bool {
        matches!(self, SymPolyKind::E | SymPolyKind::EB | SymPolyKind::ECD)
    }

    fn includes_one(&self) -> bool {
        matches!(self, SymPolyKind::HB | SymPolyKind::EB)
    }
}

/// Expand the evaluation alphabet for the given kind.
pub(crate) fn alphabet(kind: SymPolyKind, points: &[Scalar]) -> Result<Vec<Scalar>> {
    if !kind.needs_inverses() {
        return Ok(points.to_vec());
    }
    let mut out = Vec::with_capacity(2 * points.len() + 1);
    if kind.includes_one() {
        let one = points
            .first()
            .map(|p| p.one_like())
            .unwrap_or(Scalar::Exact(rug::Rational::from(1)));
        out.push(one);
    }
    for z in points {
        if z.is_zero() {
            return Err(QError::ZeroPoint);
        }
        out.push(z.clone());
        out.push(z.recip());
    }
    Ok(out)
}

/// Evaluate one symmetric polynomial of the requested kind and degree.
/// Negative degrees give 0; elementary kinds also give 0 beyond the
/// alphabet size.
pub fn sym_poly_eval(kind: SymPolyKind, m: i64, points: &[Scalar]) -> Result<Scalar> {
    let alpha = alphabet(kind, points)?;
    let one = alpha
        .first()
        .map(|p| p.one_like())
        .unwrap_or(Scalar::Exact(rug::Rational::from(1)));
    if m < 0 {
        return Ok(one.zero_like());
    }
    let m = m as usize;
    let table = sym_poly_table(kind, m, points)?;
    Ok(table[m].clone())
}

/// All values of the requested kind for degrees 0, …, max at once.
pub(crate) fn sym_poly_table(
    kind: SymPolyKind,
    max: usize,
    points: &[Scalar],
) -> Result<Vec<Scalar>> {
    let alpha = alphabet(kind, points)?;
    let one = alpha
        .first()
        .map(|p| p.one_like())
        .unwrap_or(Scalar::Exact(rug::Rational::from(1)));
    if kind.is_elementary() {
        Ok(elementary(&alpha, max, &one))
    } else {
        Ok(complete_homogeneous(&alpha, max, &one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::Exact(Rational::from((n, d)))
    }

    #[test]
    fn plain_kinds() {
        let pts = [ex(1, 1), ex(1, 2), ex(1, 4)];
        // e_2(1, 1/2, 1/4) = 7/8
        let v = sym_poly_eval(SymPolyKind::E, 2, &pts).unwrap();
        assert!(v.eq_exact(&ex(7, 8)));
        // h_0 = e_0 = 1, negative degree = 0
        assert!(sym_poly_eval(SymPolyKind::H, 0, &pts).unwrap().eq_exact(&ex(1, 1)));
        assert!(sym_poly_eval(SymPolyKind::H, -3, &pts).unwrap().is_zero());
        // e beyond the symbol count vanishes
        assert!(sym_poly_eval(SymPolyKind::E, 4, &pts).unwrap().is_zero());
    }

    #[test]
    fn inversion_closed_alphabets() {
        let z = [ex(2, 1)];
        // HCD, m = 1, z = 2: z + 1/z = 5/2
        let v = sym_poly_eval(SymPolyKind::HCD, 1, &z).unwrap();
        assert!(v.eq_exact(&ex(5, 2)));
        // HB adds the symbol 1: 1 + z + 1/z = 7/2
        let v = sym_poly_eval(SymPolyKind::HB, 1, &z).unwrap();
        assert!(v.eq_exact(&ex(7, 2)));
        // EB of one variable has three symbols; e_3 = 1·z·(1/z) = 1, e_4 = 0
        let v = sym_poly_eval(SymPolyKind::EB, 3, &z).unwrap();
        assert!(v.eq_exact(&ex(1, 1)));
        assert!(sym_poly_eval(SymPolyKind::EB, 4, &z).unwrap().is_zero());
        // ECD of one variable: e_2 = z·(1/z) = 1
        let v = sym_poly_eval(SymPolyKind::ECD, 2, &z).unwrap();
        assert!(v.eq_exact(&ex(1, 1)));
        // inverses of zero are rejected
        assert!(matches!(
            sym_poly_eval(SymPolyKind::HCD, 1, &[ex(0, 1)]),
            Err(QError::ZeroPoint)
        ));
    }

    #[test]
    fn generating_function_identity() {
        // Σ_n H^B_n v^n · ∏ ((1−v z)(1−v/z)) · (1−v) = 1 as a power series:
        // check the first coefficients numerically by convolving tables.
        let z = [ex(1, 3), ex(3, 4)];
        let one = ex(1, 1);
        let h = sym_poly_table(SymPolyKind::HB, 6, &z).unwrap();
        // build (1−v)·∏(1−v z_i)(1−v z_i^{−1}) as a polynomial in v
        let mut denom = vec![one.clone(), ex(-1, 1)];
        for zi in &z {
            for root in [zi.clone(), zi.recip()] {
                let factor = vec![one.clone(), root.neg()];
                denom = crate::arith::poly::poly_mul(&denom, &factor);
            }
        }
        // convolution (Σ H_n v^n)·denom should be 1 + O(v^7)
        for n in 0..=6usize {
            let mut acc = one.zero_like();
            for k in 0..=n.min(denom.len() - 1) {
                acc = acc.add(&denom[k].mul(&h[n - k]));
            }
            if n == 0 {
                assert!(acc.eq_exact(&one));
            } else {
                assert!(acc.is_zero(), "coefficient {n} nonzero");
            }
        }
    }

    #[test]
    fn eb_generating_function() {
        // Σ E^B_n v^n = (1+v) ∏ (1+v z_i)(1+v z_i^{−1}): compare coefficients
        let z = [ex(2, 5)];
        let one = ex(1, 1);
        let e = sym_poly_table(SymPolyKind::EB, 4, &z).unwrap();
        let mut prod = vec![one.clone(), one.clone()];
        for root in [z[0].clone(), z[0].recip()] {
            let factor = vec![one.clone(), root];
            prod = crate::arith::poly::poly_mul(&prod, &factor);
        }
        for (n, c) in prod.iter().enumerate() {
            assert!(c.eq_exact(&e[n]), "coefficient {n} differs");
        }
    }
}
