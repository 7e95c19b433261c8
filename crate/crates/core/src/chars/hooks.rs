//! Hook-label characters, Jacobi–Trudi determinants, and the Frobenius
//! (hook-determinant) expansion of general labels.

use super::sympoly::{sym_poly_table, SymPolyKind};
use super::{FrobeniusCoords, GroupType, NonnegSignature};
use crate::arith::det::determinant;
use crate::arith::Scalar;
use crate::error::{QError, Result};

/// The four character families handled by the hook and determinant
/// expansions: rational Schur functions and the three deformed families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharFamily {
    A,
    B,
    C,
    D,
}

impl CharFamily {
    pub fn group(&self) -> Option<GroupType> {
        match self {
            CharFamily::A => None,
            CharFamily::B => Some(GroupType::B),
            CharFamily::C => Some(GroupType::C),
            CharFamily::D => Some(GroupType::D),
        }
    }

    fn h_kind(&self) -> SymPolyKind {
        match self {
            CharFamily::A => SymPolyKind::H,
            CharFamily::B => SymPolyKind::HB,
            CharFamily::C | CharFamily::D => SymPolyKind::HCD,
        }
    }

    fn e_kind(&self) -> SymPolyKind {
        match self {
            CharFamily::A => SymPolyKind::E,
            CharFamily::B => SymPolyKind::EB,
            CharFamily::C | CharFamily::D => SymPolyKind::ECD,
        }
    }
}

fn h_at(table: &[Scalar], idx: i64, zero: &Scalar) -> Scalar {
    if idx < 0 || idx as usize >= table.len() {
        zero.clone()
    } else {
        table[idx as usize].clone()
    }
}

/// Character with a hook label (a | b) = (a+1, 1^b, 0^{N−b−1}) evaluated from
/// complete homogeneous and elementary tables of the family's alphabet.
/// Requires N ≥ b + 1 variables.
pub fn hook_char_eval(
    family: CharFamily,
    a: i64,
    b: i64,
    points: &[Scalar],
) -> Result<Scalar> {
    let n = points.len() as i64;
    if a < 0 || b < 0 {
        return Err(QError::BadShape(format!(
            "hook coordinates must be nonnegative, got ({a} | {b})"
        )));
    }
    if n < b + 1 {
        return Err(QError::BadShape(format!(
            "hook (a | b) with b = {b} needs at least {} variables, got {n}",
            b + 1
        )));
    }
    let hmax = (a + 1 + b) as usize;
    let h = sym_poly_table(family.h_kind(), hmax, points)?;
    let e = sym_poly_table(family.e_kind(), b as usize, points)?;
    let one = h[0].one_like();
    let zero = one.zero_like();

    let value = match family {
        CharFamily::A => {
            // Σ_{i=0}^{b} (−1)^i h_{a+1+i} e_{b−i}
            let mut acc = zero.clone();
            for i in 0..=b {
                let term = h_at(&h, a + 1 + i, &zero).mul(&e[(b - i) as usize]);
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        CharFamily::B | CharFamily::D => {
            // Σ_{i=0}^{b} (−1)^i (H_{a+1+i} − H_{a−1−i}) E_{b−i},
            // doubled for the even family unless b = N−1
            let mut acc = zero.clone();
            for i in 0..=b {
                let diff = h_at(&h, a + 1 + i, &zero).sub(&h_at(&h, a - 1 - i, &zero));
                let term = diff.mul(&e[(b - i) as usize]);
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            if family == CharFamily::D && b != n - 1 {
                acc = acc.add(&acc.clone());
            }
            acc
        }
        CharFamily::C => {
            // H_{a+1} E_b + Σ_{i=1}^{b} (−1)^i (H_{a+1+i} + H_{a+1−i}) E_{b−i}
            let mut acc = h_at(&h, a + 1, &zero).mul(&e[b as usize]);
            for i in 1..=b {
                let sum = h_at(&h, a + 1 + i, &zero).add(&h_at(&h, a + 1 - i, &zero));
                let term = sum.mul(&e[(b - i) as usize]);
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    };
    Ok(value)
}

/// Jacobi–Trudi determinant for a general label. The determinant size is the
/// stored length of λ (zero parts included as stored). For the even
/// orthogonal family the value is doubled when the label padded to the
/// variable count ends in 0, matching the mirror-sum convention of the
/// direct Weyl evaluation.
pub fn jacobi_trudi_eval(
    group: GroupType,
    lambda: &NonnegSignature,
    points: &[Scalar],
) -> Result<Scalar> {
    let n = points.len();
    if lambda.trim().len() > n {
        return Err(QError::LengthMismatch(format!(
            "label has {} positive parts but only {} variables",
            lambda.trim().len(),
            n
        )));
    }
    let d = lambda.len();
    let hmax = (lambda.part(1) + d as i64 + 1).max(0) as usize;
    let h = sym_poly_table(
        match group {
            GroupType::B => SymPolyKind::HB,
            _ => SymPolyKind::HCD,
        },
        hmax,
        points,
    )?;
    let one = h[0].one_like();
    let zero = one.zero_like();

    let matrix: Vec<Vec<Scalar>> = (1..=d)
        .map(|i| {
            (1..=d)
                .map(|j| {
                    let li = lambda.part(i);
                    match group {
                        GroupType::C => {
                            let first = h_at(&h, li + j as i64 - i as i64, &zero);
                            if j == 1 {
                                first
                            } else {
                                first.add(&h_at(&h, li - i as i64 - j as i64 + 2, &zero))
                            }
                        }
                        GroupType::B | GroupType::D => h_at(&h, li + j as i64 - i as i64, &zero)
                            .sub(&h_at(&h, li - i as i64 - j as i64, &zero)),
                    }
                })
                .collect()
        })
        .collect();
    let mut value = determinant(matrix, &one);
    if group == GroupType::D && lambda.positive_count() < n {
        value = value.add(&value.clone());
    }
    Ok(value)
}

/// Frobenius-coordinate determinant: with λ = (a_1, …, a_d | b_1, …, b_d),
/// the character equals (1 + [G = D])^{−(d−1)} · det[ χ_{(a_i | b_j)} ].
pub fn frobenius_det_eval(
    family: CharFamily,
    lambda: &NonnegSignature,
    points: &[Scalar],
) -> Result<Scalar> {
    let n = points.len();
    let trimmed = lambda.trim();
    if trimmed.len() > n {
        return Err(QError::LengthMismatch(format!(
            "label has {} positive parts but only {} variables",
            trimmed.len(),
            n
        )));
    }
    let fc = FrobeniusCoords::from_signature(lambda)?;
    let d = fc.rank();
    if let Some(&b1) = fc.b.first() {
        if b1 > n as i64 - 1 {
            return Err(QError::BadShape(format!(
                "hook leg b₁ = {b1} exceeds N − 1 = {}",
                n - 1
            )));
        }
    }
    let mut matrix = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            row.push(hook_char_eval(family, fc.a[i], fc.b[j], points)?);
        }
        matrix.push(row);
    }
    let one = points
        .first()
        .map(|p| p.one_like())
        .unwrap_or(Scalar::Exact(rug::Rational::from(1)));
    let mut value = determinant(matrix, &one);
    if family == CharFamily::D {
        // multiply by 2^{1−d}
        let two = one.add(&one);
        value = value.mul(&two.pow_i64(1 - d as i64));
    }
    Ok(value)
}
