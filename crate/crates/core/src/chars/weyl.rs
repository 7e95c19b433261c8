//! Weyl determinant evaluation of the three character families and their
//! closed principal specializations at geometric q-points.

use super::{GroupType, NonnegSignature};
use crate::arith::det::determinant;
use crate::arith::{EvalConfig, HalfInt, Mode, Scalar};
use crate::error::{QError, Result};

/// An evaluation point z together with an optional square root, needed for
/// the half-integer exponents of the odd orthogonal family.
#[derive(Clone, Debug)]
pub struct CharPoint {
    pub z: Scalar,
    pub sqrt_z: Option<Scalar>,
}

impl CharPoint {
    pub fn new(z: Scalar) -> Result<Self> {
        if z.is_zero() {
            return Err(QError::ZeroPoint);
        }
        Ok(CharPoint { z, sqrt_z: None })
    }

    pub fn with_sqrt(z: Scalar, sqrt_z: Scalar) -> Result<Self> {
        if z.is_zero() {
            return Err(QError::ZeroPoint);
        }
        if !sqrt_z.mul(&sqrt_z).eq_exact(&z) {
            return Err(QError::InvalidConfig(format!(
                "sqrt_z² does not reproduce z (z = {z}, sqrt_z = {sqrt_z})"
            )));
        }
        Ok(CharPoint {
            z,
            sqrt_z: Some(sqrt_z),
        })
    }

    /// The point q^e, with a square root whenever it is representable in the
    /// current mode (exact: e/2 must be a half-integer power available from
    /// the configuration; float: always, by a principal square root).
    pub fn q_point(cfg: &EvalConfig, e: HalfInt) -> Result<Self> {
        let z = cfg.q_power(e)?;
        let sqrt_z = if e.doubled() % 2 == 0 {
            cfg.q_power(HalfInt::new_doubled(e.doubled() / 2)).ok()
        } else {
            match (&z, cfg.mode) {
                (Scalar::Float(f), Mode::Float) => Some(Scalar::Float(f.sqrt())),
                _ => None,
            }
        };
        Ok(CharPoint { z, sqrt_z })
    }

    /// Reciprocal point 1/z (with 1/sqrt_z when available).
    pub fn recip(&self) -> Self {
        CharPoint {
            z: self.z.recip(),
            sqrt_z: self.sqrt_z.as_ref().map(|s| s.recip()),
        }
    }

    fn resolved_sqrt(&self) -> Result<Scalar> {
        if let Some(s) = &self.sqrt_z {
            return Ok(s.clone());
        }
        match &self.z {
            Scalar::Float(f) => Ok(Scalar::Float(f.sqrt())),
            Scalar::Exact(_) => Err(QError::HalfPowerUnavailable),
        }
    }
}

/// Character of the rank-N group of the given family, evaluated through the
/// ratio of the Weyl determinant to ∏_{i<j}(z_i + z_i^{−1} − z_j − z_j^{−1}).
///
/// Conventions: the label λ is a nonnegative signature padded to N parts;
/// for the even orthogonal family the value at labels with λ_N = 0 is the
/// sum over the two mirror-image irreducibles (so the empty label gives 2).
pub fn bcd_eval(group: GroupType, lambda: &NonnegSignature, points: &[CharPoint]) -> Result<Scalar> {
    let n = points.len();
    if n == 0 {
        return Err(QError::BadShape("need at least one evaluation point".into()));
    }
    if lambda.len() > n {
        return Err(QError::LengthMismatch(format!(
            "label has {} parts but only {} points",
            lambda.len(),
            n
        )));
    }
    let lam = lambda.pad(n)?;
    let one = points[0].z.one_like();
    let minus_one = one.neg();

    for p in points {
        if p.z.is_zero() {
            return Err(QError::ZeroPoint);
        }
        match group {
            GroupType::B => {
                if p.z.eq_exact(&one) {
                    return Err(QError::CoincidentOrbit(
                        "z = 1 collapses the half-power prefactor".into(),
                    ));
                }
            }
            GroupType::C => {
                if p.z.eq_exact(&one) || p.z.eq_exact(&minus_one) {
                    return Err(QError::CoincidentOrbit(
                        "z = ±1 collapses the prefactor z − z^{−1}".into(),
                    ));
                }
            }
            GroupType::D => {}
        }
    }
    let w: Vec<Scalar> = points.iter().map(|p| p.z.add(&p.z.recip())).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if w[i].eq_exact(&w[j]) {
                return Err(QError::CoincidentOrbit(format!(
                    "points {i} and {j} lie on the same inversion orbit"
                )));
            }
        }
    }

    let sqrts: Option<Vec<Scalar>> = if group == GroupType::B {
        let mut v = Vec::with_capacity(n);
        for p in points {
            v.push(p.resolved_sqrt()?);
        }
        Some(v)
    } else {
        None
    };

    // rows: labels i with exponent l_i; columns: points j
    let mut matrix = Vec::with_capacity(n);
    for i in 1..=n {
        let k = lam.part(i) + (n - i) as i64; // integer part of l_i
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let z = &points[j].z;
            let entry = match group {
                GroupType::B => {
                    // l = k + 1/2: z^l = z^k·√z
                    let s = &sqrts.as_ref().unwrap()[j];
                    let pos = z.pow_i64(k).mul(s);
                    let neg = z.pow_i64(-k).div(s);
                    pos.sub(&neg)
                }
                GroupType::C => {
                    let l = k + 1;
                    z.pow_i64(l).sub(&z.pow_i64(-l))
                }
                GroupType::D => z.pow_i64(k).add(&z.pow_i64(-k)),
            };
            row.push(entry);
        }
        matrix.push(row);
    }
    let num = determinant(matrix, &one);

    let mut den = one.clone();
    match group {
        GroupType::B => {
            for s in sqrts.as_ref().unwrap() {
                den = den.mul(&s.sub(&s.recip()));
            }
        }
        GroupType::C => {
            for p in points {
                den = den.mul(&p.z.sub(&p.z.recip()));
            }
        }
        GroupType::D => {}
    }
    for i in 0..n {
        for j in (i + 1)..n {
            den = den.mul(&w[i].sub(&w[j]));
        }
    }
    Ok(num.div(&den))
}

/// Closed form for the principal specialization at the geometric points
/// q^{ε}, q^{1+ε}, …, q^{N−1+ε} (in decreasing exponent order the points are
/// q^{N−1+ε}, …, q^{ε}; the value is symmetric so the order is immaterial).
pub fn bcd_principal(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    cfg: &EvalConfig,
) -> Result<Scalar> {
    if lambda.len() > n {
        return Err(QError::LengthMismatch(format!(
            "label has {} parts but rank is {}",
            lambda.len(),
            n
        )));
    }
    let lam = lambda.pad(n)?;
    let eps = group.epsilon();
    let one = cfg.one();
    let l = |i: usize| HalfInt::from_int(lam.part(i) + (n - i) as i64) + eps;
    let m = |i: usize| HalfInt::from_int((n - i) as i64) + eps;

    let mut value = match group {
        GroupType::D => cfg.scalar_from_int(2),
        _ => one.clone(),
    };
    if group != GroupType::D {
        for i in 1..=n {
            let (num, den, shift) = match group {
                GroupType::B => (
                    one.sub(&cfg.q_power(l(i))?),
                    one.sub(&cfg.q_power(m(i))?),
                    HalfInt::new_doubled(-lam.part(i)),
                ),
                GroupType::C => (
                    one.sub(&cfg.q_power(l(i) + l(i))?),
                    one.sub(&cfg.q_power(m(i) + m(i))?),
                    HalfInt::from_int(-lam.part(i)),
                ),
                GroupType::D => unreachable!(),
            };
            value = value.mul(&cfg.q_power(shift)?).mul(&num).div(&den);
        }
    }

    let orbit_sum = |e: HalfInt| -> Result<Scalar> {
        Ok(cfg.q_power(e)?.add(&cfg.q_power(-e)?))
    };
    for i in 1..=n {
        for j in (i + 1)..=n {
            let num = orbit_sum(l(i))?.sub(&orbit_sum(l(j))?);
            let den = orbit_sum(m(i))?.sub(&orbit_sum(m(j))?);
            value = value.mul(&num).div(&den);
        }
    }
    Ok(value)
}

/// The principal evaluation points q^{N−1+ε}, …, q^{1+ε}, q^{ε}
/// (decreasing exponents) as [`CharPoint`]s.
pub fn principal_points(group: GroupType, n: usize, cfg: &EvalConfig) -> Result<Vec<CharPoint>> {
    let eps = group.epsilon();
    (0..n)
        .rev()
        .map(|j| CharPoint::q_point(cfg, HalfInt::from_int(j as i64) + eps))
        .collect()
}
