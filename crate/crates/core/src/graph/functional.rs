//! Torus-averaging functionals that read off the coordinates of a boundary
//! measure from its generating function.
//!
//! For a class function f on the rank-k torus, the functional pairs f
//! against the conjugated character of one label using the orthogonality
//! weight of the family:
//!
//! * type A: F_μ(f) = (1/k!) · avg over the grid of f·conj(s_μ)·|Δ|²,
//!   where Δ is the Vandermonde (Schur functions are orthonormal);
//! * B/C/D: the same average with the family weight
//!   ∏_{i<j} |z_i−z_j|²·|1−z_i z_j|² times ∏_i |1−z_i|² (odd orthogonal),
//!   ∏_i |1−z_i²|² (symplectic), or 1 (even orthogonal), normalized by the
//!   grid self-pairing of χ_μ so that F_μ(χ_μ) = 1 exactly.
//!
//! The average runs over the midpoint trapezoid grid on the torus, which
//! integrates Laurent monomials of per-variable degree below the grid size
//! exactly; the grid requirement for the μ-side is checked, the degree of f
//! is the caller's responsibility. Applied to the limit generating functions
//! of the branching graphs, these functionals recover boundary-measure
//! masses. Implemented for k ≤ 2 and float mode.

use crate::arith::{CFloat, EvalConfig, Mode, Scalar};
use crate::chars::{
    bcd_eval, jacobi_trudi_eval, schur_eval_multiset, CharFamily, CharPoint, NonnegSignature,
    Signature,
};
use crate::contour::quadrature::circle_nodes;
use crate::error::{QError, Result};

/// χ_μ at a tuple of torus points, for any family. Coincident {z, 1/z}
/// orbits (conjugate torus points) fall back to the determinantal form in
/// complete homogeneous polynomials, which has no distinctness requirement.
fn char_at(
    family: CharFamily,
    mu: &Signature,
    mu_nonneg: Option<&NonnegSignature>,
    points: &[Scalar],
) -> Result<Scalar> {
    match family {
        CharFamily::A => schur_eval_multiset(mu, points),
        _ => {
            let group = family.group().expect("non-A family has a group");
            let label = mu_nonneg.expect("non-A label was validated nonnegative");
            let cps: Result<Vec<CharPoint>> =
                points.iter().map(|z| CharPoint::new(z.clone())).collect();
            match bcd_eval(group, label, &cps?) {
                Ok(v) => Ok(v),
                Err(QError::CoincidentOrbit(_)) | Err(QError::CoincidentPoints(_)) => {
                    jacobi_trudi_eval(group, label, points)
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// The orthogonality weight of the family at a tuple of torus points
/// (nonnegative up to rounding).
fn weight_at(family: CharFamily, z: &[CFloat], prec: u32) -> CFloat {
    let one = CFloat::one(prec);
    let mut w = one.clone();
    for i in 0..z.len() {
        for j in (i + 1)..z.len() {
            let diff = z[i].sub(&z[j]);
            w = w.mul_float(&diff.abs_sq());
            if family != CharFamily::A {
                let cross = one.sub(&z[i].mul(&z[j]));
                w = w.mul_float(&cross.abs_sq());
            }
        }
    }
    match family {
        CharFamily::A | CharFamily::D => w,
        CharFamily::B => {
            for zi in z {
                w = w.mul_float(&one.sub(zi).abs_sq());
            }
            w
        }
        CharFamily::C => {
            for zi in z {
                w = w.mul_float(&one.sub(&zi.mul(zi)).abs_sq());
            }
            w
        }
    }
}

/// Pair a class function f on the rank-k torus (k = number of parts of μ,
/// at most 2) against the label μ, by the weighted midpoint-grid average
/// described in the module docs. `grid` must be even and large enough to
/// resolve the μ-side of the integrand. Float mode only.
pub fn f_mu_functional(
    family: CharFamily,
    mu: &Signature,
    f: &dyn Fn(&[CFloat]) -> CFloat,
    cfg: &EvalConfig,
    grid: usize,
) -> Result<Scalar> {
    let k = mu.len();
    if k == 0 || k > 2 {
        return Err(QError::InvalidConfig(format!(
            "torus-averaging functionals are implemented for 1 or 2 parts, got {k}"
        )));
    }
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("torus-grid averaging"));
    }
    if grid % 2 != 0 {
        return Err(QError::InvalidConfig(
            "the torus grid size must be even (keeps nodes off the real axis)".into(),
        ));
    }
    let mu_nonneg = match family {
        CharFamily::A => None,
        _ => Some(NonnegSignature::from_signature(mu.clone())?),
    };
    let needed = match family {
        CharFamily::A => {
            let m = mu.parts().iter().map(|p| p.unsigned_abs()).max().unwrap() as usize;
            2 * (m + 2 * (k - 1))
        }
        _ => 2 * (mu.part(1).max(0) as usize + 2 * (k - 1) + 2),
    };
    if grid <= needed {
        return Err(QError::GridTooCoarse(format!(
            "{grid} nodes per circle cannot resolve label {mu}; need more than {needed}"
        )));
    }

    let prec = cfg.float_precision_bits;
    let nodes = circle_nodes(grid, prec);
    let mut num = CFloat::new(prec);
    let mut den = CFloat::new(prec);
    let mut tuple_cf: Vec<CFloat> = Vec::with_capacity(k);
    let mut tuple_sc: Vec<Scalar> = Vec::with_capacity(k);
    let mut visit = |idx: &[usize], num: &mut CFloat, den: &mut CFloat| -> Result<()> {
        tuple_cf.clear();
        tuple_sc.clear();
        for &i in idx {
            tuple_cf.push(nodes[i].clone());
            tuple_sc.push(Scalar::Float(nodes[i].clone()));
        }
        let chi = char_at(family, mu, mu_nonneg.as_ref(), &tuple_sc)?.to_cfloat(prec);
        let w = weight_at(family, &tuple_cf, prec);
        let chi_bar_w = chi.conj().mul(&w);
        *num = num.add(&f(&tuple_cf).mul(&chi_bar_w));
        *den = den.add(&chi.mul(&chi_bar_w));
        Ok(())
    };
    if k == 1 {
        for i in 0..grid {
            visit(&[i], &mut num, &mut den)?;
        }
    } else {
        for i in 0..grid {
            for j in 0..grid {
                if i == j {
                    // the weight vanishes at coincident coordinates
                    continue;
                }
                visit(&[i, j], &mut num, &mut den)?;
            }
        }
    }
    let value = match family {
        CharFamily::A => {
            // Schur functions are orthonormal: divide by k!·gridᵏ directly
            let mut scale = (grid as f64).powi(k as i32);
            if k == 2 {
                scale *= 2.0;
            }
            num.div_float(&rug::Float::with_val(prec, scale))
        }
        _ => num.div(&den),
    };
    Ok(Scalar::Float(value))
}
