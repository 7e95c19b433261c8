//! Quadrature primitives: arbitrary-precision Gauss-Legendre panels and
//! midpoint-shifted trapezoid nodes on circles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};


use rug::Float;

use crate::arith::cfloat::CFloat;

type GlTable = Vec<(Float, Float)>;

fn gl_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<GlTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<GlTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and its derivative, by the three-term recurrence.
fn legendre_pair(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    if n == 0 {
        return (p_prev, Float::with_val(prec, 0));
    }
    for j in 1..n {
        // (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
        let a = Float::with_val(prec, 2 * j as u32 + 1) * x * &p;
        let b = Float::with_val(prec, j as u32) * &p_prev;
        let next = (a - b) / Float::with_val(prec, j as u32 + 1);
        p_prev = std::mem::replace(&mut p, next);
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = Float::with_val(prec, n as u32) * (x.clone() * &p - &p_prev);
    let den = x.clone().square() - 1u32;
    (p.clone(), num / den)
}

/// Gauss-Legendre nodes and weights on (-1, 1) at `prec` bits, cached.
pub fn gauss_legendre(n: usize, prec: u32) -> Arc<GlTable> {
    debug_assert!(n >= 1);
    if let Some(t) = gl_cache().lock().unwrap().get(&(n, prec)) {
        return Arc::clone(t);
    }
    let work = prec + 64;
    let mut table: GlTable = Vec::with_capacity(n);
    let pi = Float::with_val(work, rug::float::Constant::Pi);
    for k in 0..n {
        let theta = pi.clone() * Float::with_val(work, (k as f64) + 0.75)
            / Float::with_val(work, (n as f64) + 0.5);
        let mut x = -theta.cos();
        // Newton iterations; quadratic convergence from the cosine seed.
        for _ in 0..(64 - (prec as i64).leading_zeros() as i64 + 8) {
            let (p, dp) = legendre_pair(n, &x, work);
            let step = p / dp;
            x -= &step;
            if step.is_zero() {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, &x, work);
        let w = Float::with_val(work, 2) / ((Float::with_val(work, 1) - x.clone().square()) * dp.clone().square());
        table.push((
            Float::with_val(prec, &x),
            Float::with_val(prec, &w),
        ));
    }
    let arc = Arc::new(table);
    gl_cache()
        .lock()
        .unwrap()
        .insert((n, prec), Arc::clone(&arc));
    arc
}

/// Midpoint-shifted trapezoid nodes on the unit circle: e^{i pi (2j+1)/n}.
///
/// The half-step shift keeps nodes off the real axis for even n.
pub fn circle_nodes(n: usize, prec: u32) -> Vec<CFloat> {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    (0..n)
        .map(|j| {
            let theta = Float::with_val(prec, &pi * Float::with_val(prec, 2 * j as u32 + 1))
                / Float::with_val(prec, n as u32);
            let (sin, cos) = theta.sin_cos(Float::new(prec));
            CFloat { re: cos, im: sin }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f64_of(x: &Float) -> f64 {
        x.to_f64()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // n-point rule is exact for degree <= 2n-1.
        let prec = 192;
        let table = gauss_legendre(6, prec);
        // integral of x^10 over (-1,1) = 2/11
        let mut acc = Float::with_val(prec, 0);
        for (x, w) in table.iter() {
            let mut p = Float::with_val(prec, 1);
            for _ in 0..10 {
                p *= x;
            }
            acc += p * w;
        }
        let err = (acc - Float::with_val(prec, 2) / Float::with_val(prec, 11)).abs();
        assert!(f64_of(&err) < 1e-40, "err {err}");
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        let prec = 160;
        for n in [1usize, 2, 7, 24, 48] {
            let table = gauss_legendre(n, prec);
            let mut acc = Float::with_val(prec, 0);
            for (_, w) in table.iter() {
                acc += w;
            }
            let err = (acc - 2u32).abs();
            assert!(f64_of(&err) < 1e-40, "n={n} err {err}");
        }
    }

    #[test]
    fn circle_nodes_average_laurent_monomials() {
        // (1/n) sum z_j^m = 0 for 0 < |m| < n, and the shift keeps nodes off
        // the real axis for even n.
        let prec = 160;
        let n = 16;
        let nodes = circle_nodes(n, prec);
        for z in &nodes {
            assert!(f64_of(&z.im.clone().abs()) > 1e-3);
        }
        for m in 1..n {
            let mut acc = CFloat::zero(prec);
            for z in &nodes {
                acc = acc.add(&z.powi(m as i64));
            }
            assert!(f64_of(&acc.abs()) < 1e-40, "m={m}");
        }
    }
}
