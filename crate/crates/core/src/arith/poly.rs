//! Dense polynomial helpers and symmetric-function primitives over [`Scalar`].

use super::Scalar;

/// Coefficients of ∏_i (X − r_i), lowest degree first (monic).
pub fn poly_from_roots(roots: &[Scalar], one: &Scalar) -> Vec<Scalar> {
    let mut coeffs = vec![one.clone()];
    for r in roots {
        let mut next = vec![one.zero_like(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&r.mul(c));
        }
        coeffs = next;
    }
    coeffs
}

/// Product of two dense polynomials (lowest degree first).
pub fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].zero_like();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

/// Horner evaluation of a dense polynomial (lowest degree first).
pub fn poly_eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Power sums p_k = Σ_i x_i^k for k = 1, …, max.
pub fn power_sums(points: &[Scalar], max: usize, zero: &Scalar) -> Vec<Scalar> {
    let mut sums = vec![zero.zero_like(); max];
    let mut powers: Vec<Scalar> = points.to_vec();
    for p in sums.iter_mut() {
        for (acc, x) in powers.iter_mut().zip(points.iter()) {
            *p = p.add(acc);
            *acc = acc.mul(x);
        }
    }
    sums
}

/// Complete homogeneous symmetric polynomials h_0, …, h_max of the points,
/// computed through the Newton identities m·h_m = Σ_{i=1}^{m} p_i h_{m−i}.
pub fn complete_homogeneous(points: &[Scalar], max: usize, one: &Scalar) -> Vec<Scalar> {
    let p = power_sums(points, max, one);
    let mut h = Vec::with_capacity(max + 1);
    h.push(one.one_like());
    for m in 1..=max {
        let mut acc = one.zero_like();
        for i in 1..=m {
            acc = acc.add(&p[i - 1].mul(&h[m - i]));
        }
        let m_scalar = match one {
            Scalar::Exact(_) => Scalar::Exact(rug::Rational::from(m as i64)),
            Scalar::Float(f) => {
                Scalar::Float(super::CFloat::from_f64(f.prec(), m as f64, 0.0))
            }
        };
        h.push(acc.div(&m_scalar));
    }
    h
}

/// Elementary symmetric polynomials e_0, …, e_max of the points, by
/// sequentially expanding ∏_i (1 + x_i T). Entries beyond the number of
/// points are zero.
pub fn elementary(points: &[Scalar], max: usize, one: &Scalar) -> Vec<Scalar> {
    let mut e = vec![one.zero_like(); max + 1];
    e[0] = one.one_like();
    let mut deg = 0usize;
    for x in points {
        deg = (deg + 1).min(max);
        for i in (1..=deg).rev() {
            let term = e[i - 1].mul(x);
            e[i] = e[i].add(&term);
        }
    }
    e
}
