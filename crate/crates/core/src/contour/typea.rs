//! Normalized Schur ratios with one or several geometric points replaced by
//! free variables: exact residue evaluation, strip-contour quadrature, the
//! multivariate determinant form, and the rank limit Φ.
#![allow(non_snake_case)]

use rug::Float;

use crate::arith::cfloat::CFloat;
use crate::arith::det::determinant_cfloat;
use crate::arith::poly::{poly_eval, poly_from_roots};
use crate::arith::{qpochhammer, qpochhammer_inf, rat_pow, EvalConfig, Mode, Scalar};
use crate::chars::schur::{schur_eval, schur_eval_multiset, schur_principal};
use crate::chars::Signature;
use crate::error::{QError, Result};

use super::engine::{integrand_type_a, strip_brace, StripContext};
use super::{BoundaryPointA, QuadratureSpec};

fn check_rank(lambda: &Signature, n: usize) -> Result<()> {
    if lambda.len() != n {
        return Err(QError::LengthMismatch(format!(
            "signature has {} parts but rank is {}",
            lambda.len(),
            n
        )));
    }
    if n == 0 {
        return Err(QError::BadShape("rank must be positive".into()));
    }
    Ok(())
}

/// Direct left side: s_λ(1, …, q^{b−1}, q^b·x, q^{b+1}, …, q^{N−1})
/// divided by s_λ(1, q, …, q^{N−1}); slot b (0-based) carries q^b·x.
///
/// Falls back to the multiset (Jacobi-Trudi) evaluation when the inserted
/// point collides with a geometric point.
pub fn typea_direct_ratio(
    lambda: &Signature,
    n: usize,
    b: usize,
    x: &Scalar,
    cfg: &EvalConfig,
) -> Result<Scalar> {
    check_rank(lambda, n)?;
    if b >= n {
        return Err(QError::InvalidConfig(format!(
            "slot {b} out of range for rank {n}"
        )));
    }
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        if j == b {
            points.push(cfg.q_int_power(b as i64).mul(x));
        } else {
            points.push(cfg.q_int_power(j as i64));
        }
    }
    let num = match schur_eval(lambda, &points) {
        Ok(v) => v,
        Err(QError::CoincidentPoints(_)) => schur_eval_multiset(lambda, &points)?,
        Err(e) => return Err(e),
    };
    let den = schur_principal(lambda, n, cfg)?;
    Ok(num.div(&den))
}

/// Direct left side of the multivariate identity: slots b..b+k−1 carry
/// q^b·x_1, …, q^b·x_k.
pub fn typea_multivar_direct_ratio(
    lambda: &Signature,
    n: usize,
    b: usize,
    xs: &[Scalar],
    cfg: &EvalConfig,
) -> Result<Scalar> {
    check_rank(lambda, n)?;
    let k = xs.len();
    if k == 0 || b + k > n {
        return Err(QError::InvalidConfig(format!(
            "need 1 ≤ k and b+k ≤ N (got b={b}, k={k}, N={n})"
        )));
    }
    let qb = cfg.q_int_power(b as i64);
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        if j >= b && j < b + k {
            points.push(qb.mul(&xs[j - b]));
        } else {
            points.push(cfg.q_int_power(j as i64));
        }
    }
    let num = match schur_eval(lambda, &points) {
        Ok(v) => v,
        Err(QError::CoincidentPoints(_)) => schur_eval_multiset(lambda, &points)?,
        Err(e) => return Err(e),
    };
    let den = schur_principal(lambda, n, cfg)?;
    Ok(num.div(&den))
}

/// The singular set of the residue prefactor: integer exponents a in
/// {0, …, N−1} other than b (apparent singularities of the right side).
fn is_apparent_singularity(a: i64, n: usize, b: usize) -> bool {
    a >= 0 && (a as usize) < n && a as usize != b
}

/// Exact residue evaluation of the single-variable contour identity.
///
/// The value equals `typea_direct_ratio(λ, N, b, q^a)`: the w-integral of
/// the double-contour form is resolved by truncating the monic node
/// polynomial E(w) = ∏(w − q^{l_i}) to degrees ≤ b (the w=0 residue; the
/// w=z residue integrates to zero in z), and the z-integral by summing the
/// simple residues at z = q^{l_i}:
///
/// ```text
///   pref(a) · Σ_j q^{(a−b−1) l_j} E_{≤b}(q^{l_j}) / ∏_{i≠j} (q^{l_j} − q^{l_i})
/// ```
///
/// with pref(a) = ∏_{i=1}^{N−b−1} (1−q^i)/(q^{a−b}−q^i) ·
/// ∏_{i=1}^{b} (1−q^i)/(1−q^{a−b+i}).
///
/// At the apparent singularities a ∈ {0,…,N−1}\{b} the prefactor poles
/// cancel against a vanishing double integral; there (and within 1e-6 of
/// there in float mode) the direct left-side value is returned instead.
pub fn typeA_finiteN_residue(
    lambda: &Signature,
    n: usize,
    b: usize,
    a: &Scalar,
    cfg: &EvalConfig,
) -> Result<Scalar> {
    check_rank(lambda, n)?;
    if b == 0 || b >= n {
        return Err(QError::InvalidConfig(format!(
            "need 1 ≤ b ≤ N−1 (got b={b}, N={n})"
        )));
    }

    // Detect (near-)singular integer exponents and fall back to the direct
    // ratio, which is regular for every a.
    match a {
        Scalar::Exact(r) => {
            if !r.is_integer() {
                return Err(QError::ExactModeUnsupported(
                    "non-integer exponent a requires float mode",
                ));
            }
            let ai = r.numer().to_i64().ok_or_else(|| {
                QError::InvalidConfig("exponent a out of i64 range".into())
            })?;
            if is_apparent_singularity(ai, n, b) {
                let x = Scalar::Exact(rat_pow(&cfg.q, ai - b as i64));
                return typea_direct_ratio(lambda, n, b, &x, cfg);
            }
        }
        Scalar::Float(f) => {
            if f.im.is_zero() {
                let af = f.re.to_f64();
                let rounded = af.round();
                if (af - rounded).abs() < 1e-6
                    && is_apparent_singularity(rounded as i64, n, b)
                {
                    let x = qpow_cfloat(&(f.sub(&CFloat::from_f64(f.prec(), b as f64, 0.0))), cfg);
                    return typea_direct_ratio(lambda, n, b, &Scalar::Float(x), cfg);
                }
            }
        }
    }

    let one = cfg.one();
    let l: Vec<i64> = (1..=n).map(|j| lambda.part(j) + (n - j) as i64).collect();

    // q^{a−b} in the current mode.
    let q_ab = scalar_q_power_shift(a, -(b as i64), cfg)?;

    // prefactor
    let mut pref = one.clone();
    for i in 1..=(n - b - 1) {
        let qi = cfg.q_int_power(i as i64);
        pref = pref.mul(&one.sub(&qi)).div(&q_ab.sub(&qi));
    }
    for i in 1..=b {
        let qabi = q_ab.mul(&cfg.q_int_power(i as i64));
        pref = pref.mul(&one.sub(&cfg.q_int_power(i as i64))).div(&one.sub(&qabi));
    }

    // node polynomial E and its truncation to degrees ≤ b
    let roots: Vec<Scalar> = l.iter().map(|&e| cfg.q_int_power(e)).collect();
    let e_poly = poly_from_roots(&roots, &one);
    let e_trunc = &e_poly[..usize::min(b + 1, e_poly.len())];

    let mut sum = cfg.zero();
    for j in 0..n {
        let zj = &roots[j];
        let fj = poly_eval(e_trunc, zj);
        let mut denom = one.clone();
        for i in 0..n {
            if i != j {
                denom = denom.mul(&zj.sub(&roots[i]));
            }
        }
        // q^{(a − b − 1) l_j}
        let power = scalar_q_power_shift(a, -(b as i64) - 1, cfg)?.pow_i64(l[j]);
        sum = sum.add(&power.mul(&fj).div(&denom));
    }
    // the inner residue at w = 0 carries −1/z^{b−m+1} from the expansion of
    // 1/(w − z), hence the overall sign
    Ok(cfg.zero().sub(&pref.mul(&sum)))
}

/// q^{(a + shift)}: exact for integer exact a, complex exponential in float.
fn scalar_q_power_shift(a: &Scalar, shift: i64, cfg: &EvalConfig) -> Result<Scalar> {
    match a {
        Scalar::Exact(r) => {
            let ai = r.numer().to_i64().ok_or_else(|| {
                QError::InvalidConfig("exponent a out of i64 range".into())
            })?;
            Ok(cfg.scalar_from_rational(&rat_pow(&cfg.q, ai + shift)))
        }
        Scalar::Float(f) => {
            let e = f.add(&CFloat::from_f64(f.prec(), shift as f64, 0.0));
            Ok(Scalar::Float(qpow_cfloat(&e, cfg)))
        }
    }
}

/// q^e for a complex exponent e (float).
fn qpow_cfloat(e: &CFloat, cfg: &EvalConfig) -> CFloat {
    let lnq = Float::with_val(e.prec(), &cfg.q).ln();
    e.mul_float(&lnq).exp()
}

/// Strip-contour evaluation of the same single-variable ratio at x ∈ ℂ,
/// valid on q^{N−b} < |x| < q^{−(b+1)} off (−∞,0] ∪ {q^n}:
///
/// ```text
///   x (ln q)² (q;q)_b (q;q)_{N−b−1} / [(qx;q)_b (q/x;q)_{N−b−1}] · {T(0) − DI}
/// ```
///
/// where DI is the two-line double integral with inner structure
/// P(σ) = ∏_{j≤b}(σ − q^{λ_j+b−j}) ∏_{j>b}(1 − q^{−(λ_j+b−j)} σ).
pub fn typeA_finiteN_strip(
    lambda: &Signature,
    n: usize,
    b: usize,
    x: &Scalar,
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    check_rank(lambda, n)?;
    if b == 0 || b >= n {
        return Err(QError::InvalidConfig(format!(
            "need 1 ≤ b ≤ N−1 (got b={b}, N={n})"
        )));
    }
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("strip-contour quadrature"));
    }
    let prec = cfg.prec();
    let xf = x.to_cfloat(prec);
    check_off_cut(&xf)?;
    let lnq = cfg.ln_q();
    let abs_x = xf.abs();
    // strict domain q^{N−b} < |x| < q^{−(b+1)}
    let low = Float::with_val(prec, Float::with_val(prec, (n - b) as u32) * &lnq).exp();
    let high = Float::with_val(prec, Float::with_val(prec, -((b + 1) as i64)) * &lnq).exp();
    if !(abs_x > low && abs_x < high) {
        return Err(QError::DomainViolation(format!(
            "|x| = {} outside the strip domain (q^{}, q^{})",
            abs_x.to_f64(),
            n - b,
            -((b as i64) + 1)
        )));
    }
    if let Some(e) = nearest_q_power(&xf, &lnq, 1e-9) {
        return Err(QError::DomainViolation(format!(
            "x within 1e-9 of the excluded point q^{e}"
        )));
    }

    let lp: Vec<i64> = (1..=n)
        .map(|j| lambda.part(j) + b as i64 - j as i64)
        .collect();
    let c_roots: Vec<Float> = lp[..b]
        .iter()
        .map(|&e| Float::with_val(prec, Float::with_val(prec, e) * &lnq).exp())
        .collect();
    let d_roots: Vec<Float> = lp[b..]
        .iter()
        .map(|&e| Float::with_val(prec, Float::with_val(prec, -e) * &lnq).exp())
        .collect();
    let si = integrand_type_a(&c_roots, &d_roots, prec);
    let ctx = StripContext {
        lnx: xf.ln(),
        lnq: lnq.clone(),
        r: quad.r_shift,
        prec,
    };
    let brace = strip_brace(&si, &[(-1, 0)], &ctx, quad)?;

    // prefactor
    let q = cfg.scalar_from_rational(&cfg.q);
    let xs = Scalar::Float(xf.clone());
    let qx = q.mul(&xs);
    let q_over_x = q.div(&xs);
    let num = qpochhammer(&q, b as u64, cfg).mul(&qpochhammer(&q, (n - b - 1) as u64, cfg));
    let den = qpochhammer(&qx, b as u64, cfg).mul(&qpochhammer(&q_over_x, (n - b - 1) as u64, cfg));
    let lnq2 = CFloat::from_float(lnq.clone().square());
    let pref = xf.mul(&lnq2).mul(&num.to_cfloat(prec)).div(&den.to_cfloat(prec));
    Ok(Scalar::Float(pref.mul(&brace).neg()))
}

fn check_off_cut(x: &CFloat) -> Result<()> {
    if x.is_zero() || (x.im.is_zero() && x.re.is_sign_negative()) {
        return Err(QError::DomainViolation(
            "x must avoid the cut (−∞, 0]".into(),
        ));
    }
    Ok(())
}

/// The integer e minimizing |x − q^e| within a small window, if that
/// distance is below `radius` (absolute). Returns the exponent.
fn nearest_q_power(x: &CFloat, lnq: &Float, radius: f64) -> Option<i64> {
    let prec = x.prec();
    let ax = x.abs();
    if !(ax.clone().to_f64() > 0.0) {
        return None;
    }
    let center = (ax.ln() / lnq).to_f64().round() as i64;
    for e in (center - 3)..=(center + 3) {
        let qe = Float::with_val(prec, Float::with_val(prec, e) * lnq).exp();
        let d = x.sub(&CFloat::from_float(qe)).abs().to_f64();
        if d < radius {
            return Some(e);
        }
    }
    None
}

/// The multivariate determinant form: for xs = (x_1, …, x_k),
///
/// ```text
///   C_k(q) / V(x_k, …, x_1) ·
///     det[ r_{b+j−1}(x_i q^{1−j}) · ∏_{s≠j} (x_i q^{1−s} − 1) ]_{i,j=1}^k
/// ```
///
/// where r_{b'}(x') is the single-variable ratio with slot b' carrying
/// q^{b'} x'. Equals the direct ratio with slots b..b+k−1 carrying
/// q^b x_1, …, q^b x_k.
pub fn typeA_multivar_det(
    lambda: &Signature,
    n: usize,
    b: usize,
    k: usize,
    xs: &[Scalar],
    cfg: &EvalConfig,
) -> Result<Scalar> {
    check_rank(lambda, n)?;
    if k == 0 || xs.len() != k {
        return Err(QError::InvalidConfig(format!(
            "expected k = {k} evaluation points, got {}",
            xs.len()
        )));
    }
    if b + k > n {
        return Err(QError::InvalidConfig(format!(
            "need b+k ≤ N (got b={b}, k={k}, N={n})"
        )));
    }
    for x in xs {
        if x.is_zero() {
            return Err(QError::ZeroPoint);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if xs[i].eq_exact(&xs[j]) || xs[i].dist(&xs[j]) < 1e-30 {
                return Err(QError::CoincidentPoints(format!(
                    "x_{} = x_{} makes the Vandermonde vanish",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let one = cfg.one();
    // V(x_k, …, x_1) = ∏_{i<j, reversed order} (…)
    let mut vdm = one.clone();
    for i in (0..k).rev() {
        for j in (0..i).rev() {
            vdm = vdm.mul(&xs[i].sub(&xs[j]));
        }
    }

    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let xij = xs[i].mul(&cfg.q_int_power(1 - (j as i64 + 1)));
            let r = typea_direct_ratio(lambda, n, b + j, &xij, cfg)?;
            let mut coef = one.clone();
            for s in 0..k {
                if s != j {
                    let xis = xs[i].mul(&cfg.q_int_power(-(s as i64)));
                    coef = coef.mul(&xis.sub(&one));
                }
            }
            row.push(r.mul(&coef));
        }
        rows.push(row);
    }
    let det = crate::arith::det::determinant(rows, &one);
    Ok(multivar_constant_a(k, cfg).mul(&det).div(&vdm))
}

/// The constant C_k(q) of the multivariate determinant forms, fixed by the
/// principal normalization: at x_j = q^{j−1} every off-diagonal entry
/// carries a vanishing polynomial coefficient, the determinant collapses to
/// its diagonal ∏_i ∏_{s≠i}(q^{i−s}−1), and the value must be 1, so
///
/// ```text
///   C_k(q) = V(q^{k−1},…,q^0) / ∏_{i=1}^k ∏_{s≠i} (q^{i−s} − 1).
/// ```
fn multivar_constant_a(k: usize, cfg: &EvalConfig) -> Scalar {
    let one = cfg.one();
    let ps: Vec<Scalar> = (0..k).map(|j| cfg.q_int_power(j as i64)).collect();
    let mut vp = one.clone();
    for i in (0..k).rev() {
        for j in (0..i).rev() {
            vp = vp.mul(&ps[i].sub(&ps[j]));
        }
    }
    let mut dp = one.clone();
    for i in 1..=k as i64 {
        for s in 1..=k as i64 {
            if s != i {
                dp = dp.mul(&cfg.q_int_power(i - s).sub(&one));
            }
        }
    }
    vp.div(&dp)
}

/// Index cutoff for the truncated infinite products: the smallest K with
/// both growing exponents beyond the deviation threshold determined by the
/// tolerance and |x|.
fn phi_truncation_a(
    t: &BoundaryPointA,
    abs_ln_x: f64,
    q: f64,
    quad: &QuadratureSpec,
) -> Result<usize> {
    let lq = -(q.ln()); // |ln q|
    let bound = (-(quad.tol * (1.0 - q)).ln() + abs_ln_x.max(0.0)) / lq + 6.0;
    let mut k = quad.product_truncation;
    let cap = quad.product_truncation * 8 + 2000;
    loop {
        let c_exp = t.value(k as i64) + k as i64 - 1;
        let d_exp = k as i64 - t.value(1 - k as i64);
        if (c_exp as f64) >= bound && (d_exp as f64) >= bound {
            return Ok(k);
        }
        k += 1;
        if k > cap {
            return Err(QError::NonConvergedQuadrature(
                "infinite-product truncation index exceeds the cap".into(),
            ));
        }
    }
}

/// The limit function Φ^t(x; q):
///
/// ```text
///   x (ln q)² (q;q)²_∞ / [(qx;q)_∞ (q/x;q)_∞] · {T(0) − DI}
/// ```
///
/// with the doubly infinite products over exponents t_i+i−1 (i ≥ 1) and
/// i−t_{1−i} (i ≥ 1) truncated at the adaptive index K.
pub fn phiA(
    t: &BoundaryPointA,
    x: &Scalar,
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("limit-function quadrature"));
    }
    let prec = cfg.prec();
    let xf = x.to_cfloat(prec);
    check_off_cut(&xf)?;
    let lnq = cfg.ln_q();
    if let Some(e) = nearest_q_power(&xf, &lnq, 1e-3) {
        if e != 0 {
            return Err(QError::PoleNeighborhood(format!(
                "x within 1e-3 of the excluded point q^{e}"
            )));
        }
    }
    let qf = cfg.q.to_f64();
    let abs_ln_x = xf.abs().ln().to_f64().abs();
    let kk = phi_truncation_a(t, abs_ln_x, qf, quad)?;

    let c_roots: Vec<Float> = (1..=kk as i64)
        .map(|i| {
            let e = t.value(i) + i - 1;
            Float::with_val(prec, Float::with_val(prec, e) * &lnq).exp()
        })
        .collect();
    let d_roots: Vec<Float> = (1..=kk as i64)
        .map(|j| {
            let e = j - t.value(1 - j);
            Float::with_val(prec, Float::with_val(prec, e) * &lnq).exp()
        })
        .collect();
    let si = integrand_type_a(&c_roots, &d_roots, prec);
    let ctx = StripContext {
        lnx: xf.ln(),
        lnq: lnq.clone(),
        r: quad.r_shift,
        prec,
    };
    let brace = strip_brace(&si, &[(-1, 0)], &ctx, quad)?;

    let q = cfg.scalar_from_rational(&cfg.q);
    let xs = Scalar::Float(xf.clone());
    let euler = qpochhammer_inf(&q, cfg)?;
    let num = euler.mul(&euler);
    let den = qpochhammer_inf(&q.mul(&xs), cfg)?.mul(&qpochhammer_inf(&q.div(&xs), cfg)?);
    let lnq2 = CFloat::from_float(lnq.clone().square());
    let pref = xf.mul(&lnq2).mul(&num.to_cfloat(prec)).div(&den.to_cfloat(prec));
    Ok(Scalar::Float(pref.mul(&brace).neg()))
}

/// Multivariate limit function:
///
/// ```text
///   C_k(q) / V(x_k,…,x_1) ·
///     det[ Φ^{A_j t}(x_i q^{1−j}) ∏_{s≠j} (x_i q^{1−s} − 1) ]
/// ```
///
/// with (A_m t)_n = t_{n+1−m}. Entries whose polynomial coefficient
/// vanishes (to working precision) are zero regardless of the Φ factor — at
/// such points Φ stays finite while our prefactor-times-integral splitting
/// degenerates, so the evaluation is skipped.
pub fn phiA_multivar(
    t: &BoundaryPointA,
    xs: &[Scalar],
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("limit-function quadrature"));
    }
    let k = xs.len();
    if k == 0 {
        return Err(QError::InvalidConfig("need at least one point".into()));
    }
    let prec = cfg.prec();
    let xf: Vec<CFloat> = xs.iter().map(|x| x.to_cfloat(prec)).collect();
    for x in &xf {
        check_off_cut(x)?;
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if xf[i].dist(&xf[j]) < 1e-30 {
                return Err(QError::CoincidentPoints(format!(
                    "x_{} = x_{} makes the Vandermonde vanish",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let one = CFloat::one(prec);
    let mut vdm = one.clone();
    for i in (0..k).rev() {
        for j in (0..i).rev() {
            vdm = vdm.mul(&xf[i].sub(&xf[j]));
        }
    }

    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let mut coef = one.clone();
            for s in 0..k {
                if s != j {
                    let qs = cfg.q_int_power(-(s as i64)).to_cfloat(prec);
                    coef = coef.mul(&xf[i].mul(&qs).sub(&one));
                }
            }
            if coef.abs().to_f64() < 1e-20 {
                row.push(CFloat::zero(prec));
                continue;
            }
            let tj = t.shifted(j as i64 + 1);
            let xij = Scalar::Float(
                xf[i].mul(&cfg.q_int_power(-(j as i64)).to_cfloat(prec)),
            );
            let phi = phiA(&tj, &xij, cfg, quad)?.to_cfloat(prec);
            row.push(phi.mul(&coef));
        }
        rows.push(row);
    }
    let det = determinant_cfloat(rows);
    let pref = multivar_constant_a(k, cfg).to_cfloat(prec);
    Ok(Scalar::Float(pref.mul(&det).div(&vdm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;
    use crate::arith::DEFAULT_PREC;

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    fn cfg_exact() -> EvalConfig {
        EvalConfig::exact(Rational::from((1, 2))).unwrap()
    }

    fn cfg_float() -> EvalConfig {
        EvalConfig::float_mode(Rational::from((1, 2)), DEFAULT_PREC).unwrap()
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::Exact(Rational::from((n, d)))
    }

    #[test]
    fn residue_matches_worked_value() {
        // λ=(1,0), N=2, b=1, a=3, q=1/2:
        // s_{(1,0)}(1, q³)/s_{(1,0)}(1, q) = (1 + 1/8)/(1 + 1/2) = 3/4
        let cfg = cfg_exact();
        let v = typeA_finiteN_residue(&sig(&[1, 0]), 2, 1, &ex(3, 1), &cfg).unwrap();
        assert_eq!(v.as_rational().unwrap(), &Rational::from((3, 4)));
    }

    #[test]
    fn residue_trivial_label_is_one() {
        let cfg = cfg_exact();
        for n in 2..=5usize {
            let lam = sig(&vec![0; n]);
            for b in 1..n {
                for a in 0..=(n as i64 + 2) {
                    let v = typeA_finiteN_residue(&lam, n, b, &ex(a, 1), &cfg).unwrap();
                    assert!(
                        v.eq_exact(&cfg.one()),
                        "zero label must give 1 (n={n}, b={b}, a={a})"
                    );
                }
            }
        }
    }

    #[test]
    fn residue_equals_direct_ratio_including_singular_a() {
        let cfg = cfg_exact();
        let cases: Vec<(Vec<i64>, usize)> = vec![
            (vec![2, 1, 0], 3),
            (vec![3, 1, -1], 3),
            (vec![2, 2, 1, 0], 4),
            (vec![1, 0, 0, -2], 4),
        ];
        for (parts, n) in cases {
            let lam = sig(&parts);
            for b in 1..n {
                for a in -1..=(n as i64 + 2) {
                    let res = typeA_finiteN_residue(&lam, n, b, &ex(a, 1), &cfg).unwrap();
                    let x = Scalar::Exact(rat_pow(&cfg.q, a - b as i64));
                    let direct = typea_direct_ratio(&lam, n, b, &x, &cfg).unwrap();
                    assert!(
                        res.eq_exact(&direct),
                        "mismatch λ={parts:?} n={n} b={b} a={a}: {res} vs {direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn residue_float_generic_exponent() {
        let cfg = cfg_float();
        let lam = sig(&[2, 1, 0]);
        // generic non-integer exponent: compare against the direct ratio at
        // x = q^{a−b}
        let a = Scalar::Float(CFloat::from_f64(DEFAULT_PREC, 2.37, 0.0));
        let v = typeA_finiteN_residue(&lam, 3, 1, &a, &cfg).unwrap();
        let x = Scalar::Float(qpow_cfloat(&CFloat::from_f64(DEFAULT_PREC, 1.37, 0.0), &cfg));
        let direct = typea_direct_ratio(&lam, 3, 1, &x, &cfg).unwrap();
        assert!(v.dist(&direct) < 1e-40, "dist = {}", v.dist(&direct));
    }

    #[test]
    fn strip_requires_domain() {
        // the worked point x = q³ lies outside q^{N−b} < |x| < q^{−(b+1)}
        // for λ=(1,0), N=2, b=1 and must be refused
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let x = ex(1, 8);
        let err = typeA_finiteN_strip(&sig(&[1, 0]), 2, 1, &x, &cfg, &quad);
        assert!(matches!(err, Err(QError::DomainViolation(_))));
    }

    #[test]
    fn strip_matches_direct_ratio() {
        let cfg = cfg_float();
        let quad = QuadratureSpec {
            u_halfwidth: 12.0,
            ..QuadratureSpec::default()
        };
        let lam = sig(&[2, 1, 0, 0]);
        let x = ex(13, 10);
        let v = typeA_finiteN_strip(&lam, 4, 2, &x, &cfg, &quad).unwrap();
        let direct = typea_direct_ratio(&lam, 4, 2, &x, &cfg).unwrap();
        assert!(v.dist(&direct) < 1e-10, "dist = {}", v.dist(&direct));
    }

    #[test]
    fn strip_matches_residue_at_qpower() {
        // in-domain exponent: λ=(1,0), N=2, b=1, a = −1 ⇒ x = q^{−2} = 4,
        // domain (q, q^{−2}) excludes it… use a = 0? singular. Take
        // λ=(2,1,0), N=3, b=1: domain (q², q^{−2}) = (0.25, 4); a=2 ⇒
        // x = q^{a−b} = 1/2 — inside but equals q^1: excluded point.
        // Use float a = 2.5 ⇒ x = q^{1.5} ≈ 0.354.
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let lam = sig(&[2, 1, 0]);
        let a = Scalar::Float(CFloat::from_f64(DEFAULT_PREC, 2.5, 0.0));
        let res = typeA_finiteN_residue(&lam, 3, 1, &a, &cfg).unwrap();
        let x = Scalar::Float(qpow_cfloat(&CFloat::from_f64(DEFAULT_PREC, 1.5, 0.0), &cfg));
        let v = typeA_finiteN_strip(&lam, 3, 1, &x, &cfg, &quad).unwrap();
        assert!(v.dist(&res) < 1e-10, "dist = {}", v.dist(&res));
    }

    #[test]
    fn multivar_det_reduces_to_single_for_k1() {
        let cfg = cfg_exact();
        let lam = sig(&[2, 1, 0, 0]);
        let x = ex(3, 7);
        let multi = typeA_multivar_det(&lam, 4, 1, 1, &[x.clone()], &cfg).unwrap();
        let single = typea_direct_ratio(&lam, 4, 1, &x, &cfg).unwrap();
        assert!(multi.eq_exact(&single));
    }

    #[test]
    fn multivar_det_matches_direct_exact() {
        let cfg = cfg_exact();
        let lam = sig(&[2, 1, 0, 0]);
        // exact q-power points, chosen to keep all inserted points distinct
        // from the geometric ones
        let xs = vec![
            Scalar::Exact(rat_pow(&cfg.q, 7)),
            Scalar::Exact(rat_pow(&cfg.q, 5)),
        ];
        let det = typeA_multivar_det(&lam, 4, 1, 2, &xs, &cfg).unwrap();
        let direct = typea_multivar_direct_ratio(&lam, 4, 1, &xs, &cfg).unwrap();
        assert!(
            det.eq_exact(&direct),
            "det {det} vs direct {direct}"
        );
    }

    #[test]
    fn multivar_det_detects_coincident_points() {
        let cfg = cfg_exact();
        let lam = sig(&[1, 0, 0]);
        let xs = vec![ex(1, 3), ex(1, 3)];
        assert!(matches!(
            typeA_multivar_det(&lam, 3, 1, 2, &xs, &cfg),
            Err(QError::CoincidentPoints(_))
        ));
    }

    #[test]
    fn phi_constant_zero_sequence_is_one() {
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let t = BoundaryPointA::constant(0);
        for x in [ex(7, 10), ex(13, 10)] {
            let v = phiA(&t, &x, &cfg, &quad).unwrap();
            assert!(
                v.dist(&cfg.one()) < 1e-10,
                "Φ^0({x}) = {v} should be 1"
            );
        }
    }

    #[test]
    fn phi_constant_sequence_is_power() {
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        for c in [1i64, -1, 2] {
            let t = BoundaryPointA::constant(c);
            let x = ex(13, 10);
            let v = phiA(&t, &x, &cfg, &quad).unwrap();
            let expect = x.pow_i64(c);
            assert!(
                v.dist(&expect) < 1e-10,
                "Φ^{{t≡{c}}}(1.3) = {v}, want {expect}"
            );
        }
    }

    #[test]
    fn phi_refuses_pole_neighborhood() {
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let t = BoundaryPointA::constant(0);
        // q^1 = 1/2 exactly
        let err = phiA(&t, &ex(1, 2), &cfg, &quad);
        assert!(matches!(err, Err(QError::PoleNeighborhood(_))));
        // but x = 1 = q^0 is a regular point
        assert!(phiA(&t, &ex(1, 1), &cfg, &quad).is_ok());
    }

    #[test]
    fn phi_matches_finite_rank_ratio() {
        // t = (…,0,0,1,1,…) against the rank-40 ratio with b = 20 at x=1.3
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let t = BoundaryPointA::new(0, vec![0, 1], 0, 1).unwrap();
        let x = ex(13, 10);
        let phi = phiA(&t, &x, &cfg, &quad).unwrap();
        // λ(N)_j = t_{b+1−j} for N = 40, b = 20
        let n = 40usize;
        let b = 20usize;
        let parts: Vec<i64> = (1..=n as i64).map(|j| t.value(b as i64 + 1 - j)).collect();
        let lam = Signature::new(parts).unwrap();
        let direct = typea_direct_ratio(&lam, n, b, &x, &cfg).unwrap();
        assert!(
            phi.dist(&direct) < 1e-6,
            "Φ = {phi}, rank-40 ratio = {direct}"
        );
    }

    #[test]
    fn phi_multivar_trivial_and_normalized() {
        let cfg = cfg_float();
        let quad = QuadratureSpec::default();
        let t0 = BoundaryPointA::constant(0);
        let xs = vec![ex(13, 10), ex(4, 5)];
        let v = phiA_multivar(&t0, &xs, &cfg, &quad).unwrap();
        assert!(v.dist(&cfg.one()) < 1e-9, "Φ^0 multivariate = {v}");

        // normalization at the principal points (1, q)
        let t = BoundaryPointA::new(0, vec![0, 1], 0, 1).unwrap();
        let pts = vec![ex(1, 1), ex(1, 2)];
        let v = phiA_multivar(&t, &pts, &cfg, &quad).unwrap();
        assert!(v.dist(&cfg.one()) < 1e-9, "Φ^t(1, q) = {v}");
    }
}
