//! Deformed-character ratios for the three doubled root families: one
//! geometric point replaced by a free variable (closed-circle and strip
//! contour evaluations), the multivariate determinant form, and the rank
//! limits Φ_m.
#![allow(non_snake_case)]

use rug::Float;

use crate::arith::cfloat::CFloat;
use crate::arith::det::{determinant, determinant_cfloat};
use crate::arith::{qpochhammer, qpochhammer_inf, EvalConfig, HalfInt, Mode, Scalar};
use crate::chars::hooks::jacobi_trudi_eval;
use crate::chars::weyl::{bcd_eval, bcd_principal, principal_points, CharPoint};
use crate::chars::{GroupType, NonnegSignature};
use crate::error::{QError, Result};

use super::engine::{integrand_doubled, strip_brace, DoubledFamily, StripContext};
use super::quadrature::circle_nodes;
use super::{BcdRoute, BoundaryPointBC, QuadratureSpec};

/// Coerce a point into the configured arithmetic mode, so that float-mode
/// evaluation can take square roots of points given as exact rationals.
fn in_mode(x: &Scalar, cfg: &EvalConfig) -> Scalar {
    match cfg.mode {
        Mode::Float => Scalar::Float(x.to_cfloat(cfg.prec())),
        Mode::Exact => x.clone(),
    }
}

fn family_of(group: GroupType) -> DoubledFamily {
    match group {
        GroupType::B => DoubledFamily::B,
        GroupType::C => DoubledFamily::C,
        GroupType::D => DoubledFamily::D,
    }
}

fn check_shape(lambda: &NonnegSignature, n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(QError::BadShape("rank must be positive".into()));
    }
    if lambda.len() != n {
        return Err(QError::LengthMismatch(format!(
            "label has {} parts but rank is {}",
            lambda.len(),
            n
        )));
    }
    if m >= n {
        return Err(QError::InvalidConfig(format!(
            "need 0 ≤ m ≤ N−1 (got m={m}, N={n})"
        )));
    }
    Ok(())
}

/// Direct left side: the normalized character with the geometric point
/// q^{m+ε} replaced by x, divided by the fully principal value. Falls back
/// to the determinant-free symmetric-function evaluation when the inserted
/// point collides with a geometric point or its inverse orbit.
pub fn bcd_direct_ratio(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    m: usize,
    x: &Scalar,
    cfg: &EvalConfig,
) -> Result<Scalar> {
    check_shape(lambda, n, m)?;
    let mut points = principal_points(group, n, cfg)?;
    // principal points are listed by decreasing exponent; exponent m+ε sits
    // at index N−1−m
    points[n - 1 - m] = CharPoint::new(in_mode(x, cfg))?;
    let num = match bcd_eval(group, lambda, &points) {
        Ok(v) => v,
        Err(QError::CoincidentOrbit(_)) => {
            let scalars = scalar_points(group, n, &[(m, x.clone())], cfg)?;
            jacobi_trudi_eval(group, lambda, &scalars)?
        }
        Err(e) => return Err(e),
    };
    let den = bcd_principal(group, lambda, n, cfg)?;
    Ok(num.div(&den))
}

/// Direct left side of the multivariate identity: the k lowest geometric
/// points q^ε, …, q^{k−1+ε} are replaced by x_1, …, x_k.
pub fn bcd_multivar_direct_ratio(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    xs: &[Scalar],
    cfg: &EvalConfig,
) -> Result<Scalar> {
    let k = xs.len();
    if k == 0 || k > n {
        return Err(QError::InvalidConfig(format!(
            "need 1 ≤ k ≤ N (got k={k}, N={n})"
        )));
    }
    check_shape(lambda, n, 0)?;
    let mut points = principal_points(group, n, cfg)?;
    let mut subs = Vec::with_capacity(k);
    for (j, x) in xs.iter().enumerate() {
        let xm = in_mode(x, cfg);
        points[n - 1 - j] = CharPoint::new(xm.clone())?;
        subs.push((j, xm));
    }
    let num = match bcd_eval(group, lambda, &points) {
        Ok(v) => v,
        Err(QError::CoincidentOrbit(_)) => {
            let scalars = scalar_points(group, n, &subs, cfg)?;
            jacobi_trudi_eval(group, lambda, &scalars)?
        }
        Err(e) => return Err(e),
    };
    let den = bcd_principal(group, lambda, n, cfg)?;
    Ok(num.div(&den))
}

/// The principal alphabet q^{N−1+ε}, …, q^{ε} as plain scalars, with the
/// listed slots (slot s = exponent s+ε) replaced by given values.
fn scalar_points(
    group: GroupType,
    n: usize,
    subs: &[(usize, Scalar)],
    cfg: &EvalConfig,
) -> Result<Vec<Scalar>> {
    let eps = group.epsilon();
    let mut pts = Vec::with_capacity(n);
    for j in 0..n {
        let slot = n - 1 - j; // exponent slot+ε
        if let Some((_, x)) = subs.iter().find(|(s, _)| *s == slot) {
            pts.push(x.clone());
        } else {
            pts.push(cfg.q_power(HalfInt::from_int(slot as i64) + eps)?);
        }
    }
    Ok(pts)
}

/// Whether the points x ≈ q^s on the ε-shifted grid are outside the
/// regularity set of the prefactor-times-integral factorization. The only
/// grid points where the factorization stays regular are |s| = m+ε (the
/// normalization orbit). `span` bounds |s| for the finite-rank case.
fn excluded_exponent(group: GroupType, m: i64, s_doubled: i64, span: Option<i64>) -> bool {
    let abs2 = s_doubled.abs();
    if let Some(limit2) = span {
        if abs2 > limit2 {
            return false;
        }
    }
    let allowed2 = 2 * m + group.epsilon().doubled();
    abs2 != allowed2
}

/// Detect x within `radius` of a grid point q^{n+ε}; returns the doubled
/// exponent. For the odd family the grid is offset by 1/2; x = 1 is reported
/// as doubled exponent 0 for every family.
fn near_grid_point(
    group: GroupType,
    x: &CFloat,
    lnq: &Float,
    radius: f64,
) -> Option<i64> {
    let prec = x.prec();
    let one = CFloat::one(prec);
    if x.sub(&one).abs().to_f64() < radius {
        return Some(0);
    }
    let ax = x.abs();
    if !(ax.clone().to_f64() > 0.0) {
        return None;
    }
    let eps2 = group.epsilon().doubled(); // 2ε
    let t = (ax.ln() / lnq).to_f64();
    // s = n + ε: doubled s = 2n + 2ε
    let n0 = (t - eps2 as f64 / 2.0).round() as i64;
    for nn in (n0 - 3)..=(n0 + 3) {
        let s2 = 2 * nn + eps2;
        let e = Float::with_val(prec, Float::with_val(prec, s2) * lnq) / 2u32;
        let qe = e.exp();
        if x.sub(&CFloat::from_float(qe)).abs().to_f64() < radius {
            return Some(s2);
        }
    }
    None
}

/// Pochhammer length of the x-dependent blocks: finite depth or infinite.
enum Tail {
    Finite(u64),
    Infinite,
}

fn poch_tail(a: &Scalar, tail: &Tail, cfg: &EvalConfig) -> Result<Scalar> {
    match tail {
        Tail::Finite(len) => Ok(qpochhammer(a, *len, cfg)),
        Tail::Infinite => qpochhammer_inf(a, cfg),
    }
}

/// The scalar prefactor of the contour representations:
///
/// ```text
///   front(x) · (q^{m+2ε}, q^{−m};q)_m (q, q^{2m+1+2ε};q)_L
///            / [(q^ε x, q^ε/x;q)_m (q^{m+1+ε} x, q^{m+1+ε}/x;q)_L]
/// ```
///
/// with L = N−m−1 (finite rank) or ∞ (limit), and family fronts
/// (q^{(m+½)/2}−q^{−(m+½)/2})/(x^{1/2}−x^{−1/2}),
/// (q^{m+1}−q^{−m−1})/(x−x^{−1}), and (2−1_{m=0})/2 respectively.
/// The strip forms carry an extra (ln q)².
fn bcd_prefactor(
    group: GroupType,
    m: i64,
    xf: &CFloat,
    tail: Tail,
    with_lnq2: bool,
    cfg: &EvalConfig,
) -> Result<CFloat> {
    let prec = cfg.prec();
    let lnq = cfg.ln_q();
    let two_eps = group.epsilon().doubled();
    let front = match group {
        GroupType::B => {
            // q^{(2m+1)/4} − q^{−(2m+1)/4}
            let e = Float::with_val(prec, 2 * m + 1) * &lnq / 4u32;
            let qp = e.clone().exp();
            let qm = (-e).exp();
            let num = CFloat::from_float(qp - qm);
            let half_lnx = xf.ln().div_float(&Float::with_val(prec, 2));
            let sx = half_lnx.exp();
            let den = sx.sub(&sx.recip());
            num.div(&den)
        }
        GroupType::C => {
            let qp = cfg.q_int_power(m + 1).to_cfloat(prec);
            let qm = cfg.q_int_power(-m - 1).to_cfloat(prec);
            let num = qp.sub(&qm);
            let den = xf.sub(&xf.recip());
            num.div(&den)
        }
        GroupType::D => {
            let v = if m == 0 { 0.5 } else { 1.0 };
            CFloat::from_f64(prec, v, 0.0)
        }
    };

    let q1 = cfg.q_int_power(1);
    let x = Scalar::Float(xf.clone());
    let x_inv = Scalar::Float(xf.recip());
    // q^ε and q^{m+1+ε} as floats
    let q_eps = cfg.q_power(group.epsilon())?;
    let q_m1e = cfg.q_power(HalfInt::from_int(m + 1) + group.epsilon())?;

    let num = qpochhammer(&cfg.q_int_power(m + two_eps), m as u64, cfg)
        .mul(&qpochhammer(&cfg.q_int_power(-m), m as u64, cfg))
        .mul(&poch_tail(&q1, &tail, cfg)?)
        .mul(&poch_tail(&cfg.q_int_power(2 * m + 1 + two_eps), &tail, cfg)?);
    let den = qpochhammer(&q_eps.mul(&x), m as u64, cfg)
        .mul(&qpochhammer(&q_eps.mul(&x_inv), m as u64, cfg))
        .mul(&poch_tail(&q_m1e.mul(&x), &tail, cfg)?)
        .mul(&poch_tail(&q_m1e.mul(&x_inv), &tail, cfg)?);

    let mut pref = front
        .mul(&num.to_cfloat(prec))
        .div(&den.to_cfloat(prec));
    if with_lnq2 {
        pref = pref.mul_float(&lnq.clone().square());
    }
    Ok(pref)
}

fn brace_singles(group: GroupType, m: i64) -> Vec<(i64, i64)> {
    match group {
        GroupType::B => vec![(-1, 2 * m + 1), (1, -(2 * m + 1))],
        GroupType::C => vec![(-1, 2 * m + 2), (1, -(2 * m + 2))],
        GroupType::D => vec![(1, 2 * m), (1, -2 * m)],
    }
}

fn check_off_cut(x: &CFloat) -> Result<()> {
    if x.is_zero() || (x.im.is_zero() && x.re.is_sign_negative()) {
        return Err(QError::DomainViolation(
            "x must avoid the cut (−∞, 0]".into(),
        ));
    }
    Ok(())
}

/// Contour evaluation of the single-variable ratio, by the strip form
/// (domain q^N < |x| < q^{−N}) or by quadrature over the closed z/w circle
/// pair. Within 1e-9 of an excluded grid point (where the prefactor and the
/// integral degenerate against each other while the ratio itself stays
/// regular) the direct left-side value is returned instead.
pub fn bcd_finiteN_integral(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    m: usize,
    x: &Scalar,
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
    route: BcdRoute,
) -> Result<Scalar> {
    check_shape(lambda, n, m)?;
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("contour quadrature"));
    }
    let prec = cfg.prec();
    let xf = x.to_cfloat(prec);
    check_off_cut(&xf)?;
    let lnq = cfg.ln_q();

    if let Some(s2) = near_grid_point(group, &xf, &lnq, 1e-9) {
        let span = match group {
            GroupType::B => 2 * n as i64 + 1,
            GroupType::C => 2 * n as i64,
            GroupType::D => 2 * (n as i64 - 1),
        };
        if excluded_exponent(group, m as i64, s2, Some(span)) {
            return bcd_direct_ratio(group, lambda, n, m, x, cfg);
        }
    }

    match route {
        BcdRoute::Strip => bcd_strip(group, lambda, n, m, &xf, cfg, quad),
        BcdRoute::Circle => bcd_circle(group, lambda, n, m, &xf, cfg, quad),
    }
}

fn bcd_strip(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    m: usize,
    xf: &CFloat,
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    let prec = cfg.prec();
    let lnq = cfg.ln_q();
    let abs_x = xf.abs();
    let low = Float::with_val(prec, Float::with_val(prec, n as i64) * &lnq).exp();
    let high = Float::with_val(prec, Float::with_val(prec, -(n as i64)) * &lnq).exp();
    if !(abs_x > low && abs_x < high) {
        return Err(QError::DomainViolation(format!(
            "|x| = {} outside the strip domain (q^{}, q^{})",
            abs_x.to_f64(),
            n,
            -(n as i64)
        )));
    }

    let eps2 = group.epsilon().doubled();
    let g_roots: Vec<Float> = (1..=n)
        .map(|i| {
            let l2 = 2 * (lambda.part(i) + (n - i) as i64) + eps2;
            (Float::with_val(prec, Float::with_val(prec, l2) * &lnq) / 2u32).exp()
        })
        .collect();
    let si = integrand_doubled(family_of(group), &g_roots, m as i64, prec);
    let ctx = StripContext {
        lnx: xf.ln(),
        lnq: lnq.clone(),
        r: quad.r_shift,
        prec,
    };
    let brace = strip_brace(&si, &brace_singles(group, m as i64), &ctx, quad)?;
    let pref = bcd_prefactor(group, m as i64, xf, Tail::Finite((n - m - 1) as u64), true, cfg)?;
    Ok(Scalar::Float(pref.mul(&brace)))
}

/// Quadrature over the closed contour pair: the z-circle is centered at the
/// midpoint of [q^{l_1}, q^{−l_1}] with radius (q^{−l_1}−q^{l_1})/2 +
/// q^{l_1}/2, and the w-circle is centered at the origin with radius
/// 2 q^{−l_1}. Node counts scale like q^{−2 l_1}; the strip form is the
/// cheap route whenever x lies in its domain.
fn bcd_circle(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    m: usize,
    xf: &CFloat,
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    let prec = cfg.prec();
    let lnq = cfg.ln_q();
    let one = CFloat::one(prec);
    if matches!(group, GroupType::B | GroupType::C) && xf.sub(&one).abs().to_f64() < 1e-6 {
        return Err(QError::DomainViolation(
            "x too close to 1 for the closed-contour form".into(),
        ));
    }

    let eps2 = group.epsilon().doubled();
    let mi = m as i64;
    let g: Vec<CFloat> = (1..=n)
        .map(|i| {
            let l2 = 2 * (lambda.part(i) + (n - i) as i64) + eps2;
            CFloat::from_float(
                (Float::with_val(prec, Float::with_val(prec, l2) * &lnq) / 2u32).exp(),
            )
        })
        .collect();
    let ginv: Vec<CFloat> = g.iter().map(|v| v.recip()).collect();
    let q_l1 = g[0].re.clone();
    let q_ml1 = ginv[0].re.clone();

    let c_z = Float::with_val(prec, &q_l1 + &q_ml1) / 2u32;
    let rho_z = Float::with_val(prec, &q_ml1 - &q_l1) / 2u32 + Float::with_val(prec, &q_l1) / 2u32;
    let rho_w = Float::with_val(prec, 2) * &q_ml1;

    // a = log_q x enters through z^{a+N−ε'}; the z-disc lies in the right
    // half-plane, so the principal branch is single-valued on it.
    let a = xf.ln().div_float(&lnq);
    let ze_shift = match group {
        GroupType::B => Float::with_val(prec, 2 * n as i64 - 1) / 2u32,
        GroupType::C | GroupType::D => Float::with_val(prec, n as i64 - 1),
    };
    let mut ze = a;
    ze.re += ze_shift;

    // trapezoid node counts from the contour-to-singularity ratio
    let ratio = (Float::with_val(prec, &rho_z / &q_l1) * 2u32).to_f64();
    let budget = (-(quad.tol.max(1e-14) * 0.1).ln()).max(20.0);
    let nz0 = ((ratio * budget * 1.2).ceil() as usize).max(48);
    if nz0 > 400_000 {
        return Err(QError::NonConvergedQuadrature(format!(
            "closed-contour quadrature needs about {nz0} nodes; use the strip form"
        )));
    }
    let nw0 = 64usize.max(2 * n + 2 * m + 8);

    let mut nz = nz0;
    let mut nw = nw0;
    let mut prev = circle_di(group, &g, &ginv, mi, n as i64, &ze, &c_z, &rho_z, &rho_w, nz, nw, prec);
    for _ in 0..3 {
        let cur = circle_di(
            group, &g, &ginv, mi, n as i64, &ze, &c_z, &rho_z, &rho_w, 2 * nz, 2 * nw, prec,
        );
        let diff = prev.dist(&cur);
        let scale = cur.abs().to_f64().max(1.0);
        if diff <= quad.tol * scale {
            let pref =
                bcd_prefactor(group, mi, xf, Tail::Finite((n - m - 1) as u64), false, cfg)?;
            return Ok(Scalar::Float(pref.mul(&cur)));
        }
        prev = cur;
        nz *= 2;
        nw *= 2;
        if nz > 1_600_000 {
            break;
        }
    }
    Err(QError::NonConvergedQuadrature(
        "closed-contour quadrature did not stabilize under node doubling".into(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn circle_di(
    group: GroupType,
    g: &[CFloat],
    ginv: &[CFloat],
    m: i64,
    n: i64,
    ze: &CFloat,
    c_z: &Float,
    rho_z: &Float,
    rho_w: &Float,
    n_z: usize,
    n_w: usize,
    prec: u32,
) -> CFloat {
    let one = CFloat::one(prec);
    // per-w data: base = (weight w) · w^{−pow} · ∏(w−g)(w−g⁻¹) · family factor,
    // aux = the family's w-power coupling term
    let wpow = match group {
        GroupType::B => -(n + m + 2),
        GroupType::C | GroupType::D => -(n + m + 1),
    };
    let wnodes = circle_nodes(n_w, prec);
    let mut wdat: Vec<(CFloat, CFloat, CFloat)> = Vec::with_capacity(n_w);
    for node in &wnodes {
        let w = node.mul_float(rho_w);
        let mut prod = w.powi(wpow).mul(&w);
        for i in 0..g.len() {
            prod = prod.mul(&w.sub(&g[i])).mul(&w.sub(&ginv[i]));
        }
        let aux = match group {
            GroupType::B => {
                prod = prod.mul(&w.sub(&one));
                w.powi(2 * m + 2)
            }
            GroupType::C => {
                prod = prod.mul(&one.sub(&w.powi(2 * m + 2)));
                CFloat::zero(prec)
            }
            GroupType::D => w.powi(2 * m + 1),
        };
        wdat.push((w, prod, aux));
    }

    let znodes = circle_nodes(n_z, prec);
    let mut acc = CFloat::zero(prec);
    for node in &znodes {
        let offset = node.mul_float(rho_z);
        let mut z = offset.clone();
        z.re += c_z;
        let zval = z.ln().mul(ze).exp();
        let mut az = zval.mul(&offset);
        for i in 0..g.len() {
            az = az.div(&z.sub(&g[i])).div(&z.sub(&ginv[i]));
        }
        if group == GroupType::B {
            az = az.div(&z.sub(&one));
        }
        for (w, base, aux) in &wdat {
            let denom = w.sub(&z);
            let coupling = match group {
                GroupType::B => z.sub(aux),
                GroupType::C => one.clone(),
                GroupType::D => z.add(aux),
            };
            acc = acc.add(&az.mul(base).mul(&coupling).div(&denom));
        }
    }
    acc.div_float(&Float::with_val(prec, (n_z * n_w) as u64))
}

/// The rank limit Φ_m^{y,G}(x; q): the strip form with the node products
/// extended to all of the doubly infinite exponent list n_i = y_i + i − 1 + ε
/// (truncated adaptively) and the x-dependent Pochhammer blocks taken to
/// infinite depth.
pub fn phiBCD(
    group: GroupType,
    y: &BoundaryPointBC,
    m: usize,
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

    if let Some(s2) = near_grid_point(group, &xf, &lnq, 1e-3) {
        if excluded_exponent(group, m as i64, s2, None) {
            return Err(QError::PoleNeighborhood(format!(
                "x within 1e-3 of the excluded point with doubled exponent {s2}"
            )));
        }
    }

    let eps2 = group.epsilon().doubled();
    let qf = cfg.q.to_f64();
    let abs_ln_x = xf.abs().ln().to_f64().abs();
    let lq = -qf.ln();
    let bound = (-(quad.tol * (1.0 - qf)).ln() + abs_ln_x.max(0.0)) / lq + 6.0;
    let mut kk = quad.product_truncation.max(1);
    let cap = quad.product_truncation * 8 + 2000;
    loop {
        let n_k = (y.value(kk as i64) + kk as i64 - 1) as f64 + eps2 as f64 / 2.0;
        if n_k >= bound {
            break;
        }
        kk += 1;
        if kk > cap {
            return Err(QError::NonConvergedQuadrature(
                "infinite-product truncation index exceeds the cap".into(),
            ));
        }
    }

    let g_roots: Vec<Float> = (1..=kk as i64)
        .map(|i| {
            let n2 = 2 * (y.value(i) + i - 1) + eps2;
            (Float::with_val(prec, Float::with_val(prec, n2) * &lnq) / 2u32).exp()
        })
        .collect();
    let si = integrand_doubled(family_of(group), &g_roots, m as i64, prec);
    let ctx = StripContext {
        lnx: xf.ln(),
        lnq: lnq.clone(),
        r: quad.r_shift,
        prec,
    };
    let brace = strip_brace(&si, &brace_singles(group, m as i64), &ctx, quad)?;
    let pref = bcd_prefactor(group, m as i64, &xf, Tail::Infinite, true, cfg)?;
    Ok(Scalar::Float(pref.mul(&brace)))
}

/// x + 1/x for each point, then the difference-product Vandermonde over the
/// orbit coordinates. Reports CoincidentOrbit when two points share an
/// orbit {x, 1/x}.
fn orbit_vandermonde(points: &[Scalar], cfg: &EvalConfig) -> Result<Scalar> {
    let one = cfg.one();
    let oc: Vec<Scalar> = points.iter().map(|p| p.add(&one.div(p))).collect();
    let mut v = one;
    for i in 0..oc.len() {
        for j in (i + 1)..oc.len() {
            let d = oc[i].sub(&oc[j]);
            let coincident = match &d {
                Scalar::Exact(r) => *r == 0,
                Scalar::Float(f) => f.abs().to_f64() < 1e-12,
            };
            if coincident {
                return Err(QError::CoincidentOrbit(format!(
                    "points {} and {} lie in one orbit {{x, 1/x}}",
                    i + 1,
                    j + 1
                )));
            }
            v = v.mul(&d);
        }
    }
    Ok(v)
}

/// c_{k,N}^G(q): the constant of the finite-rank multivariate determinant.
fn c_multivar_finite(group: GroupType, k: usize, n: usize, cfg: &EvalConfig) -> Scalar {
    let two_eps = group.epsilon().doubled();
    let mut c = cfg.one();
    for i in 1..=k as i64 {
        let num = qpochhammer(&cfg.q_int_power(i), (n - k) as u64, cfg).mul(&qpochhammer(
            &cfg.q_int_power(k as i64 + i - 1 + two_eps),
            (n - k) as u64,
            cfg,
        ));
        let den = qpochhammer(&cfg.q_int_power(i - 1 + two_eps), (i - 1) as u64, cfg)
            .mul(&qpochhammer(&cfg.q_int_power(1 - i), (i - 1) as u64, cfg))
            .mul(&qpochhammer(&cfg.q_int_power(1), (n as i64 - i) as u64, cfg))
            .mul(&qpochhammer(
                &cfg.q_int_power(2 * i - 1 + two_eps),
                (n as i64 - i) as u64,
                cfg,
            ));
        c = c.mul(&num).div(&den);
    }
    c
}

/// c_k^G(q): the constant of the limit determinant (the N → ∞ limit of
/// c_{k,N}^G).
fn c_multivar_limit(group: GroupType, k: usize, cfg: &EvalConfig) -> Scalar {
    let two_eps = group.epsilon().doubled();
    let mut c = cfg.one();
    for i in 1..=k as i64 {
        let den = qpochhammer(&cfg.q_int_power(i - 1 + two_eps), (i - 1) as u64, cfg)
            .mul(&qpochhammer(&cfg.q_int_power(1 - i), (i - 1) as u64, cfg))
            .mul(&qpochhammer(&cfg.q_int_power(1), (i - 1) as u64, cfg))
            .mul(&qpochhammer(
                &cfg.q_int_power(2 * (k as i64 - i) + 1 + two_eps),
                (i - 1) as u64,
                cfg,
            ));
        c = c.div(&den);
    }
    c
}

/// The column-j (1-based) Pochhammer coefficient attached to each entry:
/// (q^ε x, q^ε/x;q)_{j−1} (q^{j+ε} x, q^{j+ε}/x;q)_{k−j}.
fn entry_coefficient(
    group: GroupType,
    k: usize,
    j: usize,
    x: &Scalar,
    cfg: &EvalConfig,
) -> Result<Scalar> {
    let eps = group.epsilon();
    let q_eps = cfg.q_power(eps)?;
    let q_je = cfg.q_power(HalfInt::from_int(j as i64) + eps)?;
    let x_inv = cfg.one().div(x);
    Ok(qpochhammer(&q_eps.mul(x), (j - 1) as u64, cfg)
        .mul(&qpochhammer(&q_eps.mul(&x_inv), (j - 1) as u64, cfg))
        .mul(&qpochhammer(&q_je.mul(x), (k - j) as u64, cfg))
        .mul(&qpochhammer(&q_je.mul(&x_inv), (k - j) as u64, cfg)))
}

/// The principal orbit points q^ε, …, q^{k−1+ε}.
fn principal_orbit(group: GroupType, k: usize, cfg: &EvalConfig) -> Result<Vec<Scalar>> {
    (0..k)
        .map(|i| cfg.q_power(HalfInt::from_int(i as i64) + group.epsilon()))
        .collect()
}

/// Finite-rank multivariate determinant form:
///
/// ```text
///   c_{k,N}^G · V^s(q^ε,…,q^{k−1+ε}) / V^s(x_1,…,x_k) ·
///     det[ r_{j−1}(x_i) · coefficient_j(x_i) ]
/// ```
///
/// where r_{j−1} is the single-variable ratio with slot j−1 replaced.
/// Equals the direct ratio with slots 0..k−1 carrying x_1, …, x_k.
pub fn bcd_multivar_det(
    group: GroupType,
    lambda: &NonnegSignature,
    n: usize,
    k: usize,
    xs: &[Scalar],
    cfg: &EvalConfig,
) -> Result<Scalar> {
    if k == 0 || k > n || xs.len() != k {
        return Err(QError::InvalidConfig(format!(
            "need 1 ≤ k ≤ N and k points (got k={k}, N={n}, {} points)",
            xs.len()
        )));
    }
    check_shape(lambda, n, 0)?;
    for x in xs {
        if x.is_zero() {
            return Err(QError::ZeroPoint);
        }
    }
    let vs_x = orbit_vandermonde(xs, cfg)?;
    let vs_p = orbit_vandermonde(&principal_orbit(group, k, cfg)?, cfg)?;

    let mut rows = Vec::with_capacity(k);
    for x in xs {
        let mut row = Vec::with_capacity(k);
        for j in 1..=k {
            let r = bcd_direct_ratio(group, lambda, n, j - 1, x, cfg)?;
            let coef = entry_coefficient(group, k, j, x, cfg)?;
            row.push(r.mul(&coef));
        }
        rows.push(row);
    }
    let det = determinant(rows, &cfg.one());
    Ok(c_multivar_finite(group, k, n, cfg)
        .mul(&vs_p)
        .div(&vs_x)
        .mul(&det))
}

/// Multivariate limit:
///
/// ```text
///   c_k^G · V^s(q^ε,…,q^{k−1+ε}) / V^s(x_1,…,x_k) ·
///     det[ Φ_{j−1}^{y,G}(x_i) · coefficient_j(x_i) ]
/// ```
///
/// Entries whose Pochhammer coefficient vanishes to working precision are
/// zero regardless of the Φ factor, which is skipped there (the excluded
/// points of the single-variable function occur exactly under vanishing
/// coefficients).
pub fn phiBCD_multivar(
    group: GroupType,
    y: &BoundaryPointBC,
    k: usize,
    xs: &[Scalar],
    cfg: &EvalConfig,
    quad: &QuadratureSpec,
) -> Result<Scalar> {
    if cfg.mode != Mode::Float {
        return Err(QError::ExactModeUnsupported("limit-function quadrature"));
    }
    if k == 0 || xs.len() != k {
        return Err(QError::InvalidConfig(format!(
            "need k ≥ 1 and k points (got k={k}, {} points)",
            xs.len()
        )));
    }
    let prec = cfg.prec();
    for x in xs {
        check_off_cut(&x.to_cfloat(prec))?;
    }
    let vs_x = orbit_vandermonde(xs, cfg)?;
    let vs_p = orbit_vandermonde(&principal_orbit(group, k, cfg)?, cfg)?;

    let mut rows = Vec::with_capacity(k);
    for x in xs {
        let mut row = Vec::with_capacity(k);
        for j in 1..=k {
            let coef = entry_coefficient(group, k, j, x, cfg)?.to_cfloat(prec);
            if coef.abs().to_f64() < 1e-20 {
                row.push(CFloat::zero(prec));
                continue;
            }
            let phi = phiBCD(group, y, j - 1, x, cfg, quad)?.to_cfloat(prec);
            row.push(phi.mul(&coef));
        }
        rows.push(row);
    }
    let det = determinant_cfloat(rows);
    let pref = c_multivar_limit(group, k, cfg)
        .mul(&vs_p)
        .div(&vs_x)
        .to_cfloat(prec);
    Ok(Scalar::Float(pref.mul(&det)))
}
