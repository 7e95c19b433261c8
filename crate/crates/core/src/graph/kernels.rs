//! One-step and multi-step links of the branching graphs.
//!
//! Type A: the link from level n to level n−1 evaluates the lower character
//! on one of the two geometric alphabets (positive or negative powers of q,
//! by the sign steering that level) and normalizes by the upper character;
//! homogeneity reduces both alphabets to the principal one. The multi-step
//! link from level N to level k has a closed form through a skew Schur
//! determinant over the leftover alphabet.
//!
//! B/C/D: the link from level N+1 to level N multiplies the principally
//! specialized lower character by the one-variable skew character at the
//! removed point q^{N+ε}, normalized by the upper character.

use std::collections::BTreeMap;

use crate::arith::{EvalConfig, HalfInt, Scalar};
use crate::chars::schur::{schur_principal, skew_schur_alphabet};
use crate::chars::skewbc::bc_skew_char;
use crate::chars::weyl::bcd_principal;
use crate::chars::{type_a_lower_signatures, GroupType, NonnegSignature, Signature};
use crate::error::{QError, Result};

use super::{KernelRow, SignSequence};

/// One-step link of the type-A graph from the level of `lambda` (its length,
/// n+1 say) down to level n, for one steering sign:
///
/// * sign = −1: Λ(λ, μ) = s_μ(q, …, qⁿ) / s_λ(1, q, …, qⁿ)
///   = q^{|μ|} s_μ(1, …, q^{n−1}) / s_λ(1, …, qⁿ),
/// * sign = +1: Λ(λ, μ) = s_μ(q^{−1}, …, q^{−n}) / s_λ(1, q^{−1}, …, q^{−n})
///   = q^{n(|λ|−|μ|)} s_μ(1, …, q^{n−1}) / s_λ(1, …, qⁿ),
///
/// supported on the signatures μ interlaced below λ. Rows sum to one by the
/// branching rule in one extra variable.
pub fn kernel_a_step(lambda: &Signature, sign: i8, cfg: &EvalConfig) -> Result<KernelRow> {
    let lvl = lambda.len();
    if lvl == 0 {
        return Err(QError::BadShape(
            "one-step links need a signature of positive length".into(),
        ));
    }
    if sign != 1 && sign != -1 {
        return Err(QError::InvalidConfig(format!(
            "steering sign must be ±1, got {sign}"
        )));
    }
    let den = schur_principal(lambda, lvl, cfg)?;
    let mut row = KernelRow::new();
    for mu in type_a_lower_signatures(lambda) {
        let num = schur_principal(&mu, lvl - 1, cfg)?;
        let exponent = if sign > 0 {
            (lvl as i64 - 1) * (lambda.size() - mu.size())
        } else {
            mu.size()
        };
        let mass = cfg.q_int_power(exponent).mul(&num).div(&den);
        row.insert(mu, mass);
    }
    Ok(row)
}

/// One-step link of a B/C/D graph from level N+1 (the length of `lambda`)
/// down to level N:
///
/// ```text
///   Λ(λ, μ) = χ_μ(q^ε, …, q^{N−1+ε}) / χ_λ(q^ε, …, q^{N+ε}) · χ_{λ/μ}(q^{N+ε}),
/// ```
///
/// supported on the μ reachable through some equal-length intermediate label.
/// Rows sum to one by the branching rule in the removed variable. The odd
/// orthogonal family needs a half-integer power of q, so exact mode requires
/// a configured square root of q.
pub fn kernel_bc_step(
    group: GroupType,
    lambda: &NonnegSignature,
    cfg: &EvalConfig,
) -> Result<KernelRow> {
    let lvl = lambda.len();
    if lvl == 0 {
        return Err(QError::BadShape(
            "one-step links need a signature of positive length".into(),
        ));
    }
    let n = lvl - 1;
    let u = cfg.q_power(HalfInt::new_doubled(
        2 * n as i64 + group.epsilon().doubled(),
    ))?;
    let den = bcd_principal(group, lambda, lvl, cfg)?;
    let mut row = KernelRow::new();
    for mu in bc_lower_supports(lambda) {
        let skew = bc_skew_char(group, lambda, &mu, &u)?;
        if skew.is_zero() {
            continue;
        }
        let num = if n == 0 {
            cfg.one()
        } else {
            bcd_principal(group, &mu, n, cfg)?
        };
        let mass = num.mul(&skew).div(&den);
        row.insert((*mu).clone(), mass);
    }
    Ok(row)
}

/// All length-n nonnegative signatures μ reachable one level below λ (length
/// n+1) through an equal-length intermediate label: componentwise
/// λ_{i+2} ≤ μ_i ≤ λ_i, weakly decreasing. Enumerated in lexicographically
/// decreasing order.
pub fn bc_lower_supports(lambda: &NonnegSignature) -> Vec<NonnegSignature> {
    let n = lambda.len() - 1;
    let ranges: Vec<(i64, i64)> = (1..=n)
        .map(|i| (lambda.part(i + 2), lambda.part(i)))
        .collect();
    decreasing_box(&ranges)
        .into_iter()
        .map(|parts| {
            NonnegSignature::new(parts)
                .expect("clamped interlacing ranges yield nonnegative decreasing parts")
        })
        .collect()
}

/// All weakly decreasing integer tuples v with ranges[i].0 ≤ v_i ≤
/// ranges[i].1, in lexicographically decreasing order. The lower bounds must
/// themselves be weakly decreasing (true for interlacing boxes), so the
/// enumeration never dead-ends.
fn decreasing_box(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ranges.len());
    fn rec(ranges: &[(i64, i64)], idx: usize, prev: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if idx == ranges.len() {
            out.push(cur.clone());
            return;
        }
        let (lo, hi) = ranges[idx];
        let hi = hi.min(prev);
        let mut v = hi;
        while v >= lo {
            cur.push(v);
            rec(ranges, idx + 1, v, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    rec(ranges, 0, i64::MAX, &mut cur, &mut out);
    out
}

/// Multi-step link of the type-A graph from level N (the length of `lambda`)
/// down to level k < N, in closed form: with b = #{minus signs in k+1..N}
/// and the leftover alphabet A = {q^j : 0 ≤ j ≤ N−1} ∖ {q^b, …, q^{b+k−1}},
///
/// ```text
///   Λ(λ, μ) = s_μ(1, …, q^{k−1}) · q^{b·|μ|} · s_{λ/μ}(A) / s_λ(1, …, q^{N−1}).
/// ```
///
/// The skew factor is a Jacobi–Trudi determinant after shifting both labels
/// by a common constant into nonnegative territory and zero-padding μ. The
/// row equals the composition of the one-step links with signs at indices
/// N, N−1, …, k+1, and is supported on the μ with λ_{i+N−k} ≤ μ_i ≤ λ_i.
pub fn kernel_a_multi_exact(
    lambda: &Signature,
    k: usize,
    sigma: &SignSequence,
    cfg: &EvalConfig,
) -> Result<KernelRow> {
    let n = lambda.len();
    if k == 0 || k >= n {
        return Err(QError::InvalidConfig(format!(
            "multi-step links need 1 ≤ k < N (got k={k}, N={n})"
        )));
    }
    let b = sigma.minus_count_between(k as u64, n as u64) as i64;
    let mut alphabet = Vec::with_capacity(n - k);
    for j in 0..n as i64 {
        if j < b || j >= b + k as i64 {
            alphabet.push(cfg.q_int_power(j));
        }
    }
    let den = schur_principal(lambda, n, cfg)?;
    // Negative parts are handled by shifting both labels into nonnegative
    // territory; the skew evaluation picks up (∏ A)^shift, divided out below.
    let shift = (-lambda.part(n)).max(0);
    let lam_nonneg = NonnegSignature::from_signature(lambda.shift(shift))
        .expect("shift by the most negative part makes the label nonnegative");
    let alphabet_log_q = (n as i64) * (n as i64 - 1) / 2
        - (k as i64) * (k as i64 - 1) / 2
        - (k as i64) * b;
    let shift_fix = cfg.q_int_power(-shift * alphabet_log_q);
    let one = cfg.one();

    let ranges: Vec<(i64, i64)> = (1..=k)
        .map(|i| (lambda.part(i + n - k), lambda.part(i)))
        .collect();
    let mut row = KernelRow::new();
    for parts in decreasing_box(&ranges) {
        let mu = Signature::new(parts).expect("box enumeration yields decreasing parts");
        let mu_nonneg = NonnegSignature::from_signature(mu.shift(shift))
            .expect("the common shift keeps the lower label nonnegative");
        let skew = skew_schur_alphabet(&lam_nonneg, &mu_nonneg, &alphabet, &one)?;
        if skew.is_zero() {
            continue;
        }
        let mass = schur_principal(&mu, k, cfg)?
            .mul(&cfg.q_int_power(b * mu.size()))
            .mul(&skew)
            .mul(&shift_fix)
            .div(&den);
        row.insert(mu, mass);
    }
    Ok(row)
}

/// Multi-step link computed by composing the one-step links from level N
/// down to level k, caching each one-step row so shared intermediate labels
/// are expanded once. Agrees with [`kernel_a_multi_exact`] but avoids the
/// large Jacobi–Trudi determinants, which makes it the practical choice for
/// deep towers (N in the tens) whose intermediate supports stay small.
pub fn kernel_a_multi_via_steps(
    lambda: &Signature,
    k: usize,
    sigma: &SignSequence,
    cfg: &EvalConfig,
) -> Result<KernelRow> {
    let n = lambda.len();
    if k == 0 || k >= n {
        return Err(QError::InvalidConfig(format!(
            "multi-step links need 1 ≤ k < N (got k={k}, N={n})"
        )));
    }
    let mut row = KernelRow::new();
    row.insert(lambda.clone(), cfg.one());
    let mut cache: BTreeMap<Signature, KernelRow> = BTreeMap::new();
    for level in (k + 1..=n).rev() {
        let sign = sigma.sign(level as u64);
        row = row.push_forward(|lam| {
            if let Some(hit) = cache.get(lam) {
                return Ok(hit.clone());
            }
            let step = kernel_a_step(lam, sign, cfg)?;
            cache.insert(lam.clone(), step.clone());
            Ok(step)
        })?;
        cache.clear();
    }
    Ok(row)
}
