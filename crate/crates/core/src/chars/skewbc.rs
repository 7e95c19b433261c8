//! One-variable skew characters of the deformed families, defined as sums
//! over intermediate labels with family-specific multiplicities.

use super::{GroupType, NonnegSignature};
use crate::arith::Scalar;
use crate::error::{QError, Result};

/// All intermediate labels ν ∈ 𝔾𝕋⁺_{N+1} with λ ≽ ν (equal-length
/// interlacing) and ν ≽ μ (one-step interlacing), for λ ∈ 𝔾𝕋⁺_{N+1} and
/// μ ∈ 𝔾𝕋⁺_N. The componentwise ranges are
/// ν_i ∈ [max(λ_{i+1}, μ_i), min(λ_i, μ_{i−1})] with μ_0 = +∞, μ_{N+1} = 0.
pub fn bc_skew_supports(
    lambda: &NonnegSignature,
    mu: &NonnegSignature,
) -> Result<Vec<NonnegSignature>> {
    let n = mu.len();
    if lambda.len() != n + 1 {
        return Err(QError::LengthMismatch(format!(
            "skew labels need lengths (N+1, N), got ({}, {})",
            lambda.len(),
            n
        )));
    }
    let mut ranges = Vec::with_capacity(n + 1);
    for i in 1..=(n + 1) {
        let lo = lambda.part(i + 1).max(if i <= n { mu.part(i) } else { 0 });
        let hi = if i >= 2 {
            lambda.part(i).min(mu.part(i - 1))
        } else {
            lambda.part(i)
        };
        if lo > hi {
            return Ok(Vec::new());
        }
        ranges.push((lo, hi));
    }
    let mut out = Vec::new();
    let mut current: Vec<i64> = ranges.iter().map(|&(_, hi)| hi).collect();
    loop {
        out.push(
            NonnegSignature::new(current.clone())
                .expect("interval interlacing yields weakly decreasing nonnegative parts"),
        );
        let mut idx = ranges.len();
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            if current[idx] > ranges[idx].0 {
                current[idx] -= 1;
                for j in (idx + 1)..ranges.len() {
                    current[j] = ranges[j].1;
                }
                break;
            }
            current[idx] = ranges[idx].1;
        }
    }
}

/// Multiplicity of the intermediate label ν in the one-variable skew
/// character, as a scalar in u:
///
/// * odd orthogonal: 1 if ν_{N+1} = 0, else 1 + u^{−1};
/// * symplectic: 1;
/// * even orthogonal: 0 if 0 < ν_{N+1} < min(μ_N, λ_{N+1}); 2 if both λ
///   and μ have exactly N positive parts; otherwise 1. (The first two
///   conditions are mutually exclusive.)
pub fn tau_weight(
    group: GroupType,
    u: &Scalar,
    lambda: &NonnegSignature,
    nu: &NonnegSignature,
    mu: &NonnegSignature,
) -> Scalar {
    let one = u.one_like();
    let n = mu.len();
    match group {
        GroupType::B => {
            if nu.part(n + 1) == 0 {
                one
            } else {
                one.add(&u.recip())
            }
        }
        GroupType::C => one,
        GroupType::D => {
            let tail = nu.part(n + 1);
            // μ_0 = +∞: for an empty μ the cap is λ_1 alone
            let cap = if n == 0 {
                lambda.part(1)
            } else {
                mu.part(n).min(lambda.part(n + 1))
            };
            if tail > 0 && tail < cap {
                return one.zero_like();
            }
            if lambda.positive_count() == n && mu.positive_count() == n {
                return one.add(&one);
            }
            one
        }
    }
}

/// One-variable skew character χ_{λ/μ}(u) = Σ_ν τ(u; λ, ν, μ) u^{2|ν|−|λ|−|μ|}.
pub fn bc_skew_char(
    group: GroupType,
    lambda: &NonnegSignature,
    mu: &NonnegSignature,
    u: &Scalar,
) -> Result<Scalar> {
    if u.is_zero() {
        return Err(QError::ZeroPoint);
    }
    let base = lambda.size() + mu.size();
    let mut acc = u.zero_like();
    for nu in bc_skew_supports(lambda, mu)? {
        let tau = tau_weight(group, u, lambda, &nu, mu);
        if tau.is_zero() {
            continue;
        }
        let term = tau.mul(&u.pow_i64(2 * nu.size() - base));
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::weyl::{bcd_eval, CharPoint};
    use rug::Rational;

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::Exact(Rational::from((n, d)))
    }

    fn nsig(parts: &[i64]) -> NonnegSignature {
        NonnegSignature::new(parts.to_vec()).unwrap()
    }

    /// All μ ∈ 𝔾𝕋⁺_n with μ_i ≤ cap_i (weakly decreasing enumeration).
    fn all_bounded(n: usize, caps: &[i64]) -> Vec<NonnegSignature> {
        fn rec(i: usize, n: usize, caps: &[i64], prev: i64, cur: &mut Vec<i64>, out: &mut Vec<NonnegSignature>) {
            if i == n {
                out.push(NonnegSignature::new(cur.clone()).unwrap());
                return;
            }
            let hi = caps[i].min(prev);
            for v in (0..=hi).rev() {
                cur.push(v);
                rec(i + 1, n, caps, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, caps, i64::MAX, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn hand_checked_small_skews() {
        let u = ex(2, 3);
        // symplectic, λ = (1,0), μ = (0): u + 1/u
        let v = bc_skew_char(GroupType::C, &nsig(&[1, 0]), &nsig(&[0]), &u).unwrap();
        assert!(v.eq_exact(&u.add(&u.recip())));
        // odd orthogonal, λ = (1,0), μ = (0): both ν have last part 0 → u + 1/u
        let v = bc_skew_char(GroupType::B, &nsig(&[1, 0]), &nsig(&[0]), &u).unwrap();
        assert!(v.eq_exact(&u.add(&u.recip())));
        // even orthogonal, λ = (1,1), μ = (1): u + 1/u
        let v = bc_skew_char(GroupType::D, &nsig(&[1, 1]), &nsig(&[1]), &u).unwrap();
        assert!(v.eq_exact(&u.add(&u.recip())));
        // even orthogonal doubling: λ = (1,1,0), μ = (1,1) → single ν, weight 2
        let v = bc_skew_char(GroupType::D, &nsig(&[1, 1, 0]), &nsig(&[1, 1]), &u).unwrap();
        assert!(v.eq_exact(&ex(2, 1)));
    }

    #[test]
    fn inversion_symmetry_in_u() {
        let u = ex(3, 5);
        let ui = u.recip();
        for g in GroupType::ALL {
            for (lam, mu) in [
                (nsig(&[2, 1, 0]), nsig(&[1, 0])),
                (nsig(&[3, 1, 1]), nsig(&[2, 1])),
                (nsig(&[2, 2, 0]), nsig(&[2, 0])),
            ] {
                let a = bc_skew_char(g, &lam, &mu, &u).unwrap();
                let b = bc_skew_char(g, &lam, &mu, &ui).unwrap();
                assert!(a.eq_exact(&b), "{g}: skew not symmetric at λ={lam}, μ={mu}");
            }
        }
    }

    #[test]
    fn branching_reconstructs_characters() {
        // χ_λ(x₁, x₂, u) = Σ_μ χ_{λ/μ}(u) χ_μ(x₁, x₂) for every family;
        // all points are squares of rationals so the odd family stays exact
        let x = [ex(1, 9), ex(4, 49)];
        let u = ex(9, 16);
        let sqrts = [ex(1, 3), ex(2, 7), ex(3, 4)];
        for g in GroupType::ALL {
            for lam in [nsig(&[2, 1, 0]), nsig(&[1, 1, 1]), nsig(&[3, 2, 1]), nsig(&[2, 0, 0])] {
                let pts3 = vec![
                    CharPoint::with_sqrt(x[0].clone(), sqrts[0].clone()).unwrap(),
                    CharPoint::with_sqrt(x[1].clone(), sqrts[1].clone()).unwrap(),
                    CharPoint::with_sqrt(u.clone(), sqrts[2].clone()).unwrap(),
                ];
                let x2 = pts3[..2].to_vec();
                let lhs = bcd_eval(g, &lam, &pts3).unwrap();
                let mut rhs = lhs.zero_like();
                let caps = [lam.part(1), lam.part(2)];
                for mu in all_bounded(2, &caps) {
                    let w = bc_skew_char(g, &lam, &mu, &u).unwrap();
                    if w.is_zero() {
                        continue;
                    }
                    rhs = rhs.add(&w.mul(&bcd_eval(g, &mu, &x2).unwrap()));
                }
                assert!(lhs.eq_exact(&rhs), "{g}: branching failed at λ = {lam}");
            }
        }
    }

    #[test]
    fn support_enumeration_is_consistent() {
        use crate::chars::{interlaces, InterlaceKind};
        let lam = nsig(&[3, 1, 0]);
        let mu = nsig(&[2, 1]);
        let nus = bc_skew_supports(&lam, &mu).unwrap();
        assert!(!nus.is_empty());
        for nu in &nus {
            assert!(interlaces(InterlaceKind::BcSameLength, &lam, nu).unwrap());
            assert!(interlaces(InterlaceKind::TypeA, nu, &mu).unwrap());
        }
        // exhaustive cross-check of the count
        let mut count = 0;
        for a in 0..=3i64 {
            for b in 0..=a.min(3) {
                for c in 0..=b {
                    let nu = nsig(&[a, b, c]);
                    if interlaces(InterlaceKind::BcSameLength, &lam, &nu).unwrap()
                        && interlaces(InterlaceKind::TypeA, &nu, &mu).unwrap()
                    {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(nus.len(), count);
    }
}
