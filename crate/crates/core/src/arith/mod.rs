//! Scalar arithmetic layer: exact rationals, high-precision complex floats,
//! half-integers, q-powers, and q-Pochhammer symbols.
//!
//! Every quantity in this crate is computed through the [`Scalar`] type,
//! which is either an exact rational number or an arbitrary-precision
//! complex float. The evaluation mode, the deformation parameter q, and an
//! optional exact square root of q are carried by [`EvalConfig`].

pub mod cfloat;
pub mod det;
pub mod poly;

pub use cfloat::CFloat;

use crate::error::{QError, Result};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::fmt;

/// Half-integers n/2, stored as the doubled value to stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    /// Build from the doubled value: `new_doubled(3)` is 3/2.
    pub fn new_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(&self) -> i64 {
        self.doubled
    }

    pub fn is_integer(&self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from((self.doubled, 2))
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Evaluation mode: exact rational arithmetic or complex floats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Shared evaluation context: the parameter q ∈ (0, 1), an optional exact
/// square root of q (required for exact half-integer powers), the float
/// precision, and the mode.
#[derive(Clone, Debug)]
pub struct EvalConfig {
    pub q: Rational,
    pub sqrt_q: Option<Rational>,
    pub float_precision_bits: u32,
    pub mode: Mode,
}

/// Default working precision in bits for float mode.
pub const DEFAULT_PREC: u32 = 256;

impl EvalConfig {
    fn validate(q: &Rational, sqrt_q: &Option<Rational>, bits: u32) -> Result<()> {
        if *q <= 0 || *q >= 1 {
            return Err(QError::InvalidConfig(format!(
                "q must lie strictly between 0 and 1, got {q}"
            )));
        }
        if let Some(s) = sqrt_q {
            if *s <= 0 {
                return Err(QError::InvalidConfig(format!(
                    "sqrt_q must be positive, got {s}"
                )));
            }
            let sq = Rational::from(s * s);
            if sq != *q {
                return Err(QError::InvalidConfig(format!(
                    "sqrt_q^2 = {sq} does not equal q = {q}"
                )));
            }
        }
        if bits < 16 {
            return Err(QError::InvalidConfig(format!(
                "float precision must be at least 16 bits, got {bits}"
            )));
        }
        Ok(())
    }

    /// Exact mode without a square root of q.
    pub fn exact(q: Rational) -> Result<Self> {
        Self::validate(&q, &None, DEFAULT_PREC)?;
        Ok(EvalConfig {
            q,
            sqrt_q: None,
            float_precision_bits: DEFAULT_PREC,
            mode: Mode::Exact,
        })
    }

    /// Exact mode with an exact rational square root of q.
    pub fn exact_with_sqrt(q: Rational, sqrt_q: Rational) -> Result<Self> {
        let s = Some(sqrt_q);
        Self::validate(&q, &s, DEFAULT_PREC)?;
        Ok(EvalConfig {
            q,
            sqrt_q: s,
            float_precision_bits: DEFAULT_PREC,
            mode: Mode::Exact,
        })
    }

    /// Float mode at the given precision.
    pub fn float_mode(q: Rational, float_precision_bits: u32) -> Result<Self> {
        Self::validate(&q, &None, float_precision_bits)?;
        Ok(EvalConfig {
            q,
            sqrt_q: None,
            float_precision_bits,
            mode: Mode::Float,
        })
    }

    /// Copy of this configuration switched to float mode.
    pub fn to_float(&self) -> Self {
        let mut c = self.clone();
        c.mode = Mode::Float;
        c
    }

    pub fn prec(&self) -> u32 {
        self.float_precision_bits
    }

    /// q as a Float at the working precision.
    pub fn q_float(&self) -> Float {
        Float::with_val(self.float_precision_bits, &self.q)
    }

    /// ln q (negative) at the working precision.
    pub fn ln_q(&self) -> Float {
        self.q_float().ln()
    }

    /// A rational value as a [`Scalar`] in the current mode.
    pub fn scalar_from_rational(&self, r: &Rational) -> Scalar {
        match self.mode {
            Mode::Exact => Scalar::Exact(r.clone()),
            Mode::Float => Scalar::Float(CFloat::from_rational(self.float_precision_bits, r)),
        }
    }

    pub fn scalar_from_int(&self, n: i64) -> Scalar {
        self.scalar_from_rational(&Rational::from(n))
    }

    pub fn one(&self) -> Scalar {
        self.scalar_from_int(1)
    }

    pub fn zero(&self) -> Scalar {
        self.scalar_from_int(0)
    }

    /// q^c for a half-integer exponent c.
    ///
    /// In exact mode, a half-integer (non-integer) exponent requires
    /// `sqrt_q`; otherwise [`QError::HalfPowerUnavailable`] is returned.
    pub fn q_power(&self, c: HalfInt) -> Result<Scalar> {
        match self.mode {
            Mode::Exact => {
                if let Some(n) = c.as_integer() {
                    Ok(Scalar::Exact(rat_pow(&self.q, n)))
                } else if let Some(s) = &self.sqrt_q {
                    Ok(Scalar::Exact(rat_pow(s, c.doubled())))
                } else {
                    Err(QError::HalfPowerUnavailable)
                }
            }
            Mode::Float => {
                let prec = self.float_precision_bits;
                let f = if let Some(n) = c.as_integer() {
                    float_powi(&self.q_float(), n)
                } else {
                    let sq = match &self.sqrt_q {
                        Some(s) => Float::with_val(prec, s),
                        None => self.q_float().sqrt(),
                    };
                    float_powi(&sq, c.doubled())
                };
                Ok(Scalar::Float(CFloat::from_float(f)))
            }
        }
    }

    /// q^n for an integer exponent (never fails).
    pub fn q_int_power(&self, n: i64) -> Scalar {
        self.q_power(HalfInt::from_int(n))
            .expect("integer power of q cannot fail")
    }
}

/// r^e for a rational base and integer exponent. Panics on 0^negative.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::from(1);
    }
    let ue = u32::try_from(e.unsigned_abs()).expect("exponent too large");
    let num = Integer::from(r.numer().pow(ue));
    let den = Integer::from(r.denom().pow(ue));
    if e > 0 {
        Rational::from((num, den))
    } else {
        assert!(num != 0, "zero base with negative exponent");
        Rational::from((den, num))
    }
}

/// f^n by binary exponentiation at f's precision.
pub fn float_powi(f: &Float, n: i64) -> Float {
    let prec = f.prec();
    if n == 0 {
        return Float::with_val(prec, 1);
    }
    let mut base = if n < 0 {
        Float::with_val(prec, f.recip_ref())
    } else {
        f.clone()
    };
    let mut e = n.unsigned_abs();
    let mut acc = Float::with_val(prec, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = Float::with_val(prec, (&base).pow(2u32));
        }
    }
    acc
}

/// A number in the current evaluation mode: exact rational or complex float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rational),
    Float(CFloat),
}

impl Scalar {
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::Exact(Rational::new()),
            Scalar::Float(f) => Scalar::Float(CFloat::new(f.prec())),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::Exact(Rational::from(1)),
            Scalar::Float(f) => Scalar::Float(CFloat::one(f.prec())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => *r == 0,
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Convert to a complex float at the given precision (no-op reuse for
    /// floats, which keep their own precision).
    pub fn to_cfloat(&self, prec: u32) -> CFloat {
        match self {
            Scalar::Exact(r) => CFloat::from_rational(prec, r),
            Scalar::Float(f) => f.clone(),
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> Option<(CFloat, CFloat)> {
        match (a, b) {
            (Scalar::Exact(_), Scalar::Exact(_)) => None,
            (Scalar::Float(x), Scalar::Exact(r)) => {
                Some((x.clone(), CFloat::from_rational(x.prec(), r)))
            }
            (Scalar::Exact(r), Scalar::Float(y)) => {
                Some((CFloat::from_rational(y.prec(), r), y.clone()))
            }
            (Scalar::Float(x), Scalar::Float(y)) => Some((x.clone(), y.clone())),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match Self::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(Rational::from(a + b)),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Float(a.add(&b)),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        match Self::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(Rational::from(a - b)),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Float(a.sub(&b)),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match Self::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(Rational::from(a * b)),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Float(a.mul(&b)),
        }
    }

    /// Division; panics on an exactly zero divisor (callers must check).
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        match Self::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(Rational::from(a / b)),
                _ => unreachable!(),
            },
            Some((a, b)) => Scalar::Float(a.div(&b)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(Rational::from(-r)),
            Scalar::Float(f) => Scalar::Float(f.neg()),
        }
    }

    pub fn recip(&self) -> Scalar {
        self.one_like().div(self)
    }

    /// Integer power; panics on 0^negative.
    pub fn pow_i64(&self, e: i64) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(rat_pow(r, e)),
            Scalar::Float(f) => Scalar::Float(f.powi(e)),
        }
    }

    /// |self| as f64, for diagnostics and tolerance checks.
    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().abs(),
            Scalar::Float(f) => f.abs().to_f64(),
        }
    }

    /// |self − rhs| as f64.
    pub fn dist(&self, rhs: &Scalar) -> f64 {
        self.sub(rhs).abs_f64()
    }

    /// Exact equality (mode-aware: exact compares rationals, float compares
    /// both parts bit-for-bit).
    pub fn eq_exact(&self, rhs: &Scalar) -> bool {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a.re == b.re && a.im == b.im,
            _ => false,
        }
    }
}

/// Significant decimal digits representable at a binary precision.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(c) => {
                let digits = decimal_digits(c.prec());
                if c.im.is_zero() {
                    write!(f, "{}", CFloat::part_to_decimal(&c.re, digits))
                } else {
                    write!(
                        f,
                        "[{}, {}]",
                        CFloat::part_to_decimal(&c.re, digits),
                        CFloat::part_to_decimal(&c.im, digits)
                    )
                }
            }
        }
    }
}

/// Finite q-Pochhammer symbol (a; q)_n = ∏_{i=0}^{n−1} (1 − a q^i).
pub fn qpochhammer(a: &Scalar, n: u64, cfg: &EvalConfig) -> Scalar {
    let one = cfg.one();
    let q = cfg.scalar_from_rational(&cfg.q);
    let mut acc = one.clone();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc.mul(&one.sub(&aq));
        aq = aq.mul(&q);
    }
    acc
}

/// Product of finite q-Pochhammer symbols (a_1, …, a_k; q)_n.
pub fn qpochhammer_multi(args: &[Scalar], n: u64, cfg: &EvalConfig) -> Scalar {
    let mut acc = cfg.one();
    for a in args {
        acc = acc.mul(&qpochhammer(a, n, cfg));
    }
    acc
}

/// Infinite q-Pochhammer symbol (a; q)_∞, float mode only.
///
/// The product is truncated once the remaining factors are within the
/// working precision of 1; exact mode returns
/// [`QError::ExactModeUnsupported`] because the value is irrational.
pub fn qpochhammer_inf(a: &Scalar, cfg: &EvalConfig) -> Result<Scalar> {
    if cfg.mode == Mode::Exact {
        return Err(QError::ExactModeUnsupported("qpochhammer_inf"));
    }
    let prec = cfg.float_precision_bits;
    let one = CFloat::one(prec);
    let q = Float::with_val(prec, &cfg.q);
    // tail bound: |log ∏_{k≥K}(1 − a q^k)| ≤ 2 |a| q^K / (1 − q) once
    // |a| q^K ≤ 1/2, so stop when |a| q^K / (1 − q) < 2^{−prec−8}
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec as i32) + 8)));
    let one_minus_q = Float::with_val(prec, 1 - &q);
    let mut acc = one.clone();
    let mut aq = a.to_cfloat(prec);
    let mut iter: u64 = 0;
    loop {
        let bound = aq.abs() / &one_minus_q;
        if bound < tol {
            break;
        }
        acc = acc.mul(&one.sub(&aq));
        aq = aq.mul_float(&q);
        iter += 1;
        if iter > 4_000_000 {
            return Err(QError::NonConvergedQuadrature(
                "infinite q-Pochhammer product did not converge".into(),
            ));
        }
    }
    Ok(Scalar::Float(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_half_exact() -> EvalConfig {
        EvalConfig::exact(Rational::from((1, 2))).unwrap()
    }

    fn q_quarter_exact_sqrt() -> EvalConfig {
        EvalConfig::exact_with_sqrt(Rational::from((1, 4)), Rational::from((1, 2))).unwrap()
    }

    fn q_half_float(prec: u32) -> EvalConfig {
        EvalConfig::float_mode(Rational::from((1, 2)), prec).unwrap()
    }

    #[test]
    fn halfint_basics() {
        let a = HalfInt::from_int(3);
        let b = HalfInt::new_doubled(5); // 5/2
        assert!(a.is_integer());
        assert_eq!(a.as_integer(), Some(3));
        assert!(!b.is_integer());
        assert_eq!((a + b).doubled(), 11);
        assert_eq!((a - b).doubled(), 1);
        assert_eq!((-b).doubled(), -5);
        assert_eq!(format!("{a}"), "3");
        assert_eq!(format!("{b}"), "5/2");
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::exact(Rational::from(1)).is_err());
        assert!(EvalConfig::exact(Rational::from(0)).is_err());
        assert!(EvalConfig::exact(Rational::from((3, 2))).is_err());
        assert!(
            EvalConfig::exact_with_sqrt(Rational::from((1, 2)), Rational::from((1, 2))).is_err()
        );
        assert!(q_quarter_exact_sqrt().q == Rational::from((1, 4)));
    }

    #[test]
    fn q_power_integer_and_half() {
        let cfg = q_half_exact();
        let v = cfg.q_power(HalfInt::from_int(3)).unwrap();
        assert_eq!(v.as_rational().unwrap(), &Rational::from((1, 8)));
        let v = cfg.q_power(HalfInt::from_int(-2)).unwrap();
        assert_eq!(v.as_rational().unwrap(), &Rational::from(4));
        // half powers of 1/2 are irrational: exact mode must refuse
        assert!(matches!(
            cfg.q_power(HalfInt::HALF),
            Err(QError::HalfPowerUnavailable)
        ));
        // ... but work when sqrt_q is supplied
        let cfg4 = q_quarter_exact_sqrt();
        let v = cfg4.q_power(HalfInt::new_doubled(3)).unwrap(); // (1/4)^{3/2} = 1/8
        assert_eq!(v.as_rational().unwrap(), &Rational::from((1, 8)));
        // float mode: (1/2)^{1/2}
        let cfgf = q_half_float(128);
        let v = cfgf.q_power(HalfInt::HALF).unwrap();
        let expect = 0.5f64.sqrt();
        assert!((v.abs_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn q_power_additivity_random() {
        let cfg = q_quarter_exact_sqrt();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let pa = cfg.q_power(HalfInt::new_doubled(a)).unwrap();
                let pb = cfg.q_power(HalfInt::new_doubled(b)).unwrap();
                let pab = cfg.q_power(HalfInt::new_doubled(a + b)).unwrap();
                assert!(pa.mul(&pb).eq_exact(&pab));
            }
        }
    }

    #[test]
    fn scalar_arithmetic_and_promotion() {
        let cfg = q_half_float(128);
        let e = Scalar::Exact(Rational::from((2, 3)));
        let f = cfg.scalar_from_rational(&Rational::from((1, 3)));
        let s = e.add(&f);
        assert!(matches!(s, Scalar::Float(_)));
        assert!((s.abs_f64() - 1.0).abs() < 1e-30);
        let p = e.pow_i64(-2);
        assert_eq!(p.as_rational().unwrap(), &Rational::from((9, 4)));
        assert!(e.sub(&e).is_zero());
        assert_eq!(
            e.div(&Scalar::Exact(Rational::from((1, 3))))
                .as_rational()
                .unwrap(),
            &Rational::from(2)
        );
    }

    #[test]
    fn scalar_display() {
        assert_eq!(format!("{}", Scalar::Exact(Rational::from((-3, 4)))), "-3/4");
        assert_eq!(format!("{}", Scalar::Exact(Rational::from(7))), "7");
    }

    #[test]
    fn pochhammer_finite_exact() {
        let cfg = q_half_exact();
        // (a; q)_3 = (1−a)(1−aq)(1−aq²) at a = 1/2, q = 1/2:
        // (1/2)(3/4)(7/8) = 21/64
        let a = Scalar::Exact(Rational::from((1, 2)));
        let v = qpochhammer(&a, 3, &cfg);
        assert_eq!(v.as_rational().unwrap(), &Rational::from((21, 64)));
        assert!(qpochhammer(&a, 0, &cfg).eq_exact(&cfg.one()));
    }

    #[test]
    fn pochhammer_splitting() {
        // (a; q)_{m+n} = (a; q)_m · (a q^m; q)_n
        let cfg = q_half_exact();
        let a = Scalar::Exact(Rational::from((3, 5)));
        for m in 0u64..5 {
            for n in 0u64..5 {
                let lhs = qpochhammer(&a, m + n, &cfg);
                let am = a.mul(&cfg.q_int_power(m as i64));
                let rhs = qpochhammer(&a, m, &cfg).mul(&qpochhammer(&am, n, &cfg));
                assert!(lhs.eq_exact(&rhs));
            }
        }
    }

    #[test]
    fn pochhammer_inf_mode_and_value() {
        let cfg = q_half_exact();
        let a = Scalar::Exact(Rational::from((1, 2)));
        assert!(matches!(
            qpochhammer_inf(&a, &cfg),
            Err(QError::ExactModeUnsupported(_))
        ));
        let cfgf = q_half_float(256);
        // Euler function φ(1/2) = (1/2; 1/2)_∞ ≈ 0.2887880950866...
        let q = cfgf.scalar_from_rational(&Rational::from((1, 2)));
        let v = qpochhammer_inf(&q, &cfgf).unwrap();
        assert!((v.abs_f64() - 0.288788095086602421).abs() < 1e-15);
        // consistency: (a;q)_∞ = (a;q)_5 (aq^5;q)_∞
        let a5 = q.mul(&cfgf.q_int_power(5));
        let lhs = qpochhammer_inf(&q, &cfgf).unwrap();
        let rhs = qpochhammer(&q, 5, &cfgf).mul(&qpochhammer_inf(&a5, &cfgf).unwrap());
        assert!(lhs.dist(&rhs) < 1e-70);
    }

    #[test]
    fn float_powi_matches_rational() {
        let f = Float::with_val(192, Rational::from((3, 7)));
        let direct = float_powi(&f, 11);
        let exact = rat_pow(&Rational::from((3, 7)), 11);
        let diff = (direct - Float::with_val(192, &exact)).abs();
        assert!(diff.to_f64() < 1e-50);
        let inv = float_powi(&Float::with_val(192, Rational::from((3, 7))), -3);
        let exact_inv = rat_pow(&Rational::from((3, 7)), -3);
        assert!((inv.to_f64() - exact_inv.to_f64()).abs() < 1e-10);
    }
}
