//! Arbitrary-precision complex floating-point numbers on top of MPFR reals.
//!
//! The representation is a plain (re, im) pair of [`rug::Float`] values of
//! equal precision. Only the operations needed by this crate are provided;
//! all transcendental functions use the principal branch with the cut along
//! the negative real axis.

use rug::float::Round;
use rug::{Float, Rational};

/// Complex number with arbitrary-precision real and imaginary parts.
#[derive(Clone, Debug)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    /// Zero at the given precision.
    pub fn new(prec: u32) -> Self {
        CFloat {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    /// Working precision in bits (shared by both parts).
    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(prec)
    }

    pub fn one(prec: u32) -> Self {
        CFloat {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        CFloat {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_float(re: Float) -> Self {
        let prec = re.prec();
        CFloat {
            re,
            im: Float::new(prec),
        }
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        CFloat {
            re: Float::with_val(prec, r),
            im: Float::new(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CFloat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        CFloat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CFloat {
            re: self.re.clone() + &rhs.re,
            im: self.im.clone() + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        CFloat {
            re: self.re.clone() - &rhs.re,
            im: self.im.clone() - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        CFloat { re, im }
    }

    pub fn mul_float(&self, rhs: &Float) -> Self {
        CFloat {
            re: self.re.clone() * rhs,
            im: self.im.clone() * rhs,
        }
    }

    pub fn div_float(&self, rhs: &Float) -> Self {
        CFloat {
            re: self.re.clone() / rhs,
            im: self.im.clone() / rhs,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let norm = rhs.re.clone() * &rhs.re + rhs.im.clone() * &rhs.im;
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &norm;
        let im = (self.im.clone() * &rhs.re - self.re.clone() * &rhs.im) / &norm;
        CFloat { re, im }
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    /// Modulus |z|.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Squared modulus, avoiding the square root.
    pub fn abs_sq(&self) -> Float {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    /// Principal argument in (−π, π], with arg(0) = 0.
    pub fn arg(&self) -> Float {
        if self.is_zero() {
            return Float::new(self.prec());
        }
        self.im.clone().atan2(&self.re)
    }

    /// Principal logarithm: ln|z| + i·arg z, cut along (−∞, 0].
    pub fn ln(&self) -> Self {
        CFloat {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let scale = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(self.prec()));
        CFloat {
            re: cos * &scale,
            im: sin * &scale,
        }
    }

    /// Complex sine, computed as (e^{iz} − e^{−iz})/(2i).
    pub fn sin(&self) -> Self {
        let iz = CFloat {
            re: -self.im.clone(),
            im: self.re.clone(),
        };
        let a = iz.exp();
        let b = iz.neg().exp();
        let diff = a.sub(&b);
        // divide by 2i: (x+iy)/(2i) = (y − ix)/2
        CFloat {
            re: diff.im.clone() / 2u32,
            im: -(diff.re.clone() / 2u32),
        }
    }

    /// Principal power z^w = exp(w·ln z). Requires z ≠ 0.
    pub fn pow(&self, w: &Self) -> Self {
        self.ln().mul(w).exp()
    }

    /// Integer power by binary exponentiation (exact multiplications only).
    pub fn powi(&self, n: i64) -> Self {
        let prec = self.prec();
        if n == 0 {
            return Self::one(prec);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return Self::new(self.prec());
        }
        if self.im.is_zero() && self.re.is_sign_positive() {
            return CFloat {
                re: self.re.clone().sqrt(),
                im: Float::new(self.prec()),
            };
        }
        let half = CFloat::from_f64(self.prec(), 0.5, 0.0);
        self.pow(&half)
    }

    /// Upper bound on |self − rhs| as an f64 (for tolerance checks).
    pub fn dist(&self, rhs: &Self) -> f64 {
        self.sub(rhs).abs().to_f64()
    }

    /// Decimal string with the given number of significant digits
    /// (deterministic round-to-nearest formatting).
    pub fn part_to_decimal(f: &Float, digits: usize) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let (sign, mantissa, exp) = f.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        let neg = if sign { "-" } else { "" };
        // `mantissa` has an implied decimal point before its first digit and
        // decimal exponent `exp`: value = 0.mantissa × 10^exp.
        format!("{}0.{}e{}", neg, mantissa, exp.unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(a: &CFloat, re: f64, im: f64) -> bool {
        (a.re.to_f64() - re).abs() < 1e-12 && (a.im.to_f64() - im).abs() < 1e-12
    }

    #[test]
    fn multiplication_and_division_invert() {
        let a = CFloat::from_f64(P, 1.5, -2.25);
        let b = CFloat::from_f64(P, -0.5, 3.0);
        let prod = a.mul(&b);
        let back = prod.div(&b);
        assert!(back.dist(&a) < 1e-30);
    }

    #[test]
    fn principal_log_has_cut_on_negative_axis() {
        let z = CFloat::from_f64(P, -1.0, 0.0);
        let l = z.ln();
        // arg(−1) = +π on the principal branch
        assert!((l.im.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(l.re.to_f64().abs() < 1e-15);
    }

    #[test]
    fn exp_of_log_round_trips() {
        let z = CFloat::from_f64(P, 0.3, -1.7);
        assert!(z.ln().exp().dist(&z) < 1e-30);
    }

    #[test]
    fn integer_powers_match_pow() {
        let z = CFloat::from_f64(P, 0.8, 0.6); // on the unit circle
        let a = z.powi(7);
        let b = z.pow(&CFloat::from_f64(P, 7.0, 0.0));
        assert!(a.dist(&b) < 1e-30);
        let c = z.powi(-3);
        let d = z.recip().powi(3);
        assert!(c.dist(&d) < 1e-30);
    }

    #[test]
    fn sqrt_is_principal() {
        let z = CFloat::from_f64(P, -4.0, 0.0);
        let s = z.sqrt();
        assert!(close(&s, 0.0, 2.0));
        let w = CFloat::from_f64(P, 9.0, 0.0);
        assert!(close(&w.sqrt(), 3.0, 0.0));
    }

    #[test]
    fn sin_matches_f64() {
        let z = CFloat::from_f64(P, 1.2, 0.0);
        assert!((z.sin().re.to_f64() - 1.2f64.sin()).abs() < 1e-15);
        // complex argument: sin(i) = i·sinh(1)
        let i = CFloat::from_f64(P, 0.0, 1.0);
        let s = i.sin();
        assert!((s.im.to_f64() - 1f64.sinh()).abs() < 1e-15);
        assert!(s.re.to_f64().abs() < 1e-15);
    }

    #[test]
    fn powi_zero_gives_one() {
        let z = CFloat::from_f64(P, 2.0, 1.0);
        assert!(close(&z.powi(0), 1.0, 0.0));
    }

    #[test]
    fn pow_uses_principal_branch() {
        // (−1)^{1/2} = i on the principal branch
        let z = CFloat::from_f64(P, -1.0, 0.0);
        let h = CFloat::from_f64(P, 0.5, 0.0);
        assert!(close(&z.pow(&h), 0.0, 1.0));
    }

    #[test]
    fn decimal_formatting_is_stable() {
        let f = Float::with_val(P, 1) / 3u32;
        let s = CFloat::part_to_decimal(&f, 10);
        assert_eq!(s, "0.3333333333e0");
    }
}
