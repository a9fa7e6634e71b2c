//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// An exact complex number `re + im·i` with `re, im ∈ ℚ`.
///
/// Both parts are kept in reduced form by `BigRational`, so structural
/// equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `numer / denom` as a real value. Panics if `denom == 0`.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            BigRational::zero(),
        )
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::from_parts(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = z·conj(z)`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Float approximation of `|z|`, used only for display values.
    pub fn abs_f64(&self) -> f64 {
        self.norm_sqr().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Integer value if this is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_real() && self.re.is_integer()).then(|| self.re.to_integer())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_integer(1)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        &self * rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

/// Renders a rational as `n` or `n/d`, sign on the numerator.
pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text: `3`, `-1/2`, `(2)i`, `(1/2)+(-3)i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&render_rational(&self.re)),
            (true, false) => write!(f, "({})i", render_rational(&self.im)),
            (false, false) => write!(
                f,
                "({})+({})i",
                render_rational(&self.re),
                render_rational(&self.im)
            ),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_integer(-1));
        assert_eq!(
            GaussianRational::one() + GaussianRational::one(),
            GaussianRational::from_integer(2)
        );
        let half = GaussianRational::from_ratio(1, 2);
        assert_eq!(&half + &half, GaussianRational::one());
    }

    #[test]
    fn conjugation_and_norm() {
        let z = GaussianRational::from_parts(2, 3);
        assert_eq!(z.conj(), GaussianRational::from_parts(2, -3));
        assert_eq!(z.conj().conj(), z);
        let n = &z * &z.conj();
        assert!(n.is_real());
        assert_eq!(n.re, BigRational::from_integer(13.into()));
    }

    #[test]
    fn division() {
        let z = GaussianRational::from_parts(1, 1);
        let w = z.checked_div(&z).unwrap();
        assert_eq!(w, GaussianRational::one());
        assert!(z.checked_div(&GaussianRational::zero()).is_none());
        let inv = z.inv().unwrap();
        assert_eq!(inv, GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 2.into()),
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussianRational::from_integer(-3).to_string(), "-3");
        assert_eq!(GaussianRational::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!(GaussianRational::from_parts(0, 2).to_string(), "(2)i");
        let z = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-3).into()),
        );
        assert_eq!(z.to_string(), "(1/2)+(-3)i");
    }
}
