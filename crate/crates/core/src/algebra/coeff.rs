//! Exact coefficient rings: the rationals and the Eisenstein integers Z[omega].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::PrimeField;
use crate::error::{Error, Result};

/// A coefficient ring usable in [`super::WPolynomial`].
pub trait Coefficient:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + 'static
{
    fn from_integer(n: BigInt) -> Self;

    /// The cube root of unity omega, when the ring contains it.
    fn omega() -> Option<Self>;

    /// Whether the coefficient involves omega (needs a cube root in F_p to reduce).
    fn uses_omega(&self) -> bool;

    /// Ring homomorphism to F_p; `omega_image` is the image of omega.
    fn reduce(&self, field: &PrimeField, omega_image: Option<u64>) -> Result<u64>;

    /// Split into a sign and a magnitude for printing: `self == -mag` iff `negative`.
    fn sign_split(&self) -> (bool, Self);

    /// Text of a positive-looking magnitude. `atomic` requests a form safe as a factor.
    fn magnitude_text(&self, atomic: bool) -> String;
}

impl Coefficient for BigRational {
    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn omega() -> Option<Self> {
        None
    }

    fn uses_omega(&self) -> bool {
        false
    }

    fn reduce(&self, field: &PrimeField, _omega_image: Option<u64>) -> Result<u64> {
        let num = field.reduce_bigint(self.numer());
        let den = field.reduce_bigint(self.denom());
        let inv = field.inv(den).ok_or_else(|| Error::Reduction {
            p: field.p(),
            reason: format!("denominator {} vanishes", self.denom()),
        })?;
        Ok(field.mul(num, inv))
    }

    fn sign_split(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }

    fn magnitude_text(&self, atomic: bool) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else if atomic {
            format!("({}/{})", self.numer(), self.denom())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// `a + b*omega` with `omega^2 + omega + 1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn integer(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    /// `omega^k`.
    pub fn omega_pow(k: u32) -> Self {
        match k % 3 {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            _ => Self::new(-1, -1),
        }
    }

    /// `a^2 - ab + b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // omega^2 = -1 - omega
        let bd = &self.b * &rhs.b;
        Self {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bd,
        }
    }
}

impl Zero for EisensteinInt {
    fn zero() -> Self {
        Self::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for EisensteinInt {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl Coefficient for EisensteinInt {
    fn from_integer(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    fn omega() -> Option<Self> {
        Some(Self::omega_pow(1))
    }

    fn uses_omega(&self) -> bool {
        !self.b.is_zero()
    }

    fn reduce(&self, field: &PrimeField, omega_image: Option<u64>) -> Result<u64> {
        let a = field.reduce_bigint(&self.a);
        if self.b.is_zero() {
            return Ok(a);
        }
        let w = omega_image.ok_or_else(|| Error::Reduction {
            p: field.p(),
            reason: "omega coefficient needs p = 1 mod 3".into(),
        })?;
        if field.pow(w, 3) != 1 || w % field.p() == 1 {
            return Err(Error::Reduction {
                p: field.p(),
                reason: format!("{w} is not a primitive cube root of unity"),
            });
        }
        let b = field.reduce_bigint(&self.b);
        Ok(field.add(a, field.mul(b, w)))
    }

    fn sign_split(&self) -> (bool, Self) {
        let negative = self.a.is_negative() || (self.a.is_zero() && self.b.is_negative());
        if negative {
            (true, -self.clone())
        } else {
            (false, self.clone())
        }
    }

    fn magnitude_text(&self, atomic: bool) -> String {
        let inner = if self.b.is_zero() {
            return self.a.to_string();
        } else if self.a.is_zero() {
            if self.b.is_one() {
                return "omega".into();
            }
            return format!("{}*omega", self.b);
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            let mag = self.b.abs();
            if mag.is_one() {
                format!("{} {} omega", self.a, sign)
            } else {
                format!("{} {} {}*omega", self.a, sign, mag)
            }
        };
        if atomic {
            format!("({inner})")
        } else {
            inner
        }
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.sign_split();
        if neg {
            write!(f, "-{}", mag.magnitude_text(true))
        } else {
            write!(f, "{}", mag.magnitude_text(false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn omega_squared() {
        let w = EisensteinInt::omega_pow(1);
        assert_eq!(w.clone() * w.clone(), e(-1, -1));
        assert_eq!(w.clone() * w.clone() * w, e(1, 0));
    }

    #[test]
    fn reduction_sends_omega_to_cube_root() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(e(0, 1).reduce(&f, Some(2)).unwrap(), 2);
        assert_eq!(e(3, 5).reduce(&f, Some(4)).unwrap(), (3 + 20) % 7);
        assert!(e(0, 1).reduce(&f, None).is_err());
        assert!(e(0, 1).reduce(&f, Some(1)).is_err());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let u = e(a, b);
            let v = e(c, d);
            prop_assert_eq!((u.clone() * v.clone()).norm(), u.norm() * v.norm());
        }

        #[test]
        fn reduction_is_a_ring_homomorphism(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let f = PrimeField::new(13).unwrap();
            for &w in &[3u64, 9] {
                let u = e(a, b);
                let v = e(c, d);
                let ru = u.reduce(&f, Some(w)).unwrap();
                let rv = v.reduce(&f, Some(w)).unwrap();
                prop_assert_eq!((u.clone() * v.clone()).reduce(&f, Some(w)).unwrap(), f.mul(ru, rv));
                prop_assert_eq!((u + v).reduce(&f, Some(w)).unwrap(), f.add(ru, rv));
            }
        }
    }
}
