//! Exact scalars: arbitrary-precision rationals and the ring `Z_pi = Z[pi]/(pi^2 - 1)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Always reduced, denominator > 0 (guaranteed by `num_rational`).
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A value `even + odd*pi` with `pi^2 = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiScalar {
    pub even: Rational,
    pub odd: Rational,
}

impl PiScalar {
    pub fn zero() -> Self {
        PiScalar { even: Rational::zero(), odd: Rational::zero() }
    }

    pub fn one() -> Self {
        PiScalar { even: Rational::one(), odd: Rational::zero() }
    }

    pub fn pi() -> Self {
        PiScalar { even: Rational::zero(), odd: Rational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        PiScalar { even: rat(n), odd: Rational::zero() }
    }

    pub fn from_rational(r: Rational) -> Self {
        PiScalar { even: r, odd: Rational::zero() }
    }

    /// `n * pi^parity`: the contribution of `n` basis elements of the given parity.
    pub fn graded_count(n: i64, odd: bool) -> Self {
        if odd {
            PiScalar { even: Rational::zero(), odd: rat(n) }
        } else {
            PiScalar::from_int(n)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Evaluates at `pi = 1` or `pi = -1`.
    pub fn specialize_pi(&self, sign: i64) -> Rational {
        assert!(sign == 1 || sign == -1);
        if sign == 1 {
            &self.even + &self.odd
        } else {
            &self.even - &self.odd
        }
    }

    pub fn mul_pi(&self) -> Self {
        PiScalar { even: self.odd.clone(), odd: self.even.clone() }
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: PiScalar) -> PiScalar {
        PiScalar { even: self.even + rhs.even, odd: self.odd + rhs.odd }
    }
}

impl AddAssign for PiScalar {
    fn add_assign(&mut self, rhs: PiScalar) {
        self.even += rhs.even;
        self.odd += rhs.odd;
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: PiScalar) -> PiScalar {
        PiScalar { even: self.even - rhs.even, odd: self.odd - rhs.odd }
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar { even: -self.even, odd: -self.odd }
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    // (a + b pi)(c + d pi) = (ac + bd) + (ad + bc) pi
    fn mul(self, rhs: PiScalar) -> PiScalar {
        PiScalar {
            even: &self.even * &rhs.even + &self.odd * &rhs.odd,
            odd: &self.even * &rhs.odd + &self.odd * &rhs.even,
        }
    }
}

impl Mul<&PiScalar> for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        self.clone() * rhs.clone()
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.even.is_zero() {
            parts.push(fmt_rational(&self.even));
        }
        if !self.odd.is_zero() {
            let s = if self.odd.is_one() {
                "pi".to_string()
            } else if (-self.odd.clone()).is_one() {
                "-pi".to_string()
            } else {
                format!("{}*pi", fmt_rational(&self.odd))
            };
            if parts.is_empty() {
                parts.push(s);
            } else if self.odd.is_negative() {
                parts.push(s);
            } else {
                parts.push(format!("+{s}"));
            }
        }
        write!(f, "{}", parts.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_squares_to_one() {
        assert_eq!(PiScalar::pi() * PiScalar::pi(), PiScalar::one());
    }

    #[test]
    fn specialization() {
        let x = PiScalar { even: rat(3), odd: rat(-2) };
        assert_eq!(x.specialize_pi(1), rat(1));
        assert_eq!(x.specialize_pi(-1), rat(5));
    }

    #[test]
    fn display() {
        assert_eq!(PiScalar::one().to_string(), "1");
        assert_eq!(PiScalar::pi().to_string(), "pi");
        let x = PiScalar { even: rat(1), odd: rat(1) };
        assert_eq!(x.to_string(), "1+pi");
        let y = PiScalar { even: ratio(1, 2), odd: rat(-1) };
        assert_eq!(y.to_string(), "1/2-pi");
    }
}
