//! Exact rational coefficients.
//!
//! Almost every coefficient that shows up in these computations is a small
//! integer, so values live in an `i64` ratio and are promoted to a big
//! rational only when a checked operation overflows. Big values that fit
//! back into `i64` are demoted again, which keeps the representation
//! canonical and lets equality and hashing be structural.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        match Ratio::new(numer as i128, denom as i128) {
            r if i64::try_from(*r.numer()).is_ok() && i64::try_from(*r.denom()).is_ok() => {
                Rational(Repr::Small(Ratio::new_raw(*r.numer() as i64, *r.denom() as i64)))
            }
            r => Rational::from_big(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))),
        }
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(Repr::Small(Ratio::from_integer(n)))
    }

    fn from_big(b: BigRational) -> Rational {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(b)),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn numer_string(&self) -> String {
        match &self.0 {
            Repr::Small(r) => r.numer().to_string(),
            Repr::Big(b) => b.numer().to_string(),
        }
    }

    pub fn denom_string(&self) -> String {
        match &self.0 {
            Repr::Small(r) => r.denom().to_string(),
            Repr::Big(b) => b.denom().to_string(),
        }
    }

    /// Always `p/q`, even for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer_string(), self.denom_string())
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(c) = a.$checked(b) {
                        return Rational(Repr::Small(c));
                    }
                }
                Rational::from_big(self.big().$method(rhs.big()))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);
checked_binop!(Div, div, checked_div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(r) if *r.numer() != i64::MIN => Rational(Repr::Small(-r)),
            Repr::Small(r) => Rational::from_big(-to_big(&r)),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -self.clone()
    }
}

impl Zero for Rational {
    fn zero() -> Rational {
        Rational::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }
}

impl One for Rational {
    fn one() -> Rational {
        Rational::from_integer(1)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid rational literal")
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n` or `p/q` with optional leading sign on the numerator.
    fn from_str(s: &str) -> Result<Rational, ParseRationalError> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| ParseRationalError)?;
        let q: BigInt = q.parse().map_err(|_| ParseRationalError)?;
        if q.is_zero() {
            return Err(ParseRationalError);
        }
        Ok(Rational::from_big(BigRational::new(p, q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_stays_exact() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(&a + &b, Rational::new(5, 6));
        assert_eq!(&a - &b, Rational::new(1, 6));
        assert_eq!(&a * &b, Rational::new(1, 6));
        assert_eq!(&a / &b, Rational::new(3, 2));
        assert_eq!(Rational::new(4, -8), Rational::new(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        assert_eq!(-Rational::from_integer(i64::MIN), &Rational::from_integer(i64::MAX) + &Rational::one());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_integer(3));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!(Rational::new(-3, 2).to_string(), "-3/2");
        assert_eq!(Rational::from_integer(2).to_fraction_string(), "2/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a".parse::<Rational>().is_err());
    }
}
