use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::intpoly::IntPoly;
use super::LaurentPoly;
use crate::error::{Error, Result};

/// An element of `Q(q)` stored as a reduced quotient of integer polynomials.
///
/// Numerator and denominator are coprime in `Z[q]` and the denominator has a
/// positive leading coefficient, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: IntPoly::one(), den: IntPoly::one() }
    }

    /// `num / den` with coefficients given in ascending degree.
    pub fn from_coeffs(num: &[i64], den: &[i64]) -> Result<Self> {
        let conv = |c: &[i64]| IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect());
        Self::new(conv(num), conv(den))
    }

    fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Fast paths for the overwhelmingly common Laurent-shaped values.
        let (mut num, mut den) = if den.is_monomial() {
            let k = den.valuation().min(num.valuation());
            let c = den.leading().gcd(&num.content());
            let (n, d) = (num.shift_down(k), den.shift_down(k));
            if c.is_one() {
                (n, d)
            } else {
                (n.div_scalar(&c), d.div_scalar(&c))
            }
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Self { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value lies in `Z[q, q^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.leading().is_one()
    }

    /// Non-zero elements of `Z[q, q^-1]` that are units there: `±q^k`.
    pub fn is_laurent_unit(&self) -> bool {
        self.is_laurent() && self.num.is_monomial() && self.num.leading().abs().is_one()
    }

    /// Rough size measure used for pivot selection.
    pub fn complexity(&self) -> usize {
        self.num.weight() + self.den.weight() + self.num.degree() + self.den.degree()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }
}

impl From<&LaurentPoly> for RationalFunction {
    fn from(p: &LaurentPoly) -> Self {
        let (num, shift) = p.to_int_poly();
        if shift >= 0 {
            Self::reduce(num.shift_up(shift as usize), IntPoly::one())
        } else {
            Self::reduce(num, IntPoly::monomial(BigInt::one(), (-shift) as usize))
        }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from(&p)
    }
}

impl TryFrom<&RationalFunction> for LaurentPoly {
    type Error = Error;

    /// Succeeds exactly when the denominator is a power of `q`.
    fn try_from(r: &RationalFunction) -> Result<Self> {
        if !r.is_laurent() {
            return Err(Error::NotLaurent(r.to_string()));
        }
        Ok(LaurentPoly::from_int_poly(&r.num, -(r.den.degree() as i32)))
    }
}

impl TryFrom<RationalFunction> for LaurentPoly {
    type Error = Error;
    fn try_from(r: RationalFunction) -> Result<Self> {
        LaurentPoly::try_from(&r)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &IntPoly| LaurentPoly::from_int_poly(p, 0).to_string();
        if self.den.is_one() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn laurent_conversion() {
        let r = RationalFunction::from_coeffs(&[-1, 0, 1], &[0, 1]).unwrap();
        assert_eq!(LaurentPoly::try_from(&r).unwrap(), lp("q - q^-1"));
        let r = RationalFunction::from_coeffs(&[1], &[1, 1]).unwrap();
        assert!(matches!(LaurentPoly::try_from(&r), Err(Error::NotLaurent(_))));
        let r = RationalFunction::from_coeffs(&[0, 0, 0, 0, 0, 1], &[0, 0, 1]).unwrap();
        assert_eq!(LaurentPoly::try_from(&r).unwrap(), lp("q^3"));
    }

    #[test]
    fn canonical_form() {
        let a = RationalFunction::from_coeffs(&[2, 2], &[-4, 4]).unwrap();
        let b = RationalFunction::from_coeffs(&[1, 1], &[-2, 2]).unwrap();
        let c = RationalFunction::from_coeffs(&[-1, -1], &[2, -2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        let third = RationalFunction::from_coeffs(&[2], &[6]).unwrap();
        assert_eq!(third, RationalFunction::from_coeffs(&[1], &[3]).unwrap());
        assert!(!third.is_laurent());
    }

    #[test]
    fn field_operations() {
        let x = RationalFunction::from(lp("q + 1"));
        let y = RationalFunction::from(lp("q - 1"));
        let z = x.div(&y).unwrap().mul(&y);
        assert_eq!(z, x);
        assert!(x.sub(&x).is_zero());
        assert!(RationalFunction::zero().inv().is_none());
    }
}
