use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so equality
/// is structural equality of the term lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i32) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `q - q^-1`, the coefficient appearing in the quadratic relation.
    pub fn q_minus_q_inv() -> Self {
        Self { terms: vec![(-1, BigInt::from(-1)), (1, BigInt::from(1))] }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Sorted `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// True iff the polynomial is `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    /// The inverse `±q^-k` of a unit `±q^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = &self.terms[0];
        Some(Self { terms: vec![(-e, c.clone())] })
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect() }
    }

    /// Multiplies by `sign * q^shift`, the fast path for unit scalars.
    fn scale_unit(&self, negate: bool, shift: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, if negate { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Exact quotient `self / divisor` in `Z[q, q^-1]`, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_unit() {
            let (e, c) = &divisor.terms[0];
            return Some(self.scale_unit(c.is_negative(), -e));
        }
        let (num, num_shift) = self.to_int_poly();
        let (den, den_shift) = divisor.to_int_poly();
        let quo = num.div_exact(&den)?;
        Some(Self::from_int_poly(&quo, num_shift - den_shift))
    }

    /// Splits off the lowest power of `q`: `self = q^shift * poly`.
    pub(crate) fn to_int_poly(&self) -> (IntPoly, i32) {
        let Some(lo) = self.min_exp() else {
            return (IntPoly::zero(), 0);
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (IntPoly::from_coeffs(coeffs), lo)
    }

    pub(crate) fn from_int_poly(poly: &IntPoly, shift: i32) -> Self {
        Self {
            terms: poly
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + shift, c.clone()))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_unit() {
            let (e, c) = &other.terms[0];
            return self.scale_unit(c.is_negative(), *e);
        }
        if self.is_unit() {
            let (e, c) = &self.terms[0];
            return other.scale_unit(c.is_negative(), *e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + lo, c))
                .collect(),
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_unit(true, 0)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                e => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Parses expressions such as `q^2 - 2q^-1 + 3` or `-q^(-3)`.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad Laurent polynomial {s:?}"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(err());
        }
        let bytes = src.as_bytes();
        let mut terms: Vec<(i32, BigInt)> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(err());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if pos > start {
                src[start..pos].parse().map_err(|_| err())?
            } else {
                BigInt::one()
            };
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let mut exp = 0i32;
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let paren = pos < bytes.len() && bytes[pos] == b'(';
                    if paren {
                        pos += 1;
                    }
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = src[es..pos].parse().map_err(|_| err())?;
                    if paren {
                        if pos >= bytes.len() || bytes[pos] != b')' {
                            return Err(err());
                        }
                        pos += 1;
                    }
                }
            } else if pos == start {
                return Err(err());
            }
            terms.push((exp, if negative { -coeff } else { coeff }));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Text(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;
        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of [exponent, coefficient] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((e, c)) = seq.next_element::<(i32, CoeffRepr)>()? {
                    let c = match c {
                        CoeffRepr::Int(v) => BigInt::from(v),
                        CoeffRepr::Text(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    terms.push((e, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_seq(TermsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn distributes_exponents() {
        assert_eq!(&lp("q + q^-1") * &LaurentPoly::q(), lp("q^2 + 1"));
        assert_eq!(&LaurentPoly::q_minus_q_inv() * &lp("q + q^-1"), lp("q^2 - q^-2"));
    }

    #[test]
    fn units() {
        assert!(lp("-q^3").is_unit());
        assert!(!lp("1 + q").is_unit());
        assert!(!LaurentPoly::zero().is_unit());
        assert_eq!(lp("-q^3").unit_inverse(), Some(lp("-q^-3")));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = lp("q^2 + 3 - q^-1");
        assert!((&p - &p).is_zero());
        assert!((&p - &p).terms().is_empty());
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["q^2 - 2q^-1 + 3", "-q", "7", "q^10 + q^(-3)"] {
            let p = lp(s);
            assert_eq!(lp(&p.to_string()), p);
        }
        assert_eq!(lp("q^2 - q^-2").to_string(), "q^2 - q^-2");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let p = lp("q^2 - 1");
        assert_eq!(p.div_exact(&lp("q - 1")), Some(lp("q + 1")));
        assert_eq!(p.div_exact(&lp("q + 2")), None);
        assert_eq!(lp("q^5").div_exact(&lp("q^2")), Some(lp("q^3")));
    }

    #[test]
    fn json_uses_string_coefficients() {
        let p = lp("q + q^-1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"1"],[1,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let numeric: LaurentPoly = serde_json::from_str("[[-1,1],[1,1]]").unwrap();
        assert_eq!(numeric, p);
    }
}
