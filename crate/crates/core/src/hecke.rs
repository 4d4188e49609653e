//! The Iwahori-Hecke algebra `H_n(q^2)` in its standard basis `{T_w}`.
//!
//! Generators satisfy the braid relations and `(T_i - q)(T_i + q^-1) = 0`,
//! so `T_w T_i = T_{ws_i}` when `l(ws_i) > l(w)` and
//! `T_w T_i = T_{ws_i} + (q - q^-1) T_w` otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::symgroup::Permutation;

/// `sum c_w T_w` with no zero coefficients; every key has degree `degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    degree: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

fn accumulate(map: &mut BTreeMap<Permutation, LaurentPoly>, w: Permutation, c: &LaurentPoly) {
    match map.get_mut(&w) {
        Some(old) => {
            *old += c;
            if old.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(w, c.clone());
            }
        }
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    Ok(())
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        Self { degree: n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::t_perm(&Permutation::identity(n))
    }

    /// The basis element `T_w`.
    pub fn t_perm(w: &Permutation) -> Self {
        Self::monomial(w, LaurentPoly::one())
    }

    /// `c T_w`.
    pub fn monomial(w: &Permutation, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(*w, c);
        }
        Self { degree: w.degree(), terms }
    }

    /// Builds an element from `(w, c)` pairs, summing repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (w, c) in terms {
            if w.degree() != n {
                return Err(Error::DegreeMismatch(n, w.degree()));
            }
            accumulate(&mut out.terms, w, &c);
        }
        Ok(out)
    }

    /// `T_i` in `H_n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        Ok(Self::t_perm(&Permutation::simple(n, i)?))
    }

    /// `T_i^-1 = T_i - (q - q^-1)`.
    pub fn gen_inverse(n: usize, i: usize) -> Result<Self> {
        let mut out = Self::generator(n, i)?;
        accumulate(&mut out.terms, Permutation::identity(n), &-LaurentPoly::q_minus_q_inv());
        Ok(out)
    }

    /// `T_{i,j}`: `T_i T_{i+1} ... T_{j-1}` when `j >= i`, and
    /// `T_{i-1} T_{i-2} ... T_j` when `i > j`.
    pub fn t_interval(n: usize, i: usize, j: usize) -> Result<Self> {
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange { index: x, max: n });
            }
        }
        let mut w = Permutation::identity(n);
        if j >= i {
            for k in i..j {
                w = w.mul_simple_right(k);
            }
        } else {
            for k in (j..i).rev() {
                w = w.mul_simple_right(k);
            }
        }
        Ok(Self::t_perm(&w))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, *w, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        let terms = self.terms.iter().map(|(w, x)| (*w, x * c)).collect();
        Self { degree: self.degree, terms }
    }

    /// `self * T_i`.
    pub fn mul_generator_right(&self, i: usize) -> Self {
        let qq = LaurentPoly::q_minus_q_inv();
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let ws = w.mul_simple_right(i);
            accumulate(&mut out, ws, c);
            if !w.right_ascent(i) {
                accumulate(&mut out, *w, &(c * &qq));
            }
        }
        Self { degree: self.degree, terms: out }
    }

    /// `T_i * self`.
    pub fn mul_generator_left(&self, i: usize) -> Self {
        let qq = LaurentPoly::q_minus_q_inv();
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let sw = w.mul_simple_left(i);
            accumulate(&mut out, sw, c);
            if !w.left_ascent(i) {
                accumulate(&mut out, *w, &(c * &qq));
            }
        }
        Self { degree: self.degree, terms: out }
    }

    /// `self * T_w`.
    pub fn mul_perm_right(&self, w: &Permutation) -> Self {
        w.reduced_word().into_iter().fold(self.clone(), |acc, i| acc.mul_generator_right(i))
    }

    /// `T_w * self`.
    pub fn mul_perm_left(&self, w: &Permutation) -> Self {
        w.reduced_word().into_iter().rev().fold(self.clone(), |acc, i| acc.mul_generator_left(i))
    }

    /// Product in `H_n`, expanding whichever side is cheaper into generators.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let word_cost = |h: &Self| h.terms.keys().map(|w| w.length()).sum::<usize>();
        let right_cost = self.num_terms() * word_cost(other);
        let left_cost = other.num_terms() * word_cost(self);
        let mut out = BTreeMap::new();
        if right_cost <= left_cost {
            for (w, c) in &other.terms {
                for (v, x) in self.mul_perm_right(w).terms {
                    accumulate(&mut out, v, &(&x * c));
                }
            }
        } else {
            for (w, c) in &self.terms {
                for (v, x) in other.mul_perm_left(w).terms {
                    accumulate(&mut out, v, &(c * &x));
                }
            }
        }
        Ok(Self { degree: self.degree, terms: out })
    }

    /// The anti-involution `T_w -> T_{w^-1}`.
    pub fn star(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect();
        Self { degree: self.degree, terms }
    }

    /// Image under `H_n -> H_m`, `m >= n`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.degree {
            return Err(Error::BadDegree(m, self.degree));
        }
        let terms = self.terms.iter().map(|(w, c)| Ok((w.embed(m)?, c.clone()))).collect::<Result<_>>()?;
        Ok(Self { degree: m, terms })
    }

    /// Coefficients evaluated at `q = 1`: the image in the group algebra.
    pub fn at_q_one(&self) -> BTreeMap<Permutation, num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (*w, c.eval_at_one()))
            .filter(|(_, c)| *c != num_bigint::BigInt::from(0))
            .collect()
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        let terms = self.terms.iter().map(|(w, c)| (*w, -c)).collect();
        HeckeElement { degree: self.degree, terms }
    }
}

/// Operators panic on mismatched degrees; the `try_*` methods return
/// [`Error::DegreeMismatch`] instead.
impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_add(rhs).expect("degree mismatch")
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_sub(rhs).expect("degree mismatch")
    }
}

impl Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_mul(rhs).expect("degree mismatch")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let coeff = if c.num_terms() == 1 { c.to_string() } else { format!("({c})") };
                if w.is_identity() {
                    coeff
                } else if c.is_one() {
                    format!("T[{w}]")
                } else {
                    format!("{coeff}*T[{w}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement<{}>({self})", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    perm: String,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| TermJson { perm: w.to_string(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ElementJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| Ok((t.perm.parse::<Permutation>()?, t.coeff)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        HeckeElement::from_terms(raw.degree, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> HeckeElement {
        HeckeElement::generator(n, i).unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let sq = &t(2, 1) * &t(2, 1);
        let expected = &HeckeElement::one(2) + &t(2, 1).scale(&lp("q - q^-1"));
        assert_eq!(sq, expected);
    }

    #[test]
    fn braid_and_commuting() {
        assert_eq!(&t(4, 1) * &t(4, 3), &t(4, 3) * &t(4, 1));
        assert_eq!(&(&t(3, 1) * &t(3, 2)) * &t(3, 1), &(&t(3, 2) * &t(3, 1)) * &t(3, 2));
        let w0: Permutation = "3,2,1".parse().unwrap();
        assert_eq!(&(&t(3, 1) * &t(3, 2)) * &t(3, 1), HeckeElement::t_perm(&w0));
    }

    #[test]
    fn intervals_and_inverses() {
        assert_eq!(HeckeElement::t_interval(3, 2, 2).unwrap(), HeckeElement::one(3));
        assert_eq!(HeckeElement::t_interval(3, 1, 3).unwrap(), &t(3, 1) * &t(3, 2));
        assert_eq!(HeckeElement::t_interval(3, 3, 1).unwrap(), &t(3, 2) * &t(3, 1));
        for n in 1..=6 {
            for a in 1..=n {
                let c = Permutation::cycle_down(n, a).unwrap();
                assert_eq!(HeckeElement::t_perm(&c), HeckeElement::t_interval(n, a, n).unwrap());
            }
        }
        assert!(HeckeElement::t_interval(3, 0, 1).is_err());
        let inv = HeckeElement::gen_inverse(3, 1).unwrap();
        assert_eq!(&inv * &t(3, 1), HeckeElement::one(3));
        assert_eq!(&t(3, 1) * &inv, HeckeElement::one(3));
        let at_one = inv.at_q_one();
        assert_eq!(at_one.len(), 1);
        assert!(HeckeElement::gen_inverse(3, 3).is_err());
    }

    #[test]
    fn star_and_embed() {
        assert_eq!(t(3, 1).star(), t(3, 1));
        assert_eq!((&t(3, 1) * &t(3, 2)).star(), &t(3, 2) * &t(3, 1));
        assert_eq!(t(2, 1).embed(3).unwrap(), t(3, 1));
        assert_eq!(HeckeElement::one(2).embed(4).unwrap(), HeckeElement::one(4));
        assert!(t(3, 1).embed(2).is_err());
        assert_eq!(t(2, 1).try_mul(&t(3, 1)), Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn json_round_trip() {
        let h = &t(3, 1).scale(&lp("q^2 - 3")) + &HeckeElement::one(3);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(
            s,
            r#"{"degree":3,"terms":[{"perm":"1,2,3","coeff":[[0,"1"]]},{"perm":"2,1,3","coeff":[[0,"-3"],[2,"1"]]}]}"#
        );
        let back: HeckeElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }
}
