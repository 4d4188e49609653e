//! The symmetric group acting on the right of `{1, ..., n}`.
//!
//! Products read left to right: `v.compose(&w)` applies `v` first, so
//! `i^(vw) = (i^v)^w`. In one-line notation `w * s_i` swaps the *values* `i`
//! and `i + 1`, while `s_i * w` swaps the *positions* `i` and `i + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tableaux::Composition;

/// Largest degree supported by the fixed-size representation.
pub const MAX_DEGREE: usize = 16;

/// A permutation in one-line notation: `images[i - 1] = i^w`.
///
/// The derived order is lexicographic on the one-line word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    images: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        let mut images = [0u8; MAX_DEGREE];
        for (i, x) in images.iter_mut().enumerate().take(n) {
            *x = i as u8 + 1;
        }
        Self { len: n as u8, images }
    }

    /// Builds a permutation from its one-line images (1-based).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::BadDegree(n, MAX_DEGREE));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut out = [0u8; MAX_DEGREE];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
            out[i] = x as u8;
        }
        Ok(Self { len: n as u8, images: out })
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        Ok(Self::identity(n).mul_simple_right(i))
    }

    /// The cycle `(n, n-1, ..., a)`: sends `k -> k-1` for `a < k <= n` and
    /// `a -> n`.
    pub fn cycle_down(n: usize, a: usize) -> Result<Self> {
        if a == 0 || a > n {
            return Err(Error::IndexOutOfRange { index: a, max: n });
        }
        let mut w = Self::identity(n);
        for i in a..n {
            w = w.mul_simple_right(i);
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.as_slice().iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn as_slice(&self) -> &[u8] {
        &self.images[..self.len as usize]
    }

    /// `i^w` for `1 <= i <= n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// Position holding the value `v`, i.e. `v^(w^-1)`.
    pub fn preimage(&self, v: usize) -> usize {
        self.as_slice().iter().position(|&x| x as usize == v).expect("value in range") + 1
    }

    pub fn is_identity(&self) -> bool {
        self.as_slice().iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut images = [0u8; MAX_DEGREE];
        for (out, &x) in images.iter_mut().zip(&self.images[..self.len as usize]) {
            *out = other.images[x as usize - 1];
        }
        Self { len: self.len, images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0u8; MAX_DEGREE];
        for i in 0..self.len as usize {
            images[self.images[i] as usize - 1] = i as u8 + 1;
        }
        Self { len: self.len, images }
    }

    /// Number of inversions of the one-line word.
    pub fn length(&self) -> usize {
        let w = self.as_slice();
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w * s_i`: swaps the values `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut out = *self;
        for x in out.images[..self.len as usize].iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        out
    }

    /// `s_i * w`: swaps the positions `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut out = *self;
        out.images.swap(i - 1, i);
        out
    }

    /// True when `l(w s_i) > l(w)`, i.e. the value `i` precedes `i + 1`.
    pub fn right_ascent(&self, i: usize) -> bool {
        self.preimage(i) < self.preimage(i + 1)
    }

    /// True when `l(s_i w) > l(w)`, i.e. `w(i) < w(i + 1)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// A reduced word `(i_1, ..., i_k)` with `w = s_{i_1} ... s_{i_k}`.
    ///
    /// Repeatedly moves the largest value not yet in place one step right,
    /// so the cycle `(n, ..., a)` yields `(a, a+1, ..., n-1)`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = *self;
        let mut word = Vec::with_capacity(self.length());
        while let Some(target) = (1..=w.degree()).rev().find(|&v| w.preimage(v) != v) {
            let p = w.preimage(target);
            word.push(p);
            w = w.mul_simple_left(p);
        }
        word
    }

    /// Extends by fixed points to `S_m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.degree() || m > MAX_DEGREE {
            return Err(Error::BadDegree(m, MAX_DEGREE));
        }
        let mut out = *self;
        for i in self.degree()..m {
            out.images[i] = i as u8 + 1;
        }
        out.len = m as u8;
        Ok(out)
    }

    /// Lehmer-code rank; ranks are lexicographic on one-line words.
    pub fn rank(&self) -> u64 {
        let w = self.as_slice();
        let n = w.len();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count() as u64;
            rank = rank * (n - i) as u64 + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: u64) -> Self {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<usize> = (1..=n).collect();
        let images: Vec<usize> = digits.iter().map(|&d| pool.remove(d)).collect();
        Self::from_images(&images).expect("valid unrank")
    }

    /// Ordering key: by length, then lexicographically.
    pub fn order_key(&self) -> u64 {
        ((self.length() as u64) << 48) | self.rank()
    }

    pub fn from_order_key(n: usize, key: u64) -> Self {
        Self::unrank(n, key & ((1u64 << 48) - 1))
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Self::from_images(&cur).expect("permutation"));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.as_slice().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line `"3,1,2"`, or `"(n..a)"` for the cycle `(n, n-1, ..., a)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad permutation {s:?}"));
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (hi, lo) = inner.split_once("..").ok_or_else(bad)?;
            let n: usize = hi.trim().parse().map_err(|_| bad())?;
            let a: usize = lo.trim().parse().map_err(|_| bad())?;
            if n > MAX_DEGREE {
                return Err(Error::BadDegree(n, MAX_DEGREE));
            }
            return Self::cycle_down(n, a);
        }
        if s.is_empty() {
            return Ok(Self::identity(0));
        }
        let images: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Self::from_images(&images)
    }
}

/// Elements of the Young subgroup `S_nu`, permuting each block of
/// consecutive points, in lexicographic order.
pub fn young_subgroup(nu: &Composition) -> Vec<Permutation> {
    let n = nu.size();
    let mut out = vec![Permutation::identity(n)];
    let mut start = 1;
    for &part in nu.parts() {
        let block = Permutation::all(part);
        let mut next = Vec::with_capacity(out.len() * block.len());
        for w in &out {
            for b in &block {
                let mut images = w.images();
                for k in 0..part {
                    images[start - 1 + k] = start - 1 + b.image(k + 1);
                }
                next.push(Permutation::from_images(&images).expect("block permutation"));
            }
        }
        out = next;
        start += part;
    }
    out.sort();
    out
}

fn block_boundaries(nu: &Composition) -> Vec<usize> {
    nu.parts()
        .iter()
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

/// Minimal-length representatives of the right cosets `S_inner x` inside
/// `S_outer`, in lexicographic order.
pub fn distinguished_coset_reps(inner: &Composition, outer: &Composition) -> Result<Vec<Permutation>> {
    let not_sub = || Error::NotASubgroup { inner: inner.to_string(), outer: outer.to_string() };
    if inner.size() != outer.size() {
        return Err(not_sub());
    }
    let inner_cuts = block_boundaries(inner);
    if !block_boundaries(outer).iter().all(|c| inner_cuts.contains(c)) {
        return Err(not_sub());
    }
    let n = inner.size();
    // l(s_i x) > l(x) for every generator s_i of S_inner.
    let same_block = |i: usize| !inner_cuts.contains(&i);
    Ok(young_subgroup(outer)
        .into_iter()
        .filter(|x| (1..n).filter(|&i| same_block(i)).all(|i| x.left_ascent(i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn composition_applies_left_first() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(s1.compose(&s2).unwrap(), p("3,1,2"));
        assert!(s1.compose(&s1).unwrap().is_identity());
        assert_eq!(
            s1.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn lengths_and_words() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p("4,3,2,1").length(), 6);
        for n in 1..=7 {
            for a in 1..=n {
                let c = Permutation::cycle_down(n, a).unwrap();
                assert_eq!(c.length(), n - a);
                assert_eq!(c.reduced_word(), (a..n).collect::<Vec<_>>());
            }
        }
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(p("3,2,1").reduced_word().len(), 3);
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in Permutation::all(5) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut x = Permutation::identity(5);
            for &i in &word {
                x = x.mul_simple_right(i);
            }
            assert_eq!(x, w);
            assert!(w.then(&w.inverse()).is_identity());
            assert_eq!(w.length(), w.inverse().length());
        }
    }

    #[test]
    fn rank_round_trip_and_order() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for (r, w) in all.iter().enumerate() {
            assert_eq!(w.rank(), r as u64);
            assert_eq!(Permutation::unrank(4, r as u64), *w);
            assert_eq!(Permutation::from_order_key(4, w.order_key()), *w);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("(5..2)"), Permutation::cycle_down(5, 2).unwrap());
        assert_eq!(p("(5..2)").to_string(), "1,5,2,3,4");
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("(3..0)".parse::<Permutation>().is_err());
    }

    #[test]
    fn young_subgroups() {
        let c = |v: &[usize]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(young_subgroup(&c(&[1, 1, 1])).len(), 1);
        assert_eq!(young_subgroup(&c(&[2])), vec![p("1,2"), p("2,1")]);
        assert_eq!(young_subgroup(&c(&[3, 2, 1])).len(), 12);
    }

    #[test]
    fn coset_representatives() {
        let c = |v: &[usize]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(distinguished_coset_reps(&c(&[2, 2]), &c(&[2, 2])).unwrap(), vec![p("1,2,3,4")]);
        assert_eq!(distinguished_coset_reps(&c(&[1, 1]), &c(&[2])).unwrap().len(), 2);
        let reps = distinguished_coset_reps(&c(&[2, 1, 1]), &c(&[2, 2])).unwrap();
        let mut lengths: Vec<usize> = reps.iter().map(|x| x.length()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1]);
        assert!(matches!(
            distinguished_coset_reps(&c(&[2, 2]), &c(&[1, 3])),
            Err(Error::NotASubgroup { .. })
        ));
    }

    #[test]
    fn cycles_are_distinguished_left_coset_reps() {
        // l(c v) = l(c) + l(v) for every v fixing n.
        for n in 1..=6 {
            let sub: Vec<Permutation> = Permutation::all(n - 1).iter().map(|v| v.embed(n).unwrap()).collect();
            for a in 1..=n {
                let c = Permutation::cycle_down(n, a).unwrap();
                assert!(sub.iter().all(|v| c.then(v).length() == c.length() + v.length()));
            }
        }
    }
}
