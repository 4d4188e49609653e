//! Exact linear algebra over `Z[q, q^-1]` and `Q(q)`.
//!
//! [`Echelon`] keeps a leading-term echelon form of a growing set of sparse
//! vectors and tracks how every row was built from the inserted vectors; it
//! backs Murphy expansions and span membership. [`determinant`] and [`solve`]
//! are plain pivoted Gaussian elimination and share no code with it.

use std::collections::BTreeMap;
use std::fmt;

use super::{LaurentPoly, RationalFunction};

/// Coefficient domains the solvers work over.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact quotient, `None` when it does not exist in the domain.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, divisor)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

/// Sparse vector keyed by an ordered column index; the largest key is the
/// leading term.
pub type SparseVec<S> = BTreeMap<u64, S>;

/// `target -= factor * source`.
fn axpy<S: Scalar>(target: &mut BTreeMap<u64, S>, factor: &S, source: &[(u64, S)]) {
    for (col, c) in source {
        let delta = factor.mul(c);
        match target.get_mut(col) {
            Some(v) => {
                let nv = v.sub(&delta);
                if nv.is_zero() {
                    target.remove(col);
                } else {
                    *v = nv;
                }
            }
            None => {
                target.insert(*col, S::zero().sub(&delta));
            }
        }
    }
}

/// `target += factor * source`.
fn axpy_ids<S: Scalar>(target: &mut BTreeMap<u32, S>, factor: &S, source: &[(u32, S)]) {
    for (id, c) in source {
        let delta = factor.mul(c);
        let entry = target.entry(*id).or_insert_with(S::zero);
        *entry = entry.add(&delta);
        if entry.is_zero() {
            target.remove(id);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<S> {
    /// Descending by column; the first entry is the pivot.
    vector: Vec<(u64, S)>,
    /// The row as a combination of inserted vectors.
    combination: Vec<(u32, S)>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<S> {
    /// What is left once no pivot matches the leading term; empty iff the
    /// vector lies in the span.
    pub remainder: SparseVec<S>,
    /// `vector = sum(combination[id] * inserted[id]) + remainder`.
    pub combination: BTreeMap<u32, S>,
}

impl<S> Reduction<S> {
    pub fn in_span(&self) -> bool {
        self.remainder.is_empty()
    }
}

/// A pivot whose leading coefficient does not divide the term being reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDivisible {
    pub column: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<S> {
    /// The vector was independent and now owns this pivot column.
    Pivot(u64),
    /// The vector already lay in the span, with this combination.
    Dependent(BTreeMap<u32, S>),
}

/// Incremental echelon form with distinct leading columns.
#[derive(Clone, Debug, Default)]
pub struct Echelon<S> {
    rows: BTreeMap<u64, Row<S>>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new() -> Self {
        Self { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns with their leading coefficients.
    pub fn pivots(&self) -> impl Iterator<Item = (u64, &S)> + '_ {
        self.rows.iter().map(|(c, r)| (*c, &r.vector[0].1))
    }

    /// Leading coefficient of the row whose pivot is `column`.
    pub fn pivot(&self, column: u64) -> Option<&S> {
        self.rows.get(&column).map(|r| &r.vector[0].1)
    }

    /// Reduces `vector` by leading terms until it vanishes or its leading
    /// column has no pivot.
    pub fn reduce(&self, mut vector: SparseVec<S>) -> Result<Reduction<S>, NotDivisible> {
        let mut combination = BTreeMap::new();
        while let Some((&lead, coeff)) = vector.last_key_value() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let factor = coeff.div_exact(&row.vector[0].1).ok_or(NotDivisible { column: lead })?;
            axpy(&mut vector, &factor, &row.vector);
            axpy_ids(&mut combination, &factor, &row.combination);
        }
        Ok(Reduction { remainder: vector, combination })
    }

    /// Inserts a vector labelled `id`.
    pub fn insert(&mut self, id: u32, vector: SparseVec<S>) -> Result<Insertion<S>, NotDivisible> {
        let reduction = self.reduce(vector)?;
        if reduction.in_span() {
            return Ok(Insertion::Dependent(reduction.combination));
        }
        let mut combination: BTreeMap<u32, S> = reduction
            .combination
            .into_iter()
            .map(|(k, v)| (k, S::zero().sub(&v)))
            .collect();
        let entry = combination.entry(id).or_insert_with(S::zero);
        *entry = entry.add(&S::one());
        if entry.is_zero() {
            combination.remove(&id);
        }
        let lead = *reduction.remainder.last_key_value().expect("non-empty").0;
        let row = Row {
            vector: reduction.remainder.into_iter().rev().collect(),
            combination: combination.into_iter().collect(),
        };
        self.rows.insert(lead, row);
        Ok(Insertion::Pivot(lead))
    }
}

/// Sparse row-major matrix used by the Gaussian routines.
type SparseRows = Vec<BTreeMap<usize, RationalFunction>>;

fn to_sparse(matrix: &[Vec<RationalFunction>]) -> SparseRows {
    matrix
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
        .collect()
}

/// Picks the pivot row for `col` among `candidates`: units first, then the
/// sparsest row, then the simplest entry.
fn choose_pivot(rows: &SparseRows, candidates: impl Iterator<Item = usize>, col: usize) -> Option<usize> {
    candidates
        .filter(|&r| rows[r].contains_key(&col))
        .min_by_key(|&r| {
            let x = &rows[r][&col];
            (!x.is_laurent_unit(), rows[r].len(), x.complexity(), r)
        })
}

fn eliminate(rows: &mut SparseRows, pivot: usize, target: usize, col: usize) {
    let factor = rows[target][&col].div(&rows[pivot][&col]).expect("pivot is non-zero");
    let source: Vec<(usize, RationalFunction)> = rows[pivot].iter().map(|(k, v)| (*k, v.clone())).collect();
    let row = &mut rows[target];
    for (k, v) in source {
        let delta = factor.mul(&v);
        let nv = match row.get(&k) {
            Some(old) => old.sub(&delta),
            None => delta.neg(),
        };
        if nv.is_zero() {
            row.remove(&k);
        } else {
            row.insert(k, nv);
        }
    }
}

/// Determinant of a square matrix over `Q(q)` by pivoted elimination.
pub fn determinant(matrix: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut rows = to_sparse(matrix);
    let mut used = vec![false; n];
    let mut pivot_row_of_col = Vec::with_capacity(n);
    let mut det = RationalFunction::one();
    for col in 0..n {
        let Some(p) = choose_pivot(&rows, (0..n).filter(|&r| !used[r]), col) else {
            return RationalFunction::zero();
        };
        used[p] = true;
        pivot_row_of_col.push(p);
        det = det.mul(&rows[p][&col]);
        for r in 0..n {
            if !used[r] && rows[r].contains_key(&col) {
                eliminate(&mut rows, p, r, col);
            }
        }
    }
    // The pivots sit at (pivot_row_of_col[c], c); account for that permutation.
    let mut perm = pivot_row_of_col;
    let mut sign_negative = false;
    for i in 0..n {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign_negative = !sign_negative;
        }
    }
    if sign_negative {
        det.neg()
    } else {
        det
    }
}

/// Solves `matrix * x = rhs` over `Q(q)`, returning one solution (free
/// unknowns set to zero) or `None` when the system is inconsistent.
pub fn solve(matrix: &[Vec<RationalFunction>], rhs: &[RationalFunction]) -> Option<Vec<RationalFunction>> {
    let m = matrix.len();
    assert_eq!(m, rhs.len(), "right-hand side length");
    let n = matrix.first().map_or(0, |r| r.len());
    // Augment with the right-hand side as column n.
    let mut rows = to_sparse(matrix);
    for (row, b) in rows.iter_mut().zip(rhs) {
        if !b.is_zero() {
            row.insert(n, b.clone());
        }
    }
    let mut used = vec![false; m];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..n {
        let Some(p) = choose_pivot(&rows, (0..m).filter(|&r| !used[r]), col) else {
            continue;
        };
        used[p] = true;
        pivots.push((p, col));
        for r in 0..m {
            if r != p && rows[r].contains_key(&col) {
                eliminate(&mut rows, p, r, col);
            }
        }
    }
    if (0..m).any(|r| !used[r] && rows[r].contains_key(&n)) {
        return None;
    }
    let mut x = vec![RationalFunction::zero(); n];
    for (p, col) in pivots {
        if let Some(b) = rows[p].get(&n) {
            x[col] = b.div(&rows[p][&col]).expect("pivot is non-zero");
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::from(s.parse::<LaurentPoly>().unwrap())
    }

    #[test]
    fn determinant_of_small_matrices() {
        // [[1, q], [1, 0]] has determinant -q.
        let m = vec![vec![rf("1"), rf("q")], vec![rf("1"), rf("0")]];
        assert_eq!(determinant(&m), rf("-q"));
        let m = vec![vec![rf("0"), rf("1")], vec![rf("1"), rf("0")]];
        assert_eq!(determinant(&m), rf("-1"));
        let m = vec![vec![rf("q"), rf("q^2")], vec![rf("1"), rf("q")]];
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = vec![vec![rf("1"), rf("q")], vec![rf("1"), rf("0")]];
        let x = solve(&m, &[rf("0"), rf("1")]).unwrap();
        // x0 = 1, q x1 = -1
        assert_eq!(x, vec![rf("1"), rf("-q^-1")]);
        let singular = vec![vec![rf("1"), rf("1")], vec![rf("2"), rf("2")]];
        assert!(solve(&singular, &[rf("1"), rf("3")]).is_none());
        assert!(solve(&singular, &[rf("1"), rf("2")]).is_some());
    }

    #[test]
    fn echelon_tracks_combinations() {
        let v = |pairs: &[(u64, &str)]| -> SparseVec<LaurentPoly> {
            pairs.iter().map(|(k, s)| (*k, s.parse().unwrap())).collect()
        };
        let mut e = Echelon::new();
        assert_eq!(e.insert(0, v(&[(2, "q"), (0, "1")])).unwrap(), Insertion::Pivot(2));
        assert_eq!(e.insert(1, v(&[(2, "1"), (1, "1")])).unwrap(), Insertion::Pivot(1));
        // v0 + q v1
        let target = v(&[(2, "2q"), (1, "q"), (0, "1")]);
        let red = e.reduce(target).unwrap();
        assert!(red.in_span());
        assert_eq!(red.combination[&0], LaurentPoly::one());
        assert_eq!(red.combination[&1], LaurentPoly::q());
        let outside = e.reduce(v(&[(5, "1")])).unwrap();
        assert!(!outside.in_span());
    }
}
