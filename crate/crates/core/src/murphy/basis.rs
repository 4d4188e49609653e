use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::{m_index, m_lambda, murphy_from_parts, MurphyIndex};
use crate::error::{Error, Result};
use crate::exactpoly::linalg::{self, Echelon, Insertion, SparseVec};
use crate::exactpoly::{LaurentPoly, RationalFunction};
use crate::hecke::HeckeElement;
use crate::symgroup::Permutation;
use crate::tableaux::{standard_tableaux, Partition, Tableau};

/// Largest degree for which a basis may be built.
pub const MAX_BASIS_DEGREE: usize = 8;

pub(crate) fn to_vector(h: &HeckeElement) -> SparseVec<LaurentPoly> {
    h.terms().iter().map(|(w, c)| (w.order_key(), c.clone())).collect()
}

struct ShapeBlock {
    shape: Partition,
    start: usize,
    tableaux: Vec<Tableau>,
    position: HashMap<Tableau, usize>,
}

/// The Murphy basis of `H_n` together with an echelon form of it in the
/// `T_w` basis, used to expand arbitrary elements.
///
/// Built once per degree and shared; see [`MurphyBasis::for_degree`].
pub struct MurphyBasis {
    n: usize,
    blocks: Vec<ShapeBlock>,
    echelon: Echelon<LaurentPoly>,
    unit_pivots: bool,
}

impl MurphyBasis {
    /// Builds the basis of `H_n` from scratch.
    pub fn build(n: usize) -> Result<Self> {
        if n > MAX_BASIS_DEGREE {
            return Err(Error::BadDegree(n, MAX_BASIS_DEGREE));
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for shape in Partition::all(n) {
            let tableaux = standard_tableaux(&shape);
            let position = tableaux.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let f = tableaux.len();
            blocks.push(ShapeBlock { shape, start, tableaux, position });
            start += f * f;
        }
        let mut echelon = Echelon::new();
        let mut unit_pivots = true;
        for block in &blocks {
            let m = m_lambda(&block.shape);
            let xs: Vec<HeckeElement> = block.tableaux.par_iter().map(|t| m.mul_perm_right(&t.word())).collect();
            let f = block.tableaux.len();
            for (si, s) in block.tableaux.iter().enumerate() {
                let row: Vec<SparseVec<LaurentPoly>> =
                    xs.par_iter().map(|x| to_vector(&murphy_from_parts(x, s))).collect();
                for (ti, v) in row.into_iter().enumerate() {
                    let id = (block.start + si * f + ti) as u32;
                    match echelon.insert(id, v) {
                        Ok(Insertion::Pivot(col)) => {
                            unit_pivots &= echelon.pivot(col).is_some_and(|c| c.is_unit());
                        }
                        Ok(Insertion::Dependent(_)) => {
                            return Err(Error::IntegralityFailure(format!(
                                "Murphy elements of degree {n} are linearly dependent"
                            )))
                        }
                        Err(e) => {
                            return Err(Error::IntegralityFailure(format!(
                                "pivot at column {} does not divide while building degree {n}",
                                e.column
                            )))
                        }
                    }
                }
            }
        }
        Ok(Self { n, blocks, echelon, unit_pivots })
    }

    /// The shared basis of `H_n`, built on first use. Concurrent callers
    /// block until construction finishes.
    pub fn for_degree(n: usize) -> Result<&'static Self> {
        #[allow(clippy::declare_interior_mutable_const)]
        const EMPTY: OnceLock<Result<MurphyBasis>> = OnceLock::new();
        static CACHE: [OnceLock<Result<MurphyBasis>>; MAX_BASIS_DEGREE + 1] = [EMPTY; MAX_BASIS_DEGREE + 1];
        if n > MAX_BASIS_DEGREE {
            return Err(Error::BadDegree(n, MAX_BASIS_DEGREE));
        }
        CACHE[n].get_or_init(|| Self::build(n)).as_ref().map_err(Clone::clone)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of basis elements, `n!`.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.tableaux.len().pow(2)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every echelon pivot is `+-q^k`, i.e. expansion never
    /// leaves `Z[q, q^-1]`.
    pub fn has_unit_pivots(&self) -> bool {
        self.unit_pivots
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Partition> + '_ {
        self.blocks.iter().map(|b| &b.shape)
    }

    /// Standard tableaux of `shape`, in the order used by this basis.
    pub fn tableaux(&self, shape: &Partition) -> Option<&[Tableau]> {
        self.block(shape).map(|b| b.tableaux.as_slice())
    }

    fn block(&self, shape: &Partition) -> Option<&ShapeBlock> {
        self.blocks.iter().find(|b| &b.shape == shape)
    }

    /// All indices in basis order.
    pub fn indices(&self) -> Vec<MurphyIndex> {
        let mut out = Vec::with_capacity(self.len());
        for b in &self.blocks {
            for s in &b.tableaux {
                for t in &b.tableaux {
                    out.push(MurphyIndex { shape: b.shape.clone(), s: s.clone(), t: t.clone() });
                }
            }
        }
        out
    }

    fn index_of_id(&self, id: u32) -> MurphyIndex {
        let id = id as usize;
        let b = self.blocks.iter().rev().find(|b| b.start <= id).expect("id in range");
        let f = b.tableaux.len();
        let k = id - b.start;
        MurphyIndex { shape: b.shape.clone(), s: b.tableaux[k / f].clone(), t: b.tableaux[k % f].clone() }
    }

    /// Position of an index in basis order.
    pub fn position(&self, idx: &MurphyIndex) -> Option<usize> {
        let b = self.block(&idx.shape)?;
        let f = b.tableaux.len();
        Some(b.start + b.position.get(&idx.s)? * f + b.position.get(&idx.t)?)
    }

    /// The basis element at `idx`.
    pub fn element(&self, idx: &MurphyIndex) -> HeckeElement {
        m_index(idx)
    }

    /// Coefficients of `h` in the Murphy basis.
    pub fn expand(&self, h: &HeckeElement) -> Result<MurphyExpansion> {
        if h.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, h.degree()));
        }
        let reduction = self
            .echelon
            .reduce(to_vector(h))
            .map_err(|e| Error::IntegralityFailure(format!("pivot at column {} does not divide", e.column)))?;
        if !reduction.in_span() {
            return Err(Error::IntegralityFailure(format!("{h} is not in the span of the Murphy basis")));
        }
        let coefficients = reduction.combination.into_iter().map(|(id, c)| (self.index_of_id(id), c)).collect();
        Ok(MurphyExpansion { degree: self.n, coefficients })
    }

    /// Membership in `H^{>lambda}` (strict) or `H^{>=lambda}`.
    pub fn ideal_membership(&self, h: &HeckeElement, lambda: &Partition, strict: bool) -> Result<bool> {
        Ok(self.expand(h)?.supported_above(lambda, strict))
    }
}

/// `h = sum c_idx m_idx` over the Murphy basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MurphyExpansion {
    degree: usize,
    coefficients: BTreeMap<MurphyIndex, LaurentPoly>,
}

impl MurphyExpansion {
    pub fn from_coefficients(degree: usize, coefficients: BTreeMap<MurphyIndex, LaurentPoly>) -> Self {
        let coefficients = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { degree, coefficients }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<MurphyIndex, LaurentPoly> {
        &self.coefficients
    }

    pub fn coeff(&self, idx: &MurphyIndex) -> LaurentPoly {
        self.coefficients.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Terms whose shape is `shape`.
    pub fn shape_component<'a>(&'a self, shape: &'a Partition) -> impl Iterator<Item = (&'a MurphyIndex, &'a LaurentPoly)> {
        self.coefficients.iter().filter(move |(k, _)| &k.shape == shape)
    }

    /// True when every term has shape `mu` with `mu > lambda` (strict) or
    /// `mu >= lambda` in dominance.
    pub fn supported_above(&self, lambda: &Partition, strict: bool) -> bool {
        self.coefficients.keys().all(|k| {
            if strict {
                k.shape.strictly_dominates(lambda)
            } else {
                k.shape == *lambda || k.shape.strictly_dominates(lambda)
            }
        })
    }

    /// `sum c_idx m_idx` recomputed from the definition of each `m_idx`.
    pub fn reassemble(&self) -> HeckeElement {
        let parts: Vec<HeckeElement> = self.coefficients.par_iter().map(|(k, c)| m_index(k).scale(c)).collect();
        parts.iter().fold(HeckeElement::zero(self.degree), |acc, x| &acc + x)
    }

    /// The expansion with every index transposed, matching `star`.
    pub fn transposed(&self) -> Self {
        let coefficients = self.coefficients.iter().map(|(k, c)| (k.transposed(), c.clone())).collect();
        Self { degree: self.degree, coefficients }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ExpansionTermJson {
    pub shape: Partition,
    pub s: Tableau,
    pub t: Tableau,
    pub coeff: LaurentPoly,
}

impl Serialize for MurphyExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coefficients.len()))?;
        for (k, c) in &self.coefficients {
            seq.serialize_element(&ExpansionTermJson {
                shape: k.shape.clone(),
                s: k.s.clone(),
                t: k.t.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

/// Transition matrix over `Q(q)`: row `k` holds the `T_w` coefficients of
/// the `k`-th Murphy element, columns ordered lexicographically in `w`.
pub fn transition_matrix(n: usize) -> Vec<Vec<RationalFunction>> {
    let perms = Permutation::all(n);
    let column: HashMap<Permutation, usize> = perms.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut indices = Vec::new();
    for shape in Partition::all(n) {
        let tabs = standard_tableaux(&shape);
        for s in &tabs {
            for t in &tabs {
                indices.push(MurphyIndex { shape: shape.clone(), s: s.clone(), t: t.clone() });
            }
        }
    }
    indices
        .par_iter()
        .map(|idx| {
            let mut row = vec![RationalFunction::zero(); perms.len()];
            for (w, c) in m_index(idx).terms() {
                row[column[w]] = RationalFunction::from(c);
            }
            row
        })
        .collect()
}

/// Determinant of [`transition_matrix`], by Gaussian elimination over `Q(q)`.
pub fn transition_determinant(n: usize) -> RationalFunction {
    linalg::determinant(&transition_matrix(n))
}

/// Expansion by solving the full transition system over `Q(q)` and then
/// converting each coefficient back to `Z[q, q^-1]`. Independent of the
/// echelon used by [`MurphyBasis::expand`]; meant for small `n`.
pub fn expand_by_elimination(h: &HeckeElement) -> Result<MurphyExpansion> {
    let n = h.degree();
    let rows = transition_matrix(n);
    let perms = Permutation::all(n);
    let m = perms.len();
    // Unknown k multiplies row k, so the system is the transpose.
    let system: Vec<Vec<RationalFunction>> = (0..m).map(|w| rows.iter().map(|r| r[w].clone()).collect()).collect();
    let rhs: Vec<RationalFunction> = perms.iter().map(|w| RationalFunction::from(h.coeff(w))).collect();
    let x = linalg::solve(&system, &rhs)
        .ok_or_else(|| Error::IntegralityFailure(format!("{h} is not in the span of the Murphy basis")))?;
    let mut indices = Vec::new();
    for shape in Partition::all(n) {
        let tabs = standard_tableaux(&shape);
        for s in &tabs {
            for t in &tabs {
                indices.push(MurphyIndex { shape: shape.clone(), s: s.clone(), t: t.clone() });
            }
        }
    }
    let mut coefficients = BTreeMap::new();
    for (idx, c) in indices.into_iter().zip(x) {
        if !c.is_zero() {
            let c = LaurentPoly::try_from(&c).map_err(|e| Error::IntegralityFailure(e.to_string()))?;
            coefficients.insert(idx, c);
        }
    }
    Ok(MurphyExpansion { degree: n, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two_matrix() {
        let m = transition_matrix(2);
        let rf = |s: &str| RationalFunction::from(lp(s));
        assert_eq!(m, vec![vec![rf("1"), rf("q")], vec![rf("1"), rf("0")]]);
        assert_eq!(transition_determinant(2), rf("-q"));
    }

    #[test]
    fn expand_generator_in_degree_two() {
        let basis = MurphyBasis::for_degree(2).unwrap();
        let e = basis.expand(&HeckeElement::generator(2, 1).unwrap()).unwrap();
        let top = MurphyIndex::new(lam("2"), "12".parse().unwrap(), "12".parse().unwrap()).unwrap();
        let bottom = MurphyIndex::new(lam("1,1"), "1/2".parse().unwrap(), "1/2".parse().unwrap()).unwrap();
        assert_eq!(e.coeff(&top), lp("q^-1"));
        assert_eq!(e.coeff(&bottom), lp("-q^-1"));
        assert_eq!(e, expand_by_elimination(&HeckeElement::generator(2, 1).unwrap()).unwrap());
    }

    #[test]
    fn expansion_reassembles() {
        for n in 1..=4 {
            let basis = MurphyBasis::for_degree(n).unwrap();
            assert!(basis.has_unit_pivots());
            assert_eq!(basis.len(), (1..=n).product::<usize>());
            for w in Permutation::all(n) {
                let h = HeckeElement::t_perm(&w);
                let e = basis.expand(&h).unwrap();
                assert_eq!(e.reassemble(), h);
            }
        }
    }

    #[test]
    fn m_lambda_expands_to_itself() {
        let basis = MurphyBasis::for_degree(4).unwrap();
        for l in Partition::all(4) {
            let e = basis.expand(&m_lambda(&l)).unwrap();
            let top = Tableau::superstandard(&l);
            assert_eq!(e.coefficients().len(), 1);
            assert!(e.coeff(&MurphyIndex::new(l.clone(), top.clone(), top).unwrap()).is_one());
            assert!(basis.ideal_membership(&m_lambda(&l), &l, false).unwrap());
            assert!(!basis.ideal_membership(&m_lambda(&l), &l, true).unwrap());
        }
    }

    #[test]
    fn json_shape() {
        let basis = MurphyBasis::for_degree(2).unwrap();
        let e = basis.expand(&HeckeElement::generator(2, 1).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"[{"shape":"2","s":[[1,2]],"t":[[1,2]],"coeff":[[-1,"1"]]},{"shape":"1,1","s":[[1],[2]],"t":[[1],[2]],"coeff":[[-1,"-1"]]}]"#
        );
    }
}
