use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{m_index, m_lambda, MurphyBasis, MurphyIndex};
use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::tableaux::{Partition, Tableau};

/// An element `sum c_t m_t` of the cell module of a fixed shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellElement {
    shape: Partition,
    terms: BTreeMap<Tableau, LaurentPoly>,
}

impl CellElement {
    pub fn zero(shape: &Partition) -> Self {
        Self { shape: shape.clone(), terms: BTreeMap::new() }
    }

    /// The basis vector `m_t`.
    pub fn basis(t: &Tableau) -> Result<Self> {
        if !t.is_standard() {
            return Err(Error::NotStandard(t.to_string()));
        }
        Ok(Self { shape: t.shape().clone(), terms: BTreeMap::from([(t.clone(), LaurentPoly::one())]) })
    }

    pub fn from_terms(shape: &Partition, terms: impl IntoIterator<Item = (Tableau, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(shape);
        for (t, c) in terms {
            if t.shape() != shape {
                return Err(Error::ShapeMismatch(shape.to_string(), t.shape().to_string()));
            }
            if !t.is_standard() {
                return Err(Error::NotStandard(t.to_string()));
            }
            out.add_term(t, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, t: Tableau, c: &LaurentPoly) {
        let entry = self.terms.entry(t.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Tableau, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, t: &Tableau) -> LaurentPoly {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Serialize for CellElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            t: &'a Tableau,
            coeff: &'a LaurentPoly,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            shape: &'a Partition,
            terms: Vec<Term<'a>>,
        }
        Repr { shape: &self.shape, terms: self.terms.iter().map(|(t, coeff)| Term { t, coeff }).collect() }
            .serialize(s)
    }
}

/// Square matrix indexed by standard tableaux in dominance order; row `t`
/// holds the coordinates of `m_t T_i`.
pub type ActionMatrix = Vec<Vec<LaurentPoly>>;

/// The cell module of `shape` with lazily computed generator matrices.
pub struct CellModule {
    shape: Partition,
    basis: &'static MurphyBasis,
    tableaux: Vec<Tableau>,
    position: HashMap<Tableau, usize>,
    matrices: Vec<OnceLock<Result<ActionMatrix>>>,
}

impl CellModule {
    pub fn new(shape: &Partition) -> Result<Self> {
        let n = shape.size();
        let basis = MurphyBasis::for_degree(n)?;
        let tableaux = basis.tableaux(shape).expect("shape of degree n").to_vec();
        let position = tableaux.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let matrices = (0..n.saturating_sub(1)).map(|_| OnceLock::new()).collect();
        Ok(Self { shape: shape.clone(), basis, tableaux, position, matrices })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Standard tableaux, most dominant first.
    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn position(&self, t: &Tableau) -> Option<usize> {
        self.position.get(t).copied()
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.degree() {
            return Err(Error::IndexOutOfRange { index: i, max: self.degree().saturating_sub(1) });
        }
        Ok(())
    }

    /// Shape-`lambda` coefficients of `m_st T_i`, as a map from
    /// `(s', v)` to coefficient. Cellularity says only `s' = s` occurs and
    /// the coefficients of `v` do not depend on `s`.
    pub fn top_component(&self, s: &Tableau, t: &Tableau, i: usize) -> Result<BTreeMap<(Tableau, Tableau), LaurentPoly>> {
        self.check_generator(i)?;
        let idx = MurphyIndex::new(self.shape.clone(), s.clone(), t.clone())?;
        let h = m_index(&idx).mul_generator_right(i);
        let e = self.basis.expand(&h)?;
        Ok(e.shape_component(&self.shape).map(|(k, c)| ((k.s.clone(), k.t.clone()), c.clone())).collect())
    }

    fn compute_matrix(&self, i: usize) -> Result<ActionMatrix> {
        let top = Tableau::superstandard(&self.shape);
        let m = m_lambda(&self.shape);
        self.tableaux
            .par_iter()
            .map(|t| {
                let h = m.mul_perm_right(&t.word()).mul_generator_right(i);
                let e = self.basis.expand(&h)?;
                let mut row = vec![LaurentPoly::zero(); self.dim()];
                for (k, c) in e.shape_component(&self.shape) {
                    if k.s != top {
                        return Err(Error::IntegralityFailure(format!(
                            "m_{t} T_{i} has a top-shape term at s = {}",
                            k.s
                        )));
                    }
                    row[self.position[&k.t]] = c.clone();
                }
                Ok(row)
            })
            .collect()
    }

    /// Matrix of `T_i` acting on the right.
    pub fn action_matrix(&self, i: usize) -> Result<&ActionMatrix> {
        self.check_generator(i)?;
        self.matrices[i - 1].get_or_init(|| self.compute_matrix(i)).as_ref().map_err(Clone::clone)
    }

    /// `x T_i`.
    pub fn act(&self, x: &CellElement, i: usize) -> Result<CellElement> {
        if x.shape() != &self.shape {
            return Err(Error::ShapeMismatch(self.shape.to_string(), x.shape().to_string()));
        }
        let matrix = self.action_matrix(i)?;
        let mut out = CellElement::zero(&self.shape);
        for (t, c) in x.terms() {
            let row = &matrix[self.position[t]];
            for (v, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    out.add_term(self.tableaux[v].clone(), &(c * r));
                }
            }
        }
        Ok(out)
    }
}

/// `<s, t>` defined by `m_{u s} m_{t v} = <s, t> m_{u v} mod H^{>lambda}`
/// with `u = v = t^lambda`.
pub fn gram_pairing(lambda: &Partition, s: &Tableau, t: &Tableau) -> Result<LaurentPoly> {
    let basis = MurphyBasis::for_degree(lambda.size())?;
    let top = Tableau::superstandard(lambda);
    let left = m_index(&MurphyIndex::new(lambda.clone(), top.clone(), s.clone())?);
    let right = m_index(&MurphyIndex::new(lambda.clone(), t.clone(), top.clone())?);
    let e = basis.expand(&left.try_mul(&right)?)?;
    for (k, _) in e.shape_component(lambda) {
        if k.s != top || k.t != top {
            return Err(Error::IntegralityFailure(format!("product has a {lambda} term at {k}")));
        }
    }
    Ok(e.coeff(&MurphyIndex { shape: lambda.clone(), s: top.clone(), t: top }))
}

/// All pairings, rows and columns in dominance order.
pub fn gram_matrix(lambda: &Partition) -> Result<Vec<Vec<LaurentPoly>>> {
    let basis = MurphyBasis::for_degree(lambda.size())?;
    let tabs = basis.tableaux(lambda).expect("shape of degree n").to_vec();
    tabs.par_iter().map(|s| tabs.iter().map(|t| gram_pairing(lambda, s, t)).collect()).collect()
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

    fn tab(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn small_actions() {
        let cell = CellModule::new(&lam("2,1")).unwrap();
        let top = tab("12/3");
        let x = CellElement::basis(&top).unwrap();
        assert_eq!(cell.act(&x, 1).unwrap(), CellElement::from_terms(&lam("2,1"), [(top.clone(), lp("q"))]).unwrap());
        assert_eq!(cell.act(&x, 2).unwrap(), CellElement::basis(&tab("13/2")).unwrap());
        let col = CellModule::new(&lam("1,1")).unwrap();
        let y = CellElement::basis(&tab("1/2")).unwrap();
        assert_eq!(col.act(&y, 1).unwrap(), CellElement::from_terms(&lam("1,1"), [(tab("1/2"), lp("-q^-1"))]).unwrap());
        assert!(cell.act(&x, 3).is_err());
    }

    #[test]
    fn gram_values() {
        assert_eq!(gram_pairing(&lam("1,1"), &tab("1/2"), &tab("1/2")).unwrap(), LaurentPoly::one());
        assert_eq!(gram_pairing(&lam("2"), &tab("12"), &tab("12")).unwrap(), lp("1 + q^2"));
        for n in 1..=4 {
            for l in Partition::all(n) {
                let g = gram_matrix(&l).unwrap();
                for (i, row) in g.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        assert_eq!(x, &g[j][i]);
                    }
                }
            }
        }
    }
}
