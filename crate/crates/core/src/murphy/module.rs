use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::garnir::h_garnir;
use super::span::{span_membership, Certificate, SpanMode};
use super::{m_lambda, MurphyBasis, MurphyIndex};
use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::hecke::HeckeElement;
use crate::symgroup::Permutation;
use crate::tableaux::{row_standard_tableaux, Node, Partition, Tableau};

/// An element of `M^lambda` split as
/// `sum a_v x_v (v standard) + sum c_t h_t (t row standard, not standard)`,
/// where the `h_t` form a basis of `M^lambda ∩ H^{>lambda}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub standard: BTreeMap<Tableau, LaurentPoly>,
    pub intersection: BTreeMap<Tableau, LaurentPoly>,
}

impl Decomposition {
    /// True when the element lies in `M^lambda ∩ H^{>lambda}`.
    pub fn in_intersection(&self) -> bool {
        self.standard.is_empty()
    }
}

/// The permutation module `M^lambda = m_lambda H_n` with basis
/// `x_t = m_lambda T_{w(t)}` over row-standard `t`.
pub struct PermutationModule {
    shape: Partition,
    m: HeckeElement,
    tableaux: Vec<Tableau>,
    by_word: HashMap<Permutation, usize>,
    /// For non-standard `t`: the coefficients `r_{t,v}` with
    /// `x_t = sum r_{t,v} x_v mod H^{>lambda}`.
    straightening: Vec<Vec<(usize, LaurentPoly)>>,
}

impl PermutationModule {
    pub fn new(shape: &Partition) -> Result<Self> {
        let n = shape.size();
        let basis = MurphyBasis::for_degree(n)?;
        let m = m_lambda(shape);
        let tableaux = row_standard_tableaux(shape);
        let by_word = tableaux.iter().enumerate().map(|(i, t)| (t.word(), i)).collect::<HashMap<_, _>>();
        let top = Tableau::superstandard(shape);
        let straightening = tableaux
            .par_iter()
            .map(|t| {
                if t.is_standard() {
                    return Ok(Vec::new());
                }
                let e = basis.expand(&m.mul_perm_right(&t.word()))?;
                let mut out = Vec::new();
                for (idx, c) in e.shape_component(shape) {
                    if idx.s != top {
                        return Err(Error::IntegralityFailure(format!(
                            "x_{t} has a {shape} component at s = {} in its expansion",
                            idx.s
                        )));
                    }
                    out.push((by_word[&idx.t.word()], c.clone()));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { shape: shape.clone(), m, tableaux, by_word, straightening })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    /// Row-standard tableaux, most dominant first.
    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn m_lambda(&self) -> &HeckeElement {
        &self.m
    }

    /// `x_t = m_lambda T_{w(t)}`.
    pub fn x(&self, t: &Tableau) -> HeckeElement {
        self.m.mul_perm_right(&t.word())
    }

    /// Coordinates in the basis `{x_t}`; `None` when `y` is not in `M^lambda`.
    ///
    /// The supports of the `x_t` are the disjoint cosets `S_lambda w(t)`
    /// with `T_{w(t)}` appearing with coefficient one, so the coordinate of
    /// `x_t` is the coefficient of `T_{w(t)}` in `y`.
    pub fn coordinates(&self, y: &HeckeElement) -> Option<BTreeMap<usize, LaurentPoly>> {
        if y.degree() != self.degree() {
            return None;
        }
        let mut coords = BTreeMap::new();
        for (w, c) in y.terms() {
            if let Some(&i) = self.by_word.get(w) {
                coords.insert(i, c.clone());
            }
        }
        let rebuilt = coords
            .iter()
            .fold(HeckeElement::zero(self.degree()), |acc, (i, c)| &acc + &self.x(&self.tableaux[*i]).scale(c));
        (rebuilt == *y).then_some(coords)
    }

    /// The intersection basis element `h_t = x_t - sum r_{t,v} x_v` for a
    /// row-standard, non-standard `t`.
    pub fn intersection_element(&self, t: &Tableau) -> Result<HeckeElement> {
        let i = self.index(t)?;
        if t.is_standard() {
            return Err(Error::InvalidTableau(format!("{t} is standard")));
        }
        Ok(self.straightening[i]
            .iter()
            .fold(self.x(t), |acc, (v, c)| &acc - &self.x(&self.tableaux[*v]).scale(c)))
    }

    /// `(t, h_t)` over all row-standard non-standard `t`.
    pub fn intersection_basis(&self) -> Result<Vec<(Tableau, HeckeElement)>> {
        self.tableaux
            .iter()
            .filter(|t| !t.is_standard())
            .map(|t| Ok((t.clone(), self.intersection_element(t)?)))
            .collect()
    }

    /// The coefficients `r_{t,v}` with `x_t = sum r_{t,v} x_v + h_t`.
    pub fn straightening(&self, t: &Tableau) -> Result<BTreeMap<Tableau, LaurentPoly>> {
        let i = self.index(t)?;
        if t.is_standard() {
            return Ok(BTreeMap::from([(t.clone(), LaurentPoly::one())]));
        }
        Ok(self.straightening[i].iter().map(|(v, c)| (self.tableaux[*v].clone(), c.clone())).collect())
    }

    fn index(&self, t: &Tableau) -> Result<usize> {
        if t.shape() != &self.shape {
            return Err(Error::ShapeMismatch(self.shape.to_string(), t.shape().to_string()));
        }
        self.by_word.get(&t.word()).copied().ok_or_else(|| Error::NotRowStandard(t.to_string()))
    }

    /// Splits `y` into its standard part and its intersection part; `None`
    /// when `y` is not in `M^lambda`.
    pub fn decompose(&self, y: &HeckeElement) -> Option<Decomposition> {
        let coords = self.coordinates(y)?;
        let mut standard: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut intersection = BTreeMap::new();
        for (i, c) in coords {
            if self.tableaux[i].is_standard() {
                *standard.entry(i).or_default() += &c;
            } else {
                for (v, r) in &self.straightening[i] {
                    *standard.entry(*v).or_default() += &(&c * r);
                }
                intersection.insert(self.tableaux[i].clone(), c);
            }
        }
        let standard = standard
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.tableaux[i].clone(), c))
            .collect();
        Some(Decomposition { standard, intersection })
    }

    /// Garnir elements of this shape, keyed by position.
    pub fn garnir_elements(&self) -> Result<Vec<(Node, HeckeElement)>> {
        self.shape.garnir_positions().into_iter().map(|p| Ok((p, h_garnir(&self.shape, p)?))).collect()
    }

    /// For a row-standard non-standard `t`, a Garnir position `g` and `d`
    /// with `w(t) = w(g) d` and `l(w(t)) = l(w(g)) + l(d)`.
    pub fn garnir_factor(&self, t: &Tableau) -> Option<(Node, Permutation)> {
        let wt = t.word();
        self.shape.garnir_positions().into_iter().find_map(|p| {
            let wg = Tableau::garnir(&self.shape, p).ok()?.word();
            let d = wg.inverse().then(&wt);
            (wg.length() + d.length() == wt.length()).then_some((p, d))
        })
    }

    /// Certifies `M^lambda ∩ H^{>lambda} ⊆ M_0^lambda`: every `h_t` is an
    /// explicit `Z[q, q^-1]`-combination of elements `h_g T_d`.
    ///
    /// Returns the generators `h_g T_d` (labelled by `(g, d)`) and one
    /// certificate per non-standard `t`; `Err` describes the first `t` that
    /// could not be certified.
    pub fn certify_intersection_in_garnir_module(&self) -> Result<GarnirCertificates> {
        let nonstd: Vec<&Tableau> = self.tableaux.iter().filter(|t| !t.is_standard()).collect();
        let mut labels = Vec::new();
        let mut generators = Vec::new();
        for t in &nonstd {
            let (pos, d) = self
                .garnir_factor(t)
                .ok_or_else(|| Error::IntegralityFailure(format!("no Garnir factorisation of {t}")))?;
            generators.push(h_garnir(&self.shape, pos)?.mul_perm_right(&d));
            labels.push((pos, d));
        }
        let certificates = nonstd
            .par_iter()
            .map(|t| {
                let h = self.intersection_element(t)?;
                span_membership(&h, &generators, &SpanMode::LinearSpan)
                    .map(|c| ((*t).clone(), c))
                    .ok_or_else(|| Error::IntegralityFailure(format!("h_{t} is not certified in M_0")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GarnirCertificates { labels, generators, certificates })
    }

    /// Checks every element `h_g T_w` (all Garnir `g`, all `w`) lies in
    /// `H^{>lambda}`; these span `M_0^lambda`. Returns the first failure.
    pub fn check_garnir_module_in_ideal(&self, basis: &MurphyBasis) -> Result<Option<(Node, Permutation)>> {
        let gens = self.garnir_elements()?;
        let perms = Permutation::all(self.degree());
        for (pos, h) in gens {
            let bad = perms
                .par_iter()
                .map(|w| Ok((*w, basis.ideal_membership(&h.mul_perm_right(w), &self.shape, true)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|(_, ok)| !ok);
            if let Some((w, _)) = bad {
                return Ok(Some((pos, w)));
            }
        }
        Ok(None)
    }

    /// The Murphy index `(lambda, t^lambda, v)`.
    pub fn top_index(&self, v: &Tableau) -> MurphyIndex {
        MurphyIndex { shape: self.shape.clone(), s: Tableau::superstandard(&self.shape), t: v.clone() }
    }
}

/// Output of [`PermutationModule::certify_intersection_in_garnir_module`].
pub struct GarnirCertificates {
    pub labels: Vec<(Node, Permutation)>,
    pub generators: Vec<HeckeElement>,
    pub certificates: Vec<(Tableau, Certificate)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn intersection_basis_lies_in_ideal() {
        let basis = MurphyBasis::for_degree(4).unwrap();
        for l in Partition::all(4) {
            let module = PermutationModule::new(&l).unwrap();
            for (_, h) in module.intersection_basis().unwrap() {
                assert!(basis.ideal_membership(&h, &l, true).unwrap());
                assert!(module.decompose(&h).unwrap().in_intersection());
            }
        }
    }

    #[test]
    fn coordinates_detect_non_members() {
        let module = PermutationModule::new(&lam("2,1")).unwrap();
        assert!(module.coordinates(&HeckeElement::one(3)).is_none());
        let x = module.x(&"13/2".parse().unwrap());
        assert_eq!(module.coordinates(&x).unwrap().len(), 1);
    }

    #[test]
    fn garnir_certificates_small() {
        for l in Partition::all(4) {
            let module = PermutationModule::new(&l).unwrap();
            let certs = module.certify_intersection_in_garnir_module().unwrap();
            assert_eq!(certs.certificates.len(), module.tableaux().iter().filter(|t| !t.is_standard()).count());
        }
    }
}
