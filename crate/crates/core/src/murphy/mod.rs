//! The Murphy basis `m_st = T_{w(s)}^* m_lambda T_{w(t)}` of `H_n`, its
//! ideals, Garnir elements, permutation modules and cell modules.

mod basis;
mod cell;
mod garnir;
mod module;
mod span;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::hecke::HeckeElement;
use crate::symgroup::{young_subgroup, Permutation};
use crate::tableaux::{Composition, Partition, Tableau};

pub use basis::{expand_by_elimination, transition_determinant, transition_matrix, MurphyBasis, MurphyExpansion};
pub use cell::{gram_matrix, gram_pairing, ActionMatrix, CellElement, CellModule};
pub use garnir::{
    conjugation_identity, curious_identity, d_alpha, d_alpha_from_cosets, garnir_family, h_garnir, h_garnir_unweighted,
    lambda_prime, CuriousIdentity,
};
pub use module::{Decomposition, GarnirCertificates, PermutationModule};
pub use span::{span_membership, Certificate, CertificateTerm, SpanMode};

/// `m_nu = sum over v in S_nu of q^l(v) T_v`.
pub fn m_poly(nu: &Composition) -> HeckeElement {
    let terms = young_subgroup(nu).into_iter().map(|v| {
        let c = LaurentPoly::q_pow(v.length() as i32);
        (v, c)
    });
    HeckeElement::from_terms(nu.size(), terms).expect("young subgroup has the right degree")
}

/// `m_lambda` for a partition.
pub fn m_lambda(lambda: &Partition) -> HeckeElement {
    m_poly(&lambda.as_composition())
}

/// Index `(lambda, s, t)` of a Murphy basis element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MurphyIndex {
    pub shape: Partition,
    pub s: Tableau,
    pub t: Tableau,
}

impl MurphyIndex {
    pub fn new(shape: Partition, s: Tableau, t: Tableau) -> Result<Self> {
        for x in [&s, &t] {
            if x.shape() != &shape {
                return Err(Error::ShapeMismatch(shape.to_string(), x.shape().to_string()));
            }
            if !x.is_standard() {
                return Err(Error::NotStandard(x.to_string()));
            }
        }
        Ok(Self { shape, s, t })
    }

    /// The index with `s` and `t` swapped.
    pub fn transposed(&self) -> Self {
        Self { shape: self.shape.clone(), s: self.t.clone(), t: self.s.clone() }
    }
}

impl PartialOrd for MurphyIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shapes most dominant first, then `s`, then `t`, each in the dominance
/// linear extension. This is the order of [`MurphyBasis::indices`].
impl Ord for MurphyIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape
            .cmp(&other.shape)
            .then_with(|| self.s.cmp(&other.s))
            .then_with(|| self.t.cmp(&other.t))
    }
}

impl fmt::Display for MurphyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {})", self.shape, self.s, self.t)
    }
}

impl fmt::Debug for MurphyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MurphyIndex{self}")
    }
}

/// `m_st` computed directly from its definition.
pub fn m_st(lambda: &Partition, s: &Tableau, t: &Tableau) -> Result<HeckeElement> {
    let idx = MurphyIndex::new(lambda.clone(), s.clone(), t.clone())?;
    Ok(m_index(&idx))
}

pub(crate) fn m_index(idx: &MurphyIndex) -> HeckeElement {
    murphy_from_parts(&m_lambda(&idx.shape).mul_perm_right(&idx.t.word()), &idx.s)
}

/// `T_{w(s)}^* x` for `x = m_lambda T_{w(t)}`.
pub(crate) fn murphy_from_parts(x: &HeckeElement, s: &Tableau) -> HeckeElement {
    x.mul_perm_left(&s.word().inverse())
}

/// `m_lambda T_w`.
pub fn m_lambda_t(lambda: &Partition, w: &Permutation) -> HeckeElement {
    m_lambda(lambda).mul_perm_right(w)
}
