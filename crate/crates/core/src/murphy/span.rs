use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::exactpoly::linalg::{Echelon, SparseVec};
use crate::exactpoly::{LaurentPoly, RationalFunction};
use crate::hecke::HeckeElement;

/// What the generators are closed under before testing membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanMode {
    /// The `Z[q, q^-1]`-span of the generators themselves.
    LinearSpan,
    /// Generators closed under right multiplication by `T_i`, `i` in the
    /// list, until the span over `Q(q)` stops growing.
    RightModule(Vec<usize>),
}

/// `coeff * generators[generator] * T_{word[0]} * T_{word[1]} * ...`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub generator: usize,
    pub word: Vec<usize>,
    pub coeff: LaurentPoly,
}

/// A witness that an element is a `Z[q, q^-1]`-combination of the
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub terms: Vec<CertificateTerm>,
}

impl Certificate {
    /// Evaluates the combination; membership holds iff this reproduces the
    /// element exactly.
    pub fn evaluate(&self, degree: usize, generators: &[HeckeElement]) -> HeckeElement {
        self.terms.iter().fold(HeckeElement::zero(degree), |acc, term| {
            let x = term.word.iter().fold(generators[term.generator].clone(), |x, &i| x.mul_generator_right(i));
            &acc + &x.scale(&term.coeff)
        })
    }
}

fn rational_vector(h: &HeckeElement) -> SparseVec<RationalFunction> {
    h.terms().iter().map(|(w, c)| (w.order_key(), RationalFunction::from(c))).collect()
}

/// Decides whether `h` is a `Z[q, q^-1]`-combination of the spanning set
/// described by `generators` and `mode`, returning a verified certificate.
///
/// The spanning set is reduced to a `Q(q)`-basis first, so a `None` means
/// the unique coefficients over that basis are not Laurent polynomials (or
/// `h` is outside the `Q(q)`-span). A returned certificate has been checked
/// by exact evaluation.
pub fn span_membership(h: &HeckeElement, generators: &[HeckeElement], mode: &SpanMode) -> Option<Certificate> {
    if h.is_zero() {
        return Some(Certificate { terms: Vec::new() });
    }
    let degree = h.degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return None;
    }
    let mut echelon: Echelon<RationalFunction> = Echelon::new();
    let mut kept: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut queue: VecDeque<(usize, Vec<usize>, HeckeElement)> =
        generators.iter().enumerate().map(|(i, g)| (i, Vec::new(), g.clone())).collect();
    while let Some((generator, word, element)) = queue.pop_front() {
        if element.is_zero() {
            continue;
        }
        let id = kept.len() as u32;
        let inserted = echelon.insert(id, rational_vector(&element)).expect("field division");
        if let crate::exactpoly::linalg::Insertion::Pivot(_) = inserted {
            kept.push((generator, word.clone()));
            if let SpanMode::RightModule(indices) = mode {
                for &i in indices {
                    let mut next = word.clone();
                    next.push(i);
                    queue.push_back((generator, next, element.mul_generator_right(i)));
                }
            }
        }
    }
    let reduction = echelon.reduce(rational_vector(h)).expect("field division");
    if !reduction.in_span() {
        return None;
    }
    let mut terms = Vec::new();
    for (id, c) in reduction.combination {
        let coeff = LaurentPoly::try_from(&c).ok()?;
        let (generator, word) = kept[id as usize].clone();
        terms.push(CertificateTerm { generator, word, coeff });
    }
    let certificate = Certificate { terms };
    (certificate.evaluate(degree, generators) == *h).then_some(certificate)
}
