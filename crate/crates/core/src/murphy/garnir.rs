use super::{m_lambda, m_poly};
use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::hecke::HeckeElement;
use crate::symgroup::distinguished_coset_reps;
use crate::tableaux::{standard_tableaux, Composition, Node, Partition, Tableau};

/// The Garnir tableau `g` at `pos` followed by the standard tableaux
/// strictly dominating it.
pub fn garnir_family(lambda: &Partition, pos: Node) -> Result<Vec<Tableau>> {
    let g = Tableau::garnir(lambda, pos)?;
    let mut out = vec![g.clone()];
    for t in standard_tableaux(lambda) {
        if t.strictly_dominates(&g)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// The Garnir element `h_g = sum q^l(w(tau)) m_lambda T_{w(tau)}` over `g`
/// and the standard `tau` strictly dominating `g`.
///
/// The powers of `q` make `h_g` lie in `H^{>lambda}` under the relation
/// `(T_i - q)(T_i + q^-1) = 0`; see [`h_garnir_unweighted`].
pub fn h_garnir(lambda: &Partition, pos: Node) -> Result<HeckeElement> {
    let n = lambda.size();
    let family = garnir_family(lambda, pos)?;
    let sum = HeckeElement::from_terms(
        n,
        family.iter().map(|t| {
            let w = t.word();
            (w, LaurentPoly::q_pow(w.length() as i32))
        }),
    )?;
    m_lambda(lambda).try_mul(&sum)
}

/// `m_lambda T_{w(g)} + sum m_lambda T_{w(tau)}` with all coefficients one.
/// Under the quadratic relation used here this is generally *not* in
/// `H^{>lambda}`; kept to document the difference.
pub fn h_garnir_unweighted(lambda: &Partition, pos: Node) -> Result<HeckeElement> {
    let n = lambda.size();
    let family = garnir_family(lambda, pos)?;
    let sum = HeckeElement::from_terms(n, family.iter().map(|t| (t.word(), LaurentPoly::one())))?;
    m_lambda(lambda).try_mul(&sum)
}

fn check_removable(lambda: &Partition, alpha: Node) -> Result<Partition> {
    lambda.remove(alpha)
}

/// First and last entries `(b, a)` of the superstandard tableau in the row
/// of `alpha`.
fn row_bounds(lambda: &Partition, alpha: Node) -> (usize, usize) {
    (lambda.superstandard_entry(Node::new(alpha.row, 1)), lambda.superstandard_entry(alpha))
}

/// `D(alpha) = 1 + q T_{a-1} + q^2 T_{a-1} T_{a-2} + ... + q^{a-b} T_{a-1} ... T_b`.
pub fn d_alpha(lambda: &Partition, alpha: Node) -> Result<HeckeElement> {
    check_removable(lambda, alpha)?;
    let n = lambda.size();
    let (b, a) = row_bounds(lambda, alpha);
    let mut out = HeckeElement::zero(n);
    for k in 0..=(a - b) {
        let term = HeckeElement::t_interval(n, a, a - k)?.scale(&LaurentPoly::q_pow(k as i32));
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// The composition `(mu_1, ..., mu_r, 1, mu_{r+1}, ...)` where `r` is the
/// row of `alpha` and `mu = lambda \ alpha`; empty parts are dropped.
pub fn lambda_prime(lambda: &Partition, alpha: Node) -> Result<Composition> {
    let mu = check_removable(lambda, alpha)?;
    let mut parts = Vec::new();
    for r in 1..=lambda.num_rows() {
        parts.push(mu.row_len(r));
        if r == alpha.row {
            parts.push(1);
        }
    }
    parts.retain(|&p| p > 0);
    Composition::new(parts)
}

/// `sum q^l(x) T_x` over distinguished right coset representatives of
/// `S_{lambda'}` in `S_lambda`.
pub fn d_alpha_from_cosets(lambda: &Partition, alpha: Node) -> Result<HeckeElement> {
    let inner = lambda_prime(lambda, alpha)?;
    let reps = distinguished_coset_reps(&inner, &lambda.as_composition())?;
    HeckeElement::from_terms(lambda.size(), reps.into_iter().map(|x| (x, LaurentPoly::q_pow(x.length() as i32))))
}

/// `T_{n,a}^-1 = T_a^-1 T_{a+1}^-1 ... T_{n-1}^-1`.
fn t_down_inverse(n: usize, a: usize) -> Result<HeckeElement> {
    let mut out = HeckeElement::one(n);
    for k in a..n {
        out = out.try_mul(&HeckeElement::gen_inverse(n, k)?)?;
    }
    Ok(out)
}

/// Whether `T_{n,a}^-1 T_j T_{n,a} = T_{j+1}` holds in `H_n`.
pub fn conjugation_identity(n: usize, a: usize, j: usize) -> Result<bool> {
    if j + 1 >= n {
        return Err(Error::IndexOutOfRange { index: j, max: n.saturating_sub(2) });
    }
    let lhs = t_down_inverse(n, a)?
        .try_mul(&HeckeElement::generator(n, j)?)?
        .try_mul(&HeckeElement::t_interval(n, n, a)?)?;
    Ok(lhs == HeckeElement::generator(n, j + 1)?)
}

/// Outcome of the three identities relating `m_lambda` and `m_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuriousIdentity {
    /// `D(alpha)^* T_{a,n} m_mu = m_lambda T_{a,n}`.
    pub main: bool,
    /// `m_{lambda'} = T_{n,a}^-1 m_mu T_{n,a}`.
    pub conjugated: bool,
    /// `m_lambda = m_{lambda'} D(alpha)`.
    pub factorization: bool,
    /// `D(alpha)` equals the coset sum.
    pub cosets: bool,
}

impl CuriousIdentity {
    pub fn all_hold(&self) -> bool {
        self.main && self.conjugated && self.factorization && self.cosets
    }
}

pub fn curious_identity(lambda: &Partition, alpha: Node) -> Result<CuriousIdentity> {
    let mu = check_removable(lambda, alpha)?;
    let n = lambda.size();
    let a = lambda.superstandard_entry(alpha);
    let m_mu = m_lambda(&mu).embed(n)?;
    let m_l = m_lambda(lambda);
    let d = d_alpha(lambda, alpha)?;
    let t_up = HeckeElement::t_interval(n, a, n)?;
    let t_down = HeckeElement::t_interval(n, n, a)?;
    let main = d.star().try_mul(&t_up)?.try_mul(&m_mu)? == m_l.try_mul(&t_up)?;
    let m_prime = m_poly(&lambda_prime(lambda, alpha)?);
    let conjugated = t_down_inverse(n, a)?.try_mul(&m_mu)?.try_mul(&t_down)? == m_prime;
    let factorization = m_prime.try_mul(&d)? == m_l;
    let cosets = d == d_alpha_from_cosets(lambda, alpha)?;
    Ok(CuriousIdentity { main, conjugated, factorization, cosets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::murphy::MurphyBasis;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn d_alpha_examples() {
        assert_eq!(d_alpha(&lam("2,1"), Node::new(2, 1)).unwrap(), HeckeElement::one(3));
        let expected = &HeckeElement::one(2) + &HeckeElement::generator(2, 1).unwrap().scale(&LaurentPoly::q());
        assert_eq!(d_alpha(&lam("2"), Node::new(1, 2)).unwrap(), expected);
        assert!(matches!(d_alpha(&lam("2,1"), Node::new(1, 1)), Err(Error::NotRemovable { .. })));
        assert_eq!(lambda_prime(&lam("2,2"), Node::new(2, 2)).unwrap().parts(), &[2, 1, 1]);
        assert_eq!(lambda_prime(&lam("2,1"), Node::new(2, 1)).unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn curious_identities_small() {
        for n in 1..=5 {
            for l in Partition::all(n) {
                for alpha in l.removable_nodes() {
                    let c = curious_identity(&l, alpha).unwrap();
                    assert!(c.all_hold(), "{l} {alpha}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn conjugation_range() {
        for n in 2..=5 {
            for a in 1..n {
                for j in a..n - 1 {
                    assert!(conjugation_identity(n, a, j).unwrap());
                }
            }
        }
        assert!(conjugation_identity(3, 1, 2).is_err());
    }

    #[test]
    fn garnir_weights_matter() {
        let l = lam("1,1");
        let pos = Node::new(1, 1);
        let basis = MurphyBasis::for_degree(2).unwrap();
        let h = h_garnir(&l, pos).unwrap();
        assert_eq!(h, m_lambda(&lam("2")));
        assert!(basis.ideal_membership(&h, &l, true).unwrap());
        let plain = h_garnir_unweighted(&l, pos).unwrap();
        assert!(!basis.ideal_membership(&plain, &l, true).unwrap());
    }

    #[test]
    fn garnir_family_agrees_outside_strip() {
        let l = lam("2,1");
        let fam = garnir_family(&l, Node::new(1, 1)).unwrap();
        let strip = l.garnir_strip(Node::new(1, 1)).unwrap();
        let top = Tableau::superstandard(&l);
        assert!(fam[1..].iter().all(|t| t.is_standard() && t.agrees_outside(&top, &strip)));
        assert_eq!(fam.len(), 3);
    }
}
