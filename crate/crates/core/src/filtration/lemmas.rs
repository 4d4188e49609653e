use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::verdict::{Verdict, Witness};
use crate::error::Result;
use crate::exactpoly::LaurentPoly;
use crate::hecke::HeckeElement;
use crate::murphy::{d_alpha, garnir_family, h_garnir, m_lambda, PermutationModule};
use crate::symgroup::Permutation;
use crate::tableaux::{row_standard_tableaux, Node, Partition, Tableau};

fn witness(lambda: &Partition, i: Option<usize>, t: Option<&Tableau>, detail: String) -> Verdict {
    Verdict::Fail(Witness { lambda: lambda.clone(), j: None, i, t: t.cloned(), detail })
}

/// Checks that `span{x_t : t in S standard} + (M^lambda ∩ H^{>lambda})` is
/// stable under `T_i` for `i` in `indices`, where `S` is the set of
/// row-standard tableaux accepted by `selector`.
///
/// The closure hypotheses on `S` are checked first; if they fail the
/// verdict is `Skipped` with the reason.
pub fn check_invariant_span(
    module: &PermutationModule,
    selector: impl Fn(&Tableau) -> bool,
    indices: &[usize],
) -> Result<Verdict> {
    let lambda = module.shape();
    let all = module.tableaux();
    let chosen: Vec<bool> = all.iter().map(&selector).collect();
    for (s, _) in all.iter().zip(&chosen).filter(|(_, c)| **c) {
        if let Some(t) = all.iter().zip(&chosen).find(|(t, c)| !**c && t.dominates(s).unwrap_or(false)) {
            return Ok(Verdict::Skipped(format!("selector is not closed upwards: {} dominates {s}", t.0)));
        }
        for &i in indices {
            if s.row_of(i) != s.row_of(i + 1) && !selector(&s.act(&Permutation::simple(s.size(), i)?)?) {
                return Ok(Verdict::Skipped(format!("selector is not closed under s_{i} at {s}")));
            }
        }
    }
    for (t, _) in all.iter().zip(&chosen).filter(|(t, c)| **c && t.is_standard()) {
        for &i in indices {
            let y = module.x(t).mul_generator_right(i);
            let Some(parts) = module.decompose(&y) else {
                return Ok(witness(lambda, Some(i), Some(t), "x_t T_i left M^lambda".into()));
            };
            if let Some((v, c)) = parts.standard.iter().find(|(v, _)| !selector(v)) {
                return Ok(witness(lambda, Some(i), Some(t), format!("coefficient {c} at x_{v}, outside the span")));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The span over `row_t(n) >= r` is `H_{n-1}`-stable.
pub fn corollary_row(module: &PermutationModule, r: usize) -> Result<Verdict> {
    let n = module.degree();
    let indices: Vec<usize> = (1..n.saturating_sub(1)).collect();
    check_invariant_span(module, |t| t.row_of(n).unwrap_or(0) >= r, &indices)
}

/// With `m` the entry of `t^lambda` at `gamma`, the span over
/// `[t↓(m-1)] = [t^lambda↓(m-1)]` is stable under `T_m, ..., T_{n-1}`.
pub fn corollary_shape_below(module: &PermutationModule, gamma: Node) -> Result<Verdict> {
    let n = module.degree();
    let lambda = module.shape();
    let m = lambda.superstandard_entry(gamma);
    let target = Tableau::superstandard(lambda).shape_below(m - 1);
    let indices: Vec<usize> = (m..n).collect();
    check_invariant_span(module, |t| t.shape_below(m - 1) == target, &indices)
}

/// Runs [`check_invariant_span`] on the up-set of every row-standard
/// tableau, with `I` the indices satisfying the second closure hypothesis.
/// Returns the combined verdict and the number of non-trivial instances.
pub fn submodule_lemma_family(module: &PermutationModule) -> Result<(Verdict, usize)> {
    let n = module.degree();
    let all = module.tableaux();
    let mut verdict = Verdict::Pass;
    let mut count = 0;
    for s0 in all {
        let upset: BTreeSet<&Tableau> = all.iter().filter(|t| t.dominates(s0).unwrap_or(false)).collect();
        let mut indices = Vec::new();
        for i in 1..n {
            let closed = upset.iter().all(|s| {
                s.row_of(i) == s.row_of(i + 1)
                    || upset.contains(&s.act(&Permutation::simple(n, i).expect("valid index")).expect("same size"))
            });
            if closed {
                indices.push(i);
            }
        }
        if indices.is_empty() {
            continue;
        }
        count += 1;
        verdict = verdict.and(check_invariant_span(module, |t| upset.contains(t), &indices)?);
        if verdict.is_fail() {
            break;
        }
    }
    Ok((verdict, count))
}

/// Coverage of [`verify_adjoin_lemma`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjoinSummary {
    pub cases: usize,
    pub fillings: usize,
    pub exhaustive: bool,
    pub seed: u64,
}

/// Fillings up to this size are checked exhaustively.
pub const ADJOIN_EXHAUSTIVE_MAX: usize = 5;
/// Random fillings per `(lambda, alpha)` above that size.
pub const ADJOIN_SAMPLES: usize = 200;

/// `w(s ∪ alpha) = (n, n-1, ..., a) w(s)` and
/// `T_{w(s ∪ alpha)} = T_{a,n} T_{w(s)}` for every `lambda` of size `n`,
/// removable `alpha` and `mu`-tableau `s`.
pub fn verify_adjoin_lemma(n: usize, seed: u64) -> Result<(Verdict, AdjoinSummary)> {
    let exhaustive = n <= ADJOIN_EXHAUSTIVE_MAX;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = AdjoinSummary { cases: 0, fillings: 0, exhaustive, seed };
    if n < 2 {
        return Ok((Verdict::Skipped("needs n >= 2".into()), summary));
    }
    let small = if exhaustive { Permutation::all(n - 1) } else { Vec::new() };
    for lambda in Partition::all(n) {
        for alpha in lambda.removable_nodes() {
            summary.cases += 1;
            let mu = lambda.remove(alpha)?;
            let a = lambda.superstandard_entry(alpha);
            let cycle = Permutation::cycle_down(n, a)?;
            let t_cycle = HeckeElement::t_interval(n, a, n)?;
            let words: Vec<Permutation> = if exhaustive {
                small.clone()
            } else {
                (0..ADJOIN_SAMPLES)
                    .map(|_| {
                        let mut images: Vec<usize> = (1..n).collect();
                        images.shuffle(&mut rng);
                        Permutation::from_images(&images).expect("shuffled identity")
                    })
                    .collect()
            };
            for w in words {
                summary.fillings += 1;
                let s = Tableau::from_word(&mu, &w)?;
                let joined = s.adjoin(alpha)?;
                let ws = w.embed(n)?;
                let expected = cycle.compose(&ws)?;
                if joined.word() != expected {
                    let detail = format!("w(s ∪ alpha) = {}, cycle times w(s) = {expected}", joined.word());
                    return Ok((witness(&lambda, None, Some(&joined), detail), summary));
                }
                if HeckeElement::t_perm(&joined.word()) != t_cycle.try_mul(&HeckeElement::t_perm(&ws))? {
                    let detail = format!("T_(a,n) T_w(s) differs from T_w(s ∪ alpha) for a = {a}");
                    return Ok((witness(&lambda, None, Some(&joined), detail), summary));
                }
            }
        }
    }
    Ok((Verdict::Pass, summary))
}

/// Random words in `T_1, ..., T_{k}` of length at most `max_len`.
fn random_words(rng: &mut ChaCha8Rng, k: usize, count: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| rng.gen_range(1..=k)).collect()
        })
        .collect()
}

/// `phi_0(m_mu h) = m_lambda T_{a,n} h` is consistent: it agrees with
/// `D(alpha)^* T_{a,n} m_mu h` on generators and random short products, and
/// kills `m_mu (T_i - q)` whenever `s_i` lies in `S_mu`.
pub fn verify_phi_well_defined(lambda: &Partition, alpha: Node, seed: u64, samples: usize) -> Result<Verdict> {
    let n = lambda.size();
    if n < 3 {
        return Ok(Verdict::Skipped("H_{n-1} has no generators".into()));
    }
    let mu = lambda.remove(alpha)?;
    let a = lambda.superstandard_entry(alpha);
    let m_l = m_lambda(lambda);
    let t_up = HeckeElement::t_interval(n, a, n)?;
    let left = m_l.try_mul(&t_up)?;
    let right = d_alpha(lambda, alpha)?.star().try_mul(&t_up)?.try_mul(&m_lambda(&mu).embed(n)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<Vec<usize>> = (1..n - 1).map(|i| vec![i]).collect();
    words.extend(random_words(&mut rng, n - 2, samples, 4));
    for word in words {
        let apply = |x: &HeckeElement| word.iter().fold(x.clone(), |y, &i| y.mul_generator_right(i));
        if apply(&left) != apply(&right) {
            return Ok(witness(lambda, None, None, format!("images differ for the word {word:?} at alpha = {alpha}")));
        }
    }
    let top = Tableau::superstandard(&mu);
    for i in 1..n - 1 {
        if top.row_of(i) == top.row_of(i + 1) {
            let kernel = left.mul_generator_right(i).try_sub(&left.scale(&LaurentPoly::q()))?;
            if !kernel.is_zero() {
                return Ok(witness(lambda, Some(i), None, format!("m_mu (T_{i} - q) has a non-zero image")));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Whether `alpha` lies outside (`One`) or inside (`Two`) the Garnir strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GarnirCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

/// Outcome for one Garnir position of `mu = lambda \ alpha`.
#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub alpha: Node,
    pub position: Node,
    pub case: GarnirCase,
    /// `m` from the case analysis.
    pub m: usize,
    /// Sizes of the sets `A` and `B` (`B` is empty in case 1).
    pub a_set: usize,
    pub b_set: usize,
    pub verdict: Verdict,
}

struct CaseContext<'a> {
    module: &'a PermutationModule,
    alpha: Node,
    earlier: &'a [Node],
    a: usize,
}

/// Case analysis for `phi_0(h_{g_0})` over all Garnir positions of
/// `lambda \ alpha`; `module` must be the permutation module of `lambda`.
pub fn verify_case_identities(module: &PermutationModule, alpha: Node) -> Result<Vec<CaseRecord>> {
    let lambda = module.shape();
    let mu = lambda.remove(alpha)?;
    let alphas = lambda.removable_nodes();
    let k = alphas.iter().position(|&x| x == alpha).expect("removable");
    let ctx = CaseContext { module, alpha, earlier: &alphas[..k], a: lambda.superstandard_entry(alpha) };
    mu.garnir_positions().into_iter().map(|pos| check_position(&ctx, &mu, pos)).collect()
}

fn check_position(ctx: &CaseContext<'_>, mu: &Partition, pos: Node) -> Result<CaseRecord> {
    let lambda = ctx.module.shape();
    let n = lambda.size();
    let alpha = ctx.alpha;
    let g = Tableau::garnir(lambda, pos)?;
    let strip = lambda.garnir_strip(pos)?;
    let case = if strip.contains(&alpha) { GarnirCase::Two } else { GarnirCase::One };
    let m = g.entry(alpha).expect("node of lambda");
    let mut record = CaseRecord { alpha, position: pos, case, m, a_set: 0, b_set: 0, verdict: Verdict::Pass };
    let fail = |detail: String, t: Option<&Tableau>| witness(lambda, None, t, format!("g at {pos}: {detail}"));

    let family = garnir_family(lambda, pos)?;
    let dominating: BTreeSet<Tableau> =
        row_standard_tableaux(lambda).into_iter().filter(|t| t.dominates(&g).unwrap_or(false)).collect();
    if dominating != family.iter().cloned().collect() {
        record.verdict = fail("row-standard tableaux dominating g differ from the Garnir family".into(), None);
        return Ok(record);
    }
    if case == GarnirCase::One && m != ctx.a {
        record.verdict = fail(format!("g(alpha) = {m} but t^lambda(alpha) = {}", ctx.a), None);
        return Ok(record);
    }
    if case == GarnirCase::Two && strip.iter().any(|&x| g.entry(x).expect("node") > m) {
        record.verdict = fail(format!("{m} is not the largest entry of the strip"), None);
        return Ok(record);
    }

    let lower = Node::new(pos.row + 1, pos.col);
    let mut a_set = Vec::new();
    let mut b_set = Vec::new();
    for tau in &family {
        let node = tau.node_of(m).expect("entry m");
        if node == alpha {
            a_set.push(tau);
        } else if case == GarnirCase::Two && node == lower {
            b_set.push(tau);
        } else {
            record.verdict = fail(format!("{m} sits at {node}, neither alpha nor {lower}"), Some(tau));
            return Ok(record);
        }
    }
    record.a_set = a_set.len();
    record.b_set = b_set.len();

    let cycle = Permutation::cycle_down(n, m)?;
    let t_mn = HeckeElement::t_interval(n, m, n)?;
    let mut images = BTreeSet::new();
    for tau in &a_set {
        let joined = tau.act(&cycle)?;
        let tau0 = joined.restrict(n - 1)?;
        if joined.node_of(n) != Some(alpha) || tau0.adjoin(alpha)? != joined {
            record.verdict = fail("tau (n, ..., m) is not of the form tau_0 ∪ alpha".into(), Some(tau));
            return Ok(record);
        }
        if HeckeElement::t_perm(&joined.word()) != HeckeElement::t_perm(&tau.word()).try_mul(&t_mn)? {
            record.verdict = fail("T_w(tau_0 ∪ alpha) differs from T_w(tau) T_(m,n)".into(), Some(tau));
            return Ok(record);
        }
        let mut prev = (*tau).clone();
        for i in m..n {
            let next = prev.act(&Permutation::simple(n, i)?)?;
            if !prev.strictly_dominates(&next)? {
                record.verdict = fail(format!("dominance chain breaks at s_{i}"), Some(tau));
                return Ok(record);
            }
            prev = next;
        }
        images.insert(tau0);
    }
    let family0 = garnir_family(mu, pos)?;
    if images.len() != a_set.len() || images != family0.iter().cloned().collect() {
        record.verdict = fail("tau -> tau_0 is not a bijection onto the Garnir family of mu".into(), None);
        return Ok(record);
    }

    let target = Tableau::superstandard(lambda).shape_below(m - 1);
    for tau in &b_set {
        if tau.shape_below(m - 1) != target {
            record.verdict = fail("tau in B has [tau↓(m-1)] different from t^lambda".into(), Some(tau));
            return Ok(record);
        }
        let y = ctx.module.x(tau).try_mul(&t_mn)?;
        let parts = ctx.module.decompose(&y).expect("element of M^lambda");
        let stray = parts.standard.keys().find(|v| {
            v.shape_below(m - 1) != target || !ctx.earlier.contains(&v.node_of(n).expect("n occurs"))
        });
        if let Some(v) = stray {
            record.verdict = fail(format!("x_tau T_(m,n) has a standard term at {v}"), Some(tau));
            return Ok(record);
        }
    }

    let weighted = |tabs: &mut dyn Iterator<Item = &Tableau>, degree| {
        HeckeElement::from_terms(degree, tabs.map(|t| (t.word(), LaurentPoly::q_pow(t.word().length() as i32))))
    };
    let m_l = m_lambda(lambda);
    let x0 = weighted(&mut family0.iter(), n - 1)?;
    let image = m_l.try_mul(&HeckeElement::t_interval(n, ctx.a, n)?)?.try_mul(&x0.embed(n)?)?;
    let b_sum = weighted(&mut b_set.iter().copied(), n)?;
    let expected = h_garnir(lambda, pos)?
        .try_sub(&m_l.try_mul(&b_sum)?)?
        .try_mul(&t_mn)?
        .scale(&LaurentPoly::q_pow(ctx.a as i32 - m as i32));
    if image != expected {
        record.verdict = fail("phi_0(h_g0) differs from the case formula".into(), None);
        return Ok(record);
    }
    let parts = ctx.module.decompose(&image).expect("element of M^lambda");
    let bad = match case {
        GarnirCase::One => parts.standard.keys().next(),
        GarnirCase::Two => parts.standard.keys().find(|v| !ctx.earlier.contains(&v.node_of(n).expect("n occurs"))),
    };
    if let Some(v) = bad {
        record.verdict = fail(format!("phi_0(h_g0) has a standard term at {v}"), Some(v));
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn adjoin_lemma_small() {
        for n in 2..=4 {
            let (v, summary) = verify_adjoin_lemma(n, 0).unwrap();
            assert!(v.is_pass(), "{v:?}");
            assert!(summary.exhaustive);
        }
    }

    #[test]
    fn corollaries_small() {
        for n in 2..=4 {
            for l in Partition::all(n) {
                let module = PermutationModule::new(&l).unwrap();
                for r in 1..=l.num_rows() {
                    assert!(corollary_row(&module, r).unwrap().is_pass());
                }
                for gamma in l.nodes() {
                    assert!(corollary_shape_below(&module, gamma).unwrap().is_pass());
                }
                let all: Vec<usize> = (1..n).collect();
                assert!(check_invariant_span(&module, |_| true, &all).unwrap().is_pass());
            }
        }
    }

    #[test]
    fn case_examples() {
        let module = PermutationModule::new(&lam("2,2")).unwrap();
        let records = verify_case_identities(&module, Node::new(2, 2)).unwrap();
        assert_eq!(records[0].case, GarnirCase::One);
        assert!(records.iter().all(|r| r.verdict.is_pass()), "{records:?}");
        let module = PermutationModule::new(&lam("2,1")).unwrap();
        let records = verify_case_identities(&module, Node::new(1, 2)).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].case, GarnirCase::Two);
        assert!(records[0].verdict.is_pass(), "{records:?}");
    }

    #[test]
    fn phi_is_well_defined_small() {
        for n in 3..=5 {
            for l in Partition::all(n) {
                for alpha in l.removable_nodes() {
                    assert!(verify_phi_well_defined(&l, alpha, 1, 5).unwrap().is_pass());
                }
            }
        }
    }
}
