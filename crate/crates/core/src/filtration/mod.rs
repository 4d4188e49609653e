//! The filtration `0 = N_0 ⊂ N_1 ⊂ ... ⊂ N_p` of the restriction of a cell
//! module to `H_{n-1}`, and checks of its properties.

mod lemmas;
mod verdict;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::exactpoly::LaurentPoly;
use crate::murphy::{ActionMatrix, CellModule};
use crate::tableaux::{standard_tableaux, Node, Partition, Tableau};

pub use lemmas::{
    check_invariant_span, corollary_row, corollary_shape_below, submodule_lemma_family, verify_adjoin_lemma,
    verify_case_identities, verify_phi_well_defined, AdjoinSummary, CaseRecord, GarnirCase,
};
pub use verdict::{Verdict, Witness};

/// One step `N_j` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLayer {
    pub j: usize,
    pub alpha: Node,
    pub mu: Partition,
    /// Standard tableaux `t` with `node_t(n)` in `{alpha_1, ..., alpha_j}`,
    /// most dominant first.
    pub basis: Vec<Tableau>,
    /// The part of `basis` with `n` at `alpha_j`.
    pub added: Vec<Tableau>,
}

/// Layers of the filtration of `Res Δ^lambda`, removable nodes taken from
/// bottom to top. Purely combinatorial.
pub fn build_filtration(lambda: &Partition) -> Vec<FiltrationLayer> {
    let n = lambda.size();
    if n == 0 {
        return Vec::new();
    }
    let tabs = standard_tableaux(lambda);
    let alphas = lambda.removable_nodes();
    let mut layers = Vec::new();
    for (k, &alpha) in alphas.iter().enumerate() {
        let seen = &alphas[..=k];
        let basis: Vec<Tableau> =
            tabs.iter().filter(|t| seen.contains(&t.node_of(n).expect("n occurs"))).cloned().collect();
        let added = basis.iter().filter(|t| t.node_of(n) == Some(alpha)).cloned().collect();
        let mu = lambda.remove(alpha).expect("removable");
        layers.push(FiltrationLayer { j: k + 1, alpha, mu, basis, added });
    }
    layers
}

/// Matrices of `T_i` on `N_j / N_{j-1}` (basis `m_{s ∪ alpha_j}`) and on
/// `Δ^mu` (basis `m_s`), rows and columns indexed by standard `mu`-tableaux
/// in dominance order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixPair {
    pub i: usize,
    pub quotient: ActionMatrix,
    pub cell: ActionMatrix,
}

/// The restriction of `Δ^lambda` together with its layers.
pub struct Filtration {
    lambda: Partition,
    layers: Vec<FiltrationLayer>,
    cell: CellModule,
}

impl Filtration {
    pub fn new(lambda: &Partition) -> Result<Self> {
        Ok(Self { lambda: lambda.clone(), layers: build_filtration(lambda), cell: CellModule::new(lambda)? })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn layers(&self) -> &[FiltrationLayer] {
        &self.layers
    }

    pub fn cell(&self) -> &CellModule {
        &self.cell
    }

    fn n(&self) -> usize {
        self.lambda.size()
    }

    fn layer(&self, j: usize) -> Result<&FiltrationLayer> {
        self.layers
            .get(j.wrapping_sub(1))
            .ok_or(crate::Error::IndexOutOfRange { index: j, max: self.layers.len() })
    }

    /// `N_j` is stable under `T_1, ..., T_{n-2}`.
    pub fn check_submodule(&self, j: usize) -> Result<Verdict> {
        let layer = self.layer(j)?;
        let inside: Vec<bool> = {
            let alphas = &self.lambda.removable_nodes()[..j];
            self.cell.tableaux().iter().map(|t| alphas.contains(&t.node_of(self.n()).expect("n occurs"))).collect()
        };
        for i in 1..self.n().saturating_sub(1) {
            let matrix = self.cell.action_matrix(i)?;
            for t in &layer.basis {
                let row = &matrix[self.cell.position(t).expect("standard")];
                if let Some((v, c)) = row.iter().enumerate().find(|(v, c)| !inside[*v] && !c.is_zero()) {
                    return Ok(Verdict::Fail(Witness {
                        lambda: self.lambda.clone(),
                        j: Some(j),
                        i: Some(i),
                        t: Some(t.clone()),
                        detail: format!("coefficient {c} at {} outside N_{j}", self.cell.tableaux()[v]),
                    }));
                }
            }
        }
        Ok(Verdict::Pass)
    }

    /// Both sides of the isomorphism `N_j / N_{j-1} ≅ Δ^mu` for every
    /// generator of `H_{n-1}`.
    pub fn quotient_matrices(&self, j: usize) -> Result<Vec<MatrixPair>> {
        let layer = self.layer(j)?;
        let n = self.n();
        if n < 3 {
            return Ok(Vec::new());
        }
        let small = CellModule::new(&layer.mu)?;
        let earlier = &self.lambda.removable_nodes()[..j - 1];
        let index: HashMap<Tableau, usize> =
            small.tableaux().iter().enumerate().map(|(k, s)| (s.adjoin(layer.alpha).expect("addable"), k)).collect();
        let d = small.dim();
        let mut out = Vec::new();
        for i in 1..n - 1 {
            let big = self.cell.action_matrix(i)?;
            let mut quotient = vec![vec![LaurentPoly::zero(); d]; d];
            for (k, s) in small.tableaux().iter().enumerate() {
                let t = s.adjoin(layer.alpha)?;
                let row = &big[self.cell.position(&t).expect("standard")];
                for (v, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let tv = &self.cell.tableaux()[v];
                    match index.get(tv) {
                        Some(&col) => quotient[k][col] = c.clone(),
                        None if earlier.contains(&tv.node_of(n).expect("n occurs")) => {}
                        None => {
                            return Err(crate::Error::IntegralityFailure(format!(
                                "m_{t} T_{i} leaves N_{j} at {tv}"
                            )))
                        }
                    }
                }
            }
            out.push(MatrixPair { i, quotient, cell: small.action_matrix(i)?.clone() });
        }
        Ok(out)
    }

    /// Exact equality of every matrix pair from [`Self::quotient_matrices`].
    pub fn verify_iso(&self, j: usize) -> Result<(Verdict, Vec<MatrixPair>)> {
        let pairs = match self.quotient_matrices(j) {
            Ok(p) => p,
            Err(crate::Error::IntegralityFailure(detail)) => {
                let w = Witness { lambda: self.lambda.clone(), j: Some(j), i: None, t: None, detail };
                return Ok((Verdict::Fail(w), Vec::new()));
            }
            Err(e) => return Err(e),
        };
        let layer = self.layer(j)?;
        if layer.added.len() as u64 != layer.mu.hook_length_count() {
            let detail = format!("{} new basis vectors, {} standard {}-tableaux", layer.added.len(), layer.mu.hook_length_count(), layer.mu);
            return Ok((Verdict::Fail(Witness { lambda: self.lambda.clone(), j: Some(j), i: None, t: None, detail }), pairs));
        }
        let tabs = standard_tableaux(&layer.mu);
        for pair in &pairs {
            for (r, (a, b)) in pair.quotient.iter().zip(&pair.cell).enumerate() {
                if let Some(c) = (0..a.len()).find(|&c| a[c] != b[c]) {
                    let t = tabs[r].adjoin(layer.alpha)?;
                    let detail =
                        format!("column {}: quotient {} vs cell module {}", tabs[c], a[c], b[c]);
                    let w = Witness { lambda: self.lambda.clone(), j: Some(j), i: Some(pair.i), t: Some(t), detail };
                    return Ok((Verdict::Fail(w), pairs));
                }
            }
        }
        Ok((Verdict::Pass, pairs))
    }

    pub fn verify_order_preserving(&self) -> Verdict {
        verify_order_preserving(&self.lambda)
    }

    pub fn report(&self, seed: u64, with_matrices: bool) -> Result<RestrictionReport> {
        let mut layers = Vec::new();
        for layer in &self.layers {
            let submodule = self.check_submodule(layer.j)?;
            let (iso, pairs) = self.verify_iso(layer.j)?;
            layers.push(LayerReport {
                j: layer.j,
                alpha: layer.alpha,
                mu: layer.mu.clone(),
                dim: layer.added.len(),
                submodule,
                iso,
                matrices: with_matrices.then_some(pairs),
            });
        }
        Ok(RestrictionReport {
            lambda: self.lambda.clone(),
            layers,
            order_preserving: self.verify_order_preserving(),
            dimensions: check_dimensions(&self.lambda),
            seed,
        })
    }
}

/// `mu^(1) ▷ mu^(2) ▷ ... ▷ mu^(p)`.
pub fn verify_order_preserving(lambda: &Partition) -> Verdict {
    let layers = build_filtration(lambda);
    for pair in layers.windows(2) {
        if !pair[0].mu.strictly_dominates(&pair[1].mu) {
            return Verdict::Fail(Witness {
                lambda: lambda.clone(),
                j: Some(pair[1].j),
                i: None,
                t: None,
                detail: format!("{} does not strictly dominate {}", pair[0].mu, pair[1].mu),
            });
        }
    }
    Verdict::Pass
}

/// Each layer adds `#Std(mu^(j))` basis vectors and the total is
/// `#Std(lambda)`.
pub fn check_dimensions(lambda: &Partition) -> Verdict {
    let layers = build_filtration(lambda);
    let fail = |j: Option<usize>, detail: String| {
        Verdict::Fail(Witness { lambda: lambda.clone(), j, i: None, t: None, detail })
    };
    for layer in &layers {
        let expected = layer.mu.hook_length_count();
        if layer.added.len() as u64 != expected {
            return fail(Some(layer.j), format!("{} tableaux added, expected {expected}", layer.added.len()));
        }
    }
    let total: u64 = layers.iter().map(|l| l.mu.hook_length_count()).sum();
    if total != lambda.hook_length_count() || layers.last().map_or(0, |l| l.basis.len() as u64) != total {
        return fail(None, format!("layers sum to {total}, dim is {}", lambda.hook_length_count()));
    }
    Verdict::Pass
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerReport {
    pub j: usize,
    pub alpha: Node,
    pub mu: Partition,
    pub dim: usize,
    pub submodule: Verdict,
    pub iso: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixPair>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub lambda: Partition,
    pub layers: Vec<LayerReport>,
    pub order_preserving: Verdict,
    pub dimensions: Verdict,
    pub seed: u64,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(|l| l.submodule.is_pass() && l.iso.is_pass())
            && self.order_preserving.is_pass()
            && self.dimensions.is_pass()
    }

    /// All verdicts in report order.
    pub fn verdicts(&self) -> Vec<&Verdict> {
        let mut out: Vec<&Verdict> = self.layers.iter().flat_map(|l| [&l.submodule, &l.iso]).collect();
        out.push(&self.order_preserving);
        out.push(&self.dimensions);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn layers_of_small_shapes() {
        let layers = build_filtration(&lam("2,1"));
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0].alpha, Node::new(2, 1));
        assert_eq!(layers[0].mu, lam("2"));
        assert_eq!(layers[0].basis, vec!["12/3".parse::<Tableau>().unwrap()]);
        assert_eq!(layers[1].mu, lam("1,1"));
        assert_eq!(layers[1].added, vec!["13/2".parse::<Tableau>().unwrap()]);
        let mus: Vec<String> = build_filtration(&lam("3,2,1")).iter().map(|l| l.mu.to_string()).collect();
        assert_eq!(mus, ["3,2", "3,1,1", "2,2,1"]);
        assert_eq!(build_filtration(&lam("4")).len(), 1);
    }

    #[test]
    fn worked_example_matrices() {
        let f = Filtration::new(&lam("2,1")).unwrap();
        let (v1, m1) = f.verify_iso(1).unwrap();
        assert!(v1.is_pass());
        assert_eq!(m1[0].cell, vec![vec![LaurentPoly::q()]]);
        let (v2, m2) = f.verify_iso(2).unwrap();
        assert!(v2.is_pass());
        assert_eq!(m2[0].quotient, vec![vec!["-q^-1".parse::<LaurentPoly>().unwrap()]]);
        assert!(f.check_submodule(1).unwrap().is_pass());
    }

    #[test]
    fn theorem_small() {
        for n in 1..=5 {
            for l in Partition::all(n) {
                let report = Filtration::new(&l).unwrap().report(0, false).unwrap();
                assert!(report.passed(), "{}", serde_json::to_string(&report).unwrap());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let report = Filtration::new(&lam("2,1")).unwrap().report(7, false).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"lambda":"2,1","layers":[{"j":1,"alpha":[2,1],"mu":"2","dim":1,"submodule":"pass","iso":"pass"}"#), "{json}");
        assert!(json.ends_with(r#""order_preserving":"pass","dimensions":"pass","seed":7}"#));
    }
}
