use heckecell::murphy::{
    curious_identity, expand_by_elimination, gram_matrix, h_garnir, h_garnir_unweighted, m_lambda, m_st, transition_determinant,
    CellElement, CellModule, MurphyBasis, MurphyIndex, PermutationModule,
};
use heckecell::tableaux::standard_tableaux;
use heckecell::{HeckeElement, LaurentPoly, Node, Partition, Permutation, Tableau};

fn shape(s: &str) -> Partition {
    s.parse().unwrap()
}

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn m_lambda_of_two_rows() {
    let expected = &HeckeElement::one(2) + &HeckeElement::generator(2, 1).unwrap().scale(&LaurentPoly::q());
    assert_eq!(m_lambda(&shape("2")), expected);
    assert_eq!(m_lambda(&shape("1,1")), HeckeElement::one(2));
}

#[test]
fn basis_has_n_factorial_elements() {
    for n in 1..=4 {
        let basis = MurphyBasis::for_degree(n).unwrap();
        assert_eq!(basis.len(), (1..=n).product::<usize>());
        assert!(basis.has_unit_pivots());
        assert!(transition_determinant(n).is_laurent_unit());
    }
}

#[test]
fn expansions_agree_and_reassemble() {
    let basis = MurphyBasis::for_degree(4).unwrap();
    for w in Permutation::all(4).into_iter().step_by(5) {
        let h = HeckeElement::t_perm(&w);
        let e = basis.expand(&h).unwrap();
        assert_eq!(e.reassemble(), h);
        assert_eq!(expand_by_elimination(&h).unwrap(), e);
    }
}

#[test]
fn star_swaps_tableaux() {
    let l = shape("2,1");
    let tabs = standard_tableaux(&l);
    for s in &tabs {
        for t in &tabs {
            assert_eq!(m_st(&l, s, t).unwrap().star(), m_st(&l, t, s).unwrap());
        }
    }
    assert!(MurphyIndex::new(l, tabs[0].clone(), "1/2/3".parse().unwrap()).is_err());
}

#[test]
fn cell_module_of_hook() {
    let cell = CellModule::new(&shape("2,1")).unwrap();
    assert_eq!(cell.dim(), 2);
    let m1 = cell.action_matrix(1).unwrap();
    assert_eq!(m1[0], vec![p("q"), p("0")]);
    let top = CellElement::basis(&cell.tableaux()[0]).unwrap();
    let image = cell.act(&top, 1).unwrap();
    assert_eq!(image.coeff(&cell.tableaux()[0]), p("q"));
    assert!(cell.action_matrix(3).is_err());
}

#[test]
fn gram_form_is_symmetric() {
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
    assert_eq!(gram_matrix(&shape("2")).unwrap(), vec![vec![p("1 + q^2")]]);
    assert_eq!(gram_matrix(&shape("1,1")).unwrap(), vec![vec![p("1")]]);
}

#[test]
fn weighted_garnir_elements_lie_in_the_ideal() {
    let basis = MurphyBasis::for_degree(3).unwrap();
    let l = shape("2,1");
    let h = h_garnir(&l, Node::new(1, 1)).unwrap();
    assert!(basis.ideal_membership(&h, &l, true).unwrap());

    let ll = shape("1,1");
    let basis2 = MurphyBasis::for_degree(2).unwrap();
    let unweighted = h_garnir_unweighted(&ll, Node::new(1, 1)).unwrap();
    assert!(!basis2.ideal_membership(&unweighted, &ll, true).unwrap());
    assert!(basis2.ideal_membership(&h_garnir(&ll, Node::new(1, 1)).unwrap(), &ll, true).unwrap());
}

#[test]
fn straightening_in_the_permutation_module() {
    let l = shape("2,2");
    let module = PermutationModule::new(&l).unwrap();
    assert_eq!(module.tableaux().len(), 6);
    let g: Tableau = "23/14".parse().unwrap();
    let y = module.x(&g);
    let d = module.decompose(&y).unwrap();
    assert!(!d.standard.is_empty());
    for (_, h) in module.garnir_elements().unwrap() {
        assert!(module.decompose(&h).unwrap().in_intersection());
    }
    let cert = module.certify_intersection_in_garnir_module().unwrap();
    assert!(!cert.certificates.is_empty());
}

#[test]
fn curious_identities() {
    for n in 1..=4 {
        for l in Partition::all(n) {
            for alpha in l.removable_nodes() {
                assert!(curious_identity(&l, alpha).unwrap().all_hold(), "{l} {alpha}");
            }
        }
    }
}
