use heckecell::filtration::{
    build_filtration, check_dimensions, corollary_row, verify_adjoin_lemma, verify_case_identities, verify_order_preserving,
    verify_phi_well_defined, Filtration, GarnirCase, Verdict,
};
use heckecell::murphy::PermutationModule;
use heckecell::{Node, Partition};

fn shape(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn layers_follow_removable_nodes() {
    let layers = build_filtration(&shape("3,2,1"));
    let alphas: Vec<Node> = layers.iter().map(|l| l.alpha).collect();
    assert_eq!(alphas, shape("3,2,1").removable_nodes());
    let sizes: Vec<usize> = layers.iter().map(|l| l.basis.len()).collect();
    assert_eq!(sizes, vec![5, 11, 16]);
    assert_eq!(layers[2].mu, shape("2,2,1"));
    for l in &layers {
        for t in &l.added {
            assert_eq!(t.node_of(6), Some(l.alpha));
        }
    }
}

#[test]
fn restriction_of_hook() {
    let f = Filtration::new(&shape("2,1")).unwrap();
    let report = f.report(0, true).unwrap();
    assert!(report.passed());
    assert_eq!(report.layers.len(), 2);
    let pairs = report.layers[1].matrices.as_ref().unwrap();
    assert_eq!(pairs[0].quotient, pairs[0].cell);
}

#[test]
fn theorem_holds_for_n_up_to_4() {
    for n in 1..=4 {
        for l in Partition::all(n) {
            let f = Filtration::new(&l).unwrap();
            for j in 1..=f.layers().len() {
                assert!(f.check_submodule(j).unwrap().is_pass(), "{l} j={j}");
                assert!(f.verify_iso(j).unwrap().0.is_pass(), "{l} j={j}");
            }
            assert!(verify_order_preserving(&l).is_pass());
            assert!(check_dimensions(&l).is_pass());
        }
    }
}

#[test]
fn lemmas_small() {
    for n in 2..=5 {
        assert!(verify_adjoin_lemma(n, 7).unwrap().0.is_pass());
    }
    let module = PermutationModule::new(&shape("2,2")).unwrap();
    assert!(corollary_row(&module, 1).unwrap().is_pass());
    assert!(verify_phi_well_defined(&shape("2,2"), Node::new(2, 2), 3, 5).unwrap().is_pass());
}

#[test]
fn case_classification() {
    let lambda = shape("2,1");
    let module = PermutationModule::new(&lambda).unwrap();
    let records = verify_case_identities(&module, Node::new(1, 2)).unwrap();
    assert!(records.iter().all(|r| r.verdict.is_pass()));
    assert!(records.iter().any(|r| r.case == GarnirCase::Two));
}

#[test]
fn verdict_serialization() {
    assert_eq!(serde_json::to_string(&Verdict::Pass).unwrap(), "\"pass\"");
    let skipped = Verdict::Skipped("n < 3".into());
    assert_eq!(serde_json::to_value(&skipped).unwrap()["status"], "skipped");
    assert!(Verdict::Pass.and(skipped).status() == "skipped");
}
