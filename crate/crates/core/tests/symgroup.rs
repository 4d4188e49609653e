use heckecell::murphy::{d_alpha, d_alpha_from_cosets};
use heckecell::symgroup::{distinguished_coset_reps, young_subgroup};
use heckecell::{Composition, Node, Partition, Permutation};

fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images).unwrap()
}

#[test]
fn composition_applies_left_factor_first() {
    let s1 = Permutation::simple(3, 1).unwrap();
    let s2 = Permutation::simple(3, 2).unwrap();
    assert_eq!(s1.compose(&s2).unwrap(), perm(&[3, 1, 2]));
    assert_eq!(s1.compose(&s2).unwrap().image(1), s2.image(s1.image(1)));
    assert!(s1.compose(&Permutation::identity(4)).is_err());
}

#[test]
fn rejects_non_permutations() {
    assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    assert!(Permutation::from_images(&[0, 1]).is_err());
    assert!(Permutation::simple(3, 3).is_err());
}

#[test]
fn cycles() {
    for n in 1..=7 {
        for a in 1..=n {
            let c = Permutation::cycle_down(n, a).unwrap();
            assert_eq!(c.length(), n - a);
            assert_eq!(c.reduced_word(), (a..n).collect::<Vec<_>>());
            if a < n {
                assert_eq!(c.image(a), n);
                assert_eq!(c.image(a + 1), a);
            }
        }
    }
}

#[test]
fn longest_element() {
    let w0 = perm(&[4, 3, 2, 1]);
    assert_eq!(w0.length(), 6);
    assert_eq!(Permutation::all(4).iter().map(|w| w.length()).max(), Some(6));
    assert_eq!(Permutation::all(4).len(), 24);
}

#[test]
fn reduced_words_rebuild_the_permutation() {
    for w in Permutation::all(5) {
        let word = w.reduced_word();
        assert_eq!(word.len(), w.length());
        let rebuilt = word.iter().fold(Permutation::identity(5), |acc, &i| acc.mul_simple_right(i));
        assert_eq!(rebuilt, w);
        assert_eq!(w.compose(&w.inverse()).unwrap(), Permutation::identity(5));
        assert_eq!(Permutation::unrank(5, w.rank()), w);
    }
}

#[test]
fn young_subgroups_and_cosets() {
    let nu: Composition = "2,1,2".parse().unwrap();
    assert_eq!(young_subgroup(&nu).len(), 4);

    let inner: Composition = "2,1,1".parse().unwrap();
    let outer: Composition = "2,2".parse().unwrap();
    let reps = distinguished_coset_reps(&inner, &outer).unwrap();
    assert_eq!(reps, vec![Permutation::identity(4), Permutation::simple(4, 3).unwrap()]);
    assert!(distinguished_coset_reps(&outer, &inner).is_err());

    let lambda: Partition = "2,2".parse().unwrap();
    let alpha = Node::new(2, 2);
    assert_eq!(d_alpha(&lambda, alpha).unwrap(), d_alpha_from_cosets(&lambda, alpha).unwrap());
}

#[test]
fn cycle_is_a_distinguished_coset_rep() {
    for n in 2..=7 {
        for a in 1..=n {
            let inner = Composition::new(vec![n - 1, 1]).unwrap();
            let outer = Composition::new(vec![n]).unwrap();
            let reps = distinguished_coset_reps(&inner, &outer).unwrap();
            assert!(reps.contains(&Permutation::cycle_down(n, a).unwrap().inverse()), "n={n} a={a}");
            assert_eq!(reps.len(), n);
        }
    }
}

#[test]
fn embedding_fixes_new_points() {
    let w = perm(&[2, 3, 1]);
    let e = w.embed(5).unwrap();
    assert_eq!(e.images(), vec![2, 3, 1, 4, 5]);
    assert_eq!(e.length(), w.length());
    assert!(w.embed(2).is_err());
}
