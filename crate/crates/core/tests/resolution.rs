use std::collections::BTreeSet;

use tame_hecke::algebra::{hecke_algebra, hecke_quiver, lambda_algebra, ALPHA, ALPHA_BAR, EPS, EPS_BAR};
use tame_hecke::resolution::*;
use tame_hecke::{Field, Path};

fn corrected() -> Differential {
    Differential::Hecke(Transcription::default())
}

#[test]
fn hecke_resolution_through_eight() {
    let a = hecke_algebra(Field::Rational);
    let rep = resolution_report(&a, corrected(), 8).unwrap();
    assert!(rep.passed(), "{:?}", rep.first_failure);
    assert_eq!(rep.cokernel_dim, 8);
    for d in &rep.degrees {
        assert_eq!(d.dim_r, 32 * (d.n + 1));
    }
    assert_eq!(rep.degrees[1].rank, 24);
    assert_eq!(rep.degrees[1].rank + rep.degrees[2].rank, 64);
}

#[test]
fn lambda_resolutions() {
    for (r, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let l = lambda_algebra(r, s, Field::Rational);
        let rep = resolution_report(&l, Differential::Lambda { r, s }, 6).unwrap();
        assert!(rep.passed(), "({r},{s}): {:?}", rep.first_failure);
        assert_eq!(rep.cokernel_dim, 2 * r + 4 * s);
        assert!(rep.degrees.iter().all(|d| d.minimal));
    }
}

#[test]
fn lambda_two_one_is_delta() {
    for n in 1..=8 {
        assert_eq!(partial(n, 2, 1).canonical(), delta(n).canonical(), "n = {n}");
    }
}

#[test]
fn generator_sets() {
    let q = hecke_quiver();
    let sets = gsets_up_to(12).unwrap();
    let cycle = [EPS, ALPHA, EPS_BAR, ALPHA_BAR];
    for (n, g) in sets.iter().enumerate() {
        assert_eq!(g.len(), 2 * (n + 1));
        assert_eq!(census(n), resolution_term(n));
        check_terms(n).unwrap();
        for (t, x) in &g.elements {
            assert!(x.is_uniform(t.origin(), t.terminus()), "{t}");
            assert!(x.terms().keys().all(|p| p.len() == n));
            assert_eq!(&x.bar(&q).unwrap(), g.get(&t.bar()).unwrap());
        }
        if n >= 1 {
            let monomials: BTreeSet<Path> =
                g.elements.values().filter(|x| x.terms().len() == 1).map(|x| x.terms().keys().next().unwrap().clone()).collect();
            let expected: BTreeSet<Path> =
                (0..4).map(|s| q.path(&(0..n).map(|k| cycle[(s + k) % 4]).collect::<Vec<_>>()).unwrap()).collect();
            assert_eq!(monomials, expected, "n = {n}");
        }
    }
    for (n, set) in sets.iter().enumerate().skip(1) {
        assert_eq!(gset_left(n).unwrap().elements, set.elements, "n = {n}");
    }
}

#[test]
fn displayed_examples() {
    let q = hecke_quiver();
    let show = |m: &BimoduleMap, t: GeneratorTag| -> Vec<String> {
        m.terms[&t]
            .iter()
            .map(|t| format!("{} {} {} {}", t.coef, q.display_path(&t.left), t.target, q.display_path(&t.right)))
            .collect()
    };
    let d1 = delta(1);
    assert_eq!(show(&d1, GeneratorTag::new(1, Family::G, 1)), ["1 e1 g1^0 e", "-1 e g1^0 e1"]);
    assert_eq!(show(&d1, GeneratorTag::new(1, Family::F, 1)), ["1 e1 g1^0 a", "-1 a gb1^0 e2"]);
    assert_eq!(show(&delta(4), GeneratorTag::new(4, Family::G, 3)), ["1 e1 f2^3 A", "1 e g2^3 e1"]);
    let p1 = partial(1, 3, 2);
    assert_eq!(show(&p1, GeneratorTag::new(1, Family::G, 1)), ["1 e1 g1^0 e", "-1 e g1^0 e1"]);
}

#[test]
fn exactly_one_reading_of_p1_passes() {
    let a = hecke_algebra(Field::Rational);
    let printed = Transcription { p1_odd_printed: true, ..Default::default() };
    assert!(check_complex(&a, 8, corrected()).is_ok());
    match check_complex(&a, 8, Differential::Hecke(printed)) {
        Err(ResolutionError::NotAComplex { degree, .. }) => assert_eq!(degree, 3),
        other => panic!("printed reading unexpectedly {other:?}"),
    }
}

#[test]
fn printed_sign_of_p_even_fails() {
    let a = hecke_algebra(Field::Rational);
    let printed = Transcription { p_even_odd_printed: true, ..Default::default() };
    match check_complex(&a, 8, Differential::Hecke(printed)) {
        Err(ResolutionError::NotAComplex { degree, .. }) => assert_eq!(degree, 5),
        other => panic!("printed sign unexpectedly {other:?}"),
    }
}

#[test]
fn sign_flip_in_delta_two_is_caught() {
    let a = hecke_algebra(Field::Rational);
    let mut rows = delta_rows(2, Transcription::default()).unwrap();
    rows.get_mut(&GeneratorTag::new(2, Family::G, 1)).unwrap()[1].coef *= -1;
    let bad = from_rows(2, rows);
    match verify_sequence(&a, &[bad, delta(3)]) {
        Err(ResolutionError::NotAComplex { degree, .. }) => assert_eq!(degree, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn ranks_agree_across_fields() {
    let q = hecke_algebra(Field::Rational);
    let ps: Vec<_> = [3, 5, 7].iter().map(|p| hecke_algebra(Field::prime(*p).unwrap())).collect();
    for n in 1..=6 {
        let rq = realize(&delta(n), &q).rank();
        for a in &ps {
            assert_eq!(realize(&delta(n), a).rank(), rq, "n = {n} over {}", a.field());
        }
    }
}

#[test]
fn zero_map_realizes_to_zero() {
    let a = hecke_algebra(Field::Rational);
    let m = BimoduleMap { degree: 2, terms: Default::default() };
    let r = realize(&m, &a);
    assert!(r.is_zero());
    assert_eq!((r.rows(), r.cols()), (64, 96));
}
