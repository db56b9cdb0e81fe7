use proptest::prelude::*;
use tame_hecke::algebra::{hecke_algebra, lambda_algebra};
use tame_hecke::sparse::{in_span, SparseMatrix, SparseVec};
use tame_hecke::{BoundAlgebra, Field, PathElement};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap()), Just(Field::prime(3).unwrap())]
}

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(rows, cols, field);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.from_i64(entries[i * cols + j]));
        }
    }
    m
}

fn matrix_strategy() -> impl Strategy<Value = (Field, usize, usize, Vec<i64>)> {
    (field_strategy(), 1usize..7, 1usize..7).prop_flat_map(|(f, r, c)| {
        // mostly zeros so ranks vary
        let entry = prop_oneof![4 => Just(0i64), 1 => -3i64..4];
        (Just(f), Just(r), Just(c), proptest::collection::vec(entry, r * c))
    })
}

fn algebras() -> &'static [BoundAlgebra] {
    static ALGS: std::sync::OnceLock<Vec<BoundAlgebra>> = std::sync::OnceLock::new();
    ALGS.get_or_init(|| vec![
        hecke_algebra(Field::Rational),
        lambda_algebra(3, 1, Field::Rational),
        lambda_algebra(2, 2, Field::Rational),
        lambda_algebra(3, 2, Field::prime(5).unwrap()),
    ])
}

fn element(alg: &BoundAlgebra, picks: &[(usize, i64)]) -> PathElement {
    let mut x = PathElement::zero(alg.field());
    for (i, c) in picks {
        let p = alg.basis()[i % alg.dim()].clone();
        x = x.add(&PathElement::monomial(p, alg.field().from_i64(*c)));
    }
    x
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank((f, r, c, e) in matrix_strategy()) {
        let m = matrix(f, r, c, &e);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity((f, r, c, e) in matrix_strategy()) {
        let m = matrix(f, r, c, &e);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), c);
        for v in &ker {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn combinations_lie_in_span((f, r, c, e) in matrix_strategy(), coefs in proptest::collection::vec(-2i64..3, 7)) {
        let m = matrix(f, r, c, &e);
        let rows = m.row_vecs();
        let mut v = SparseVec::new();
        for (row, k) in rows.iter().zip(&coefs) {
            tame_hecke::sparse::axpy(&mut v, &f.from_i64(*k), row);
        }
        prop_assert!(in_span(&v, &rows, f));
    }

    #[test]
    fn scalars_stay_canonical(a in -50i64..50, b in 1i64..11, c in -50i64..50, d in 1i64..11) {
        for f in [Field::Rational, Field::prime(11).unwrap()] {
            let x = f.ratio(a, b);
            let y = f.ratio(c, d);
            for z in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(z.is_canonical());
            }
            if !y.is_zero() {
                prop_assert!((&x * &y.inv().unwrap()).is_canonical());
            }
        }
    }

    #[test]
    fn multiplication_is_associative(which in 0usize..4, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let alg = &algebras()[which];
        let (x, y, z) = (element(alg, &[(i, 1)]), element(alg, &[(j, 1)]), element(alg, &[(k, 1)]));
        let lhs = alg.multiply(&alg.multiply(&x, &y), &z);
        let rhs = alg.multiply(&x, &alg.multiply(&y, &z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_is_an_involutive_automorphism(which in 0usize..4, xs in proptest::collection::vec((0usize..64, -2i64..3), 1..4), ys in proptest::collection::vec((0usize..64, -2i64..3), 1..4)) {
        let alg = &algebras()[which];
        let x = element(alg, &xs);
        let y = element(alg, &ys);
        let bx = alg.bar(&x).unwrap();
        prop_assert_eq!(alg.bar(&bx).unwrap(), x.clone());
        let lhs = alg.bar(&alg.multiply(&x, &y)).unwrap();
        let rhs = alg.multiply(&bx, &alg.bar(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent(which in 0usize..4, word in proptest::collection::vec(0usize..4, 0..7), start in 0usize..2) {
        let alg = &algebras()[which];
        let q = alg.quiver();
        // random walk from `start` choosing among the two outgoing arrows
        let mut v = start;
        let mut arrows = Vec::new();
        for w in word {
            let out: Vec<usize> = (0..4).filter(|a| q.arrows()[*a].source == v).collect();
            let a = out[w % out.len()];
            arrows.push(a);
            v = q.arrows()[a].target;
        }
        let p = q.path(&arrows).unwrap_or_else(|| tame_hecke::Path::trivial(start));
        let x = PathElement::path(p, alg.field());
        let nf = alg.normal_form(&x);
        prop_assert_eq!(alg.normal_form(&nf), nf);
    }
}
