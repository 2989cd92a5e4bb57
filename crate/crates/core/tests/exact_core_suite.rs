//! Randomized invariants of the exact arithmetic layer: Q(i) is a field
//! with no rounding anywhere, row reduction is canonical and idempotent,
//! and kernel/image computations satisfy rank–nullity on the nose.

use proptest::prelude::*;
use twistlab_core::{ExactMatrix, Scalar, Subspace};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(an, ad, bn, bd)| Scalar::from_parts(an, ad, bn, bd))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn matrix(max_dim: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-4i64..=4, -4i64..=4), r * c).prop_map(move |cells| {
            ExactMatrix::from_fn(r, c, |i, j| {
                let (re, im) = cells[i * c + j];
                Scalar::from_parts(re, 1, im, 1)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms_hold_exactly(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(
            &a * &(b.clone() + c.clone()),
            (&a * &b) + (&a * &c)
        );
        prop_assert_eq!(a.clone() + (-a.clone()), Scalar::zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in nonzero_scalar(), b in nonzero_scalar()) {
        let q = a.clone() / b.clone();
        let r = b / a;
        prop_assert_eq!(&q * &r, Scalar::one());
    }

    #[test]
    fn display_and_parse_are_inverse(a in scalar()) {
        let round: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(round, a);
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn rank_nullity_holds(m in matrix(6)) {
        let rank = m.rank();
        let kernel = m.kernel_basis();
        let image = m.image_basis();
        prop_assert_eq!(rank + kernel.len(), m.cols);
        prop_assert_eq!(image.len(), rank);
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix(6)) {
        let (reduced, pivots) = m.rref();
        let (again, pivots_again) = reduced.rref();
        prop_assert_eq!(&again, &reduced);
        prop_assert_eq!(pivots_again, pivots);
    }

    #[test]
    fn scrambled_bases_share_one_canonical_form(
        m in matrix(5),
        scales in proptest::collection::vec(nonzero_scalar(), 5),
        shift in 1usize..5,
    ) {
        let rows: Vec<Vec<Scalar>> = m.rows_iter().map(|r| r.to_vec()).collect();
        let space = Subspace::span(m.cols, &rows);

        // scale every row, rotate their order, and add one row to the next:
        // the span cannot move
        let mut scrambled: Vec<Vec<Scalar>> = rows
            .iter()
            .zip(scales.iter().cycle())
            .map(|(r, c)| r.iter().map(|x| x * c).collect())
            .collect();
        let k = shift % scrambled.len();
        scrambled.rotate_left(k);
        if scrambled.len() >= 2 {
            let donor = scrambled[0].clone();
            for (dst, src) in scrambled[1].iter_mut().zip(&donor) {
                *dst = dst.clone() + src;
            }
        }
        prop_assert_eq!(Subspace::span(m.cols, &scrambled), space);
    }

    #[test]
    fn solve_finds_exact_preimages(m in matrix(5), seed in proptest::collection::vec((-3i64..=3, -3i64..=3), 6)) {
        let x: Vec<Scalar> = (0..m.cols)
            .map(|j| {
                let (re, im) = seed[j % seed.len()];
                Scalar::from_parts(re, 1, im, 1)
            })
            .collect();
        let b = m.apply(&x);
        let y = m.solve(&b).expect("b is in the image by construction");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn sum_and_intersection_dimensions_are_modular(a in matrix(5), b in matrix(5)) {
        let ambient = a.cols.max(b.cols);
        let pad = |m: &ExactMatrix| -> Vec<Vec<Scalar>> {
            m.rows_iter()
                .map(|r| {
                    let mut v = r.to_vec();
                    v.resize(ambient, Scalar::zero());
                    v
                })
                .collect()
        };
        let sa = Subspace::span(ambient, &pad(&a));
        let sb = Subspace::span(ambient, &pad(&b));
        let sum = sa.sum(&sb);
        let meet = sa.intersect(&sb);
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(sum.contains(&sa) && sum.contains(&sb));
        prop_assert!(sa.contains(&meet) && sb.contains(&meet));
    }

    #[test]
    fn matrix_arithmetic_respects_transpose(a in matrix(4), b in matrix(4)) {
        prop_assume!(a.cols == b.rows);
        let product = a.mat_mul(&b);
        prop_assert_eq!(
            product.transpose(),
            b.transpose().mat_mul(&a.transpose())
        );
        prop_assert_eq!(product.dagger(), b.dagger().mat_mul(&a.dagger()));
    }
}
