//! The full verification suite behind `twistlab selftest`: one check per
//! suite-level criterion, each recomputing its claim from scratch with exact
//! arithmetic. Every detail string is deterministic — counts and dimensions
//! only, no clocks — so repeated runs emit identical bytes.

use crate::Check;
use twistlab_core::clifford::{
    build_gamma, build_octonionic_cl10, build_pairing, generic_octonionic_intertwiner,
    purity_nullspace, ChiralityPattern,
};
use twistlab_core::superlie::{
    build_susy_10d, build_susy_2d, build_susy_4d, reduce_10_to_4, reduce_4_to_2, Block, RSymmetry,
    SuperLieAlgebra,
};
use twistlab_core::twist::{
    bracket_square, classify, family_warnings, format_combination, hol_kernel_comparison,
    is_square_zero, named_family, q_cohomology, successive_twist_check, Family, Supercharge,
    Verdict,
};
use twistlab_core::twistor;
use twistlab_core::{par, ExactMatrix, Scalar};

pub fn run_all() -> Vec<Check> {
    vec![
        jacobi_exhaustive(),
        clifford_models(),
        holomorphic_cohomology(),
        kw_points(),
        ht_families(),
        successive_twists(),
        superspace_representation(),
        dimensional_reductions(),
        twistor_computations(),
        purity_eight_dimensions(),
        determinism_witness(),
    ]
}

/// Accumulates failure descriptions; the check passes iff none were recorded.
struct Outcome {
    name: &'static str,
    failures: Vec<String>,
}

impl Outcome {
    fn new(name: &'static str) -> Self {
        Outcome { name, failures: Vec::new() }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.failures.push(what.into());
        }
    }

    fn finish(self, ok_details: String) -> Check {
        if self.failures.is_empty() {
            Check::new(self.name, true, ok_details)
        } else {
            Check::new(self.name, false, self.failures.join("; "))
        }
    }
}

fn alg4() -> SuperLieAlgebra {
    build_susy_4d(4, RSymmetry::SlW).expect("the W = C^4 algebra builds")
}

fn q(alg: &SuperLieAlgebra, text: &str) -> Supercharge {
    Supercharge::parse(alg, text).expect("catalogued supercharge parses")
}

fn s(text: &str) -> Scalar {
    text.parse().expect("literal scalar")
}

fn jacobi_exhaustive() -> Check {
    let mut o = Outcome::new("jacobi");
    let mut triples = 0usize;
    let mut run = |alg: Result<SuperLieAlgebra, twistlab_core::Error>, ctx: &str| match alg {
        Err(e) => o.failures.push(format!("{ctx}: {e}")),
        Ok(alg) => {
            let report = alg.jacobi_check();
            triples += report.triples_checked;
            if !report.pass() {
                o.failures
                    .push(format!("{ctx}: {} Jacobi failures", report.failures.len()));
            }
        }
    };
    for k in 1..=4 {
        run(build_susy_4d(k, RSymmetry::SlW), &format!("4d W dim {k}"));
    }
    for (n1, n2) in [(1, 1), (2, 2), (4, 4), (2, 0)] {
        run(build_susy_2d(n1, n2), &format!("2d ({n1},{n2})"));
    }
    run(
        build_gamma(10).and_then(|m| build_susy_10d(&m)),
        "10d split",
    );
    run(build_susy_10d(&build_octonionic_cl10()), "10d octonionic");
    o.finish(format!("{triples} graded triples verified across 10 algebras"))
}

fn clifford_models() -> Check {
    let mut o = Outcome::new("clifford");
    for n in [2usize, 4, 6, 8, 10] {
        match build_gamma(n) {
            Err(e) => o.failures.push(format!("n={n}: {e}")),
            Ok(model) => {
                o.expect(model.validate().is_ok(), format!("n={n}: relation fails"));
                let want = 1usize << (n / 2 - 1);
                let plus = model.weyl_plus().map(|w| w.dim());
                let minus = model.weyl_minus().map(|w| w.dim());
                o.expect(
                    plus == Some(want) && minus == Some(want),
                    format!("n={n}: Weyl dims {plus:?}/{minus:?}, want {want}"),
                );
            }
        }
    }
    let oct = build_octonionic_cl10();
    o.expect(oct.validate().is_ok(), "octonionic Cl(1,9) relation fails");
    match generic_octonionic_intertwiner() {
        Ok(inter) => o.expect(
            inter.phi.rank() == 10 && inter.t.rank() == 32,
            "intertwiner not invertible",
        ),
        Err(e) => o.failures.push(format!("intertwiner: {e}")),
    }
    o.finish("split models n=2,4,6,8,10 and octonionic Cl(1,9) verified, intertwiner constructed".into())
}

fn holomorphic_cohomology() -> Check {
    let mut o = Outcome::new("hol-cohomology");
    let alg = alg4();
    let hol = named_family(&alg, &Family::Hol).expect("hol builds");
    match q_cohomology(&alg, &hol) {
        Err(e) => o.failures.push(e.to_string()),
        Ok(report) => {
            o.expect(
                report.dims == (16, 9, 2),
                format!("dims {:?}, want (16, 9, 2)", report.dims),
            );
            o.expect(
                report.odd_exact_dim == 5,
                format!("odd exact dim {}", report.odd_exact_dim),
            );
            let bosonic_total = alg.block_indices(Block::Rotation).len()
                + alg.block_indices(Block::RSymmetry).len();
            o.expect(
                report.dims.0 == bosonic_total - report.odd_exact_dim,
                "rank oracle: kernel ≠ total − image",
            );
            let translations: Vec<String> = report
                .translation_classes
                .iter()
                .map(|v| format_combination(&alg, v))
                .collect();
            o.expect(
                translations == ["∂z1", "∂z2"],
                format!("translation classes {translations:?}"),
            );
            o.expect(report.euler_consistent, "Euler characteristic inconsistent");
            match hol_kernel_comparison(&alg, &report) {
                Err(e) => o.failures.push(format!("kernel comparison: {e}")),
                Ok(cmp) => {
                    o.expect(cmp.reference_contained, "reference not inside kernel");
                    o.expect(
                        cmp.reference_dim == 14 && cmp.kernel_dim == 16 && cmp.surplus_dim == 2,
                        format!(
                            "reference {} / kernel {} / surplus {}",
                            cmp.reference_dim, cmp.kernel_dim, cmp.surplus_dim
                        ),
                    );
                }
            }
        }
    }
    o.finish("dims (16, 9, 2), 5 exact odd classes, ∂z1 ∂z2 survive, reference + 2 surplus".into())
}

fn kw_points() -> Check {
    let mut o = Outcome::new("kw-points");
    let alg = alg4();
    let hol_image = classify(&alg, &named_family(&alg, &Family::Hol).unwrap())
        .expect("hol classifies")
        .image;
    let points = [
        (s("1"), s("0")),
        (s("0"), s("1")),
        (s("1"), s("1")),
        (s("2"), s("-3")),
        (s("i"), s("1")),
    ];
    let count = points.len();
    for (mu, nu) in points {
        let ctx = format!("({mu}:{nu})");
        let kw = match named_family(&alg, &Family::Kw { mu, nu }) {
            Ok(q) => q,
            Err(e) => {
                o.failures.push(format!("{ctx}: {e}"));
                continue;
            }
        };
        o.expect(is_square_zero(&alg, &kw), format!("{ctx}: [Q,Q] ≠ 0"));
        match classify(&alg, &kw) {
            Err(e) => o.failures.push(format!("{ctx}: {e}")),
            Ok(report) => {
                o.expect(
                    report.verdict == Verdict::Topological,
                    format!("{ctx}: verdict {}", report.verdict),
                );
                o.expect(
                    report.image.contains(&hol_image),
                    format!("{ctx}: image loses the holomorphic directions"),
                );
            }
        }
    }
    o.finish(format!(
        "{count} CP¹ points incl (1:0) and (0:1): all topological, image ⊇ holomorphic image"
    ))
}

fn ht_families() -> Check {
    let mut o = Outcome::new("ht-families");
    let alg = alg4();
    for lam in ["1", "2", "-1"] {
        let lambda = s(lam);
        let ctx = format!("λ={lam}");
        match named_family(&alg, &Family::Ht { lambda: lambda.clone() }) {
            Err(e) => o.failures.push(format!("ht {ctx}: {e}")),
            Ok(point) => {
                o.expect(is_square_zero(&alg, &point), format!("ht {ctx}: [Q,Q] ≠ 0"));
                let report = classify(&alg, &point).expect("square-zero point classifies");
                o.expect(
                    report.image_dim == 4,
                    format!("ht {ctx}: image dim {}", report.image_dim),
                );
                // the catalogue disagrees with the arithmetic here; that must
                // surface as a warning, not as a suite failure
                let family = Family::Ht { lambda: lambda.clone() };
                o.expect(
                    !family_warnings(&family, &report).is_empty(),
                    format!("ht {ctx}: catalogue mismatch not flagged"),
                );
            }
        }
        match named_family(&alg, &Family::HtPrime { lambda: lambda.clone() }) {
            Err(e) => o.failures.push(format!("ht' {ctx}: {e}")),
            Ok(point) => {
                o.expect(is_square_zero(&alg, &point), format!("ht' {ctx}: [Q,Q] ≠ 0"));
                let report = classify(&alg, &point).expect("square-zero point classifies");
                o.expect(
                    report.image_dim == 3,
                    format!("ht' {ctx}: image dim {}", report.image_dim),
                );
                let family = Family::HtPrime { lambda };
                o.expect(
                    family_warnings(&family, &report).is_empty(),
                    format!("ht' {ctx}: unexpected warning"),
                );
            }
        }
    }
    let ht0 = named_family(&alg, &Family::Ht { lambda: Scalar::zero() }).unwrap();
    let a = named_family(&alg, &Family::A).unwrap();
    o.expect(ht0.coeffs == a.coeffs, "ht(0) differs from family A coefficientwise");
    o.finish(
        "ht λ∈{1,2,−1} image dim 4 with catalogue warning, ht' image dim 3, ht(0) = A".into(),
    )
}

fn successive_twists() -> Check {
    let mut o = Outcome::new("successive-twists");
    let alg = alg4();
    let hol = named_family(&alg, &Family::Hol).unwrap();
    for (text, want, ctx) in [
        ("α2⊗e2", (13, 4, 0), "deformation toward (0:1)"),
        (
            "α1∨⊗f1* + (-1)*α2∨⊗f2*",
            (10, 1, 0),
            "deformation toward (1:0)",
        ),
    ] {
        match successive_twist_check(&alg, &hol, &q(&alg, text)) {
            Err(e) => o.failures.push(format!("{ctx}: {e}")),
            Ok(r) => {
                o.expect(r.agree, format!("{ctx}: staged ≠ direct"));
                o.expect(
                    r.direct == want,
                    format!("{ctx}: direct dims {:?}, want {want:?}", r.direct),
                );
                o.expect(
                    r.representative_independent,
                    format!("{ctx}: induced differential depends on representatives"),
                );
            }
        }
    }
    o.finish("both deformations of the holomorphic twist: staged = direct, representative-independent".into())
}

fn superspace_representation() -> Check {
    let mut o = Outcome::new("superspace");
    let alg = alg4();
    let mut checked = 0usize;
    match twistlab_core::superspace::check_representation(&alg) {
        Err(e) => o.failures.push(e.to_string()),
        Ok(report) => {
            checked = report.checked;
            o.expect(report.checked >= 36, format!("only {} pairs", report.checked));
            o.expect(report.pass, "some bracket pair disagrees with the realization");
        }
    }
    o.finish(format!("{checked} bracket pairs match the vector fields on C^{{2|3}}"))
}

fn dimensional_reductions() -> Check {
    let mut o = Outcome::new("reductions");
    for (model, embedding, ctx) in [
        (Ok(build_octonionic_cl10()), vec![0usize, 1, 2, 3], "octonionic u0..u3"),
        (build_gamma(10), vec![0, 5, 1, 6], "split hyperbolic plane"),
    ] {
        let alg = match model.and_then(|m| build_susy_10d(&m)) {
            Ok(alg) => alg,
            Err(e) => {
                o.failures.push(format!("{ctx}: {e}"));
                continue;
            }
        };
        match reduce_10_to_4(&alg, &embedding) {
            Err(e) => o.failures.push(format!("{ctx}: {e}")),
            Ok((reduced, report)) => {
                o.expect(
                    report.kept_rotations == 6
                        && report.r_symmetry_rotations == 15
                        && report.dropped_rotations == 24,
                    format!(
                        "{ctx}: rotations split {}/{}/{}",
                        report.kept_rotations,
                        report.r_symmetry_rotations,
                        report.dropped_rotations
                    ),
                );
                o.expect(
                    report.multiplicities == (4, 4) && report.trivial_odd_summands == 0,
                    format!("{ctx}: odd multiplicities {:?}", report.multiplicities),
                );
                o.expect(report.gamma_factorizes, format!("{ctx}: Γ does not factorize"));
                o.expect(
                    report.structure_match,
                    format!("{ctx}: reduced brackets differ from the 4d algebra"),
                );
                o.expect(
                    reduced.even_dim() == 25 && reduced.odd_dim() == 16,
                    format!("{ctx}: reduced dims {}/{}", reduced.even_dim(), reduced.odd_dim()),
                );
            }
        }
    }
    for (k, r) in [
        (1usize, RSymmetry::Trivial),
        (2, RSymmetry::GlW),
        (4, RSymmetry::SlW),
    ] {
        let ctx = format!("4→2 at W dim {k}");
        let alg = build_susy_4d(k, r).expect("4d algebra builds");
        match reduce_4_to_2(&alg) {
            Err(e) => o.failures.push(format!("{ctx}: {e}")),
            Ok((reduced, report)) => {
                o.expect(
                    report.plus_count == 2 * k && report.minus_count == 2 * k,
                    format!(
                        "{ctx}: chirality counts {}/{}",
                        report.plus_count, report.minus_count
                    ),
                );
                o.expect(
                    reduced.block_indices(Block::Translation).len() == 2,
                    format!("{ctx}: translation count"),
                );
                for want in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    o.expect(
                        report.odd_weights.iter().any(|(_, a, b)| (*a, *b) == want),
                        format!("{ctx}: missing weight pair {want:?}"),
                    );
                }
            }
        }
    }
    o.finish(
        "10d→4d keeps (6, 15, 4) with odd multiplicities (4, 4); 4d→2d splits 2k/2k with all four weight pairs"
            .into(),
    )
}

fn twistor_computations() -> Check {
    let mut o = Outcome::new("twistor");
    o.expect(
        twistor::berezinian_cpnm(3, 4) == 0 && twistor::is_super_calabi_yau(3, 4),
        "CP^{3|4} Berezinian not trivial",
    );
    let mut dims = Vec::new();
    for k in [0i64, -1, -2] {
        match twistor::pushforward_content(k) {
            Err(e) => o.failures.push(format!("content k={k}: {e}")),
            Ok(t) => dims.push(t.total_dimension()),
        }
    }
    o.expect(dims == [16, 32, 12], format!("field-content dims {dims:?}"));
    o.expect(twistor::dirac_symbol_check(), "Dirac symbol ≠ Clifford multiplication");
    o.expect(
        twistor::koszul_exactness_check(8).pass,
        "Koszul rows not exact through degree 8",
    );
    match twistor::e2_laplacian_check(6) {
        Ok(ok) => o.expect(ok, "second-page differential not ∝ identity"),
        Err(e) => o.failures.push(format!("e² differential: {e}")),
    }
    o.expect(twistor::signature_check() == (2, 2), "twistor norm signature ≠ (2,2)");

    // ten pseudo-random nonzero twistors: the fibration is constant on
    // complex lines
    let mut state = 0x9e3779b97f4a7c15u64;
    let small = |state: &mut u64| -> i64 {
        let mut x = *state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        *state = x;
        (x % 7) as i64 - 3
    };
    let mut tested = 0usize;
    while tested < 10 {
        let z: Vec<Scalar> = (0..4)
            .map(|_| Scalar::from_parts(small(&mut state), 1, small(&mut state), 1))
            .collect();
        if z.iter().all(|c| c.is_zero()) {
            continue;
        }
        let lam = Scalar::from_parts(small(&mut state), 1, small(&mut state), 1);
        if lam.is_zero() {
            continue;
        }
        let scaled: Vec<Scalar> = z.iter().map(|c| c * &lam).collect();
        match (twistor::penrose_map(&z), twistor::penrose_map(&scaled)) {
            (Ok(p), Ok(q)) => o.expect(
                p.equivalent(&q),
                format!("fibration moved under scaling at sample {tested}"),
            ),
            _ => o.failures.push(format!("fibration undefined at sample {tested}")),
        }
        tested += 1;
    }
    o.finish(
        "Berezinian, field content (16, 32, 12), Dirac symbol, Koszul to degree 8, e² ∝ id, signature (2,2), 10 fibration samples"
            .into(),
    )
}

fn purity_eight_dimensions() -> Check {
    let mut o = Outcome::new("purity");
    let model = build_gamma(8).expect("Cl(8) builds");
    let dim_s = model.spinor_dim;
    let mut vac = vec![Scalar::zero(); dim_s];
    vac[0] = Scalar::one();
    let mut q = vac.clone();
    q[0b1111] = Scalar::one();

    match (purity_nullspace(&model, &vac), purity_nullspace(&model, &q)) {
        (Ok(pure), Ok(impure)) => {
            o.expect(pure == 4, format!("pure spinor nullspace {pure}"));
            o.expect(impure < 4, format!("impure spinor nullspace {impure}"));
        }
        _ => o.failures.push("nullspace computation failed".into()),
    }

    let gamma = build_pairing(&model, ChiralityPattern::PlusMinus).expect("pairing builds");
    let minus = model.weyl_coordinate_sets().expect("chiral model").1;
    let rank_for = |spinor: &[Scalar]| -> usize {
        let rows: Vec<Vec<Scalar>> = minus
            .iter()
            .map(|&t| {
                let mut unit = vec![Scalar::zero(); dim_s];
                unit[t] = Scalar::one();
                gamma.value(spinor, &unit)
            })
            .collect();
        ExactMatrix::from_rows(rows).rank()
    };
    o.expect(rank_for(&q) == 8, "Γ(q, −) not surjective for the impure spinor");
    o.expect(rank_for(&vac) == 4, "Γ(q, −) rank ≠ 4 for the pure spinor");
    o.finish("nullspace 4 ⇔ pure; impure spinor pairs onto all of C⁸".into())
}

fn determinism_witness() -> Check {
    let mut o = Outcome::new("determinism");
    let alg = alg4();
    let grid: Vec<(Scalar, Scalar)> = [
        ("1", "0"),
        ("0", "1"),
        ("1", "1"),
        ("2", "-3"),
        ("i", "1"),
    ]
    .iter()
    .map(|(m, n)| (s(m), s(n)))
    .collect();
    let classify_row = |(mu, nu): &(Scalar, Scalar)| -> String {
        let kw = named_family(
            &alg,
            &Family::Kw { mu: mu.clone(), nu: nu.clone() },
        )
        .expect("kw point builds");
        let report = classify(&alg, &kw).expect("kw point classifies");
        format!("({mu}:{nu}) {} {}", report.image_dim, report.verdict)
    };
    let parallel = par::map_collect(grid.clone(), classify_row);
    let sequential = par::map_collect_seq(grid, classify_row);
    o.expect(
        parallel == sequential,
        "parallel and sequential scans disagree",
    );
    o.expect(
        bracket_square(&alg, &named_family(&alg, &Family::Hol).unwrap())
            .iter()
            .all(|c| c.is_zero()),
        "holomorphic point square check drifted",
    );
    o.finish("parallel scan rows identical to the sequential fallback".into())
}
