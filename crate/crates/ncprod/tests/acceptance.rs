//! The acceptance gate: one test per top-level guarantee, each printing a
//! single `ACCEPTANCE <name>: PASS (…)` line and enforcing its runtime
//! budget.  Everything runs in exact Gaussian-rational arithmetic, so
//! "pass" always means residual exactly zero, never "small".

use std::time::Instant;

use serde_json::json;

use ncprod::algebra::{
    check_substitution_invariance, Engine, NormalMonomial, QuotientKind, Strategy, Word,
};
use ncprod::families::{make_family, FamilyError, FamilySpec};
use ncprod::koszul::{
    check_pbw_conditions, dual_relations_annihilate, koszul_dual_relations, koszul_homology,
    koszul_intersection_dims, SkewEngine,
};
use ncprod::linalg::{rank_of, Mat};
use ncprod::quaternion::{j_matrix, reflection_matrix, Quaternion, Side, Sign};
use ncprod::rmatrix::{check_axioms, AxiomReport, RMatrix};
use ncprod::scalar::{GaussianRational, Scalar};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = GaussianRational;

fn fam(v: serde_json::Value) -> RMatrix<Q> {
    make_family(&FamilySpec::from_value(v).expect("spec parses")).expect("family constructs")
}

/// The named battery: every family point the guarantees quantify over.
fn families_under_test() -> Vec<(String, RMatrix<Q>)> {
    let mut out = Vec::new();
    for n1 in 1..=4usize {
        for n2 in 1..=4usize {
            out.push((
                format!("classical({n1},{n2})"),
                fam(json!({"kind": "classical", "n1": n1, "n2": n2})),
            ));
        }
    }
    out.push((
        "theta4(3/5,4/5)".into(),
        fam(json!({"kind": "theta4", "params": {"u": "3/5", "v": "4/5"}})),
    ));
    for sign in ["+", "-"] {
        out.push((
            format!("toric8{sign}(3/5,4/5)"),
            fam(json!({
                "kind": "toric8", "sign": sign,
                "params": {"u": "3/5", "v": "4/5", "n_hat": ["0", "0", "1"]}
            })),
        ));
        out.push((
            format!("quaternionic{sign}(1/3,2/3,2/3)"),
            fam(json!({
                "kind": "quaternionic", "sign": sign,
                "params": {
                    "u0": "1/3", "u1": "2/3", "u2": "2/3",
                    "n1_hat": ["1", "0", "0"], "n2_hat": ["0", "1", "0"]
                }
            })),
        ));
    }
    out.push((
        "stratum1(3/5)".into(),
        fam(json!({
            "kind": "stratum1",
            "params": {
                "u": "3/5", "n_hat": ["0", "0", "1"],
                "v_vec": ["4/5", "0", "0"], "w_vec": ["1", "0", "0"]
            }
        })),
    ));
    out.push((
        "stratum2(3/5,4/5,3/5)".into(),
        fam(json!({
            "kind": "stratum2",
            "params": {
                "u1": "3/5", "u2": "4/5", "t": "3/5",
                "n1_hat": ["1", "0", "0"], "n2_hat": ["0", "1", "0"],
                "v_vec": ["4/5", "0", "0"], "w_vec": ["1", "0", "0"]
            }
        })),
    ));
    out
}

fn quaternionic_point(sign: &str) -> RMatrix<Q> {
    fam(json!({
        "kind": "quaternionic", "sign": sign,
        "params": {
            "u0": "1/3", "u1": "2/3", "u2": "2/3",
            "n1_hat": ["1", "0", "0"], "n2_hat": ["0", "1", "0"]
        }
    }))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Asserts the budget and prints the one-line verdict for this criterion.
fn conclude(name: &str, started: Instant, budget_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "{name}: took {elapsed:.2} s, budget {budget_secs} s"
    );
    println!("ACCEPTANCE {name}: PASS ({elapsed:.2} s)");
}

fn assert_zero_defect(label: &str, report: &AxiomReport) {
    assert!(report.all_pass, "{label}: axiom battery failed");
    for (name, outcome) in [("reality", &report.reality), ("involution", &report.involution)] {
        assert_eq!(outcome.defect_count, 0, "{label}/{name}");
        assert_eq!(outcome.max_residual, 0.0, "{label}/{name}");
    }
    for group in [&report.yang_baxter, &report.centrality, &report.euclidean] {
        for check in group {
            assert_eq!(check.outcome.defect_count, 0, "{label}/{}", check.name);
            assert_eq!(check.outcome.max_residual, 0.0, "{label}/{}", check.name);
        }
    }
}

#[test]
fn criterion_01_axiom_battery() {
    let t = Instant::now();
    for (label, r) in families_under_test() {
        let report = check_axioms(&r);
        assert_zero_defect(&label, &report);
    }
    conclude("axiom battery", t, 10.0);
}

#[test]
fn criterion_02_negative_battery() {
    let t = Instant::now();
    // A circle parameter off the circle never reaches construction.
    for kind in ["theta4", "toric8"] {
        let mut params = serde_json::Map::new();
        params.insert("u".into(), json!("1"));
        params.insert("v".into(), json!("1"));
        if kind == "toric8" {
            params.insert("n_hat".into(), json!(["0", "0", "1"]));
        }
        let spec = FamilySpec::from_value(json!({"kind": kind, "params": params})).unwrap();
        let err = make_family::<Q>(&spec).unwrap_err();
        assert!(
            matches!(err, FamilyError::ConstraintViolated { .. }),
            "{kind}: expected a constraint violation, got {err}"
        );
    }
    // A quadruple breaking only the norm condition A²⊗B² + C²⊗D² = 1⊗1
    // fails reality and the centrality sums while every commutator-based
    // identity still holds.
    let a: Mat<Q> = Mat::identity(4);
    let b: Mat<Q> = Mat::identity(4);
    let c: Mat<Q> = j_matrix(Sign::Plus, 1);
    let d: Mat<Q> = j_matrix(Sign::Plus, 1);
    let r = RMatrix::from_abcd(&a, &b, &c, &d).expect("shapes are valid");
    let report = check_axioms(&r);
    assert!(!report.all_pass);
    assert!(!report.reality.pass, "reality must fail");
    for check in &report.centrality {
        assert!(!check.outcome.pass, "{} must fail", check.name);
    }
    for check in &report.yang_baxter {
        assert!(check.outcome.pass, "{} must pass", check.name);
    }
    conclude("negative battery", t, 1.0);
}

#[test]
fn criterion_03_poincare_series() {
    let t = Instant::now();
    // Small blocks: degrees through 6, counted by enumerating the normal
    // monomial basis degree by degree.
    let small: Vec<(String, RMatrix<Q>)> = vec![
        (
            "theta4".into(),
            fam(json!({"kind": "theta4", "params": {"u": "3/5", "v": "4/5"}})),
        ),
        (
            "classical(2,2)".into(),
            fam(json!({"kind": "classical", "n1": 2, "n2": 2})),
        ),
        (
            "classical(1,3)".into(),
            fam(json!({"kind": "classical", "n1": 1, "n2": 3})),
        ),
    ];
    for (label, r) in small {
        let e = Engine::new(r).expect("axioms hold");
        for n in 0..=6 {
            let counted = e.graded_dimension(n);
            assert_eq!(
                counted,
                binomial(e.n() + n.saturating_sub(1), n),
                "{label} at degree {n}"
            );
        }
    }
    // The 8-dimensional point: degrees through 4, frozen expected values.
    let e = Engine::new(quaternionic_point("+")).expect("axioms hold");
    let counted: Vec<usize> = (0..=4).map(|n| e.graded_dimension(n)).collect();
    assert_eq!(counted, vec![1, 8, 36, 120, 330]);
    conclude("Poincaré series", t, 30.0);
}

#[test]
fn criterion_04_dual_and_clifford_dimensions() {
    let t = Instant::now();
    // 4-dimensional: the dual dimensions by rewriting rank in every
    // degree, and the full 16-dimensional product span of the unit
    // deformation.
    let r4 = fam(json!({"kind": "theta4", "params": {"u": "3/5", "v": "4/5"}}));
    let dual = SkewEngine::dual(&r4).expect("preconditions hold");
    for k in 0..=5 {
        assert_eq!(dual.spanned_dimension_of_degree(k), binomial(4, k), "k={k}");
    }
    let cl = SkewEngine::clifford(&r4).expect("preconditions hold");
    assert_eq!(cl.product_span_dimension(), 16);

    // 8-dimensional: every dual dimension through the top degree and one
    // past it, via the independent intersection model, plus the dual
    // relation span itself; the Clifford count is the basis cardinality
    // spot-check.
    let r8 = quaternionic_point("+");
    let dual8 = SkewEngine::dual(&r8).expect("preconditions hold");
    for k in 0..=9 {
        assert_eq!(dual8.graded_dimension(k), binomial(8, k), "k={k}");
    }
    assert_eq!(dual8.spanned_dimension_of_degree(2), binomial(8, 2));
    let duals = koszul_dual_relations(&r8);
    assert_eq!(duals.len(), binomial(9, 2));
    assert_eq!(rank_of(duals.iter().map(|d| d.tensor.clone())), binomial(9, 2));
    assert!(dual_relations_annihilate(&r8));
    let dims = koszul_intersection_dims(&r8, 4);
    assert_eq!(dims, vec![1, 8, 28, 56, 70]);
    let cl8 = SkewEngine::clifford(&r8).expect("preconditions hold");
    assert_eq!(cl8.total_dimension(), 256);
    conclude("dual and Clifford dimensions", t, 60.0);
}

#[test]
fn criterion_05_koszul_homology() {
    let t = Instant::now();
    let small: Vec<(String, RMatrix<Q>, usize)> = vec![
        (
            "theta4".into(),
            fam(json!({"kind": "theta4", "params": {"u": "3/5", "v": "4/5"}})),
            5,
        ),
        (
            "classical(2,2)".into(),
            fam(json!({"kind": "classical", "n1": 2, "n2": 2})),
            5,
        ),
        (
            "classical(1,2)".into(),
            fam(json!({"kind": "classical", "n1": 1, "n2": 2})),
            5,
        ),
        ("quaternionic".into(), quaternionic_point("+"), 3),
    ];
    for (label, r, max_weight) in small {
        let table = koszul_homology(&r, max_weight).expect("axioms hold");
        assert!(table.boundary_square_is_zero, "{label}: ∂² ≠ 0");
        assert!(
            table.is_resolution_of_scalars(),
            "{label}: homology does not vanish: {}",
            table.to_json()
        );
    }
    conclude("Koszul homology", t, 300.0);
}

#[test]
fn criterion_06_clifford_identities_and_pbw() {
    let t = Instant::now();
    for (label, r) in families_under_test() {
        let engine = Engine::new(r.clone()).expect("axioms hold");
        let cl = SkewEngine::clifford(&r).expect("preconditions hold");
        let gamma = ncprod::koszul::verify_gamma_square(&cl, &engine).expect("dimensions match");
        assert!(gamma.block1, "{label}: block-1 squares");
        assert!(gamma.block2, "{label}: block-2 squares");
        assert!(gamma.mixed, "{label}: mixed terms");
        assert!(gamma.total, "{label}: (Γ(x))² = 1 ⊗ ‖x‖²");
        let pbw = check_pbw_conditions(&r);
        assert!(pbw.condition_i, "{label}: PBW condition (i)");
        assert!(pbw.condition_ii, "{label}: PBW condition (ii)");
    }
    conclude("Clifford identities and PBW", t, 30.0);
}

fn random_element(e: &Engine<Q>, rng: &mut ChaCha8Rng) -> ncprod::algebra::AlgebraElement<Q> {
    let n = e.n();
    let mut out = ncprod::algebra::AlgebraElement::zero();
    for _ in 0..rng.random_range(1..=2usize) {
        let len = rng.random_range(1..=4usize);
        let word: Word = (0..len)
            .map(|_| e.gen_of_flat(rng.random_range(0..n)))
            .collect();
        let mut re = rng.random_range(-2..=2i64);
        let im = rng.random_range(-2..=2i64);
        if re == 0 && im == 0 {
            re = 1;
        }
        let coeff = Q::int(re) + Q::i() * Q::int(im);
        out = out.add(&e.normal_form_with(&word, coeff, Strategy::Leftmost));
    }
    out
}

#[test]
fn criterion_07_quotients() {
    let t = Instant::now();
    // Centrality of the three sphere generators, for every family.
    for (label, r) in families_under_test() {
        let e = Engine::new(r).expect("axioms hold");
        assert!(
            e.is_central(&e.norm_square(ncprod::algebra::Block::X1)),
            "{label}: ‖x1‖²"
        );
        assert!(
            e.is_central(&e.norm_square(ncprod::algebra::Block::X2)),
            "{label}: ‖x2‖²"
        );
        assert!(e.is_central(&e.norm_square_total()), "{label}: ‖x‖²");
    }
    // 200 random degree-≤4 samples: reduction is idempotent and respects
    // products, across all three quotient kinds.
    let e = Engine::new(fam(json!({"kind": "theta4", "params": {"u": "3/5", "v": "4/5"}})))
        .expect("axioms hold");
    let mut rng = ChaCha8Rng::seed_from_u64(20_24);
    let kinds = [
        QuotientKind::Torus,
        QuotientKind::SevenSphere,
        QuotientKind::ProductSpheres,
    ];
    for i in 0..200 {
        let kind = kinds[i % kinds.len()];
        let x = random_element(&e, &mut rng);
        let y = random_element(&e, &mut rng);
        let rx = e.reduce_mod_spheres(&x, kind).expect("ideal is central");
        let ry = e.reduce_mod_spheres(&y, kind).expect("ideal is central");
        assert_eq!(
            e.reduce_mod_spheres(&rx, kind).expect("ideal is central"),
            rx,
            "idempotence, sample {i}"
        );
        let direct = e
            .reduce_mod_spheres(&e.multiply(&x, &y), kind)
            .expect("ideal is central");
        let reduced_first = e
            .reduce_mod_spheres(&e.multiply(&rx, &ry), kind)
            .expect("ideal is central");
        assert_eq!(direct, reduced_first, "multiplicativity, sample {i}");
    }
    conclude("quotients", t, 30.0);
}

#[test]
fn criterion_08_symmetry() {
    let t = Instant::now();
    let one = Quaternion::<Q>::one;
    let q = |c: [(i64, i64); 4]| Quaternion::<Q> {
        c: c.map(|(p, qden)| Q::rat(p, qden)),
    };
    let pairs = [
        (one(), one()),
        (q([(3, 5), (4, 5), (0, 1), (0, 1)]), one()),
        (one(), q([(3, 5), (0, 1), (4, 5), (0, 1)])),
        (
            q([(3, 5), (4, 5), (0, 1), (0, 1)]),
            q([(3, 5), (0, 1), (4, 5), (0, 1)]),
        ),
        (
            q([(1, 3), (2, 3), (2, 3), (0, 1)]),
            q([(0, 1), (0, 1), (3, 5), (4, 5)]),
        ),
    ];
    for (sign, side) in [("+", Side::Right), ("-", Side::Left)] {
        let e = Engine::new(quaternionic_point(sign)).expect("axioms hold");
        for (i, (q1, q2)) in pairs.iter().enumerate() {
            let report = e
                .check_relation_invariance(q1, q2, side)
                .expect("unit quaternions at full block size");
            assert!(
                report.all_pass(),
                "sign {sign}, pair {i}: {:?}",
                report.failures
            );
        }
    }
    conclude("symmetry", t, 30.0);
}

#[test]
fn criterion_09_confluence() {
    let t = Instant::now();
    for (label, r) in families_under_test() {
        let e = Engine::new(r).expect("axioms hold");
        let report = e.check_confluence_sample(500, 5, 97);
        assert!(
            report.all_pass(),
            "{label}: {} disagreements, {} involution failures",
            report.strategy_disagreements,
            report.involution_failures
        );
        // The double rewrite fixes every cross-block pair exactly.
        for l in 0..e.n1() {
            for a in 0..e.n2() {
                let mut m = NormalMonomial::unit(e.n1(), e.n2());
                m.m1[l] += 1;
                m.m2[a] += 1;
                assert!(e.double_rewrite_fixes(&m), "{label}: pair ({l},{a})");
            }
        }
    }
    conclude("confluence", t, 60.0);
}

#[test]
fn criterion_10_family_coincidences() {
    let t = Instant::now();
    // The quaternionic family at the sphere's pole degenerates to the
    // commuting coordinates, entry for entry.
    let pole = fam(json!({
        "kind": "quaternionic", "sign": "+",
        "params": {
            "u0": "1", "u1": "0", "u2": "0",
            "n1_hat": ["1", "0", "0"], "n2_hat": ["0", "1", "0"]
        }
    }));
    assert_eq!(pole, RMatrix::classical(4, 4));

    // The two toric signs coincide after transporting one of them
    // through the block exchange at the opposite circle parameter.
    let toric = |sign: &str, v: &str| {
        fam(json!({
            "kind": "toric8", "sign": sign,
            "params": {"u": "3/5", "v": v, "n_hat": ["0", "0", "1"]}
        }))
    };
    assert_eq!(toric("+", "-4/5").exchange_blocks(), toric("-", "4/5"));

    // Reflecting every generator triple carries the + relations onto the
    // − relations; the identity substitution does not.
    let plus = Engine::new(quaternionic_point("+")).expect("axioms hold");
    let minus = Engine::new(quaternionic_point("-")).expect("axioms hold");
    let refl: Mat<Q> = reflection_matrix();
    let carried = check_substitution_invariance(&plus, &minus, &refl, &refl).unwrap();
    assert!(carried.all_pass(), "{:?}", carried.failures);
    let id: Mat<Q> = Mat::identity(4);
    let unmapped = check_substitution_invariance(&plus, &minus, &id, &id).unwrap();
    assert!(!unmapped.all_pass());
    conclude("family coincidences", t, 5.0);
}
