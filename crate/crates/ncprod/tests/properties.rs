//! Property-based evidence for the structural laws: exact scalar field
//! axioms, strategy-independent rewriting, degree preservation, sphere
//! reduction shape, validity of whole rational parameter families (not
//! just the frozen worked points), and JSON round trips.

use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::json;

use ncprod::algebra::{AlgebraElement, Engine, NormalMonomial, QuotientKind, Strategy as Rewrite, Word};
use ncprod::cli::{run_on_spec, CheckKind, CheckReport, RunConfig};
use ncprod::families::{make_family, FamilySpec};
use ncprod::koszul::dual_relations_annihilate;
use ncprod::rmatrix::{check_axioms, RMatrix};
use ncprod::scalar::{sphere_point, GaussianRational, Scalar, SphereKind};

type Q = GaussianRational;

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// A small nonzero-denominator rational.
fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rational(p, q))
}

/// A small Gaussian rational a + bi.
fn arb_gaussian() -> impl Strategy<Value = Q> {
    (arb_rational(), arb_rational()).prop_map(|(re, im)| {
        Q::from_rational(&re) + Q::i() * Q::from_rational(&im)
    })
}

fn theta4_engine() -> Engine<Q> {
    let spec = FamilySpec::from_value(json!({
        "kind": "theta4", "params": {"u": "3/5", "v": "4/5"}
    }))
    .unwrap();
    Engine::new(make_family(&spec).unwrap()).unwrap()
}

/// A random word over the four generators, as flat indices.
fn arb_word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..4usize, 0..=max_len)
}

fn to_word(e: &Engine<Q>, flat: &[usize]) -> Word {
    flat.iter().map(|&a| e.gen_of_flat(a)).collect()
}

proptest! {
    // ---- the exact scalar field -------------------------------------

    #[test]
    fn gaussian_rationals_form_a_commutative_ring(
        a in arb_gaussian(), b in arb_gaussian(), c in arb_gaussian()
    ) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            (a.clone() + b.clone()) * c.clone(),
            a.clone() * c.clone() + b.clone() * c.clone()
        );
        prop_assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
    }

    #[test]
    fn nonzero_gaussian_rationals_invert(a in arb_gaussian()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_none());
        } else {
            let inv = a.inv().expect("nonzero inverts");
            prop_assert_eq!(a * inv, Q::one());
        }
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in arb_gaussian(), b in arb_gaussian()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        // a·ā is a nonnegative rational: its imaginary part vanishes.
        let norm = a.clone() * a.conj();
        prop_assert_eq!(norm.clone().conj(), norm);
    }

    // ---- whole rational parameter families are valid ----------------

    #[test]
    fn every_rational_circle_point_yields_a_valid_4d_family(
        p in -30i64..=30, q in 1i64..=15
    ) {
        let point = sphere_point(SphereKind::Circle, &[rational(p, q), rational(1, 1)])
            .expect("nonzero seed");
        let spec = FamilySpec::from_value(json!({
            "kind": "theta4",
            "params": {"u": point[0].to_string(), "v": point[1].to_string()}
        }))
        .unwrap();
        let r: RMatrix<Q> = make_family(&spec).expect("circle point satisfies the constraint");
        let report = check_axioms(&r);
        prop_assert!(report.all_pass, "failing: {:?}", report.failing_names());
        // The dual relations keep annihilating the primal ones.
        prop_assert!(dual_relations_annihilate(&r));
    }

    #[test]
    fn every_rational_sphere_point_yields_a_valid_8d_family(
        a in -6i64..=6, b in -6i64..=6, c in 1i64..=6
    ) {
        let point = sphere_point(
            SphereKind::Sphere2,
            &[rational(a, 2), rational(b, 3), rational(c, 1)],
        )
        .expect("nonzero seed");
        let spec = FamilySpec::from_value(json!({
            "kind": "quaternionic", "sign": "+",
            "params": {
                "u0": point[0].to_string(), "u1": point[1].to_string(), "u2": point[2].to_string(),
                "n1_hat": ["1", "0", "0"], "n2_hat": ["0", "1", "0"]
            }
        }))
        .unwrap();
        let r: RMatrix<Q> = make_family(&spec).expect("sphere point satisfies the constraint");
        let report = check_axioms(&r);
        prop_assert!(report.all_pass, "failing: {:?}", report.failing_names());
    }

    // ---- rewriting ---------------------------------------------------

    #[test]
    fn normal_forms_are_strategy_independent(flat in arb_word(6)) {
        let e = theta4_engine();
        let w = to_word(&e, &flat);
        let left = e.normal_form_with(&w, Q::one(), Rewrite::Leftmost);
        let right = e.normal_form_with(&w, Q::one(), Rewrite::Rightmost);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rewriting_preserves_degree(flat in arb_word(6)) {
        let e = theta4_engine();
        let w = to_word(&e, &flat);
        let nf = e.normal_form(&w);
        // Homogeneous quadratic relations: every term keeps the word's
        // length as its degree (and nothing cancels to zero on words).
        prop_assert!(!nf.is_zero());
        for (m, _) in nf.terms() {
            prop_assert_eq!(m.degree(), w.len());
        }
    }

    #[test]
    fn multiplication_is_associative_and_unital(
        wa in arb_word(3), wb in arb_word(3), wc in arb_word(3)
    ) {
        let e = theta4_engine();
        let a = e.normal_form(&to_word(&e, &wa));
        let b = e.normal_form(&to_word(&e, &wb));
        let c = e.normal_form(&to_word(&e, &wc));
        let left = e.multiply(&e.multiply(&a, &b), &c);
        let right = e.multiply(&a, &e.multiply(&b, &c));
        prop_assert_eq!(left, right);
        prop_assert_eq!(e.multiply(&e.one(), &a), a.clone());
        prop_assert_eq!(e.multiply(&a, &e.one()), a);
    }

    // ---- sphere reduction --------------------------------------------

    #[test]
    fn sphere_reduction_is_idempotent_and_strips_top_squares(
        flat in arb_word(5), coeff in arb_gaussian()
    ) {
        let e = theta4_engine();
        let x = e.normal_form_with(&to_word(&e, &flat), coeff, Rewrite::Leftmost);
        for kind in [
            QuotientKind::Torus,
            QuotientKind::SevenSphere,
            QuotientKind::ProductSpheres,
        ] {
            let rx = e.reduce_mod_spheres(&x, kind).expect("central ideal");
            prop_assert_eq!(&e.reduce_mod_spheres(&rx, kind).expect("central ideal"), &rx);
            let top1 = e.n1() - 1;
            let top2 = e.n2() - 1;
            for (m, _) in rx.terms() {
                match kind {
                    QuotientKind::SevenSphere => prop_assert!(m.m1[top1] < 2),
                    _ => prop_assert!(m.m1[top1] < 2 && m.m2[top2] < 2),
                }
            }
        }
    }

    // ---- serialization -----------------------------------------------

    #[test]
    fn algebra_elements_round_trip_through_json(
        flat in arb_word(4), coeff in arb_gaussian()
    ) {
        let e = theta4_engine();
        let x = e.normal_form_with(&to_word(&e, &flat), coeff, Rewrite::Leftmost);
        let back = AlgebraElement::<Q>::from_json(&x.to_json()).expect("round trips");
        prop_assert_eq!(back, x);
    }

    #[test]
    fn tensors_round_trip_through_json(p in -20i64..=20, q in 1i64..=10) {
        let point = sphere_point(SphereKind::Circle, &[rational(p, q), rational(1, 1)])
            .expect("nonzero seed");
        let spec = FamilySpec::from_value(json!({
            "kind": "theta4",
            "params": {"u": point[0].to_string(), "v": point[1].to_string()}
        }))
        .unwrap();
        let r: RMatrix<Q> = make_family(&spec).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: RMatrix<Q> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Heavier: whole check reports, for arbitrary nonempty suite subsets.
    #[test]
    fn check_reports_round_trip_through_json(mask in 1u16..512) {
        let all = CheckKind::all();
        let checks: Vec<CheckKind> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, k)| *k)
            .collect();
        let spec = FamilySpec::from_value(json!({
            "kind": "theta4", "params": {"u": "3/5", "v": "4/5"}
        }))
        .unwrap();
        let mut config = RunConfig::new("unused");
        config.checks = checks;
        config.max_degree = 3;
        config.max_weight = 2;
        let report = run_on_spec(&spec, &config).expect("valid spec runs");
        prop_assert!(report.overall_pass);
        let value = serde_json::to_value(&report).unwrap();
        let text = serde_json::to_string(&value).unwrap();
        let back = CheckReport::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }

    // The unit monomial is fixed by reduction in every quotient.
    #[test]
    fn units_are_reduction_fixed_points(seed in 0u64..1000) {
        let e = theta4_engine();
        let one = AlgebraElement::monomial(
            NormalMonomial::unit(e.n1(), e.n2()),
            Q::int(seed as i64 % 7 + 1),
        );
        for kind in [
            QuotientKind::Torus,
            QuotientKind::SevenSphere,
            QuotientKind::ProductSpheres,
        ] {
            prop_assert_eq!(
                &e.reduce_mod_spheres(&one, kind).expect("central ideal"),
                &one
            );
        }
    }
}
