use std::path::PathBuf;
use std::sync::OnceLock;

use proptest::prelude::*;
use thetarm_core::field::{parse_field_file, Field, FieldElement};
use thetarm_core::index::Index;
use thetarm_core::pipeline::{
    format_curve_file, format_level2_data, format_point2, format_point4, level2_point_from_data,
    level2_squares_from_thomae, level2_to_level4, level4_to_level2, mumford_holds,
    mumford_residuals, parse_curve_file, parse_level2_file, parse_point4_file, rm_test,
    rosenhain_from_level2, rosenhain_from_squares, thomae_squares, CurveInput, Decision,
    Level2Input, PipelineError, RosenhainCurve, SearchConfig, ThetaPoint2, ThetaPoint4,
};
use thetarm_core::relation::{evaluate, mumford_relations, rm_relations, verify};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/fixtures")
}

fn fixtures() -> &'static [ThetaPoint4] {
    static POINTS: OnceLock<Vec<ThetaPoint4>> = OnceLock::new();
    POINTS.get_or_init(|| {
        (1..=20)
            .map(|k| {
                let dir = fixture_dir().join(format!("{k:02}"));
                let read = |n: &str| std::fs::read_to_string(dir.join(n)).unwrap();
                let f = parse_field_file(&read("field.txt"), true).unwrap();
                parse_point4_file(&read("point.txt"), &f).unwrap()
            })
            .collect()
    })
}

/// F_{13^4}; every element of its subfield F_{13^2} is a square here.
fn f13_4() -> &'static (Field, Field) {
    static F: OnceLock<(Field, Field)> = OnceLock::new();
    F.get_or_init(|| {
        let base = Field::prime_u64(13).unwrap();
        let sub = base
            .extend("y", &[(-2).into(), 0.into(), 1.into()], true)
            .unwrap();
        let big = base
            .extend(
                "t",
                &[(-2).into(), 0.into(), 0.into(), 0.into(), 1.into()],
                true,
            )
            .unwrap();
        (big, sub)
    })
}

fn sum_sq(f: &Field, p: &ThetaPoint4, signs: [i64; 3]) -> FieldElement {
    let terms = [p.at(0, 0), p.at(0, 2), p.at(2, 0), p.at(2, 2)];
    let s = terms[1..]
        .iter()
        .zip(signs)
        .fold(terms[0].clone(), |acc, (x, s)| f.add(&acc, &f.scale(x, s)));
    f.square(&s)
}

#[test]
fn fixtures_are_theta_null_points() {
    for p in fixtures() {
        let f = p.field();
        assert!(verify(p, &mumford_relations(), f).unwrap().passed());
        assert!(mumford_holds(p));
    }
}

#[test]
fn fixtures_round_trip_through_level_two() {
    for (k, p) in fixtures().iter().enumerate() {
        let d = level4_to_level2(p).unwrap();
        assert!(d.is_consistent(p.field()), "fixture {}", k + 1);
        let classes = level2_point_from_data(&d, p.field()).unwrap();
        assert_eq!(classes.len(), 1);
        let ups = level2_to_level4(&classes[0]).unwrap();
        assert!(
            ups.iter().any(|q| q.projectively_equal(p)),
            "fixture {} not recovered among {} candidates",
            k + 1,
            ups.len()
        );
        assert!(ups.iter().all(mumford_holds));
    }
}

#[test]
fn going_down_satisfies_the_displayed_identities() {
    for p in fixtures() {
        let f = p.field();
        let d = level4_to_level2(p).unwrap();
        let s = &d.squares;
        let comb = |sg: [i64; 3]| {
            s[1..]
                .iter()
                .zip(sg)
                .fold(s[0].clone(), |acc, (x, c)| f.add(&acc, &f.scale(x, c)))
        };
        for sg in [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]] {
            assert_eq!(comb(sg), sum_sq(f, p, sg));
        }
        // b00·b01 ± b10·b11 = 2(a01 ± a21)², b00·b11 ± b01·b10 = 2(a11 ± a13)²,
        // b00·b10 ± b01·b11 = 2(a10 ± a12)²
        let pr = |k, l| d.product(k, l).clone();
        for sign in [1, -1] {
            let two_sq = |x: &FieldElement, y: &FieldElement| {
                f.scale(&f.square(&f.add(x, &f.scale(y, sign))), 2)
            };
            let pm = |x: FieldElement, y: FieldElement| f.add(&x, &f.scale(&y, sign));
            assert_eq!(pm(pr(0, 1), pr(2, 3)), two_sq(p.at(0, 1), p.at(2, 1)));
            assert_eq!(pm(pr(0, 3), pr(1, 2)), two_sq(p.at(1, 1), p.at(1, 3)));
            assert_eq!(pm(pr(0, 2), pr(1, 3)), two_sq(p.at(1, 0), p.at(1, 2)));
        }
    }
}

#[test]
fn tampered_fixtures_are_rejected() {
    for p in fixtures() {
        let f = p.field();
        let bumped = ThetaPoint4::from_fn(f, |u| {
            if u == Index::new(1, 1) || u == Index::new(3, 3) {
                f.add(p.get(u), &f.one())
            } else {
                p.get(u).clone()
            }
        })
        .unwrap();
        assert!(!mumford_holds(&bumped));
        assert!(matches!(
            level4_to_level2(&bumped),
            Err(PipelineError::NotAThetaNullPoint(_))
        ));
    }
}

#[test]
fn file_formats_round_trip() {
    for p in fixtures() {
        let f = p.field();
        assert_eq!(&parse_point4_file(&format_point4(p), f).unwrap(), p);
        let d = level4_to_level2(p).unwrap();
        assert_eq!(
            parse_level2_file(&format_level2_data(&d, f), f).unwrap(),
            Level2Input::Data(d.clone())
        );
        let b = level2_point_from_data(&d, f).unwrap().remove(0);
        assert_eq!(
            parse_level2_file(&format_point2(&b), f).unwrap(),
            Level2Input::Point(b)
        );
    }
}

fn element() -> impl Strategy<Value = (i64, i64)> {
    (0i64..13, 0i64..13)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rosenhain_recovery_inverts_thomae(l in prop::array::uniform3(element())) {
        let (f, sub) = f13_4();
        let t = f.generator().unwrap();
        let y = f.square(&t);
        let emb = f.embedding(sub, y).unwrap();
        let lift = |(a, b): (i64, i64)| {
            emb.apply(&sub.from_coeffs(vec![(a as u64).into(), (b as u64).into()]).unwrap())
        };
        let Ok(curve) = RosenhainCurve::new(f, l.map(lift)) else { return Ok(()) };
        let r = thomae_squares(&curve.branch_points(), f);
        let classes = level2_squares_from_thomae(&r, f).unwrap();
        prop_assert!(!classes.is_empty());
        for sq in &classes {
            match rosenhain_from_squares(sq, f) {
                Ok(found) => {
                    prop_assert!(found.contains(&curve));
                    let t2 = {
                        let c = [
                            f.add(&f.add(&sq[0], &sq[1]), &f.add(&sq[2], &sq[3])),
                            f.add(&f.sub(&sq[0], &sq[1]), &f.sub(&sq[2], &sq[3])),
                            f.sub(&f.add(&sq[0], &sq[1]), &f.add(&sq[2], &sq[3])),
                            f.sub(&f.sub(&sq[0], &sq[1]), &f.sub(&sq[2], &sq[3])),
                        ];
                        c.map(|x| f.square(&x))
                    };
                    for c in &found {
                        let r = thomae_squares(&c.branch_points(), f);
                        for i in 0..4 {
                            for j in 0..4 {
                                prop_assert_eq!(f.mul(&r[i], &t2[j]), f.mul(&r[j], &t2[i]));
                            }
                        }
                    }
                }
                Err(e) => prop_assert_eq!(e, PipelineError::DegenerateThetaPoint),
            }
        }
    }

    #[test]
    fn fast_mumford_matches_generic(v in prop::array::uniform10(0i64..1009)) {
        let f = Field::prime_u64(1009).unwrap();
        let Ok(p) = ThetaPoint4::from_representatives(&f, v.map(|x| f.from_i64(x))) else {
            return Ok(());
        };
        let generic = mumford_relations();
        let fast = mumford_residuals(&p);
        for (k, r) in fast.iter().enumerate() {
            let slow = evaluate(&generic.relations()[k].poly, &p, &f).unwrap();
            prop_assert!(slow == *r || slow == f.neg(r));
        }
        prop_assert_eq!(mumford_holds(&p), verify(&p, &generic, &f).unwrap().passed());
    }

    #[test]
    fn level_two_points_give_consistent_data(v in prop::array::uniform4(0i64..1009)) {
        let f = Field::prime_u64(1009).unwrap();
        let Ok(b) = ThetaPoint2::new(&f, v.map(|x| f.from_i64(x))) else { return Ok(()) };
        let d = b.to_data();
        prop_assert!(d.is_consistent(&f));
        let back = level2_point_from_data(&d, &f).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert!(back[0].projectively_equal(&b));
    }

    #[test]
    fn curve_files_round_trip(l in prop::array::uniform3(2i64..101)) {
        let f = Field::prime_u64(101).unwrap();
        let Ok(c) = RosenhainCurve::new(&f, l.map(|x| f.from_i64(x))) else { return Ok(()) };
        let parsed = parse_curve_file(&format_curve_file(&c), &f).unwrap();
        prop_assert_eq!(parsed.clone(), CurveInput::Rosenhain(c.lambdas().clone()));
        prop_assert_eq!(parsed.into_curve(&f).unwrap(), c);
    }
}

#[test]
fn degenerate_level_two_points_are_rejected() {
    let f = Field::prime_u64(101).unwrap();
    // T1 = b00² + b01² + b10² + b11² vanishes
    let i = f.sqrt(&f.from_i64(-1)).unwrap();
    let b = ThetaPoint2::new(&f, [f.one(), f.one(), i.clone(), i]).unwrap();
    assert_eq!(
        rosenhain_from_level2(&b),
        Err(PipelineError::DegenerateThetaPoint)
    );
    let sq = [f.one(), f.one(), f.one(), f.from_i64(-3)];
    assert_eq!(
        rosenhain_from_squares(&sq, &f),
        Err(PipelineError::DegenerateThetaPoint)
    );
}

/// λ = (5, 29, 83) over F_101.
fn f101_curve() -> RosenhainCurve {
    let f = Field::prime_u64(101).unwrap();
    RosenhainCurve::new(&f, [f.from_i64(5), f.from_i64(29), f.from_i64(83)]).unwrap()
}

#[test]
fn fixed_curve_over_f101_needs_an_extension() {
    assert!(matches!(
        rm_test(&f101_curve(), &SearchConfig::default()),
        Err(PipelineError::FieldTooSmall { .. })
    ));
}

#[test]
fn fixed_curve_over_f101_is_negative_over_the_quadratic_extension() {
    let capped = SearchConfig {
        auto_extend: true,
        ..SearchConfig::default()
    };
    assert_eq!(
        rm_test(&f101_curve(), &capped).unwrap(),
        Decision::Negative {
            examined: 100_000,
            orderings: 120,
            complete: false
        }
    );
    let full = SearchConfig {
        max_candidates: 1_000_000,
        ..capped
    };
    assert_eq!(
        rm_test(&f101_curve(), &full).unwrap(),
        Decision::Negative {
            examined: 262_144,
            orderings: 120,
            complete: true
        }
    );
}

#[test]
fn positive_decisions_carry_verified_witnesses() {
    let f = Field::prime_u64(7).unwrap();
    let config = SearchConfig {
        auto_extend: true,
        ..SearchConfig::default()
    };
    for a in 2..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                let curve =
                    RosenhainCurve::new(&f, [f.from_i64(a), f.from_i64(b), f.from_i64(c)]).unwrap();
                let d = rm_test(&curve, &config).unwrap();
                assert_eq!(rm_test(&curve, &config).unwrap(), d, "not deterministic");
                let Decision::Positive { witness, .. } = d else {
                    panic!("λ = ({a},{b},{c}) changed outcome");
                };
                let wf = witness.field();
                assert!(wf.degree() <= 2);
                assert!(verify(&witness, &mumford_relations(), wf).unwrap().passed());
                assert!(verify(&witness, &rm_relations(), wf).unwrap().passed());
            }
        }
    }
}

#[test]
fn invalid_search_configuration_is_rejected() {
    for config in [
        SearchConfig {
            max_orderings: 0,
            ..SearchConfig::default()
        },
        SearchConfig {
            max_candidates: 0,
            ..SearchConfig::default()
        },
    ] {
        assert!(matches!(
            rm_test(&f101_curve(), &config),
            Err(PipelineError::InvalidCurve(_))
        ));
    }
}
