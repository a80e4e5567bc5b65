use hirzebruch::braid::{braid_equal, homomorphisms, BraidWord};
use hirzebruch::complex::{build_complex, census, ComplexParams};
use hirzebruch::factorization::{assemble, certify};
use hirzebruch::grouptheory::{abelianization, AbelianInvariants};
use hirzebruch::model::{build_n_quotient, predict_series, Reading};
use hirzebruch::vankampen::{presentation, presentation_unchecked, tietze_simplify, Presentation, PresentationKind};
use hirzebruch::Error;
use proptest::prelude::*;

fn p(a: i64, b: i64) -> ComplexParams {
    ComplexParams::new(a, b).unwrap()
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(ComplexParams::new(0, 2).is_err());
    assert!(ComplexParams::new(1, 1).is_err());
    assert!(ComplexParams::new(-1, 3).is_err());
}

#[test]
fn strand_count_is_twice_the_line_count() {
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let r = census(p(a, b)).unwrap();
        let fz = assemble(&build_complex(p(a, b)).unwrap()).unwrap();
        assert_eq!(fz.strands() as i64, 2 * r.lines);
        assert_eq!(r.m, 2 * r.lines);
    }
}

#[test]
fn checked_presentation_requires_a_passing_certificate() {
    let fz = assemble(&build_complex(p(1, 2)).unwrap()).unwrap();
    let cert = certify(&fz, 0);
    let checked = presentation(&fz, PresentationKind::Affine);
    if cert.passed() {
        assert!(checked.is_ok());
    } else {
        assert!(matches!(checked, Err(Error::Certificate(_))));
        assert!(presentation_unchecked(&fz, PresentationKind::Affine).is_ok());
    }
}

#[test]
fn presentation_shapes_and_serde_round_trip() {
    let fz = assemble(&build_complex(p(1, 2)).unwrap()).unwrap();
    let affine = presentation_unchecked(&fz, PresentationKind::Affine).unwrap();
    let projective = presentation_unchecked(&fz, PresentationKind::Projective).unwrap();
    assert_eq!(affine.rank(), fz.strands());
    assert_eq!(affine.relators.len(), fz.factors.len());
    assert_eq!(projective.relators.len(), affine.relators.len() + 1);
    assert_eq!(projective.relators[..affine.relators.len()], affine.relators[..]);
    let text = serde_json::to_string(&projective).unwrap();
    let back: Presentation = serde_json::from_str(&text).unwrap();
    assert_eq!(back, projective);
    let gap = projective.to_gap();
    assert_eq!(gap.matches("FreeGroup(").count(), 1);
    assert!(gap.contains("G := F / rels;;"));
}

#[test]
fn affine_abelianization_is_infinite_cyclic() {
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let fz = assemble(&build_complex(p(a, b)).unwrap()).unwrap();
        let pr = presentation_unchecked(&fz, PresentationKind::Affine).unwrap();
        assert!(pr.relation_matrix().iter().all(|row| row.iter().sum::<i64>() == 0), "({a},{b})");
        assert_eq!(abelianization(&pr), AbelianInvariants::cyclic(0), "({a},{b})");
    }
}

#[test]
fn tietze_preserves_abelianization() {
    for (a, b) in [(1, 2), (2, 2)] {
        let fz = assemble(&build_complex(p(a, b)).unwrap()).unwrap();
        for kind in [PresentationKind::Affine, PresentationKind::Projective] {
            let pr = presentation_unchecked(&fz, kind).unwrap();
            let (s, report) = tietze_simplify(&pr, 20_000, 4_000);
            assert!(s.rank() <= pr.rank());
            assert!(!report.exhausted);
            assert_eq!(abelianization(&s), abelianization(&pr));
        }
    }
}

#[test]
fn certificate_is_deterministic() {
    let c = build_complex(p(1, 3)).unwrap();
    let a = assemble(&c).unwrap();
    let b = assemble(&c).unwrap();
    assert_eq!(a.dump(), b.dump());
    assert_eq!(certify(&a, 0), certify(&b, 0));
}

#[test]
fn quotient_shadow_matches_prediction_on_small_grid() {
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let q = build_n_quotient(&build_complex(p(a, b)).unwrap(), Reading::CToMu, 1_000_000).unwrap();
        let s = q.summary();
        let pr = predict_series(p(a, b));
        assert_eq!(s.shadow, pr.affine.middle, "({a},{b})");
        assert_eq!(s.mu_trivial, pr.affine.bottom.is_trivial(), "({a},{b})");
    }
}

fn braid(strands: usize) -> impl Strategy<Value = BraidWord> {
    let n = strands as i32;
    prop::collection::vec((1..n).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..12)
        .prop_map(move |l| BraidWord::from_letters(strands, l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn full_twist_is_central(w in braid(5)) {
        let d2 = BraidWord::full_twist(5);
        prop_assert!(braid_equal(&w.mul(&d2), &d2.mul(&w)));
    }

    #[test]
    fn shadows_are_conjugation_invariant(w in braid(5), c in braid(5)) {
        let x = homomorphisms(&w);
        let y = homomorphisms(&w.conjugated_by(&c));
        prop_assert_eq!(x.permutation.is_identity(), y.permutation.is_identity());
        prop_assert_eq!(w.degree(), w.conjugated_by(&c).degree());
        prop_assert_eq!(x.linking_total(), y.linking_total());
    }
}

#[test]
fn full_twist_shadows() {
    for m in 2..=8 {
        let s = homomorphisms(&BraidWord::full_twist(m));
        assert!(s.permutation.is_identity());
        for p in 0..m {
            for q in p + 1..m {
                assert_eq!(s.linking[p][q], 2);
            }
        }
        assert_eq!(BraidWord::full_twist(m).degree(), (m * (m - 1)) as i64);
    }
}
