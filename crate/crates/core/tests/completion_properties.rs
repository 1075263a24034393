mod common;

use common::*;
use dlaurent::completion::{centralizer_solve, evaluate, make_generators, rebase, RebasedRecord, RebasedSeries};
use dlaurent::series::DeformedSeries;
use dlaurent::weyl::embed;
use dlaurent::{Error, RatFun};
use rand::Rng;

const REBASE_SPECS: [(i64, i64); 5] = [(0, 1), (1, 1), (1, 2), (3, 2), (2, -1)];

#[test]
fn generator_images_have_expected_leading_terms() {
    for r in -4i64..=4 {
        for s in -4i64..=4 {
            if s == 0 || r + s <= 0 || num_integer::gcd(r, s) != 1 {
                continue;
            }
            let pair = make_generators(r, s, -6).unwrap();
            assert_eq!(r * pair.i + s * pair.j, 1);
            assert_eq!(pair.t0_image().leading(), Some((1, &RatFun::x_pow(pair.i))));
            assert_eq!(pair.alpha0_image().leading(), Some((0, &RatFun::x_pow(s))));
        }
    }
}

#[test]
fn embedded_weyl_elements_rebase_and_round_trip() {
    let mut rng = rng(31);
    for (r, s) in REBASE_SPECS {
        let pair = make_generators(r, s, -8).unwrap();
        for _ in 0..5 {
            let z = weyl(&mut rng, 3, 2);
            let image = embed(pair.spec(), &z, -8).unwrap();
            let rebased = rebase(&pair, &image).unwrap();
            let back = evaluate(&pair, &rebased).unwrap();
            assert!(back.equal_to_floor(&image, -8), "({r},{s}): {z}");
        }
    }
}

#[test]
fn rebased_records_serialize() {
    let pair = make_generators(1, 2, -6).unwrap();
    let image = embed(pair.spec(), &dlaurent::weyl::WeylElement::p(), -6).unwrap();
    let rebased: RebasedSeries = rebase(&pair, &image).unwrap();
    let json = serde_json::to_string(&rebased.to_record()).unwrap();
    let back: RebasedRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rebased.to_record());
    assert_eq!(back.pair.i + 2 * back.pair.j, 1);
}

#[test]
fn non_subfield_coefficients_leave_the_completion() {
    let pair = make_generators(1, 2, -6).unwrap();
    for odd in ["alpha", "alpha^3 + 1", "1/(alpha - 2)"] {
        let z = DeformedSeries::constant(pair.spec(), odd.parse().unwrap(), -6);
        assert!(matches!(rebase(&pair, &z), Err(Error::NotInCompletion { degree: 0, .. })), "{odd}");
    }
    // even coefficients stay inside
    let z = DeformedSeries::constant(pair.spec(), "alpha^2 + 3".parse().unwrap(), -6);
    assert!(rebase(&pair, &z).is_ok());
}

fn degree_zero_element(
    rng: &mut rand_chacha::ChaCha8Rng,
    spec: &std::sync::Arc<dlaurent::deformation::DeformationSpec>,
) -> DeformedSeries {
    let mut terms = vec![(0, nonconstant_ratfun(rng, 2))];
    for _ in 0..rng.gen_range(0..3) {
        terms.push((rng.gen_range(-3..=-1), ratfun(rng, 2)));
    }
    DeformedSeries::from_terms(spec, terms, -16)
}

#[test]
fn centralizer_solutions_commute_and_are_unique() {
    let mut rng = rng(32);
    for (r, s) in [(0, 1), (1, 1), (1, 2)] {
        let spec = spec(r, s);
        for _ in 0..3 {
            let z = degree_zero_element(&mut rng, &spec);
            let b0 = ratfun(&mut rng, 2);
            let w = centralizer_solve(&z, &b0, -8).unwrap();
            assert_eq!(w.coeff(0), b0);
            assert!(z.commutator(&w).unwrap().is_zero_to_floor(), "({r},{s})");
            let again = centralizer_solve(&z, &w.coeff(0), -8).unwrap();
            assert_eq!(again, w);
        }
    }
}

#[test]
fn centralizer_is_additive_in_the_constant_term() {
    let mut rng = rng(33);
    let spec = spec(1, 1);
    for _ in 0..3 {
        let z = degree_zero_element(&mut rng, &spec);
        let (b, c) = (ratfun(&mut rng, 2), ratfun(&mut rng, 2));
        let sum = centralizer_solve(&z, &(&b + &c), -8).unwrap();
        let parts = centralizer_solve(&z, &b, -8).unwrap().add(&centralizer_solve(&z, &c, -8).unwrap()).unwrap();
        assert!(sum.agrees_with(&parts));
    }
}
