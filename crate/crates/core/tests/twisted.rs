use std::collections::BTreeSet;

use padic_lab::building::{ApartmentPoint, EndoscopicCase, GradedQuotient};
use padic_lab::matrix::theta;
use padic_lab::rational::{q, qi};
use padic_lab::sampling::{random_gl_integral, random_permutation, random_unit, rng_for};
use padic_lab::twisted::{
    brute_force_orbit, coset_theta_equiv, descent_pair, hypothesis_bound, hypothesis_check, image_one_minus_theta,
    norm_multiset_check, norm_values, partition_check, quotient_theta_class, twisted_conjugate,
    DescentPairDescriptor, NormData, ThetaAction,
};
use padic_lab::{Error, ExtensionKind, LocalField, PadicMatrix};
use rand::Rng;

const KINDS: [ExtensionKind; 3] = [ExtensionKind::Trivial, ExtensionKind::Unramified, ExtensionKind::Ramified];
const CAP: u64 = 1 << 16;

fn quotient(kind: ExtensionKind) -> GradedQuotient {
    let f = LocalField::new(3, kind, 10).unwrap();
    GradedQuotient::new(f, ApartmentPoint::barycenter(2, f.e()), q(1, 2))
}

#[test]
fn twisted_conjugation_examples() {
    for kind in KINDS {
        let f = LocalField::new(5, kind, 10).unwrap();
        let mut rng = rng_for(1, 0);
        let g = random_gl_integral(&f, 3, &mut rng);
        let y = random_gl_integral(&f, 3, &mut rng);
        let id = PadicMatrix::identity(f, 3);
        assert!(twisted_conjugate(&id, &g).unwrap().agrees_with(&g));
        // Conjugating the identity gives y·θ(y)⁻¹.
        let expected = &y * &theta(&y).unwrap().inverse().unwrap();
        assert!(twisted_conjugate(&y, &id).unwrap().agrees_with(&expected));
        let z = random_gl_integral(&f, 3, &mut rng);
        let lhs = twisted_conjugate(&z, &twisted_conjugate(&y, &g).unwrap()).unwrap();
        assert!(lhs.agrees_with(&twisted_conjugate(&(&z * &y), &g).unwrap()));
    }
}

#[test]
fn orbits_match_brute_force() {
    let mut rng = rng_for(2, 0);
    for kind in KINDS {
        let quot = quotient(kind);
        let image: BTreeSet<Vec<u64>> =
            image_one_minus_theta(&quot, CAP).unwrap().iter().map(|c| quot.to_fp(c)).collect();
        for _ in 0..4 {
            let c0 = quot.element_at(rng.gen_range(0..quot.size()));
            let orbit = brute_force_orbit(&quot, &c0, CAP).unwrap();
            let predicted: BTreeSet<Vec<u64>> = image
                .iter()
                .map(|w| quot.to_fp(&quot.add(&c0, &quot.from_fp(w)).unwrap()))
                .collect();
            assert_eq!(orbit, predicted, "{kind}");
            for v in &orbit {
                assert!(coset_theta_equiv(&quot, &c0, &quot.from_fp(v)).unwrap());
            }
        }
    }
}

#[test]
fn canonical_class_is_fixed_and_equivalent() {
    for kind in KINDS {
        let quot = quotient(kind);
        for c in quot.enumerate(CAP).unwrap() {
            let rep = quotient_theta_class(&quot, &c).unwrap();
            assert_eq!(quot.theta_star(&rep).unwrap(), rep);
            assert!(coset_theta_equiv(&quot, &c, &rep).unwrap());
        }
        let report = partition_check(&quot, CAP).unwrap();
        assert!(report.passed());
        let act = ThetaAction::new(&quot).unwrap();
        let p = quot.field().p();
        assert_eq!(report.fixed_classes, p.pow(act.fixed_rank() as u32));
        assert_eq!(report.image_size, p.pow(act.image_rank() as u32));
    }
}

#[test]
fn descent_pair_examples() {
    for kind in KINDS {
        let quot = quotient(kind);
        let image = image_one_minus_theta(&quot, CAP).unwrap();
        let zero = descent_pair(&quot, &quot.zero(), CAP).unwrap();
        assert!(zero.full_filtration_pair);
        let mut got = zero.g_side_classes.clone();
        let mut want = image.clone();
        got.sort_by_key(|c| quot.to_fp(c));
        want.sort_by_key(|c| quot.to_fp(c));
        assert_eq!(got, want);

        let all = quot.enumerate(CAP).unwrap();
        for h in all.iter().filter(|c| quot.theta_star(c).unwrap() == **c) {
            let pair = descent_pair(&quot, h, CAP).unwrap();
            assert_eq!(pair.g_side_classes.len(), image.len());
            assert!(pair.g_side_classes.contains(h));
            let json = serde_json::to_string(&pair).unwrap();
            let back: DescentPairDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(back, pair);
        }
        if let Some(bad) = all.iter().find(|c| quot.theta_star(c).unwrap() != **c) {
            assert!(matches!(descent_pair(&quot, bad, CAP), Err(Error::NotFixedClass)));
        }
    }
}

#[test]
fn cap_is_enforced() {
    let quot = quotient(ExtensionKind::Unramified);
    assert!(matches!(image_one_minus_theta(&quot, 3), Err(Error::CapExceeded { .. })));
}

#[test]
fn theta_star_needs_a_fixed_point() {
    let f = LocalField::new(3, ExtensionKind::Trivial, 8).unwrap();
    let x = ApartmentPoint::new(vec![q(1, 2), qi(0), qi(0)]);
    let quot = GradedQuotient::new(f, x, qi(1));
    assert!(matches!(quot.theta_star(&quot.zero()), Err(Error::NotThetaFixed)));
}

/// Sorts by valuation, then by the digits of the unit part at a common
/// precision.
fn sorted_keys(xs: &[padic_lab::PadicScalar], prec: i64) -> Vec<String> {
    let mut keys: Vec<String> = xs.iter().map(|x| format!("{:?}", x.truncate(prec))).collect();
    keys.sort();
    keys
}

#[test]
fn norm_examples_against_sorting() {
    let mut rng = rng_for(5, 0);
    for kind in KINDS {
        let f = LocalField::new(7, kind, 8).unwrap();
        for n in 1..=5 {
            let t: Vec<_> = (0..n).map(|_| random_unit(&f, &mut rng)).collect();
            let s: Vec<_> = (0..n).map(|_| random_unit(&f, &mut rng)).collect();
            let w = norm_values(&NormData { t: t.clone(), s: s.clone(), v: vec![] }).unwrap();
            let perm = random_permutation(n, &mut rng);
            let v: Vec<_> = perm.iter().map(|&i| w[i]).collect();
            let d = NormData { t: t.clone(), s: s.clone(), v: v.clone() };
            assert!(norm_multiset_check(&d).unwrap());
            assert_eq!(sorted_keys(&v, 8), sorted_keys(&w, 8));

            let mut off = v.clone();
            off[0] = off[0] * (f.one() + f.uniformizer());
            let d = NormData { t, s, v: off.clone() };
            assert_eq!(norm_multiset_check(&d).unwrap(), sorted_keys(&off, 8) == sorted_keys(&w, 8));
        }
    }
}

#[test]
fn hypothesis_examples() {
    let unram = ExtensionKind::Unramified;
    assert!(hypothesis_check(&EndoscopicCase::OddOrthogonal { n: 2 }, 7));
    assert!(!hypothesis_check(&EndoscopicCase::OddOrthogonal { n: 2 }, 5));
    assert!(hypothesis_check(&EndoscopicCase::Unitary { n: 3, ext: unram }, 5));
    assert!(!hypothesis_check(&EndoscopicCase::Unitary { n: 3, ext: unram }, 3));
    assert!(!hypothesis_check(&EndoscopicCase::Unitary { n: 1, ext: unram }, 2));
    assert!(!hypothesis_check(&EndoscopicCase::SymplecticEven { n: 1 }, 9));
    assert_eq!(hypothesis_bound(&EndoscopicCase::SymplecticOdd { n: 3 }), 8);
    assert_eq!(hypothesis_bound(&EndoscopicCase::SymplecticEven { n: 3 }), 7);
    assert_eq!(
        hypothesis_bound(&EndoscopicCase::Unitary { n: 4, ext: ExtensionKind::Ramified }),
        hypothesis_bound(&EndoscopicCase::Unitary { n: 4, ext: unram })
    );
}
