use padic_lab::building::{
    alcove_contains, certificate_attempts, certify_root, inclusion_certificate, iwahori_lattice, mp_lattice,
    mp_membership, mp_membership_plus, mp_theta_membership, mp_thresholds, phi_matrix, random_theta_fixed_point,
    simple_affine_roots, ApartmentPoint, EndoscopicCase, GradedQuotient, GroupType,
};
use padic_lab::matrix::{decompose_dtheta, dtheta};
use padic_lab::rational::{q, qi, Q};
use padic_lab::sampling::{random_matrix_with, rng_for};
use padic_lab::{Error, ExtensionKind, LocalField, PadicMatrix};
use proptest::prelude::*;
use rand::Rng;

const KINDS: [ExtensionKind; 3] = [ExtensionKind::Trivial, ExtensionKind::Unramified, ExtensionKind::Ramified];

fn table(g: GroupType) -> Vec<(Vec<i64>, Q)> {
    simple_affine_roots(&g).unwrap().into_iter().map(|a| (a.gradient, a.constant)).collect()
}

fn point(v: &[(i64, i64)]) -> ApartmentPoint {
    ApartmentPoint::new(v.iter().map(|&(a, b)| q(a, b)).collect())
}

#[test]
fn root_tables() {
    assert_eq!(
        table(GroupType::Gl { n: 3, ext: ExtensionKind::Trivial }),
        vec![(vec![1, -1, 0], qi(0)), (vec![0, 1, -1], qi(0)), (vec![-1, 0, 1], qi(1))]
    );
    assert_eq!(table(GroupType::Gl { n: 2, ext: ExtensionKind::Ramified })[1], (vec![-1, 1], q(1, 2)));
    assert_eq!(
        table(GroupType::Sp { n: 2 }),
        vec![(vec![1, -1, 1, -1], qi(0)), (vec![0, 2, -2, 0], qi(0)), (vec![-2, 0, 0, 2], qi(1))]
    );
    assert_eq!(
        table(GroupType::U { n: 3, ext: ExtensionKind::Ramified }),
        vec![(vec![1, 0, -1], q(1, 4)), (vec![-2, 0, 2], qi(0))]
    );
    assert!(matches!(simple_affine_roots(&GroupType::SoEven { n: 2 }), Err(Error::UnsupportedGroup(_))));
}

#[test]
fn alcove_membership_examples() {
    let gl2 = GroupType::Gl { n: 2, ext: ExtensionKind::Trivial };
    assert!(alcove_contains(&point(&[(1, 4), (0, 1)]), &gl2).unwrap());
    assert!(!alcove_contains(&ApartmentPoint::origin(2), &gl2).unwrap());
    assert!(!alcove_contains(&point(&[(1, 1), (0, 1)]), &gl2).unwrap());
    for n in 2..6 {
        for ext in KINDS {
            let x = ApartmentPoint::barycenter(n, if ext == ExtensionKind::Ramified { 2 } else { 1 });
            assert!(alcove_contains(&x, &GroupType::Gl { n, ext }).unwrap());
            assert!(alcove_contains(&x.translate(q(3, 7)), &GroupType::Gl { n, ext }).unwrap());
        }
    }
    assert!(matches!(alcove_contains(&ApartmentPoint::origin(3), &gl2), Err(Error::SizeMismatch { .. })));
}

#[test]
fn certificate_examples() {
    let case1 = EndoscopicCase::OddOrthogonal { n: 2 };
    let cert = inclusion_certificate(&case1).unwrap();
    assert!(cert.validate());
    let affine = cert.entries.iter().find(|c| c.constant > qi(0) || c.root.constant > qi(0)).unwrap();
    assert_eq!(affine.root.constant, qi(1));

    let case2 = EndoscopicCase::SymplecticOdd { n: 2 };
    let cert = inclusion_certificate(&case2).unwrap();
    let mid = cert.entries.iter().find(|c| c.root.label == "e2 - e3").unwrap();
    assert_eq!(mid.describe(&cert.g_theta_roots), "e2 - e3 = 1/2·(2f2) + 0");

    // The affine root of GL(3) over a ramified field restricts to
    // 1/2·(−2f₁) + 1/2 on the unitary alcove.
    let case4 = EndoscopicCase::Unitary { n: 3, ext: ExtensionKind::Ramified };
    let (t_roots, attempts) = certificate_attempts(&case4).unwrap();
    let affine = attempts.iter().find(|a| a.root.constant > qi(0)).unwrap();
    let c = affine.certificate.as_ref().unwrap();
    assert!(c.validate(&t_roots));
    assert_eq!(c.coefficients, vec![qi(0), q(1, 2)]);
    assert_eq!(c.constant, q(1, 2));
    let stuck = attempts.iter().find(|a| a.certificate.is_none()).unwrap();
    assert_eq!(stuck.best_constant, Some(q(-1, 8)));
    assert!(matches!(inclusion_certificate(&case4), Err(Error::CertificateSearch(_))));
}

#[test]
fn certificates_hold_for_the_first_three_cases() {
    for n in 1..=5 {
        for number in 1..=3 {
            let case = EndoscopicCase::new(number, n, ExtensionKind::Trivial).unwrap();
            let cert = inclusion_certificate(&case).unwrap();
            assert!(cert.validate(), "{case}");
            let g_roots = simple_affine_roots(&case.g()).unwrap();
            for entry in &cert.entries {
                let t = certify_root(&entry.root, &cert.g_theta_roots).unwrap();
                assert_eq!(t.certificate.as_ref(), Some(entry));
            }
            assert_eq!(cert.entries.len(), g_roots.len());
        }
    }
}

#[test]
fn membership_examples() {
    let f = LocalField::new(3, ExtensionKind::Trivial, 8).unwrap();
    let o = ApartmentPoint::origin(2);
    let pi = PadicMatrix::scalar(f, 2, f.uniformizer());
    assert!(mp_membership(&pi, &o, qi(1)).unwrap());
    assert!(!mp_membership_plus(&pi, &o, qi(1)).unwrap());
    assert!(mp_membership_plus(&pi, &o, q(1, 2)).unwrap());

    let x = point(&[(1, 4), (-1, 4)]);
    let upper = PadicMatrix::from_i64(f, &[&[0, 1], &[0, 0]]).unwrap();
    let zero3 = PadicMatrix::zero(f, 3);
    let lower = PadicMatrix::from_i64(f, &[&[0, 0], &[1, 0]]).unwrap();
    assert!(mp_membership(&upper, &x, q(1, 2)).unwrap());
    assert!(!mp_membership(&lower, &x, q(1, 2)).unwrap());
    assert!(mp_membership(&lower.scale(&f.uniformizer()), &x, q(1, 2)).unwrap());
    assert!(matches!(mp_theta_membership(&zero3, &point(&[(1, 2), (0, 1), (0, 1)]), qi(0)), Err(Error::NotThetaFixed)));
}

#[test]
fn iwahori_is_the_barycenter_lattice_at_zero() {
    for ext in KINDS {
        let f = LocalField::new(5, ext, 8).unwrap();
        for n in 2..5 {
            let bary = mp_lattice(f, &ApartmentPoint::barycenter(n, f.e()), qi(0), false);
            assert!(bary.equals(&iwahori_lattice(f, n)).unwrap());
            let phi = phi_matrix(f, n);
            let pow = (1..n).fold(phi.clone(), |acc, _| &acc * &phi);
            assert!(pow.agrees_with(&PadicMatrix::scalar(f, n, f.uniformizer())));
        }
    }
}

#[test]
fn quotient_size_oracle() {
    // Index of g_{x,r+} in g_{x,r}, read off the monomial thresholds.
    let mut rng = rng_for(9, 0);
    for ext in KINDS {
        let f = LocalField::new(3, ext, 8).unwrap();
        for n in 1..=3 {
            for _ in 0..10 {
                let x = random_theta_fixed_point(&mut rng, n, ext);
                let r = q(rng.gen_range(0..8), 4);
                let lo = mp_thresholds(&x, r, false, f.e());
                let hi = mp_thresholds(&x, r, true, f.e());
                let jumps: i64 = lo.iter().zip(&hi).map(|(a, b)| b - a).sum();
                let quot = GradedQuotient::new(f, x, r);
                assert_eq!(quot.dim() as i64, jumps);
                assert_eq!(quot.size(), (f.residue_size() as u128).pow(jumps as u32));
            }
        }
    }
    let f = LocalField::new(3, ExtensionKind::Trivial, 8).unwrap();
    assert_eq!(GradedQuotient::new(f, point(&[(1, 4), (-1, 4)]), q(1, 2)).size(), 9);
    for ext in KINDS {
        let f = LocalField::new(3, ext, 8).unwrap();
        let quot = GradedQuotient::new(f, ApartmentPoint::origin(1), qi(2));
        assert_eq!(quot.size(), f.residue_size() as u128);
    }
}

fn setup() -> impl Strategy<Value = (ExtensionKind, usize, i64, u64)> {
    (prop::sample::select(KINDS.to_vec()), 1usize..=4, 0i64..=6, any::<u64>())
}

fn sample_in(f: &LocalField, x: &ApartmentPoint, r: Q, seed: u64) -> PadicMatrix {
    let t = mp_thresholds(x, r, false, f.e());
    let n = x.size();
    random_matrix_with(f, n, &mut rng_for(seed, 7), |i, j| t[i * n + j])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn filtration_is_nested_and_multiplicative((kind, n, k, seed) in setup()) {
        let f = LocalField::new(5, kind, 14).unwrap();
        let mut rng = rng_for(seed, 0);
        let x = random_theta_fixed_point(&mut rng, n, kind);
        let (r, s) = (q(k, 4), q(rng.gen_range(0..6), 3));
        let a = sample_in(&f, &x, r, seed);
        let b = sample_in(&f, &x, s, seed ^ 1);
        prop_assert!(mp_membership(&a, &x, r).unwrap());
        prop_assert!(mp_membership(&a, &x, r - q(1, 5)).unwrap());
        prop_assert!(mp_membership(&(&a * &b), &x, r + s).unwrap());
        prop_assert!(mp_membership(&a.scale(&f.uniformizer()), &x, r + Q::new(1, f.e())).unwrap());
    }

    #[test]
    fn filtration_is_dtheta_stable((kind, n, k, seed) in setup()) {
        let f = LocalField::new(5, kind, 14).unwrap();
        let x = random_theta_fixed_point(&mut rng_for(seed, 1), n, kind);
        let r = q(k, 3);
        let a = sample_in(&f, &x, r, seed);
        prop_assert!(mp_membership(&dtheta(&a), &x, r).unwrap());
        let fixed = decompose_dtheta(&a).fixed_part;
        prop_assert!(mp_theta_membership(&fixed, &x, r).unwrap());
    }

    #[test]
    fn uniformizer_shift_is_an_isomorphism((kind, n, k, seed) in setup()) {
        let f = LocalField::new(5, kind, 14).unwrap();
        let x = random_theta_fixed_point(&mut rng_for(seed, 2), n, kind);
        let r = q(k, 2);
        let shifted = mp_lattice(f, &x, r, false).shift(1);
        let target = mp_lattice(f, &x, r + Q::new(1, f.e()), false);
        prop_assert!(shifted.equals(&target).unwrap());
    }
}
