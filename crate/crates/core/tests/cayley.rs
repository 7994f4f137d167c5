use padic_lab::building::GroupType;
use padic_lab::cayley::{
    cayley, cayley_inv, cayley_prime, cayley_series, in_group, in_lie_algebra, is_unitary, sqrt_newton, sqrt_tu,
    verify_equivariance,
};
use padic_lab::matrix::{decompose_dtheta, j_matrix};
use padic_lab::sampling::{random_gl_integral, random_matrix, random_permutation, random_scalar, rng_for};
use padic_lab::{Error, ExtensionKind, LocalField, PadicMatrix};
use proptest::prelude::*;

const KINDS: [ExtensionKind; 3] = [ExtensionKind::Trivial, ExtensionKind::Unramified, ExtensionKind::Ramified];

fn field(kind: ExtensionKind) -> LocalField {
    LocalField::new(5, kind, 12).unwrap()
}

#[test]
fn identity_points() {
    for kind in KINDS {
        let f = field(kind);
        let id = PadicMatrix::identity(f, 3);
        assert!(cayley(&PadicMatrix::zero(f, 3)).unwrap().agrees_with(&id));
        assert!(cayley_inv(&id).unwrap().is_zero());
    }
}

#[test]
fn rejects_arguments_outside_the_domain() {
    let f = field(ExtensionKind::Trivial);
    let id = PadicMatrix::identity(f, 2);
    assert!(matches!(cayley(&id), Err(Error::NotTopologicallyNilpotent)));
    assert!(matches!(cayley_inv(&id.scale(&f.from_i64(2))), Err(Error::NotTopologicallyUnipotent)));
    assert!(matches!(sqrt_tu(&id.scale(&f.from_i64(3))), Err(Error::NotTopologicallyUnipotent)));
}

#[test]
fn diagonal_matches_scalar_formula() {
    for kind in KINDS {
        let f = field(kind);
        let mut rng = rng_for(1, 0);
        let xs: Vec<_> = (0..3).map(|_| random_scalar(&f, &mut rng, 1)).collect();
        let half = f.from_ratio(1, 2);
        let expected: Vec<_> = xs
            .iter()
            .map(|x| {
                let y = *x * half;
                (f.one() + y) * (f.one() - y).inv().unwrap()
            })
            .collect();
        let got = cayley(&PadicMatrix::diag(f, &xs)).unwrap();
        assert!(got.agrees_with(&PadicMatrix::diag(f, &expected)));
    }
}

#[test]
fn series_agrees_with_closed_form() {
    for kind in KINDS {
        let f = field(kind);
        let mut rng = rng_for(2, 0);
        for n in 1..=4 {
            let x = random_matrix(&f, n, &mut rng, 1);
            let series = cayley_series(&x, 200).unwrap();
            assert!(series.agrees_with(&cayley(&x).unwrap()));
        }
    }
}

#[test]
fn cayley_prime_formulas() {
    let f = field(ExtensionKind::Trivial);
    let mut rng = rng_for(3, 0);
    let j = j_matrix(f, 4);
    let s = random_matrix(&f, 4, &mut rng, 1);
    let x = &j * &(&s + &s.transpose());
    let sp = GroupType::Sp { n: 2 };
    assert!(in_lie_algebra(&x, &sp).unwrap());
    let half = cayley(&x.scale(&f.from_ratio(1, 2))).unwrap();
    let cp = cayley_prime(&x, &sp).unwrap();
    assert!(cp.agrees_with(&(&half * &half)));
    assert!(in_group(&cp, &sp).unwrap());

    for ext in [ExtensionKind::Unramified, ExtensionKind::Ramified] {
        let f = field(ext);
        let x = decompose_dtheta(&random_matrix(&f, 3, &mut rng, 1)).fixed_part;
        let u = GroupType::U { n: 3, ext };
        assert!(in_lie_algebra(&x, &u).unwrap());
        let c = cayley(&x).unwrap();
        let cp = cayley_prime(&x, &u).unwrap();
        assert!(cp.agrees_with(&(&c * &c)));
        assert!(in_group(&cp, &u).unwrap());
        assert!(is_unitary(&cp).unwrap());
    }

    let gl = GroupType::Gl { n: 2, ext: ExtensionKind::Trivial };
    assert!(matches!(cayley_prime(&PadicMatrix::zero(f, 2), &gl), Err(Error::UnsupportedGroup(_))));
}

#[test]
fn equivariance_with_simple_conjugators() {
    for kind in KINDS {
        let f = field(kind);
        let mut rng = rng_for(4, 0);
        let x = random_matrix(&f, 3, &mut rng, 1);
        assert!(verify_equivariance(&PadicMatrix::identity(f, 3), &x).unwrap().passed());
        let perm = random_permutation(3, &mut rng);
        let p = PadicMatrix::from_fn(f, 3, |i, j| if perm[i] == j { f.one() } else { f.zero() });
        let d: Vec<_> = (0..3).map(|_| random_scalar(&f, &mut rng, 1)).collect();
        assert!(verify_equivariance(&p, &PadicMatrix::diag(f, &d)).unwrap().passed());
    }
}

fn setup() -> impl Strategy<Value = (ExtensionKind, usize, i64, u64)> {
    (prop::sample::select(KINDS.to_vec()), 1usize..=4, 1i64..=3, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bijection_on_filtration_levels((kind, n, k, seed) in setup()) {
        let f = field(kind);
        let x = random_matrix(&f, n, &mut rng_for(seed, 0), k);
        let g = cayley(&x).unwrap();
        prop_assert!(g.add_scalar(&f.one().neg()).min_val_digits() >= k);
        prop_assert!(cayley_inv(&g).unwrap().agrees_with(&x));
    }

    #[test]
    fn additive_on_graded_pieces((kind, n, k, seed) in setup()) {
        let f = field(kind);
        let mut rng = rng_for(seed, 1);
        let x = random_matrix(&f, n, &mut rng, k);
        let y = random_matrix(&f, n, &mut rng, k);
        let diff = &(&cayley(&x).unwrap() * &cayley(&y).unwrap()) - &cayley(&(&x + &y)).unwrap();
        prop_assert!(diff.min_val_digits() >= 2 * k);
    }

    #[test]
    fn equivariance_for_random_conjugators((kind, n, k, seed) in setup()) {
        let f = field(kind);
        let mut rng = rng_for(seed, 2);
        let a = random_gl_integral(&f, n, &mut rng);
        let x = random_matrix(&f, n, &mut rng, k);
        prop_assert!(verify_equivariance(&a, &x).unwrap().passed());
    }

    #[test]
    fn unipotent_square_root_is_unique((kind, n, k, seed) in setup()) {
        let f = field(kind);
        let mut rng = rng_for(seed, 3);
        let h = cayley(&random_matrix(&f, n, &mut rng, k)).unwrap();
        let g = &h * &h;
        let root = sqrt_tu(&g).unwrap();
        prop_assert!(root.agrees_with(&h));
        let start = &PadicMatrix::identity(f, n) + &random_matrix(&f, n, &mut rng, 1);
        prop_assert!(sqrt_newton(&g, &start).unwrap().agrees_with(&h));
    }
}
