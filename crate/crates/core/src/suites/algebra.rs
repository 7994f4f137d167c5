//! Suites on single matrices: Cayley transforms, filtration lattices and
//! θ-compatibility of the graded quotients.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{js, Outcome, Runner, SuiteConfig};
use crate::building::{
    iwahori_lattice, mp_lattice, mp_membership, mp_membership_plus, mp_theta_membership, mp_thresholds, phi_matrix,
    random_theta_fixed_point, ApartmentPoint, GradedQuotient, GroupType,
};
use crate::cayley::{cayley, cayley_inv, cayley_prime, cayley_series, in_group, verify_equivariance};
use crate::error::Result;
use crate::fp;
use crate::local_field::{ExtensionKind, LocalField};
use crate::matrix::{decompose_dtheta, dtheta, theta, PadicMatrix};
use crate::rational::{format_q, q, qi, Q};
use crate::sampling::{random_gl_integral, random_matrix_with, random_scalar};
use crate::twisted::ThetaAction;

/// Uniform element of `𝔤_{x,r}`.
pub(crate) fn random_in_filtration(f: &LocalField, x: &ApartmentPoint, r: Q, rng: &mut ChaCha8Rng) -> PadicMatrix {
    let n = x.size();
    let t = mp_thresholds(x, r, false, f.e());
    random_matrix_with(f, n, rng, |i, j| t[i * n + j])
}

/// Matrix with entries of random valuation in `lo..=hi` digits.
fn random_probe(f: &LocalField, n: usize, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> PadicMatrix {
    PadicMatrix::from_fn(*f, n, |_, _| {
        let v = rng.gen_range(lo..=hi);
        random_scalar(f, rng, v)
    })
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())]
}

fn point_json(x: &ApartmentPoint, r: Q) -> Value {
    json!({ "x": js(x), "r": format_q(&r) })
}

/// The group `G_θ` cut out by θ inside `GL_N`, when it is a classical group.
fn theta_fixed_group(n: usize, ext: ExtensionKind) -> Option<GroupType> {
    match ext {
        ExtensionKind::Trivial if n >= 3 && n % 2 == 1 => Some(GroupType::SoOdd { n: n / 2 }),
        ExtensionKind::Trivial if n >= 2 && n % 2 == 0 => Some(GroupType::Sp { n: n / 2 }),
        ExtensionKind::Trivial => None,
        _ => Some(GroupType::U { n, ext }),
    }
}

pub(super) fn cayley_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:2")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    run.annotate_hypothesis(&g, cfg.p);
    let h_group = theta_fixed_group(n, f.kind());
    let levels = [q(1, 2), qi(1), q(3, 2)];
    let max_terms = 8 * f.precision() as usize;
    let specs = [
        ("roundtrip", "c^-1(c(X)) = X and c(c^-1(g)) = g on the filtration"),
        ("conjugation-equivariance", "A c(X) A^-1 = c(A X A^-1) for A in GL_N(O_E)"),
        ("theta-equivariance", "theta(c(X)) = c(dtheta(X))"),
        ("series", "c(X) equals the partial sums of 1 + 2 sum (X/2)^k"),
        ("filtration-bijection", "X in g_{x,s} iff c(X) - 1 in g_{x,s}"),
        ("graded-additivity", "c(X) c(Y) = c(X + Y) modulo g_{x,r+}"),
        ("cayley-prime", "c'(X) lies in G_theta for X in its Lie algebra"),
    ];
    run.checks(&specs, cfg.samples as u64, |_, rng| {
        let x = random_theta_fixed_point(rng, n, f.kind());
        let r = pick(rng, &levels);
        let big_x = random_in_filtration(&f, &x, r, rng);
        let big_y = random_in_filtration(&f, &x, r, rng);
        let z = random_in_filtration(&f, &x, r, rng);
        let a = random_gl_integral(&f, n, rng);
        let s = r + pick(rng, &[qi(0), q(1, 2 * f.e() * n as i64), q(1, 2), qi(1)]);
        let inputs = || json!({ "point": point_json(&x, r), "X": js(&big_x), "Y": js(&big_y), "Z": js(&z), "A": js(&a) });
        let one = f.one();

        let roundtrip = (|| {
            let back = cayley_inv(&cayley(&big_x)?)?;
            let g1 = z.add_scalar(&one);
            let again = cayley(&cayley_inv(&g1)?)?;
            Ok(back.agrees_with(&big_x) && again.agrees_with(&g1))
        })();
        let equiv = verify_equivariance(&a, &big_x);
        let conj = equiv.as_ref().map(|rep| rep.conjugation.passed).map_err(Clone::clone);
        let th = equiv.as_ref().map(|rep| rep.theta.passed).map_err(Clone::clone);
        let series = (|| Ok(cayley_series(&big_x, max_terms)?.agrees_with(&cayley(&big_x)?)))();
        let bijection = (|| {
            let cm1 = cayley(&big_x)?.add_scalar(&one.neg());
            Ok(mp_membership(&big_x, &x, s)? == mp_membership(&cm1, &x, s)?)
        })();
        let additive = (|| {
            let lhs = cayley(&big_x)?.try_mul(&cayley(&big_y)?)?;
            let diff = lhs.try_sub(&cayley(&big_x.try_add(&big_y)?)?)?;
            mp_membership_plus(&diff, &x, r)
        })();
        let prime = match &h_group {
            None => Ok(true),
            Some(h) => (|| {
                let xh = decompose_dtheta(&big_x).fixed_part;
                in_group(&cayley_prime(&xh, h)?, h)
            })(),
        };
        vec![
            Outcome::judge(roundtrip, "round trip differs", inputs),
            Outcome::judge(conj, "conjugation equivariance fails", inputs),
            Outcome::judge(th, "theta equivariance fails", inputs),
            Outcome::judge(series, "series disagrees with c(X)", inputs),
            Outcome::judge(bijection, &format!("membership at level {} differs", format_q(&s)), inputs),
            Outcome::judge(additive, "c(X)c(Y) - c(X+Y) not in g_{x,r+}", inputs),
            Outcome::judge(prime, "c'(X) not in G_theta", inputs),
        ]
    });
    Ok(json!({ "group": g.spec(), "theta_fixed_group": h_group.map(|h| h.spec()) }))
}

pub(super) fn filtration_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:3")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    let e = f.e();
    run.annotate_hypothesis(&g, cfg.p);
    let bary = ApartmentPoint::barycenter(n, e);
    let levels: Vec<Q> = (0..=4 * e * n as i64).map(|k| q(k, 2 * e * n as i64)).collect();

    run.check("iwahori", "the barycenter lattice at level 0 is the Iwahori lattice", 1, |_, _| {
        let res = mp_lattice(f, &bary, qi(0), false).equals(&iwahori_lattice(f, n));
        Outcome::judge(res, "barycenter model differs from the Iwahori lattice", || js(&bary))
    });
    let phi = phi_matrix(f, n);
    run.check("phi-shift", "phi i_{s-1} = i_{s-1+} and phi^{eN} i_{s-1} = i_s for s = 1, 2, 3", 3, |i, _| {
        let s = qi(i as i64 + 1);
        let res = (|| {
            let base = mp_lattice(f, &bary, s - 1, false);
            let once = base.left_mul(&phi)?.equals(&mp_lattice(f, &bary, s - 1, true))?;
            let full = base.left_mul(&phi.pow((e * n as i64) as u32))?.equals(&mp_lattice(f, &bary, s, false))?;
            Ok(once && full)
        })();
        Outcome::judge(res, "phi shift law fails", || json!({ "s": format_q(&s) }))
    });
    let probes = cfg.samples as u64;
    let specs = [
        ("uniformizer-shift", "g_{x,r+1} = p g_{x,r}, as lattices and on random probes"),
        ("product-stability", "g_{x,r} g_{x,r} is contained in g_{x,r}"),
        ("nesting", "g_{x,s} is contained in g_{x,r} for r <= s"),
        ("membership-oracle", "threshold membership agrees with lattice membership"),
    ];
    run.checks(&specs, probes, |_, rng| {
        let x = random_theta_fixed_point(rng, n, f.kind());
        let r = pick(rng, &levels);
        let s = r + pick(rng, &levels);
        let probe = random_probe(&f, n, -e, 3 * e, rng);
        let a = random_in_filtration(&f, &x, r, rng);
        let b = random_in_filtration(&f, &x, r, rng);
        let c = random_in_filtration(&f, &x, s, rng);
        let inputs = || json!({ "point": point_json(&x, r), "s": format_q(&s), "probe": js(&probe), "A": js(&a), "B": js(&b) });
        let shift = (|| {
            let lat = mp_lattice(f, &x, r + 1, false).equals(&mp_lattice(f, &x, r, false).shift(e))?;
            let probe_ok = mp_membership(&probe.shift(e), &x, r + 1)? == mp_membership(&probe, &x, r)?;
            Ok(lat && probe_ok)
        })();
        let product = (|| {
            let l = mp_lattice(f, &x, r, false);
            Ok(mp_membership(&a.try_mul(&b)?, &x, r)? && l.contains_lattice(&l.pow(2)?)?)
        })();
        let nesting = mp_membership(&c, &x, r);
        let oracle = (|| Ok(mp_lattice(f, &x, r, false).contains(&probe)? == mp_membership(&probe, &x, r)?))();
        vec![
            Outcome::judge(shift, "uniformizer shift fails", inputs),
            Outcome::judge(product, "product leaves the lattice", inputs),
            Outcome::judge(nesting, "deeper element not in the shallower lattice", inputs),
            Outcome::judge(oracle, "membership tests disagree", inputs),
        ]
    });
    Ok(json!({ "group": g.spec(), "barycenter": js(&bary) }))
}

/// `F_p`-dimension of the image of `𝔤_{θ,x,r}` in `𝔤_{x,r:r+}`, computed
/// from the dθ-projections of an `O_F`-basis of `𝔤_{x,r}`.
fn fixed_image_rank(quot: &GradedQuotient) -> Result<usize> {
    let f = *quot.field();
    let lat = mp_lattice(f, quot.point(), quot.level(), false);
    let half = f.from_ratio(1, 2);
    let mut gens: Vec<PadicMatrix> = lat.basis().cloned().collect();
    if let Some(w) = f.sqrt_generator() {
        let twisted: Vec<PadicMatrix> = gens.iter().map(|b| b.scale(&w)).collect();
        gens.extend(twisted);
    }
    let mut rows = Vec::with_capacity(gens.len());
    for b in gens {
        let fixed = b.try_add(&dtheta(&b))?.scale(&half);
        rows.push(quot.to_fp(&quot.class_of_lie(&fixed)?));
    }
    Ok(fp::rank(&rows, f.p()))
}

pub(super) fn theta_compat_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:3")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    run.annotate_hypothesis(&g, cfg.p);
    let levels = [q(1, 2), qi(1), q(3, 2)];
    let specs = [
        ("graded-fixed-dimension", "dim of theta*-fixed classes equals dim g_{theta,x,r:r+} from a fixed basis"),
        ("fixed-part-membership", "the dtheta-fixed part of g_{x,r} lies in g_{theta,x,r}"),
        ("dtheta-involution", "dtheta is an involutive Lie algebra automorphism preserving g_{x,r}"),
        ("theta-automorphism", "theta is an involutive group automorphism"),
    ];
    run.checks(&specs, cfg.samples as u64, |_, rng| {
        let x = random_theta_fixed_point(rng, n, f.kind());
        let mut dims = Ok(true);
        let mut members = Ok(true);
        let mut inv = Ok(true);
        let mut detail = Vec::new();
        for r in levels {
            let quot = GradedQuotient::new(f, x.clone(), r);
            let d = (|| Ok((ThetaAction::new(&quot)?.fixed_rank(), fixed_image_rank(&quot)?)))();
            match d {
                Ok((a, b)) => {
                    detail.push(json!({ "r": format_q(&r), "fixed_rank": a, "fixed_basis_rank": b }));
                    if a != b {
                        dims = Ok(false);
                    }
                }
                Err(e) => dims = Err(e),
            }
            let a = random_in_filtration(&f, &x, r, rng);
            let b = random_in_filtration(&f, &x, r, rng);
            let m = (|| Ok(mp_theta_membership(&decompose_dtheta(&a).fixed_part, &x, r)? && mp_membership(&dtheta(&a), &x, r)?))();
            if !matches!(m, Ok(true)) {
                members = m;
            }
            let i = (|| {
                let bracket = dtheta(&a.commutator(&b)?).agrees_with(&dtheta(&a).commutator(&dtheta(&b))?);
                Ok(dtheta(&dtheta(&a)).agrees_with(&a) && bracket)
            })();
            if !matches!(i, Ok(true)) {
                inv = i;
            }
        }
        let u = random_gl_integral(&f, n, rng);
        let v = random_gl_integral(&f, n, rng);
        let auto = (|| {
            let hom = theta(&u.try_mul(&v)?)?.agrees_with(&theta(&u)?.try_mul(&theta(&v)?)?);
            Ok(hom && theta(&theta(&u)?)?.agrees_with(&u))
        })();
        let inputs = || json!({ "x": js(&x), "dims": detail.clone() });
        vec![
            Outcome::judge(dims, "graded fixed dimensions differ", inputs),
            Outcome::judge(members, "fixed part outside g_{theta,x,r}", inputs),
            Outcome::judge(inv, "dtheta identity fails", inputs),
            Outcome::judge(auto, "theta identity fails", || json!({ "u": js(&u), "v": js(&v) })),
        ]
    });
    Ok(json!({ "group": g.spec(), "levels": levels.iter().map(format_q).collect::<Vec<_>>() }))
}
