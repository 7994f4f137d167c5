//! Suites on graded quotients `𝔤_{x,r:r+}`: twisted orbits, the fixed-class
//! partition and the unitary characteristic-function pair.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::algebra::random_in_filtration;
use super::{js, Outcome, Runner, SuiteConfig};
use crate::building::{random_theta_fixed_point, ApartmentPoint, GradedQuotient, GradedQuotientElement, GroupType};
use crate::cayley::{cayley, is_unitary, sqrt_newton, sqrt_tu};
use crate::error::{Error, Result};
use crate::fp;
use crate::local_field::{ExtensionKind, LocalField};
use crate::matrix::{decompose_dtheta, is_topologically_unipotent};
use crate::rational::{format_q, q, qi, Q};
use crate::sampling::rng_for;
use crate::twisted::{
    brute_force_orbit, coset_theta_equiv, descent_pair, image_one_minus_theta, partition_check,
    quotient_theta_class, twisted_conjugate, DescentPairDescriptor, PartitionReport, ThetaAction,
};

/// θ-fixed base points: the barycenter, the origin and one seeded random
/// point of the fundamental alcove.
fn base_points(n: usize, f: &LocalField, seed: u64) -> Vec<ApartmentPoint> {
    let mut pts = vec![ApartmentPoint::barycenter(n, f.e()), ApartmentPoint::origin(n)];
    pts.push(random_theta_fixed_point(&mut rng_for(seed, 0x9017), n, f.kind()));
    pts
}

fn quotients(f: LocalField, points: &[ApartmentPoint], r: Q, cap: u64) -> Result<Vec<GradedQuotient>> {
    points
        .iter()
        .map(|x| {
            let quot = GradedQuotient::new(f, x.clone(), r);
            if quot.size() > cap as u128 {
                return Err(Error::CapExceeded { size: quot.size(), cap });
            }
            Ok(quot)
        })
        .collect()
}

fn quot_json(quot: &GradedQuotient) -> Value {
    json!({ "x": js(quot.point()), "r": format_q(&quot.level()), "classes": quot.size().to_string() })
}

fn add_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub(super) fn coset_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:2")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    let p = f.p();
    run.annotate_hypothesis(&g, cfg.p);
    let r = cfg.level();
    let cap = cfg.cap;
    let quots = quotients(f, &base_points(n, &f, cfg.seed), r, cap)?;
    let images: Vec<Vec<Vec<u64>>> = quots
        .iter()
        .map(|qt| Ok(image_one_minus_theta(qt, cap)?.iter().map(|c| qt.to_fp(c)).collect()))
        .collect::<Result<_>>()?;
    let mut work: Vec<(usize, GradedQuotientElement)> = Vec::new();
    for (k, qt) in quots.iter().enumerate() {
        work.extend(qt.enumerate(cap)?.into_iter().map(|c| (k, c)));
    }
    run.checks(
        &[
            ("orbit-criterion", "the brute-force twisted orbit of c equals c + Image(1 - theta*)"),
            ("class-id", "every member of an orbit has the same canonical representative"),
        ],
        work.len() as u64,
        |i, _| {
            let (k, c0) = &work[i as usize];
            let qt = &quots[*k];
            let inputs = || json!({ "quotient": quot_json(qt), "class": js(c0) });
            let orbit = match brute_force_orbit(qt, c0, cap) {
                Ok(o) => o,
                Err(e) if e.is_precision() => return vec![Outcome::Exhausted, Outcome::Exhausted],
                Err(e) => return vec![Outcome::fail(e.to_string(), inputs()), Outcome::fail(e.to_string(), inputs())],
            };
            let v0 = qt.to_fp(c0);
            let criterion: BTreeSet<Vec<u64>> = images[*k].iter().map(|w| add_fp(&v0, w, p)).collect();
            let first = if orbit == criterion {
                Outcome::Pass
            } else {
                Outcome::fail(format!("orbit has {} classes, criterion {}", orbit.len(), criterion.len()), inputs())
            };
            let ids = (|| {
                let id0 = quotient_theta_class(qt, c0)?;
                for v in &orbit {
                    if quotient_theta_class(qt, &qt.from_fp(v))? != id0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            vec![first, Outcome::judge(ids, "orbit members have different representatives", inputs)]
        },
    );
    run.check(
        "fixed-disjointness",
        "distinct theta*-fixed classes are never twisted-equivalent",
        quots.len() as u64,
        |k, _| {
            let qt = &quots[k as usize];
            let res = (|| {
                let all = qt.enumerate(cap)?;
                let mut fixed = Vec::new();
                for c in all {
                    if qt.theta_star(&c)? == c {
                        fixed.push(c);
                    }
                }
                for (i, a) in fixed.iter().enumerate() {
                    for b in &fixed[i + 1..] {
                        if coset_theta_equiv(qt, a, b)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })();
            Outcome::judge(res, "two fixed classes are equivalent", || quot_json(qt))
        },
    );
    let reports = partition_reports(run, &quots, cap);
    run.check(
        "graded-consistency",
        "the class of y g theta(y)^-1 is [g] + (1 - theta*)[y]",
        cfg.samples as u64,
        |i, rng| {
            let qt = &quots[i as usize % quots.len()];
            let x = qt.point();
            let big_y = random_in_filtration(&f, x, r, rng);
            let big_x = random_in_filtration(&f, x, r, rng);
            let inputs = || json!({ "quotient": quot_json(qt), "Y": js(&big_y), "X": js(&big_x) });
            let res = (|| {
                let y = cayley(&big_y)?;
                let g = cayley(&big_x)?;
                let lhs = qt.to_fp(&qt.class_of_group(&twisted_conjugate(&y, &g)?)?);
                let act = ThetaAction::new(qt)?;
                let yv = qt.to_fp(&qt.class_of_group(&y)?);
                let rhs = add_fp(&qt.to_fp(&qt.class_of_group(&g)?), &fp::mat_vec(&act.one_minus, &yv, p), p);
                Ok(lhs == rhs)
            })();
            Outcome::judge(res, "graded class of the twisted conjugate is wrong", inputs)
        },
    );
    Ok(json!({ "group": g.spec(), "r": format_q(&r), "partitions": reports }))
}

fn partition_reports(run: &mut Runner, quots: &[GradedQuotient], cap: u64) -> Vec<Value> {
    run.check(
        "partition",
        "theta*-fixed classes form a transversal of the twisted orbits",
        quots.len() as u64,
        |k, _| {
            let qt = &quots[k as usize];
            match partition_check(qt, cap) {
                Ok(rep) if rep.passed() => Outcome::Pass,
                Ok(rep) => Outcome::fail("partition invariant fails", json!({ "quotient": quot_json(qt), "report": js(&rep) })),
                Err(e) if e.is_precision() => Outcome::Exhausted,
                Err(e) => Outcome::fail(e.to_string(), quot_json(qt)),
            }
        },
    );
    quots
        .iter()
        .map(|qt| {
            let rep = partition_check(qt, cap).map(|r| js(&r)).unwrap_or_else(|e| json!({ "error": e.to_string() }));
            json!({ "quotient": quot_json(qt), "report": rep })
        })
        .collect()
}

fn counts(rep: &PartitionReport) -> (u64, u64, u64, Vec<(u64, u64)>) {
    let sizes = rep.orbit_sizes.iter().map(|(a, b)| (*a, *b)).collect();
    (rep.classes, rep.fixed_classes, rep.image_size, sizes)
}

/// Fixed-class count and image size for `GL_1` at level `r`, worked out by
/// hand: θ* is `a ↦ −conj(a)` rescaled by the sign of `conj(ϖ_E^m)`.
fn gl1_expected(f: &LocalField, r: Q) -> Option<(u64, u64)> {
    let p = f.p();
    let m = r * qi(f.e());
    if !m.is_integer() {
        return None;
    }
    Some(match f.kind() {
        ExtensionKind::Trivial => (1, p),
        ExtensionKind::Unramified => (p, p),
        ExtensionKind::Ramified if m.to_integer() % 2 != 0 => (p, 1),
        ExtensionKind::Ramified => (1, p),
    })
}

pub(super) fn partition_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:2")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    run.annotate_hypothesis(&g, cfg.p);
    let r = cfg.level();
    let cap = cfg.cap;
    let quots = quotients(f, &base_points(n, &f, cfg.seed), r, cap)?;
    let reports = partition_reports(run, &quots, cap);
    run.check(
        "shift-stability",
        "partition counts at level r and r + 1 coincide",
        quots.len() as u64,
        |k, _| {
            let qt = &quots[k as usize];
            let up = GradedQuotient::new(f, qt.point().clone(), r + 1);
            let res = (|| Ok(counts(&partition_check(qt, cap)?) == counts(&partition_check(&up, cap)?)))();
            Outcome::judge(res, "counts change under r -> r+1", || quot_json(qt))
        },
    );
    let gl1_levels: Vec<Q> = if f.e() == 2 { vec![q(1, 2), qi(1)] } else { vec![qi(1), qi(2)] };
    run.check(
        "gl1-hand-count",
        "GL_1 fixed classes and orbit sizes match the hand count",
        gl1_levels.len() as u64,
        |k, _| {
            let level = gl1_levels[k as usize];
            let qt = GradedQuotient::new(f, ApartmentPoint::origin(1), level);
            let expected = gl1_expected(&f, level).expect("levels are on the value group");
            match partition_check(&qt, cap) {
                Ok(rep) if rep.passed() && (rep.fixed_classes, rep.image_size) == expected => Outcome::Pass,
                Ok(rep) => Outcome::fail(
                    format!("expected (fixed, orbit size) = {expected:?}"),
                    json!({ "r": format_q(&level), "report": js(&rep) }),
                ),
                Err(e) => Outcome::fail(e.to_string(), json!({ "r": format_q(&level) })),
            }
        },
    );
    Ok(json!({ "group": g.spec(), "r": format_q(&r), "partitions": reports }))
}

pub(super) fn transfer_pair_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let default = if cfg.ext.is_quadratic() { "u:2" } else { "u-unram:2" };
    let g = cfg.group_type(default)?;
    if !matches!(g, GroupType::U { .. }) {
        return Err(Error::Config(format!("transfer-pair needs a unitary group, got {g}")));
    }
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    run.annotate_hypothesis(&g, cfg.p);
    let r = cfg.level();
    let cap = cfg.cap;
    let x = ApartmentPoint::barycenter(n, f.e());
    let quot = quotients(f, std::slice::from_ref(&x), r, cap)?.remove(0);
    let zero = quot.zero();

    run.check(
        "identity-orbit",
        "the pair at h = 0 is the full filtration pair and its G-side list is the brute-force identity orbit",
        1,
        |_, _| {
            let res = (|| {
                let d = descent_pair(&quot, &zero, cap)?;
                let listed: BTreeSet<Vec<u64>> = d.g_side_classes.iter().map(|c| quot.to_fp(c)).collect();
                Ok(d.full_filtration_pair && listed == brute_force_orbit(&quot, &zero, cap)?)
            })();
            Outcome::judge(res, "identity orbit mismatch", || quot_json(&quot))
        },
    );
    let image_size = image_one_minus_theta(&quot, cap)?.len();
    let mut fixed = Vec::new();
    for c in quot.enumerate(cap)? {
        if quot.theta_star(&c)? == c {
            fixed.push(c);
        }
    }
    run.check(
        "fixed-class-pairs",
        "each fixed class has a G-side list of size |Image(1 - theta*)| containing it, stable under JSON round trip",
        fixed.len() as u64,
        |i, _| {
            let h = &fixed[i as usize];
            let res = (|| {
                let d = descent_pair(&quot, h, cap)?;
                let text = serde_json::to_string(&d).map_err(|e| Error::Io(e.to_string()))?;
                let back: DescentPairDescriptor = serde_json::from_str(&text).map_err(|e| Error::Io(e.to_string()))?;
                Ok(d.g_side_classes.len() == image_size && d.g_side_classes.contains(h) && back == d)
            })();
            Outcome::judge(res, "descriptor invariant fails", || json!({ "quotient": quot_json(&quot), "h": js(h) }))
        },
    );
    run.check(
        "square-roots",
        "squaring is a bijection on unipotent unitary elements: the unipotent root is found, unique and unitary",
        cfg.samples as u64,
        |_, rng| {
            let a = decompose_dtheta(&random_in_filtration(&f, &x, r, rng)).fixed_part;
            let b = decompose_dtheta(&random_in_filtration(&f, &x, r, rng)).fixed_part;
            let inputs = || json!({ "x": js(&x), "r": format_q(&r), "A": js(&a), "B": js(&b) });
            let res = (|| {
                let h = cayley(&a)?;
                let g = &h * &h;
                let root = sqrt_tu(&g)?;
                let other = sqrt_newton(&g, &cayley(&b)?)?;
                let found = root.agrees_with(&h) && other.agrees_with(&root) && is_unitary(&root)?;
                // Surjectivity: a second unipotent unitary element has a root.
                let g2 = cayley(&b)?;
                let r2 = sqrt_tu(&g2)?;
                let onto = (&r2 * &r2).agrees_with(&g2) && is_unitary(&r2)? && is_topologically_unipotent(&r2)?;
                Ok(found && onto)
            })();
            Outcome::judge(res, "square root is missing, not unique or not unitary", inputs)
        },
    );
    Ok(json!({
        "group": g.spec(),
        "x": js(&x),
        "r": format_q(&r),
        "classes": quot.size().to_string(),
        "fixed_classes": fixed.len(),
        "image_size": image_size,
    }))
}
