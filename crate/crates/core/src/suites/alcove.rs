use rand::Rng;
use serde_json::{json, Value};

use super::{js, Outcome, Runner, SuiteConfig};
use crate::building::{
    alcove_contains, alcove_vertices, certificate_attempts, inclusion_certificate, random_rational_vector,
    random_simplex_point, simple_affine_roots, ApartmentPoint, EndoscopicCase,
};
use crate::error::Result;
use crate::local_field::ExtensionKind;
use crate::rational::qi;

/// Largest rank parameter covered.
const MAX_RANK: usize = 5;

/// Every case up to [`MAX_RANK`]; the unitary case runs over both parities
/// of `N` for each rank and both quadratic extensions.
pub(crate) fn all_cases() -> Vec<EndoscopicCase> {
    let mut out = Vec::new();
    for n in 1..=MAX_RANK {
        out.push(EndoscopicCase::OddOrthogonal { n });
        out.push(EndoscopicCase::SymplecticOdd { n });
        out.push(EndoscopicCase::SymplecticEven { n });
        for ext in [ExtensionKind::Unramified, ExtensionKind::Ramified] {
            for size in [2 * n, 2 * n + 1] {
                out.push(EndoscopicCase::Unitary { n: size, ext });
            }
        }
    }
    out
}

pub(super) fn alcove_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let cases = all_cases();
    run.check(
        "certificates",
        "every simple affine root of G is a nonnegative combination of those of G_theta plus a constant",
        cases.len() as u64,
        |i, _| {
            let case = cases[i as usize];
            match inclusion_certificate(&case) {
                Ok(cert) if cert.validate() => Outcome::Pass,
                Ok(cert) => Outcome::fail("certificate does not validate", js(&cert)),
                Err(e) => Outcome::fail(e.to_string(), json!({ "case": js(&case) })),
            }
        },
    );
    run.check(
        "random-implication",
        "a point of the alcove of G_theta lies in the alcove of G",
        cfg.samples as u64,
        |i, rng| {
            let case = cases[i as usize % cases.len()];
            let res = (|| -> Result<(bool, ApartmentPoint)> {
                let t_roots = simple_affine_roots(&case.g_theta())?;
                let size = case.g().matrix_size();
                let phi = if rng.gen_bool(0.75) {
                    random_simplex_point(rng, &alcove_vertices(&t_roots)?)
                } else {
                    random_rational_vector(rng, size / 2, 1, 24)
                };
                let x = ApartmentPoint::from_folded(&phi, size)?;
                if !t_roots.iter().all(|b| b.eval(&x) > qi(0)) {
                    return Ok((true, x));
                }
                Ok((alcove_contains(&x, &case.g())?, x))
            })();
            match res {
                Ok((true, _)) => Outcome::Pass,
                Ok((false, x)) => Outcome::fail("point of the G_theta alcove outside the G alcove", json!({ "case": js(&case), "x": js(&x) })),
                Err(e) => Outcome::fail(e.to_string(), json!({ "case": js(&case) })),
            }
        },
    );
    let mut certs = Vec::new();
    for case in &cases {
        let entry = match inclusion_certificate(case) {
            Ok(c) => {
                let lines: Vec<String> = c.entries.iter().map(|e| e.describe(&c.g_theta_roots)).collect();
                json!({ "case": case.to_string(), "certificate": js(&c), "identities": lines })
            }
            Err(err) => {
                let attempts = certificate_attempts(case).map(|(_, a)| js(&a)).unwrap_or(Value::Null);
                json!({ "case": case.to_string(), "error": err.to_string(), "attempts": attempts })
            }
        };
        certs.push(entry);
    }
    Ok(json!({ "max_rank": MAX_RANK, "cases": certs }))
}
