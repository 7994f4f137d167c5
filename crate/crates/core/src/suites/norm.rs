use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{js, Outcome, Runner, SuiteConfig};
use crate::error::{Error, Result};
use crate::local_field::{LocalField, PadicScalar};
use crate::matrix::{is_topologically_unipotent, newton_root_valuations, PadicMatrix};
use crate::rational::qi;
use crate::sampling::{random_gl_integral, random_permutation, random_principal_unit, random_unit};
use crate::twisted::{norm_multiset_check, norm_values, NormData};

/// Sort-and-compare: cut everything to the common precision, write each
/// value as (valuation, digit list) and compare the sorted lists.
fn sorted_oracle(d: &NormData) -> Result<bool> {
    let w = norm_values(d)?;
    let all: Vec<&PadicScalar> = d.v.iter().chain(&w).collect();
    if all.iter().any(|x| x.is_zero()) {
        return Err(Error::precision("vanishing entry"));
    }
    let prec = all.iter().map(|x| x.prec_digits()).min().unwrap_or(0);
    let key = |x: &PadicScalar| {
        let t = x.truncate(prec);
        let digits: Vec<(u64, u64)> = t.unit_digits().iter().map(|r| (r.a, r.b)).collect();
        (t.val_digits(), digits)
    };
    let mut a: Vec<_> = d.v.iter().map(key).collect();
    let mut b: Vec<_> = w.iter().map(key).collect();
    a.sort();
    b.sort();
    Ok(a == b)
}

fn random_units(f: &LocalField, n: usize, principal: bool, rng: &mut ChaCha8Rng) -> Vec<PadicScalar> {
    (0..n)
        .map(|_| {
            if principal {
                let depth = rng.gen_range(1..=3);
                random_principal_unit(f, rng, depth)
            } else {
                random_unit(f, rng)
            }
        })
        .collect()
}

fn data_json(d: &NormData) -> Value {
    json!({ "t": js(&d.t), "s": js(&d.s), "v": js(&d.v) })
}

pub(super) fn norm_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:3")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    run.annotate_hypothesis(&g, cfg.p);
    let specs = [
        ("multiset-oracle", "the multiset criterion agrees with sorting both lists"),
        ("unipotence-propagation", "t_i, s_i principal units imply t_i / s_(N+1-i) principal units"),
        ("permutation-invariance", "the criterion is unchanged by reindexing the pairs and permuting v"),
        ("newton-eigenvalues", "Newton polygon slopes of A diag(d) A^-1 - 1 are the valuations of d_i - 1"),
    ];
    run.checks(&specs, cfg.samples as u64, |_, rng| {
        let principal = rng.gen_bool(0.5);
        let t = random_units(&f, n, principal, rng);
        let s = random_units(&f, n, principal, rng);
        let mut d = NormData { t, s, v: Vec::new() };
        let w = match norm_values(&d) {
            Ok(w) => w,
            Err(e) => {
                let fail = || Outcome::fail(e.to_string(), data_json(&d));
                return vec![fail(), fail(), fail(), fail()];
            }
        };
        let perm = random_permutation(n, rng);
        d.v = perm.iter().map(|&i| w[i]).collect();
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..n);
            d.v[k] = if rng.gen_bool(0.5) { random_unit(&f, rng) } else { d.v[(k + 1) % n] };
        }
        let inputs = || data_json(&d);

        let oracle = (|| Ok(norm_multiset_check(&d)? == sorted_oracle(&d)?))();

        let prop = if principal {
            let one = f.one();
            (|| {
                for x in &w {
                    if !x.try_sub(&one)?.val_at_least(1)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })()
        } else {
            Ok(true)
        };

        let sigma = random_permutation(n, rng);
        let tau = random_permutation(n, rng);
        let moved = NormData {
            t: sigma.iter().map(|&i| d.t[i]).collect(),
            s: (0..n).map(|j| d.s[n - 1 - sigma[n - 1 - j]]).collect(),
            v: tau.iter().map(|&i| d.v[i]).collect(),
        };
        let perm_ok = (|| Ok(norm_multiset_check(&d)? == norm_multiset_check(&moved)?))();

        let diag = random_units(&f, n, rng.gen_bool(0.5), rng);
        let a = random_gl_integral(&f, n, rng);
        let newton = (|| {
            let gm = a.try_mul(&PadicMatrix::diag(f, &diag))?.try_mul(&a.inverse()?)?;
            let one = f.one();
            let mut expected = Vec::with_capacity(n);
            for x in &diag {
                match x.try_sub(&one)?.valuation() {
                    Some(v) => expected.push(v),
                    None => return Err(Error::precision("eigenvalue equals 1 to precision")),
                }
            }
            expected.sort();
            let got = newton_root_valuations(&gm.add_scalar(&one.neg()).charpoly())?;
            let tu = expected.iter().all(|v| *v > qi(0));
            Ok(got == expected && is_topologically_unipotent(&gm)? == tu)
        })();
        let newton_inputs = || json!({ "diag": js(&diag), "A": js(&a) });
        vec![
            Outcome::judge(oracle, "criterion disagrees with the sorting oracle", inputs),
            Outcome::judge(prop, "quotient of principal units is not principal", inputs),
            Outcome::judge(perm_ok, "criterion changed under reindexing", inputs),
            Outcome::judge(newton, "Newton valuations disagree with eigenvalues", newton_inputs),
        ]
    });
    Ok(json!({ "group": g.spec(), "n": n }))
}
