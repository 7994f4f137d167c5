use serde_json::{json, Value};

use super::algebra::random_in_filtration;
use super::{js, Outcome, Runner, SuiteConfig};
use crate::building::random_theta_fixed_point;
use crate::cayley::cayley;
use crate::error::Result;
use crate::rational::{format_q, q, qi};
use crate::twisted::{twisted_descent, verify_descent, DescentOutcome};

pub(super) fn descent_suite(cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let g = cfg.group_type("gl:2")?;
    let f = cfg.field_for(&g)?;
    let n = g.matrix_size();
    let e = f.e();
    run.annotate_hypothesis(&g, cfg.p);
    let target = cfg.target_depth();
    let block = (e as usize + 1) * n;
    let cap = 2 * block * target.ceil().to_integer().max(1) as usize;
    let specs = [
        ("descent-reaches-target", "twisted descent reaches the target depth with a monotone trace"),
        ("reconstruction", "y g theta(y)^-1 recomputed from the conjugator is theta-fixed up to the target depth"),
    ];
    run.checks(&specs, cfg.samples as u64, |i, rng| {
        let x = random_theta_fixed_point(rng, n, f.kind());
        let r = if i % 2 == 0 { q(1, 2) } else { qi(1) };
        let big_x = random_in_filtration(&f, &x, r, rng);
        let inputs = || json!({ "x": js(&x), "r": format_q(&r), "X": js(&big_x), "precision": f.precision() });
        let g = match cayley(&big_x) {
            Ok(g) => g,
            Err(err) if err.is_precision() => return vec![Outcome::Exhausted, Outcome::Exhausted],
            Err(err) => return vec![Outcome::fail(err.to_string(), inputs()), Outcome::fail(err.to_string(), inputs())],
        };
        match twisted_descent(&g, &x, r, target) {
            Ok(DescentOutcome::Reached(trace)) => {
                let depths: Vec<_> = trace.iterations.iter().map(|s| s.guaranteed_depth).collect();
                let monotone = depths.windows(2).all(|w| w[0] <= w[1]);
                let gain = depths
                    .iter()
                    .zip(depths.iter().skip(block))
                    .all(|(a, b)| *b >= *a + q(1, e));
                let steps = trace.iterations.len();
                let reached = monotone && gain && trace.residual_anti_depth >= target && steps <= cap + 1;
                let first = if reached {
                    Outcome::Pass
                } else {
                    Outcome::fail(
                        format!("monotone {monotone}, block gain {gain}, {steps} steps"),
                        json!({ "input": inputs(), "trace": js(&trace) }),
                    )
                };
                let second = Outcome::judge(verify_descent(&g, &trace), "reconstruction fails", || {
                    json!({ "input": inputs(), "trace": js(&trace) })
                });
                vec![first, second]
            }
            Ok(DescentOutcome::Falsified(rec)) => {
                let v = json!({ "input": inputs(), "falsification": js(&rec) });
                vec![Outcome::fail(rec.reason.clone(), v.clone()), Outcome::fail(rec.reason, v)]
            }
            Err(err) if err.is_precision() => vec![Outcome::Exhausted, Outcome::Exhausted],
            Err(err) => vec![Outcome::fail(err.to_string(), inputs()), Outcome::fail(err.to_string(), inputs())],
        }
    });
    Ok(json!({ "group": g.spec(), "target": format_q(&target), "step_cap": cap }))
}
