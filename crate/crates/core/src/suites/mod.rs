//! Named verification suites: each draws seeded random instances, runs a
//! list of checks on them in parallel and assembles a [`SuiteReport`].

mod alcove;
mod algebra;
pub mod config;
mod descent;
mod hypothesis;
mod norm;
mod quotients;
pub mod report;

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::building::{simple_affine_roots, EndoscopicCase, GroupType};
use crate::error::{Error, Result};
use crate::sampling::{mix, rng_for};
use crate::twisted::{hypothesis_bound, hypothesis_check};

pub use config::{ConfigEcho, SuiteConfig};
pub use report::{CheckRecord, Counterexample, SuiteReport, Verdict};

/// Suite names in their fixed listing order.
pub const SUITES: [&str; 10] = [
    "cayley",
    "filtration",
    "alcove",
    "theta-compat",
    "descent",
    "coset",
    "partition",
    "norm",
    "transfer-pair",
    "hypothesis",
];

pub fn list_suites() -> Vec<&'static str> {
    SUITES.to_vec()
}

/// Short description of each suite, for `--help` style listings.
pub fn describe_suite(name: &str) -> Option<&'static str> {
    Some(match name {
        "cayley" => "Cayley transform round trips, equivariance, series and filtration compatibility",
        "filtration" => "Moy-Prasad lattices: Iwahori model, shift laws, product stability, membership",
        "alcove" => "alcove inclusion certificates for the four endoscopic cases, random implications",
        "theta-compat" => "graded dimension of dtheta-fixed classes, theta and dtheta identities",
        "descent" => "twisted descent to a target depth with independent reconstruction",
        "coset" => "theta-twisted orbits on graded quotients against brute-force enumeration",
        "partition" => "fixed classes as a transversal of the twisted orbits, counts and stability",
        "norm" => "norm multiset criterion, unipotence propagation, Newton polygon valuations",
        "transfer-pair" => "unitary full-filtration pair and square roots of unipotent elements",
        "hypothesis" => "residual characteristic bounds for the four cases",
        _ => return None,
    })
}

/// The simple affine roots of a group as JSON.
pub fn export_roots(g: &GroupType) -> Result<Value> {
    let roots = simple_affine_roots(g)?;
    Ok(json!({ "group": g.spec(), "roots": roots }))
}

/// Runs a suite and writes the report to `cfg.out` when set.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut run = Runner::new(cfg);
    let attachments = match cfg.suite.as_str() {
        "cayley" => algebra::cayley_suite(cfg, &mut run)?,
        "filtration" => algebra::filtration_suite(cfg, &mut run)?,
        "alcove" => alcove::alcove_suite(cfg, &mut run)?,
        "theta-compat" => algebra::theta_compat_suite(cfg, &mut run)?,
        "descent" => descent::descent_suite(cfg, &mut run)?,
        "coset" => quotients::coset_suite(cfg, &mut run)?,
        "partition" => quotients::partition_suite(cfg, &mut run)?,
        "norm" => norm::norm_suite(cfg, &mut run)?,
        "transfer-pair" => quotients::transfer_pair_suite(cfg, &mut run)?,
        "hypothesis" => hypothesis::hypothesis_suite(cfg, &mut run)?,
        other => return Err(Error::Config(format!("unknown suite `{other}`"))),
    };
    let report = SuiteReport::assemble(
        &cfg.suite,
        cfg.echo(),
        run.annotations,
        run.checks,
        attachments,
        start.elapsed().as_secs_f64() * 1e3,
    );
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Result of one check on one trial.
pub(crate) enum Outcome {
    Pass,
    Fail { detail: String, inputs: Value },
    Exhausted,
}

impl Outcome {
    pub(crate) fn fail(detail: impl Into<String>, inputs: Value) -> Self {
        Outcome::Fail { detail: detail.into(), inputs }
    }

    /// `Ok(true)` passes, `Ok(false)` fails with `detail`, precision errors
    /// count as exhausted and any other error is a failure.
    pub(crate) fn judge(res: Result<bool>, detail: &str, inputs: impl FnOnce() -> Value) -> Self {
        match res {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::fail(detail, inputs()),
            Err(e) if e.is_precision() => Outcome::Exhausted,
            Err(e) => Outcome::fail(format!("{detail}: {e}"), inputs()),
        }
    }
}

/// Collects check records for one suite run.
pub(crate) struct Runner {
    seed: u64,
    pub(crate) annotations: Vec<String>,
    pub(crate) checks: Vec<CheckRecord>,
}

fn id_hash(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

impl Runner {
    fn new(cfg: &SuiteConfig) -> Self {
        Runner { seed: cfg.seed, annotations: Vec::new(), checks: Vec::new() }
    }

    /// Adds the out-of-hypothesis note when `p` is not above the
    /// bound for the case `g` belongs to.
    pub(crate) fn annotate_hypothesis(&mut self, g: &GroupType, p: u64) {
        if let Some(case) = EndoscopicCase::for_group(g) {
            if !hypothesis_check(&case, p) {
                self.annotations.push(format!(
                    "outside paper hypothesis: {g} belongs to case {} which needs p > {}, got p = {p}",
                    case.number(),
                    hypothesis_bound(&case)
                ));
            }
        }
    }

    /// Runs `trials` instances of a group of checks sharing one sampled
    /// input. `f` returns one outcome per entry of `specs`. Trials run in
    /// parallel, each with its own generator; results merge in trial order.
    pub(crate) fn checks<F>(&mut self, specs: &[(&str, &str)], trials: u64, f: F)
    where
        F: Fn(u64, &mut ChaCha8Rng) -> Vec<Outcome> + Sync,
    {
        let start = Instant::now();
        let base = mix(self.seed, id_hash(specs[0].0));
        let results: Vec<Vec<Outcome>> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let out = f(i, &mut rng_for(base, i));
                assert_eq!(out.len(), specs.len(), "one outcome per check");
                out
            })
            .collect();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        for (k, (id, statement)) in specs.iter().enumerate() {
            let mut rec = CheckRecord {
                id: id.to_string(),
                statement: statement.to_string(),
                trials,
                passes: 0,
                precision_exhausted: 0,
                counterexample_count: 0,
                counterexamples: Vec::new(),
                wall_time_ms: elapsed,
            };
            for (i, outcomes) in results.iter().enumerate() {
                match &outcomes[k] {
                    Outcome::Pass => rec.passes += 1,
                    Outcome::Exhausted => rec.precision_exhausted += 1,
                    Outcome::Fail { detail, inputs } => {
                        rec.counterexample_count += 1;
                        if rec.counterexamples.len() < report::MAX_STORED_COUNTEREXAMPLES {
                            rec.counterexamples.push(Counterexample {
                                trial: i as u64,
                                trial_seed: mix(base, i as u64),
                                detail: detail.clone(),
                                inputs: inputs.clone(),
                            });
                        }
                    }
                }
            }
            self.checks.push(rec);
        }
    }

    pub(crate) fn check<F>(&mut self, id: &str, statement: &str, trials: u64, f: F)
    where
        F: Fn(u64, &mut ChaCha8Rng) -> Outcome + Sync,
    {
        self.checks(&[(id, statement)], trials, |i, rng| vec![f(i, rng)]);
    }
}

/// JSON for a value that serializes, or a placeholder.
pub(crate) fn js<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_fixed() {
        let l = list_suites();
        assert_eq!(l.len(), 10);
        assert_eq!(l[0], "cayley");
        assert_eq!(l[9], "hypothesis");
        assert!(l.iter().all(|s| describe_suite(s).is_some()));
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        let cfg = SuiteConfig::new("nope");
        assert!(matches!(run_suite(&cfg), Err(Error::Config(_))));
    }
}
