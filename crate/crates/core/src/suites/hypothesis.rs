use serde_json::{json, Value};

use super::{Outcome, Runner, SuiteConfig};
use crate::building::EndoscopicCase;
use crate::error::Result;
use crate::local_field::ExtensionKind;
use crate::twisted::hypothesis_check;

/// Bounds written out by hand, indexed by case then rank 1..=6; case 4 is
/// indexed by `N`.
const TABLE: [[u64; 6]; 4] = [
    [4, 6, 8, 10, 12, 14],
    [4, 6, 8, 10, 12, 14],
    [3, 5, 7, 9, 11, 13],
    [2, 3, 4, 5, 6, 7],
];

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

pub(super) fn hypothesis_suite(_cfg: &SuiteConfig, run: &mut Runner) -> Result<Value> {
    let mut rows = Vec::new();
    for number in 1..=4u8 {
        for rank in 1..=6usize {
            let ext = if number == 4 { ExtensionKind::Unramified } else { ExtensionKind::Trivial };
            rows.push((number, rank, EndoscopicCase::new(number, rank, ext)?));
        }
    }
    let trials: Vec<(u8, usize, EndoscopicCase, u64)> =
        rows.iter().flat_map(|&(c, r, case)| PRIMES.iter().map(move |&p| (c, r, case, p))).collect();
    run.check(
        "table",
        "p is admissible iff p is odd and exceeds the bound for the case",
        trials.len() as u64,
        |i, _| {
            let (number, rank, case, p) = trials[i as usize];
            let expected = p != 2 && p > TABLE[number as usize - 1][rank - 1];
            let mut got = hypothesis_check(&case, p);
            if let EndoscopicCase::Unitary { n, .. } = case {
                let ram = hypothesis_check(&EndoscopicCase::Unitary { n, ext: ExtensionKind::Ramified }, p);
                if ram != got {
                    got = !expected;
                }
            }
            if got == expected {
                Outcome::Pass
            } else {
                Outcome::fail(
                    format!("expected {expected}, got {got}"),
                    json!({ "case": number, "rank": rank, "p": p }),
                )
            }
        },
    );
    let table: Vec<Value> = rows
        .iter()
        .map(|&(number, rank, case)| {
            let ok: Vec<u64> = PRIMES.iter().copied().filter(|&p| hypothesis_check(&case, p)).collect();
            json!({ "case": number, "rank": rank, "admissible_primes": ok })
        })
        .collect();
    Ok(json!({ "table": table }))
}
