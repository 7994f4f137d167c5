use crate::building::EndoscopicCase;
use crate::local_field::is_prime;

/// The residual characteristic must exceed this bound: `2n+2` in cases 1
/// and 2, `2n+1` in case 3, `N+1` in case 4.
pub fn hypothesis_bound(case: &EndoscopicCase) -> u64 {
    match *case {
        EndoscopicCase::OddOrthogonal { n } | EndoscopicCase::SymplecticOdd { n } => 2 * n as u64 + 2,
        EndoscopicCase::SymplecticEven { n } => 2 * n as u64 + 1,
        EndoscopicCase::Unitary { n, .. } => n as u64 + 1,
    }
}

/// True when `p` is an odd prime above the bound for `case`.
pub fn hypothesis_check(case: &EndoscopicCase, p: u64) -> bool {
    p != 2 && is_prime(p) && p > hypothesis_bound(case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;

    #[test]
    fn table_examples() {
        assert!(hypothesis_check(&EndoscopicCase::OddOrthogonal { n: 2 }, 7));
        let u3 = EndoscopicCase::Unitary { n: 3, ext: ExtensionKind::Unramified };
        assert!(hypothesis_check(&u3, 5));
        assert!(!hypothesis_check(&u3, 3));
        for case in [
            EndoscopicCase::OddOrthogonal { n: 1 },
            EndoscopicCase::SymplecticOdd { n: 1 },
            EndoscopicCase::SymplecticEven { n: 1 },
            EndoscopicCase::Unitary { n: 1, ext: ExtensionKind::Ramified },
        ] {
            assert!(!hypothesis_check(&case, 2));
        }
    }
}
