use crate::error::{Error, Result};
use crate::local_field::PadicScalar;

/// Diagonal data for the norm correspondence: `δ̃` conjugate to
/// `(diag(t), diag(s))⋊θ` and `γ` conjugate to `diag(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormData {
    pub t: Vec<PadicScalar>,
    pub s: Vec<PadicScalar>,
    pub v: Vec<PadicScalar>,
}

/// `t_i / s_{N+1−i}`.
pub fn norm_values(d: &NormData) -> Result<Vec<PadicScalar>> {
    let n = d.t.len();
    if d.s.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: d.s.len() });
    }
    (0..n).map(|i| d.t[i].try_div(&d.s[n - 1 - i])).collect()
}

/// True when the multiset `{v_i}` equals `{t_i / s_{N+1−i}}`.
///
/// All values are cut to their common absolute precision first, so that
/// "agrees with" is an equivalence relation and greedy matching is exact.
pub fn norm_multiset_check(d: &NormData) -> Result<bool> {
    let w = norm_values(d)?;
    if d.v.len() != w.len() {
        return Err(Error::SizeMismatch { expected: w.len(), got: d.v.len() });
    }
    let all: Vec<&PadicScalar> = d.v.iter().chain(&w).collect();
    if all.iter().any(|x| x.is_zero()) {
        return Err(Error::precision("norm data entry vanishes to precision"));
    }
    let prec = all.iter().map(|x| x.prec_digits()).min().unwrap_or(0);
    let top = all.iter().filter_map(|x| x.val_digits()).max().unwrap_or(0);
    if prec <= top {
        return Err(Error::precision("values cannot be compared at a common precision"));
    }
    let v: Vec<PadicScalar> = d.v.iter().map(|x| x.truncate(prec)).collect();
    let mut pool: Vec<Option<PadicScalar>> = w.iter().map(|x| Some(x.truncate(prec))).collect();
    for a in &v {
        let hit = pool.iter_mut().find(|slot| slot.as_ref().is_some_and(|b| b.agrees_with(a)));
        match hit {
            Some(slot) => *slot = None,
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::{ExtensionKind, LocalField};

    #[test]
    fn small_examples() {
        let f = LocalField::new(7, ExtensionKind::Trivial, 8).unwrap();
        let one = f.one();
        let ones = NormData { t: vec![one; 3], s: vec![one; 3], v: vec![one; 3] };
        assert!(norm_multiset_check(&ones).unwrap());
        let (a, b) = (f.from_i64(3), f.from_i64(10));
        let mut d = NormData { t: vec![a, b], s: vec![one, one], v: vec![b, a] };
        assert!(norm_multiset_check(&d).unwrap());
        d.v = vec![a, b];
        assert!(norm_multiset_check(&d).unwrap());
        d.v = vec![a, a];
        assert!(!norm_multiset_check(&d).unwrap());
    }
}
