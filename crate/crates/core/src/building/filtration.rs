use super::ApartmentPoint;
use crate::error::{Error, Result};
use crate::lattice::MatrixLattice;
use crate::local_field::{LocalField, EXACT};
use crate::matrix::{dtheta, PadicMatrix};
use crate::rational::{qi, Q};

/// Least digit count `d` with `d/e ≥ t` (or `> t` when `plus`).
pub fn threshold_digits(t: Q, e: i64, plus: bool) -> i64 {
    let s = t * qi(e);
    if plus {
        s.floor().to_integer() + 1
    } else {
        s.ceil().to_integer()
    }
}

/// Digit thresholds of `𝔤_{x,r}` (or `𝔤_{x,r+}`), row-major:
/// `val(X_ij) ≥ r − x_i + x_j`.
pub fn mp_thresholds(x: &ApartmentPoint, r: Q, plus: bool, e: i64) -> Vec<i64> {
    let n = x.size();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(threshold_digits(r - x.coords[i] + x.coords[j], e, plus));
        }
    }
    out
}

fn check_size(m: &PadicMatrix, x: &ApartmentPoint) -> Result<()> {
    if m.size() != x.size() {
        return Err(Error::SizeMismatch { expected: x.size(), got: m.size() });
    }
    Ok(())
}

fn membership(m: &PadicMatrix, x: &ApartmentPoint, r: Q, plus: bool) -> Result<bool> {
    check_size(m, x)?;
    let t = mp_thresholds(x, r, plus, m.field().e());
    let mut undecided = None;
    for (entry, &ti) in m.entries().iter().zip(&t) {
        match entry.val_at_least(ti) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(e) => undecided = Some(e),
        }
    }
    undecided.map_or(Ok(true), Err)
}

/// `X ∈ 𝔤_{x,r}`.
pub fn mp_membership(m: &PadicMatrix, x: &ApartmentPoint, r: Q) -> Result<bool> {
    membership(m, x, r, false)
}

/// `X ∈ 𝔤_{x,r+}`.
pub fn mp_membership_plus(m: &PadicMatrix, x: &ApartmentPoint, r: Q) -> Result<bool> {
    membership(m, x, r, true)
}

/// `X ∈ 𝔤_{θ,x,r}`: `X ∈ 𝔤_{x,r}` and `dθ(X) = X`.
pub fn mp_theta_membership(m: &PadicMatrix, x: &ApartmentPoint, r: Q) -> Result<bool> {
    if !x.is_theta_fixed() {
        return Err(Error::NotThetaFixed);
    }
    Ok(mp_membership(m, x, r)? && dtheta(m).agrees_with(m))
}

/// `min_ij val(X_ij) + x_i − x_j`: the largest `r` with `X ∈ 𝔤_{x,r}` as far
/// as the known digits show. Zero-to-precision entries count at their
/// precision.
pub fn mp_depth(m: &PadicMatrix, x: &ApartmentPoint) -> Q {
    let n = m.size();
    let e = m.field().e();
    let mut best: Option<Q> = None;
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j).val_lower_bound();
            if v >= EXACT {
                continue;
            }
            let d = Q::new(v, e) + x.coords[i] - x.coords[j];
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best.unwrap_or_else(|| Q::from_integer(EXACT))
}

/// The lattice `𝔤_{x,r}` (or `𝔤_{x,r+}`).
pub fn mp_lattice(field: LocalField, x: &ApartmentPoint, r: Q, plus: bool) -> MatrixLattice {
    MatrixLattice::from_thresholds(field, x.size(), &mp_thresholds(x, r, plus, field.e()))
}

/// The displayed Iwahori lattice: `O_E` on and above the diagonal, `𝔭_E`
/// below.
pub fn iwahori_lattice(field: LocalField, n: usize) -> MatrixLattice {
    let t: Vec<i64> = (0..n * n).map(|k| i64::from(k / n > k % n)).collect();
    MatrixLattice::from_thresholds(field, n, &t)
}

/// `φ`: ones on the superdiagonal and `ϖ_E` in the bottom-left corner, so
/// that `φ^N = ϖ_E`.
pub fn phi_matrix(field: LocalField, n: usize) -> PadicMatrix {
    PadicMatrix::from_fn(field, n, |i, j| {
        if j == i + 1 {
            field.one()
        } else if i == n - 1 && j == 0 {
            field.uniformizer()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;
    use crate::rational::q;

    #[test]
    fn thresholds_round_correctly() {
        assert_eq!(threshold_digits(q(1, 2), 1, false), 1);
        assert_eq!(threshold_digits(q(1, 2), 2, false), 1);
        assert_eq!(threshold_digits(q(1, 2), 2, true), 2);
        assert_eq!(threshold_digits(q(-1, 3), 1, false), 0);
        assert_eq!(threshold_digits(qi(0), 1, true), 1);
    }

    #[test]
    fn barycenter_gives_iwahori() {
        for kind in ExtensionKind::ALL {
            let f = LocalField::new(3, kind, 8).unwrap();
            for n in 1..6 {
                let x = ApartmentPoint::barycenter(n, f.e());
                let l = mp_lattice(f, &x, qi(0), false);
                assert!(l.equals(&iwahori_lattice(f, n)).unwrap());
            }
        }
    }

    #[test]
    fn phi_power_is_uniformizer() {
        let f = LocalField::new(5, ExtensionKind::Ramified, 8).unwrap();
        let phi = phi_matrix(f, 3);
        assert!(phi.pow(3).agrees_with(&PadicMatrix::scalar(f, 3, f.uniformizer())));
    }

    #[test]
    fn zero_matrix_is_everywhere() {
        let f = LocalField::new(5, ExtensionKind::Trivial, 8).unwrap();
        let x = ApartmentPoint::barycenter(3, 1);
        for r in [qi(0), q(1, 2), qi(7)] {
            assert!(mp_membership(&PadicMatrix::zero(f, 3), &x, r).unwrap());
        }
    }
}
