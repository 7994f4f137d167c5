//! The Cayley transform `c(X) = (1 + X/2)(1 − X/2)⁻¹`, its inverse, the
//! squared variant `c′` for classical groups, and square roots of
//! topologically unipotent elements.

use serde::Serialize;

use crate::building::GroupType;
use crate::error::{Error, Result};
use crate::local_field::ExtensionKind;
use crate::matrix::{dtheta, is_topologically_nilpotent, is_topologically_unipotent, j_matrix, theta, PadicMatrix};

fn half(x: &PadicMatrix) -> PadicMatrix {
    x.scale(&x.field().from_ratio(1, 2))
}

/// `c(X)`; `X` must be topologically nilpotent.
pub fn cayley(x: &PadicMatrix) -> Result<PadicMatrix> {
    if !is_topologically_nilpotent(x)? {
        return Err(Error::NotTopologicallyNilpotent);
    }
    cayley_unchecked(x)
}

fn cayley_unchecked(x: &PadicMatrix) -> Result<PadicMatrix> {
    let f = *x.field();
    let y = half(x);
    let num = y.add_scalar(&f.one());
    let den = (-&y).add_scalar(&f.one());
    num.right_div(&den)
}

/// `c⁻¹(g) = 2(g − 1)(g + 1)⁻¹`; `g` must be topologically unipotent.
pub fn cayley_inv(g: &PadicMatrix) -> Result<PadicMatrix> {
    if !is_topologically_unipotent(g)? {
        return Err(Error::NotTopologicallyUnipotent);
    }
    let f = *g.field();
    let num = g.add_scalar(&f.one().neg()).scale(&f.from_i64(2));
    num.right_div(&g.add_scalar(&f.one()))
}

/// Partial sums of `1 + 2·Σ_{k≥1} (X/2)^k`, summed until the terms vanish to
/// the precision of `X`. Requires `X/2` integral so that the tail is bounded
/// by the last term.
pub fn cayley_series(x: &PadicMatrix, max_terms: usize) -> Result<PadicMatrix> {
    let f = *x.field();
    let y = half(x);
    if y.min_val_digits() < 0 {
        return Err(Error::precision("series tail bound needs an integral argument"));
    }
    let target = x.min_prec_digits();
    let two = f.from_i64(2);
    let mut sum = PadicMatrix::identity(f, x.size());
    let mut term = PadicMatrix::identity(f, x.size());
    for _ in 0..max_terms {
        term = &term * &y;
        if term.min_val_digits() >= target {
            // The dropped tail is only bounded by `target`.
            return Ok(sum.truncate(target));
        }
        sum = &sum + &term.scale(&two);
    }
    Err(Error::precision("Cayley series did not converge within the term cap"))
}

/// Split symmetric form with all-ones anti-diagonal.
pub fn split_form(field: crate::LocalField, n: usize) -> PadicMatrix {
    PadicMatrix::from_fn(field, n, |i, j| if i + j + 1 == n { field.one() } else { field.zero() })
}

fn dtheta_plain(x: &PadicMatrix) -> Result<PadicMatrix> {
    let j = j_matrix(*x.field(), x.size());
    Ok(-(&(&j * &x.transpose()) * &j.inverse()?))
}

fn check_size(x: &PadicMatrix, g: &GroupType) -> Result<()> {
    if x.size() != g.matrix_size() {
        return Err(Error::SizeMismatch { expected: g.matrix_size(), got: x.size() });
    }
    Ok(())
}

/// Membership of `X` in the Lie algebra `𝔥` of a classical group.
pub fn in_lie_algebra(x: &PadicMatrix, g: &GroupType) -> Result<bool> {
    check_size(x, g)?;
    Ok(match g {
        GroupType::Gl { .. } => true,
        GroupType::Sp { .. } | GroupType::SoOdd { .. } => dtheta_plain(x)?.agrees_with(x),
        GroupType::SoEven { .. } => {
            let s = split_form(*x.field(), x.size());
            (&(&x.transpose() * &s) + &(&s * x)).is_zero()
        }
        GroupType::U { ext, .. } => {
            if x.field().kind() != *ext {
                return Err(Error::UnsupportedGroup(format!("{g} over a {} field", x.field().kind())));
            }
            dtheta(x).agrees_with(x)
        }
    })
}

/// Membership of `h` in the classical group itself.
pub fn in_group(h: &PadicMatrix, g: &GroupType) -> Result<bool> {
    check_size(h, g)?;
    Ok(match g {
        GroupType::Gl { .. } => !h.det().is_zero(),
        GroupType::Sp { .. } | GroupType::SoOdd { .. } => {
            let j = j_matrix(*h.field(), h.size());
            (&(&h.transpose() * &j) * h).agrees_with(&j)
        }
        GroupType::SoEven { .. } => {
            let s = split_form(*h.field(), h.size());
            (&(&h.transpose() * &s) * h).agrees_with(&s)
        }
        GroupType::U { .. } => theta(h)?.agrees_with(h),
    })
}

/// `c′(X)`: `c(X/2)²` for `Sp` and odd `SO`, `c(X)²` for even `SO` and `U`.
pub fn cayley_prime(x: &PadicMatrix, g: &GroupType) -> Result<PadicMatrix> {
    if !g.is_classical() {
        return Err(Error::UnsupportedGroup(format!("c′ is not defined for {g}")));
    }
    if !in_lie_algebra(x, g)? {
        return Err(Error::NotInLieAlgebra(g.to_string()));
    }
    let c = match g {
        GroupType::Sp { .. } | GroupType::SoOdd { .. } => cayley(&half(x))?,
        _ => cayley(x)?,
    };
    Ok(&c * &c)
}

/// Outcome of one identity check; `first_failure` is `(row, col, digit)` of
/// the first entry where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub passed: bool,
    pub first_failure: Option<(usize, usize, i64)>,
}

impl IdentityCheck {
    fn compare(lhs: &PadicMatrix, rhs: &PadicMatrix) -> Self {
        let first_failure = lhs.first_disagreement(rhs);
        IdentityCheck { passed: first_failure.is_none(), first_failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    /// `A·c(X)·A⁻¹ = c(A·X·A⁻¹)`.
    pub conjugation: IdentityCheck,
    /// `θ(c(X)) = c(dθ(X))`.
    pub theta: IdentityCheck,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.conjugation.passed && self.theta.passed
    }
}

pub fn verify_equivariance(a: &PadicMatrix, x: &PadicMatrix) -> Result<EquivarianceReport> {
    let ainv = a.inverse()?;
    let cx = cayley(x)?;
    let lhs = &(a * &cx) * &ainv;
    let rhs = cayley(&(&(a * x) * &ainv))?;
    let t_lhs = theta(&cx)?;
    let t_rhs = cayley(&dtheta(x))?;
    Ok(EquivarianceReport {
        conjugation: IdentityCheck::compare(&lhs, &rhs),
        theta: IdentityCheck::compare(&t_lhs, &t_rhs),
    })
}

/// Iteration cap for square roots, in multiples of the field precision.
const SQRT_CAP_FACTOR: u32 = 8;

/// The topologically unipotent square root of a topologically unipotent `g`,
/// by Newton iteration `h ← (h + h⁻¹g)/2` from `h = 1`.
pub fn sqrt_tu(g: &PadicMatrix) -> Result<PadicMatrix> {
    if !is_topologically_unipotent(g)? {
        return Err(Error::NotTopologicallyUnipotent);
    }
    let root = sqrt_newton(g, &PadicMatrix::identity(*g.field(), g.size()))?;
    if !is_topologically_unipotent(&root)? {
        return Err(Error::precision("square root iteration left the unipotent locus"));
    }
    Ok(root)
}

/// Newton iteration for `h² = g` from an arbitrary invertible start.
pub fn sqrt_newton(g: &PadicMatrix, start: &PadicMatrix) -> Result<PadicMatrix> {
    let f = *g.field();
    let half = f.from_ratio(1, 2);
    let cap = SQRT_CAP_FACTOR * f.precision();
    let mut h = start.clone();
    for _ in 0..cap {
        let next = (&h + &h.inverse()?.try_mul(g)?).scale(&half);
        if next.agrees_with(&h) {
            if (&next * &next).agrees_with(g) {
                return Ok(next);
            }
            break;
        }
        h = next;
    }
    Err(Error::precision("square root iteration did not converge"))
}

/// True when `E` is a quadratic extension and `g` is Hermitian-unitary for `J`.
pub fn is_unitary(h: &PadicMatrix) -> Result<bool> {
    if h.field().kind() == ExtensionKind::Trivial {
        return Ok(false);
    }
    Ok(theta(h)?.agrees_with(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::LocalField;
    use crate::sampling::{random_matrix, rng_for};

    fn field(kind: ExtensionKind) -> LocalField {
        LocalField::new(5, kind, 10).unwrap()
    }

    #[test]
    fn identity_points() {
        let f = field(ExtensionKind::Trivial);
        let z = PadicMatrix::zero(f, 3);
        let one = PadicMatrix::identity(f, 3);
        assert!(cayley(&z).unwrap().agrees_with(&one));
        assert!(cayley_inv(&one).unwrap().is_zero());
        assert!(cayley_prime(&z, &GroupType::Sp { n: 1 }).is_err());
        assert!(cayley_prime(&z, &GroupType::SoOdd { n: 1 }).unwrap().agrees_with(&one));
    }

    #[test]
    fn diagonal_matches_scalar_formula() {
        let f = field(ExtensionKind::Trivial);
        let a = f.from_i64(15);
        let x = PadicMatrix::diag(f, &[a, f.from_i64(5)]);
        let c = cayley(&x).unwrap();
        let h = a * f.from_ratio(1, 2);
        let expect = (f.one() + h) / (f.one() - h);
        assert!(c.get(0, 0).agrees_with(&expect));
        assert!(c.get(0, 1).is_zero());
    }

    #[test]
    fn roundtrip_and_series() {
        for kind in ExtensionKind::ALL {
            let f = field(kind);
            let mut rng = rng_for(11, kind as u64);
            for _ in 0..5 {
                let x = random_matrix(&f, 3, &mut rng, f.e());
                let g = cayley(&x).unwrap();
                assert!(cayley_inv(&g).unwrap().agrees_with(&x));
                assert!(cayley_series(&x, 200).unwrap().agrees_with(&g));
            }
        }
    }

    #[test]
    fn rejects_non_nilpotent() {
        let f = field(ExtensionKind::Trivial);
        assert_eq!(cayley(&PadicMatrix::identity(f, 2)), Err(Error::NotTopologicallyNilpotent));
        assert_eq!(
            cayley_inv(&PadicMatrix::scalar(f, 2, f.from_i64(2))),
            Err(Error::NotTopologicallyUnipotent)
        );
    }
}
