use super::PadicMatrix;
use crate::error::{Error, Result};
use crate::local_field::LocalField;

/// `J_N`: anti-diagonal with `(i, N+1−i)` entry `(−1)^(i−1)` (1-based).
pub fn j_matrix(field: LocalField, n: usize) -> PadicMatrix {
    PadicMatrix::from_fn(field, n, |i, j| {
        if i + j + 1 == n {
            field.from_i64(if i % 2 == 0 { 1 } else { -1 })
        } else {
            field.zero()
        }
    })
}

/// `J·M·J⁻¹`, computed entrywise: `(−1)^(i+j)·M[N+1−i][N+1−j]`.
fn j_conjugate(m: &PadicMatrix) -> PadicMatrix {
    let n = m.size();
    PadicMatrix::from_fn(*m.field(), n, |i, j| {
        let x = *m.get(n - 1 - i, n - 1 - j);
        if (i + j) % 2 == 0 { x } else { x.neg() }
    })
}

/// `θ(g) = J·ᵗc(g)⁻¹·J⁻¹`.
pub fn theta(g: &PadicMatrix) -> Result<PadicMatrix> {
    Ok(j_conjugate(&g.conj().transpose().inverse()?))
}

/// `dθ(X) = −J·ᵗc(X)·J⁻¹`.
pub fn dtheta(x: &PadicMatrix) -> PadicMatrix {
    -j_conjugate(&x.conj().transpose())
}

/// Splitting `X = fixed + anti` into the `±1` eigenspaces of dθ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaDecomposition {
    pub fixed_part: PadicMatrix,
    pub anti_part: PadicMatrix,
}

pub fn decompose_dtheta(x: &PadicMatrix) -> ThetaDecomposition {
    let half = x.field().from_ratio(1, 2);
    let dx = dtheta(x);
    ThetaDecomposition {
        fixed_part: (x + &dx).scale(&half),
        anti_part: (x - &dx).scale(&half),
    }
}

/// An element `g ⋊ θ` of the non-identity component of `GL_N ⋊ ⟨θ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    pub body: PadicMatrix,
}

impl TwistedElement {
    pub fn new(body: PadicMatrix) -> Self {
        TwistedElement { body }
    }

    /// `y·(g⋊θ)·y⁻¹ = (y·g·θ(y)⁻¹)⋊θ`.
    pub fn conjugate_by(&self, y: &PadicMatrix) -> Result<Self> {
        let ty = theta(y)?;
        Ok(TwistedElement { body: y.try_mul(&self.body)?.right_div(&ty)? })
    }

    /// `(g⋊θ)² = g·θ(g)`, an element of `GL_N`.
    pub fn square(&self) -> Result<PadicMatrix> {
        self.body.try_mul(&theta(&self.body)?)
    }
}

fn coefficients_positive(x: &PadicMatrix) -> Result<bool> {
    let cp = x.charpoly();
    let n = cp.degree();
    let mut undecided = None;
    for c in &cp.coeffs[..n] {
        match c.val_at_least(1) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(e) => undecided = Some(e),
        }
    }
    match undecided {
        Some(e) => Err(e),
        None => Ok(true),
    }
}

/// All eigenvalues of `X` have positive valuation.
///
/// Equivalent to every non-leading coefficient of the characteristic
/// polynomial having positive valuation, i.e. every Newton slope positive.
pub fn is_topologically_nilpotent(x: &PadicMatrix) -> Result<bool> {
    coefficients_positive(x)
}

/// All eigenvalues of `g − 1` have positive valuation.
pub fn is_topologically_unipotent(g: &PadicMatrix) -> Result<bool> {
    let f = *g.field();
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    coefficients_positive(&g.add_scalar(&f.one().neg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;

    #[test]
    fn j_matrices() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 6).unwrap();
        assert!(j_matrix(f, 1).agrees_with(&PadicMatrix::identity(f, 1)));
        let j2 = PadicMatrix::from_i64(f, &[&[0, 1], &[-1, 0]]).unwrap();
        assert!(j_matrix(f, 2).agrees_with(&j2));
        let j3 = PadicMatrix::from_i64(f, &[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]).unwrap();
        assert!(j_matrix(f, 3).agrees_with(&j3));
    }

    #[test]
    fn theta_matches_definition() {
        for kind in ExtensionKind::ALL {
            let f = LocalField::new(5, kind, 8).unwrap();
            let g = PadicMatrix::from_i64(f, &[&[1, 5, 2], &[0, 3, 1], &[7, 0, 1]]).unwrap();
            let j = j_matrix(f, 3);
            let direct = &(&j * &g.conj().transpose().inverse().unwrap()) * &j.inverse().unwrap();
            assert!(theta(&g).unwrap().agrees_with(&direct));
            let x = g.clone();
            let ddirect = -(&(&j * &x.conj().transpose()) * &j.inverse().unwrap());
            assert!(dtheta(&x).agrees_with(&ddirect));
        }
    }

    #[test]
    fn theta_identity_and_diagonal() {
        let f = LocalField::new(7, ExtensionKind::Unramified, 6).unwrap();
        let i3 = PadicMatrix::identity(f, 3);
        assert!(theta(&i3).unwrap().agrees_with(&i3));
        let g = f.sqrt_generator().unwrap();
        let t = [f.from_i64(2) + g, f.from_i64(3), f.one() + g.scale(7)];
        let th = theta(&PadicMatrix::diag(f, &t)).unwrap();
        let expect: Vec<_> = t.iter().rev().map(|x| x.conj().inv().unwrap()).collect();
        assert!(th.agrees_with(&PadicMatrix::diag(f, &expect)));
    }

    #[test]
    fn nilpotence_examples() {
        let f = LocalField::new(5, ExtensionKind::Trivial, 8).unwrap();
        let pi = PadicMatrix::scalar(f, 3, f.uniformizer_f());
        assert!(is_topologically_nilpotent(&pi).unwrap());
        assert!(!is_topologically_nilpotent(&PadicMatrix::identity(f, 3)).unwrap());
        let u = PadicMatrix::from_i64(f, &[&[0, 1, 4], &[0, 0, 3], &[0, 0, 0]]).unwrap();
        assert!(is_topologically_nilpotent(&u).unwrap());
        assert!(is_topologically_unipotent(&u.add_scalar(&f.one())).unwrap());
    }

    #[test]
    fn zero_to_low_precision_is_undecided() {
        let f = LocalField::new(5, ExtensionKind::Trivial, 8).unwrap();
        let mut x = PadicMatrix::zero(f, 1);
        x.set(0, 0, crate::local_field::PadicScalar::zero_to(f, 0));
        assert!(is_topologically_nilpotent(&x).unwrap_err().is_precision());
    }
}
