//! Square matrices over [`PadicScalar`], the outer involution θ and the
//! Newton-polygon tests for topological nilpotence and unipotence.

mod charpoly;
mod theta;

pub use charpoly::{newton_root_valuations, Charpoly};
pub use theta::{
    decompose_dtheta, dtheta, is_topologically_nilpotent, is_topologically_unipotent, j_matrix,
    theta, ThetaDecomposition, TwistedElement,
};

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::local_field::{LocalField, PadicScalar};

/// An `N×N` matrix with entries in a single [`LocalField`], row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicMatrix {
    field: LocalField,
    n: usize,
    entries: Vec<PadicScalar>,
}

impl PadicMatrix {
    pub fn zero(field: LocalField, n: usize) -> Self {
        PadicMatrix { field, n, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(field: LocalField, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: LocalField, n: usize, s: PadicScalar) -> Self {
        Self::from_fn(field, n, |i, j| if i == j { s } else { field.zero() })
    }

    pub fn from_fn(field: LocalField, n: usize, mut f: impl FnMut(usize, usize) -> PadicScalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = f(i, j);
                assert_eq!(x.field(), &field, "entry from a different field");
                entries.push(x);
            }
        }
        PadicMatrix { field, n, entries }
    }

    /// Builds from rows of scalars; all rows must have length `rows.len()`.
    pub fn from_rows(field: LocalField, rows: Vec<Vec<PadicScalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, got: row.len() });
            }
            for x in row {
                if x.field() != &field {
                    return Err(Error::OwnerMismatch);
                }
                entries.push(x);
            }
        }
        Ok(PadicMatrix { field, n, entries })
    }

    pub fn from_i64(field: LocalField, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    pub fn diag(field: LocalField, d: &[PadicScalar]) -> Self {
        Self::from_fn(field, d.len(), |i, j| if i == j { d[i] } else { field.zero() })
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(field: LocalField, perm: &[usize]) -> Self {
        Self::from_fn(field, perm.len(), |i, j| if perm[j] == i { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &PadicScalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: PadicScalar) {
        assert_eq!(x.field(), &self.field, "entry from a different field");
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&PadicScalar) -> PadicScalar) -> Self {
        PadicMatrix { field: self.field, n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::OwnerMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PadicMatrix { field: self.field, n: self.n, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(PadicMatrix { field: self.field, n: self.n, entries })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx] + *a * *b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &PadicScalar) -> Self {
        self.map(|x| x * s)
    }

    /// `self · ϖ_E^d`.
    pub fn shift(&self, d: i64) -> Self {
        self.map(|x| x.shift(d))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.n, |i, j| *self.get(j, i))
    }

    /// Entrywise Galois conjugation.
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn trace(&self) -> PadicScalar {
        (0..self.n).fold(self.field.zero(), |acc, i| acc + *self.get(i, i))
    }

    pub fn add_scalar(&self, s: &PadicScalar) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            let v = *out.get(i, i) + *s;
            out.set(i, i, v);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.field, self.n), |acc, _| &acc * self)
    }

    /// `[X, Y] = XY − YX`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// True when every entry is zero to its precision.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// True when `self − other` vanishes to the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Index and valuation (digits) of the first entry on which `self` and
    /// `other` disagree, if any.
    pub fn first_disagreement(&self, other: &Self) -> Option<(usize, usize, i64)> {
        let d = self.try_sub(other).ok()?;
        let n = self.n;
        (0..n * n).find_map(|k| {
            d.entries[k].val_digits().map(|v| (k / n, k % n, v))
        })
    }

    /// Smallest valuation lower bound over all entries, in digits.
    pub fn min_val_digits(&self) -> i64 {
        self.entries.iter().map(|x| x.val_lower_bound()).min().unwrap_or(crate::local_field::EXACT)
    }

    /// Smallest absolute precision over all entries, in digits.
    pub fn min_prec_digits(&self) -> i64 {
        self.entries.iter().map(|x| x.prec_digits()).min().unwrap_or(crate::local_field::EXACT)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        self.map(|x| x.truncate(prec))
    }

    /// Inverse by Gauss–Jordan elimination, pivoting on the entry of least
    /// valuation in each column.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let f = self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .filter_map(|r| a.get(r, col).val_digits().map(|v| (v, r)))
                .min()
                .map(|(_, r)| r)
                .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let pinv = a.get(col, col).inv()?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = *a.get(r, col);
                if factor.is_exact_zero() {
                    continue;
                }
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// `self · other⁻¹`.
    pub fn right_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn det(&self) -> PadicScalar {
        let cp = self.charpoly();
        let a0 = cp.coeffs[0];
        if self.n % 2 == 0 { a0 } else { a0.neg() }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.n {
            self.entries.swap(r1 * self.n + j, r2 * self.n + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &PadicScalar) {
        for j in 0..self.n {
            let k = r * self.n + j;
            self.entries[k] = self.entries[k] * *s;
        }
    }

    fn sub_row_multiple(&mut self, r: usize, src: usize, s: &PadicScalar) {
        for j in 0..self.n {
            let x = self.entries[src * self.n + j];
            if x.is_exact_zero() {
                continue;
            }
            let k = r * self.n + j;
            self.entries[k] = self.entries[k] - *s * x;
        }
    }
}

macro_rules! matop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a PadicMatrix> for &'a PadicMatrix {
            type Output = PadicMatrix;
            fn $method(self, rhs: &'a PadicMatrix) -> PadicMatrix {
                self.$try(rhs).expect(concat!("PadicMatrix::", stringify!($method)))
            }
        }
        impl $trait for PadicMatrix {
            type Output = PadicMatrix;
            fn $method(self, rhs: PadicMatrix) -> PadicMatrix {
                self.$try(&rhs).expect(concat!("PadicMatrix::", stringify!($method)))
            }
        }
    };
}

matop!(Add, add, try_add);
matop!(Sub, sub, try_sub);
matop!(Mul, mul, try_mul);

impl Neg for &PadicMatrix {
    type Output = PadicMatrix;
    fn neg(self) -> PadicMatrix {
        self.map(|x| x.neg())
    }
}

impl Neg for PadicMatrix {
    type Output = PadicMatrix;
    fn neg(self) -> PadicMatrix {
        -&self
    }
}

impl Serialize for PadicMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[PadicScalar]> = self.entries.chunks(self.n.max(1)).collect();
        let mut st = s.serialize_struct("PadicMatrix", 2)?;
        st.serialize_field("size", &self.n)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl fmt::Display for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;

    #[test]
    fn inverse_roundtrip() {
        let f = LocalField::new(5, ExtensionKind::Trivial, 10).unwrap();
        let a = PadicMatrix::from_i64(f, &[&[5, 1, 0], &[2, 3, 7], &[1, 0, 25]]).unwrap();
        let b = a.inverse().unwrap();
        assert!((&a * &b).agrees_with(&PadicMatrix::identity(f, 3)));
        assert!((&b * &a).agrees_with(&PadicMatrix::identity(f, 3)));
    }

    #[test]
    fn singular_is_reported() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 6).unwrap();
        let a = PadicMatrix::from_i64(f, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(a.inverse(), Err(Error::Singular));
    }

    #[test]
    fn det_of_small_matrix() {
        let f = LocalField::new(7, ExtensionKind::Trivial, 8).unwrap();
        let a = PadicMatrix::from_i64(f, &[&[2, 1], &[3, 4]]).unwrap();
        assert!(a.det().agrees_with(&f.from_i64(5)));
    }
}
