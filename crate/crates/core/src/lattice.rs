//! `O_E`-lattices in `M_N(E)` in echelon (Hermite) form.
//!
//! A lattice is stored as rows `(k, v)` where `v` has its first nonzero
//! coordinate at index `k` and that coordinate is exactly `ϖ_E^val`.
//! Coordinates are the matrix entries in row-major order.

use crate::building::{mp_depth, ApartmentPoint};
use crate::error::{Error, Result};
use crate::local_field::LocalField;
use crate::matrix::PadicMatrix;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLattice {
    field: LocalField,
    n: usize,
    rows: Vec<(usize, PadicMatrix)>,
}

fn elementary(field: LocalField, n: usize, i: usize, j: usize, val: i64) -> PadicMatrix {
    let mut m = PadicMatrix::zero(field, n);
    m.set(i, j, field.uniformizer_pow(val));
    m
}

impl MatrixLattice {
    /// The lattice spanned over `O_E` by `gens`.
    pub fn from_generators(field: LocalField, n: usize, gens: Vec<PadicMatrix>) -> Result<Self> {
        for g in &gens {
            if g.field() != &field {
                return Err(Error::OwnerMismatch);
            }
            if g.size() != n {
                return Err(Error::SizeMismatch { expected: n, got: g.size() });
            }
        }
        let mut work: Vec<PadicMatrix> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let mut rows = Vec::new();
        for k in 0..n * n {
            let (i, j) = (k / n, k % n);
            let best = work
                .iter()
                .enumerate()
                .filter_map(|(idx, g)| g.get(i, j).val_digits().map(|v| (v, idx)))
                .min();
            let Some((v, idx)) = best else { continue };
            let pivot = work.swap_remove(idx);
            let lead = pivot.get(i, j).shift(-v);
            let pivot = pivot.scale(&lead.inv()?);
            for w in work.iter_mut() {
                let c = *w.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let factor = c.shift(-v);
                *w = &*w - &pivot.scale(&factor);
            }
            work.retain(|g| !g.is_zero());
            rows.push((k, pivot));
        }
        Ok(MatrixLattice { field, n, rows })
    }

    /// The monomial lattice `{X : val(X_ij) ≥ t[i·N + j]}` (thresholds in
    /// ϖ_E-digits).
    pub fn from_thresholds(field: LocalField, n: usize, t: &[i64]) -> Self {
        let rows = (0..n * n)
            .map(|k| (k, elementary(field, n, k / n, k % n, t[k])))
            .collect();
        MatrixLattice { field, n, rows }
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> impl Iterator<Item = &PadicMatrix> {
        self.rows.iter().map(|(_, m)| m)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Valuations (digits) of the pivots, indexed by coordinate.
    pub fn pivot_valuations(&self) -> Vec<Option<i64>> {
        let mut out = vec![None; self.n * self.n];
        for (k, m) in &self.rows {
            out[*k] = m.get(k / self.n, k % self.n).val_digits();
        }
        out
    }

    /// Exact membership by reduction along the echelon basis.
    pub fn contains(&self, x: &PadicMatrix) -> Result<bool> {
        if x.size() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: x.size() });
        }
        let n = self.n;
        let mut v = x.clone();
        let mut rows = self.rows.iter().peekable();
        for k in 0..n * n {
            let (i, j) = (k / n, k % n);
            let y = *v.get(i, j);
            match rows.next_if(|(pk, _)| *pk == k) {
                Some((_, row)) => {
                    let pv = row.get(i, j).val_digits().expect("pivot is nonzero");
                    if !y.val_at_least(pv)? {
                        return Ok(false);
                    }
                    if !y.is_zero() {
                        v = &v - &row.scale(&y.shift(-pv));
                    }
                }
                None => {
                    if !y.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn contains_lattice(&self, other: &Self) -> Result<bool> {
        for b in other.basis() {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// `Span{Z·W : Z ∈ self, W ∈ other}`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut gens = Vec::with_capacity(self.rank() * other.rank());
        for a in self.basis() {
            for b in other.basis() {
                gens.push(a.try_mul(b)?);
            }
        }
        Self::from_generators(self.field, self.n, gens)
    }

    /// `self^k` for `k ≥ 1`.
    pub fn pow(&self, k: usize) -> Result<Self> {
        assert!(k >= 1, "lattice power needs k ≥ 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `A·L`.
    pub fn left_mul(&self, a: &PadicMatrix) -> Result<Self> {
        let gens = self.basis().map(|b| a.try_mul(b)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(self.field, self.n, gens)
    }

    /// `ϖ_E^d·L`.
    pub fn shift(&self, d: i64) -> Self {
        MatrixLattice {
            field: self.field,
            n: self.n,
            rows: self.rows.iter().map(|(k, m)| (*k, m.shift(d))).collect(),
        }
    }

    /// Largest `s` with `L ⊆ 𝔤_{x,s}`.
    pub fn depth(&self, x: &ApartmentPoint) -> Q {
        self.basis()
            .map(|b| mp_depth(b, x))
            .min()
            .unwrap_or_else(|| Q::from_integer(i64::MAX / 4))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;

    #[test]
    fn hermite_form_of_mixed_generators() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 8).unwrap();
        let a = PadicMatrix::from_i64(f, &[&[3, 1], &[0, 0]]).unwrap();
        let b = PadicMatrix::from_i64(f, &[&[0, 3], &[0, 0]]).unwrap();
        let l = MatrixLattice::from_generators(f, 2, vec![a.clone(), b]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&a).unwrap());
        let c = PadicMatrix::from_i64(f, &[&[0, 1], &[0, 0]]).unwrap();
        assert!(!l.contains(&c).unwrap());
        let d = PadicMatrix::from_i64(f, &[&[9, 6], &[0, 0]]).unwrap();
        assert!(l.contains(&d).unwrap());
    }

    #[test]
    fn monomial_products() {
        let f = LocalField::new(5, ExtensionKind::Ramified, 10).unwrap();
        let l = MatrixLattice::from_thresholds(f, 2, &[1, 0, 2, 1]);
        let sq = l.pow(2).unwrap();
        // min-plus square of the thresholds
        let expect = MatrixLattice::from_thresholds(f, 2, &[2, 1, 3, 2]);
        assert!(sq.equals(&expect).unwrap());
    }
}
