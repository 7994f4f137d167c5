use serde::{Deserialize, Serialize};

use super::{ExtensionKind, LocalField};

/// An element of the residue field `k_E`: `a + b·√u` for unramified `E`,
/// plain `a` (with `b = 0`) otherwise. Coordinates are reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ResidueElem {
    pub a: u64,
    pub b: u64,
}

impl ResidueElem {
    pub const fn new(a: u64, b: u64) -> Self {
        ResidueElem { a, b }
    }

    pub const fn zero() -> Self {
        ResidueElem { a: 0, b: 0 }
    }

    pub const fn one() -> Self {
        ResidueElem { a: 1, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, other: Self, field: &LocalField) -> Self {
        let p = field.p();
        ResidueElem::new((self.a + other.a) % p, (self.b + other.b) % p)
    }

    pub fn neg(self, field: &LocalField) -> Self {
        let p = field.p();
        ResidueElem::new((p - self.a) % p, (p - self.b) % p)
    }

    pub fn sub(self, other: Self, field: &LocalField) -> Self {
        self.add(other.neg(field), field)
    }

    pub fn scale(self, k: i64, field: &LocalField) -> Self {
        let p = field.p() as i64;
        let k = k.rem_euclid(p) as u64;
        ResidueElem::new(self.a * k % field.p(), self.b * k % field.p())
    }

    /// Frobenius of `k_E / F_p` restricted to the quadratic extension: the
    /// residue image of the Galois conjugation. Identity unless unramified.
    pub fn conj(self, field: &LocalField) -> Self {
        match field.kind() {
            ExtensionKind::Unramified => ResidueElem::new(self.a, (field.p() - self.b) % field.p()),
            _ => self,
        }
    }

    /// Coordinates over `F_p` (length = residue degree).
    pub fn coords(&self, field: &LocalField) -> Vec<u64> {
        match field.kind() {
            ExtensionKind::Unramified => vec![self.a, self.b],
            _ => vec![self.a],
        }
    }

    pub fn from_coords(c: &[u64], field: &LocalField) -> Self {
        let p = field.p();
        match field.kind() {
            ExtensionKind::Unramified => ResidueElem::new(c[0] % p, c[1] % p),
            _ => ResidueElem::new(c[0] % p, 0),
        }
    }
}
