//! Truncated arithmetic in `F = Q_p` and in a quadratic extension `E`.
//!
//! Valuations are normalized so that `val(p) = 1`; internally everything is
//! counted in ϖ_E-digits (`val(ϖ_E) = 1/e`). Ramified `E` is `F(√p)` and
//! unramified `E` is `F(√u)` with `u` the least quadratic non-residue mod p.

mod residue;
mod ring;
mod scalar;

pub use residue::ResidueElem;
pub use scalar::{PadicScalar, EXACT};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    /// `E = F`.
    Trivial,
    /// `E = F(√u)`, `u` a non-residue unit.
    #[serde(rename = "unram")]
    Unramified,
    /// `E = F(√p)`.
    #[serde(rename = "ram")]
    Ramified,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 3] = [
        ExtensionKind::Trivial,
        ExtensionKind::Unramified,
        ExtensionKind::Ramified,
    ];

    pub fn ramification(self) -> i64 {
        match self {
            ExtensionKind::Ramified => 2,
            _ => 1,
        }
    }

    pub fn is_quadratic(self) -> bool {
        self != ExtensionKind::Trivial
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtensionKind::Trivial => "trivial",
            ExtensionKind::Unramified => "unram",
            ExtensionKind::Ramified => "ram",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trivial" | "f" | "none" => Some(ExtensionKind::Trivial),
            "unram" | "unramified" => Some(ExtensionKind::Unramified),
            "ram" | "ramified" => Some(ExtensionKind::Ramified),
            _ => None,
        }
    }
}

impl std::fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Default relative precision, in ϖ_E-digits.
pub const DEFAULT_PRECISION: u32 = 12;

/// Descriptor of the field `E` an element lives in, together with the
/// working precision. Two descriptors are the same field only if all fields
/// agree, including the precision cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalField {
    p: u64,
    kind: ExtensionKind,
    nonresidue: u64,
    precision: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| (1..p).all(|x| (x * x) % p != a))
        .expect("odd primes have a non-residue")
}

impl LocalField {
    /// Builds the descriptor; `precision` counts ϖ_E-digits of relative
    /// precision carried by every nonzero element.
    pub fn new(p: u64, kind: ExtensionKind, precision: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("p = 2 is excluded".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if precision < 1 {
            return Err(Error::InvalidField("precision must be at least 1".into()));
        }
        let e = kind.ramification() as u32;
        let top = precision.div_ceil(e);
        // Residues are multiplied in u128; keep the modulus below 2^62.
        let fits = (0..top).try_fold(1u128, |acc, _| {
            let next = acc * p as u128;
            (next < (1u128 << 62)).then_some(next)
        });
        if fits.is_none() {
            return Err(Error::InvalidField(format!(
                "precision {precision} too large for p = {p}"
            )));
        }
        let nonresidue = if kind == ExtensionKind::Unramified { least_nonresidue(p) } else { 0 };
        Ok(LocalField { p, kind, nonresidue, precision })
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        LocalField::new(self.p, self.kind, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    /// Ramification index `e`.
    pub fn e(&self) -> i64 {
        self.kind.ramification()
    }

    /// Residue field size `q`.
    pub fn residue_size(&self) -> u64 {
        match self.kind {
            ExtensionKind::Unramified => self.p * self.p,
            _ => self.p,
        }
    }

    /// Degree of the residue field over `F_p`.
    pub fn residue_degree(&self) -> usize {
        match self.kind {
            ExtensionKind::Unramified => 2,
            _ => 1,
        }
    }

    /// The non-residue `u` with `E = F(√u)` (unramified only).
    pub fn nonresidue(&self) -> Option<u64> {
        (self.kind == ExtensionKind::Unramified).then_some(self.nonresidue)
    }

    /// Precision in ϖ_E-digits.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Precision in valuation units (`precision / e`).
    pub fn precision_val(&self) -> Q {
        q(self.precision as i64, self.e())
    }

    /// Converts a count of ϖ_E-digits to a valuation.
    pub fn digits_to_val(&self, digits: i64) -> Q {
        q(digits, self.e())
    }

    pub fn zero(&self) -> PadicScalar {
        PadicScalar::exact_zero(*self)
    }

    pub fn one(&self) -> PadicScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> PadicScalar {
        PadicScalar::from_i64(*self, n)
    }

    /// `num / den`; panics if `den` is zero.
    pub fn from_ratio(&self, num: i64, den: i64) -> PadicScalar {
        assert!(den != 0, "zero denominator");
        let d = self.from_i64(den).inv().expect("nonzero integer is invertible");
        self.from_i64(num) * d
    }

    /// ϖ_E: `√p` when ramified, `p` otherwise.
    pub fn uniformizer(&self) -> PadicScalar {
        PadicScalar::monomial(*self, 1, ResidueElem::one())
    }

    /// ϖ_F = p.
    pub fn uniformizer_f(&self) -> PadicScalar {
        self.from_i64(self.p as i64)
    }

    /// `ϖ_E^d` for any integer `d`.
    pub fn uniformizer_pow(&self, d: i64) -> PadicScalar {
        PadicScalar::monomial(*self, d, ResidueElem::one())
    }

    /// The square-root generator of `E/F` (`√u` or `√p`); `None` for `E = F`.
    pub fn sqrt_generator(&self) -> Option<PadicScalar> {
        match self.kind {
            ExtensionKind::Trivial => None,
            ExtensionKind::Unramified => {
                Some(PadicScalar::monomial(*self, 0, ResidueElem::new(0, 1)))
            }
            ExtensionKind::Ramified => Some(self.uniformizer()),
        }
    }

    /// `ϖ_E^val · (a + b·√u)` (unramified) or `ϖ_E^val · a` otherwise, for
    /// integer representatives; `a`, `b` need not be units.
    pub fn from_parts(&self, val: i64, a: u64, b: u64) -> PadicScalar {
        PadicScalar::from_ring_parts(*self, val, a, b)
    }

    /// Lifts a residue element to `ϖ_E^val · [r]` with digit representatives.
    pub fn monomial(&self, val: i64, r: ResidueElem) -> PadicScalar {
        PadicScalar::monomial(*self, val, r)
    }

    pub fn residue_zero(&self) -> ResidueElem {
        ResidueElem::zero()
    }

    /// All elements of the residue field, in a fixed order.
    pub fn residue_elements(&self) -> Vec<ResidueElem> {
        let p = self.p;
        match self.kind {
            ExtensionKind::Unramified => (0..p)
                .flat_map(|b| (0..p).map(move |a| ResidueElem::new(a, b)))
                .collect(),
            _ => (0..p).map(|a| ResidueElem::new(a, 0)).collect(),
        }
    }
}

impl std::fmt::Display for LocalField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E({}, {}, prec {})", self.p, self.kind, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 8).unwrap();
        assert_eq!((f.e(), f.residue_size()), (1, 3));
        let r = LocalField::new(3, ExtensionKind::Ramified, 8).unwrap();
        assert_eq!((r.e(), r.residue_size()), (2, 3));
        let u = LocalField::new(7, ExtensionKind::Unramified, 8).unwrap();
        assert_eq!((u.e(), u.residue_size(), u.nonresidue()), (1, 49, Some(3)));
    }

    #[test]
    fn ramified_uniformizer_squares_to_p_f() {
        let r = LocalField::new(3, ExtensionKind::Ramified, 8).unwrap();
        let w = r.uniformizer();
        assert_eq!(w.valuation(), Some(q(1, 2)));
        let w2 = w * w;
        assert_eq!(w2.valuation(), Some(q(1, 1)));
        assert!(w2.agrees_with(&r.uniformizer_f()));
    }

    #[test]
    fn rejects_bad_primes() {
        for kind in ExtensionKind::ALL {
            assert!(matches!(LocalField::new(2, kind, 8), Err(Error::InvalidField(_))));
        }
        assert!(LocalField::new(9, ExtensionKind::Trivial, 8).is_err());
        assert!(LocalField::new(1, ExtensionKind::Trivial, 8).is_err());
        assert!(LocalField::new(3, ExtensionKind::Trivial, 0).is_err());
    }

    #[test]
    fn deterministic_construction() {
        let a = LocalField::new(11, ExtensionKind::Unramified, 6).unwrap();
        let b = LocalField::new(11, ExtensionKind::Unramified, 6).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.nonresidue(), Some(2));
    }
}
