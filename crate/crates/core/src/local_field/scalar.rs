use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::ring::Digits;
use super::{ExtensionKind, LocalField, ResidueElem};
use crate::error::{Error, Result};
use crate::rational::{format_q, q, Q};

use serde::ser::{Serialize, SerializeStruct, Serializer};

/// Absolute precision carried by an exact zero.
pub const EXACT: i64 = i64::MAX / 4;

/// A truncated element of `E`, stored as `ϖ_E^val · unit + O(ϖ_E^prec)`.
///
/// Nonzero elements carry at most `field.precision()` digits of relative
/// precision. A value whose tracked digits all vanish is zero-to-precision:
/// `val` is `None` and `prec` records how far it is known to vanish.
/// Equality (`==`) is structural; use [`PadicScalar::agrees_with`] to compare
/// values up to their common precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    field: LocalField,
    val: Option<i64>,
    prec: i64,
    unit: Digits,
}

fn sat(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(EXACT)
}

impl PadicScalar {
    pub(crate) fn exact_zero(field: LocalField) -> Self {
        PadicScalar { field, val: None, prec: EXACT, unit: Digits::default() }
    }

    /// Zero known modulo `ϖ_E^prec` only.
    pub fn zero_to(field: LocalField, prec: i64) -> Self {
        PadicScalar { field, val: None, prec: prec.min(EXACT), unit: Digits::default() }
    }

    /// `ϖ_E^base · x` where `x` is known mod `ϖ_E^len`.
    pub(crate) fn from_ring(field: LocalField, base: i64, x: Digits, len: i64) -> Self {
        match field.r_val(x, len) {
            None => PadicScalar::zero_to(field, sat(base, len)),
            Some(w) => {
                let rel = len - w;
                let unit = field.reduce(field.r_shift_down(field.reduce(x, len), w), rel);
                PadicScalar { field, val: Some(base + w), prec: base + len, unit }
            }
        }
    }

    pub(crate) fn from_i64(field: LocalField, n: i64) -> Self {
        if n == 0 {
            return PadicScalar::exact_zero(field);
        }
        let p = field.p() as i64;
        let mut m = n;
        let mut v = 0;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        let k = field.precision() as i64;
        let (ma, _) = field.moduli(k);
        let a = (m as i128).rem_euclid(ma as i128) as u64;
        PadicScalar::from_ring(field, v * field.e(), Digits { a, b: 0 }, k)
    }

    pub(crate) fn from_ring_parts(field: LocalField, val: i64, a: u64, b: u64) -> Self {
        let k = field.precision() as i64;
        let b = if field.kind() == ExtensionKind::Trivial { 0 } else { b };
        PadicScalar::from_ring(field, val, Digits { a, b }, k)
    }

    pub(crate) fn monomial(field: LocalField, val: i64, r: ResidueElem) -> Self {
        if r.is_zero() {
            return PadicScalar::exact_zero(field);
        }
        PadicScalar::from_ring_parts(field, val, r.a % field.p(), r.b % field.p())
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    /// True when every tracked digit vanishes.
    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    /// True for a zero with unlimited precision.
    pub fn is_exact_zero(&self) -> bool {
        self.val.is_none() && self.prec >= EXACT
    }

    /// Valuation in units of `val(ϖ_F) = 1`; `None` for zero-to-precision.
    pub fn valuation(&self) -> Option<Q> {
        self.val.map(|v| q(v, self.field.e()))
    }

    /// Valuation counted in ϖ_E-digits.
    pub fn val_digits(&self) -> Option<i64> {
        self.val
    }

    /// Absolute precision in ϖ_E-digits.
    pub fn prec_digits(&self) -> i64 {
        self.prec
    }

    /// Absolute precision in valuation units (`None` when exact).
    pub fn precision(&self) -> Option<Q> {
        (self.prec < EXACT).then(|| q(self.prec, self.field.e()))
    }

    /// Relative precision in digits (0 for zero).
    pub fn rel_digits(&self) -> i64 {
        self.val.map_or(0, |v| self.prec - v)
    }

    /// A lower bound for the valuation (`val`, or `prec` for zero), in digits.
    pub fn val_lower_bound(&self) -> i64 {
        self.val.unwrap_or(self.prec)
    }

    /// Decides `val ≥ t` (digits), failing when the known digits cannot.
    pub fn val_at_least(&self, t: i64) -> Result<bool> {
        match self.val {
            Some(v) => Ok(v >= t),
            None if self.prec >= t => Ok(true),
            None => Err(Error::precision(format!(
                "zero known only to ϖ^{} but threshold is ϖ^{}",
                self.prec, t
            ))),
        }
    }

    /// Residue of `self · ϖ_E^(-level)` (coefficient of `ϖ_E^level`), for
    /// elements with `val ≥ level`.
    pub fn coeff_at(&self, level: i64) -> Result<ResidueElem> {
        match self.val {
            None if self.prec > level => Ok(ResidueElem::zero()),
            None => Err(Error::precision(format!("digit ϖ^{level} not tracked"))),
            Some(v) if v > level => Ok(ResidueElem::zero()),
            Some(v) if v == level => {
                let (a, b) = self.field.r_residue(self.unit);
                Ok(ResidueElem::new(a, b))
            }
            Some(v) => Err(Error::NotInFiltration(format!(
                "valuation ϖ^{v} below level ϖ^{level}"
            ))),
        }
    }

    /// Residue class in `k_E` of an integral element.
    pub fn residue(&self) -> Result<ResidueElem> {
        self.coeff_at(0)
    }

    /// Base-ϖ_E digits of the unit part, least significant first.
    pub fn unit_digits(&self) -> Vec<ResidueElem> {
        let Some(_) = self.val else { return Vec::new() };
        let f = &self.field;
        let rel = self.rel_digits();
        let mut x = self.unit;
        let mut out = Vec::with_capacity(rel as usize);
        for i in 0..rel {
            let len = rel - i;
            let (a, b) = f.r_residue(x);
            out.push(ResidueElem::new(a, b));
            let lift = Digits { a, b };
            let diff = f.r_add(x, f.r_neg(lift, len), len);
            x = if len > 1 { f.r_shift_down(diff, 1) } else { Digits::default() };
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let prec = self.prec.min(other.prec);
        let base = match (self.val, other.val) {
            (None, None) => return Ok(PadicScalar::zero_to(f, prec)),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if base >= prec {
            return Ok(PadicScalar::zero_to(f, prec));
        }
        let len = prec - base;
        let mut acc = Digits::default();
        for s in [self, other] {
            if let Some(v) = s.val {
                acc = f.r_add(acc, f.r_shift_up(s.unit, v - base, len), len);
            }
        }
        Ok(PadicScalar::from_ring(f, base, acc, len))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        Ok(match (self.val, other.val) {
            (Some(a), Some(b)) => {
                let rel = self.rel_digits().min(other.rel_digits());
                let unit = f.r_mul(f.reduce(self.unit, rel), f.reduce(other.unit, rel), rel);
                PadicScalar { field: f, val: Some(a + b), prec: a + b + rel, unit }
            }
            _ if self.is_exact_zero() || other.is_exact_zero() => PadicScalar::exact_zero(f),
            (None, None) => PadicScalar::zero_to(f, sat(self.prec, other.prec)),
            (None, Some(b)) => PadicScalar::zero_to(f, sat(self.prec, b)),
            (Some(a), None) => PadicScalar::zero_to(f, sat(a, other.prec)),
        })
    }

    pub fn inv(&self) -> Result<Self> {
        let Some(v) = self.val else {
            return Err(Error::precision("inverse of a zero-to-precision value"));
        };
        let rel = self.rel_digits();
        let unit = self.field.r_unit_inv(self.unit, rel);
        Ok(PadicScalar { field: self.field, val: Some(-v), prec: rel - v, unit })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        match self.val {
            None => *self,
            Some(_) => {
                let unit = self.field.r_neg(self.unit, self.rel_digits());
                PadicScalar { unit, ..*self }
            }
        }
    }

    /// Galois conjugation of `E/F`; the identity when `E = F`.
    pub fn conj(&self) -> Self {
        let Some(v) = self.val else { return *self };
        let f = &self.field;
        let rel = self.rel_digits();
        let mut unit = f.r_conj(self.unit, rel);
        if f.kind() == ExtensionKind::Ramified && v.rem_euclid(2) == 1 {
            unit = f.r_neg(unit, rel);
        }
        PadicScalar { unit, ..*self }
    }

    /// `self · ϖ_E^d`.
    pub fn shift(&self, d: i64) -> Self {
        PadicScalar {
            val: self.val.map(|v| v + d),
            prec: if self.prec >= EXACT { EXACT } else { self.prec + d },
            ..*self
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(self.field.one(), |acc, _| acc * *self)
    }

    pub fn scale(&self, n: i64) -> Self {
        *self * self.field.from_i64(n)
    }

    /// True when `self − other` is zero to the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Drops digits beyond absolute precision `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return *self;
        }
        match self.val {
            None => PadicScalar::zero_to(self.field, prec),
            Some(v) if v >= prec => PadicScalar::zero_to(self.field, prec),
            Some(v) => {
                let rel = prec - v;
                PadicScalar {
                    prec,
                    unit: self.field.reduce(self.unit, rel),
                    ..*self
                }
            }
        }
    }

    /// The same value viewed in `target`, a descriptor for the same `E` at a
    /// possibly different precision cap. Never invents digits.
    pub fn reinterpret(&self, target: LocalField) -> Result<Self> {
        if target.p() != self.field.p() || target.kind() != self.field.kind() {
            return Err(Error::OwnerMismatch);
        }
        let cap = target.precision() as i64;
        let mut out = *self;
        out.field = target;
        if let Some(v) = out.val {
            if out.prec - v > cap {
                out.prec = v + cap;
                out.unit = target.reduce(out.unit, cap);
            }
        }
        Ok(out)
    }

    /// Coordinates `(a, b)` of the unit part.
    pub fn unit_coords(&self) -> (u64, u64) {
        (self.unit.a, self.unit.b)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                self.$try(&rhs).expect(concat!("PadicScalar::", stringify!($method)))
            }
        }
        impl<'a> $trait<&'a PadicScalar> for &'a PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &'a PadicScalar) -> PadicScalar {
                self.$try(rhs).expect(concat!("PadicScalar::", stringify!($method)))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar::neg(&self)
    }
}

/// JSON form: valuation and absolute precision as reduced fractions
/// (`null` for zero and for exact values), unit digits as `[a, b]` pairs.
impl Serialize for PadicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PadicScalar", 3)?;
        st.serialize_field("val", &self.valuation().map(|v| format_q(&v)))?;
        st.serialize_field("prec", &self.precision().map(|v| format_q(&v)))?;
        let digits: Vec<[u64; 2]> = self.unit_digits().iter().map(|d| [d.a, d.b]).collect();
        st.serialize_field("digits", &digits)?;
        st.end()
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = if self.prec >= EXACT { String::new() } else { format!(" + O(ϖ^{})", self.prec) };
        match self.val {
            None if self.prec >= EXACT => write!(f, "0"),
            None => write!(f, "0{tail}"),
            Some(v) => {
                let digits: Vec<String> = self
                    .unit_digits()
                    .iter()
                    .map(|d| match self.field.kind() {
                        ExtensionKind::Unramified => format!("({},{})", d.a, d.b),
                        _ => d.a.to_string(),
                    })
                    .collect();
                write!(f, "ϖ^{v}·[{}]{tail}", digits.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<LocalField> {
        ExtensionKind::ALL
            .iter()
            .map(|&k| LocalField::new(5, k, 8).unwrap())
            .collect()
    }

    #[test]
    fn one_minus_one_vanishes() {
        for f in fields() {
            let z = f.one() + f.from_i64(-1);
            assert!(z.is_zero());
        }
    }

    #[test]
    fn uniformizer_products() {
        for f in fields() {
            let w = f.uniformizer_f();
            assert_eq!((w * w).valuation(), Some(q(2, 1)));
        }
    }

    #[test]
    fn inverses() {
        for f in fields() {
            assert!(f.one().inv().unwrap().agrees_with(&f.one()));
            assert_eq!(f.uniformizer_f().inv().unwrap().valuation(), Some(q(-1, 1)));
            let x = f.one() + f.uniformizer_f();
            let y = x.inv().unwrap();
            assert!((x * y).agrees_with(&f.one()));
            // geometric series 1 - p + p^2 - ...
            let mut s = f.zero();
            let mut term = f.one();
            for _ in 0..12 {
                s = s + term;
                term = term * f.uniformizer_f().neg();
            }
            assert!(s.agrees_with(&y));
            assert!(matches!(f.zero().inv(), Err(Error::PrecisionExhausted(_))));
        }
    }

    #[test]
    fn conjugation() {
        let f = LocalField::new(7, ExtensionKind::Unramified, 6).unwrap();
        let g = f.sqrt_generator().unwrap();
        assert!(g.conj().agrees_with(&g.neg()));
        let x = f.from_i64(12);
        assert!(x.conj().agrees_with(&x));
        let r = LocalField::new(7, ExtensionKind::Ramified, 6).unwrap();
        let w = r.uniformizer();
        assert!(w.conj().agrees_with(&w.neg()));
        assert!((w * w).conj().agrees_with(&(w * w)));
    }

    #[test]
    fn precision_is_tracked() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 4).unwrap();
        let a = f.one();
        let b = f.from_i64(1 + 81);
        let d = b - a;
        assert!(d.is_zero());
        assert_eq!(d.prec_digits(), 4);
        let e = d * f.uniformizer_f();
        assert_eq!(e.prec_digits(), 5);
        assert!(e.val_at_least(5).unwrap());
        assert!(e.val_at_least(6).is_err());
    }

    #[test]
    fn digit_expansion() {
        let f = LocalField::new(3, ExtensionKind::Trivial, 4).unwrap();
        let x = f.from_i64(2 + 3 + 2 * 9);
        let d: Vec<u64> = x.unit_digits().iter().map(|r| r.a).collect();
        assert_eq!(d, vec![2, 1, 2, 0]);
    }
}
