//! Truncated `O_E / ϖ_E^L` arithmetic on integer coordinates.
//!
//! An element is stored as `(a, b)`:
//! - `E = F`: `a` mod `p^L`, `b = 0`;
//! - unramified: `a + b·√u`, both mod `p^L`;
//! - ramified: `a + b·π` with `π² = p`, `a` mod `p^⌈L/2⌉`, `b` mod `p^⌊L/2⌋`.

use super::{ExtensionKind, LocalField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub(crate) struct Digits {
    pub a: u64,
    pub b: u64,
}

fn v_p(mut n: u64, p: u64) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, a as i128 % m as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(m as i128) as u64
}

impl LocalField {
    pub(crate) fn pow_p(&self, k: i64) -> u64 {
        (0..k.max(0)).fold(1u64, |acc, _| acc * self.p)
    }

    /// Moduli for the two coordinates at length `len`.
    pub(crate) fn moduli(&self, len: i64) -> (u64, u64) {
        let len = len.max(0);
        match self.kind {
            ExtensionKind::Trivial => (self.pow_p(len), 1),
            ExtensionKind::Unramified => {
                let m = self.pow_p(len);
                (m, m)
            }
            ExtensionKind::Ramified => (self.pow_p((len + 1) / 2), self.pow_p(len / 2)),
        }
    }

    pub(crate) fn reduce(&self, x: Digits, len: i64) -> Digits {
        let (ma, mb) = self.moduli(len);
        Digits { a: x.a % ma, b: x.b % mb }
    }

    pub(crate) fn r_add(&self, x: Digits, y: Digits, len: i64) -> Digits {
        let (ma, mb) = self.moduli(len);
        Digits {
            a: ((x.a as u128 + y.a as u128) % ma as u128) as u64,
            b: ((x.b as u128 + y.b as u128) % mb as u128) as u64,
        }
    }

    pub(crate) fn r_neg(&self, x: Digits, len: i64) -> Digits {
        let (ma, mb) = self.moduli(len);
        Digits { a: (ma - x.a % ma) % ma, b: (mb - x.b % mb) % mb }
    }

    pub(crate) fn r_mul(&self, x: Digits, y: Digits, len: i64) -> Digits {
        let (ma, mb) = self.moduli(len);
        let (ma, mb) = (ma as u128, mb as u128);
        let (a, b, c, d) = (x.a as u128, x.b as u128, y.a as u128, y.b as u128);
        match self.kind {
            ExtensionKind::Trivial => Digits { a: (a * c % ma) as u64, b: 0 },
            ExtensionKind::Unramified => {
                let u = self.nonresidue as u128;
                let bd = b * d % ma;
                Digits {
                    a: ((a * c % ma + u * bd) % ma) as u64,
                    b: ((a * d % ma + b * c % ma) % ma) as u64,
                }
            }
            ExtensionKind::Ramified => {
                let p = self.p as u128;
                let bd = b * d % ma;
                Digits {
                    a: ((a * c % ma + p * bd) % ma) as u64,
                    b: (((a % mb) * (d % mb) % mb + (b % mb) * (c % mb) % mb) % mb) as u64,
                }
            }
        }
    }

    /// Valuation in ϖ_E-digits, `None` if zero mod ϖ^len.
    pub(crate) fn r_val(&self, x: Digits, len: i64) -> Option<i64> {
        let x = self.reduce(x, len);
        let p = self.p;
        let v = match self.kind {
            ExtensionKind::Trivial => v_p(x.a, p),
            ExtensionKind::Unramified => match (v_p(x.a, p), v_p(x.b, p)) {
                (Some(s), Some(t)) => Some(s.min(t)),
                (s, t) => s.or(t),
            },
            ExtensionKind::Ramified => {
                match (v_p(x.a, p).map(|s| 2 * s), v_p(x.b, p).map(|t| 2 * t + 1)) {
                    (Some(s), Some(t)) => Some(s.min(t)),
                    (s, t) => s.or(t),
                }
            }
        };
        v.filter(|&v| v < len)
    }

    /// Multiplies by ϖ^d and reduces mod ϖ^len.
    pub(crate) fn r_shift_up(&self, x: Digits, d: i64, len: i64) -> Digits {
        debug_assert!(d >= 0);
        let out = match self.kind {
            ExtensionKind::Ramified => {
                let (ma, _) = self.moduli(len);
                let mut y = Digits { a: x.a % ma, b: x.b % ma };
                let pp = self.pow_p(d / 2) as u128;
                y = Digits {
                    a: (y.a as u128 * pp % ma as u128) as u64,
                    b: (y.b as u128 * pp % ma as u128) as u64,
                };
                if d % 2 == 1 {
                    y = Digits { a: (self.p as u128 * y.b as u128 % ma as u128) as u64, b: y.a };
                }
                y
            }
            _ => {
                if d >= len {
                    Digits::default()
                } else {
                    let pp = self.pow_p(d) as u128;
                    let (m, _) = self.moduli(len);
                    Digits {
                        a: (x.a as u128 * pp % m as u128) as u64,
                        b: (x.b as u128 * pp % m as u128) as u64,
                    }
                }
            }
        };
        self.reduce(out, len)
    }

    /// Divides by ϖ^d; `x` must have valuation at least `d`.
    pub(crate) fn r_shift_down(&self, x: Digits, d: i64) -> Digits {
        debug_assert!(d >= 0);
        match self.kind {
            ExtensionKind::Ramified => {
                let pp = self.pow_p(d / 2);
                let mut y = Digits { a: x.a / pp, b: x.b / pp };
                if d % 2 == 1 {
                    y = Digits { a: y.b, b: y.a / self.p };
                }
                y
            }
            _ => {
                let pp = self.pow_p(d);
                Digits { a: x.a / pp, b: x.b / pp }
            }
        }
    }

    pub(crate) fn r_conj(&self, x: Digits, len: i64) -> Digits {
        match self.kind {
            ExtensionKind::Trivial => x,
            _ => {
                let (_, mb) = self.moduli(len);
                Digits { a: x.a, b: (mb - x.b % mb) % mb }
            }
        }
    }

    /// Inverse of a unit mod ϖ^len.
    pub(crate) fn r_unit_inv(&self, x: Digits, len: i64) -> Digits {
        let x = self.reduce(x, len);
        let (ma, _) = self.moduli(len);
        match self.kind {
            ExtensionKind::Trivial => Digits { a: inv_mod(x.a, ma), b: 0 },
            _ => {
                let g = match self.kind {
                    ExtensionKind::Unramified => self.nonresidue,
                    _ => self.p,
                } as u128;
                let m = ma as u128;
                let (a, b) = (x.a as u128, x.b as u128);
                let norm = (a * a % m + m - g * (b * b % m) % m) % m;
                let ninv = inv_mod(norm as u64, ma) as u128;
                let c = self.r_conj(x, len);
                self.reduce(
                    Digits {
                        a: (c.a as u128 * ninv % m) as u64,
                        b: (c.b as u128 * ninv % m) as u64,
                    },
                    len,
                )
            }
        }
    }

    /// Digit representative of the leading residue of a unit.
    pub(crate) fn r_residue(&self, x: Digits) -> (u64, u64) {
        match self.kind {
            ExtensionKind::Unramified => (x.a % self.p, x.b % self.p),
            _ => (x.a % self.p, 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        for m in [3u64, 9, 27, 125] {
            for a in 1..m {
                if a % 3 == 0 && m % 3 == 0 || a % 5 == 0 && m % 5 == 0 {
                    continue;
                }
                assert_eq!(a * inv_mod(a, m) % m, 1);
            }
        }
    }

    #[test]
    fn ramified_shift_roundtrip() {
        let f = LocalField::new(5, ExtensionKind::Ramified, 9).unwrap();
        let x = Digits { a: 17, b: 42 };
        for d in 0..5 {
            let up = f.r_shift_up(x, d, 9);
            assert_eq!(f.r_val(up, 9), Some(d));
            let back = f.r_shift_down(up, d);
            assert_eq!(f.reduce(back, 9 - d), f.reduce(x, 9 - d));
        }
    }
}
