use super::PadicMatrix;
use crate::error::{Error, Result};
use crate::local_field::PadicScalar;
use crate::rational::{q, Q};

/// Characteristic polynomial `det(λ − A) = Σ coeffs[i]·λ^i` (ascending, monic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Charpoly {
    pub coeffs: Vec<PadicScalar>,
}

impl Charpoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates at a scalar.
    pub fn eval(&self, x: &PadicScalar) -> PadicScalar {
        let f = *x.field();
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| acc * *x + *c)
    }
}

impl PadicMatrix {
    /// Division-free characteristic polynomial (Berkowitz).
    pub fn charpoly(&self) -> Charpoly {
        let f = self.field;
        let n = self.n;
        if n == 0 {
            return Charpoly { coeffs: vec![f.one()] };
        }
        // `v` holds descending coefficients of the leading principal minor.
        let mut v = vec![f.one(), self.get(0, 0).neg()];
        for r in 1..n {
            // Toeplitz column [1, −a, −R·C, −R·A·C, …, −R·A^(r−1)·C].
            let mut col = Vec::with_capacity(r + 2);
            col.push(f.one());
            col.push(self.get(r, r).neg());
            let mut w: Vec<PadicScalar> = (0..r).map(|i| *self.get(i, r)).collect();
            for _ in 0..r {
                let rc = (0..r).fold(f.zero(), |acc, j| acc + *self.get(r, j) * w[j]);
                col.push(rc.neg());
                w = (0..r)
                    .map(|i| (0..r).fold(f.zero(), |acc, j| acc + *self.get(i, j) * w[j]))
                    .collect();
            }
            let mut next = vec![f.zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot = *slot + col[i - j] * *vj;
                    }
                }
            }
            v = next;
        }
        v.reverse();
        Charpoly { coeffs: v }
    }
}

/// Root valuations (with multiplicity, ascending) read off the lower Newton
/// polygon of a monic polynomial.
///
/// A coefficient that is zero to precision must lie strictly above the hull
/// formed by the known coefficients; otherwise the polygon is undetermined
/// and a precision error is returned.
pub fn newton_root_valuations(cp: &Charpoly) -> Result<Vec<Q>> {
    let e = cp.coeffs[0].field().e();
    let pts: Vec<(i64, i64)> = cp
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.val_digits().map(|v| (i as i64, v)))
        .collect();
    if pts.first().map(|p| p.0) != Some(0) {
        return Err(Error::precision("constant term of characteristic polynomial vanishes to precision"));
    }
    // Lower convex hull, left to right.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as i128 * (pt.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    for (i, c) in cp.coeffs.iter().enumerate() {
        if c.is_zero() {
            let i = i as i64;
            let seg = hull.windows(2).find(|w| w[0].0 < i && i < w[1].0);
            if let Some(w) = seg {
                let (a, b) = (w[0], w[1]);
                // strictly above: prec·(b.0−a.0) > a.1·(b.0−a.0) + (b.1−a.1)·(i−a.0)
                let lhs = c.prec_digits() as i128 * (b.0 - a.0) as i128;
                let rhs = a.1 as i128 * (b.0 - a.0) as i128 + (b.1 - a.1) as i128 * (i - a.0) as i128;
                if lhs <= rhs {
                    return Err(Error::precision("Newton polygon undetermined at this precision"));
                }
            }
        }
    }
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = b.0 - a.0;
        let slope = q(a.1 - b.1, len * e);
        out.extend(std::iter::repeat(slope).take(len as usize));
    }
    out.sort();
    Ok(out)
}
