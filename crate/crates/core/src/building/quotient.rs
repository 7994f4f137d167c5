use serde::{Deserialize, Serialize};

use super::{mp_membership, ApartmentPoint};
use crate::error::{Error, Result};
use crate::local_field::{LocalField, ResidueElem};
use crate::matrix::{dtheta, PadicMatrix};
use crate::rational::{q_string, qi, Q};

/// A matrix position `(row, col)` where `𝔤_{x,r}` jumps at `r`, with the
/// digit `level = e·(r − x_row + x_col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JumpPosition {
    pub row: usize,
    pub col: usize,
    pub level: i64,
}

/// A class in `𝔤_{x,r:r+}`: one residue per jump position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedQuotientElement {
    pub x: ApartmentPoint,
    #[serde(with = "q_string")]
    pub r: Q,
    #[serde(with = "residue_arrays")]
    pub entries: Vec<ResidueElem>,
}

mod residue_arrays {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::local_field::ResidueElem;

    pub fn serialize<S: Serializer>(v: &[ResidueElem], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|r| [r.a, r.b]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ResidueElem>, D::Error> {
        let raw: Vec<[u64; 2]> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|[a, b]| ResidueElem::new(a, b)).collect())
    }
}

/// The finite group `𝔤_{x,r:r+} = 𝔤_{x,r}/𝔤_{x,r+}`, a vector space over
/// `k_E` with one coordinate per jump position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuotient {
    field: LocalField,
    x: ApartmentPoint,
    r: Q,
    positions: Vec<JumpPosition>,
}

impl GradedQuotient {
    pub fn new(field: LocalField, x: ApartmentPoint, r: Q) -> Self {
        let n = x.size();
        let e = qi(field.e());
        let mut positions = Vec::new();
        for row in 0..n {
            for col in 0..n {
                let s = (r - x.coords[row] + x.coords[col]) * e;
                if s.is_integer() {
                    positions.push(JumpPosition { row, col, level: s.to_integer() });
                }
            }
        }
        GradedQuotient { field, x, r, positions }
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn point(&self) -> &ApartmentPoint {
        &self.x
    }

    pub fn level(&self) -> Q {
        self.r
    }

    pub fn positions(&self) -> &[JumpPosition] {
        &self.positions
    }

    /// Dimension over `k_E`.
    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    /// Dimension over `F_p`.
    pub fn dim_fp(&self) -> usize {
        self.positions.len() * self.field.residue_degree()
    }

    /// Number of classes, `q^dim` (saturating).
    pub fn size(&self) -> u128 {
        (0..self.dim()).fold(1u128, |acc, _| acc.saturating_mul(self.field.residue_size() as u128))
    }

    pub fn zero(&self) -> GradedQuotientElement {
        self.element(vec![ResidueElem::zero(); self.dim()])
    }

    fn element(&self, entries: Vec<ResidueElem>) -> GradedQuotientElement {
        GradedQuotientElement { x: self.x.clone(), r: self.r, entries }
    }

    fn check(&self, c: &GradedQuotientElement) -> Result<()> {
        if c.x != self.x || c.r != self.r || c.entries.len() != self.dim() {
            return Err(Error::Config("class belongs to a different quotient".into()));
        }
        Ok(())
    }

    pub fn add(&self, a: &GradedQuotientElement, b: &GradedQuotientElement) -> Result<GradedQuotientElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(a.entries.iter().zip(&b.entries).map(|(x, y)| x.add(*y, &self.field)).collect()))
    }

    pub fn neg(&self, a: &GradedQuotientElement) -> GradedQuotientElement {
        self.element(a.entries.iter().map(|x| x.neg(&self.field)).collect())
    }

    pub fn sub(&self, a: &GradedQuotientElement, b: &GradedQuotientElement) -> Result<GradedQuotientElement> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GradedQuotientElement, k: i64) -> GradedQuotientElement {
        self.element(a.entries.iter().map(|x| x.scale(k, &self.field)).collect())
    }

    /// Coordinates over `F_p`.
    pub fn to_fp(&self, a: &GradedQuotientElement) -> Vec<u64> {
        a.entries.iter().flat_map(|r| r.coords(&self.field)).collect()
    }

    pub fn from_fp(&self, v: &[u64]) -> GradedQuotientElement {
        let d = self.field.residue_degree();
        self.element(v.chunks(d).map(|c| ResidueElem::from_coords(c, &self.field)).collect())
    }

    /// The class with mixed-radix index `idx` (base `p` over `F_p` coordinates).
    pub fn element_at(&self, mut idx: u128) -> GradedQuotientElement {
        let p = self.field.p() as u128;
        let v: Vec<u64> = (0..self.dim_fp())
            .map(|_| {
                let d = (idx % p) as u64;
                idx /= p;
                d
            })
            .collect();
        self.from_fp(&v)
    }

    /// Every class, provided there are at most `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<GradedQuotientElement>> {
        let size = self.size();
        if size > cap as u128 {
            return Err(Error::CapExceeded { size, cap });
        }
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }

    /// The class of `X ∈ 𝔤_{x,r}`.
    pub fn class_of_lie(&self, m: &PadicMatrix) -> Result<GradedQuotientElement> {
        if !mp_membership(m, &self.x, self.r)? {
            return Err(Error::NotInFiltration(format!("not in g_(x,{})", crate::rational::format_q(&self.r))));
        }
        let entries = self
            .positions
            .iter()
            .map(|p| m.get(p.row, p.col).coeff_at(p.level))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.element(entries))
    }

    /// The class of `g ∈ G_{x,r}` in `G_{x,r:r+} ≅ 𝔤_{x,r:r+}`, via `g − 1`.
    pub fn class_of_group(&self, g: &PadicMatrix) -> Result<GradedQuotientElement> {
        self.class_of_lie(&g.add_scalar(&self.field.one().neg()))
    }

    /// Digit-representative lift `Σ [c_ij]·ϖ_E^level·E_ij`.
    pub fn lift(&self, a: &GradedQuotientElement) -> PadicMatrix {
        let mut m = PadicMatrix::zero(self.field, self.x.size());
        for (p, r) in self.positions.iter().zip(&a.entries) {
            m.set(p.row, p.col, self.field.monomial(p.level, *r));
        }
        m
    }

    /// The involution induced by dθ; needs a θ-fixed base point.
    pub fn theta_star(&self, a: &GradedQuotientElement) -> Result<GradedQuotientElement> {
        if !self.x.is_theta_fixed() {
            return Err(Error::NotThetaFixed);
        }
        self.check(a)?;
        self.class_of_lie(&dtheta(&self.lift(a)))
    }

    /// θ* as an `F_p`-matrix; column `k` is the image of the `k`-th basis vector.
    pub fn theta_star_matrix(&self) -> Result<Vec<Vec<u64>>> {
        let d = self.dim_fp();
        let mut m = vec![vec![0u64; d]; d];
        for k in 0..d {
            let mut v = vec![0u64; d];
            v[k] = 1;
            let img = self.to_fp(&self.theta_star(&self.from_fp(&v))?);
            for (row, val) in img.into_iter().enumerate() {
                m[row][k] = val;
            }
        }
        Ok(m)
    }
}
