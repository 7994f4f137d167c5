use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_field::ExtensionKind;
use crate::rational::{q, q_vec_string, qi, Q};

/// A point `(x₁, …, x_N)` of the standard apartment of `GL_N`, modulo the
/// all-ones direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApartmentPoint {
    #[serde(with = "q_vec_string")]
    pub coords: Vec<Q>,
}

impl ApartmentPoint {
    pub fn new(coords: Vec<Q>) -> Self {
        ApartmentPoint { coords }
    }

    pub fn origin(n: usize) -> Self {
        ApartmentPoint { coords: vec![qi(0); n] }
    }

    /// Barycenter of the Iwahori alcove: `x_i = −(i−1)/(eN)`.
    pub fn barycenter(n: usize, e: i64) -> Self {
        ApartmentPoint { coords: (0..n).map(|i| q(-(i as i64), e * n as i64)).collect() }
    }

    pub fn size(&self) -> usize {
        self.coords.len()
    }

    /// `x_i + x_{N+1−i}` is independent of `i`.
    pub fn is_theta_fixed(&self) -> bool {
        let n = self.size();
        let c = self.coords[0] + self.coords[n - 1];
        (0..n).all(|i| self.coords[i] + self.coords[n - 1 - i] == c)
    }

    /// Folded coordinates `f_i(x) = x_i − x_{N+1−i}` for `i = 1..⌊N/2⌋`.
    pub fn folded(&self) -> Vec<Q> {
        let n = self.size();
        (0..n / 2).map(|i| self.coords[i] - self.coords[n - 1 - i]).collect()
    }

    /// The θ-fixed point `(φ/2, [0], −rev(φ)/2)` with folded coordinates `φ`.
    pub fn from_folded(phi: &[Q], n: usize) -> Result<Self> {
        if phi.len() != n / 2 {
            return Err(Error::SizeMismatch { expected: n / 2, got: phi.len() });
        }
        let mut coords = vec![qi(0); n];
        for (i, &v) in phi.iter().enumerate() {
            coords[i] = v / qi(2);
            coords[n - 1 - i] = -v / qi(2);
        }
        Ok(ApartmentPoint { coords })
    }

    /// `x + c·(1, …, 1)`; represents the same point.
    pub fn translate(&self, c: Q) -> Self {
        ApartmentPoint { coords: self.coords.iter().map(|&v| v + c).collect() }
    }
}

impl std::fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::format_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A random rational vector with entries in `[-bound, bound]` on the grid
/// `(1/den)·Z`.
pub fn random_rational_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64, den: i64) -> Vec<Q> {
    (0..len).map(|_| q(rng.gen_range(-bound * den..=bound * den), den)).collect()
}

/// A point in the open simplex spanned by `vertices`, using random positive
/// integer barycentric weights.
pub fn random_simplex_point<R: Rng + ?Sized>(rng: &mut R, vertices: &[Vec<Q>]) -> Vec<Q> {
    let dim = vertices.first().map_or(0, |v| v.len());
    let weights: Vec<i64> = vertices.iter().map(|_| rng.gen_range(1..=64)).collect();
    let total: i64 = weights.iter().sum();
    (0..dim)
        .map(|k| {
            vertices
                .iter()
                .zip(&weights)
                .fold(qi(0), |acc, (v, &w)| acc + v[k] * qi(w))
                / qi(total)
        })
        .collect()
}

/// Vertices, in folded coordinates, of the θ-fixed part of the fundamental
/// alcove of `GL_N` over `E`: the simplex `c > φ₁ > … > φ_n > 0` with
/// `c = 1`, or `1/2` for ramified `E`.
pub fn theta_fixed_gl_vertices(n: usize, ext: ExtensionKind) -> Vec<Vec<Q>> {
    let c = if ext == ExtensionKind::Ramified { q(1, 2) } else { qi(1) };
    let dim = n / 2;
    (0..=dim)
        .map(|k| (0..dim).map(|i| if i < k { c } else { qi(0) }).collect())
        .collect()
}

/// A random θ-fixed point in the open fundamental alcove of `GL_N` over `E`.
pub fn random_theta_fixed_point<R: Rng + ?Sized>(rng: &mut R, n: usize, ext: ExtensionKind) -> ApartmentPoint {
    let phi = random_simplex_point(rng, &theta_fixed_gl_vertices(n, ext));
    ApartmentPoint::from_folded(&phi, n).expect("folded length matches")
}
