use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{ApartmentPoint, GroupType};
use crate::error::{Error, Result};
use crate::local_field::ExtensionKind;
use crate::rational::{format_q, q, q_string, qi, Q};

/// An affine functional `x ↦ Σ gradient_i·x_i + constant` on the apartment
/// of `GL_N`. Roots of θ-fixed groups are written in `f_i = e_i − e_{N+1−i}`
/// and expanded into the `e_i` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineRoot {
    pub gradient: Vec<i64>,
    #[serde(with = "q_string")]
    pub constant: Q,
    pub label: String,
}

impl AffineRoot {
    pub fn eval(&self, x: &ApartmentPoint) -> Q {
        self.gradient
            .iter()
            .zip(&x.coords)
            .fold(self.constant, |acc, (&g, &v)| acc + qi(g) * v)
    }

    /// Restriction to θ-fixed points, as coefficients on the folded
    /// coordinates `φ_i = f_i(x)` plus the constant.
    pub fn restrict_folded(&self) -> (Vec<Q>, Q) {
        let n = self.gradient.len();
        let coeffs = (0..n / 2)
            .map(|i| q(self.gradient[i] - self.gradient[n - 1 - i], 2))
            .collect();
        (coeffs, self.constant)
    }
}

impl Ord for AffineRoot {
    /// Descending lexicographic order on the gradient, then the constant.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .gradient
            .cmp(&self.gradient)
            .then_with(|| other.constant.cmp(&self.constant))
    }
}

impl PartialOrd for AffineRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label)
    }
}

fn with_constant(mut label: String, c: Q) -> String {
    if c > qi(0) {
        label.push_str(&format!(" + {}", format_q(&c)));
    } else if c < qi(0) {
        label.push_str(&format!(" - {}", format_q(&-c)));
    }
    label
}

fn term_label(coef: i64, sym: char, idx: usize, first: bool) -> String {
    let sign = if coef < 0 { "-" } else if first { "" } else { "+" };
    let mag = coef.abs();
    let body = if mag == 1 { format!("{sym}{idx}") } else { format!("{mag}{sym}{idx}") };
    if first { format!("{sign}{body}") } else { format!(" {sign} {body}") }
}

/// `Σ coef·e_idx + c` (1-based indices).
fn e_root(n: usize, terms: &[(i64, usize)], c: Q) -> AffineRoot {
    let mut gradient = vec![0; n];
    let mut label = String::new();
    for (k, &(coef, idx)) in terms.iter().enumerate() {
        gradient[idx - 1] += coef;
        label.push_str(&term_label(coef, 'e', idx, k == 0));
    }
    AffineRoot { gradient, constant: c, label: with_constant(label, c) }
}

/// `Σ coef·f_idx + c` with `f_i = e_i − e_{N+1−i}`; indices beyond `⌊N/2⌋`
/// denote the zero functional and are dropped.
fn f_root(n: usize, terms: &[(i64, usize)], c: Q) -> AffineRoot {
    let mut gradient = vec![0; n];
    let mut label = String::new();
    let mut first = true;
    for &(coef, idx) in terms {
        if idx > n / 2 {
            continue;
        }
        gradient[idx - 1] += coef;
        gradient[n - idx] -= coef;
        label.push_str(&term_label(coef, 'f', idx, first));
        first = false;
    }
    AffineRoot { gradient, constant: c, label: with_constant(label, c) }
}

/// Simple affine roots `Π_G` of the groups on the standard apartment.
pub fn simple_affine_roots(g: &GroupType) -> Result<Vec<AffineRoot>> {
    let size = g.matrix_size();
    let unsupported = |why: &str| Err(Error::UnsupportedGroup(format!("{g}: {why}")));
    let mut roots = match *g {
        GroupType::Gl { n, ext } => {
            if n < 2 {
                return unsupported("no affine roots below rank 2");
            }
            let c = if ext == ExtensionKind::Ramified { q(1, 2) } else { qi(1) };
            let mut v: Vec<_> = (1..n).map(|i| e_root(n, &[(1, i), (-1, i + 1)], qi(0))).collect();
            v.push(e_root(n, &[(1, n), (-1, 1)], c));
            v
        }
        GroupType::SoEven { .. } => return unsupported("root table not modelled"),
        _ => {
            let n = size / 2;
            if n == 0 {
                return unsupported("rank 0");
            }
            let mut v: Vec<_> = (1..n).map(|i| f_root(size, &[(1, i), (-1, i + 1)], qi(0))).collect();
            let (last, affine) = match *g {
                GroupType::SoOdd { .. } => (f_root(size, &[(1, n)], qi(0)), f_root(size, &[(-1, 1), (-1, 2)], qi(1))),
                GroupType::Sp { .. } => (f_root(size, &[(2, n)], qi(0)), f_root(size, &[(-2, 1)], qi(1))),
                GroupType::U { ext: ExtensionKind::Ramified, .. } if size % 2 == 0 => {
                    (f_root(size, &[(2, n)], qi(0)), f_root(size, &[(-1, 1), (-1, 2)], q(1, 2)))
                }
                GroupType::U { ext: ExtensionKind::Ramified, .. } => {
                    (f_root(size, &[(1, n)], q(1, 4)), f_root(size, &[(-2, 1)], qi(0)))
                }
                GroupType::U { .. } if size % 2 == 0 => (f_root(size, &[(2, n)], qi(0)), f_root(size, &[(-2, 1)], qi(1))),
                GroupType::U { .. } => (f_root(size, &[(1, n)], qi(0)), f_root(size, &[(-2, 1)], qi(1))),
                _ => unreachable!(),
            };
            v.push(last);
            v.push(affine);
            v
        }
    };
    roots.sort();
    Ok(roots)
}

/// Every simple affine root is strictly positive at `x`.
pub fn alcove_contains(x: &ApartmentPoint, g: &GroupType) -> Result<bool> {
    if x.size() != g.matrix_size() {
        return Err(Error::SizeMismatch { expected: g.matrix_size(), got: x.size() });
    }
    Ok(simple_affine_roots(g)?.iter().all(|a| a.eval(x) > qi(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(g: GroupType) -> Vec<String> {
        simple_affine_roots(&g).unwrap().into_iter().map(|r| r.label).collect()
    }

    #[test]
    fn gl3_table() {
        assert_eq!(
            labels(GroupType::Gl { n: 3, ext: ExtensionKind::Trivial }),
            ["e1 - e2", "e2 - e3", "e3 - e1 + 1"]
        );
        assert_eq!(
            labels(GroupType::Gl { n: 2, ext: ExtensionKind::Ramified }),
            ["e1 - e2", "e2 - e1 + 1/2"]
        );
    }

    #[test]
    fn sp4_table() {
        assert_eq!(labels(GroupType::Sp { n: 2 }), ["f1 - f2", "2f2", "-2f1 + 1"]);
        let r = simple_affine_roots(&GroupType::Sp { n: 2 }).unwrap();
        assert_eq!(r[0].gradient, vec![1, -1, 1, -1]);
    }

    #[test]
    fn ramified_unitary_tables() {
        let u3 = GroupType::U { n: 3, ext: ExtensionKind::Ramified };
        assert_eq!(labels(u3), ["f1 + 1/4", "-2f1"]);
        let u4 = GroupType::U { n: 4, ext: ExtensionKind::Ramified };
        assert_eq!(labels(u4), ["f1 - f2", "2f2", "-f1 - f2 + 1/2"]);
    }

    #[test]
    fn small_rank_tables() {
        assert_eq!(labels(GroupType::SoOdd { n: 1 }), ["f1", "-f1 + 1"]);
        assert_eq!(labels(GroupType::SoOdd { n: 3 }), ["f1 - f2", "f2 - f3", "f3", "-f1 - f2 + 1"]);
        assert!(simple_affine_roots(&GroupType::SoEven { n: 2 }).is_err());
        assert!(simple_affine_roots(&GroupType::Gl { n: 1, ext: ExtensionKind::Trivial }).is_err());
    }

    #[test]
    fn gl2_point() {
        let g = GroupType::Gl { n: 2, ext: ExtensionKind::Trivial };
        let x = ApartmentPoint::new(vec![q(1, 4), qi(0)]);
        assert!(alcove_contains(&x, &g).unwrap());
        let wall = ApartmentPoint::new(vec![qi(0), qi(0)]);
        assert!(!alcove_contains(&wall, &g).unwrap());
        for n in 2..6 {
            let g = GroupType::Gl { n, ext: ExtensionKind::Trivial };
            assert!(alcove_contains(&ApartmentPoint::barycenter(n, 1), &g).unwrap());
            let g = GroupType::Gl { n, ext: ExtensionKind::Ramified };
            assert!(alcove_contains(&ApartmentPoint::barycenter(n, 2), &g).unwrap());
        }
    }
}
