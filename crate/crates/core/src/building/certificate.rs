use serde::{Deserialize, Serialize};

use super::{simple_affine_roots, AffineRoot, EndoscopicCase};
use crate::error::{Error, Result};
use crate::rational::{format_q, opt_q_string, q_string, q_vec_string, qi, Q};

/// `α|_{θ-fixed} = Σ coefficients_j·β_j + constant` with all terms ≥ 0,
/// where the `β_j` are the simple affine roots of `G_θ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCertificate {
    pub root: AffineRoot,
    #[serde(with = "q_vec_string")]
    pub restricted: Vec<Q>,
    #[serde(with = "q_string")]
    pub restricted_constant: Q,
    #[serde(with = "q_vec_string")]
    pub coefficients: Vec<Q>,
    #[serde(with = "q_string")]
    pub constant: Q,
}

/// Certificates for every simple affine root of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionCertificate {
    pub case: EndoscopicCase,
    pub g_theta_roots: Vec<AffineRoot>,
    pub entries: Vec<RootCertificate>,
}

/// Outcome of the search for one root, kept even when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateAttempt {
    pub root: AffineRoot,
    pub certificate: Option<RootCertificate>,
    /// Largest achievable constant when no certificate exists.
    #[serde(with = "opt_q_string")]
    pub best_constant: Option<Q>,
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != qi(0)) else { continue };
        m.swap(row, p);
        let inv = qi(1) / m[row][col];
        for v in m[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != qi(0) {
                let k = m[r][col];
                let pivot_row = m[row].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                    *v -= k * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

struct Restricted {
    lin: Vec<Vec<Q>>,
    consts: Vec<Q>,
}

fn restrict_all(roots: &[AffineRoot]) -> Restricted {
    let (lin, consts) = roots.iter().map(|r| r.restrict_folded()).unzip();
    Restricted { lin, consts }
}

/// Searches for a nonnegative expression of `alpha` restricted to θ-fixed
/// points in terms of `theta_roots`.
pub fn certify_root(alpha: &AffineRoot, theta_roots: &[AffineRoot]) -> Result<CertificateAttempt> {
    let Restricted { lin, consts } = restrict_all(theta_roots);
    let (a_lin, a_const) = alpha.restrict_folded();
    let dim = a_lin.len();
    let m = lin.len();
    // Rows: folded coordinates; columns: roots, then the target.
    let mut mat: Vec<Vec<Q>> = (0..dim)
        .map(|k| {
            let mut row: Vec<Q> = lin.iter().map(|b| b[k]).collect();
            row.push(a_lin[k]);
            row
        })
        .collect();
    let pivots = rref(&mut mat, m);
    if pivots.len() != dim || mat.iter().any(|r| r.len() != m + 1) {
        return Err(Error::CertificateSearch("root system is not a simplex".into()));
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::CertificateSearch("expected a one-dimensional relation".into()));
    }
    let fcol = free[0];
    let mut particular = vec![qi(0); m];
    let mut null = vec![qi(0); m];
    null[fcol] = qi(1);
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = mat[r][m];
        null[pc] = -mat[r][fcol];
    }
    if null.iter().all(|v| *v <= qi(0)) {
        null.iter_mut().for_each(|v| *v = -*v);
    }
    if null.iter().any(|v| *v <= qi(0)) {
        return Err(Error::CertificateSearch("relation among roots is not positive".into()));
    }
    let kappa: Q = null.iter().zip(&consts).map(|(a, b)| *a * *b).sum();
    let base: Q = a_const - particular.iter().zip(&consts).map(|(a, b)| *a * *b).sum::<Q>();
    let t_min = particular
        .iter()
        .zip(&null)
        .map(|(c, mm)| -*c / *mm)
        .max()
        .expect("at least one root");
    let mut t = t_min;
    if kappa < qi(0) {
        t = t.max(base / kappa);
    }
    let coefficients: Vec<Q> = particular.iter().zip(&null).map(|(c, mm)| *c + t * *mm).collect();
    let constant = base - t * kappa;
    let cert = RootCertificate {
        root: alpha.clone(),
        restricted: a_lin,
        restricted_constant: a_const,
        coefficients,
        constant,
    };
    if cert.validate(theta_roots) {
        Ok(CertificateAttempt { root: alpha.clone(), certificate: Some(cert), best_constant: None })
    } else {
        Ok(CertificateAttempt { root: alpha.clone(), certificate: None, best_constant: Some(constant) })
    }
}

impl RootCertificate {
    /// Recomputes the identity from scratch and checks signs and strictness.
    pub fn validate(&self, theta_roots: &[AffineRoot]) -> bool {
        if self.coefficients.len() != theta_roots.len() {
            return false;
        }
        let (a_lin, a_const) = self.root.restrict_folded();
        let mut lin = vec![qi(0); a_lin.len()];
        let mut c = self.constant;
        for (coef, beta) in self.coefficients.iter().zip(theta_roots) {
            let (b_lin, b_const) = beta.restrict_folded();
            if b_lin.len() != lin.len() {
                return false;
            }
            for (l, b) in lin.iter_mut().zip(b_lin) {
                *l += *coef * b;
            }
            c += *coef * b_const;
        }
        let nonneg = self.constant >= qi(0) && self.coefficients.iter().all(|v| *v >= qi(0));
        let strict = self.constant > qi(0) || self.coefficients.iter().any(|v| *v > qi(0));
        lin == a_lin && c == a_const && nonneg && strict
    }

    /// Human-readable form, e.g. `e1 - e2 = 1/2·(2f1) + 0`.
    pub fn describe(&self, theta_roots: &[AffineRoot]) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .zip(theta_roots)
            .filter(|(c, _)| **c != qi(0))
            .map(|(c, b)| format!("{}·({})", format_q(c), b.label))
            .collect();
        format!("{} = {} + {}", self.root.label, terms.join(" + "), format_q(&self.constant))
    }
}

/// Certificate search for every simple affine root of `G` in the case.
pub fn certificate_attempts(case: &EndoscopicCase) -> Result<(Vec<AffineRoot>, Vec<CertificateAttempt>)> {
    let g_roots = simple_affine_roots(&case.g())?;
    let t_roots = simple_affine_roots(&case.g_theta())?;
    let attempts = g_roots
        .iter()
        .map(|a| certify_root(a, &t_roots))
        .collect::<Result<Vec<_>>>()?;
    Ok((t_roots, attempts))
}

/// Certificates showing that the fundamental alcove of `G_θ` lies in that
/// of `G`. Fails with [`Error::CertificateSearch`] naming the first root
/// that admits none.
pub fn inclusion_certificate(case: &EndoscopicCase) -> Result<InclusionCertificate> {
    let (g_theta_roots, attempts) = certificate_attempts(case)?;
    let mut entries = Vec::with_capacity(attempts.len());
    for att in attempts {
        match att.certificate {
            Some(c) => entries.push(c),
            None => {
                return Err(Error::CertificateSearch(format!(
                    "{case}: no nonnegative expression for {} (best constant {})",
                    att.root.label,
                    att.best_constant.map(|c| format_q(&c)).unwrap_or_default()
                )))
            }
        }
    }
    Ok(InclusionCertificate { case: *case, g_theta_roots, entries })
}

impl InclusionCertificate {
    pub fn validate(&self) -> bool {
        let Ok(g_roots) = simple_affine_roots(&self.case.g()) else { return false };
        let Ok(t_roots) = simple_affine_roots(&self.case.g_theta()) else { return false };
        t_roots == self.g_theta_roots
            && g_roots.len() == self.entries.len()
            && g_roots.iter().zip(&self.entries).all(|(a, c)| &c.root == a && c.validate(&t_roots))
    }
}

/// Vertices of the alcove cut out by `roots` on the folded coordinates
/// (each vertex is where all roots but one vanish).
pub fn alcove_vertices(roots: &[AffineRoot]) -> Result<Vec<Vec<Q>>> {
    let Restricted { lin, consts } = restrict_all(roots);
    let dim = lin.first().map_or(0, |v| v.len());
    if roots.len() != dim + 1 {
        return Err(Error::CertificateSearch("alcove is not a simplex".into()));
    }
    let mut out = Vec::with_capacity(roots.len());
    for skip in 0..roots.len() {
        let mut mat: Vec<Vec<Q>> = (0..roots.len())
            .filter(|&j| j != skip)
            .map(|j| {
                let mut row = lin[j].clone();
                row.push(-consts[j]);
                row
            })
            .collect();
        let pivots = rref(&mut mat, dim);
        if pivots.len() != dim {
            return Err(Error::CertificateSearch("degenerate alcove".into()));
        }
        let mut v = vec![qi(0); dim];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = mat[r][dim];
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::ExtensionKind;
    use crate::rational::q;

    #[test]
    fn case_two_middle_root() {
        let case = EndoscopicCase::SymplecticOdd { n: 2 };
        let cert = inclusion_certificate(&case).unwrap();
        assert!(cert.validate());
        let mid = cert.entries.iter().find(|c| c.root.label == "e2 - e3").unwrap();
        assert_eq!(mid.coefficients, vec![qi(0), q(1, 2), qi(0)]);
        assert_eq!(mid.constant, qi(0));
    }

    #[test]
    fn vertices_of_sp4() {
        let roots = simple_affine_roots(&crate::building::GroupType::Sp { n: 2 }).unwrap();
        let mut v = alcove_vertices(&roots).unwrap();
        v.sort();
        assert_eq!(v, vec![vec![qi(0), qi(0)], vec![q(1, 2), qi(0)], vec![q(1, 2), q(1, 2)]]);
    }

    #[test]
    fn unramified_unitary_cases_certify() {
        for n in 2..8 {
            let case = EndoscopicCase::Unitary { n, ext: ExtensionKind::Unramified };
            assert!(inclusion_certificate(&case).unwrap().validate(), "{case}");
        }
    }
}
