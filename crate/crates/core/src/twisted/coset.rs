use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::twisted_conjugate;
use crate::building::{ApartmentPoint, GradedQuotient, GradedQuotientElement};
use crate::cayley::cayley;
use crate::error::{Error, Result};
use crate::fp;
use crate::rational::{q_string, Q};

/// θ* on a graded quotient as an `F_p`-matrix, with `1 − θ*` cached.
#[derive(Debug, Clone)]
pub struct ThetaAction {
    pub theta: Vec<Vec<u64>>,
    pub one_minus: Vec<Vec<u64>>,
    p: u64,
}

impl ThetaAction {
    pub fn new(quot: &GradedQuotient) -> Result<Self> {
        let p = quot.field().p();
        let theta = quot.theta_star_matrix()?;
        let one_minus = fp::affine_identity(&theta, 1, -1, p);
        Ok(ThetaAction { theta, one_minus, p })
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        fp::mat_vec(&self.theta, v, self.p)
    }

    /// `dim_{F_p} Image(1 − θ*)`.
    pub fn image_rank(&self) -> usize {
        fp::rank(&self.one_minus, self.p)
    }

    /// `dim_{F_p} Fixed(θ*)`.
    pub fn fixed_rank(&self) -> usize {
        self.theta.len() - self.image_rank()
    }
}

/// The canonical representative `(c + θ*c)/2` of the θ-twisted orbit of `c`.
pub fn quotient_theta_class(quot: &GradedQuotient, c: &GradedQuotientElement) -> Result<GradedQuotientElement> {
    let tc = quot.theta_star(c)?;
    let s = quot.add(c, &tc)?;
    let half = (quot.field().p() as i64 + 1) / 2;
    Ok(quot.scale(&s, half))
}

/// `c1 − c2 ∈ Image(1 − θ*)`, decided by solving `(1 − θ*)·w = c1 − c2`.
pub fn coset_theta_equiv(
    quot: &GradedQuotient,
    c1: &GradedQuotientElement,
    c2: &GradedQuotientElement,
) -> Result<bool> {
    let act = ThetaAction::new(quot)?;
    equiv_with(&act, quot, c1, c2)
}

fn equiv_with(
    act: &ThetaAction,
    quot: &GradedQuotient,
    c1: &GradedQuotientElement,
    c2: &GradedQuotientElement,
) -> Result<bool> {
    let d = quot.to_fp(&quot.sub(c1, c2)?);
    Ok(fp::solve(&act.one_minus, &d, act.p).is_some())
}

/// Every element of `Image(1 − θ*)`.
pub fn image_one_minus_theta(quot: &GradedQuotient, cap: u64) -> Result<Vec<GradedQuotientElement>> {
    let act = ThetaAction::new(quot)?;
    let mut seen = BTreeSet::new();
    for w in quot.enumerate(cap)? {
        seen.insert(fp::mat_vec(&act.one_minus, &quot.to_fp(&w), act.p));
    }
    Ok(seen.into_iter().map(|v| quot.from_fp(&v)).collect())
}

/// The orbit of the class of `g = c(lift(c0))` under twisted conjugation by
/// `y = c(lift(w))` for every class `w`, computed on matrices.
pub fn brute_force_orbit(
    quot: &GradedQuotient,
    c0: &GradedQuotientElement,
    cap: u64,
) -> Result<BTreeSet<Vec<u64>>> {
    let g = cayley(&quot.lift(c0))?;
    let mut out = BTreeSet::new();
    for w in quot.enumerate(cap)? {
        let y = cayley(&quot.lift(&w))?;
        let h = twisted_conjugate(&y, &g)?;
        out.insert(quot.to_fp(&quot.class_of_group(&h)?));
    }
    Ok(out)
}

/// Counts and checks for the decomposition of a graded quotient into
/// θ-twisted orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub classes: u64,
    pub fixed_classes: u64,
    pub image_size: u64,
    /// Orbit size → number of orbits of that size.
    pub orbit_sizes: BTreeMap<u64, u64>,
    /// θ*∘θ* = 1.
    pub involution: bool,
    /// (1 + θ*)(1 − θ*) = 0.
    pub projector_identity: bool,
    /// Image(1 − θ*) ∩ Fixed(θ*) = {0}.
    pub disjoint: bool,
    /// Every class is equivalent to exactly one fixed class.
    pub transversal: bool,
    /// #fixed × orbit size = #classes.
    pub orbit_stabilizer: bool,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.involution && self.projector_identity && self.disjoint && self.transversal && self.orbit_stabilizer
    }
}

pub fn partition_check(quot: &GradedQuotient, cap: u64) -> Result<PartitionReport> {
    let act = ThetaAction::new(quot)?;
    let p = act.p;
    let all = quot.enumerate(cap)?;
    let d = quot.dim_fp();
    let identity = fp::affine_identity(&vec![vec![0; d]; d], 1, 0, p);
    let involution = fp::mat_mul(&act.theta, &act.theta, p) == identity;
    let one_plus = fp::affine_identity(&act.theta, 1, 1, p);
    let projector_identity = fp::mat_mul(&one_plus, &act.one_minus, p).iter().flatten().all(|&v| v == 0);

    let vecs: Vec<Vec<u64>> = all.iter().map(|c| quot.to_fp(c)).collect();
    let fixed: Vec<&Vec<u64>> = vecs.iter().filter(|v| act.apply(v) == **v).collect();
    let image: BTreeSet<Vec<u64>> = vecs.iter().map(|v| fp::mat_vec(&act.one_minus, v, p)).collect();
    let zero = vec![0u64; d];
    let disjoint = fixed.iter().all(|f| **f == zero || !image.contains(*f));

    // Each class against its canonical representative, and fixed classes
    // pairwise.
    let mut orbits: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut transversal = true;
    for c in &all {
        let rep = quotient_theta_class(quot, c)?;
        let rv = quot.to_fp(&rep);
        if act.apply(&rv) != rv || !equiv_with(&act, quot, c, &rep)? {
            transversal = false;
        }
        *orbits.entry(rv).or_default() += 1;
    }
    for (i, a) in fixed.iter().enumerate() {
        for b in fixed.iter().skip(i + 1) {
            if equiv_with(&act, quot, &quot.from_fp(a), &quot.from_fp(b))? {
                transversal = false;
            }
        }
    }
    let mut orbit_sizes = BTreeMap::new();
    for size in orbits.values() {
        *orbit_sizes.entry(*size).or_default() += 1;
    }
    let classes = all.len() as u64;
    let fixed_classes = fixed.len() as u64;
    let image_size = image.len() as u64;
    let orbit_stabilizer = orbit_sizes.len() == 1
        && orbits.len() as u64 == fixed_classes
        && fixed_classes * image_size == classes;
    Ok(PartitionReport {
        classes,
        fixed_classes,
        image_size,
        orbit_sizes,
        involution,
        projector_identity,
        disjoint,
        transversal,
        orbit_stabilizer,
    })
}

/// The matched pair of normalized characteristic functions attached to a
/// θ*-fixed class `[h]`: `vol(G_{θ,x,r})⁻¹·1_[h]` on the fixed-point side and
/// `vol(G_{x,r})⁻¹·Σ 1_[g]⋊θ` over the classes `[g] ∼_θ [h]`. Volumes are
/// kept as symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentPairDescriptor {
    pub x: ApartmentPoint,
    #[serde(with = "q_string")]
    pub r: Q,
    pub h_class: GradedQuotientElement,
    pub h_side_normalizer: String,
    pub g_side_classes: Vec<GradedQuotientElement>,
    pub g_side_normalizer: String,
    /// `h_class = 0`: the pair of indicator functions of the full filtration
    /// subgroups.
    pub full_filtration_pair: bool,
}

pub fn descent_pair(
    quot: &GradedQuotient,
    h_class: &GradedQuotientElement,
    cap: u64,
) -> Result<DescentPairDescriptor> {
    if quot.theta_star(h_class)? != *h_class {
        return Err(Error::NotFixedClass);
    }
    let act = ThetaAction::new(quot)?;
    let mut g_side_classes = Vec::new();
    for c in quot.enumerate(cap)? {
        if equiv_with(&act, quot, &c, h_class)? {
            g_side_classes.push(c);
        }
    }
    Ok(DescentPairDescriptor {
        x: quot.point().clone(),
        r: quot.level(),
        h_class: h_class.clone(),
        h_side_normalizer: "vol(G_theta_x_r)^-1".into(),
        g_side_classes,
        g_side_normalizer: "vol(G_x_r)^-1".into(),
        full_filtration_pair: h_class.entries.iter().all(|e| e.is_zero()),
    })
}
