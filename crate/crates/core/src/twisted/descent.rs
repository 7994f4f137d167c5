use serde::Serialize;

use super::twisted_conjugate;
use crate::building::{mp_depth, mp_lattice, mp_membership, mp_theta_membership, ApartmentPoint};
use crate::cayley::{cayley, cayley_inv};
use crate::error::{Error, Result};
use crate::lattice::MatrixLattice;
use crate::matrix::{decompose_dtheta, theta, PadicMatrix};
use crate::rational::{q, q_string, qi, Q};

/// One application of the descent: `y_step = c(X₂/2)` for the anti part
/// `X₂` of `X = c⁻¹(g)`, and `g_next = y_step⁻¹·g·θ(y_step)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub y_step: PadicMatrix,
    pub g_next: PadicMatrix,
    pub fixed_part: PadicMatrix,
    pub anti_part: PadicMatrix,
}

fn check_inputs(g: &PadicMatrix, x: &ApartmentPoint, r: Q) -> Result<PadicMatrix> {
    if g.size() != x.size() {
        return Err(Error::SizeMismatch { expected: x.size(), got: g.size() });
    }
    if !x.is_theta_fixed() {
        return Err(Error::NotThetaFixed);
    }
    if r <= qi(0) {
        return Err(Error::Config("descent needs r > 0".into()));
    }
    let big_x = cayley_inv(g)?;
    if !mp_membership(&big_x, x, r)? {
        return Err(Error::NotInFiltration("g is not in G_(x,r)".into()));
    }
    Ok(big_x)
}

pub fn descent_step(g: &PadicMatrix, x: &ApartmentPoint, r: Q) -> Result<DescentStep> {
    let big_x = check_inputs(g, x, r)?;
    step_from(g, &big_x)
}

fn step_from(g: &PadicMatrix, big_x: &PadicMatrix) -> Result<DescentStep> {
    let dec = decompose_dtheta(big_x);
    let y = dec.anti_part.scale(&g.field().from_ratio(1, 2));
    let y_step = cayley(&y)?;
    let g_next = cayley(&-&y)?.try_mul(g)?.try_mul(&theta(&y_step)?)?;
    Ok(DescentStep { y_step, g_next, fixed_part: dec.fixed_part, anti_part: dec.anti_part })
}

/// One row of a [`DescentTrace`]: the decomposition entering step `k`, with
/// `anti_part ∈ 𝔤_{x,r}^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStepRecord {
    pub k: usize,
    pub fixed_part: PadicMatrix,
    pub anti_part: PadicMatrix,
    /// Depth of the anti part as far as the known digits show.
    #[serde(with = "q_string")]
    pub anti_depth: Q,
    /// Depth of the lattice `𝔤_{x,r}^k` containing the anti part.
    #[serde(with = "q_string")]
    pub guaranteed_depth: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentTrace {
    pub x: ApartmentPoint,
    #[serde(with = "q_string")]
    pub r: Q,
    #[serde(with = "q_string")]
    pub target: Q,
    /// `y` with `y·g·θ(y)⁻¹ = final_element`.
    pub conjugator: PadicMatrix,
    pub final_element: PadicMatrix,
    pub iterations: Vec<DescentStepRecord>,
    #[serde(with = "q_string")]
    pub residual_anti_depth: Q,
}

/// A violated invariant; the descent is a theorem, so this indicates a bug
/// or a precision underrun.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalsificationRecord {
    pub step: usize,
    pub reason: String,
    pub x: ApartmentPoint,
    #[serde(with = "q_string")]
    pub r: Q,
    pub g: PadicMatrix,
    pub precision: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum DescentOutcome {
    Reached(DescentTrace),
    Falsified(FalsificationRecord),
}

/// Cap on descent iterations: `2(e+1)N·⌈target⌉`.
fn step_cap(e: i64, n: usize, target: Q) -> usize {
    (2 * (e as usize + 1) * n) * target.ceil().to_integer().max(1) as usize
}

/// Iterates [`descent_step`] until the anti part of `c⁻¹` of the current
/// element has depth at least `target`.
///
/// `target` must satisfy `target ≤ precision − 2r` (valuation units);
/// otherwise the run is refused with a precision error. At every step the
/// new anti part must lie in the next power `𝔤_{x,r}^{k+1}` and the fixed
/// part must be unchanged modulo it; the lattice depth must grow by at
/// least `1/e` over every `(e+1)N` steps.
pub fn twisted_descent(g: &PadicMatrix, x: &ApartmentPoint, r: Q, target: Q) -> Result<DescentOutcome> {
    let f = *g.field();
    let mut big_x = check_inputs(g, x, r)?;
    if target > f.precision_val() - qi(2) * r {
        return Err(Error::precision(format!(
            "target {} exceeds the precision budget {} - 2r",
            crate::rational::format_q(&target),
            crate::rational::format_q(&f.precision_val())
        )));
    }
    let n = g.size();
    let e = f.e();
    let block = (e as usize + 1) * n;
    let cap = step_cap(e, n, target);
    let falsified = |step: usize, reason: String| {
        Ok(DescentOutcome::Falsified(FalsificationRecord {
            step,
            reason,
            x: x.clone(),
            r,
            g: g.clone(),
            precision: f.precision(),
        }))
    };

    let base = mp_lattice(f, x, r, false);
    let mut powers: Vec<MatrixLattice> = vec![base.clone()];
    let mut depths: Vec<Q> = vec![base.depth(x)];
    let mut cur = g.clone();
    let mut conj = PadicMatrix::identity(f, n);
    let mut iterations = Vec::new();
    let mut k = 1usize;
    loop {
        let dec = decompose_dtheta(&big_x);
        let anti_depth = mp_depth(&dec.anti_part, x);
        iterations.push(DescentStepRecord {
            k,
            fixed_part: dec.fixed_part.clone(),
            anti_part: dec.anti_part.clone(),
            anti_depth,
            guaranteed_depth: depths[k - 1],
        });
        if anti_depth >= target {
            return Ok(DescentOutcome::Reached(DescentTrace {
                x: x.clone(),
                r,
                target,
                conjugator: conj,
                final_element: cur,
                iterations,
                residual_anti_depth: anti_depth,
            }));
        }
        if dec.anti_part.is_zero() {
            return Err(Error::precision("anti part vanished to precision below the target depth"));
        }
        if k > cap {
            return falsified(k, format!("no convergence within {cap} steps"));
        }
        let step = step_from(&cur, &big_x)?;
        let next_x = cayley_inv(&step.g_next)?;
        let next = decompose_dtheta(&next_x);
        let lattice = powers[k - 1].product(&base)?;
        let depth = lattice.depth(x);
        if depth < depths[k - 1] {
            return falsified(k, "lattice depth decreased".into());
        }
        if k + 1 > block && depth < depths[k - block] + q(1, e) {
            return falsified(k, format!("depth gain below 1/{e} over {block} steps"));
        }
        if !lattice.contains(&next.anti_part)? {
            return falsified(k, format!("anti part not in the {}-th product lattice", k + 1));
        }
        if !lattice.contains(&next.fixed_part.try_sub(&dec.fixed_part)?)? {
            return falsified(k, "fixed part moved outside the next product lattice".into());
        }
        powers.push(lattice);
        depths.push(depth);
        conj = cayley(&step.anti_part.scale(&f.from_ratio(-1, 2)))?.try_mul(&conj)?;
        cur = step.g_next;
        big_x = next_x;
        k += 1;
    }
}

/// Independent reconstruction of a trace: recomputes `y·g·θ(y)⁻¹` from the
/// stored conjugator and checks `y ∈ G_{x,r}`, that the fixed part of its
/// Cayley preimage lies in `𝔤_{θ,x,r}`, and that the anti part has depth at
/// least the target.
pub fn verify_descent(g: &PadicMatrix, trace: &DescentTrace) -> Result<bool> {
    let x = &trace.x;
    let f = *g.field();
    let y_minus_one = trace.conjugator.add_scalar(&f.one().neg());
    if !mp_membership(&y_minus_one, x, trace.r)? {
        return Ok(false);
    }
    let h = twisted_conjugate(&trace.conjugator, g)?;
    if !h.agrees_with(&trace.final_element) {
        return Ok(false);
    }
    let dec = decompose_dtheta(&cayley_inv(&h)?);
    Ok(mp_theta_membership(&dec.fixed_part, x, trace.r)? && mp_depth(&dec.anti_part, x) >= trace.target)
}
