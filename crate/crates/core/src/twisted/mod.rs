//! θ-twisted conjugation `(y, g) ↦ y·g·θ(y)⁻¹`, the descent to θ-fixed
//! elements, θ-orbits on graded quotients, the norm correspondence on
//! diagonal data, and the residual-characteristic hypothesis table.

mod coset;
mod descent;
mod hypothesis;
mod norm;

pub use coset::{
    brute_force_orbit, coset_theta_equiv, descent_pair, image_one_minus_theta, partition_check,
    quotient_theta_class, DescentPairDescriptor, PartitionReport, ThetaAction,
};
pub use descent::{
    descent_step, twisted_descent, verify_descent, DescentOutcome, DescentStep, DescentStepRecord,
    DescentTrace, FalsificationRecord,
};
pub use hypothesis::{hypothesis_bound, hypothesis_check};
pub use norm::{norm_multiset_check, norm_values, NormData};

use crate::error::Result;
use crate::matrix::{theta, PadicMatrix};

/// `y·g·θ(y)⁻¹`, the body of `y·(g⋊θ)·y⁻¹`.
pub fn twisted_conjugate(y: &PadicMatrix, g: &PadicMatrix) -> Result<PadicMatrix> {
    y.try_mul(g)?.right_div(&theta(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::{ExtensionKind, LocalField};
    use crate::sampling::{random_gl_integral, rng_for};

    #[test]
    fn action_law() {
        let f = LocalField::new(5, ExtensionKind::Unramified, 8).unwrap();
        let mut rng = rng_for(3, 0);
        let (y1, y2, g) = (
            random_gl_integral(&f, 3, &mut rng),
            random_gl_integral(&f, 3, &mut rng),
            random_gl_integral(&f, 3, &mut rng),
        );
        assert!(twisted_conjugate(&PadicMatrix::identity(f, 3), &g).unwrap().agrees_with(&g));
        let lhs = twisted_conjugate(&y1, &twisted_conjugate(&y2, &g).unwrap()).unwrap();
        let rhs = twisted_conjugate(&(&y1 * &y2), &g).unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
}
