//! The standard apartment of `GL_N(E₀)`: Moy–Prasad lattices, affine root
//! tables and alcoves of the classical subgroups, alcove-inclusion
//! certificates, and the finite graded quotients `𝔤_{x,r:r+}`.

mod apartment;
mod certificate;
mod filtration;
mod group;
mod quotient;
mod roots;

pub use apartment::{
    random_rational_vector, random_simplex_point, random_theta_fixed_point, theta_fixed_gl_vertices, ApartmentPoint,
};
pub use certificate::{
    alcove_vertices, certificate_attempts, certify_root, inclusion_certificate, CertificateAttempt,
    InclusionCertificate, RootCertificate,
};
pub use filtration::{
    iwahori_lattice, mp_depth, mp_lattice, mp_membership, mp_membership_plus, mp_theta_membership,
    mp_thresholds, phi_matrix, threshold_digits,
};
pub use group::{EndoscopicCase, GroupType};
pub use quotient::{GradedQuotient, GradedQuotientElement, JumpPosition};
pub use roots::{alcove_contains, simple_affine_roots, AffineRoot};
