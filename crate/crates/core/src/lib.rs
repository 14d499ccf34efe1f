//! Fibered faces, normalized entropy and fibered commensurability of
//! hyperbolic 3-manifolds, computed from integral cohomology data.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable inputs:
//!
//! * [`lattice`]: Smith normal form, integer kernels, primitivity, images mod n.
//! * [`laurent`]: multivariate Laurent polynomials, Newton polytopes,
//!   specialization along a class and largest-real-root isolation.
//! * [`norm`]: the Thurston norm as a support function over dual vertices,
//!   its top-dimensional faces and the primitive classes in a cone.
//! * [`entropy`]: dilatations, normalized entropy and concavity probes.
//! * [`commensurability`]: symmetry orbits, pair classification and the
//!   volume-based minimality gate.
//! * [`covers`]: the cyclic (dynamical) cover analysis producing commensurable
//!   but non-symmetric fibrations.
#![no_std]
#![deny(rustdoc::broken_intra_doc_links)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod commensurability;
pub mod covers;
pub mod entropy;
mod error;
mod hull;
pub mod lattice;
pub mod laurent;
pub mod norm;
pub mod rational;

pub use commensurability::{
    symmetry_orbit, volume_minimality_gate, Classifier, GateReason, ManifoldFlags, MinimalityGate,
    Orbit, OrbitWitness, PairVerdict, Reason, SymmetryAction, VerdictKind, Witness,
};
pub use covers::{analyze_cover, fiber_kernel, search_nonsymmetric, CoverReport, FibrationPair};
pub use entropy::{
    concavity_probe, dilatation, ent_at_face_point, invariant_equal, normalized_entropy,
    ConcavityProbe, EntropyRecord,
};
pub use error::{Error, Result};
pub use lattice::{
    image_order_mod_n, is_primitive, kernel_basis, smith_normal_form, CohomologyClass, IntMatrix,
    SmithDecomposition,
};
pub use laurent::{
    largest_real_root, newton_polytope, specialize, LaurentPolynomial, NewtonPolytope,
    UnivariatePoly,
};
pub use norm::{
    cone_contains, cone_contains_rational, enumerate_primitive_classes, evaluate_norm,
    norm_from_newton, top_faces, FiberedFace, NormBall,
};

/// Default accuracy of dilatation root isolation.
pub const ROOT_TOL: f64 = 1e-12;

/// Default absolute tolerance for entropy comparisons.
pub const ENTROPY_TOL: f64 = 1e-9;
