//! Dilatation and normalized entropy of fibered classes.
//!
//! For a primitive class `ω` in a fibered cone with fiber `F`, the
//! normalized entropy is `‖ω‖ · log λ(ω)` where `‖ω‖ = |χ(F)|` and `λ` is
//! the largest root of the face polynomial specialized along `ω`. It is
//! constant along rays, so rational face points are evaluated through the
//! primitive class on their ray.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, CohomologyClass};
use crate::laurent::{largest_real_root, specialize};
use crate::norm::{cone_contains, cone_contains_rational, evaluate_norm, FiberedFace, NormBall};
use crate::rational::{self, RationalVector};

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyRecord {
    pub class: CohomologyClass,
    /// `|χ(F)|` of the fiber.
    pub norm: u64,
    pub dilatation: f64,
    pub entropy: f64,
}

/// Largest root above 1 of the face polynomial specialized along `omega`.
pub fn dilatation(
    ball: &NormBall,
    face: &FiberedFace,
    omega: &CohomologyClass,
    tol: f64,
) -> Result<f64> {
    let poly = face
        .polynomial
        .as_ref()
        .ok_or(Error::MissingPolynomial { face: face.id })?;
    if !face.fibered {
        return Err(Error::NotFibered { face: face.id });
    }
    if !cone_contains(face, ball, omega) {
        return Err(Error::NotInCone { face: face.id });
    }
    if !is_primitive(omega)? {
        return Err(Error::NotPrimitive {
            gcd: omega.content(),
        });
    }
    largest_real_root(&specialize(poly, omega)?, tol)
}

pub fn normalized_entropy(
    ball: &NormBall,
    face: &FiberedFace,
    omega: &CohomologyClass,
    tol: f64,
) -> Result<EntropyRecord> {
    let lambda = dilatation(ball, face, omega, tol)?;
    let norm = ball.class_norm(omega)?;
    // positive on any open cone, since -v is a dual vertex as well
    let norm = u64::try_from(norm).map_err(|_| Error::NotInCone { face: face.id })?;
    Ok(EntropyRecord {
        class: omega.clone(),
        norm,
        dilatation: lambda,
        entropy: norm as f64 * libm::log(lambda),
    })
}

/// Entropy at a rational point of the open face (norm exactly 1).
pub fn ent_at_face_point(
    ball: &NormBall,
    face: &FiberedFace,
    p: &[BigRational],
    tol: f64,
) -> Result<f64> {
    Ok(face_point_record(ball, face, p, tol)?.entropy)
}

fn face_point_record(
    ball: &NormBall,
    face: &FiberedFace,
    p: &[BigRational],
    tol: f64,
) -> Result<EntropyRecord> {
    if evaluate_norm(ball, p)? != BigRational::one() || !cone_contains_rational(face, ball, p) {
        return Err(Error::NotOnFace { face: face.id });
    }
    let omega = rational::primitive_on_ray(p)?;
    normalized_entropy(ball, face, &omega, tol)
}

/// Scales a nonzero rational vector onto the unit sphere of the norm.
pub fn to_face(ball: &NormBall, face: &FiberedFace, p: &[BigRational]) -> Result<RationalVector> {
    let n = evaluate_norm(ball, p)?;
    if !n.is_positive() {
        return Err(Error::NotOnFace { face: face.id });
    }
    Ok(rational::scale(p, &n.recip()))
}

/// One strict-concavity check of `1/ent` along a chord of the face.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityProbe {
    /// `1/ent(m)` at the normalized interpolated point.
    pub lhs: f64,
    /// `s/ent(p) + (1-s)/ent(q)`.
    pub rhs: f64,
    pub strict: bool,
    /// Primitive classes on the rays of `p`, `q` and `m`.
    pub classes: [CohomologyClass; 3],
}

/// `strict` means `lhs > rhs + tol`; dilatations are isolated to within
/// `min(tol, ROOT_TOL)`.
pub fn concavity_probe(
    ball: &NormBall,
    face: &FiberedFace,
    p: &[BigRational],
    q: &[BigRational],
    s: &BigRational,
    tol: f64,
) -> Result<ConcavityProbe> {
    if !s.is_positive() || *s >= BigRational::one() {
        return Err(Error::InvalidArgument(
            "s must lie in the open interval (0, 1)",
        ));
    }
    let p = to_face(ball, face, p)?;
    let q = to_face(ball, face, q)?;
    if p == q {
        return Err(Error::InvalidArgument("p and q give the same face point"));
    }
    let t = BigRational::one() - s;
    let mix: Vec<BigRational> = p.iter().zip(&q).map(|(a, b)| a * s + b * &t).collect();
    let m = to_face(ball, face, &mix)?;

    let root_tol = tol.min(crate::ROOT_TOL);
    let rp = face_point_record(ball, face, &p, root_tol)?;
    let rq = face_point_record(ball, face, &q, root_tol)?;
    let rm = face_point_record(ball, face, &m, root_tol)?;
    let sf = rational::to_f64(s);
    let lhs = 1.0 / rm.entropy;
    let rhs = sf / rp.entropy + (1.0 - sf) / rq.entropy;
    Ok(ConcavityProbe {
        lhs,
        rhs,
        strict: lhs > rhs + tol,
        classes: [rp.class, rq.class, rm.class],
    })
}

/// Equality of normalized entropies within `tol`. Necessary for
/// commensurability, never sufficient.
pub fn invariant_equal(r1: &EntropyRecord, r2: &EntropyRecord, tol: f64) -> bool {
    (r1.entropy - r2.entropy).abs() <= tol
}

/// Rational point `ω / ‖ω‖` on the face.
pub fn face_point_of(ball: &NormBall, omega: &CohomologyClass) -> Result<RationalVector> {
    let n = ball.class_norm(omega)?;
    if n <= 0 {
        return Err(Error::ZeroClass);
    }
    let r = BigRational::new(BigInt::one(), BigInt::from(n));
    Ok(rational::scale(&rational::from_class(omega), &r))
}
