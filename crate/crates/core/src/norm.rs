//! The Thurston norm as a support function over a finite, centrally
//! symmetric set of dual vertices `D`: `‖ω‖ = max_{v ∈ D} ⟨ω, v⟩`.
//!
//! Each extreme dual vertex `v` supports one top-dimensional face of the
//! unit ball; its open cone is the set of classes where `v` is the unique
//! maximizer.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull;
use crate::lattice::{is_primitive, CohomologyClass, IntMatrix};
use crate::laurent::{newton_polytope, LaurentPolynomial};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormBall {
    betti: usize,
    dual_vertices: Vec<Vec<i64>>,
}

impl NormBall {
    /// Validates lengths and central symmetry; vertices are stored sorted
    /// and deduplicated.
    pub fn new(betti: usize, mut dual_vertices: Vec<Vec<i64>>) -> Result<Self> {
        if betti == 0 {
            return Err(Error::InvalidArgument("Betti number must be positive"));
        }
        if let Some(v) = dual_vertices.iter().find(|v| v.len() != betti) {
            return Err(Error::DimensionMismatch {
                expected: betti,
                found: v.len(),
            });
        }
        if dual_vertices.is_empty() {
            return Err(Error::InvalidArgument("empty dual vertex set"));
        }
        dual_vertices.sort();
        dual_vertices.dedup();
        let symmetric = dual_vertices.iter().all(|v| {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            dual_vertices.binary_search(&neg).is_ok()
        });
        if !symmetric {
            return Err(Error::NotSymmetric);
        }
        Ok(NormBall {
            betti,
            dual_vertices,
        })
    }

    pub fn betti(&self) -> usize {
        self.betti
    }

    pub fn dual_vertices(&self) -> &[Vec<i64>] {
        &self.dual_vertices
    }

    /// Norm of an integral class (always an integer).
    pub fn class_norm(&self, w: &CohomologyClass) -> Result<i64> {
        self.check_len(w.len())?;
        let best = self
            .dual_vertices
            .iter()
            .map(|v| w.dot(v))
            .max()
            .unwrap_or(0);
        i64::try_from(best).map_err(|_| Error::Overflow("evaluating the norm"))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.betti {
            return Err(Error::DimensionMismatch {
                expected: self.betti,
                found: len,
            });
        }
        Ok(())
    }
}

/// A top-dimensional face of the unit ball, with the fibration data the
/// descriptor attaches to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedFace {
    pub id: usize,
    pub supporting_vertex: Vec<i64>,
    pub fibered: bool,
    pub polynomial: Option<LaurentPolynomial>,
}

impl FiberedFace {
    pub fn with_data(mut self, fibered: bool, polynomial: Option<LaurentPolynomial>) -> Self {
        self.fibered = fibered;
        self.polynomial = polynomial;
        self
    }
}

/// Norm induced by a Newton polytope: dual vertices are the extreme
/// differences of polytope vertices.
pub fn norm_from_newton(p: &LaurentPolynomial) -> Result<NormBall> {
    let poly = newton_polytope(p)?;
    let mut diffs = Vec::with_capacity(poly.vertices.len() * poly.vertices.len());
    for a in &poly.vertices {
        for b in &poly.vertices {
            diffs.push(a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>());
        }
    }
    NormBall::new(p.arity(), hull::extreme_points(&diffs))
}

/// `max_{v ∈ D} ⟨ω, v⟩` in exact rational arithmetic.
pub fn evaluate_norm(ball: &NormBall, omega: &[BigRational]) -> Result<BigRational> {
    ball.check_len(omega.len())?;
    Ok(ball
        .dual_vertices
        .iter()
        .map(|v| rational::dot(omega, v))
        .max()
        .unwrap_or_else(BigRational::zero))
}

/// One face per extreme dual vertex, ids in sorted vertex order. Faces
/// start unfibered and without a polynomial.
pub fn top_faces(ball: &NormBall) -> Result<Vec<FiberedFace>> {
    if ball.dual_vertices.iter().all(|v| v.iter().all(|&x| x == 0)) {
        return Err(Error::DegenerateNorm);
    }
    Ok(hull::extreme_points(&ball.dual_vertices)
        .into_iter()
        .enumerate()
        .map(|(id, v)| FiberedFace {
            id,
            supporting_vertex: v,
            fibered: false,
            polynomial: None,
        })
        .collect())
}

/// Strict interior of the cone over `face`.
pub fn cone_contains(face: &FiberedFace, ball: &NormBall, omega: &CohomologyClass) -> bool {
    if omega.len() != ball.betti || face.supporting_vertex.len() != ball.betti {
        return false;
    }
    let top = omega.dot(&face.supporting_vertex);
    ball.dual_vertices
        .iter()
        .filter(|v| **v != face.supporting_vertex)
        .all(|v| omega.dot(v) < top)
}

/// Rational version of [`cone_contains`].
pub fn cone_contains_rational(face: &FiberedFace, ball: &NormBall, omega: &[BigRational]) -> bool {
    if omega.len() != ball.betti || face.supporting_vertex.len() != ball.betti {
        return false;
    }
    let top = rational::dot(omega, &face.supporting_vertex);
    ball.dual_vertices
        .iter()
        .filter(|v| **v != face.supporting_vertex)
        .all(|v| rational::dot(omega, v) < top)
}

/// All primitive classes in the open cone over `face` with norm at most
/// `max_norm`, sorted lexicographically.
///
/// The scan box comes from `b` independent dual vertices `A`: every class
/// of norm `≤ K` has `|Aω|_∞ ≤ K`, hence `|ω_i| ≤ K Σ_j |(A⁻¹)_ij|`.
pub fn enumerate_primitive_classes(
    face: &FiberedFace,
    ball: &NormBall,
    max_norm: u64,
) -> Result<Vec<CohomologyClass>> {
    let basis = independent_rows(&ball.dual_vertices, ball.betti).ok_or(Error::UnboundedCone)?;
    if max_norm == 0 {
        return Ok(Vec::new());
    }
    let bounds = box_bounds(&basis, max_norm)?;
    let k = i64::try_from(max_norm).map_err(|_| Error::Overflow("norm bound"))?;

    let b = ball.betti;
    let mut found = Vec::new();
    let mut cur: Vec<i64> = bounds.iter().map(|&m| -m).collect();
    loop {
        let w = CohomologyClass::new(cur.clone());
        if !w.is_zero()
            && cone_contains(face, ball, &w)
            && ball.class_norm(&w)? <= k
            && is_primitive(&w)?
        {
            found.push(w);
        }
        // odometer over the box
        let mut i = b;
        loop {
            if i == 0 {
                found.sort();
                return Ok(found);
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = -bounds[i];
        }
    }
}

/// Greedily picks `n` linearly independent rows, if they exist.
fn independent_rows(rows: &[Vec<i64>], n: usize) -> Option<Vec<Vec<i64>>> {
    let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(n);
    for r in rows {
        let mut trial = chosen.clone();
        trial.push(r.clone());
        if rank(&trial) == trial.len() {
            chosen = trial;
            if chosen.len() == n {
                return Some(chosen);
            }
        }
    }
    None
}

fn rank(rows: &[Vec<i64>]) -> usize {
    match IntMatrix::from_rows(rows) {
        Ok(m) => crate::lattice::smith_normal_form(&m).rank(),
        Err(_) => 0,
    }
}

fn box_bounds(basis: &[Vec<i64>], max_norm: u64) -> Result<Vec<i64>> {
    let n = basis.len();
    let a = IntMatrix::from_rows(basis)?;
    let det = a.determinant()?.abs();
    // |(A⁻¹)_ij| = |cofactor_ji| / |det|
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let mut row_sum = BigInt::zero();
        for j in 0..n {
            row_sum += minor(&a, j, i)?.abs();
        }
        let b = (row_sum * BigInt::from(max_norm)) / &det;
        bounds.push(b.to_i64().ok_or(Error::Overflow("enumeration box"))?);
    }
    Ok(bounds)
}

fn minor(a: &IntMatrix, skip_row: usize, skip_col: usize) -> Result<BigInt> {
    let n = a.rows();
    if n == 1 {
        return Ok(BigInt::from(1));
    }
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for r in (0..n).filter(|&r| r != skip_row) {
        for c in (0..n).filter(|&c| c != skip_col) {
            entries.push(a.get(r, c).clone());
        }
    }
    IntMatrix::new(n - 1, n - 1, entries)?.determinant()
}
