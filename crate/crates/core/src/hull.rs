//! Exact convex-hull membership for small integer point sets.
//!
//! A point is extreme iff it is not in the convex hull of the others. By
//! Carathéodory that hull is covered by simplices on at most `dim + 1`
//! affinely independent points, and membership in one simplex is decided by
//! solving the Gram system of its edge vectors with Cramer's rule.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::IntMatrix;

/// Extreme points of a finite set, sorted lexicographically.
pub(crate) fn extreme_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let dim = pts.first().map_or(0, Vec::len);
    let mut alive: Vec<bool> = alloc::vec![true; pts.len()];
    for i in 0..pts.len() {
        let others: Vec<&[i64]> = (0..pts.len())
            .filter(|&j| j != i && alive[j])
            .map(|j| pts[j].as_slice())
            .collect();
        if in_hull(&pts[i], &others, dim) {
            alive[i] = false;
        }
    }
    pts.into_iter()
        .zip(alive)
        .filter_map(|(p, a)| a.then_some(p))
        .collect()
}

/// Whether `p` lies in the convex hull of `others`.
pub(crate) fn in_hull(p: &[i64], others: &[&[i64]], dim: usize) -> bool {
    let max_k = (dim + 1).min(others.len());
    let mut idx: Vec<usize> = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        idx.clear();
        idx.extend(0..k);
        loop {
            let simplex: Vec<&[i64]> = idx.iter().map(|&i| others[i]).collect();
            if in_simplex(p, &simplex) {
                return true;
            }
            if !next_combination(&mut idx, others.len()) {
                break;
            }
        }
    }
    false
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Membership of `p` in the simplex spanned by affinely independent
/// vertices; dependent vertex sets report `false` (a smaller subset covers
/// that case).
fn in_simplex(p: &[i64], verts: &[&[i64]]) -> bool {
    let base = verts[0];
    let t: Vec<BigInt> = p
        .iter()
        .zip(base)
        .map(|(&a, &b)| BigInt::from(a - b))
        .collect();
    let m = verts.len() - 1;
    if m == 0 {
        return t.iter().all(Zero::is_zero);
    }
    let edges: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(base)
                .map(|(&a, &b)| BigInt::from(a - b))
                .collect()
        })
        .collect();
    let dotp = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut gram = Vec::with_capacity(m * m);
    for a in &edges {
        for b in &edges {
            gram.push(dotp(a, b));
        }
    }
    let rhs: Vec<BigInt> = edges.iter().map(|e| dotp(e, &t)).collect();
    let g = IntMatrix::new(m, m, gram.clone()).expect("square gram matrix");
    let det = g.determinant().expect("square");
    if det.is_zero() {
        return false;
    }
    // det > 0 for a Gram matrix of independent vectors
    let mut coeffs = Vec::with_capacity(m);
    for i in 0..m {
        let mut gi = gram.clone();
        for r in 0..m {
            gi[r * m + i] = rhs[r].clone();
        }
        let di = IntMatrix::new(m, m, gi)
            .expect("square")
            .determinant()
            .expect("square");
        if di.is_negative() {
            return false;
        }
        coeffs.push(di);
    }
    let total: BigInt = coeffs.iter().sum();
    if total > det {
        return false;
    }
    // t must lie in the span, not only project into the simplex
    (0..t.len()).all(|c| {
        let combo: BigInt = coeffs.iter().zip(&edges).map(|(l, e)| l * &e[c]).sum();
        combo == &det * &t[c]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn square_with_center() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]];
        assert_eq!(
            extreme_points(&pts),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
    }

    #[test]
    fn collinear_points_keep_endpoints() {
        let pts = vec![vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]];
        assert_eq!(extreme_points(&pts), vec![vec![0, 0], vec![3, 3]]);
    }

    #[test]
    fn off_plane_point_is_not_in_triangle() {
        // projects into the triangle but lies above it
        let tri: Vec<&[i64]> = vec![&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]];
        assert!(!in_hull(&[1, 1, 1], &tri, 3));
        assert!(in_hull(&[1, 1, 0], &tri, 3));
    }

    #[test]
    fn octahedron_center() {
        let pts = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
            vec![0, 0, 0],
        ];
        assert_eq!(extreme_points(&pts).len(), 6);
    }
}
