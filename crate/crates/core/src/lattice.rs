//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Smith normal form is computed by gcd-pivot elimination. The pivot is
//! always the smallest nonzero entry (by absolute value) of the remaining
//! submatrix, ties broken by lowest row-major index, so decompositions are
//! reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of machine integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape {
                    rows: rows.len(),
                    cols,
                    len: entries.len() + row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(rows.len(), cols, entries)
    }

    /// A single row vector.
    pub fn row_vector(v: &[BigInt]) -> Result<Self> {
        IntMatrix::new(1, v.len(), v.to_vec())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.at(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * self.get(src, j);
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * self.get(i, src);
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(self.at(r, j));
            *self.at(r, j) = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -core::mem::take(self.at(i, c));
            *self.at(i, c) = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `a = left · diag · right` with unimodular `left`, `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.diag.rows.min(self.diag.cols);
        (0..n)
            .take_while(|&i| !self.diag.get(i, i).is_zero())
            .count()
    }

    /// The invariant factors d_1 | d_2 | ..., zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diag.rows.min(self.diag.cols);
        (0..n).map(|i| self.diag.get(i, i).clone()).collect()
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith form plus the accumulated column transform `q` with `p·a·q = diag`.
fn smith_with_column_transform(a: &IntMatrix) -> (SmithDecomposition, IntMatrix) {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let mut q = IntMatrix::identity(c);

    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pr, pc)) = find_pivot(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pr);
            left.swap_cols(t, pr);
            d.swap_cols(t, pc);
            right.swap_rows(t, pc);
            q.swap_cols(t, pc);

            let mut clean = true;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let k = d.get(i, t) / d.get(t, t);
                if !k.is_zero() {
                    d.add_row(i, t, &-&k);
                    left.add_col(t, i, &k);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let k = d.get(t, j) / d.get(t, t);
                if !k.is_zero() {
                    d.add_col(j, t, &-&k);
                    right.add_row(t, j, &k);
                    q.add_col(j, t, &-&k);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = d.get(t, t).clone();
            let offender =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    left.add_col(i, t, &-BigInt::one());
                }
                None => break,
            }
        }
    }

    for t in 0..r.min(c) {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_col(t);
        }
    }
    (
        SmithDecomposition {
            left,
            diag: d,
            right,
        },
        q,
    )
}

/// Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    smith_with_column_transform(a).0
}

/// Canonical basis of the integer kernel `{v : a·v = 0}`: Hermite-reduced
/// rows, sorted lexicographically.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (snf, q) = smith_with_column_transform(a);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..a.cols).map(|j| q.column(j)).collect();
    let mut reduced = hermite_rows(basis);
    reduced.sort();
    reduced
}

/// Row-style Hermite normal form of the lattice spanned by `rows`
/// (positive pivots, entries above each pivot reduced into `[0, pivot)`).
/// Zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let k = &rows[i][c] / &rows[r][c];
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &head[r], &-k);
                done &= tail[0][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            for i in 0..r {
                let k = rows[i][c].div_floor(&rows[r][c]);
                if !k.is_zero() {
                    let (head, tail) = rows.split_at_mut(r);
                    axpy(&mut head[i], &tail[0], &-k);
                }
            }
            r += 1;
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

fn axpy(dst: &mut [BigInt], src: &[BigInt], k: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += k * s;
    }
}

/// Integral cohomology class in a fixed basis of `Hom(H_1/Tor, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohomologyClass(Vec<i64>);

impl CohomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        CohomologyClass(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Evaluation `ω(v) = Σ ω_i v_i` on an integral homology vector.
    pub fn pair(&self, v: &[BigInt]) -> BigInt {
        self.0
            .iter()
            .zip(v)
            .map(|(&a, b)| BigInt::from(a) * b)
            .sum()
    }

    pub fn dot(&self, v: &[i64]) -> i128 {
        self.0
            .iter()
            .zip(v)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// The primitive class on the same ray. Errors on the zero class.
    pub fn primitive_part(&self) -> Result<CohomologyClass> {
        let g = self.content();
        if g == 0 {
            return Err(Error::ZeroClass);
        }
        Ok(CohomologyClass(
            self.0.iter().map(|&x| x / g as i64).collect(),
        ))
    }

    /// `r·ω`; fails on overflow.
    pub fn scale(&self, r: i64) -> Result<CohomologyClass> {
        self.0
            .iter()
            .map(|&x| x.checked_mul(r).ok_or(Error::Overflow("scaling a class")))
            .collect::<Result<Vec<_>>>()
            .map(CohomologyClass)
    }

    /// Image under an integer matrix acting on coordinate columns.
    pub fn transform(&self, m: &IntMatrix) -> Result<CohomologyClass> {
        let image = m.mul_vec(&self.to_bigint())?;
        image
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("applying a symmetry")))
            .collect::<Result<Vec<_>>>()
            .map(CohomologyClass)
    }
}

impl core::ops::Neg for &CohomologyClass {
    type Output = CohomologyClass;

    fn neg(self) -> CohomologyClass {
        CohomologyClass(self.0.iter().map(|&x| -x).collect())
    }
}

impl From<Vec<i64>> for CohomologyClass {
    fn from(v: Vec<i64>) -> Self {
        CohomologyClass(v)
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Whether the coordinates of `v` are coprime.
pub fn is_primitive(v: &CohomologyClass) -> Result<bool> {
    match v.content() {
        0 => Err(Error::ZeroClass),
        g => Ok(g == 1),
    }
}

/// Image of `span(gens)` in `Z/nZ` under `ω mod n`.
///
/// Returns `(d, order)` with `d = gcd(n, ω(g) for g in gens)` and
/// `order = n / d`; `gcd(n, 0) = n`.
pub fn image_order_mod_n(
    gens: &[Vec<BigInt>],
    omega: &CohomologyClass,
    n: u64,
) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive"));
    }
    let mut d = BigInt::from(n);
    for g in gens {
        if g.len() != omega.len() {
            return Err(Error::DimensionMismatch {
                expected: omega.len(),
                found: g.len(),
            });
        }
        d = d.gcd(&omega.pair(g));
    }
    let d = d.to_u64().expect("gcd with n fits in u64");
    Ok((d, n / d))
}
