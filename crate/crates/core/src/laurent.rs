//! Integer Laurent polynomials and dilatation extraction.
//!
//! A multivariate polynomial is specialized along a cohomology class to a
//! one-variable Laurent polynomial; its largest real root above 1 is the
//! dilatation. Roots are isolated with a Sturm sequence of the square-free
//! part, evaluated exactly at dyadic rationals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull;
use crate::lattice::CohomologyClass;

/// Finitely supported map from exponent vectors to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        LaurentPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = LaurentPolynomial::zero(arity);
        for (exp, coeff) in terms {
            if exp.len() != arity {
                return Err(Error::ArityMismatch {
                    arity,
                    found: exp.len(),
                });
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }

    pub fn from_i64_terms(arity: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        LaurentPolynomial::from_terms(
            arity,
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    fn add_term(&mut self, exp: Vec<i64>, coeff: BigInt) {
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Applies an integer linear map to every exponent vector.
    pub fn map_exponents<F>(&self, mut f: F) -> Result<LaurentPolynomial>
    where
        F: FnMut(&[i64]) -> Vec<i64>,
    {
        LaurentPolynomial::from_terms(
            self.arity,
            self.terms.iter().map(|(e, c)| (f(e), c.clone())),
        )
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(
            self.arity, rhs.arity,
            "adding polynomials of different arity"
        );
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

/// One-variable integer Laurent polynomial in `t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    terms: BTreeMap<i64, BigInt>,
}

impl UnivariatePoly {
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        UnivariatePoly { terms: acc }
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        UnivariatePoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Degree after clearing the monomial factor `t^min`.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exponent()? - self.min_exponent()?)
    }

    /// Ascending dense coefficients of `t^{-min} q(t)`.
    fn dense(&self) -> Vec<BigInt> {
        let Some(lo) = self.min_exponent() else {
            return Vec::new();
        };
        let hi = self.max_exponent().unwrap_or(lo);
        (lo..=hi).map(|e| self.coefficient(e)).collect()
    }

    /// Exact value at a nonzero rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&e, c)| {
            acc + BigRational::from_integer(c.clone()) * x.pow(e as i32)
        })
    }

    /// Polynomial whose roots above 1 match this one, with multiplicities
    /// removed.
    pub fn square_free_part(&self) -> UnivariatePoly {
        let d = self.dense();
        if d.len() < 2 {
            return self.clone();
        }
        let sf = square_free(&d);
        UnivariatePoly::from_terms(sf.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }
}

impl Add for &UnivariatePoly {
    type Output = UnivariatePoly;

    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        UnivariatePoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&e, c)| (e, c.clone())),
        )
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = if mag.is_one() && e != 0 {
                String::new()
            } else {
                format!("{mag}")
            };
            match e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Extreme points of the convex hull of a polynomial's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    pub vertices: Vec<Vec<i64>>,
}

/// Substitutes `x^e ↦ t^{⟨ω,e⟩}`.
pub fn specialize(p: &LaurentPolynomial, omega: &CohomologyClass) -> Result<UnivariatePoly> {
    if omega.len() != p.arity {
        return Err(Error::ArityMismatch {
            arity: p.arity,
            found: omega.len(),
        });
    }
    let mut terms = Vec::with_capacity(p.terms.len());
    for (e, c) in &p.terms {
        let exp = omega.dot(e);
        let exp = i64::try_from(exp).map_err(|_| Error::Overflow("specializing an exponent"))?;
        terms.push((exp, c.clone()));
    }
    Ok(UnivariatePoly::from_terms(terms))
}

/// Vertices of the Newton polytope, sorted lexicographically. Only arity
/// up to 3 is supported.
pub fn newton_polytope(p: &LaurentPolynomial) -> Result<NewtonPolytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.arity > 3 {
        return Err(Error::Unsupported(format!(
            "Newton polytope in arity {}",
            p.arity
        )));
    }
    Ok(NewtonPolytope {
        vertices: hull::extreme_points(&p.support()),
    })
}

/// Largest real root `λ > 1` of `q`, to within `tol`.
///
/// The search interval is `(1, 1 + ⌈max|c_i / c_lead|⌉]`; it is halved while
/// a Sturm count keeps the largest root bracketed. The reported value is the
/// midpoint of the final bracket.
pub fn largest_real_root(q: &UnivariatePoly, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(
            "tolerance must be positive and finite",
        ));
    }
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dense = q.dense();
    if dense.len() < 2 {
        return Err(Error::DegreeTooLow);
    }
    let sf = square_free(&dense);
    let chain = sturm_chain(&sf);

    let lead = dense.last().expect("nonempty").abs();
    let bound = dense[..dense.len() - 1]
        .iter()
        .map(|c| c.abs().div_ceil(&lead))
        .max()
        .unwrap_or_else(BigInt::zero);
    let upper = BigInt::one() + bound;

    let mut lo = BigInt::one();
    let mut hi = upper.clone();
    let mut scale = 0usize;
    let v_hi = variations(&chain, &hi, 0);
    if variations(&chain, &lo, 0) == v_hi {
        return Err(Error::NoRootAboveOne);
    }
    let width = (&upper - 1u32).to_f64().unwrap_or(f64::INFINITY);
    // the root lies in (lo, hi] at every step; hi - lo = width / 2^scale
    while width / libm::exp2(scale as f64) > tol {
        lo <<= 1;
        hi <<= 1;
        scale += 1;
        let mid = (&lo + &hi) >> 1;
        if variations(&chain, &mid, scale) > v_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = BigRational::new(lo + hi, BigInt::one() << (scale + 1));
    Ok(crate::rational::to_f64(&mid))
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the (positive) content; signs are preserved.
fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&p);
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder `lc(b)^k · a mod b`, together with `k`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut k = 0;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        k += 1;
        r = trim(r);
    }
    (r, k)
}

fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(trim(a.to_vec()));
    let mut b = primitive(trim(b.to_vec()));
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_remainder(&a, &b).0);
        a = b;
        b = r;
    }
    if a.last().is_some_and(Signed::is_negative) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Exact quotient `a / b` over Z, where `b` is primitive and divides `a`.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = alloc::vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let coef = &r[k + db] / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &coef * bc;
        }
        q[k] = coef;
    }
    trim(q)
}

fn square_free(p: &[BigInt]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    let g = poly_gcd(&p, &derivative(&p));
    if g.len() <= 1 {
        return p;
    }
    let g = primitive(g);
    // keep the sign of the leading coefficient of p
    exact_div(&p, &g)
}

fn sturm_chain(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain = alloc::vec![primitive(p.to_vec()), primitive(derivative(p))];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.len() <= 1 {
            break;
        }
        let (mut r, k) = pseudo_remainder(a, b);
        let lead_negative = b.last().expect("nonzero").is_negative();
        // -rem(a, b) up to a positive factor
        if !(lead_negative && k % 2 == 1) {
            r = r.into_iter().map(|c| -c).collect();
        }
        let r = primitive(trim(r));
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

/// Sign of `p(num / 2^scale)`.
fn sign_at(p: &[BigInt], num: &BigInt, scale: usize) -> i8 {
    let Some((lead, rest)) = p.split_last() else {
        return 0;
    };
    let d = rest.len();
    let mut acc = lead.clone();
    for (i, c) in rest.iter().enumerate().rev() {
        acc = acc * num + (c << (scale * (d - i)));
    }
    if acc.is_zero() {
        0
    } else if acc.is_negative() {
        -1
    } else {
        1
    }
}

fn variations(chain: &[Vec<BigInt>], num: &BigInt, scale: usize) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign_at(p, num, scale);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}
