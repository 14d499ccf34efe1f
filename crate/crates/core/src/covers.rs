//! Cyclic covers dual to one fibration and what they do to another.
//!
//! Let `p_n: M_n → M` be the degree-`n` cyclic cover induced by `ω₁ mod n`.
//! The preimage of a fiber `F₂` of `ω₂` splits into `d = gcd(n, m)`
//! components, where `m` is the gcd of `ω₁` on `Ker ω₂`; each component is
//! a `n/d`-fold cover of `F₂`. When the two monodromies are conjugate and
//! `n ∤ m`, the pulled-back fibrations are commensurable (they share a
//! common cover) but their fibers have different Euler characteristics,
//! so no symmetry relates them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{image_order_mod_n, is_primitive, kernel_basis, CohomologyClass, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationPair {
    w1: CohomologyClass,
    w2: CohomologyClass,
    chi1: i64,
    chi2: i64,
    conjugate_monodromies: bool,
}

impl FibrationPair {
    pub fn new(
        w1: CohomologyClass,
        w2: CohomologyClass,
        chi1: i64,
        chi2: i64,
        conjugate_monodromies: bool,
    ) -> Result<Self> {
        if w1.len() != w2.len() {
            return Err(Error::DimensionMismatch {
                expected: w1.len(),
                found: w2.len(),
            });
        }
        for w in [&w1, &w2] {
            if !is_primitive(w)? {
                return Err(Error::NotPrimitive { gcd: w.content() });
            }
        }
        if w1 == w2 || w1 == -&w2 {
            return Err(Error::InvalidPair("the classes must differ up to sign"));
        }
        if chi1 >= 0 || chi2 >= 0 {
            return Err(Error::InvalidPair(
                "fiber Euler characteristics must be negative",
            ));
        }
        if conjugate_monodromies && chi1 != chi2 {
            return Err(Error::InvalidPair(
                "conjugate monodromies need fibers of equal Euler characteristic",
            ));
        }
        Ok(FibrationPair {
            w1,
            w2,
            chi1,
            chi2,
            conjugate_monodromies,
        })
    }

    pub fn w1(&self) -> &CohomologyClass {
        &self.w1
    }

    pub fn w2(&self) -> &CohomologyClass {
        &self.w2
    }

    pub fn chi1(&self) -> i64 {
        self.chi1
    }

    pub fn chi2(&self) -> i64 {
        self.chi2
    }

    pub fn conjugate_monodromies(&self) -> bool {
        self.conjugate_monodromies
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub degree: u64,
    /// gcd of `|ω₁|` over a basis of `Ker ω₂`.
    pub kernel_gcd: u64,
    pub d: u64,
    pub components: u64,
    pub component_degree: u64,
    pub component_chi: i64,
    pub fibers_homeomorphic: bool,
    pub nonsymmetric_commensurable: bool,
}

/// Basis of `Ker ω ⊂ Z^b`, `b − 1` vectors.
pub fn fiber_kernel(omega: &CohomologyClass) -> Result<Vec<Vec<BigInt>>> {
    if !is_primitive(omega)? {
        return Err(Error::NotPrimitive {
            gcd: omega.content(),
        });
    }
    let row = IntMatrix::row_vector(&omega.to_bigint())?;
    Ok(kernel_basis(&row))
}

fn kernel_gcd(pair: &FibrationPair) -> Result<u64> {
    let basis = fiber_kernel(&pair.w2)?;
    let mut m = BigInt::zero();
    for a in &basis {
        m = m.gcd(&pair.w1.pair(a).abs());
    }
    if m.is_zero() {
        return Err(Error::DegenerateKernel);
    }
    m.to_u64().ok_or(Error::Overflow("kernel gcd"))
}

pub fn analyze_cover(pair: &FibrationPair, n: u64) -> Result<CoverReport> {
    let m = kernel_gcd(pair)?;
    report(pair, m, n)
}

fn report(pair: &FibrationPair, m: u64, n: u64) -> Result<CoverReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("cover degree must be positive"));
    }
    let basis = fiber_kernel(&pair.w2)?;
    let (d, component_degree) = image_order_mod_n(&basis, &pair.w1, n)?;
    debug_assert_eq!(d, n.gcd(&m));
    let component_chi = i64::try_from(component_degree)
        .ok()
        .and_then(|k| k.checked_mul(pair.chi2))
        .ok_or(Error::Overflow("component Euler characteristic"))?;
    let fibers_homeomorphic = m.is_multiple_of(n);
    Ok(CoverReport {
        degree: n,
        kernel_gcd: m,
        d,
        components: d,
        component_degree,
        component_chi,
        fibers_homeomorphic,
        nonsymmetric_commensurable: pair.conjugate_monodromies && !fibers_homeomorphic,
    })
}

/// Degrees `n ≤ n_max` whose cover yields commensurable but non-symmetric
/// fibrations, in increasing order.
pub fn search_nonsymmetric(pair: &FibrationPair, n_max: u64) -> Result<Vec<CoverReport>> {
    if !pair.conjugate_monodromies {
        return Err(Error::HypothesisUnmet);
    }
    let m = kernel_gcd(pair)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let r = report(pair, m, n)?;
        if r.nonsymmetric_commensurable {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(v: &[i64]) -> CohomologyClass {
        CohomologyClass::new(v.to_vec())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernels() {
        assert_eq!(fiber_kernel(&c(&[1, 0])).unwrap(), vec![big(&[0, 1])]);
        let mut k = fiber_kernel(&c(&[0, 1, 0])).unwrap();
        k.sort();
        assert_eq!(k, vec![big(&[0, 0, 1]), big(&[1, 0, 0])]);
        let k = fiber_kernel(&c(&[2, 3])).unwrap();
        assert_eq!(k.len(), 1);
        assert!(c(&[2, 3]).pair(&k[0]).is_zero());
        assert_eq!(
            k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(),
            big(&[3, 2])
        );
        assert_eq!(
            fiber_kernel(&c(&[2, 4])),
            Err(Error::NotPrimitive { gcd: 2 })
        );
    }

    #[test]
    fn cover_examples() {
        let pair = FibrationPair::new(c(&[1, 0]), c(&[0, 1]), -2, -2, false).unwrap();
        let r = analyze_cover(&pair, 3).unwrap();
        assert_eq!(
            (r.kernel_gcd, r.d, r.components, r.component_degree),
            (1, 1, 1, 3)
        );
        assert_eq!(r.component_chi, -6);
        assert!(!r.fibers_homeomorphic);
        assert!(!r.nonsymmetric_commensurable);

        let r = analyze_cover(&pair, 1).unwrap();
        assert_eq!((r.d, r.component_degree), (1, 1));
        assert!(r.fibers_homeomorphic);

        let pair = FibrationPair::new(c(&[1, 0]), c(&[2, 1]), -2, -2, true).unwrap();
        let r = analyze_cover(&pair, 4).unwrap();
        assert_eq!((r.kernel_gcd, r.d, r.component_degree), (1, 1, 4));
        assert!(r.nonsymmetric_commensurable);
    }

    #[test]
    fn search_thresholds() {
        let pair = FibrationPair::new(c(&[1, 0]), c(&[0, 1]), -2, -2, true).unwrap();
        let ns: Vec<u64> = search_nonsymmetric(&pair, 6)
            .unwrap()
            .iter()
            .map(|r| r.degree)
            .collect();
        assert_eq!(ns, vec![2, 3, 4, 5, 6]);

        // ω₁ = (6, 1) on Ker(0, 1) = <(1, 0)> gives m = 6
        let pair = FibrationPair::new(c(&[6, 1]), c(&[0, 1]), -4, -4, true).unwrap();
        let ns: Vec<u64> = search_nonsymmetric(&pair, 7)
            .unwrap()
            .iter()
            .map(|r| r.degree)
            .collect();
        assert_eq!(ns, vec![4, 5, 7]);

        let pair = FibrationPair::new(c(&[6, 1]), c(&[0, 1]), -4, -2, false).unwrap();
        assert_eq!(search_nonsymmetric(&pair, 7), Err(Error::HypothesisUnmet));
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(
            FibrationPair::new(c(&[1, 2]), c(&[-1, -2]), -2, -2, false),
            Err(Error::InvalidPair(_))
        ));
        assert!(matches!(
            FibrationPair::new(c(&[1, 0]), c(&[0, 1]), -2, -4, true),
            Err(Error::InvalidPair(_))
        ));
        assert!(matches!(
            FibrationPair::new(c(&[1, 0]), c(&[0, 1]), 0, -2, false),
            Err(Error::InvalidPair(_))
        ));
        assert!(matches!(
            FibrationPair::new(c(&[2, 0]), c(&[0, 1]), -2, -2, false),
            Err(Error::NotPrimitive { .. })
        ));
    }
}
