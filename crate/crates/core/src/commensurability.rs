//! Symmetry orbits of fibration classes and pair classification.
//!
//! Two fibrations of one manifold are compared by a fixed rule cascade:
//! symmetry orbit first, then the normalized-entropy invariant, then the
//! manifold-level flags (no hidden symmetries, all fibrations minimal).
//! A positive "commensurable" verdict is never produced here; that only
//! comes out of the cyclic cover construction in [`crate::covers`].

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::entropy::normalized_entropy;
use crate::error::{Error, Result};
use crate::lattice::{is_primitive, CohomologyClass, IntMatrix};
use crate::norm::{cone_contains, FiberedFace, NormBall};
use crate::rational::{parse_decimal, to_f64};

/// Default cap on orbit sizes before an action is declared infinite.
pub const ORBIT_BOUND: usize = 4096;

/// Volume of the regular ideal tetrahedron, `V₀ = 3Λ(π/3)`.
pub const TETRAHEDRON_VOLUME: &str = "1.0149416064";
/// Volume of the regular ideal octahedron, `V₈ = 8Λ(π/4)`.
pub const OCTAHEDRON_VOLUME: &str = "3.6638623767";

/// Finite group of unimodular matrices acting on `H¹(M; Z)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryAction {
    betti: usize,
    generators: Vec<IntMatrix>,
}

impl SymmetryAction {
    /// Checks every generator is `b×b` with determinant ±1, and that the
    /// orbit of each standard basis vector closes within `bound` elements.
    pub fn new(betti: usize, generators: Vec<IntMatrix>, bound: usize) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if g.rows() != betti || g.cols() != betti {
                return Err(Error::DimensionMismatch {
                    expected: betti,
                    found: g.rows().max(g.cols()),
                });
            }
            let det = g.determinant()?;
            if !det.abs().is_one() {
                return Err(Error::NotUnimodular {
                    index,
                    det: alloc::format!("{det}"),
                });
            }
        }
        let action = SymmetryAction { betti, generators };
        for i in 0..betti {
            let mut e = alloc::vec![0i64; betti];
            e[i] = 1;
            symmetry_orbit(&action, &CohomologyClass::new(e), bound)?;
        }
        Ok(action)
    }

    pub fn trivial(betti: usize) -> Self {
        SymmetryAction {
            betti,
            generators: Vec::new(),
        }
    }

    pub fn betti(&self) -> usize {
        self.betti
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }
}

/// How to reach an orbit element from the seed: optionally negate, then
/// apply generators in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitWitness {
    pub negated: bool,
    pub word: Vec<usize>,
}

impl OrbitWitness {
    pub fn apply(
        &self,
        action: &SymmetryAction,
        omega: &CohomologyClass,
    ) -> Result<CohomologyClass> {
        let mut x = if self.negated { -omega } else { omega.clone() };
        for &g in &self.word {
            let m = action
                .generators
                .get(g)
                .ok_or(Error::InvalidArgument("generator index out of range"))?;
            x = x.transform(m)?;
        }
        Ok(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    seed: CohomologyClass,
    members: BTreeMap<CohomologyClass, OrbitWitness>,
}

impl Orbit {
    pub fn seed(&self) -> &CohomologyClass {
        &self.seed
    }

    /// Members in sorted order.
    pub fn classes(&self) -> Vec<CohomologyClass> {
        self.members.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &CohomologyClass) -> bool {
        self.members.contains_key(w)
    }

    pub fn witness(&self, w: &CohomologyClass) -> Option<&OrbitWitness> {
        self.members.get(w)
    }
}

/// Breadth-first closure of `{ω, −ω}` under the generators.
pub fn symmetry_orbit(
    action: &SymmetryAction,
    omega: &CohomologyClass,
    bound: usize,
) -> Result<Orbit> {
    if omega.len() != action.betti {
        return Err(Error::DimensionMismatch {
            expected: action.betti,
            found: omega.len(),
        });
    }
    let mut members = BTreeMap::new();
    let mut queue = VecDeque::new();
    for negated in [false, true] {
        let start = if negated { -omega } else { omega.clone() };
        if !members.contains_key(&start) {
            let w = OrbitWitness {
                negated,
                word: Vec::new(),
            };
            members.insert(start.clone(), w.clone());
            queue.push_back((start, w));
        }
    }
    while let Some((x, w)) = queue.pop_front() {
        for (i, g) in action.generators.iter().enumerate() {
            let y = x.transform(g)?;
            if members.contains_key(&y) {
                continue;
            }
            let mut word = w.word.clone();
            word.push(i);
            let wy = OrbitWitness {
                negated: w.negated,
                word,
            };
            members.insert(y.clone(), wy.clone());
            if members.len() > bound {
                return Err(Error::OrbitOverflow { bound });
            }
            queue.push_back((y, wy));
        }
    }
    Ok(Orbit {
        seed: omega.clone(),
        members,
    })
}

/// Manifold-level inputs to the classifier. Hidden symmetries and
/// minimality are supplied, never computed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ManifoldFlags {
    pub no_hidden_symmetries: bool,
    pub all_fibrations_minimal: bool,
    pub volume: Option<BigRational>,
    pub cusps: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Symmetric,
    NonCommensurable,
    Undetermined,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Symmetric => "Symmetric",
            VerdictKind::NonCommensurable => "NonCommensurable",
            VerdictKind::Undetermined => "Undetermined",
        }
    }
}

/// Which rule of the cascade fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `ω₂ = ±ω₁`.
    OrbitIdentity,
    /// `ω₂` is reached from `ω₁` by a nontrivial symmetry word.
    SymmetryOrbit,
    /// Normalized entropies differ by more than `100·tol`.
    EntropyGap,
    NoHiddenSymmetries,
    /// Every fibration is the unique minimal element of its class.
    UniqueMinimalElement,
    NoRuleApplies,
}

impl Reason {
    pub fn tag(self) -> &'static str {
        match self {
            Reason::OrbitIdentity => "orbit-identity",
            Reason::SymmetryOrbit => "symmetry-orbit",
            Reason::EntropyGap => "entropy-gap",
            Reason::NoHiddenSymmetries => "no-hidden-symmetries",
            Reason::UniqueMinimalElement => "unique-minimal-element",
            Reason::NoRuleApplies => "no-rule-applies",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Orbit(OrbitWitness),
    EntropyGap {
        entropy_a: f64,
        entropy_b: f64,
        gap: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub kind: VerdictKind,
    pub reason: Reason,
    pub witness: Option<Witness>,
    /// Normalized entropies, when the cascade got far enough to need them.
    pub entropies: Option<[f64; 2]>,
}

/// Classification context for pairs of fibrations of one manifold.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    pub flags: &'a ManifoldFlags,
    pub action: &'a SymmetryAction,
    pub ball: &'a NormBall,
    /// Tolerance for entropy comparisons.
    pub tol: f64,
    pub root_tol: f64,
    pub orbit_bound: usize,
}

impl<'a> Classifier<'a> {
    pub fn new(flags: &'a ManifoldFlags, action: &'a SymmetryAction, ball: &'a NormBall) -> Self {
        Classifier {
            flags,
            action,
            ball,
            tol: crate::ENTROPY_TOL,
            root_tol: crate::ROOT_TOL,
            orbit_bound: ORBIT_BOUND,
        }
    }

    fn check(&self, face: &FiberedFace, w: &CohomologyClass) -> Result<()> {
        if !is_primitive(w)? {
            return Err(Error::NotPrimitive { gcd: w.content() });
        }
        if !face.fibered {
            return Err(Error::NotFibered { face: face.id });
        }
        if !cone_contains(face, self.ball, w) {
            return Err(Error::NotInCone { face: face.id });
        }
        Ok(())
    }

    /// Rule cascade; the first matching rule decides.
    pub fn classify(
        &self,
        face1: &FiberedFace,
        face2: &FiberedFace,
        w1: &CohomologyClass,
        w2: &CohomologyClass,
    ) -> Result<PairVerdict> {
        self.check(face1, w1)?;
        self.check(face2, w2)?;

        let orbit = symmetry_orbit(self.action, w1, self.orbit_bound)?;
        if let Some(witness) = orbit.witness(w2) {
            let reason = if witness.is_trivial() {
                Reason::OrbitIdentity
            } else {
                Reason::SymmetryOrbit
            };
            return Ok(PairVerdict {
                kind: VerdictKind::Symmetric,
                reason,
                witness: Some(Witness::Orbit(witness.clone())),
                entropies: None,
            });
        }

        let e1 = normalized_entropy(self.ball, face1, w1, self.root_tol)?.entropy;
        let e2 = normalized_entropy(self.ball, face2, w2, self.root_tol)?.entropy;
        let gap = (e1 - e2).abs();
        let entropies = Some([e1, e2]);
        let non_commensurable = |reason, witness| PairVerdict {
            kind: VerdictKind::NonCommensurable,
            reason,
            witness,
            entropies,
        };
        if gap > 100.0 * self.tol {
            return Ok(non_commensurable(
                Reason::EntropyGap,
                Some(Witness::EntropyGap {
                    entropy_a: e1,
                    entropy_b: e2,
                    gap,
                }),
            ));
        }
        if self.flags.no_hidden_symmetries {
            return Ok(non_commensurable(Reason::NoHiddenSymmetries, None));
        }
        if self.flags.all_fibrations_minimal {
            return Ok(non_commensurable(Reason::UniqueMinimalElement, None));
        }
        Ok(PairVerdict {
            kind: VerdictKind::Undetermined,
            reason: Reason::NoRuleApplies,
            witness: None,
            entropies,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateReason {
    /// Quotient volume below the smallest cusped volume `2V₀`.
    CuspedMinimum,
    /// Quotient volume below `V₈` forces a one-cusped quotient, which has
    /// too few cusps for this cover.
    TwoCuspThreshold,
    NoBoundViolated,
}

impl GateReason {
    pub fn tag(self) -> &'static str {
        match self {
            GateReason::CuspedMinimum => "cusped-minimum",
            GateReason::TwoCuspThreshold => "two-cusp-threshold",
            GateReason::NoBoundViolated => "no-bound-violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityGate {
    pub possible: bool,
    pub reason: GateReason,
    pub quotient_volume: f64,
    /// The volume threshold the reason refers to.
    pub threshold: f64,
}

pub fn tetrahedron_volume() -> BigRational {
    parse_decimal(TETRAHEDRON_VOLUME).expect("valid constant")
}

pub fn octahedron_volume() -> BigRational {
    parse_decimal(OCTAHEDRON_VOLUME).expect("valid constant")
}

/// Can a cusped hyperbolic manifold of this volume and cusp count cover
/// another one with the given degree? Exact rational comparisons.
pub fn volume_minimality_gate(
    volume: &BigRational,
    cusps: u32,
    degree: u64,
) -> Result<MinimalityGate> {
    if !volume.is_positive() {
        return Err(Error::InvalidArgument("volume must be positive"));
    }
    if degree < 2 {
        return Err(Error::InvalidArgument("covering degree must be at least 2"));
    }
    let quotient = volume / BigRational::from_integer(BigInt::from(degree));
    let cusped_min = tetrahedron_volume() * BigRational::from_integer(BigInt::from(2));
    let two_cusp_min = octahedron_volume();
    let quotient_volume = to_f64(&quotient);

    let (possible, reason, threshold) = if quotient < cusped_min {
        (false, GateReason::CuspedMinimum, to_f64(&cusped_min))
    } else if quotient < two_cusp_min && u64::from(cusps) > degree {
        // a one-cusped quotient lifts to at most `degree` cusps
        (false, GateReason::TwoCuspThreshold, to_f64(&two_cusp_min))
    } else {
        (true, GateReason::NoBoundViolated, to_f64(&cusped_min))
    };
    Ok(MinimalityGate {
        possible,
        reason,
        quotient_volume,
        threshold,
    })
}
