//! Acceptance criteria, one line each. Tolerances and time budgets are fixed
//! here; the process fails if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fibercomm::descriptor::{parse_descriptor, MAGIC, SIX22};
use fibercomm::report::Payload;
use fibercomm::{run_command, ManifoldDescriptor};
use fibercomm_core::commensurability::tetrahedron_volume;
use fibercomm_core::rational::parse_decimal;
use fibercomm_core::{
    analyze_cover, concavity_probe, dilatation, enumerate_primitive_classes, evaluate_norm,
    fiber_kernel, kernel_basis, normalized_entropy, search_nonsymmetric, smith_normal_form,
    specialize, top_faces, volume_minimality_gate, Classifier, CohomologyClass, FibrationPair,
    IntMatrix, LaurentPolynomial, NormBall, VerdictKind, ROOT_TOL,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6_22;
const DILATATION_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-9;
const CONCAVITY_MARGIN: f64 = 1e-9;

type Outcome = Result<String, String>;
type Check = Box<dyn FnMut(&mut ChaCha8Rng) -> Outcome>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn six22() -> ManifoldDescriptor {
    parse_descriptor(SIX22).expect("bundled six22")
}

/// The face carrying the braid fibration `T`.
fn braid_face_id(d: &ManifoldDescriptor) -> usize {
    d.fibered_face_of(&d.named_classes["sigma1_sigma2inv"])
        .expect("fibered")
        .id
}

/// Primitive classes `nU + mT` in the braid cone with norm at most 6.
fn criterion3_classes(d: &ManifoldDescriptor) -> Vec<CohomologyClass> {
    let face = d.face(braid_face_id(d)).unwrap();
    enumerate_primitive_classes(face, &d.ball, 6).unwrap()
}

fn square_ball() -> Outcome {
    let out = run_command(["--descriptor", "six22", "faces"]);
    ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    let Some(Payload::Faces { faces }) = out.report.map(|r| r.payload) else {
        return Err("no faces payload".into());
    };
    ensure!(faces.len() == 4, "{} faces", faces.len());
    Ok("4 top faces".into())
}

/// Perron root of a positive integer matrix by exact power iteration.
fn perron_root(m: [[u128; 2]; 2]) -> f64 {
    let mut v = [1u128, 1u128];
    let mut prev = v;
    for _ in 0..60 {
        prev = v;
        v = [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ];
    }
    v[0] as f64 / prev[0] as f64
}

fn dilatation_oracle() -> Outcome {
    let d = six22();
    let w = d.named_classes["sigma1_sigma2inv"].clone();
    let face = d.fibered_face_of(&w).ok_or("braid class is not fibered")?;
    let lambda = dilatation(&d.ball, face, &w, ROOT_TOL).map_err(|e| e.to_string())?;
    let oracle = perron_root([[2, 1], [1, 1]]);
    ensure!(
        (oracle - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15,
        "oracle {oracle}"
    );
    let err = (lambda - oracle).abs();
    ensure!(err <= DILATATION_TOL, "lambda {lambda} vs {oracle}");
    Ok(format!("lambda = {lambda:.12}, |error| = {err:.1e}"))
}

fn symmetric_entropies() -> Outcome {
    let d = six22();
    let classes = criterion3_classes(&d);
    let expected: Vec<CohomologyClass> =
        [[-2, 3], [-1, 2], [-1, 3], [0, 1], [1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|v| CohomologyClass::new(v.to_vec()))
            .collect();
    ensure!(classes == expected, "class list {classes:?}");
    let mut worst: f64 = 0.0;
    for w in &classes {
        let mirror = CohomologyClass::new(vec![-w.coords()[0], w.coords()[1]]);
        let f1 = d.fibered_face_of(w).ok_or("not fibered")?;
        let f2 = d.fibered_face_of(&mirror).ok_or("mirror not fibered")?;
        let e1 = normalized_entropy(&d.ball, f1, w, ROOT_TOL)
            .map_err(|e| e.to_string())?
            .entropy;
        let e2 = normalized_entropy(&d.ball, f2, &mirror, ROOT_TOL)
            .map_err(|e| e.to_string())?
            .entropy;
        worst = worst.max((e1 - e2).abs());
    }
    ensure!(
        worst <= SYMMETRY_TOL,
        "max |ent(nU+mT) - ent(-nU+mT)| = {worst:e}"
    );
    Ok(format!(
        "{} classes, max difference {worst:.1e}",
        classes.len()
    ))
}

fn strict_concavity(rng: &mut ChaCha8Rng) -> Outcome {
    let d = six22();
    let face = d.face(braid_face_id(&d)).unwrap();
    // Int(Δ) = {(a, 1/2) : |a| < 1/2}
    let grid: Vec<i64> = (-4..=4).collect();
    let mut triples = BTreeSet::new();
    while triples.len() < 25 {
        let a = *grid.choose(rng).unwrap();
        let b = *grid.choose(rng).unwrap();
        let s = rng.gen_range(1..=3i64);
        if a != b {
            triples.insert((a.min(b), a.max(b), s));
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut min_margin = f64::INFINITY;
    for &(a, b, s) in &triples {
        let p = vec![BigRational::new(a.into(), 10.into()), half.clone()];
        let q = vec![BigRational::new(b.into(), 10.into()), half.clone()];
        let s = BigRational::new(s.into(), 4.into());
        let probe = concavity_probe(&d.ball, face, &p, &q, &s, CONCAVITY_MARGIN)
            .map_err(|e| e.to_string())?;
        let margin = probe.lhs - probe.rhs;
        ensure!(
            probe.strict && margin > CONCAVITY_MARGIN,
            "a = {a}/10, b = {b}/10, s = {s}: margin {margin:e}"
        );
        min_margin = min_margin.min(margin);
    }
    Ok(format!(
        "{} triples, min margin {min_margin:.3e}",
        triples.len()
    ))
}

fn classification_totality() -> Outcome {
    let d = six22();
    ensure!(
        d.flags.all_fibrations_minimal,
        "six22 should have all fibrations minimal"
    );
    let classes = criterion3_classes(&d);
    let c = Classifier::new(&d.flags, &d.symmetries, &d.ball);
    let (mut sym, mut non) = (0, 0);
    for a in &classes {
        for b in &classes {
            let fa = d.fibered_face_of(a).unwrap();
            let fb = d.fibered_face_of(b).unwrap();
            match c.classify(fa, fb, a, b).map_err(|e| e.to_string())?.kind {
                VerdictKind::Symmetric => sym += 1,
                VerdictKind::NonCommensurable => non += 1,
                VerdictKind::Undetermined => return Err(format!("{a} {b} undetermined")),
            }
        }
    }
    Ok(format!(
        "{} pairs: {sym} symmetric, {non} non-commensurable",
        sym + non
    ))
}

fn volume_gate() -> Outcome {
    let magic = parse_decimal("5.33").unwrap();
    let g = volume_minimality_gate(&magic, 3, 3).map_err(|e| e.to_string())?;
    ensure!(!g.possible, "magic degree 3 reported possible");
    ensure!(
        (g.quotient_volume - 1.7766666666666666).abs() < 1e-12,
        "quotient {}",
        g.quotient_volume
    );
    let two_v0 = fibercomm_core::rational::to_f64(&tetrahedron_volume()) * 2.0;
    ensure!(
        (two_v0 - 2.03).abs() < 0.005 && g.quotient_volume < two_v0,
        "2V0 = {two_v0}"
    );

    let bundled_magic = parse_descriptor(MAGIC).unwrap();
    let g = volume_minimality_gate(bundled_magic.volume.as_ref().unwrap(), 3, 3)
        .map_err(|e| e.to_string())?;
    ensure!(!g.possible, "bundled magic degree 3 reported possible");

    let four_v0 = tetrahedron_volume() * BigRational::from_integer(4.into());
    ensure!(
        six22().volume.as_ref() == Some(&four_v0),
        "six22 volume is not 4 V0"
    );
    for degree in 3..=12 {
        let g = volume_minimality_gate(&four_v0, 2, degree).map_err(|e| e.to_string())?;
        ensure!(!g.possible, "six22 degree {degree} reported possible");
    }
    Ok(format!(
        "5.33/3 = {:.4} < 2V0 = {two_v0:.4}; 4V0 excluded for degrees 3..12",
        5.33 / 3.0
    ))
}

fn primitive(rng: &mut ChaCha8Rng, b: usize) -> CohomologyClass {
    loop {
        let v: Vec<i64> = (0..b).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1 {
            return CohomologyClass::new(v);
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng, conjugate: bool) -> FibrationPair {
    loop {
        let b = rng.gen_range(2..=4);
        let (w1, w2) = (primitive(rng, b), primitive(rng, b));
        let chi = -rng.gen_range(1..=12);
        if let Ok(p) = FibrationPair::new(w1, w2, chi, chi, conjugate) {
            return p;
        }
    }
}

fn subgroup_size(values: &[u64], n: u64) -> u64 {
    let mut seen = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &v in values {
            let y = (x + v) % n;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

fn cover_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..100 {
        let conjugate = rng.gen_bool(0.5);
        let pair = random_pair(rng, conjugate);
        let n = rng.gen_range(1..=30u64);
        let values: Vec<u64> = fiber_kernel(pair.w2())
            .map_err(|e| e.to_string())?
            .iter()
            .map(|a| u64::try_from(pair.w1().pair(a).mod_floor(&BigInt::from(n))).unwrap())
            .collect();
        let size = subgroup_size(&values, n);
        let r = analyze_cover(&pair, n).map_err(|e| e.to_string())?;
        let got = (r.d, r.components, r.component_degree);
        ensure!(
            got == (n / size, n / size, size),
            "instance {i}: {pair:?} n={n}: {got:?}, oracle order {size}"
        );
    }
    Ok("100 instances match".into())
}

fn lemma_threshold(rng: &mut ChaCha8Rng) -> Outcome {
    let mut max_m = 0;
    for i in 0..50 {
        let pair = random_pair(rng, true);
        let m = analyze_cover(&pair, 1)
            .map_err(|e| e.to_string())?
            .kernel_gcd;
        max_m = max_m.max(m);
        let n_max = m + rng.gen_range(1..=40);
        let found: BTreeSet<u64> = search_nonsymmetric(&pair, n_max)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|r| r.degree)
            .collect();
        for n in (m + 1)..=n_max {
            ensure!(
                found.contains(&n),
                "pair {i} ({pair:?}): n = {n} > m = {m} missing"
            );
        }
        for &n in &found {
            ensure!(m % n != 0, "pair {i}: n = {n} divides m = {m}");
        }
    }
    Ok(format!("50 pairs, largest m = {max_m}"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let e: Vec<BigInt> = (0..r * c)
        .map(|_| BigInt::from(rng.gen_range(-20..=20)))
        .collect();
    IntMatrix::new(r, c, e).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPolynomial {
    let k = rng.gen_range(1..=8);
    let terms: Vec<(Vec<i64>, BigInt)> = (0..k)
        .map(|_| {
            (
                vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
                BigInt::from(rng.gen_range(-5..=5)),
            )
        })
        .collect();
    LaurentPolynomial::from_terms(2, terms).unwrap()
}

fn algebra_suites(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..200 {
        let a = random_matrix(rng);
        let s = smith_normal_form(&a);
        ensure!(
            s.left.mul(&s.diag).unwrap().mul(&s.right).unwrap() == a,
            "matrix {i}: product"
        );
        ensure!(
            s.left.determinant().unwrap().abs().is_one(),
            "matrix {i}: left not unimodular"
        );
        ensure!(
            s.right.determinant().unwrap().abs().is_one(),
            "matrix {i}: right not unimodular"
        );
        let f = s.invariant_factors();
        for w in f.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            ensure!(ok, "matrix {i}: divisibility chain");
        }
        let k = kernel_basis(&a);
        ensure!(k.len() == a.cols() - s.rank(), "matrix {i}: kernel size");
        for v in &k {
            ensure!(
                a.mul_vec(v).unwrap().iter().all(Zero::is_zero),
                "matrix {i}: a v != 0"
            );
        }
    }

    let balls = [six22().ball, parse_descriptor(MAGIC).unwrap().ball];
    for i in 0..200 {
        let ball: &NormBall = &balls[i % 2];
        let b = ball.betti();
        let mut point = || -> Vec<BigRational> {
            (0..b)
                .map(|_| {
                    BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=9).into())
                })
                .collect()
        };
        let (x, y) = (point(), point());
        let sum: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = evaluate_norm(ball, &sum).unwrap();
        let rhs = evaluate_norm(ball, &x).unwrap() + evaluate_norm(ball, &y).unwrap();
        ensure!(lhs <= rhs, "triangle inequality fails at {x:?} {y:?}");
    }
    ensure!(top_faces(&balls[0]).unwrap().len() == 4, "square");

    for i in 0..200 {
        let (p, q) = (random_poly(rng), random_poly(rng));
        let w = CohomologyClass::new(vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
        let lhs = specialize(&(&p + &q), &w).unwrap();
        let rhs = &specialize(&p, &w).unwrap() + &specialize(&q, &w).unwrap();
        ensure!(lhs == rhs, "specialization {i} not linear");
    }
    Ok("200 Smith/kernel, 200 triangle, 200 linearity checks".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: Vec<(u32, &str, u64, Check)> = vec![
        (1, "square ball", 1, Box::new(|_| square_ball())),
        (2, "dilatation oracle", 1, Box::new(|_| dilatation_oracle())),
        (
            3,
            "symmetric entropies",
            10,
            Box::new(|_| symmetric_entropies()),
        ),
        (4, "strict concavity", 30, Box::new(strict_concavity)),
        (
            5,
            "classification totality",
            10,
            Box::new(|_| classification_totality()),
        ),
        (6, "volume gate", 1, Box::new(|_| volume_gate())),
        (7, "cover oracle", 10, Box::new(cover_oracle)),
        (8, "cover threshold", 10, Box::new(lemma_threshold)),
        (9, "algebra suites", 30, Box::new(algebra_suites)),
    ];

    let mut failures = 0;
    for (id, name, budget, mut run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| run(&mut rng))).unwrap_or_else(|e| {
            Err(format!(
                "panic: {:?}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(e.downcast_ref::<&str>().copied())
            ))
        });
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match (&result, within) {
            (Ok(msg), true) => ("PASS", msg.clone()),
            (Ok(msg), false) => ("FAIL", format!("over budget; {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id} {name:<24} {status}  {:>7.3}s / {budget}s  {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
