use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fibercomm_core::commensurability::ORBIT_BOUND;
use fibercomm_core::entropy::{ent_at_face_point, to_face};
use fibercomm_core::rational::{self, parse_rational};
use fibercomm_core::{
    analyze_cover, concavity_probe, enumerate_primitive_classes, evaluate_norm, normalized_entropy,
    search_nonsymmetric, symmetry_orbit, volume_minimality_gate, Classifier, CohomologyClass,
    CoverReport, EntropyRecord, FiberedFace, FibrationPair, LaurentPolynomial, Witness,
};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::descriptor::{resolve, DescriptorError, ManifoldDescriptor};
use crate::report::{
    fmt_class, fmt_real, round_sig, ClassNorm, CoverRow, EntropyRow, FaceRow, Payload, Report,
    WitnessRow,
};
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "fibercomm",
    version,
    about = "Fibered faces, normalized entropy and fibered commensurability"
)]
pub struct Cli {
    /// Descriptor file, or one of the bundled datasets `six22` and `magic`.
    #[arg(long, global = true, default_value = "six22")]
    pub descriptor: String,
    /// Print the machine-readable payload instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Absolute tolerance for entropy comparisons.
    #[arg(long, global = true, default_value_t = fibercomm_core::ENTROPY_TOL)]
    pub tol: f64,
    /// Accuracy of dilatation root isolation.
    #[arg(long, global = true, default_value_t = fibercomm_core::ROOT_TOL)]
    pub root_tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thurston norm evaluation.
    Norm {
        #[command(subcommand)]
        action: NormAction,
    },
    /// Top-dimensional faces of the norm ball.
    Faces,
    /// Primitive classes in the open cone over a face.
    Enumerate {
        #[arg(long)]
        face: usize,
        #[arg(long)]
        max_norm: u64,
    },
    /// Dilatation and normalized entropy of a fibered class.
    Entropy {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Face to use; by default the fibered face whose cone contains the class.
        #[arg(long)]
        face: Option<usize>,
    },
    /// Entropy of every primitive class in a cone up to a norm bound.
    EntropyTable {
        #[arg(long)]
        face: usize,
        #[arg(long)]
        max_norm: u64,
        /// Write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Plot 1/ent along the segment from `--from` to `--to` as SVG.
        #[arg(long, requires_all = ["from", "to"])]
        svg: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Strict concavity check of 1/ent between two face points.
    Concavity {
        #[arg(long)]
        face: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        s: String,
    },
    /// Symmetric, non-commensurable or undetermined.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Cyclic cover of degree n dual to w1 and the preimage of a w2 fiber.
    Cover {
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        #[arg(long)]
        n: u64,
        /// Treat the monodromies as conjugate even without a symmetry witness.
        #[arg(long)]
        assume_conjugate: bool,
    },
    /// Degrees up to n-max giving commensurable, non-symmetric fibrations.
    CoverSearch {
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        assume_conjugate: bool,
    },
    /// Whether the manifold can cover another with the given degree.
    Minimality {
        #[arg(long)]
        degree: u64,
        /// Override the descriptor volume (decimal).
        #[arg(long)]
        volume: Option<String>,
        /// Override the descriptor cusp count.
        #[arg(long)]
        cusps: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NormAction {
    /// Norm of a class; rational coordinates are allowed.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
}

/// A domain error with a stable code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<fibercomm_core::Error> for CliError {
    fn from(e: fibercomm_core::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

type CmdResult = Result<Report, CliError>;

struct Ctx {
    desc: ManifoldDescriptor,
    tol: f64,
    root_tol: f64,
}

pub fn execute(cli: &Cli) -> CmdResult {
    let ctx = Ctx {
        desc: resolve(&cli.descriptor)?,
        tol: cli.tol,
        root_tol: cli.root_tol,
    };
    if !(ctx.tol > 0.0 && ctx.tol.is_finite()) {
        return Err(CliError::new(
            "E_INVALID_ARGUMENT",
            "--tol must be positive",
        ));
    }
    match &cli.command {
        Command::Norm {
            action: NormAction::Eval { class },
        } => norm_eval(&ctx, class),
        Command::Faces => faces(&ctx),
        Command::Enumerate { face, max_norm } => enumerate(&ctx, *face, *max_norm),
        Command::Entropy { class, face } => entropy(&ctx, class, *face),
        Command::EntropyTable {
            face,
            max_norm,
            csv,
            svg,
            from,
            to,
            samples,
        } => {
            let plot = match (svg, from, to) {
                (Some(path), Some(from), Some(to)) => {
                    Some((path.as_path(), from.as_str(), to.as_str(), *samples))
                }
                _ => None,
            };
            entropy_table(&ctx, *face, *max_norm, csv.as_deref(), plot)
        }
        Command::Concavity { face, p, q, s } => concavity(&ctx, *face, p, q, s),
        Command::Classify { a, b } => classify(&ctx, a, b),
        Command::Cover {
            w1,
            w2,
            n,
            assume_conjugate,
        } => cover(&ctx, w1, w2, *n, *assume_conjugate),
        Command::CoverSearch {
            w1,
            w2,
            n_max,
            assume_conjugate,
        } => cover_search(&ctx, w1, w2, *n_max, *assume_conjugate),
        Command::Minimality {
            degree,
            volume,
            cusps,
        } => minimality(&ctx, *degree, volume.as_deref(), *cusps),
    }
}

/// A named class (optionally prefixed with `-`) or comma-separated integers.
pub fn parse_class(desc: &ManifoldDescriptor, s: &str) -> Result<CohomologyClass, CliError> {
    let s = s.trim();
    let (neg, label) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if let Some(w) = desc.named_classes.get(label) {
        return Ok(if neg { -w } else { w.clone() });
    }
    let coords: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| {
        CliError::new(
            "E_BAD_CLASS",
            format!("`{s}` is neither a named class nor comma-separated integers"),
        )
    })?;
    if coords.len() != desc.betti {
        return Err(CliError::new(
            "E_DIMENSION_MISMATCH",
            format!(
                "class `{s}` has {} coordinates, expected {}",
                coords.len(),
                desc.betti
            ),
        ));
    }
    Ok(CohomologyClass::new(coords))
}

/// Like [`parse_class`] but with rational coordinates (`1/2,3`).
pub fn parse_point(desc: &ManifoldDescriptor, s: &str) -> Result<Vec<BigRational>, CliError> {
    if let Ok(w) = parse_class(desc, s) {
        return Ok(rational::from_class(&w));
    }
    let v: Result<Vec<BigRational>, _> = s.split(',').map(|x| parse_rational(x.trim())).collect();
    let v = v?;
    if v.len() != desc.betti {
        return Err(CliError::new(
            "E_DIMENSION_MISMATCH",
            format!(
                "point `{s}` has {} coordinates, expected {}",
                v.len(),
                desc.betti
            ),
        ));
    }
    Ok(v)
}

fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn face_by_id(ctx: &Ctx, id: usize) -> Result<&FiberedFace, CliError> {
    ctx.desc.face(id).ok_or_else(|| {
        CliError::new(
            "E_NO_SUCH_FACE",
            format!("no face {id}; the ball has {}", ctx.desc.faces.len()),
        )
    })
}

fn fibered_face_of<'a>(ctx: &'a Ctx, w: &CohomologyClass) -> Result<&'a FiberedFace, CliError> {
    ctx.desc.fibered_face_of(w).ok_or_else(|| {
        CliError::new(
            "E_NOT_IN_CONE",
            format!("no open fibered cone contains {w}"),
        )
    })
}

/// Terms in decreasing degree along `direction`, ties broken lexicographically.
pub fn fmt_laurent(p: &LaurentPolynomial, labels: &[String], direction: &[i64]) -> String {
    let degree = |e: &[i64]| -> i64 { e.iter().zip(direction).map(|(a, b)| a * b).sum() };
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| degree(b).cmp(&degree(a)).then_with(|| b.cmp(a)));
    let mut out = String::new();
    for (exp, coeff) in terms {
        let mono: Vec<String> = exp
            .iter()
            .zip(labels)
            .filter(|(e, _)| **e != 0)
            .map(|(e, l)| {
                if *e == 1 {
                    l.clone()
                } else {
                    format!("{l}^{e}")
                }
            })
            .collect();
        let mag = coeff.abs();
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => mono.join("*"),
            (false, false) => format!("{mag}*{}", mono.join("*")),
        };
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn entropy_row(rec: &EntropyRecord, face: usize) -> EntropyRow {
    EntropyRow {
        class: rec.class.coords().to_vec(),
        face,
        norm: rec.norm,
        dilatation: round_sig(rec.dilatation),
        entropy: round_sig(rec.entropy),
    }
}

fn norm_eval(ctx: &Ctx, class: &str) -> CmdResult {
    let p = parse_point(&ctx.desc, class)?;
    let n = evaluate_norm(&ctx.desc.ball, &p)?;
    let shown = format!("({})", rational_strings(&p).join(","));
    let mut r = Report::new(
        format!("norm on {}", ctx.desc.name),
        &["class", "norm"],
        Payload::NormEval {
            class: rational_strings(&p),
            norm: n.to_string(),
        },
    );
    r.row(vec![shown, n.to_string()]);
    Ok(r)
}

fn faces(ctx: &Ctx) -> CmdResult {
    let rows: Vec<FaceRow> = ctx
        .desc
        .faces
        .iter()
        .map(|f| FaceRow {
            id: f.id,
            vertex: f.supporting_vertex.clone(),
            fibered: f.fibered,
            polynomial: f
                .polynomial
                .as_ref()
                .map(|p| fmt_laurent(p, &ctx.desc.basis_labels, &f.supporting_vertex)),
        })
        .collect();
    let mut r = Report::new(
        format!(
            "{} top faces of the norm ball of {}",
            rows.len(),
            ctx.desc.name
        ),
        &["face", "dual vertex", "fibered", "polynomial"],
        Payload::Faces {
            faces: rows.clone(),
        },
    );
    for f in rows {
        r.row(vec![
            f.id.to_string(),
            fmt_class(&f.vertex),
            f.fibered.to_string(),
            f.polynomial.unwrap_or_else(|| "-".into()),
        ]);
    }
    Ok(r)
}

fn enumerate(ctx: &Ctx, face: usize, max_norm: u64) -> CmdResult {
    let f = face_by_id(ctx, face)?;
    let classes = enumerate_primitive_classes(f, &ctx.desc.ball, max_norm)?;
    let mut rows = Vec::with_capacity(classes.len());
    for w in &classes {
        let n = ctx.desc.ball.class_norm(w)?;
        rows.push(ClassNorm {
            class: w.coords().to_vec(),
            norm: n.unsigned_abs(),
        });
    }
    let mut r = Report::new(
        format!(
            "{} primitive classes in the cone over face {face} with norm <= {max_norm}",
            rows.len()
        ),
        &["class", "norm"],
        Payload::Enumerate {
            face,
            max_norm,
            classes: rows.clone(),
        },
    );
    for c in rows {
        r.row(vec![fmt_class(&c.class), c.norm.to_string()]);
    }
    Ok(r)
}

fn entropy_headers() -> [&'static str; 5] {
    ["class", "face", "norm", "dilatation", "entropy"]
}

fn entropy_cells(e: &EntropyRow) -> Vec<String> {
    vec![
        fmt_class(&e.class),
        e.face.to_string(),
        e.norm.to_string(),
        fmt_real(e.dilatation),
        fmt_real(e.entropy),
    ]
}

fn entropy(ctx: &Ctx, class: &str, face: Option<usize>) -> CmdResult {
    let w = parse_class(&ctx.desc, class)?;
    let f = match face {
        Some(id) => face_by_id(ctx, id)?,
        None => fibered_face_of(ctx, &w)?,
    };
    let rec = normalized_entropy(&ctx.desc.ball, f, &w, ctx.root_tol)?;
    let row = entropy_row(&rec, f.id);
    let mut r = Report::new(
        format!("normalized entropy on {}", ctx.desc.name),
        &entropy_headers(),
        Payload::Entropy {
            record: row.clone(),
        },
    );
    r.row(entropy_cells(&row));
    Ok(r)
}

fn write_csv(path: &Path, rows: &[EntropyRow]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::new("E_IO", format!("{}: {e}", path.display()));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(io)?;
    w.write_record(["class", "norm", "dilatation", "entropy"])
        .map_err(io)?;
    for e in rows {
        w.write_record([
            fmt_class(&e.class),
            e.norm.to_string(),
            fmt_real(e.dilatation),
            fmt_real(e.entropy),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::new("E_IO", format!("{}: {e}", path.display())))
}

fn sample_segment(
    ctx: &Ctx,
    face: &FiberedFace,
    from: &str,
    to: &str,
    samples: usize,
) -> Result<Vec<(f64, f64)>, CliError> {
    if samples < 2 {
        return Err(CliError::new(
            "E_INVALID_ARGUMENT",
            "--samples must be at least 2",
        ));
    }
    let a = to_face(&ctx.desc.ball, face, &parse_point(&ctx.desc, from)?)?;
    let b = to_face(&ctx.desc.ball, face, &parse_point(&ctx.desc, to)?)?;
    let last = BigRational::from_integer((samples as i64 - 1).into());
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = BigRational::from_integer((i as i64).into()) / &last;
        let s = BigRational::one() - &t;
        let mix: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x * &s + y * &t).collect();
        let p = to_face(&ctx.desc.ball, face, &mix)?;
        let ent = ent_at_face_point(&ctx.desc.ball, face, &p, ctx.root_tol)?;
        out.push((rational::to_f64(&t), 1.0 / ent));
    }
    Ok(out)
}

fn entropy_table(
    ctx: &Ctx,
    face: usize,
    max_norm: u64,
    csv_path: Option<&Path>,
    plot: Option<(&Path, &str, &str, usize)>,
) -> CmdResult {
    let f = face_by_id(ctx, face)?;
    let classes = enumerate_primitive_classes(f, &ctx.desc.ball, max_norm)?;
    let mut rows = Vec::with_capacity(classes.len());
    for w in &classes {
        rows.push(entropy_row(
            &normalized_entropy(&ctx.desc.ball, f, w, ctx.root_tol)?,
            face,
        ));
    }
    if let Some(path) = csv_path {
        write_csv(path, &rows)?;
    }
    if let Some((path, from, to, samples)) = plot {
        let pts = sample_segment(ctx, f, from, to, samples)?;
        let title = format!(
            "1/ent along face {face} of {} from ({from}) to ({to})",
            ctx.desc.name
        );
        std::fs::write(path, svg::line_plot(&title, "t", "1/ent", &pts))
            .map_err(|e| CliError::new("E_IO", format!("{}: {e}", path.display())))?;
    }
    let mut r = Report::new(
        format!(
            "normalized entropy over face {face} of {}, norm <= {max_norm}",
            ctx.desc.name
        ),
        &entropy_headers(),
        Payload::EntropyTable {
            face,
            max_norm,
            rows: rows.clone(),
            csv: csv_path.map(|p| p.display().to_string()),
            svg: plot.map(|p| p.0.display().to_string()),
        },
    );
    for e in &rows {
        r.row(entropy_cells(e));
    }
    Ok(r)
}

fn concavity(ctx: &Ctx, face: usize, p: &str, q: &str, s: &str) -> CmdResult {
    let f = face_by_id(ctx, face)?;
    let pv = parse_point(&ctx.desc, p)?;
    let qv = parse_point(&ctx.desc, q)?;
    let sv = parse_rational(s)?;
    let probe = concavity_probe(&ctx.desc.ball, f, &pv, &qv, &sv, ctx.tol)?;
    let margin = probe.lhs - probe.rhs;
    let strict = probe.strict;
    let classes: Vec<Vec<i64>> = probe.classes.iter().map(|c| c.coords().to_vec()).collect();
    let mut r = Report::new(
        format!("concavity of 1/ent on face {face} of {}", ctx.desc.name),
        &[
            "p",
            "q",
            "s",
            "1/ent(mix)",
            "interpolated",
            "margin",
            "strict",
        ],
        Payload::Concavity {
            face,
            p: rational_strings(&pv),
            q: rational_strings(&qv),
            s: sv.to_string(),
            lhs: round_sig(probe.lhs),
            rhs: round_sig(probe.rhs),
            margin: round_sig(margin),
            strict,
            classes: classes.clone(),
        },
    );
    let point = |v: &[BigRational]| format!("({})", rational_strings(v).join(","));
    r.row(vec![
        point(&pv),
        point(&qv),
        sv.to_string(),
        fmt_real(probe.lhs),
        fmt_real(probe.rhs),
        fmt_real(margin),
        strict.to_string(),
    ]);
    Ok(r)
}

fn classify(ctx: &Ctx, a: &str, b: &str) -> CmdResult {
    let wa = parse_class(&ctx.desc, a)?;
    let wb = parse_class(&ctx.desc, b)?;
    let fa = fibered_face_of(ctx, &wa)?;
    let fb = fibered_face_of(ctx, &wb)?;
    let classifier = Classifier {
        tol: ctx.tol,
        root_tol: ctx.root_tol,
        ..Classifier::new(&ctx.desc.flags, &ctx.desc.symmetries, &ctx.desc.ball)
    };
    let v = classifier.classify(fa, fb, &wa, &wb)?;
    let witness = v.witness.as_ref().map(|w| match w {
        Witness::Orbit(o) => WitnessRow::Orbit {
            negated: o.negated,
            word: o.word.clone(),
        },
        Witness::EntropyGap {
            entropy_a,
            entropy_b,
            gap,
        } => WitnessRow::EntropyGap {
            entropy_a: round_sig(*entropy_a),
            entropy_b: round_sig(*entropy_b),
            gap: round_sig(*gap),
        },
    });
    let witness_text = match &witness {
        None => "-".to_string(),
        Some(WitnessRow::Orbit { negated, word }) => {
            let gens: Vec<String> = word.iter().map(|g| format!("g{g}")).collect();
            let mut s = if gens.is_empty() {
                "id".to_string()
            } else {
                gens.join(" then ")
            };
            if *negated {
                s = format!("negate, then {s}");
            }
            s
        }
        Some(WitnessRow::EntropyGap { gap, .. }) => format!("gap {}", fmt_real(*gap)),
    };
    let entropies = v.entropies.map(|[x, y]| [round_sig(x), round_sig(y)]);
    let mut r = Report::new(
        format!("classification on {}", ctx.desc.name),
        &["a", "b", "verdict", "reason", "witness", "ent(a)", "ent(b)"],
        Payload::Classify {
            a: wa.coords().to_vec(),
            b: wb.coords().to_vec(),
            kind: v.kind.as_str().into(),
            reason: v.reason.tag().into(),
            witness,
            entropies,
        },
    );
    let (ea, eb) = match entropies {
        Some([x, y]) => (fmt_real(x), fmt_real(y)),
        None => ("-".into(), "-".into()),
    };
    r.row(vec![
        wa.to_string(),
        wb.to_string(),
        v.kind.as_str().into(),
        v.reason.tag().into(),
        witness_text,
        ea,
        eb,
    ]);
    Ok(r)
}

/// Builds the pair with `chiᵢ = −‖ωᵢ‖`. Symmetric fibrations have conjugate
/// monodromies, so a symmetry-orbit witness supplies the hypothesis.
fn fibration_pair(
    ctx: &Ctx,
    w1: &str,
    w2: &str,
    assume: bool,
) -> Result<(FibrationPair, String), CliError> {
    let a = parse_class(&ctx.desc, w1)?;
    let b = parse_class(&ctx.desc, w2)?;
    fibered_face_of(ctx, &a)?;
    fibered_face_of(ctx, &b)?;
    let chi1 = -ctx.desc.ball.class_norm(&a)?;
    let chi2 = -ctx.desc.ball.class_norm(&b)?;
    let symmetric = symmetry_orbit(&ctx.desc.symmetries, &a, ORBIT_BOUND)?.contains(&b);
    let (conjugate, how) = if symmetric {
        (true, "symmetry-orbit")
    } else if assume {
        (true, "assumed")
    } else {
        (false, "none")
    };
    Ok((FibrationPair::new(a, b, chi1, chi2, conjugate)?, how.into()))
}

fn cover_row(c: &CoverReport) -> CoverRow {
    CoverRow {
        degree: c.degree,
        kernel_gcd: c.kernel_gcd,
        d: c.d,
        components: c.components,
        component_degree: c.component_degree,
        component_chi: c.component_chi,
        fibers_homeomorphic: c.fibers_homeomorphic,
        nonsymmetric_commensurable: c.nonsymmetric_commensurable,
    }
}

fn cover_headers() -> [&'static str; 7] {
    [
        "n",
        "m",
        "components",
        "component degree",
        "component chi",
        "fibers homeomorphic",
        "non-symmetric commensurable",
    ]
}

fn cover_cells(c: &CoverRow) -> Vec<String> {
    vec![
        c.degree.to_string(),
        c.kernel_gcd.to_string(),
        c.components.to_string(),
        c.component_degree.to_string(),
        c.component_chi.to_string(),
        c.fibers_homeomorphic.to_string(),
        c.nonsymmetric_commensurable.to_string(),
    ]
}

fn cover(ctx: &Ctx, w1: &str, w2: &str, n: u64, assume: bool) -> CmdResult {
    let (pair, conjugacy) = fibration_pair(ctx, w1, w2, assume)?;
    let row = cover_row(&analyze_cover(&pair, n)?);
    let mut r = Report::new(
        format!(
            "degree {n} cover dual to {} and the preimage of a fiber of {} (conjugacy: {conjugacy})",
            pair.w1(),
            pair.w2()
        ),
        &cover_headers(),
        Payload::Cover {
            w1: pair.w1().coords().to_vec(),
            w2: pair.w2().coords().to_vec(),
            chi1: pair.chi1(),
            chi2: pair.chi2(),
            conjugate_monodromies: pair.conjugate_monodromies(),
            conjugacy,
            report: row.clone(),
        },
    );
    r.row(cover_cells(&row));
    Ok(r)
}

fn cover_search(ctx: &Ctx, w1: &str, w2: &str, n_max: u64, assume: bool) -> CmdResult {
    let (pair, conjugacy) = fibration_pair(ctx, w1, w2, assume)?;
    let found = search_nonsymmetric(&pair, n_max)?;
    let kernel_gcd = analyze_cover(&pair, 1)?.kernel_gcd;
    let rows: Vec<CoverRow> = found.iter().map(cover_row).collect();
    let mut r = Report::new(
        format!(
            "degrees n <= {n_max} with commensurable, non-symmetric pullbacks of {} and {} (conjugacy: {conjugacy})",
            pair.w1(),
            pair.w2()
        ),
        &cover_headers(),
        Payload::CoverSearch {
            w1: pair.w1().coords().to_vec(),
            w2: pair.w2().coords().to_vec(),
            n_max,
            kernel_gcd,
            degrees: rows.iter().map(|c| c.degree).collect(),
            reports: rows.clone(),
        },
    );
    for c in &rows {
        r.row(cover_cells(c));
    }
    Ok(r)
}

fn minimality(ctx: &Ctx, degree: u64, volume: Option<&str>, cusps: Option<u32>) -> CmdResult {
    let (vol_text, vol) = match volume {
        Some(s) => (s.to_string(), rational::parse_decimal(s)?),
        None => match (&ctx.desc.file.volume, &ctx.desc.volume) {
            (Some(s), Some(v)) => (s.clone(), v.clone()),
            _ => {
                return Err(CliError::new(
                    "E_MISSING_DATA",
                    format!("{} has no volume", ctx.desc.name),
                ))
            }
        },
    };
    let cusps = cusps.or(ctx.desc.cusps).ok_or_else(|| {
        CliError::new(
            "E_MISSING_DATA",
            format!("{} has no cusp count", ctx.desc.name),
        )
    })?;
    if vol.is_zero() {
        return Err(CliError::new(
            "E_INVALID_ARGUMENT",
            "volume must be positive",
        ));
    }
    let g = volume_minimality_gate(&vol, cusps, degree)?;
    let mut r = Report::new(
        format!(
            "covering obstruction for {} at degree {degree}",
            ctx.desc.name
        ),
        &[
            "volume",
            "cusps",
            "degree",
            "quotient volume",
            "threshold",
            "possible",
            "reason",
        ],
        Payload::Minimality {
            volume: vol_text.clone(),
            cusps,
            degree,
            possible: g.possible,
            reason: g.reason.tag().into(),
            quotient_volume: round_sig(g.quotient_volume),
            threshold: round_sig(g.threshold),
        },
    );
    r.row(vec![
        vol_text,
        cusps.to_string(),
        degree.to_string(),
        fmt_real(g.quotient_volume),
        fmt_real(g.threshold),
        g.possible.to_string(),
        g.reason.tag().into(),
    ]);
    Ok(r)
}
