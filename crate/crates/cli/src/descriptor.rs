//! Manifold descriptor files: JSON schema, loading and validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use fibercomm_core::commensurability::ORBIT_BOUND;
use fibercomm_core::rational::parse_decimal;
use fibercomm_core::{
    norm_from_newton, top_faces, CohomologyClass, FiberedFace, IntMatrix, LaurentPolynomial,
    ManifoldFlags, NormBall, SymmetryAction,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

pub const SIX22: &str = include_str!("../data/six22.json");
pub const MAGIC: &str = include_str!("../data/magic.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    Io {
        path: String,
        message: String,
    },
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Validation {
        invariant: &'static str,
        detail: String,
    },
}

impl DescriptorError {
    pub fn code(&self) -> &'static str {
        match self {
            DescriptorError::Io { .. } => "E_IO",
            DescriptorError::Parse { .. } => "E_PARSE",
            DescriptorError::Validation { .. } => "E_VALIDATION",
        }
    }
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescriptorError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            DescriptorError::Parse {
                line,
                column,
                message,
            } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            DescriptorError::Validation { invariant, detail } => write!(f, "{invariant}: {detail}"),
        }
    }
}

impl std::error::Error for DescriptorError {}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> DescriptorError {
    DescriptorError::Validation {
        invariant,
        detail: detail.into(),
    }
}

/// On-disk form of a Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub exp: Vec<i64>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsFile {
    pub no_hidden_symmetries: bool,
    pub all_fibrations_minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormSourceFile {
    Newton { polynomial: PolynomialFile },
    DualVertices { vertices: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceFile {
    pub id: usize,
    /// Optional cross-check of the supporting dual vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vec<i64>>,
    pub fibered: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub name: String,
    pub betti: usize,
    pub basis_labels: Vec<String>,
    /// Decimal string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusps: Option<u32>,
    pub flags: FlagsFile,
    #[serde(default)]
    pub symmetries: Vec<Vec<Vec<i64>>>,
    pub norm_source: NormSourceFile,
    pub faces: Vec<FaceFile>,
    #[serde(default)]
    pub named_classes: BTreeMap<String, Vec<i64>>,
    /// Provenance annotations keyed by field path.
    #[serde(default)]
    pub sources: BTreeMap<String, String>,
}

/// A validated descriptor.
#[derive(Debug, Clone)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub betti: usize,
    pub basis_labels: Vec<String>,
    pub volume: Option<BigRational>,
    pub cusps: Option<u32>,
    pub flags: ManifoldFlags,
    pub symmetries: SymmetryAction,
    pub ball: NormBall,
    /// Every top face of the ball, in id order.
    pub faces: Vec<FiberedFace>,
    pub named_classes: BTreeMap<String, CohomologyClass>,
    pub sources: BTreeMap<String, String>,
    pub file: DescriptorFile,
}

impl ManifoldDescriptor {
    pub fn face(&self, id: usize) -> Option<&FiberedFace> {
        self.faces.get(id)
    }

    /// The fibered face whose open cone contains `w`, if any.
    pub fn fibered_face_of(&self, w: &CohomologyClass) -> Option<&FiberedFace> {
        self.faces
            .iter()
            .find(|f| f.fibered && fibercomm_core::cone_contains(f, &self.ball, w))
    }
}

fn polynomial(p: &PolynomialFile, betti: usize) -> Result<LaurentPolynomial, DescriptorError> {
    for t in &p.terms {
        if t.exp.len() != betti {
            return Err(invalid(
                "polynomial exponents have length betti",
                format!(
                    "exponent {:?} has length {}, expected {betti}",
                    t.exp,
                    t.exp.len()
                ),
            ));
        }
    }
    let terms = p
        .terms
        .iter()
        .map(|t| (t.exp.clone(), BigInt::from(t.coeff)));
    LaurentPolynomial::from_terms(betti, terms)
        .map_err(|e| invalid("polynomial is well formed", e.to_string()))
}

pub fn parse_descriptor(text: &str) -> Result<ManifoldDescriptor, DescriptorError> {
    let file: DescriptorFile = serde_json::from_str(text).map_err(|e| DescriptorError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(file)
}

pub fn load_descriptor(path: &Path) -> Result<ManifoldDescriptor, DescriptorError> {
    let text = std::fs::read_to_string(path).map_err(|e| DescriptorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_descriptor(&text)
}

/// `six22`, `magic`, or a path to a descriptor file.
pub fn resolve(spec: &str) -> Result<ManifoldDescriptor, DescriptorError> {
    match spec {
        "six22" => parse_descriptor(SIX22),
        "magic" => parse_descriptor(MAGIC),
        path => load_descriptor(Path::new(path)),
    }
}

pub fn validate(file: DescriptorFile) -> Result<ManifoldDescriptor, DescriptorError> {
    let b = file.betti;
    if b == 0 {
        return Err(invalid("betti is positive", "betti = 0"));
    }
    if file.basis_labels.len() != b {
        return Err(invalid(
            "basis_labels has length betti",
            format!("{} labels for betti {b}", file.basis_labels.len()),
        ));
    }

    let volume = match &file.volume {
        None => None,
        Some(s) => {
            let v = parse_decimal(s)
                .map_err(|e| invalid("volume is a decimal string", e.to_string()))?;
            if !v.is_positive() {
                return Err(invalid("volume is positive", s.clone()));
            }
            Some(v)
        }
    };

    let ball = match &file.norm_source {
        NormSourceFile::DualVertices { vertices } => {
            if let Some(v) = vertices.iter().find(|v| v.len() != b) {
                return Err(invalid("dual vertices have length betti", format!("{v:?}")));
            }
            NormBall::new(b, vertices.clone())
        }
        NormSourceFile::Newton { polynomial: p } => norm_from_newton(&polynomial(p, b)?),
    }
    .map_err(|e| invalid("norm ball is centrally symmetric", e.to_string()))?;
    let mut faces =
        top_faces(&ball).map_err(|e| invalid("norm is nondegenerate", e.to_string()))?;

    let mut seen = vec![false; faces.len()];
    for entry in &file.faces {
        let face = faces.get_mut(entry.id).ok_or_else(|| {
            invalid(
                "face ids index the top faces",
                format!("face {} of {}", entry.id, seen.len()),
            )
        })?;
        if std::mem::replace(&mut seen[entry.id], true) {
            return Err(invalid(
                "face ids are unique",
                format!("face {} listed twice", entry.id),
            ));
        }
        if let Some(v) = &entry.vertex {
            if *v != face.supporting_vertex {
                return Err(invalid(
                    "face vertex matches its id",
                    format!(
                        "face {} has vertex {:?}, not {v:?}",
                        entry.id, face.supporting_vertex
                    ),
                ));
            }
        }
        let poly = entry
            .polynomial
            .as_ref()
            .map(|p| polynomial(p, b))
            .transpose()?;
        *face = face.clone().with_data(entry.fibered, poly);
    }

    let mut generators = Vec::with_capacity(file.symmetries.len());
    for (i, m) in file.symmetries.iter().enumerate() {
        if m.len() != b || m.iter().any(|r| r.len() != b) {
            return Err(invalid(
                "symmetries are betti x betti matrices",
                format!("symmetry {i}"),
            ));
        }
        let g = IntMatrix::from_rows(m)
            .map_err(|e| invalid("symmetries are integer matrices", e.to_string()))?;
        // ⟨Sω, v⟩ = ⟨ω, Sᵀv⟩, so the norm is preserved iff Sᵀ permutes D
        let mut image: Vec<Vec<i64>> = ball
            .dual_vertices()
            .iter()
            .map(|v| {
                (0..b)
                    .map(|c| (0..b).map(|r| m[r][c] * v[r]).sum())
                    .collect()
            })
            .collect();
        image.sort();
        if image != ball.dual_vertices() {
            return Err(invalid(
                "symmetries preserve the norm",
                format!("symmetry {i}"),
            ));
        }
        generators.push(g);
    }
    let symmetries = SymmetryAction::new(b, generators, ORBIT_BOUND).map_err(|e| {
        invalid(
            "symmetries are unimodular and generate a finite group",
            e.to_string(),
        )
    })?;

    let mut named_classes = BTreeMap::new();
    for (label, coords) in &file.named_classes {
        if coords.len() != b {
            return Err(invalid(
                "named classes have length betti",
                format!("{label} has length {}, expected {b}", coords.len()),
            ));
        }
        named_classes.insert(label.clone(), CohomologyClass::new(coords.clone()));
    }

    Ok(ManifoldDescriptor {
        name: file.name.clone(),
        betti: b,
        basis_labels: file.basis_labels.clone(),
        flags: ManifoldFlags {
            no_hidden_symmetries: file.flags.no_hidden_symmetries,
            all_fibrations_minimal: file.flags.all_fibrations_minimal,
            volume: volume.clone(),
            cusps: file.cusps,
        },
        volume,
        cusps: file.cusps,
        symmetries,
        ball,
        faces,
        named_classes,
        sources: file.sources.clone(),
        file,
    })
}
