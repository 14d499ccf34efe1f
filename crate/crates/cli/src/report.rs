//! Command output: an aligned text table plus a serde payload for `--json`.

use serde::{Deserialize, Serialize};

/// Significant digits for every printed real number.
pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Plain decimal with at most [`SIG_DIGITS`] significant digits, scientific
/// notation outside `[1e-4, 1e12)`.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&exp) {
        return format!("{:.*e}", SIG_DIGITS - 1, x);
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn fmt_class(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceRow {
    pub id: usize,
    pub vertex: Vec<i64>,
    pub fibered: bool,
    pub polynomial: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNorm {
    pub class: Vec<i64>,
    pub norm: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub class: Vec<i64>,
    pub face: usize,
    pub norm: u64,
    pub dilatation: f64,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessRow {
    Orbit {
        negated: bool,
        word: Vec<usize>,
    },
    EntropyGap {
        entropy_a: f64,
        entropy_b: f64,
        gap: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRow {
    pub degree: u64,
    pub kernel_gcd: u64,
    pub d: u64,
    pub components: u64,
    pub component_degree: u64,
    pub component_chi: i64,
    pub fibers_homeomorphic: bool,
    pub nonsymmetric_commensurable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Payload {
    NormEval {
        class: Vec<String>,
        norm: String,
    },
    Faces {
        faces: Vec<FaceRow>,
    },
    Enumerate {
        face: usize,
        max_norm: u64,
        classes: Vec<ClassNorm>,
    },
    Entropy {
        record: EntropyRow,
    },
    EntropyTable {
        face: usize,
        max_norm: u64,
        rows: Vec<EntropyRow>,
        csv: Option<String>,
        svg: Option<String>,
    },
    Concavity {
        face: usize,
        p: Vec<String>,
        q: Vec<String>,
        s: String,
        lhs: f64,
        rhs: f64,
        margin: f64,
        strict: bool,
        classes: Vec<Vec<i64>>,
    },
    Classify {
        a: Vec<i64>,
        b: Vec<i64>,
        kind: String,
        reason: String,
        witness: Option<WitnessRow>,
        entropies: Option<[f64; 2]>,
    },
    Cover {
        w1: Vec<i64>,
        w2: Vec<i64>,
        chi1: i64,
        chi2: i64,
        conjugate_monodromies: bool,
        conjugacy: String,
        report: CoverRow,
    },
    CoverSearch {
        w1: Vec<i64>,
        w2: Vec<i64>,
        n_max: u64,
        kernel_gcd: u64,
        degrees: Vec<u64>,
        reports: Vec<CoverRow>,
    },
    Minimality {
        volume: String,
        cusps: u32,
        degree: u64,
        possible: bool,
        reason: String,
        quotient_volume: f64,
        threshold: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub payload: Payload,
}

impl Report {
    pub fn new(title: impl Into<String>, headers: &[&str], payload: Payload) -> Self {
        Report {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            payload,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render_table(&self) -> String {
        let cols = self.headers.len();
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(cols) {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<w$}", w = width[i]))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.payload).expect("payload serializes");
        s.push('\n');
        s
    }
}
