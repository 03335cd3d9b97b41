use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dualgraph::{has_errors, validate_indices, Finding, Severity};
use crate::holonomy::{representation_class, residual_divisor, RepresentationClass, ResidualDivisor};
use crate::intersection::{definiteness, intersection_matrix, Definiteness, IntersectionMatrix};
use crate::verdict::{verdict, Certificate, Status};
use crate::DualGraph;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    /// `sha256:` digest of the raw input bytes.
    pub input_digest: String,
    pub findings: Vec<Finding>,
    pub intersection_matrix: IntersectionMatrix,
    pub definiteness: Definiteness,
    pub representation: RepresentationClass,
    /// Absent when the representation is not trivial or a saddle-node
    /// crossing is present; `residual_divisor_note` says why.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_divisor: Option<ResidualDivisor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_divisor_note: Option<String>,
    /// Absent when validation reported errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn analyze(g: &DualGraph, input: &[u8]) -> AnalysisReport {
    let findings = validate_indices(g);
    let matrix = intersection_matrix(g);
    let def = definiteness(&matrix);
    let (residual_divisor, residual_divisor_note) = match residual_divisor(g) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let certificate = if has_errors(&findings) {
        None
    } else {
        verdict(g).ok()
    };
    AnalysisReport {
        input_digest: input_digest(input),
        findings,
        intersection_matrix: matrix,
        definiteness: def,
        representation: representation_class(g),
        residual_divisor,
        residual_divisor_note,
        certificate,
    }
}

pub fn findings_text(findings: &[Finding]) -> String {
    let mut out = String::new();
    for f in findings {
        let level = match f.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        };
        let _ = writeln!(out, "{level:<7} {:<28} {:<12} {}", f.code, f.subject, f.message);
    }
    out
}

pub fn certificate_text(c: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "conclusion: {:?}", c.conclusion);
    let _ = writeln!(out, "rule:       {}", c.rule);
    for h in &c.hypotheses {
        let mark = match h.status {
            Status::Satisfied => "ok  ",
            Status::Failed => "FAIL",
            Status::Skipped => "skip",
        };
        let _ = writeln!(out, "  [{mark}] {}/{}: {}", h.rule, h.name, h.evidence);
    }
    if let Some(s) = &c.witnesses.subcurve {
        let _ = writeln!(out, "subcurve:   {}", s.join(", "));
    }
    if let Some(b) = &c.witnesses.count_bound {
        let _ = writeln!(
            out,
            "count bound: declared {} >= lower bound {} ({})",
            b.declared_m,
            b.lower_bound,
            if b.holds { "holds" } else { "violated" }
        );
    }
    if let Some(k) = c.witnesses.torsion_order {
        let _ = writeln!(out, "torsion order: {k}");
    }
    if let Some(gr) = &c.witnesses.gorenstein {
        let _ = writeln!(out, "gorenstein: a_i = k = {}", gr.k);
    }
    out
}

pub fn report_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input {}", r.input_digest);
    let _ = writeln!(out, "\nfindings:");
    out.push_str(&findings_text(&r.findings));
    let _ = writeln!(out, "\nintersection matrix ({}):", r.intersection_matrix.ids.join(", "));
    for row in &r.intersection_matrix.entries {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        let _ = writeln!(out, "  {}", cells.join(""));
    }
    let _ = writeln!(
        out,
        "negative definite: {}, determinant {}",
        r.definiteness.negative_definite, r.definiteness.determinant
    );
    let _ = write!(out, "\nrepresentation: {}", r.representation.kind.name());
    if let Some(k) = r.representation.kind.order() {
        let _ = write!(out, " (order {k})");
    }
    out.push('\n');
    for h in &r.representation.holonomies {
        let v = h.value.as_ref().map_or("undefined".to_string(), ToString::to_string);
        let _ = writeln!(out, "  cycle {}: {v}", h.cycle.join(" "));
    }
    match (&r.residual_divisor, &r.residual_divisor_note) {
        (Some(d), _) => {
            let _ = writeln!(out, "\nresidual divisor:");
            for (id, v) in d.residues.iter().chain(&d.separatrix_residues) {
                let _ = writeln!(out, "  {id}: {v}");
            }
        }
        (None, Some(note)) => {
            let _ = writeln!(out, "\nresidual divisor: none ({note})");
        }
        (None, None) => {}
    }
    out.push('\n');
    match &r.certificate {
        Some(c) => out.push_str(&certificate_text(c)),
        None => out.push_str("no verdict: index validation reported errors\n"),
    }
    out
}
