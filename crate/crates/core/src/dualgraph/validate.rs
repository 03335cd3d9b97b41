use serde::Serialize;

use super::{CrossingKind, DualGraph, SingularityKind};
use crate::exactfield::{FieldElement, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: &'static str,
    /// Component, crossing or singularity the finding is about.
    pub subject: String,
    pub message: String,
}

impl Finding {
    fn new(severity: Severity, code: &'static str, subject: &str, message: String) -> Self {
        Finding {
            severity,
            code,
            subject: subject.to_string(),
            message,
        }
    }
}

pub fn has_errors(findings: &[Finding]) -> bool {
    findings.iter().any(|f| f.severity == Severity::Error)
}

/// Check the index data against the vertex-sum rule and flag non-reduced
/// or contradictory markings.
///
/// For every component `C`, the indices of all singular points on `C` must
/// sum to `C^2`. Per component an info finding reports `Z(C)` (number of
/// singular points) and the implied normal degree `C^2 + Z(C)`.
pub fn validate_indices<Q: Scalar>(g: &DualGraph<Q>) -> Vec<Finding> {
    let mut out = Vec::new();
    let field = g.field();

    for (xi, x) in g.crossings().iter().enumerate() {
        if let CrossingKind::NonDegenerate { cs_tail } = &x.kind {
            if cs_tail.is_positive_rational() {
                out.push(Finding::new(
                    Severity::Warning,
                    "non_reduced_crossing",
                    &x.id,
                    format!(
                        "non-reduced crossing: index {cs_tail} is a positive rational (crossing #{})",
                        xi + 1
                    ),
                ));
            }
        }
    }

    for (v, c) in g.components().iter().enumerate() {
        let mut sum: FieldElement<Q> = field.zero();
        let mut unknown = Vec::new();
        let mut z = 0usize;

        for x in g.incident(v) {
            z += 1;
            match g.cs_at(x, v) {
                Some(cs) => sum = &sum + &cs,
                None => unknown.push(g.crossings()[x].id.clone()),
            }
        }
        for s in &c.smooth_singularities {
            z += 1;
            match &s.cs {
                Some(cs) => sum = &sum + cs,
                None => unknown.push(s.id.clone()),
            }
            if s.kind == SingularityKind::NonDegenerate
                && s.cs.as_ref().is_some_and(FieldElement::is_positive_rational)
            {
                out.push(Finding::new(
                    Severity::Warning,
                    "non_reduced_singularity",
                    &s.id,
                    format!("non-reduced singularity on {}: positive rational index", c.id),
                ));
            }
            if s.kind == SingularityKind::SaddleNodeStrongOnC
                && s.cs.as_ref().is_some_and(|e| !e.is_zero())
            {
                out.push(Finding::new(
                    Severity::Warning,
                    "strong_separatrix_index",
                    &s.id,
                    format!("strong separatrix along {} should have index 0", c.id),
                ));
            }
            if s.kind == SingularityKind::SaddleNodeWeakOnC && !s.has_transverse_separatrix {
                out.push(Finding::new(
                    Severity::Warning,
                    "missing_strong_separatrix",
                    &s.id,
                    format!(
                        "weak separatrix along {}: the strong separatrix is transverse and always exists",
                        c.id
                    ),
                ));
            }
        }

        let target = field.from_i64(c.self_intersection);
        if unknown.is_empty() {
            if sum != target {
                out.push(Finding::new(
                    Severity::Error,
                    "vertex_sum",
                    &c.id,
                    format!(
                        "indices on {} sum to {sum}, expected self-intersection {}",
                        c.id, c.self_intersection
                    ),
                ));
            }
        } else {
            out.push(Finding::new(
                Severity::Warning,
                "vertex_sum_unchecked",
                &c.id,
                format!(
                    "vertex sum on {} not checkable: unknown index at {}",
                    c.id,
                    unknown.join(", ")
                ),
            ));
        }

        out.push(Finding::new(
            Severity::Info,
            "normal_degree",
            &c.id,
            format!(
                "Z = {z}, N.C = C^2 + Z = {}",
                c.self_intersection + z as i64
            ),
        ));
    }

    if g.closed_world() && g.has_smooth_singularities() {
        out.push(Finding::new(
            Severity::Error,
            "closed_world_contradiction",
            "closed_world",
            "closed_world declares no singularities off the crossings, but smooth-point singularities are listed".into(),
        ));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::parse_graph;
    use crate::Rational;

    fn errors(doc: &str) -> Vec<Finding> {
        let g: DualGraph<Rational> = parse_graph(doc).unwrap();
        validate_indices(&g)
    }

    #[test]
    fn p2_cycle_is_consistent() {
        // t = 2: cs_tail = -t, 1 + t, (1 + t)/t
        let f = errors(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "C1", "self_intersection": 1}, {"id": "C2", "self_intersection": 1},
                             {"id": "C3", "self_intersection": 1}],
              "crossings": [
                {"tail": "C1", "head": "C2", "kind": "nondegenerate", "cs_tail": ["-2"]},
                {"tail": "C1", "head": "C3", "kind": "nondegenerate", "cs_tail": ["3"]},
                {"tail": "C2", "head": "C3", "kind": "nondegenerate", "cs_tail": ["3/2"]}]}"#,
        );
        assert!(!has_errors(&f), "{f:?}");
        // 3 and 3/2 are positive rationals
        assert_eq!(f.iter().filter(|x| x.code == "non_reduced_crossing").count(), 2);
    }

    #[test]
    fn vertex_sum_mismatch_is_an_error() {
        let f = errors(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "E1", "self_intersection": -2}, {"id": "E2", "self_intersection": -2}],
              "crossings": [{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["-1"]}]}"#,
        );
        let errs: Vec<_> = f.iter().filter(|x| x.severity == Severity::Error).collect();
        assert_eq!(errs.len(), 2);
        assert!(errs[0].message.contains("expected self-intersection -2"));
    }

    #[test]
    fn positive_rational_index_warns() {
        let f = errors(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "E1", "self_intersection": 2}, {"id": "E2", "self_intersection": 0}],
              "crossings": [{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["2"]}],
              "closed_world": false}"#,
        );
        assert!(f.iter().any(|x| x.code == "non_reduced_crossing" && x.severity == Severity::Warning));
    }

    #[test]
    fn unknown_weak_index_downgrades_to_warning() {
        let f = errors(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "E1", "self_intersection": -2}, {"id": "E2", "self_intersection": 0}],
              "crossings": [{"tail": "E1", "head": "E2", "kind": "saddle_node", "weak": "E1", "cs_weak": null}]}"#,
        );
        // E2 is the strong side: index 0 = E2^2, fine; E1 unknown
        assert!(!has_errors(&f));
        assert!(f.iter().any(|x| x.code == "vertex_sum_unchecked" && x.subject == "E1"));
    }

    #[test]
    fn normal_degree_info() {
        let f = errors(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "E", "self_intersection": -1,
                 "smooth_singularities": [{"id": "s", "kind": "nondegenerate", "cs": ["-1"], "separatrix": true}]}]}"#,
        );
        let info = f.iter().find(|x| x.code == "normal_degree").unwrap();
        assert_eq!(info.message, "Z = 1, N.C = C^2 + Z = 0");
    }

    #[test]
    fn closed_world_with_smooth_points_is_contradictory() {
        let f = errors(
            r#"{"field": {"min_poly": ["0"]}, "closed_world": true,
              "components": [{"id": "E", "self_intersection": -1,
                 "smooth_singularities": [{"id": "s", "kind": "nondegenerate", "cs": ["-1"]}]}]}"#,
        );
        assert!(f.iter().any(|x| x.code == "closed_world_contradiction"));
    }
}
