//! Rule engine: applies the existence and non-existence results in a fixed
//! order and records every hypothesis it checked.

mod bounds;
mod prune;

use std::cell::OnceCell;
use std::collections::BTreeSet;

use serde::Serialize;

pub use bounds::{gorenstein_reduce, separatrix_bound, CountBound, GorensteinReduction};
pub use prune::{toma_prune, toma_prune_by_index};

use crate::dualgraph::{
    has_errors, induced_subcurve_by_index, validate_indices, CrossingKind, DualGraph, SingularityKind,
};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::holonomy::{representation_class, RepresentationClass, RepresentationKind};
use crate::intersection::{definiteness, intersection_matrix, Definiteness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    SeparatrixExists,
    NotGuaranteed,
    CertifiedAbsent,
    InconsistentInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfied,
    Failed,
    /// A prerequisite of the check does not hold, so it was not evaluated.
    Skipped,
}

pub mod rules {
    pub const TREE: &str = "tree_corollary";
    pub const TRIVIAL: &str = "trivial_representation_theorem";
    pub const TORSION: &str = "torsion_representation_theorem";
    pub const GORENSTEIN: &str = "gorenstein_theorem";
    pub const ABSENT: &str = "closed_world_nonexistence";
    pub const SUBCURVE: &str = "subcurve_corollary";
    pub const NONE: &str = "none";
}

/// Hypotheses of each rule of the chain, in priority order.
pub const RULE_CHAIN: [(&str, &[&str]); 5] = [
    (
        rules::TREE,
        &["dual_graph_is_tree", "exceptional", "pruned_subcurve_criterion"],
    ),
    (
        rules::TRIVIAL,
        &["crossings_nondegenerate", "representation_trivial", "exceptional"],
    ),
    (
        rules::TORSION,
        &["representation_torsion", "exceptional", "all_singularities_nondegenerate"],
    ),
    (
        rules::GORENSTEIN,
        &[
            "gorenstein_data_present",
            "exceptional",
            "all_singularities_nondegenerate",
            "gorenstein_forced_identity",
            "gorenstein_holonomy_power",
        ],
    ),
    (
        rules::ABSENT,
        &[
            "representation_infinite",
            "exceptional",
            "closed_world_declared",
            "crossings_nondegenerate",
            "crossings_reduced",
        ],
    ),
];

const SUBCURVE_HYPOTHESES: [&str; 4] = [
    "subcurve_crossings_nondegenerate",
    "attachments_index_zero",
    "subcurve_representation_trivial",
    "exceptional",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub rule: String,
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

/// One rule of the chain as the engine evaluated it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleAttempt {
    pub rule: String,
    pub fired: bool,
    pub hypotheses: Vec<HypothesisCheck>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcurve: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_bound: Option<CountBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<GorensteinReduction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub conclusion: Conclusion,
    pub rule: String,
    /// For a fired rule: all of its hypotheses. For `NotGuaranteed`: the
    /// first unsatisfied hypothesis of each rule.
    pub hypotheses: Vec<HypothesisCheck>,
    pub witnesses: Witnesses,
    /// Every rule evaluated, in priority order, up to the one that fired.
    pub attempts: Vec<RuleAttempt>,
}

/// Lazily computed facts shared by the checks.
struct Facts<'a, Q: Scalar> {
    g: &'a DualGraph<Q>,
    keep: Option<&'a BTreeSet<usize>>,
    definiteness: OnceCell<Definiteness>,
    representation: OnceCell<RepresentationClass<Q>>,
}

impl<'a, Q: Scalar> Facts<'a, Q> {
    fn new(g: &'a DualGraph<Q>, keep: Option<&'a BTreeSet<usize>>) -> Self {
        Facts {
            g,
            keep,
            definiteness: OnceCell::new(),
            representation: OnceCell::new(),
        }
    }

    fn definiteness(&self) -> &Definiteness {
        self.definiteness
            .get_or_init(|| definiteness(&intersection_matrix(self.g)))
    }

    fn representation(&self) -> &RepresentationClass<Q> {
        self.representation.get_or_init(|| representation_class(self.g))
    }

    fn kind(&self) -> RepresentationKind {
        self.representation().kind
    }

    fn kind_evidence(&self) -> String {
        let rep = self.representation();
        let values: Vec<String> = rep
            .holonomies
            .iter()
            .map(|h| match &h.value {
                Some(v) => v.to_string(),
                None => "undefined".into(),
            })
            .collect();
        match rep.kind {
            RepresentationKind::Torsion { order } => {
                format!("torsion of order {order}; holonomies [{}]", values.join(", "))
            }
            k => format!("{}; holonomies [{}]", k.name(), values.join(", ")),
        }
    }

    fn check(&self, name: &str) -> (Status, String) {
        use Status::*;
        let g = self.g;
        let sat = |ok: bool, evidence: String| (if ok { Satisfied } else { Failed }, evidence);
        match name {
            "dual_graph_is_tree" => sat(g.is_tree(), format!("cycle rank {}", g.cycle_rank())),
            "exceptional" => {
                let d = self.definiteness();
                let minors: Vec<String> = d.leading_minors.iter().map(ToString::to_string).collect();
                sat(
                    d.negative_definite,
                    format!("leading minors [{}], determinant {}", minors.join(", "), d.determinant),
                )
            }
            "pruned_subcurve_criterion" => {
                let Ok(keep) = toma_prune_by_index(g) else {
                    return (Skipped, "dual graph is not a tree".into());
                };
                match subcurve_criterion_by_index(g, &keep) {
                    Ok(c) => sat(
                        c.conclusion == Conclusion::SeparatrixExists,
                        format!("pruned subcurve {{{}}}", ids(g, &keep).join(", ")),
                    ),
                    Err(e) => (Failed, e.to_string()),
                }
            }
            "crossings_nondegenerate" => match g.crossings().iter().find(|x| x.is_saddle_node()) {
                Some(x) => (Failed, format!("crossing {} is a saddle-node", x.id)),
                None => (Satisfied, format!("{} nondegenerate crossings", g.crossings().len())),
            },
            "representation_trivial" => {
                sat(self.kind() == RepresentationKind::Trivial, self.kind_evidence())
            }
            "representation_torsion" => sat(
                matches!(self.kind(), RepresentationKind::Torsion { .. }),
                self.kind_evidence(),
            ),
            "representation_infinite" => {
                sat(self.kind() == RepresentationKind::Infinite, self.kind_evidence())
            }
            "all_singularities_nondegenerate" => {
                if let Some(x) = g.crossings().iter().find(|x| x.is_saddle_node()) {
                    (Failed, format!("crossing {} is a saddle-node", x.id))
                } else if let Some((_, s)) = g
                    .smooth_singularities()
                    .find(|(_, s)| s.kind != SingularityKind::NonDegenerate)
                {
                    (Failed, format!("singularity {} is a saddle-node", s.id))
                } else {
                    (Satisfied, "no saddle-nodes on the curve".into())
                }
            }
            "gorenstein_data_present" => match g.gorenstein() {
                Some(gd) => (Satisfied, format!("k = {}", gd.k)),
                None => (Failed, "no gorenstein block in the input".into()),
            },
            "gorenstein_forced_identity" | "gorenstein_holonomy_power" => match gorenstein_reduce(g) {
                Err(Error::HypothesisUnmet { name: pre, evidence }) => {
                    (Skipped, format!("prerequisite {pre} unmet: {evidence}"))
                }
                Err(e) => (Failed, e.to_string()),
                Ok(r) if name == "gorenstein_forced_identity" => {
                    (Satisfied, format!("a_i = k = {} on every component", r.k))
                }
                Ok(r) => sat(
                    r.holonomy_power_check,
                    format!("every cycle holonomy to the power {} equals 1: {}", r.k, r.holonomy_power_check),
                ),
            },
            "closed_world_declared" => sat(
                g.closed_world() && !g.has_smooth_singularities(),
                format!(
                    "closed_world = {}, {} smooth-point singularities",
                    g.closed_world(),
                    g.smooth_singularities().count()
                ),
            ),
            "crossings_reduced" => {
                let bad = g.crossings().iter().find(|x| match &x.kind {
                    CrossingKind::NonDegenerate { cs_tail } => cs_tail.is_positive_rational(),
                    CrossingKind::SaddleNode { .. } => false,
                });
                match bad {
                    Some(x) => (Failed, format!("crossing {} has a positive rational index", x.id)),
                    None => (Satisfied, "no positive rational index at a crossing".into()),
                }
            }
            "subcurve_crossings_nondegenerate"
            | "attachments_index_zero"
            | "subcurve_representation_trivial" => {
                let Some(keep) = self.keep else {
                    return (Skipped, "no subcurve selected".into());
                };
                let sub = match induced_subcurve_by_index(g, keep) {
                    Ok(s) => s,
                    Err(e) => return (Failed, e.to_string()),
                };
                let h = &sub.graph;
                match name {
                    "subcurve_crossings_nondegenerate" => {
                        match h.crossings().iter().find(|x| x.is_saddle_node()) {
                            Some(x) => (Failed, format!("crossing {} is a saddle-node", x.id)),
                            None => (Satisfied, format!("{} crossings inside", h.crossings().len())),
                        }
                    }
                    "attachments_index_zero" => {
                        let bad = sub.attachments.iter().find(|a| {
                            h.smooth_singularities()
                                .find(|(_, s)| s.id == a.singularity)
                                .is_some_and(|(_, s)| !s.cs.as_ref().is_some_and(|c| c.is_zero()))
                        });
                        match bad {
                            Some(a) => (
                                Failed,
                                format!("attachment {} on {} has nonzero index", a.crossing, a.component),
                            ),
                            None => (Satisfied, format!("{} attachments, all of index 0", sub.attachments.len())),
                        }
                    }
                    _ => {
                        let rep = representation_class(h);
                        sat(rep.kind == RepresentationKind::Trivial, rep.kind.name().to_string())
                    }
                }
            }
            other => (Failed, format!("unknown check `{other}`")),
        }
    }

    fn record(&self, rule: &str, name: &str) -> HypothesisCheck {
        let (status, evidence) = self.check(name);
        HypothesisCheck {
            rule: rule.to_string(),
            name: name.to_string(),
            status,
            evidence,
        }
    }

    fn attempt(&self, rule: &str, names: &[&str]) -> RuleAttempt {
        let hypotheses: Vec<HypothesisCheck> = names.iter().map(|n| self.record(rule, n)).collect();
        RuleAttempt {
            rule: rule.to_string(),
            fired: hypotheses.iter().all(|h| h.status == Status::Satisfied),
            hypotheses,
        }
    }
}

fn ids<Q: Scalar>(g: &DualGraph<Q>, keep: &BTreeSet<usize>) -> Vec<String> {
    keep.iter().map(|&v| g.components()[v].id.clone()).collect()
}

/// The certificate for `g`. Refuses graphs with index validation errors.
pub fn verdict<Q: Scalar>(g: &DualGraph<Q>) -> Result<Certificate> {
    let findings = validate_indices(g);
    if has_errors(&findings) {
        let n = findings
            .iter()
            .filter(|f| f.severity == crate::dualgraph::Severity::Error)
            .count();
        return Err(Error::ValidationFailed(n));
    }
    let facts = Facts::new(g, None);
    let mut attempts = Vec::new();
    for (rule, names) in RULE_CHAIN {
        let attempt = facts.attempt(rule, names);
        let fired = attempt.fired;
        attempts.push(attempt);
        if fired {
            return Ok(fire(&facts, rule, attempts));
        }
    }
    let hypotheses = attempts
        .iter()
        .filter_map(|a| a.hypotheses.iter().find(|h| h.status != Status::Satisfied).cloned())
        .collect();
    Ok(Certificate {
        conclusion: Conclusion::NotGuaranteed,
        rule: rules::NONE.to_string(),
        hypotheses,
        witnesses: Witnesses::default(),
        attempts,
    })
}

fn fire<Q: Scalar>(facts: &Facts<'_, Q>, rule: &str, attempts: Vec<RuleAttempt>) -> Certificate {
    let g = facts.g;
    let mut hypotheses = attempts.last().expect("fired rule").hypotheses.clone();
    let mut witnesses = Witnesses::default();
    let mut conclusion = Conclusion::SeparatrixExists;
    match rule {
        rules::TREE => {
            witnesses.subcurve = toma_prune(g).ok();
        }
        rules::TRIVIAL => {
            witnesses.count_bound = separatrix_bound(g).ok();
        }
        rules::TORSION => {
            witnesses.torsion_order = facts.kind().order();
        }
        rules::GORENSTEIN => {
            witnesses.gorenstein = gorenstein_reduce(g).ok();
        }
        rules::ABSENT => {
            conclusion = Conclusion::CertifiedAbsent;
        }
        _ => unreachable!("unknown rule {rule}"),
    }
    // existence needs a singular point off the crossings
    if conclusion == Conclusion::SeparatrixExists && g.closed_world() {
        hypotheses.push(facts.record(rule, "closed_world_declared"));
        conclusion = Conclusion::InconsistentInput;
    }
    Certificate {
        conclusion,
        rule: rule.to_string(),
        hypotheses,
        witnesses,
        attempts,
    }
}

/// Certificate for the subcurve criterion on the components in `keep`.
pub fn subcurve_criterion<Q: Scalar, S: AsRef<str>>(ambient: &DualGraph<Q>, keep: &[S]) -> Result<Certificate> {
    let idx = keep
        .iter()
        .map(|id| ambient.index_of(id.as_ref()))
        .collect::<Result<BTreeSet<usize>>>()?;
    subcurve_criterion_by_index(ambient, &idx)
}

pub fn subcurve_criterion_by_index<Q: Scalar>(
    ambient: &DualGraph<Q>,
    keep: &BTreeSet<usize>,
) -> Result<Certificate> {
    // surfaces EmptySelection / DisconnectedSelection
    induced_subcurve_by_index(ambient, keep)?;
    let facts = Facts::new(ambient, Some(keep));
    let attempt = facts.attempt(rules::SUBCURVE, &SUBCURVE_HYPOTHESES);
    let witnesses = Witnesses {
        subcurve: Some(ids(ambient, keep)),
        ..Witnesses::default()
    };
    let mut hypotheses = attempt.hypotheses.clone();
    let conclusion = if !attempt.fired {
        Conclusion::NotGuaranteed
    } else if ambient.closed_world() {
        hypotheses.push(facts.record(rules::SUBCURVE, "closed_world_declared"));
        Conclusion::InconsistentInput
    } else {
        Conclusion::SeparatrixExists
    };
    Ok(Certificate {
        conclusion,
        rule: rules::SUBCURVE.to_string(),
        hypotheses,
        witnesses,
        attempts: vec![attempt],
    })
}

/// Re-run one named check from scratch.
///
/// Subcurve checks use `subcurve` as the selection; the others ignore it.
pub fn evaluate_hypothesis<Q: Scalar>(
    g: &DualGraph<Q>,
    name: &str,
    subcurve: Option<&[String]>,
) -> Result<(Status, String)> {
    let keep = subcurve
        .map(|ids| ids.iter().map(|id| g.index_of(id)).collect::<Result<BTreeSet<usize>>>())
        .transpose()?;
    Ok(Facts::new(g, keep.as_ref()).check(name))
}

/// Hypotheses of `cert` whose status does not reproduce on `g`.
pub fn recheck<Q: Scalar>(g: &DualGraph<Q>, cert: &Certificate) -> Result<Vec<HypothesisCheck>> {
    let subcurve = if cert.rule == rules::SUBCURVE {
        cert.witnesses.subcurve.as_deref()
    } else {
        None
    };
    let mut mismatches = Vec::new();
    for h in cert.attempts.iter().flat_map(|a| &a.hypotheses).chain(&cert.hypotheses) {
        let (status, _) = evaluate_hypothesis(g, &h.name, subcurve)?;
        if status != h.status {
            mismatches.push(h.clone());
        }
    }
    Ok(mismatches)
}
