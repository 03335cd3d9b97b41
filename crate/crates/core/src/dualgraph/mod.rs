//! Decorated resolution dual graphs.
//!
//! One vertex per irreducible component, one edge per crossing point. Each
//! nondegenerate crossing stores the Camacho-Sad index on its tail side only;
//! the head-side index is always the reciprocal, computed on demand.

mod json;
mod subcurve;
mod validate;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde_json::Value;

pub use json::{parse_graph, to_json_string, to_json_value};
pub use subcurve::{induced_subcurve, induced_subcurve_by_index, Subcurve};
pub use validate::{has_errors, validate_indices, Finding, Severity};

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    NonDegenerate,
    /// Saddle-node whose strong separatrix lies along the component.
    SaddleNodeStrongOnC,
    /// Saddle-node whose weak separatrix lies along the component.
    SaddleNodeWeakOnC,
}

impl SingularityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityKind::NonDegenerate => "nondegenerate",
            SingularityKind::SaddleNodeStrongOnC => "saddle_node_strong_on_c",
            SingularityKind::SaddleNodeWeakOnC => "saddle_node_weak_on_c",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            SingularityKind::NonDegenerate,
            SingularityKind::SaddleNodeStrongOnC,
            SingularityKind::SaddleNodeWeakOnC,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

/// A singular point of the foliation at a smooth point of its component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothSingularity<Q: Scalar = crate::Rational> {
    pub id: String,
    pub kind: SingularityKind,
    /// Index along the host component; may be unknown for saddle-nodes.
    pub cs: Option<FieldElement<Q>>,
    pub has_transverse_separatrix: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component<Q: Scalar = crate::Rational> {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
    pub smooth_singularities: Vec<SmoothSingularity<Q>>,
}

impl<Q: Scalar> Component<Q> {
    pub fn new(id: impl Into<String>, self_intersection: i64) -> Self {
        Component {
            id: id.into(),
            self_intersection,
            genus: 0,
            smooth_singularities: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossingKind<Q: Scalar = crate::Rational> {
    NonDegenerate { cs_tail: FieldElement<Q> },
    /// `weak` is the component index (tail or head) carrying the weak separatrix.
    SaddleNode {
        weak: usize,
        cs_weak: Option<FieldElement<Q>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing<Q: Scalar = crate::Rational> {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub kind: CrossingKind<Q>,
}

impl<Q: Scalar> Crossing<Q> {
    pub fn is_saddle_node(&self) -> bool {
        matches!(self.kind, CrossingKind::SaddleNode { .. })
    }

    pub fn other_end(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }

    /// The same crossing stored with the opposite orientation.
    pub fn flipped(&self) -> Result<Self> {
        let kind = match &self.kind {
            CrossingKind::NonDegenerate { cs_tail } => CrossingKind::NonDegenerate {
                cs_tail: cs_tail.inverse()?,
            },
            sn => sn.clone(),
        };
        Ok(Crossing {
            id: self.id.clone(),
            tail: self.head,
            head: self.tail,
            kind,
        })
    }
}

/// Integer data `(k, a_i)` with `N^k = O(sum a_i E_i)` near the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinData {
    pub k: u32,
    /// Indexed like the components.
    pub a: Vec<i64>,
}

/// Raw, unvalidated pieces of a [`DualGraph`].
#[derive(Clone, Debug)]
pub struct GraphParts<Q: Scalar = crate::Rational> {
    pub field: Arc<NumberField<Q>>,
    pub components: Vec<Component<Q>>,
    pub crossings: Vec<Crossing<Q>>,
    pub gorenstein: Option<GorensteinData>,
    /// The user asserts every singular point on the curve is a crossing.
    pub closed_world: bool,
    /// Opaque generator provenance, carried through serialization.
    pub generator: Option<Value>,
}

/// A validated, connected decorated dual graph. Immutable once built.
#[derive(Clone, Debug)]
pub struct DualGraph<Q: Scalar = crate::Rational> {
    field: Arc<NumberField<Q>>,
    components: Vec<Component<Q>>,
    crossings: Vec<Crossing<Q>>,
    gorenstein: Option<GorensteinData>,
    closed_world: bool,
    generator: Option<Value>,
    index: HashMap<String, usize>,
}

impl<Q: Scalar> PartialEq for DualGraph<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.components == other.components
            && self.crossings == other.crossings
            && self.gorenstein == other.gorenstein
            && self.closed_world == other.closed_world
            && self.generator == other.generator
    }
}

impl<Q: Scalar> DualGraph<Q> {
    /// Validate `parts` and store every crossing with `tail < head`.
    pub fn new(parts: GraphParts<Q>) -> Result<Self> {
        let GraphParts {
            field,
            components,
            crossings,
            gorenstein,
            closed_world,
            generator,
        } = parts;
        if components.is_empty() {
            return Err(Error::Schema("a dual graph needs at least one component".into()));
        }
        let n = components.len();
        let mut index = HashMap::new();
        let mut seen = BTreeSet::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate component id `{}`", c.id)));
            }
            for s in &c.smooth_singularities {
                if !seen.insert(s.id.clone()) {
                    return Err(Error::Schema(format!("duplicate singularity id `{}`", s.id)));
                }
                check_smooth(&field, c, s)?;
            }
        }
        let mut normalized = Vec::with_capacity(crossings.len());
        for x in crossings {
            if !seen.insert(x.id.clone()) {
                return Err(Error::Schema(format!("duplicate crossing id `{}`", x.id)));
            }
            if x.tail >= n || x.head >= n {
                return Err(Error::UnknownId(format!("crossing {} endpoint index", x.id)));
            }
            if x.tail == x.head {
                return Err(Error::SelfLoop {
                    crossing: x.id.clone(),
                    component: components[x.tail].id.clone(),
                });
            }
            match &x.kind {
                CrossingKind::NonDegenerate { cs_tail } => {
                    check_element(&field, cs_tail, &x.id)?;
                    if cs_tail.is_zero() {
                        return Err(Error::BadFieldElement {
                            location: format!("crossing {}", x.id),
                            reason: "a nondegenerate crossing has a nonzero index".into(),
                        });
                    }
                }
                CrossingKind::SaddleNode { weak, cs_weak } => {
                    if *weak != x.tail && *weak != x.head {
                        return Err(Error::Schema(format!(
                            "crossing {}: the weak side must be one of its endpoints",
                            x.id
                        )));
                    }
                    if let Some(e) = cs_weak {
                        check_element(&field, e, &x.id)?;
                    }
                }
            }
            normalized.push(if x.tail > x.head { x.flipped()? } else { x });
        }
        if let Some(gd) = &gorenstein {
            if gd.k == 0 {
                return Err(Error::Schema("gorenstein.k must be positive".into()));
            }
            if gd.a.len() != n {
                return Err(Error::Schema("gorenstein.a must cover every component".into()));
            }
        }
        let g = DualGraph {
            field,
            components,
            crossings: normalized,
            gorenstein,
            closed_world,
            generator,
            index,
        };
        if let Some(v) = g.unreachable_component() {
            return Err(Error::Disconnected(format!(
                "component `{}` is not reachable from `{}`",
                g.components[v].id, g.components[0].id
            )));
        }
        Ok(g)
    }

    pub fn to_parts(&self) -> GraphParts<Q> {
        GraphParts {
            field: Arc::clone(&self.field),
            components: self.components.clone(),
            crossings: self.crossings.clone(),
            gorenstein: self.gorenstein.clone(),
            closed_world: self.closed_world,
            generator: self.generator.clone(),
        }
    }

    pub fn field(&self) -> &Arc<NumberField<Q>> {
        &self.field
    }

    pub fn components(&self) -> &[Component<Q>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing<Q>] {
        &self.crossings
    }

    pub fn gorenstein(&self) -> Option<&GorensteinData> {
        self.gorenstein.as_ref()
    }

    pub fn closed_world(&self) -> bool {
        self.closed_world
    }

    pub fn generator(&self) -> Option<&Value> {
        self.generator.as_ref()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn component_ids(&self) -> Vec<String> {
        self.components.iter().map(|c| c.id.clone()).collect()
    }

    /// Crossing indices incident to `v`, in input order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.crossings
            .iter()
            .enumerate()
            .filter(move |(_, x)| x.tail == v || x.head == v)
            .map(|(i, _)| i)
    }

    /// First Betti number of the graph: `#crossings - #components + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.crossings.len() + 1 - self.components.len()
    }

    pub fn is_tree(&self) -> bool {
        self.cycle_rank() == 0
    }

    pub fn has_saddle_node_crossing(&self) -> bool {
        self.crossings.iter().any(Crossing::is_saddle_node)
    }

    pub fn smooth_singularities(&self) -> impl Iterator<Item = (usize, &SmoothSingularity<Q>)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.smooth_singularities.iter().map(move |s| (i, s)))
    }

    pub fn has_smooth_singularities(&self) -> bool {
        self.smooth_singularities().next().is_some()
    }

    /// Camacho-Sad index of crossing `x` along component `v`.
    ///
    /// Tail side: `cs_tail`; head side: its reciprocal. For a saddle-node the
    /// strong side carries 0 and the weak side `cs_weak` (`None` if unknown).
    pub fn cs_at(&self, x: usize, v: usize) -> Option<FieldElement<Q>> {
        let c = &self.crossings[x];
        match &c.kind {
            CrossingKind::NonDegenerate { cs_tail } if v == c.tail => Some(cs_tail.clone()),
            CrossingKind::NonDegenerate { cs_tail } => {
                Some(cs_tail.inverse().expect("stored indices are nonzero"))
            }
            CrossingKind::SaddleNode { weak, cs_weak } if *weak == v => cs_weak.clone(),
            CrossingKind::SaddleNode { .. } => Some(self.field.zero()),
        }
    }

    fn unreachable_component(&self) -> Option<usize> {
        let n = self.components.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for x in self.incident(u) {
                let w = self.crossings[x].other_end(u);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }
}

fn check_element<Q: Scalar>(
    field: &Arc<NumberField<Q>>,
    e: &FieldElement<Q>,
    location: &str,
) -> Result<()> {
    if e.field() != field {
        return Err(Error::BadFieldElement {
            location: location.to_string(),
            reason: "element belongs to a different field".into(),
        });
    }
    Ok(())
}

fn check_smooth<Q: Scalar>(
    field: &Arc<NumberField<Q>>,
    c: &Component<Q>,
    s: &SmoothSingularity<Q>,
) -> Result<()> {
    let location = format!("singularity {} on {}", s.id, c.id);
    if let Some(e) = &s.cs {
        check_element(field, e, &location)?;
    }
    if s.kind == SingularityKind::NonDegenerate {
        match &s.cs {
            Some(e) if !e.is_zero() => {}
            _ => {
                return Err(Error::BadFieldElement {
                    location,
                    reason: "a nondegenerate singularity has a nonzero index".into(),
                })
            }
        }
        if !s.has_transverse_separatrix {
            return Err(Error::Schema(format!(
                "{location}: a nondegenerate singularity always has a transverse separatrix"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn parts(n: usize, edges: &[(usize, usize)]) -> GraphParts<Rational> {
        let field = NumberField::rationals();
        GraphParts {
            components: (0..n).map(|i| Component::new(format!("E{}", i + 1), -2)).collect(),
            crossings: edges
                .iter()
                .enumerate()
                .map(|(i, &(t, h))| Crossing {
                    id: format!("x{}", i + 1),
                    tail: t,
                    head: h,
                    kind: CrossingKind::NonDegenerate {
                        cs_tail: field.from_i64(-(i as i64) - 2),
                    },
                })
                .collect(),
            field,
            gorenstein: None,
            closed_world: false,
            generator: None,
        }
    }

    #[test]
    fn single_component_is_valid() {
        let g = DualGraph::new(parts(1, &[])).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.is_tree());
    }

    #[test]
    fn self_loop_rejected() {
        let err = DualGraph::new(parts(2, &[(0, 1), (1, 1)])).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { .. }));
        assert!(err.to_string().contains("blow up"));
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            DualGraph::new(parts(3, &[(0, 1)])),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn orientation_normalized_with_reciprocal() {
        let g = DualGraph::new(parts(2, &[(1, 0)])).unwrap();
        let x = &g.crossings()[0];
        assert_eq!((x.tail, x.head), (0, 1));
        // stored cs_tail was -2 on E2; now E1 is the tail with -1/2
        assert_eq!(g.cs_at(0, 0).unwrap().to_strings(), vec!["-1/2"]);
        assert_eq!(g.cs_at(0, 1).unwrap().to_strings(), vec!["-2"]);
    }

    #[test]
    fn parallel_edges_allowed() {
        let g = DualGraph::new(parts(2, &[(0, 1), (0, 1)])).unwrap();
        assert_eq!(g.cycle_rank(), 1);
    }

    #[test]
    fn reciprocity_at_crossings() {
        let g = DualGraph::new(parts(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        for (i, x) in g.crossings().iter().enumerate() {
            let prod = &g.cs_at(i, x.tail).unwrap() * &g.cs_at(i, x.head).unwrap();
            assert!(prod.is_one());
        }
    }
}
