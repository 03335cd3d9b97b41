//! Cycle holonomies of the residual representation and the residual divisor.

use std::collections::VecDeque;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dualgraph::{CrossingKind, DualGraph};
use crate::error::{Error, Result};
use crate::exactfield::{is_root_of_unity, lcm_all, FieldElement, Scalar};
use crate::intersection::Divisor;

/// One traversal of a crossing inside a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub crossing: usize,
    /// `true` when the crossing is traversed tail to head.
    pub forward: bool,
}

pub type Cycle = Vec<Step>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    /// Crossing indices of the spanning tree, ascending.
    pub tree: Vec<usize>,
    /// One cycle per non-tree crossing, which is always its first step.
    pub cycles: Vec<Cycle>,
}

/// BFS spanning tree from the first component, crossings in input order.
pub fn cycle_basis<Q: Scalar>(g: &DualGraph<Q>) -> CycleBasis {
    let order: Vec<usize> = (0..g.crossings().len()).collect();
    cycle_basis_with_order(g, 0, &order)
}

/// BFS spanning tree from `root`, scanning crossings in the given order.
///
/// `order` must be a permutation of the crossing indices. Different orders
/// and roots give different trees; the cohomology class does not change.
pub fn cycle_basis_with_order<Q: Scalar>(g: &DualGraph<Q>, root: usize, order: &[usize]) -> CycleBasis {
    let n = g.len();
    let xs = g.crossings();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &x in order {
        adj[xs[x].tail].push(x);
        adj[xs[x].head].push(x);
    }

    // parent[v] = (crossing to parent, parent)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut in_tree = vec![false; xs.len()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &x in &adj[u] {
            let w = xs[x].other_end(u);
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = Some((x, u));
                in_tree[x] = true;
                queue.push_back(w);
            }
        }
    }

    let step_up = |v: usize| -> (Step, usize) {
        let (x, p) = parent[v].expect("non-root vertex has a parent");
        (
            Step {
                crossing: x,
                forward: xs[x].tail == v,
            },
            p,
        )
    };

    let mut cycles = Vec::new();
    for &x in order {
        if in_tree[x] {
            continue;
        }
        let (a, b) = (xs[x].tail, xs[x].head);
        let mut cycle = vec![Step {
            crossing: x,
            forward: true,
        }];
        // b climbs, a climbs; a's half is replayed reversed
        let (mut u, mut v) = (b, a);
        let mut down = Vec::new();
        while u != v {
            if depth[u] >= depth[v] {
                let (s, p) = step_up(u);
                cycle.push(s);
                u = p;
            } else {
                let (s, p) = step_up(v);
                down.push(Step {
                    crossing: s.crossing,
                    forward: !s.forward,
                });
                v = p;
            }
        }
        cycle.extend(down.into_iter().rev());
        cycles.push(cycle);
    }

    let tree = (0..xs.len()).filter(|&x| in_tree[x]).collect();
    CycleBasis { tree, cycles }
}

/// Which Camacho-Sad index the edge weight is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `delta(tail -> head) = -1/cs_tail`, minus the index on the head side.
    HeadSide,
    /// `delta(tail -> head) = -cs_tail`.
    TailSide,
}

/// Edge weight of crossing `x` traversed tail to head; `None` at a saddle-node.
pub fn delta<Q: Scalar>(g: &DualGraph<Q>, x: usize, convention: Convention) -> Option<FieldElement<Q>> {
    match &g.crossings()[x].kind {
        CrossingKind::NonDegenerate { cs_tail } => Some(match convention {
            Convention::HeadSide => -&cs_tail.inverse().expect("stored indices are nonzero"),
            Convention::TailSide => -cs_tail,
        }),
        CrossingKind::SaddleNode { .. } => None,
    }
}

/// Ordered product of edge weights; `None` if the cycle meets a saddle-node.
pub fn holonomy<Q: Scalar>(g: &DualGraph<Q>, cycle: &[Step], convention: Convention) -> Option<FieldElement<Q>> {
    let mut acc = g.field().one();
    for s in cycle {
        let d = delta(g, s.crossing, convention)?;
        acc = if s.forward {
            &acc * &d
        } else {
            acc.checked_div(&d).expect("edge weights are nonzero")
        };
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepresentationKind {
    Trivial,
    Torsion { order: u64 },
    Infinite,
    Indeterminate,
}

impl RepresentationKind {
    pub fn name(self) -> &'static str {
        match self {
            RepresentationKind::Trivial => "Trivial",
            RepresentationKind::Torsion { .. } => "Torsion",
            RepresentationKind::Infinite => "Infinite",
            RepresentationKind::Indeterminate => "Indeterminate",
        }
    }

    pub fn order(self) -> Option<u64> {
        match self {
            RepresentationKind::Torsion { order } => Some(order),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleHolonomy<Q: Scalar = crate::Rational> {
    pub cycle: Vec<String>,
    /// `None` when the cycle passes through a saddle-node crossing.
    pub value: Option<FieldElement<Q>>,
    /// Multiplicative order of `value`, if it is a root of unity.
    pub order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationClass<Q: Scalar = crate::Rational> {
    pub kind: RepresentationKind,
    pub holonomies: Vec<CycleHolonomy<Q>>,
}

impl<Q: Scalar> RepresentationClass<Q> {
    /// Cycles whose holonomy is undefined because of a saddle-node.
    pub fn indeterminate_cycles(&self) -> Vec<&[String]> {
        self.holonomies
            .iter()
            .filter(|h| h.value.is_none())
            .map(|h| h.cycle.as_slice())
            .collect()
    }
}

pub fn representation_class<Q: Scalar>(g: &DualGraph<Q>) -> RepresentationClass<Q> {
    representation_class_with(g, &cycle_basis(g), Convention::HeadSide)
}

pub fn representation_class_with<Q: Scalar>(
    g: &DualGraph<Q>,
    basis: &CycleBasis,
    convention: Convention,
) -> RepresentationClass<Q> {
    let holonomies: Vec<CycleHolonomy<Q>> = basis
        .cycles
        .iter()
        .map(|c| {
            let value = holonomy(g, c, convention);
            let order = value
                .as_ref()
                .and_then(|v| is_root_of_unity(v).expect("holonomies are nonzero"));
            CycleHolonomy {
                cycle: c.iter().map(|s| g.crossings()[s.crossing].id.clone()).collect(),
                value,
                order,
            }
        })
        .collect();
    let kind = classify(&holonomies);
    RepresentationClass { kind, holonomies }
}

fn classify<Q: Scalar>(hs: &[CycleHolonomy<Q>]) -> RepresentationKind {
    if hs.iter().any(|h| h.value.is_none()) {
        return RepresentationKind::Indeterminate;
    }
    if hs.iter().any(|h| h.order.is_none()) {
        return RepresentationKind::Infinite;
    }
    match lcm_all(hs.iter().filter_map(|h| h.order)) {
        1 => RepresentationKind::Trivial,
        order => RepresentationKind::Torsion { order },
    }
}

/// Residues `mu_i` per component and `delta_k` per separatrix germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualDivisor<Q: Scalar = crate::Rational> {
    /// Component order.
    pub residues: Vec<(String, FieldElement<Q>)>,
    /// Germs in component order, then listing order.
    pub separatrix_residues: Vec<(String, FieldElement<Q>)>,
}

impl<Q: Scalar> ResidualDivisor<Q> {
    pub fn to_divisor(&self) -> Divisor<Q> {
        Divisor {
            coefficients: self
                .residues
                .iter()
                .chain(&self.separatrix_residues)
                .cloned()
                .collect(),
        }
    }

    /// All residues, components first.
    pub fn values(&self) -> Vec<FieldElement<Q>> {
        self.residues
            .iter()
            .chain(&self.separatrix_residues)
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// Residues normalized to 1 on the first component.
///
/// Propagated along the spanning tree with `mu_tail / mu_head = delta`,
/// then re-checked on every crossing. The germs are the smooth
/// singularities that carry a transverse separatrix and a known index;
/// each gets `-cs * mu_host`.
pub fn residual_divisor<Q: Scalar>(g: &DualGraph<Q>) -> Result<ResidualDivisor<Q>> {
    if let Some(x) = g.crossings().iter().find(|x| x.is_saddle_node()) {
        return Err(Error::SaddleNodePresent(x.id.clone()));
    }
    let basis = cycle_basis(g);
    let rep = representation_class_with(g, &basis, Convention::HeadSide);
    if rep.kind != RepresentationKind::Trivial {
        return Err(Error::NontrivialRepresentation(rep.kind.name().to_string()));
    }

    let xs = g.crossings();
    let mut mu: Vec<Option<FieldElement<Q>>> = vec![None; g.len()];
    mu[0] = Some(g.field().one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for x in g.incident(u) {
            if basis.tree.binary_search(&x).is_err() {
                continue;
            }
            let w = xs[x].other_end(u);
            if mu[w].is_some() {
                continue;
            }
            let d = delta(g, x, Convention::HeadSide).expect("no saddle-nodes");
            let mu_u = mu[u].clone().expect("visited");
            mu[w] = Some(if xs[x].tail == u {
                mu_u.checked_div(&d)?
            } else {
                &mu_u * &d
            });
            queue.push_back(w);
        }
    }
    let mu: Vec<FieldElement<Q>> = mu.into_iter().map(|m| m.expect("connected")).collect();

    for (x, c) in xs.iter().enumerate() {
        let d = delta(g, x, Convention::HeadSide).expect("no saddle-nodes");
        if mu[c.tail] != &d * &mu[c.head] {
            return Err(Error::NontrivialRepresentation(format!(
                "residues disagree across crossing {}",
                c.id
            )));
        }
    }

    let separatrix_residues = g
        .smooth_singularities()
        .filter(|(_, s)| s.has_transverse_separatrix)
        .filter_map(|(host, s)| s.cs.as_ref().map(|cs| (s.id.clone(), -&(cs * &mu[host]))))
        .collect();
    Ok(ResidualDivisor {
        residues: g.component_ids().into_iter().zip(mu).collect(),
        separatrix_residues,
    })
}

impl<Q: Scalar> Serialize for CycleHolonomy<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycleHolonomy", 3)?;
        st.serialize_field("cycle", &self.cycle)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}

impl<Q: Scalar> Serialize for RepresentationClass<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let order = self.kind.order();
        let mut st = s.serialize_struct("RepresentationClass", 3)?;
        st.serialize_field("kind", self.kind.name())?;
        if let Some(k) = order {
            st.serialize_field("order", &k)?;
        } else {
            st.skip_field("order")?;
        }
        st.serialize_field("holonomies", &self.holonomies)?;
        st.end()
    }
}

struct Pairs<'a, Q: Scalar>(&'a [(String, FieldElement<Q>)]);

impl<Q: Scalar> Serialize for Pairs<'_, Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl<Q: Scalar> Serialize for ResidualDivisor<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResidualDivisor", 2)?;
        st.serialize_field("residues", &Pairs(&self.residues))?;
        st.serialize_field("separatrix_residues", &Pairs(&self.separatrix_residues))?;
        st.end()
    }
}
