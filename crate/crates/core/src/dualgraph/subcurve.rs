use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::{
    Component, CrossingKind, DualGraph, GorensteinData, GraphParts, SingularityKind,
    SmoothSingularity,
};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;

/// A smooth singularity created on a kept component from a dropped crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub crossing: String,
    pub component: String,
    pub singularity: String,
}

#[derive(Clone, Debug)]
pub struct Subcurve<Q: Scalar = crate::Rational> {
    pub graph: DualGraph<Q>,
    /// Attachment points in crossing input order.
    pub attachments: Vec<Attachment>,
}

/// Restrict `g` to the components named in `keep`.
pub fn induced_subcurve<Q: Scalar, S: AsRef<str>>(g: &DualGraph<Q>, keep: &[S]) -> Result<Subcurve<Q>> {
    let idx = keep
        .iter()
        .map(|id| g.index_of(id.as_ref()))
        .collect::<Result<BTreeSet<usize>>>()?;
    induced_subcurve_by_index(g, &idx)
}

/// Restrict `g` to the component indices in `keep`.
///
/// Each crossing between a kept and a dropped component becomes a smooth
/// singularity `"{crossing}@{component}"` on the kept side, carrying the
/// kept side's index. The other component of the crossing is a transverse
/// invariant curve there, so the germ is marked as having a separatrix.
pub fn induced_subcurve_by_index<Q: Scalar>(
    g: &DualGraph<Q>,
    keep: &BTreeSet<usize>,
) -> Result<Subcurve<Q>> {
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(&bad) = keep.iter().find(|&&v| v >= g.len()) {
        return Err(Error::UnknownId(format!("component index {bad}")));
    }
    check_connected(g, keep)?;

    let mut new_index = vec![usize::MAX; g.len()];
    for (i, &v) in keep.iter().enumerate() {
        new_index[v] = i;
    }
    let mut components: Vec<Component<Q>> =
        keep.iter().map(|&v| g.components()[v].clone()).collect();
    let mut crossings = Vec::new();
    let mut attachments = Vec::new();

    for (xi, x) in g.crossings().iter().enumerate() {
        let (t_in, h_in) = (keep.contains(&x.tail), keep.contains(&x.head));
        if t_in && h_in {
            let mut y = x.clone();
            y.tail = new_index[x.tail];
            y.head = new_index[x.head];
            if let CrossingKind::SaddleNode { weak, .. } = &mut y.kind {
                *weak = new_index[*weak];
            }
            crossings.push(y);
        } else if t_in || h_in {
            let v = if t_in { x.tail } else { x.head };
            let kind = match &x.kind {
                CrossingKind::NonDegenerate { .. } => SingularityKind::NonDegenerate,
                CrossingKind::SaddleNode { weak, .. } if *weak == v => {
                    SingularityKind::SaddleNodeWeakOnC
                }
                CrossingKind::SaddleNode { .. } => SingularityKind::SaddleNodeStrongOnC,
            };
            let id = format!("{}@{}", x.id, g.components()[v].id);
            components[new_index[v]].smooth_singularities.push(SmoothSingularity {
                id: id.clone(),
                kind,
                cs: g.cs_at(xi, v),
                has_transverse_separatrix: true,
            });
            attachments.push(Attachment {
                crossing: x.id.clone(),
                component: g.components()[v].id.clone(),
                singularity: id,
            });
        }
    }

    let gorenstein = g.gorenstein().map(|gd| GorensteinData {
        k: gd.k,
        a: keep.iter().map(|&v| gd.a[v]).collect(),
    });
    let whole = keep.len() == g.len();
    let has_smooth = components.iter().any(|c| !c.smooth_singularities.is_empty());
    let graph = DualGraph::new(GraphParts {
        field: Arc::clone(g.field()),
        components,
        crossings,
        gorenstein,
        closed_world: g.closed_world() && !has_smooth,
        generator: if whole { g.generator().cloned() } else { None },
    })?;
    Ok(Subcurve { graph, attachments })
}

fn check_connected<Q: Scalar>(g: &DualGraph<Q>, keep: &BTreeSet<usize>) -> Result<()> {
    let start = *keep.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for x in g.incident(u) {
            let w = g.crossings()[x].other_end(u);
            if keep.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    match keep.iter().find(|v| !seen.contains(v)) {
        None => Ok(()),
        Some(&v) => Err(Error::DisconnectedSelection(format!(
            "`{}` is not connected to `{}` inside the selection",
            g.components()[v].id,
            g.components()[start].id
        ))),
    }
}
