use std::collections::BTreeSet;

use crate::dualgraph::{CrossingKind, DualGraph};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;

/// Toma pruning on a tree: the ids of `Gamma_0`, in component order.
pub fn toma_prune<Q: Scalar>(g: &DualGraph<Q>) -> Result<Vec<String>> {
    let keep = toma_prune_by_index(g)?;
    Ok(keep.into_iter().map(|v| g.components()[v].id.clone()).collect())
}

/// Delete the saddle-node crossings, orient each from its strong side to
/// its weak side, and return the forest piece with no incoming edge that
/// contains the smallest component index.
pub fn toma_prune_by_index<Q: Scalar>(g: &DualGraph<Q>) -> Result<BTreeSet<usize>> {
    if !g.is_tree() {
        return Err(Error::NotATree(g.cycle_rank()));
    }
    let n = g.len();
    let mut piece: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for x in g.crossings() {
        if !x.is_saddle_node() {
            let (a, b) = (find(&mut piece, x.tail), find(&mut piece, x.head));
            piece[a.max(b)] = a.min(b);
        }
    }
    let mut has_incoming = vec![false; n];
    for x in g.crossings() {
        if let CrossingKind::SaddleNode { weak, .. } = x.kind {
            let r = find(&mut piece, weak);
            has_incoming[r] = true;
        }
    }
    // roots are the smallest index of their piece, so the first qualifying
    // vertex in order is the tie-break winner
    let root = (0..n)
        .find(|&v| find(&mut piece, v) == v && !has_incoming[v])
        .expect("a tree with k deleted edges has k + 1 pieces and k incoming edges");
    Ok((0..n).filter(|&v| find(&mut piece, v) == root).collect())
}
