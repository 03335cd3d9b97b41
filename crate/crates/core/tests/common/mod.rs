#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sepkit::cli::pad_vertex_sums;
use sepkit::dualgraph::{Component, Crossing, CrossingKind, GraphParts};
use sepkit::{DualGraph, FieldElement, NumberField, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank over Q by plain Gauss-Jordan on rational rows.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..width {
                    let s = &rows[rank][c] * &f;
                    rows[r][c] = &rows[r][c] - &s;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn coordinate_rank(elems: &[FieldElement]) -> usize {
    rational_rank(elems.iter().map(|e| e.coeffs().to_vec()).collect())
}

pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    rational_rank(
        m.iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect(),
    )
}

pub fn random_field(rng: &mut ChaCha8Rng) -> Arc<NumberField> {
    match rng.gen_range(0..4) {
        0 => NumberField::rationals(),
        1 => NumberField::gaussian(),
        2 => NumberField::quadratic(2).unwrap(),
        _ => NumberField::quadratic(-3).unwrap(),
    }
}

/// Nonzero element with small coordinates.
pub fn random_element(rng: &mut ChaCha8Rng, field: &Arc<NumberField>) -> FieldElement {
    loop {
        let coeffs = (0..field.degree())
            .map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
            .collect();
        let e = field.element(coeffs).unwrap();
        if !e.is_zero() {
            return e;
        }
    }
}

/// Indices that make every kind of holonomy reachable.
fn palette_element(rng: &mut ChaCha8Rng, field: &Arc<NumberField>) -> FieldElement {
    let rational = [q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2), q(-1, 2)];
    if field.degree() == 1 || rng.gen_bool(0.5) {
        return field.from_rational(rational.choose(rng).unwrap().clone());
    }
    let a = field.generator();
    let half = field.from_rational(q(1, 2));
    let s = field.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
    match rng.gen_range(0..3) {
        0 => &s * &a,
        1 => &(&s + &a) * &half,
        _ => &(&s - &a) * &half,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indices {
    /// Drawn from a small palette; any representation kind can result.
    Palette,
    /// Derived from random residues, so every cycle has holonomy 1.
    Trivial,
}

#[derive(Clone, Copy, Debug)]
pub struct GraphSpec {
    pub max_n: usize,
    pub max_extra: usize,
    pub saddle_node_probability: f64,
    pub indices: Indices,
}

impl GraphSpec {
    pub fn cycles(indices: Indices) -> Self {
        GraphSpec {
            max_n: 7,
            max_extra: 3,
            saddle_node_probability: 0.0,
            indices,
        }
    }
}

/// A random connected graph with at least one cycle when `max_extra > 0`,
/// strictly diagonally dominant matrix and padded vertex sums.
pub fn random_graph(rng: &mut ChaCha8Rng, spec: &GraphSpec) -> DualGraph {
    let field = random_field(rng);
    let n = rng.gen_range(2..=spec.max_n.max(2));
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if spec.max_extra > 0 {
        for _ in 0..rng.gen_range(1..=spec.max_extra) {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        }
    }
    edges.shuffle(rng);
    let residues: Vec<FieldElement> = (0..n).map(|_| random_element(rng, &field)).collect();

    let mut degree = vec![0i64; n];
    let mut crossings = Vec::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        degree[u] += 1;
        degree[v] += 1;
        let (tail, head) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let kind = if rng.gen_bool(spec.saddle_node_probability) {
            CrossingKind::SaddleNode {
                weak: if rng.gen_bool(0.5) { tail } else { head },
                cs_weak: rng.gen_bool(0.5).then(|| random_element(rng, &field)),
            }
        } else {
            let cs_tail = match spec.indices {
                Indices::Palette => palette_element(rng, &field),
                // delta = -1/cs_tail = mu_tail/mu_head
                Indices::Trivial => -&residues[head].checked_div(&residues[tail]).unwrap(),
            };
            CrossingKind::NonDegenerate { cs_tail }
        };
        crossings.push(Crossing {
            id: format!("x{}", k + 1),
            tail,
            head,
            kind,
        });
    }
    let components = (0..n)
        .map(|v| Component::new(format!("E{}", v + 1), -(degree[v] + 1 + rng.gen_range(0..=2))))
        .collect();
    let mut parts = GraphParts {
        field,
        components,
        crossings,
        gorenstein: None,
        closed_world: false,
        generator: None,
    };
    pad_vertex_sums(&mut parts);
    DualGraph::new(parts).unwrap()
}

/// Permute components by `perm` (old index to new index), rename them,
/// shuffle the crossing list and flip the stored orientation of a random
/// subset of crossings.
pub fn relabel(g: &DualGraph, rng: &mut ChaCha8Rng) -> DualGraph {
    let n = g.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let parts = g.to_parts();
    let mut components: Vec<Option<Component>> = vec![None; n];
    for (old, mut c) in parts.components.into_iter().enumerate() {
        c.id = format!("R{}_{}", perm[old], c.id);
        components[perm[old]] = Some(c);
    }
    let mut crossings: Vec<Crossing> = parts
        .crossings
        .into_iter()
        .map(|x| {
            let remap = |v: usize| perm[v];
            let kind = match x.kind {
                CrossingKind::SaddleNode { weak, cs_weak } => CrossingKind::SaddleNode {
                    weak: remap(weak),
                    cs_weak,
                },
                k => k,
            };
            let moved = Crossing {
                id: x.id,
                tail: remap(x.tail),
                head: remap(x.head),
                kind,
            };
            if rng.gen_bool(0.5) {
                moved.flipped().unwrap()
            } else {
                moved
            }
        })
        .collect();
    crossings.shuffle(rng);
    let gorenstein = parts.gorenstein.map(|mut gd| {
        let mut a = vec![0; n];
        for (old, v) in gd.a.iter().enumerate() {
            a[perm[old]] = *v;
        }
        gd.a = a;
        gd
    });
    DualGraph::new(GraphParts {
        field: parts.field,
        components: components.into_iter().map(Option::unwrap).collect(),
        crossings,
        gorenstein,
        closed_world: parts.closed_world,
        generator: parts.generator,
    })
    .unwrap()
}

/// Flip every crossing whose bit is set, keeping everything else.
pub fn flip_some(g: &DualGraph, rng: &mut ChaCha8Rng) -> DualGraph {
    let mut parts = g.to_parts();
    for x in parts.crossings.iter_mut() {
        if rng.gen_bool(0.5) {
            *x = x.flipped().unwrap();
        }
    }
    DualGraph::new(parts).unwrap()
}

/// Exhaustive pruning oracle: all pieces left after deleting the
/// saddle-node crossings, filtered to those with no weak endpoint inside,
/// and the one holding the smallest component index.
pub fn toma_oracle(g: &DualGraph) -> (Vec<BTreeSet<usize>>, BTreeSet<usize>) {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut pieces = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut piece = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            piece.insert(u);
            for x in g.crossings() {
                if x.is_saddle_node() || (x.tail != u && x.head != u) {
                    continue;
                }
                let w = x.other_end(u);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        pieces.push(piece);
    }
    let candidates: Vec<BTreeSet<usize>> = pieces
        .into_iter()
        .filter(|p| {
            !g.crossings().iter().any(|x| match x.kind {
                CrossingKind::SaddleNode { weak, .. } => p.contains(&weak),
                _ => false,
            })
        })
        .collect();
    let best = candidates
        .iter()
        .min_by_key(|p| *p.iter().next().unwrap())
        .cloned()
        .unwrap_or_default();
    (candidates, best)
}

/// Sum of all indices at component `v`, or `None` if one is unknown.
pub fn vertex_sum(g: &DualGraph, v: usize) -> Option<FieldElement> {
    let mut acc = g.field().zero();
    for x in g.incident(v) {
        acc = &acc + &g.cs_at(x, v)?;
    }
    for s in &g.components()[v].smooth_singularities {
        acc = &acc + s.cs.as_ref()?;
    }
    Some(acc)
}

/// A random connected set of components grown from a random start.
pub fn random_connected_subset(g: &DualGraph, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let target = rng.gen_range(1..=g.len());
    let start = rng.gen_range(0..g.len());
    let mut keep = BTreeSet::from([start]);
    while keep.len() < target {
        let frontier: Vec<usize> = keep
            .iter()
            .flat_map(|&u| g.incident(u).map(move |x| (u, x)).collect::<Vec<_>>())
            .map(|(u, x)| g.crossings()[x].other_end(u))
            .filter(|w| !keep.contains(w))
            .collect();
        match frontier.choose(rng) {
            Some(&w) => {
                keep.insert(w);
            }
            None => break,
        }
    }
    keep
}
