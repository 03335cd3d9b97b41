//! Example inputs: the three-curve cycle with no separatrix, the projective
//! plane triangle, a torsion cycle over `Q(i)` and random trees.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::dualgraph::{Component, Crossing, CrossingKind, GraphParts, SingularityKind, SmoothSingularity};
use crate::error::{Error, Result};
use crate::exactfield::Poly;
use crate::{DualGraph, FieldElement, NumberField, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Example {
    /// Cycle of three curves; indices solved from the vertex sums.
    Camacho {
        self_intersections: [i64; 3],
        closed_world: bool,
    },
    /// Triangle of lines with `C_j^2 = 1`, parametrized by `t`.
    P2Cycle { t: Rational },
    /// Negative definite triangle over `Q(i)` with cycle holonomy `i`.
    Torsion4,
    RandomTree {
        seed: u64,
        n: usize,
        saddle_node_probability: f64,
        /// Draw indices from `Q(sqrt(d))` instead of `Q`.
        quadratic: Option<i64>,
    },
}

impl Example {
    pub fn camacho() -> Self {
        Example::Camacho {
            self_intersections: [-2, -2, -3],
            closed_world: true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Example::Camacho { .. } => "camacho",
            Example::P2Cycle { .. } => "p2_cycle",
            Example::Torsion4 => "torsion4",
            Example::RandomTree { .. } => "random_tree",
        }
    }
}

pub fn generate_example(example: &Example) -> Result<DualGraph> {
    match example {
        Example::Camacho {
            self_intersections,
            closed_world,
        } => camacho(*self_intersections, *closed_world),
        Example::P2Cycle { t } => p2_cycle(t),
        Example::Torsion4 => torsion4(),
        Example::RandomTree {
            seed,
            n,
            saddle_node_probability,
            quadratic,
        } => random_tree(*seed, *n, *saddle_node_probability, *quadratic),
    }
}

/// Integer coefficients, low degree first, of the constraint on
/// `t = lambda_12` left after eliminating `lambda_13` and `lambda_23`.
///
/// From `lambda_13 = e1 - t` and `lambda_23 = (e2 t - 1) / t`, the third
/// vertex sum `1/lambda_23 + 1/lambda_13 = e3` is multiplied through by
/// `(e2 t - 1)(e1 - t)`.
pub fn camacho_constraint(e: [i64; 3]) -> Poly<Rational> {
    let t = Poly::<Rational>::x();
    let c = |v: i64| Poly::constant(Rational::from_integer(v.into()));
    let l13 = &c(e[0]) - &t;
    let l23_num = &(&c(e[1]) * &t) - &c(1);
    let l23_den = t.clone();
    // l23_den / l23_num + 1 / l13 = e3
    let lhs = &(&l23_den * &l13) + &l23_num;
    let rhs = &(&c(e[2]) * &l23_num) * &l13;
    &lhs - &rhs
}

fn camacho(e: [i64; 3], closed_world: bool) -> Result<DualGraph> {
    let p = camacho_constraint(e);
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::BadParams(format!(
            "self-intersections {e:?} leave no solvable constraint ({p})"
        )));
    }
    let sf = Poly::new(
        p.squarefree_part()
            .primitive_integer_coeffs()
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    );
    let ints: Vec<BigInt> = sf.primitive_integer_coeffs();

    let admissible = |field: &Arc<NumberField>, t: &FieldElement| -> Option<[FieldElement; 3]> {
        let l13 = &field.from_i64(e[0]) - t;
        let l23 = &field.from_i64(e[1]) - &t.inverse().ok()?;
        (!t.is_zero() && !l13.is_zero() && !l23.is_zero()).then(|| [t.clone(), l13, l23])
    };

    let mut chosen = None;
    let roots = sf.rational_roots()?;
    for r in roots.iter().cloned() {
        let q = NumberField::rationals();
        if let Some(cs) = admissible(&q, &q.from_rational(r)) {
            chosen = Some((q, cs));
            break;
        }
    }
    if roots.is_empty() && sf.degree() == Some(2) {
        // t = (-b + s sqrt(d)) / 2a with disc = s^2 d, d squarefree
        let (c0, b, a) = (&ints[0], &ints[1], &ints[2]);
        let disc = b * b - BigInt::from(4) * a * c0;
        let (s, d) = square_split(&disc)?;
        let field = NumberField::quadratic(d)?;
        let two_a = Rational::from_integer(BigInt::from(2) * a);
        let t = field.element(vec![
            Rational::from_integer(-b.clone()) / two_a.clone(),
            Rational::from_integer(s) / two_a,
        ])?;
        if let Some(cs) = admissible(&field, &t) {
            chosen = Some((field, cs));
        }
    }
    let Some((field, [l12, l13, l23])) = chosen else {
        return Err(Error::BadParams(format!(
            "constraint {sf} has no root giving nonzero indices"
        )));
    };

    let components = (1..=3)
        .map(|i| Component::new(format!("E{i}"), e[i - 1]))
        .collect();
    let crossings = vec![
        nondegenerate("x12", 0, 1, l12),
        nondegenerate("x13", 0, 2, l13),
        nondegenerate("x23", 1, 2, l23),
    ];
    let constraint: Vec<String> = ints.iter().map(ToString::to_string).collect();
    DualGraph::new(GraphParts {
        field,
        components,
        crossings,
        gorenstein: None,
        closed_world,
        generator: Some(json!({
            "name": "camacho",
            "self_intersections": e,
            "constraint": constraint,
            "constraint_display": sf.to_string(),
        })),
    })
}

/// `n = s^2 d` with `d` squarefree (sign kept in `d`).
fn square_split(n: &BigInt) -> Result<(BigInt, i64)> {
    let mut m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::BadParams("discriminant too large".into()))?;
    if m == 0 {
        return Err(Error::BadParams("repeated root".into()));
    }
    let (mut s, mut d) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    let d = i64::try_from(d).map_err(|_| Error::BadParams("discriminant too large".into()))?;
    Ok((BigInt::from(s), if n.is_negative() { -d } else { d }))
}

fn nondegenerate(id: &str, tail: usize, head: usize, cs_tail: FieldElement) -> Crossing {
    Crossing {
        id: id.to_string(),
        tail,
        head,
        kind: CrossingKind::NonDegenerate { cs_tail },
    }
}

fn p2_cycle(t: &Rational) -> Result<DualGraph> {
    if t.is_zero() || *t == -Rational::one() {
        return Err(Error::BadParams(format!("t = {t} makes an index vanish")));
    }
    let q = NumberField::rationals();
    let one = Rational::one();
    // tail-side indices: delta' = -cs_tail gives t, -1-t, -(1+t)/t
    let cs = [
        -t.clone(),
        &one + t,
        (&one + t) / t,
    ];
    let components = (1..=3).map(|i| Component::new(format!("C{i}"), 1)).collect();
    let crossings = vec![
        nondegenerate("x12", 0, 1, q.from_rational(cs[0].clone())),
        nondegenerate("x13", 0, 2, q.from_rational(cs[1].clone())),
        nondegenerate("x23", 1, 2, q.from_rational(cs[2].clone())),
    ];
    DualGraph::new(GraphParts {
        field: q,
        components,
        crossings,
        gorenstein: None,
        closed_world: false,
        generator: Some(json!({"name": "p2_cycle", "t": t.to_string()})),
    })
}

fn torsion4() -> Result<DualGraph> {
    let f = NumberField::gaussian();
    let i = f.generator();
    let mut components: Vec<Component> = [-2, -2, -3]
        .iter()
        .enumerate()
        .map(|(k, &s)| Component::new(format!("E{}", k + 1), s))
        .collect();
    let crossings = vec![
        nondegenerate("x12", 0, 1, f.from_i64(-1)),
        nondegenerate("x13", 0, 2, -&i),
        nondegenerate("x23", 1, 2, f.from_i64(-1)),
    ];
    pad(&f, &mut components, &crossings);
    DualGraph::new(GraphParts {
        field: f,
        components,
        crossings,
        gorenstein: None,
        closed_world: false,
        generator: Some(json!({"name": "torsion4"})),
    })
}

/// Add a nondegenerate smooth singularity carrying the vertex-sum remainder
/// to every component whose indices are all known and do not add up.
pub fn pad_vertex_sums(parts: &mut GraphParts) {
    let field = Arc::clone(&parts.field);
    pad(&field, &mut parts.components, &parts.crossings);
}

fn pad(field: &Arc<NumberField>, components: &mut [Component], crossings: &[Crossing]) {
    for (v, c) in components.iter_mut().enumerate() {
        let mut sum = field.zero();
        let mut known = true;
        for x in crossings.iter().filter(|x| x.tail == v || x.head == v) {
            match &x.kind {
                CrossingKind::NonDegenerate { cs_tail } if x.tail == v => sum = &sum + cs_tail,
                CrossingKind::NonDegenerate { cs_tail } => {
                    sum = &sum + &cs_tail.inverse().expect("nonzero index")
                }
                CrossingKind::SaddleNode { weak, cs_weak } if *weak == v => match cs_weak {
                    Some(w) => sum = &sum + w,
                    None => known = false,
                },
                CrossingKind::SaddleNode { .. } => {}
            }
        }
        for s in &c.smooth_singularities {
            match &s.cs {
                Some(cs) => sum = &sum + cs,
                None => known = false,
            }
        }
        let rest = &field.from_i64(c.self_intersection) - &sum;
        if known && !rest.is_zero() {
            c.smooth_singularities.push(SmoothSingularity {
                id: format!("{}_pad", c.id),
                kind: SingularityKind::NonDegenerate,
                cs: Some(rest),
                has_transverse_separatrix: true,
            });
        }
    }
}

fn random_tree(seed: u64, n: usize, p_sn: f64, quadratic: Option<i64>) -> Result<DualGraph> {
    if n == 0 {
        return Err(Error::BadParams("a tree needs at least one component".into()));
    }
    if !(0.0..=1.0).contains(&p_sn) {
        return Err(Error::BadParams(format!("saddle-node probability {p_sn} outside [0, 1]")));
    }
    let field = match quadratic {
        Some(d) => NumberField::quadratic(d).map_err(|e| Error::BadParams(e.to_string()))?,
        None => NumberField::rationals(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let index = |rng: &mut ChaCha8Rng| -> FieldElement {
        // negative rational part keeps the index away from positive rationals
        let p: i64 = rng.gen_range(1..=5);
        let q: i64 = rng.gen_range(1..=5);
        let mut coeffs = vec![-Rational::new(p.into(), q.into())];
        if field.degree() == 2 {
            coeffs.push(Rational::from_integer(rng.gen_range(-2i64..=2).into()));
        }
        field.element(coeffs).expect("degree matches")
    };

    let mut crossings = Vec::with_capacity(n.saturating_sub(1));
    let mut degree = vec![0i64; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        degree[u] += 1;
        degree[v] += 1;
        let (tail, head) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let kind = if rng.gen_bool(p_sn) {
            let weak = if rng.gen_bool(0.5) { tail } else { head };
            let cs_weak = rng.gen_bool(0.5).then(|| index(&mut rng));
            CrossingKind::SaddleNode { weak, cs_weak }
        } else {
            CrossingKind::NonDegenerate {
                cs_tail: index(&mut rng),
            }
        };
        crossings.push(Crossing {
            id: format!("x{v}"),
            tail,
            head,
            kind,
        });
    }
    let mut components: Vec<Component> = (0..n)
        .map(|v| {
            let r: i64 = rng.gen_range(0..=2);
            // strictly diagonally dominant, hence negative definite
            Component::new(format!("E{}", v + 1), -(degree[v] + 1 + r))
        })
        .collect();
    pad(&field, &mut components, &crossings);
    DualGraph::new(GraphParts {
        field,
        components,
        crossings,
        gorenstein: None,
        closed_world: false,
        generator: Some(json!({
            "name": "random_tree",
            "seed": seed,
            "n": n,
            "saddle_node_probability": p_sn,
            "quadratic": quadratic.map_or(Value::Null, Value::from),
        })),
    })
}
