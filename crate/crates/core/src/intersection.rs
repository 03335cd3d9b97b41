//! Intersection form of the components and its pairing with divisors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::dualgraph::DualGraph;
use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Scalar};
use crate::linalg;

/// Symmetric matrix `[C_i . C_j]` in component input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    pub ids: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn order(&self) -> usize {
        self.ids.len()
    }

    fn big(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }
}

/// Diagonal: self-intersections. Off-diagonal: number of crossings.
pub fn intersection_matrix<Q: Scalar>(g: &DualGraph<Q>) -> IntersectionMatrix {
    let n = g.len();
    let mut entries = vec![vec![0i64; n]; n];
    for (i, c) in g.components().iter().enumerate() {
        entries[i][i] = c.self_intersection;
    }
    for x in g.crossings() {
        entries[x.tail][x.head] += 1;
        entries[x.head][x.tail] += 1;
    }
    IntersectionMatrix {
        ids: g.component_ids(),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Definiteness {
    pub negative_definite: bool,
    #[serde(serialize_with = "big_int")]
    pub determinant: BigInt,
    pub invertible: bool,
    #[serde(serialize_with = "big_ints")]
    pub leading_minors: Vec<BigInt>,
}

/// Negative definite iff `(-1)^k D_k > 0` for every leading principal minor.
pub fn definiteness(m: &IntersectionMatrix) -> Definiteness {
    let a = m.big();
    let leading_minors = linalg::leading_principal_minors(&a);
    let negative_definite = leading_minors
        .iter()
        .enumerate()
        .all(|(i, d)| if i % 2 == 0 { d.is_negative() } else { d.is_positive() });
    // D_n is the determinant itself
    let determinant = leading_minors.last().cloned().unwrap_or_else(BigInt::one);
    Definiteness {
        negative_definite,
        invertible: !determinant.is_zero(),
        determinant,
        leading_minors,
    }
}

/// A divisor with field coefficients on components and separatrix germs.
///
/// Keys are component ids or smooth-singularity ids; missing keys are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor<Q: Scalar = crate::Rational> {
    pub coefficients: BTreeMap<String, FieldElement<Q>>,
}

impl<Q: Scalar> Divisor<Q> {
    pub fn new() -> Self {
        Divisor {
            coefficients: BTreeMap::new(),
        }
    }

    pub fn with(mut self, id: impl Into<String>, c: FieldElement<Q>) -> Self {
        self.coefficients.insert(id.into(), c);
        self
    }
}

/// `R . C_j` for every component, in component order.
///
/// A separatrix germ meets its host component once and no other.
pub fn divisor_pairing<Q: Scalar>(
    g: &DualGraph<Q>,
    r: &Divisor<Q>,
) -> Result<Vec<(String, FieldElement<Q>)>> {
    let m = intersection_matrix(g);
    let field = g.field();
    let mut out: Vec<FieldElement<Q>> = vec![field.zero(); g.len()];
    for (key, coeff) in &r.coefficients {
        if !coeff.same_field(&field.zero()) {
            return Err(Error::FieldMismatch);
        }
        if let Ok(i) = g.index_of(key) {
            for (j, slot) in out.iter_mut().enumerate() {
                let e = m.entries[i][j];
                if e != 0 {
                    *slot = &*slot + &(coeff * &field.from_i64(e));
                }
            }
        } else if let Some((host, _)) = g.smooth_singularities().find(|(_, s)| &s.id == key) {
            out[host] = &out[host] + coeff;
        } else {
            return Err(Error::UnknownId(key.clone()));
        }
    }
    Ok(m.ids.into_iter().zip(out).collect())
}

fn big_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    // plain JSON number when it fits, decimal string beyond i64
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

fn big_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Wrap<'a>(&'a BigInt);
    impl Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            big_int(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Wrap(x))?;
    }
    seq.end()
}
