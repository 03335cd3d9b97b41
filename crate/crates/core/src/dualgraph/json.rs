use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    Component, Crossing, CrossingKind, DualGraph, GorensteinData, GraphParts, SingularityKind,
    SmoothSingularity,
};
use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField, Scalar};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc<X> {
    field: FieldDoc,
    components: Vec<ComponentDoc>,
    #[serde(default = "Vec::new")]
    crossings: Vec<X>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gorenstein: Option<GorensteinDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    closed_world: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldDoc {
    min_poly: Vec<String>,
    #[serde(default)]
    degree: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    id: String,
    self_intersection: i64,
    #[serde(default)]
    genus: u32,
    #[serde(default)]
    smooth_singularities: Vec<SmoothDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SmoothDoc {
    id: String,
    kind: String,
    #[serde(default)]
    cs: Option<Vec<String>>,
    #[serde(default = "yes")]
    separatrix: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingIn {
    #[serde(default)]
    id: Option<String>,
    tail: String,
    head: String,
    kind: String,
    #[serde(default)]
    cs_tail: Option<Vec<String>>,
    #[serde(default)]
    weak: Option<String>,
    #[serde(default)]
    cs_weak: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CrossingOut {
    id: String,
    tail: String,
    head: String,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cs_tail: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weak: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cs_weak: Option<Option<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GorensteinDoc {
    k: u32,
    a: BTreeMap<String, i64>,
}

/// Parse and fully validate a dual graph document.
pub fn parse_graph<Q: Scalar>(document: &str) -> Result<DualGraph<Q>> {
    let doc: GraphDoc<CrossingIn> =
        serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;

    let tail = doc
        .field
        .min_poly
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.trim().parse::<Q>().map_err(|_| Error::BadFieldElement {
                location: format!("field.min_poly[{i}]"),
                reason: format!("`{s}` is not a rational"),
            })
        })
        .collect::<Result<Vec<Q>>>()?;
    if let Some(d) = doc.field.degree {
        if d != tail.len() {
            return Err(Error::Schema(format!(
                "field.degree = {d} but min_poly lists {} coefficients",
                tail.len()
            )));
        }
    }
    let field = NumberField::new(tail)?;

    let element = |coords: &[String], location: String| -> Result<FieldElement<Q>> {
        field.parse_element(coords).map_err(|e| match e {
            Error::BadFieldElement { reason, .. } => Error::BadFieldElement { location, reason },
            other => other,
        })
    };

    let mut index = BTreeMap::new();
    for (i, c) in doc.components.iter().enumerate() {
        index.entry(c.id.clone()).or_insert(i);
    }
    let resolve = |id: &str| -> Result<usize> {
        index.get(id).copied().ok_or_else(|| Error::UnknownId(id.to_string()))
    };

    let mut components = Vec::with_capacity(doc.components.len());
    for c in &doc.components {
        let mut sings = Vec::with_capacity(c.smooth_singularities.len());
        for s in &c.smooth_singularities {
            let kind = SingularityKind::parse(&s.kind).ok_or_else(|| {
                Error::Schema(format!("singularity {}: unknown kind `{}`", s.id, s.kind))
            })?;
            let cs = match &s.cs {
                Some(v) => Some(element(v, format!("singularity {}", s.id))?),
                None => None,
            };
            sings.push(SmoothSingularity {
                id: s.id.clone(),
                kind,
                cs,
                has_transverse_separatrix: s.separatrix,
            });
        }
        components.push(Component {
            id: c.id.clone(),
            self_intersection: c.self_intersection,
            genus: c.genus,
            smooth_singularities: sings,
        });
    }

    let mut crossings = Vec::with_capacity(doc.crossings.len());
    for (i, x) in doc.crossings.iter().enumerate() {
        let id = x.id.clone().unwrap_or_else(|| format!("x{}", i + 1));
        let tail = resolve(&x.tail)?;
        let head = resolve(&x.head)?;
        let kind = match x.kind.as_str() {
            "nondegenerate" => {
                if x.weak.is_some() || x.cs_weak.is_some() {
                    return Err(Error::Schema(format!(
                        "crossing {id}: weak/cs_weak belong to saddle-node crossings"
                    )));
                }
                let cs = x.cs_tail.as_ref().ok_or_else(|| {
                    Error::Schema(format!("crossing {id}: nondegenerate crossings need cs_tail"))
                })?;
                CrossingKind::NonDegenerate {
                    cs_tail: element(cs, format!("crossing {id}"))?,
                }
            }
            "saddle_node" => {
                if x.cs_tail.is_some() {
                    return Err(Error::Schema(format!(
                        "crossing {id}: saddle-node crossings carry cs_weak, not cs_tail"
                    )));
                }
                let weak = x.weak.as_ref().ok_or_else(|| {
                    Error::Schema(format!("crossing {id}: saddle-node crossings need `weak`"))
                })?;
                let cs_weak = match &x.cs_weak {
                    Some(v) => Some(element(v, format!("crossing {id}"))?),
                    None => None,
                };
                CrossingKind::SaddleNode {
                    weak: resolve(weak)?,
                    cs_weak,
                }
            }
            other => {
                return Err(Error::Schema(format!("crossing {id}: unknown kind `{other}`")))
            }
        };
        crossings.push(Crossing {
            id,
            tail,
            head,
            kind,
        });
    }

    let gorenstein = match doc.gorenstein {
        None => None,
        Some(gd) => {
            for key in gd.a.keys() {
                resolve(key)?;
            }
            let a = components
                .iter()
                .map(|c| {
                    gd.a.get(&c.id).copied().ok_or_else(|| {
                        Error::Schema(format!("gorenstein.a has no entry for {}", c.id))
                    })
                })
                .collect::<Result<Vec<i64>>>()?;
            Some(GorensteinData { k: gd.k, a })
        }
    };

    DualGraph::new(GraphParts {
        field,
        components,
        crossings,
        gorenstein,
        closed_world: doc.closed_world,
        generator: doc.generator,
    })
}

/// The document form of `g`; `parse_graph(to_json_string(g)) == g`.
pub fn to_json_value<Q: Scalar>(g: &DualGraph<Q>) -> Value {
    let ids = g.component_ids();
    let field = FieldDoc {
        min_poly: g.field().min_poly_tail().iter().map(ToString::to_string).collect(),
        degree: Some(g.field().degree()),
    };
    let components = g
        .components()
        .iter()
        .map(|c| ComponentDoc {
            id: c.id.clone(),
            self_intersection: c.self_intersection,
            genus: c.genus,
            smooth_singularities: c
                .smooth_singularities
                .iter()
                .map(|s| SmoothDoc {
                    id: s.id.clone(),
                    kind: s.kind.as_str().to_string(),
                    cs: s.cs.as_ref().map(FieldElement::to_strings),
                    separatrix: s.has_transverse_separatrix,
                })
                .collect(),
        })
        .collect();
    let crossings = g
        .crossings()
        .iter()
        .map(|x| {
            let out = match &x.kind {
                CrossingKind::NonDegenerate { cs_tail } => CrossingOut {
                    id: x.id.clone(),
                    tail: ids[x.tail].clone(),
                    head: ids[x.head].clone(),
                    kind: "nondegenerate",
                    cs_tail: Some(cs_tail.to_strings()),
                    weak: None,
                    cs_weak: None,
                },
                CrossingKind::SaddleNode { weak, cs_weak } => CrossingOut {
                    id: x.id.clone(),
                    tail: ids[x.tail].clone(),
                    head: ids[x.head].clone(),
                    kind: "saddle_node",
                    cs_tail: None,
                    weak: Some(ids[*weak].clone()),
                    cs_weak: Some(cs_weak.as_ref().map(FieldElement::to_strings)),
                },
            };
            out
        })
        .collect::<Vec<CrossingOut>>();
    let gorenstein = g.gorenstein().map(|gd| GorensteinDoc {
        k: gd.k,
        a: ids.iter().cloned().zip(gd.a.iter().copied()).collect(),
    });
    let doc = GraphDoc {
        field,
        components,
        crossings,
        gorenstein,
        closed_world: g.closed_world(),
        generator: g.generator().cloned(),
    };
    serde_json::to_value(doc).expect("graph serializes")
}

pub fn to_json_string<Q: Scalar>(g: &DualGraph<Q>) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(g)).expect("graph serializes");
    s.push('\n');
    s
}
