use serde::Serialize;

use crate::dualgraph::{DualGraph, SingularityKind};
use crate::error::{Error, Result};
use crate::exactfield::{rational_span_dimension, Scalar};
use crate::holonomy::{cycle_basis, holonomy, residual_divisor, Convention};
use crate::intersection::{definiteness, intersection_matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountBound {
    /// Separatrix germs declared on the curve.
    pub declared_m: usize,
    /// `dim_Q` of the span of all residues.
    pub lower_bound: usize,
    /// `declared_m >= lower_bound >= 1`.
    pub holds: bool,
}

fn unmet(name: &str, evidence: impl Into<String>) -> Error {
    Error::HypothesisUnmet {
        name: name.to_string(),
        evidence: evidence.into(),
    }
}

/// Lower bound on the number of separatrix germs off the curve.
pub fn separatrix_bound<Q: Scalar>(g: &DualGraph<Q>) -> Result<CountBound> {
    if let Some(x) = g.crossings().iter().find(|x| x.is_saddle_node()) {
        return Err(unmet(
            "crossings_nondegenerate",
            format!("crossing {} is a saddle-node", x.id),
        ));
    }
    if let Some((_, s)) = g
        .smooth_singularities()
        .find(|(_, s)| s.kind == SingularityKind::SaddleNodeWeakOnC)
    {
        return Err(unmet(
            "no_weak_separatrix_on_curve",
            format!("saddle-node {} has its weak separatrix along the curve", s.id),
        ));
    }
    let d = definiteness(&intersection_matrix(g));
    if !d.invertible {
        return Err(unmet("matrix_invertible", "intersection matrix is singular"));
    }
    let r = residual_divisor(g).map_err(|e| match e {
        Error::NontrivialRepresentation(kind) => unmet("representation_trivial", kind),
        other => other,
    })?;
    let lower_bound = rational_span_dimension(&r.values())?;
    let declared_m = g
        .smooth_singularities()
        .filter(|(_, s)| s.has_transverse_separatrix)
        .count();
    Ok(CountBound {
        declared_m,
        lower_bound,
        holds: declared_m >= lower_bound && lower_bound >= 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReduction {
    pub k: u32,
    /// `D . E_j` for `D = sum (a_i - k) E_i`, all zero on success.
    pub pairings: Vec<i64>,
    /// Every `a_i` equals `k`.
    pub forced_a: bool,
    /// Every cycle holonomy raised to the `k`-th power is 1.
    pub holonomy_power_check: bool,
}

/// Check that the declared `a_i` satisfy `(sum a_i E_i - k E) . E_j = 0`.
///
/// Over a negative definite matrix this forces `a_i = k`.
pub fn gorenstein_reduce<Q: Scalar>(g: &DualGraph<Q>) -> Result<GorensteinReduction> {
    let gd = g
        .gorenstein()
        .ok_or_else(|| unmet("gorenstein_data_present", "no gorenstein block in the input"))?;
    if let Some(x) = g.crossings().iter().find(|x| x.is_saddle_node()) {
        return Err(unmet(
            "all_singularities_nondegenerate",
            format!("crossing {} is a saddle-node", x.id),
        ));
    }
    if let Some((_, s)) = g
        .smooth_singularities()
        .find(|(_, s)| s.kind != SingularityKind::NonDegenerate)
    {
        return Err(unmet(
            "all_singularities_nondegenerate",
            format!("singularity {} is a saddle-node", s.id),
        ));
    }
    let m = intersection_matrix(g);
    if !definiteness(&m).negative_definite {
        return Err(unmet("exceptional", "intersection matrix is not negative definite"));
    }

    let k = i64::from(gd.k);
    let d: Vec<i64> = gd.a.iter().map(|a| a - k).collect();
    let pairings: Vec<i64> = (0..m.order())
        .map(|j| (0..m.order()).map(|i| d[i] * m.entries[i][j]).sum())
        .collect();
    if let Some(j) = pairings.iter().position(|&p| p != 0) {
        return Err(Error::GorensteinInconsistent(format!(
            "D.{} = {} with D = sum (a_i - k) E_i",
            m.ids[j], pairings[j]
        )));
    }
    if let Some(i) = d.iter().position(|&x| x != 0) {
        return Err(Error::GorensteinInconsistent(format!(
            "internal: D is orthogonal to every component but a({}) = {} != k",
            m.ids[i], gd.a[i]
        )));
    }

    let basis = cycle_basis(g);
    let holonomy_power_check = basis.cycles.iter().all(|c| {
        holonomy(g, c, Convention::HeadSide)
            .expect("no saddle-node crossings")
            .pow(u64::from(gd.k))
            .is_one()
    });
    Ok(GorensteinReduction {
        k: gd.k,
        pairings,
        forced_a: true,
        holonomy_power_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::parse_graph;
    use crate::Rational;

    fn camacho_shape(gorenstein: &str) -> DualGraph<Rational> {
        parse_graph(&format!(
            r#"{{"field": {{"min_poly": ["0"]}},
              "components": [{{"id": "E1", "self_intersection": -2}}, {{"id": "E2", "self_intersection": -2}},
                             {{"id": "E3", "self_intersection": -3}}],
              "crossings": [
                {{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["-1"]}},
                {{"tail": "E1", "head": "E3", "kind": "nondegenerate", "cs_tail": ["-1"]}},
                {{"tail": "E2", "head": "E3", "kind": "nondegenerate", "cs_tail": ["-1"]}}],
              "gorenstein": {gorenstein}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn consistent_data_forces_k() {
        let g = camacho_shape(r#"{"k": 2, "a": {"E1": 2, "E2": 2, "E3": 2}}"#);
        let r = gorenstein_reduce(&g).unwrap();
        assert!(r.forced_a);
        assert_eq!(r.pairings, vec![0, 0, 0]);
        // holonomy (-1)^3 = -1 squares to 1
        assert!(r.holonomy_power_check);
    }

    #[test]
    fn inconsistent_data_is_rejected() {
        let g = camacho_shape(r#"{"k": 2, "a": {"E1": 1, "E2": 2, "E3": 2}}"#);
        match gorenstein_reduce(&g) {
            Err(Error::GorensteinInconsistent(msg)) => assert!(msg.starts_with("D.E1 = 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_residues_bound_one() {
        let g: DualGraph<Rational> = parse_graph(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "C", "self_intersection": -1,
                 "smooth_singularities": [{"id": "s", "kind": "nondegenerate", "cs": ["-1"]}]}]}"#,
        )
        .unwrap();
        let b = separatrix_bound(&g).unwrap();
        assert_eq!((b.declared_m, b.lower_bound, b.holds), (1, 1, true));
    }

    #[test]
    fn weak_separatrix_gate() {
        let g: DualGraph<Rational> = parse_graph(
            r#"{"field": {"min_poly": ["0"]},
              "components": [{"id": "C", "self_intersection": -1,
                 "smooth_singularities": [{"id": "s", "kind": "saddle_node_weak_on_c", "cs": ["-1"]}]}]}"#,
        )
        .unwrap();
        assert!(matches!(
            separatrix_bound(&g),
            Err(Error::HypothesisUnmet { name, .. }) if name == "no_weak_separatrix_on_curve"
        ));
    }
}
