//! JSON views of analysis results.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::cyclo::QuotientType;
use crate::poly::Monomial;
use crate::wps::{LocalQuotient, PointKind, VertexKind, WpsAnalysis, LIMITATIONS};

pub fn rat(q: &BigRational) -> String {
    q.to_string()
}

pub fn monomials(ms: &[Monomial], vars: &[String]) -> Vec<String> {
    ms.iter().map(|m| m.render(vars)).collect()
}

fn local(q: &LocalQuotient) -> Value {
    json!({
        "type": q.raw.to_string(),
        "normalized": q.normalized.to_string(),
        "terminal": q.terminal,
    })
}

fn action(q: &QuotientType) -> String {
    q.to_string()
}

pub fn wps_analysis(a: &WpsAnalysis) -> Value {
    let x = &a.hypersurface;
    let vars = x.vars();
    let vertices: Vec<Value> = a
        .vertices
        .iter()
        .map(|v| {
            let mut e = json!({
                "variable": vars[v.index],
                "weight": x.weights()[v.index],
                "on_x": v.on_x(),
            });
            match &v.kind {
                VertexKind::OffX => e["status"] = json!("off"),
                VertexKind::QuasiSmooth { eliminated, quotient } => {
                    e["status"] = json!("quasi-smooth");
                    e["eliminated"] = json!(vars[*eliminated]);
                    e["quotient"] = local(quotient);
                }
                VertexKind::NonQuasiSmooth {
                    chart_equation,
                    action: g,
                } => {
                    e["status"] = json!("non-quasi-smooth");
                    e["local_model"] = json!({
                        "equation": chart_equation.to_string(),
                        "action": action(g),
                    });
                }
            }
            e
        })
        .collect();
    let strata: Vec<Value> = a
        .strata
        .iter()
        .map(|s| {
            let points: Vec<Value> = s
                .classes
                .iter()
                .map(|c| match &c.kind {
                    PointKind::Quotient(q) => json!({
                        "count": c.count,
                        "stabilizer": c.stabilizer,
                        "kind": "quotient",
                        "quotient": local(q),
                    }),
                    PointKind::NonQuasiSmooth => json!({
                        "count": c.count,
                        "stabilizer": c.stabilizer,
                        "kind": "non-quasi-smooth",
                    }),
                })
                .collect();
            json!({
                "variables": [vars[s.pair.0], vars[s.pair.1]],
                "stabilizer": s.stabilizer,
                "contained": s.contained,
                "singular_curve": s.singular_curve,
                "restriction": s.restriction.to_string(),
                "points": points,
                "flagged_vertices": s.flagged_vertices.iter().map(|&k| vars[k].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let singularities: Vec<Value> = a
        .quotient_singularities()
        .iter()
        .map(|(q, n)| {
            json!({
                "type": q.to_string(),
                "count": n,
                "terminal": crate::cyclo::is_terminal_3fold(q).ok(),
            })
        })
        .collect();
    let (elephant, note) = match &a.elephant {
        Ok(e) => {
            let evars: Vec<String> = vars
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != e.section)
                .map(|(_, v)| v.clone())
                .collect();
            (
                json!({
                    "section": vars[e.section],
                    "equation": e.equation.to_string(),
                    "weights": e.weights,
                    "vars": evars,
                }),
                Value::Null,
            )
        }
        Err(err) => (Value::Null, json!(err.to_string())),
    };
    json!({
        "wellformed": a.wellformed,
        "vertices": vertices,
        "strata": strata,
        "quotient_singularities": singularities,
        "non_quasi_smooth_points": a.non_quasi_smooth_count(),
        "singular_curves": a
            .singular_curves()
            .iter()
            .map(|&(i, j)| json!([vars[i], vars[j]]))
            .collect::<Vec<_>>(),
        "anticanonical": {
            "degree": a.anticanonical_degree,
            "h0": a.sections.len(),
            "sections": monomials(&a.sections, vars),
        },
        "elephant": elephant,
        "elephant_note": note,
        "limitations": LIMITATIONS,
    })
}
