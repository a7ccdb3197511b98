//! JSON report shapes shared by the CLI and the bundled suite runner.
//!
//! Every arbitrary-precision quantity is rendered as a decimal string at the
//! reporting precision (deterministic), with an `_f64` mirror on headline
//! numbers for quick consumption.

use serde_json::{json, Map, Value};

use crate::apnum::{Complex, PrecisionContext, Real};
use crate::bloch::{BlochCertificate, TraceStep};
use crate::lichtenbaum::{K2Report, RegulatorMatrix, Theorem33Report};
use crate::nfield::NumberField;
use crate::zeta::ZetaResult;

pub fn real_str(x: &Real, ctx: &PrecisionContext) -> String {
    x.to_decimal_string(ctx.digits())
}

pub fn complex_obj(z: &Complex, ctx: &PrecisionContext) -> Value {
    json!({ "re": real_str(&z.re, ctx), "im": real_str(&z.im, ctx) })
}

pub fn zeta_obj(z: &ZetaResult, ctx: &PrecisionContext) -> Value {
    json!({
        "value": real_str(&z.value, ctx),
        "value_f64": z.value.to_f64(),
        "tail_bound": real_str(&z.tail_bound, ctx),
        "tail_bound_f64": z.tail_bound.to_f64(),
        "terms_used": z.terms_used,
        "method": serde_json::to_value(z.method).unwrap(),
    })
}

pub fn field_obj(field: &NumberField, ctx: &PrecisionContext) -> Value {
    let places: Vec<Value> = match field.places(ctx) {
        Ok(ps) => ps
            .iter()
            .map(|p| {
                json!({
                    "re": real_str(&p.value.re, ctx),
                    "im": real_str(&p.value.im, ctx),
                    "is_real": p.is_real,
                })
            })
            .collect(),
        Err(_) => Vec::new(),
    };
    json!({
        "poly": field.poly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "degree": field.degree(),
        "signature": { "r1": field.r1(), "r2": field.r2() },
        "discriminant": field.discriminant().to_string(),
        "poly_discriminant": field.poly_discriminant().to_string(),
        "index_primes": field.index_primes(),
        "maximality": field
            .maximality_certificate()
            .iter()
            .map(|r| json!({ "prime": r.prime, "passed": r.passed }))
            .collect::<Vec<_>>(),
        "embeddings": places,
    })
}

pub fn trace_obj(step: &TraceStep) -> Value {
    match step {
        TraceStep::HGenerator { kind, element, count } => json!({
            "step": "h_generator", "kind": kind, "element": element, "count": count,
        }),
        TraceStep::Decomposition { element, exponents, torsion } => json!({
            "step": "decomposition", "element": element,
            "exponents": exponents, "torsion": torsion,
        }),
        TraceStep::TensorTerm { coeff, left, right } => json!({
            "step": "tensor_term", "coeff": coeff, "left": left, "right": right,
        }),
        TraceStep::Reduced { summary } => json!({ "step": "reduced", "summary": summary }),
    }
}

pub fn certificate_obj(cert: &BlochCertificate, sum_display: &str) -> Value {
    json!({
        "element": sum_display,
        "status": serde_json::to_value(cert.status).unwrap(),
        "witness": cert.witness,
        "trace": cert.trace.iter().map(trace_obj).collect::<Vec<_>>(),
        "generators": cert.basis.as_ref().map(|b| {
            b.generators().iter().map(|g| g.display()).collect::<Vec<_>>()
        }),
        "torsion_order": cert.basis.as_ref().map(|b| b.torsion_order()),
    })
}

pub fn regulator_obj(reg: &RegulatorMatrix, ctx: &PrecisionContext) -> Value {
    json!({
        "elements": reg.elements,
        "entries": reg
            .entries
            .iter()
            .map(|row| row.iter().map(|e| real_str(e, ctx)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "det_abs": real_str(&reg.det_abs, ctx),
        "det_abs_f64": reg.det_abs.to_f64(),
        "det_over_pi_r2": real_str(&reg.det_over_pi_r2, ctx),
        "det_over_pi_r2_f64": reg.det_over_pi_r2.to_f64(),
    })
}

pub fn k2_obj(report: &K2Report, field: &NumberField, ctx: &PrecisionContext) -> Value {
    json!({
        "field": field_obj(field, ctx),
        "w2": report.w2,
        "zeta2": zeta_obj(&report.zeta2, ctx),
        "zeta_star_minus1": real_str(&report.zeta_star_minus1, ctx),
        "regulator": regulator_obj(&report.regulator, ctx),
        "predicted_order": real_str(&report.predicted_order, ctx),
        "predicted_order_f64": report.predicted_order.to_f64(),
        "nearest_integer": report.nearest_integer.to_string(),
        "deviation": real_str(&report.deviation, ctx),
        "deviation_f64": report.deviation.to_f64(),
        "error_budget": real_str(&report.error_budget, ctx),
        "error_budget_f64": report.error_budget.to_f64(),
        "consistent": report.consistent,
        "assumptions": report.assumptions,
    })
}

pub fn theorem33_obj(r: &Theorem33Report, ctx: &PrecisionContext) -> Value {
    json!({
        "p": r.p,
        "k2_plus_order": r.k2_plus_order,
        "left_zeta_star": real_str(&r.left, ctx),
        "right_side": real_str(&r.right, ctx),
        "ratio": real_str(&r.ratio, ctx),
        "ratio_f64": r.ratio.to_f64(),
        "implied_k2": r.implied_k2.to_string(),
        "zeta_plus_minus1_analytic": real_str(&r.zeta_plus_minus1_analytic, ctx),
        "zeta_plus_minus1_birch_tate": real_str(&r.zeta_plus_minus1_birch_tate, ctx),
        "regulator": real_str(&r.regulator, ctx),
        "w2": r.w2,
        "assumptions": ["k2_plus_order_is_conjectural_input"],
    })
}

/// Deterministic pretty rendering: serde_json's ordered maps plus a trailing
/// newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Wrap a report with its command name, the schema pointer and the precision
/// it was produced at.
pub fn envelope(command: &str, ctx: &PrecisionContext, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("digits".into(), json!(ctx.digits()));
    m.insert("report".into(), body);
    m.insert("schema".into(), json!("schemas/report.schema.json"));
    Value::Object(m)
}
