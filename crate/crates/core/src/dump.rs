//! Stable JSON serializations of the computed structures, used by the CLI
//! `dump` subcommand.  All maps are keyed by the nested-array serialization
//! of the shape; keys are emitted in sorted order, so identical
//! configurations produce byte-identical output.

use serde_json::{json, Map, Value};

use crate::gprn::{grpn_basis, grpn_central_idempotents, twisted_center_basis};
use crate::matrix::BlockMatrix;
use crate::seminormal::Context;
use crate::verify::dim_audit;
use crate::Result;

const SCHEMA: u32 = 1;

fn shape_key(ctx: &Context, si: usize) -> String {
    serde_json::to_string(&ctx.shapes[si].shape.to_json()).expect("shape serializes")
}

fn params_value(ctx: &Context) -> Value {
    json!({
        "r": ctx.params.r,
        "p": ctx.params.p,
        "d": ctx.params.d,
        "n": ctx.params.n,
        "q": ctx.params.q,
        "Q": ctx.params.qs,
    })
}

fn block_matrix_value(ctx: &Context, m: &BlockMatrix) -> Value {
    let mut blocks = Map::new();
    for (si, block) in m.blocks.iter().enumerate() {
        if block.is_zero() {
            continue;
        }
        blocks.insert(shape_key(ctx, si), block.serialize_rows());
    }
    Value::Object(blocks)
}

/// Gamma coefficients, generator matrices and spectral idempotents, keyed by
/// shape.
pub fn dump_gamma(ctx: &Context) -> Result<Value> {
    let mut shapes = Map::new();
    for (si, sd) in ctx.shapes.iter().enumerate() {
        let tableaux: Vec<Value> = sd.tabs.iter().map(|t| t.serialize_entries()).collect();
        let gamma: Vec<Value> =
            (0..sd.dim()).map(|t| serde_json::to_value(&ctx.gamma[si][t]).unwrap()).collect();
        let generators: Vec<Value> =
            ctx.models[si].gens.iter().map(|g| g.serialize_rows()).collect();
        let jm: Vec<Value> = ctx.models[si].jm.iter().map(|g| g.serialize_rows()).collect();
        let idempotents: Vec<Value> = (0..sd.dim())
            .map(|t| block_matrix_value(ctx, &ctx.jm_idempotent((si, t))))
            .collect();
        shapes.insert(
            shape_key(ctx, si),
            json!({
                "tableaux": tableaux,
                "gamma": gamma,
                "generators": generators,
                "jucys_murphy": jm,
                "idempotents": idempotents,
            }),
        );
    }
    Ok(json!({ "schema": SCHEMA, "params": params_value(ctx), "shapes": Value::Object(shapes) }))
}

/// The basis of the fixed-point subalgebra: every element as its list of
/// (row tableau, column tableau, coefficient) triples plus the summary.
pub fn dump_basis(ctx: &Context) -> Result<Value> {
    let basis = grpn_basis(ctx)?;
    let elements: Vec<Value> = basis
        .elements
        .iter()
        .map(|e| {
            let class = &ctx.classes[e.class];
            let terms: Vec<Value> = e
                .alg
                .terms
                .iter()
                .map(|((sh, s, t), c)| {
                    json!({
                        "shape": ctx.shapes[*sh].shape.to_json(),
                        "s": ctx.shapes[*sh].tabs[*s].serialize_entries(),
                        "t": ctx.shapes[*sh].tabs[*t].serialize_entries(),
                        "coefficient": c,
                    })
                })
                .collect();
            json!({
                "class_shape": ctx.shapes[class.rep].shape.to_json(),
                "k": e.k,
                "s": ctx.shapes[class.rep].tabs[e.s].serialize_entries(),
                "t": ctx.shapes[class.rep].tabs[e.t].serialize_entries(),
                "terms": terms,
            })
        })
        .collect();
    Ok(json!({
        "schema": SCHEMA,
        "params": params_value(ctx),
        "count": elements.len(),
        "elements": elements,
    }))
}

/// The central primitive idempotents of the fixed-point subalgebra as block
/// matrices.
pub fn dump_idempotents(ctx: &Context) -> Result<Value> {
    let idems = grpn_central_idempotents(ctx)?;
    let elements: Vec<Value> = idems
        .iter()
        .map(|(ci, k, f)| {
            json!({
                "class_shape": ctx.shapes[ctx.classes[*ci].rep].shape.to_json(),
                "k": k,
                "matrix": block_matrix_value(ctx, f),
            })
        })
        .collect();
    Ok(json!({
        "schema": SCHEMA,
        "params": params_value(ctx),
        "count": elements.len(),
        "elements": elements,
    }))
}

/// The twisted-center bases for every twist power.
pub fn dump_twisted_center(ctx: &Context) -> Result<Value> {
    let mut per_k = Vec::new();
    for k in 0..ctx.params.p {
        let elements = twisted_center_basis(ctx, k)?;
        let list: Vec<Value> = elements
            .iter()
            .map(|(si, z)| {
                json!({ "shape": ctx.shapes[*si].shape.to_json(), "matrix": block_matrix_value(ctx, z) })
            })
            .collect();
        per_k.push(json!({ "k": k, "count": list.len(), "elements": list }));
    }
    Ok(json!({ "schema": SCHEMA, "params": params_value(ctx), "twisted_centers": per_k }))
}

/// Dimension bookkeeping record.
pub fn dump_dims(ctx: &Context) -> Result<Value> {
    let audit = dim_audit(ctx);
    let mut per_shape = Map::new();
    for (si, sd) in ctx.shapes.iter().enumerate() {
        per_shape.insert(shape_key(ctx, si), json!(sd.dim()));
    }
    let mut value = serde_json::to_value(&audit).unwrap();
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("per_shape_dims".into(), Value::Object(per_shape));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::HeckeParams;

    fn ctx(r: usize, p: usize, n: usize) -> Context {
        Context::new(HeckeParams::default_point(r, p, n).unwrap()).unwrap()
    }

    #[test]
    fn dims_record_example() {
        let value = dump_dims(&ctx(2, 2, 3)).unwrap();
        assert_eq!(value["ambient_dim"], "48");
        assert_eq!(value["subalgebra_dim"], "24");
        assert_eq!(value["consistent"], true);
    }

    #[test]
    fn gamma_dump_has_type_a_values() {
        let value = dump_gamma(&ctx(1, 1, 2)).unwrap();
        let shapes = value["shapes"].as_object().unwrap();
        assert_eq!(shapes.len(), 2);
    }

    #[test]
    fn twisted_center_dump_counts() {
        let value = dump_twisted_center(&ctx(2, 2, 2)).unwrap();
        let per_k = value["twisted_centers"].as_array().unwrap();
        assert_eq!(per_k[0]["count"], 5);
        assert_eq!(per_k[1]["count"], 1);
    }

    #[test]
    fn dumps_are_byte_stable() {
        for _ in 0..2 {
            let a = serde_json::to_string(&dump_basis(&ctx(2, 2, 2)).unwrap()).unwrap();
            let b = serde_json::to_string(&dump_basis(&ctx(2, 2, 2)).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}
