//! The property-check suite: every structural identity of the seminormal
//! model and the fixed-point subalgebra, checked with exact equality and a
//! concrete counterexample on failure.
//!
//! Checks are quantified exhaustively for n <= 3 and over a fixed
//! enumeration-order prefix of 200 tuples for n >= 4.  Each check is an
//! independent task; the suite runs them on a work queue and assembles the
//! report in a stable order.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

use crate::exactfield::{CycloRational, HeckeParams};
use crate::gprn::{
    expected_subalgebra_dim, grpn_basis, grpn_central_idempotents, subalgebra_generators,
    twisted_center_basis, GprnCoefficients,
};
use crate::matrix::{BlockMatrix, RowReducer};
use crate::seminormal::{
    ab_coefficients, check_model_relations, AdjacentAction, Context, FaultInjection, TabRef,
};
use crate::tableaux::tableau_dominates;
use crate::{HeckeError, Result};

/// Identifier and one-line description of every check in the suite, in the
/// order they are reported.
pub const CHECKS: &[(&str, &str)] = &[
    ("relations", "defining relations of the ambient algebra hold on every block"),
    ("tiact", "generator matrices match the two-case seminormal action"),
    ("GammaCoeffi", "multiplication law f_uv f_st = [v=s] gamma_s f_ut"),
    ("gammacoeff", "star involution, Jucys-Murphy eigenvalues, gamma recursion"),
    ("dist", "joint Jucys-Murphy spectra separate standard tableaux"),
    ("Ft", "spectral idempotents: projector form, orthogonality, completeness"),
    ("sigmaFt", "twisting sends the idempotent of t to that of the shifted t"),
    ("recursiveA", "transition elements rebuild every basis element from the anchor"),
    ("gtsft", "straightening dominance and the shift-ratio square identities"),
    ("snphit", "transition elements intertwine shifted anchors with coefficient r"),
    ("sigmafst", "twist powers act on the basis through the R coefficients"),
    ("propRstk1", "square of the twist coefficient equals the gamma cross-ratio"),
    ("propRstk2", "twist coefficients compose along compositions of the shift"),
    ("propRstk3", "twist coefficients multiply to 1 around a full cycle"),
    ("mainthm1", "r-coefficient shift symmetry"),
    ("claim1", "straightened anchor ratios are symmetric in the two shifts"),
    ("squareProp", "h_lambda squares to the anchor shift ratio"),
    ("prophlam", "closed form and recursion for h_{lambda,l1,l2} agree; square law"),
    ("sqhlam", "h_{lambda,0,p_lambda} = 1"),
    ("congruence", "h_{lambda,l1,l2} depends on the indices mod p_lambda"),
    ("hlaml1l2", "cocycle law h_{lambda,0,l1+l2} = h_{lambda,0,l1} h_{lambda,l1,l2}"),
    ("hlamQuo", "quotient law for h_{lambda,l1,l2} / h_{lambda,0,l2}"),
    ("plamht", "the tableau square roots are p_lambda-periodic"),
    ("squareht", "tableau square roots square to shift ratios"),
    ("SquareRoots2", "offset tableau square roots square to shift ratios"),
    ("htkl", "cocycle law for tableau square roots"),
    ("htklx", "cocycle law for offset tableau square roots"),
    ("CompatibleEnsure", "offset square roots are independent of the base point"),
    ("Astij", "basis coefficients: equivalent forms, square law, update law"),
    ("orth", "subalgebra basis elements are pairwise orthogonal"),
    ("mainthm3", "subalgebra basis: twist-invariance and cardinality r^n n!/p"),
    ("mainthm4", "central primitive idempotents of the fixed-point subalgebra"),
    ("mainthm5", "twisted-center elements satisfy the twisted centralizer equations"),
    ("weightdecomp", "twisted centers decompose into twist-eigenspace slices"),
    ("dimcor", "brute-force twisted-center dimensions match the orbit count"),
    ("dimaudit", "dimension bookkeeping for the algebra and its fixed points"),
    ("roundtrip", "word-basis expansion round trips; the twist has order p"),
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|(id, _)| *id).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub millis: u128,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub r: usize,
    pub p: usize,
    pub n: usize,
    pub params: Value,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed\n");
        for c in &self.checks {
            out.push_str(&format!("{},{}\n", c.id, c.passed));
        }
        out
    }
}

fn params_echo(params: &HeckeParams) -> Value {
    json!({
        "r": params.r,
        "p": params.p,
        "d": params.d,
        "n": params.n,
        "q": params.q,
        "Q": params.qs,
        "eps": params.eps,
    })
}

/// Tuple budget: exhaustive below n = 4, a fixed enumeration-order prefix of
/// 200 tuples from n = 4 on.
fn tuple_budget(ctx: &Context) -> usize {
    if ctx.params.n >= 4 {
        200
    } else {
        usize::MAX
    }
}

fn all_tabs(ctx: &Context) -> Vec<TabRef> {
    let mut out = Vec::new();
    for (si, sd) in ctx.shapes.iter().enumerate() {
        for ti in 0..sd.dim() {
            out.push((si, ti));
        }
    }
    out
}

fn same_shape_pairs(ctx: &Context) -> Vec<(TabRef, TabRef)> {
    let mut out = Vec::new();
    for (si, sd) in ctx.shapes.iter().enumerate() {
        for s in 0..sd.dim() {
            for t in 0..sd.dim() {
                out.push(((si, s), (si, t)));
            }
        }
    }
    out
}

fn shape_json(ctx: &Context, si: usize) -> Value {
    ctx.shapes[si].shape.to_json()
}

fn tab_json(ctx: &Context, t: TabRef) -> Value {
    ctx.tab(t).serialize_entries()
}

fn value_pair(lhs: &CycloRational, rhs: &CycloRational) -> Value {
    json!({ "lhs": lhs, "rhs": rhs })
}

/// Run one check by id.  `Ok(None)` is a pass; `Ok(Some(v))` is a failure
/// with counterexample v; `Err` is an environment problem (reported as a
/// failure with the error text).
fn run_check(ctx: &Context, id: &str) -> Result<Option<Value>> {
    match id {
        "relations" => check_relations(ctx),
        "tiact" => check_tiact(ctx),
        "GammaCoeffi" => check_gamma_coeffi(ctx),
        "gammacoeff" => check_gammacoeff(ctx),
        "dist" => check_dist(ctx),
        "Ft" => check_ft(ctx),
        "sigmaFt" => check_sigma_ft(ctx),
        "recursiveA" => check_recursive_a(ctx),
        "gtsft" => check_gtsft(ctx),
        "snphit" => check_snphit(ctx),
        "sigmafst" => check_sigmafst(ctx),
        "propRstk1" => check_prop_rstk1(ctx),
        "propRstk2" => check_prop_rstk2(ctx),
        "propRstk3" => check_prop_rstk3(ctx),
        "mainthm1" => check_mainthm1(ctx),
        "claim1" => check_claim1(ctx),
        "squareProp" => check_square_prop(ctx),
        "prophlam" => check_prophlam(ctx),
        "sqhlam" => check_sqhlam(ctx),
        "congruence" => check_congruence(ctx),
        "hlaml1l2" => check_hlaml1l2(ctx),
        "hlamQuo" => check_hlam_quo(ctx),
        "plamht" => check_plamht(ctx),
        "squareht" => check_squareht(ctx),
        "SquareRoots2" => check_square_roots2(ctx),
        "htkl" => check_htkl(ctx),
        "htklx" => check_htklx(ctx),
        "CompatibleEnsure" => check_compatible_ensure(ctx),
        "Astij" => check_astij(ctx),
        "orth" => check_orth(ctx),
        "mainthm3" => check_mainthm3(ctx),
        "mainthm4" => check_mainthm4(ctx),
        "mainthm5" => check_mainthm5(ctx),
        "weightdecomp" => check_weightdecomp(ctx),
        "dimcor" => check_dimcor(ctx),
        "dimaudit" => check_dimaudit(ctx),
        "roundtrip" => check_roundtrip(ctx),
        other => Err(HeckeError::InvalidParams(format!("unknown check {other:?}"))),
    }
}

/// Run the selected checks (all of them when `scope` is None) concurrently
/// and assemble the report.
pub fn run_suite(ctx: &Context, scope: Option<&[String]>) -> Result<VerificationReport> {
    let size = ctx.word_basis_size();
    if size > ctx.desk_bound {
        return Err(HeckeError::DeskScaleExceeded { size, bound: ctx.desk_bound });
    }
    let selected: Vec<(&str, &str)> = match scope {
        None => CHECKS.to_vec(),
        Some(names) => {
            let mut picked = Vec::new();
            for name in names {
                let hit = CHECKS.iter().find(|(id, _)| id == name);
                match hit {
                    Some(pair) => picked.push(*pair),
                    None => {
                        return Err(HeckeError::InvalidParams(format!(
                            "unknown check {name:?}; known checks: {}",
                            check_ids().join(", ")
                        )))
                    }
                }
            }
            picked
        }
    };
    let checks: Vec<CheckResult> = selected
        .par_iter()
        .map(|(id, description)| {
            let start = Instant::now();
            let outcome = run_check(ctx, id);
            let millis = start.elapsed().as_millis();
            let (passed, counterexample) = match outcome {
                Ok(None) => (true, None),
                Ok(Some(v)) => (false, Some(v)),
                Err(e) => (false, Some(json!({ "error": e.to_string() }))),
            };
            CheckResult {
                id: (*id).to_string(),
                description: (*description).to_string(),
                passed,
                counterexample,
                millis,
            }
        })
        .collect();
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        schema: 1,
        r: ctx.params.r,
        p: ctx.params.p,
        n: ctx.params.n,
        params: params_echo(&ctx.params),
        checks,
        all_passed,
    })
}

// ---------------------------------------------------------------------------
// individual checks
// ---------------------------------------------------------------------------

fn check_relations(ctx: &Context) -> Result<Option<Value>> {
    for (si, model) in ctx.models.iter().enumerate() {
        if let Err(msg) = check_model_relations(&ctx.params, model) {
            return Ok(Some(json!({ "shape": shape_json(ctx, si), "relation": msg })));
        }
    }
    Ok(None)
}

fn check_tiact(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (si, sd) in ctx.shapes.iter().enumerate() {
        let model = &ctx.models[si];
        for s in 0..sd.dim() {
            // T_0 acts by the residue of the entry 1
            if model.gens[0].at(s, s) != ctx.residue((si, s), 1) {
                return Ok(Some(json!({
                    "shape": shape_json(ctx, si),
                    "tableau": tab_json(ctx, (si, s)),
                    "generator": 0,
                })));
            }
            for i in 1..ctx.params.n {
                if used >= budget {
                    return Ok(None);
                }
                used += 1;
                let m = &model.gens[i];
                let action = ab_coefficients(&ctx.params, &sd.tabs[s], &ctx.res[si][s], i)?;
                let bad = match action {
                    AdjacentAction::SameRow => m.at(s, s) != &ctx.params.q,
                    AdjacentAction::SameColumn => m.at(s, s) != &(-ctx.params.one()),
                    AdjacentAction::Mixed { a, b, down } => {
                        let v = ctx.swaps[si][i - 1][s].expect("standard swap");
                        let off_expected = if down { ctx.params.one() } else { b.clone() };
                        // the off-diagonal coefficient is also the gamma ratio
                        let gamma_ratio = ctx.gamma[si][s]
                            .checked_div(&ctx.gamma[si][v])
                            .expect("gamma is a unit");
                        m.at(s, s) != &a
                            || m.at(s, v) != &off_expected
                            || (!down && off_expected != gamma_ratio)
                    }
                };
                if bad {
                    return Ok(Some(json!({
                        "shape": shape_json(ctx, si),
                        "tableau": tab_json(ctx, (si, s)),
                        "generator": i,
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_gamma_coeffi(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let pairs = same_shape_pairs(ctx);
    let mut used = 0;
    for &(u, v) in &pairs {
        for &(s, t) in &pairs {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let lhs = ctx.f_element(u, v).mul(&ctx.f_element(s, t));
            let rhs = if v.0 == s.0 && v.1 == s.1 {
                ctx.f_element(u, t).scale(ctx.gamma_of(s))
            } else {
                ctx.zero_block()
            };
            if lhs != rhs {
                return Ok(Some(json!({
                    "u": tab_json(ctx, u), "v": tab_json(ctx, v),
                    "s": tab_json(ctx, s), "t": tab_json(ctx, t),
                })));
            }
        }
    }
    Ok(None)
}

fn check_gammacoeff(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (u, s) in same_shape_pairs(ctx) {
        if used >= budget {
            return Ok(None);
        }
        used += 1;
        let f = ctx.f_element(u, s);
        if ctx.star(&f) != ctx.f_element(s, u) {
            return Ok(Some(json!({ "star": { "u": tab_json(ctx, u), "s": tab_json(ctx, s) } })));
        }
        for k in 1..=ctx.params.n {
            let right = f.mul(&ctx.jucys_murphy(k));
            if right != f.scale(ctx.residue(s, k)) {
                return Ok(Some(json!({
                    "jm_right": { "u": tab_json(ctx, u), "s": tab_json(ctx, s), "k": k }
                })));
            }
            let left = ctx.jucys_murphy(k).mul(&f);
            if left != f.scale(ctx.residue(u, k)) {
                return Ok(Some(json!({
                    "jm_left": { "u": tab_json(ctx, u), "s": tab_json(ctx, s), "k": k }
                })));
            }
        }
    }
    // gamma recursion: for a standard adjacent pair v = u.(i,i+1) below u,
    // gamma_v = B_i(v) gamma_u with B the explicit residue quotient
    for (si, sd) in ctx.shapes.iter().enumerate() {
        for u in 0..sd.dim() {
            for i in 1..ctx.params.n {
                if let Some(v) = ctx.swaps[si][i - 1][u] {
                    if let AdjacentAction::Mixed { b, down, .. } =
                        ab_coefficients(&ctx.params, &sd.tabs[v], &ctx.res[si][v], i)?
                    {
                        if !down {
                            let expected = b.mul_ref(&ctx.gamma[si][u]);
                            if ctx.gamma[si][v] != expected {
                                return Ok(Some(json!({
                                    "recursion": {
                                        "shape": shape_json(ctx, si),
                                        "upper": tab_json(ctx, (si, u)),
                                        "lower": tab_json(ctx, (si, v)),
                                        "i": i,
                                        "values": value_pair(&ctx.gamma[si][v], &expected),
                                    }
                                })));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_dist(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let tabs = all_tabs(ctx);
    let mut used = 0;
    for (a, &s) in tabs.iter().enumerate() {
        for &t in tabs.iter().skip(a + 1) {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let separated = (1..=ctx.params.n).any(|k| ctx.residue(s, k) != ctx.residue(t, k));
            if !separated {
                return Ok(Some(json!({ "s": tab_json(ctx, s), "t": tab_json(ctx, t) })));
            }
        }
    }
    Ok(None)
}

fn check_ft(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let tabs = all_tabs(ctx);
    let mut total = ctx.zero_block();
    let mut used = 0;
    for &t in &tabs {
        let f = ctx.jm_idempotent(t);
        total = total.add(&f);
        if used < budget {
            used += 1;
            let gamma_inv = ctx.gamma_of(t).inv()?;
            if f != ctx.f_element(t, t).scale(&gamma_inv) {
                return Ok(Some(json!({ "not_f_tt_over_gamma": tab_json(ctx, t) })));
            }
            if f.mul(&f) != f {
                return Ok(Some(json!({ "not_idempotent": tab_json(ctx, t) })));
            }
            for k in 1..=ctx.params.n {
                if f.mul(&ctx.jucys_murphy(k)) != f.scale(ctx.residue(t, k)) {
                    return Ok(Some(json!({ "eigenvalue": { "t": tab_json(ctx, t), "k": k } })));
                }
            }
        }
    }
    if total != ctx.identity_block() {
        return Ok(Some(json!({ "completeness": "sum of idempotents differs from 1" })));
    }
    used = 0;
    for (a, &s) in tabs.iter().enumerate() {
        for &t in tabs.iter().skip(a + 1) {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            if !ctx.jm_idempotent(s).mul(&ctx.jm_idempotent(t)).is_zero() {
                return Ok(Some(json!({
                    "orthogonality": { "s": tab_json(ctx, s), "t": tab_json(ctx, t) }
                })));
            }
        }
    }
    Ok(None)
}

fn check_sigma_ft(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    for &t in all_tabs(ctx).iter().take(budget) {
        let twisted = ctx.sigma_apply(&ctx.jm_idempotent(t))?;
        if twisted != ctx.jm_idempotent(ctx.shift_ref(t, 1)) {
            return Ok(Some(json!({ "t": tab_json(ctx, t) })));
        }
    }
    Ok(None)
}

fn check_recursive_a(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (si, sd) in ctx.shapes.iter().enumerate() {
        if ctx.phi_element((si, 0)) != ctx.identity_block() {
            return Ok(Some(json!({ "anchor_phi_not_identity": shape_json(ctx, si) })));
        }
        let anchor = ctx.f_element((si, 0), (si, 0));
        let phis: Vec<BlockMatrix> = (0..sd.dim()).map(|t| ctx.phi_element((si, t))).collect();
        let phi_stars: Vec<BlockMatrix> =
            (0..sd.dim()).map(|t| ctx.phi_element_star((si, t))).collect();
        for t in 0..sd.dim() {
            if phis[t].blocks[si].determinant().is_zero() {
                return Ok(Some(json!({
                    "phi_not_invertible": { "shape": shape_json(ctx, si), "t": tab_json(ctx, (si, t)) }
                })));
            }
        }
        for s in 0..sd.dim() {
            for t in 0..sd.dim() {
                if used >= budget {
                    return Ok(None);
                }
                used += 1;
                let built = phi_stars[s].mul(&anchor).mul(&phis[t]);
                if built != ctx.f_element((si, s), (si, t)) {
                    return Ok(Some(json!({
                        "shape": shape_json(ctx, si),
                        "s": tab_json(ctx, (si, s)),
                        "t": tab_json(ctx, (si, t)),
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_gtsft(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for &t in &all_tabs(ctx) {
        for k in 0..ctx.params.p {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let m = ctx.straighten_ref(t, k);
            if !tableau_dominates(ctx.tab(m), ctx.tab(t)) {
                return Ok(Some(json!({
                    "dominance": { "t": tab_json(ctx, t), "k": k, "m": tab_json(ctx, m) }
                })));
            }
            let t_k = ctx.shift_ref(t, k as i64);
            let m_k = ctx.shift_ref(m, k as i64);
            let lhs = ctx.gamma_of(t).checked_div(ctx.gamma_of(t_k))?;
            let r = ctx.r_coeff(t, k);
            let first = ctx.anchor_ratio_of(t.0, k).mul_ref(&r.mul_ref(&r));
            if lhs != first {
                return Ok(Some(json!({
                    "first_square_identity": {
                        "t": tab_json(ctx, t), "k": k, "values": value_pair(&lhs, &first)
                    }
                })));
            }
            let back_ratio = ctx.gamma_of(m).checked_div(ctx.gamma_of(t_k))?;
            let second = back_ratio
                .mul_ref(&back_ratio)
                .checked_div(ctx.anchor_ratio_of(t.0, k))?;
            if lhs != second {
                return Ok(Some(json!({
                    "second_square_identity": {
                        "t": tab_json(ctx, t), "k": k, "values": value_pair(&lhs, &second)
                    }
                })));
            }
            // intermediate form: anchor ratio unflipped, straightened
            // tableau shifted
            let shifted_ratio = ctx.gamma_of(m_k).checked_div(ctx.gamma_of(t_k))?;
            let third = ctx
                .anchor_ratio_of(t.0, k)
                .mul_ref(&shifted_ratio.mul_ref(&shifted_ratio));
            if lhs != third {
                return Ok(Some(json!({
                    "shifted_square_identity": {
                        "t": tab_json(ctx, t), "k": k, "values": value_pair(&lhs, &third)
                    }
                })));
            }
            // corollary: gamma_t gamma_{t<k>} = gamma_m gamma_{m<k>}
            let corollary_lhs = ctx.gamma_of(t).mul_ref(ctx.gamma_of(t_k));
            let corollary_rhs = ctx.gamma_of(m).mul_ref(ctx.gamma_of(m_k));
            if corollary_lhs != corollary_rhs {
                return Ok(Some(json!({
                    "product_corollary": {
                        "t": tab_json(ctx, t), "k": k,
                        "values": value_pair(&corollary_lhs, &corollary_rhs)
                    }
                })));
            }
        }
    }
    Ok(None)
}

fn check_snphit(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for &t in &all_tabs(ctx) {
        let phi = ctx.phi_element(t);
        let phi_star = ctx.phi_element_star(t);
        for k in 0..ctx.params.p {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let anchor_shift = ctx.shift_ref((t.0, 0), k as i64);
            let t_shift = ctx.shift_ref(t, k as i64);
            let r = ctx.r_coeff(t, k);
            let anchor = ctx.f_element(anchor_shift, anchor_shift);
            let lhs = anchor.mul(&phi);
            let rhs = ctx.f_element(anchor_shift, t_shift).scale(&r);
            if lhs != rhs {
                return Ok(Some(json!({
                    "right_multiplication": { "t": tab_json(ctx, t), "k": k }
                })));
            }
            let lhs_star = phi_star.mul(&anchor);
            let rhs_star = ctx.f_element(t_shift, anchor_shift).scale(&r);
            if lhs_star != rhs_star {
                return Ok(Some(json!({
                    "left_multiplication": { "t": tab_json(ctx, t), "k": k }
                })));
            }
            // alternate expression for r
            let m = ctx.straighten_ref(t, k);
            let m_shift = ctx.shift_ref(m, k as i64);
            let alt = ctx.gamma_of(m_shift).checked_div(ctx.gamma_of(t_shift))?;
            if alt != r {
                return Ok(Some(json!({
                    "alternate_r": { "t": tab_json(ctx, t), "k": k, "values": value_pair(&alt, &r) }
                })));
            }
        }
    }
    Ok(None)
}

fn check_sigmafst(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (s, t) in same_shape_pairs(ctx) {
        for k in 0..=ctx.params.p {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let twisted = ctx.sigma_apply_power(&ctx.f_element(s, t), k as i64)?;
            let s_k = ctx.shift_ref(s, k as i64);
            let t_k = ctx.shift_ref(t, k as i64);
            let expected = ctx.f_element(s_k, t_k).scale(&ctx.rr_coeff(s, t, k));
            if twisted != expected {
                return Ok(Some(json!({
                    "s": tab_json(ctx, s), "t": tab_json(ctx, t), "k": k
                })));
            }
        }
    }
    Ok(None)
}

fn check_prop_rstk1(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (s, t) in same_shape_pairs(ctx) {
        for k in 0..ctx.params.p {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let rr = ctx.rr_coeff(s, t, k);
            let s_k = ctx.shift_ref(s, k as i64);
            let t_k = ctx.shift_ref(t, k as i64);
            let expected = ctx
                .gamma_of(s)
                .mul_ref(ctx.gamma_of(t))
                .checked_div(ctx.gamma_of(s_k))?
                .checked_div(ctx.gamma_of(t_k))?;
            if rr.mul_ref(&rr) != expected {
                return Ok(Some(json!({
                    "s": tab_json(ctx, s), "t": tab_json(ctx, t), "k": k,
                    "values": value_pair(&rr.mul_ref(&rr), &expected),
                })));
            }
        }
    }
    Ok(None)
}

fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_prop_rstk2(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (s, t) in same_shape_pairs(ctx) {
        for k in 0..=ctx.params.p {
            let target = ctx.rr_coeff(s, t, k);
            for mu in compositions(k) {
                if used >= budget {
                    return Ok(None);
                }
                used += 1;
                let mut product = ctx.params.one();
                let mut offset = 0usize;
                for &part in &mu {
                    let s_off = ctx.shift_ref(s, offset as i64);
                    let t_off = ctx.shift_ref(t, offset as i64);
                    product = product.mul_ref(&ctx.rr_coeff(s_off, t_off, part));
                    offset += part;
                }
                if product != target {
                    return Ok(Some(json!({
                        "s": tab_json(ctx, s), "t": tab_json(ctx, t), "k": k,
                        "composition": mu,
                        "values": value_pair(&product, &target),
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_prop_rstk3(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let p = ctx.params.p;
    let mut used = 0;
    for (s, t) in same_shape_pairs(ctx) {
        for k in 1..=p {
            if used >= budget {
                return Ok(None);
            }
            used += 1;
            let cycles = num_integer::lcm(k, p) / k;
            let mut product = ctx.params.one();
            for l in 0..cycles {
                let s_l = ctx.shift_ref(s, (l * k) as i64);
                let t_l = ctx.shift_ref(t, (l * k) as i64);
                product = product.mul_ref(&ctx.rr_coeff(s_l, t_l, k));
            }
            if !product.is_one() {
                return Ok(Some(json!({
                    "s": tab_json(ctx, s), "t": tab_json(ctx, t), "k": k
                })));
            }
        }
    }
    Ok(None)
}

fn check_mainthm1(ctx: &Context) -> Result<Option<Value>> {
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for &t in &all_tabs(ctx) {
        let class = &ctx.classes[ctx.class_of_shape[t.0]];
        let o = class.o;
        for k in 0..=class.p_lam {
            for l in 0..=class.p_lam {
                if used >= budget {
                    return Ok(None);
                }
                used += 1;
                let t_l = ctx.shift_ref(t, (l * o) as i64);
                let t_k = ctx.shift_ref(t, (k * o) as i64);
                let lhs = ctx.r_coeff(t, l * o).mul_ref(&ctx.r_coeff(t_l, k * o));
                let rhs = ctx.r_coeff(t, k * o).mul_ref(&ctx.r_coeff(t_k, l * o));
                if lhs != rhs {
                    return Ok(Some(json!({
                        "t": tab_json(ctx, t), "k": k, "l": l,
                        "values": value_pair(&lhs, &rhs),
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_claim1(ctx: &Context) -> Result<Option<Value>> {
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let o = class.o;
        let p = ctx.params.p;
        for k in 0..=class.p_lam {
            for l in 0..=class.p_lam {
                let u_l = ctx.shift_ref((rep, 0), (l * o) as i64);
                let u_k = ctx.shift_ref((rep, 0), (k * o) as i64);
                let m_lhs = ctx.straighten_ref(u_l, (k * o) % p);
                let m_rhs = ctx.straighten_ref(u_k, (l * o) % p);
                let lhs = ctx.gamma_of(m_lhs).checked_div(ctx.gamma_of(u_l))?;
                let rhs = ctx.gamma_of(m_rhs).checked_div(ctx.gamma_of(u_k))?;
                if lhs != rhs {
                    return Ok(Some(json!({
                        "class": ci, "k": k, "l": l, "values": value_pair(&lhs, &rhs)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_square_prop(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let shifted = ctx.shift_ref((rep, 0), class.o as i64);
        let expected = ctx.gamma_of(shifted).checked_div(ctx.gamma_of((rep, 0)))?;
        let h = coeffs.h_lambda(ci);
        if h.mul_ref(h) != expected {
            return Ok(Some(json!({
                "shape": shape_json(ctx, rep),
                "values": value_pair(&h.mul_ref(h), &expected),
            })));
        }
        if h.is_zero() {
            return Ok(Some(json!({ "shape": shape_json(ctx, rep), "h": "zero" })));
        }
    }
    Ok(None)
}

fn check_prophlam(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let o = class.o;
        let p = ctx.params.p;
        for l1 in 0..=class.p_lam {
            // independent recursion: h_{l1,l2} = h_{l1,l2-1} h_{0,1} ratio
            let mut recursive = ctx.params.one();
            for l2 in 0..=class.p_lam {
                let closed = coeffs.h_pair_raw(ci, l1, l2);
                if closed != recursive {
                    return Ok(Some(json!({
                        "recursion": { "class": ci, "l1": l1, "l2": l2,
                                        "values": value_pair(&closed, &recursive) }
                    })));
                }
                // square law
                let top = ctx.shift_ref((rep, 0), ((l1 + l2) * o) as i64);
                let bottom = ctx.shift_ref((rep, 0), (l1 * o) as i64);
                let expected = ctx.gamma_of(top).checked_div(ctx.gamma_of(bottom))?;
                if closed.mul_ref(&closed) != expected {
                    return Ok(Some(json!({
                        "square": { "class": ci, "l1": l1, "l2": l2,
                                     "values": value_pair(&closed.mul_ref(&closed), &expected) }
                    })));
                }
                // advance the recursion to l2 + 1
                let u = ctx.shift_ref((rep, 0), (((l1 + l2) * o) % p) as i64);
                let m = ctx.straighten_ref(u, o % p);
                let ratio = ctx.gamma_of(m).checked_div(ctx.gamma_of(u))?;
                recursive = recursive.mul_ref(coeffs.h_lambda(ci)).mul_ref(&ratio);
            }
        }
    }
    Ok(None)
}

fn check_sqhlam(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let value = coeffs.h_pair_raw(ci, 0, class.p_lam);
        if !value.is_one() {
            return Ok(Some(json!({ "class": ci, "value": value })));
        }
    }
    Ok(None)
}

fn check_congruence(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        for l1 in 0..class.p_lam {
            for l2 in 0..class.p_lam {
                let reduced = coeffs.h_pair_raw(ci, l1, l2);
                for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
                    let raw = coeffs.h_pair_raw(ci, l1 + a * class.p_lam, l2 + b * class.p_lam);
                    if raw != reduced {
                        return Ok(Some(json!({
                            "class": ci, "l1": l1, "l2": l2, "a": a, "b": b,
                            "values": value_pair(&raw, &reduced),
                        })));
                    }
                }
                if coeffs.h_pair(ci, l1, l2) != &reduced {
                    return Ok(Some(json!({ "table": { "class": ci, "l1": l1, "l2": l2 } })));
                }
            }
        }
    }
    Ok(None)
}

fn check_hlaml1l2(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        for l1 in 0..class.p_lam {
            for l2 in 0..class.p_lam {
                let lhs = coeffs.h_pair(ci, 0, l1 + l2).clone();
                let rhs = coeffs.h_pair(ci, 0, l1).mul_ref(coeffs.h_pair(ci, l1, l2));
                if lhs != rhs {
                    return Ok(Some(json!({
                        "class": ci, "l1": l1, "l2": l2, "values": value_pair(&lhs, &rhs)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_hlam_quo(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let o = class.o;
        let p = ctx.params.p;
        for l1 in 0..class.p_lam {
            for l2 in 0..class.p_lam {
                let lhs = coeffs
                    .h_pair(ci, l1, l2)
                    .checked_div(coeffs.h_pair(ci, 0, l2))?;
                let u = ctx.shift_ref((rep, 0), (l1 * o) as i64);
                let m = ctx.straighten_ref(u, (l2 * o) % p);
                let rhs = ctx.gamma_of(m).checked_div(ctx.gamma_of(u))?;
                if lhs != rhs {
                    return Ok(Some(json!({
                        "class": ci, "l1": l1, "l2": l2, "values": value_pair(&lhs, &rhs)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_plamht(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        for &t in &class.entry1_tabs {
            for l in 0..class.p_lam {
                if used >= budget {
                    return Ok(None);
                }
                used += 1;
                let value = coeffs.h_tableau_x(ci, t, l * class.o, class.p_lam)?;
                if !value.is_one() {
                    return Ok(Some(json!({ "class": ci, "t": t, "l": l, "value": value })));
                }
            }
        }
    }
    Ok(None)
}

fn check_squareht(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        for &t in &class.entry1_tabs {
            for l1 in 0..class.p_lam {
                for l2 in 0..class.p_lam {
                    if used >= budget {
                        return Ok(None);
                    }
                    used += 1;
                    let h = coeffs.h_tableau_x(ci, t, l1 * class.o, l2)?;
                    let top = ctx.shift_ref((rep, t), ((l1 + l2) * class.o) as i64);
                    let bottom = ctx.shift_ref((rep, t), (l1 * class.o) as i64);
                    let expected = ctx.gamma_of(top).checked_div(ctx.gamma_of(bottom))?;
                    if h.mul_ref(&h) != expected {
                        return Ok(Some(json!({
                            "class": ci, "t": t, "l1": l1, "l2": l2,
                            "values": value_pair(&h.mul_ref(&h), &expected),
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_square_roots2(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        for &t in &class.entry1_tabs {
            for x in 0..ctx.params.p {
                for l in 0..class.p_lam {
                    if used >= budget {
                        return Ok(None);
                    }
                    used += 1;
                    let h = coeffs.h_tableau_x(ci, t, x, l)?;
                    let top = ctx.shift_ref((rep, t), (x + l * class.o) as i64);
                    let bottom = ctx.shift_ref((rep, t), x as i64);
                    let expected = ctx.gamma_of(top).checked_div(ctx.gamma_of(bottom))?;
                    if h.mul_ref(&h) != expected {
                        return Ok(Some(json!({
                            "class": ci, "t": t, "x": x, "l": l,
                            "values": value_pair(&h.mul_ref(&h), &expected),
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_htkl(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        for &t in &class.entry1_tabs {
            for l1 in 0..class.p_lam {
                for l2 in 0..class.p_lam {
                    if used >= budget {
                        return Ok(None);
                    }
                    used += 1;
                    let lhs = coeffs.h_tableau(ci, t, l1 + l2);
                    let rhs = coeffs
                        .h_tableau(ci, t, l1)
                        .mul_ref(&coeffs.h_tableau_x(ci, t, l1 * class.o, l2)?);
                    if lhs != rhs {
                        return Ok(Some(json!({
                            "class": ci, "t": t, "l1": l1, "l2": l2,
                            "values": value_pair(&lhs, &rhs),
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_htklx(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        for &t in &class.entry1_tabs {
            for x in 0..ctx.params.p {
                for l1 in 0..class.p_lam {
                    for l2 in 0..class.p_lam {
                        if used >= budget {
                            return Ok(None);
                        }
                        used += 1;
                        let lhs = coeffs.h_tableau_x(ci, t, x, l1 + l2)?;
                        let rhs = coeffs
                            .h_tableau_x(ci, t, x, l1)?
                            .mul_ref(&coeffs.h_tableau_x(ci, t, x + l1 * class.o, l2)?);
                        if lhs != rhs {
                            return Ok(Some(json!({
                                "class": ci, "t": t, "x": x, "l1": l1, "l2": l2,
                                "values": value_pair(&lhs, &rhs),
                            })));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_compatible_ensure(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let p = ctx.params.p;
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let o = class.o;
        for &t in &class.entry1_tabs {
            let t_ref = (rep, t);
            for l in 0..class.p_lam {
                for a in 0..class.p_lam {
                    for x in 0..p {
                        if used >= budget {
                            return Ok(None);
                        }
                        used += 1;
                        let t_l = ctx.shift_ref(t_ref, (l * o) as i64);
                        let m_ax_l = ctx.straighten_ref(t_l, (a * o + x) % p);
                        let m_ax = ctx.straighten_ref(t_ref, (a * o + x) % p);
                        let lhs = coeffs
                            .h_tableau(ci, t, l)
                            .mul_ref(ctx.gamma_of(t_ref))
                            .mul_ref(ctx.gamma_of(m_ax_l))
                            .checked_div(ctx.gamma_of(m_ax))?
                            .checked_div(ctx.gamma_of(t_l))?;
                        let t_a = ctx.shift_ref(t_ref, (a * o) as i64);
                        let t_al = ctx.shift_ref(t_ref, ((a + l) * o) as i64);
                        let m_x_al = ctx.straighten_ref(t_al, x % p);
                        let m_x_a = ctx.straighten_ref(t_a, x % p);
                        let rhs = coeffs
                            .h_tableau_x(ci, t, a * o, l)?
                            .mul_ref(ctx.gamma_of(t_a))
                            .mul_ref(ctx.gamma_of(m_x_al))
                            .checked_div(ctx.gamma_of(m_x_a))?
                            .checked_div(ctx.gamma_of(t_al))?;
                        if lhs != rhs {
                            return Ok(Some(json!({
                                "class": ci, "t": t, "l": l, "a": a, "x": x,
                                "values": value_pair(&lhs, &rhs),
                            })));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_astij(ctx: &Context) -> Result<Option<Value>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let budget = tuple_budget(ctx);
    let p = ctx.params.p;
    let mut used = 0;
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let o = class.o;
        let tabs: Vec<usize> = (0..ctx.shapes[rep].dim()).collect();
        for &s in &tabs {
            for &t in &tabs {
                for i in 0..class.p_lam {
                    for j in 0..p {
                        if used >= budget {
                            return Ok(None);
                        }
                        used += 1;
                        let a = coeffs.a_ij(ci, s, t, i, j);
                        if i == 0 && j == 0 && !a.is_one() {
                            return Ok(Some(json!({ "a00": { "class": ci, "s": s, "t": t } })));
                        }
                        // second displayed expression, assembled independently
                        let h_inv = coeffs.h_tableau(ci, s, i).inv()?;
                        let s_i = ctx.shift_ref((rep, s), (i * o) as i64);
                        let m_j_si = ctx.straighten_ref(s_i, j);
                        let m_j_t = ctx.straighten_ref((rep, t), j);
                        let s_ij = ctx.shift_ref((rep, s), (i * o + j) as i64);
                        let t_j = ctx.shift_ref((rep, t), j as i64);
                        let second = h_inv
                            .checked_div(ctx.anchor_ratio_of(rep, j))?
                            .mul_ref(ctx.gamma_of(m_j_si))
                            .mul_ref(ctx.gamma_of(m_j_t))
                            .checked_div(ctx.gamma_of(s_ij))?
                            .checked_div(ctx.gamma_of(t_j))?;
                        if a != second {
                            return Ok(Some(json!({
                                "second_form": { "class": ci, "s": s, "t": t, "i": i, "j": j,
                                                  "values": value_pair(&a, &second) }
                            })));
                        }
                        // square law
                        let expected = ctx
                            .gamma_of((rep, s))
                            .mul_ref(ctx.gamma_of((rep, t)))
                            .checked_div(ctx.gamma_of(s_ij))?
                            .checked_div(ctx.gamma_of(t_j))?;
                        if a.mul_ref(&a) != expected {
                            return Ok(Some(json!({
                                "square_law": { "class": ci, "s": s, "t": t, "i": i, "j": j,
                                                 "values": value_pair(&a.mul_ref(&a), &expected) }
                            })));
                        }
                        // restricted form via the offset square roots
                        if class.entry1_tabs.contains(&s) {
                            let restricted = coeffs
                                .h_tableau_x(ci, s, j, i)?
                                .inv()?
                                .mul_ref(&ctx.rr_coeff((rep, s), (rep, t), j));
                            if a != restricted {
                                return Ok(Some(json!({
                                    "restricted_form": { "class": ci, "s": s, "t": t, "i": i, "j": j,
                                                          "values": value_pair(&a, &restricted) }
                                })));
                            }
                        }
                        // update law: A_{i,j+1} = A_{i,j} R_{s<io+j> t<j>, 1}
                        let update = a.mul_ref(&ctx.rr_coeff(s_ij, t_j, 1));
                        let next = coeffs.a_ij(ci, s, t, i, j + 1);
                        if update != next {
                            return Ok(Some(json!({
                                "update_law": { "class": ci, "s": s, "t": t, "i": i, "j": j,
                                                 "values": value_pair(&update, &next) }
                            })));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_orth(ctx: &Context) -> Result<Option<Value>> {
    match grpn_basis(ctx) {
        Ok(_) => Ok(None),
        Err(e) => Ok(Some(json!({ "error": e.to_string() }))),
    }
}

fn check_mainthm3(ctx: &Context) -> Result<Option<Value>> {
    let basis = match grpn_basis(ctx) {
        Ok(b) => b,
        Err(e) => return Ok(Some(json!({ "error": e.to_string() }))),
    };
    let expected = expected_subalgebra_dim(ctx.params.r, ctx.params.p, ctx.params.n);
    if basis.elements.len() as u128 != expected {
        return Ok(Some(json!({
            "cardinality": { "got": basis.elements.len(), "expected": expected.to_string() }
        })));
    }
    let budget = tuple_budget(ctx);
    for e in basis.elements.iter().take(budget) {
        // cross-validate the sparse and matrix representations, then check
        // twist invariance through the word-basis oracle
        if e.alg.to_block(ctx) != e.block {
            return Ok(Some(json!({
                "representations_disagree": { "class": e.class, "k": e.k, "s": e.s, "t": e.t }
            })));
        }
        let twisted = ctx.sigma_apply(&e.block)?;
        if twisted != e.block {
            return Ok(Some(json!({
                "not_twist_invariant": { "class": e.class, "k": e.k, "s": e.s, "t": e.t }
            })));
        }
    }
    Ok(None)
}

fn check_mainthm4(ctx: &Context) -> Result<Option<Value>> {
    let idems = grpn_central_idempotents(ctx)?;
    let expected_count: usize = ctx.classes.iter().map(|c| c.p_lam).sum();
    if idems.len() != expected_count {
        return Ok(Some(json!({
            "count": { "got": idems.len(), "expected": expected_count }
        })));
    }
    let mut total = ctx.zero_block();
    for (ci, k, f) in &idems {
        if f.mul(f) != *f {
            return Ok(Some(json!({ "not_idempotent": { "class": ci, "k": k } })));
        }
        total = total.add(f);
    }
    if total != ctx.identity_block() {
        return Ok(Some(json!({ "completeness": "sum differs from 1" })));
    }
    for (a, (ci, ki, f)) in idems.iter().enumerate() {
        for (cj, kj, g) in idems.iter().skip(a + 1) {
            if !f.mul(g).is_zero() || !g.mul(f).is_zero() {
                return Ok(Some(json!({
                    "orthogonality": { "first": [ci, ki], "second": [cj, kj] }
                })));
            }
        }
    }
    // centrality against the subalgebra generators
    let gens = subalgebra_generators(ctx);
    for (ci, k, f) in &idems {
        for (gi, g) in gens.iter().enumerate() {
            if !f.commutator_is_zero(g) {
                return Ok(Some(json!({
                    "centrality": { "class": ci, "k": k, "generator": gi }
                })));
            }
        }
    }
    Ok(None)
}

fn check_mainthm5(ctx: &Context) -> Result<Option<Value>> {
    let p = ctx.params.p;
    let t0 = ctx.generator(0);
    for k in 0..p {
        let elements = twisted_center_basis(ctx, k)?;
        let expected = ctx
            .shapes
            .iter()
            .enumerate()
            .filter(|(si, _)| ctx.shift_shape[*si][k] == *si)
            .count();
        if elements.len() != expected {
            return Ok(Some(json!({
                "count": { "k": k, "got": elements.len(), "expected": expected }
            })));
        }
        let eps_k = ctx.params.eps_power(k as i64);
        for (si, z) in &elements {
            if z.mul(&t0) != t0.mul(z).scale(&eps_k) {
                return Ok(Some(json!({
                    "twisted_t0": { "k": k, "shape": shape_json(ctx, *si) }
                })));
            }
            for i in 1..ctx.params.n {
                if !z.commutator_is_zero(&ctx.generator(i)) {
                    return Ok(Some(json!({
                        "commutation": { "k": k, "shape": shape_json(ctx, *si), "i": i }
                    })));
                }
            }
        }
        if k == 0 {
            // the elements are the central primitive idempotents of the
            // ambient algebra: per shape, the sum of the tableau idempotents
            for (si, z) in &elements {
                let mut f_shape = ctx.zero_block();
                for t in 0..ctx.shapes[*si].dim() {
                    f_shape = f_shape.add(&ctx.jm_idempotent((*si, t)));
                }
                if z != &f_shape {
                    return Ok(Some(json!({
                        "k0_idempotent": { "shape": shape_json(ctx, *si) }
                    })));
                }
            }
        }
    }
    Ok(None)
}

/// Brute-force twisted-centralizer solve, block by block: unknowns are the
/// entries of one block, equations come from the twisted commutation with
/// every generator.
fn twisted_center_nullspace(ctx: &Context, k: usize) -> Vec<Vec<(usize, Vec<CycloRational>)>> {
    // returns, per shape, a basis of the block's solution space
    let p_conductor = ctx.params.conductor();
    let eps_k = ctx.params.eps_power(k as i64);
    let mut out = Vec::new();
    for (si, sd) in ctx.shapes.iter().enumerate() {
        let dim = sd.dim();
        let unknowns = dim * dim;
        let mut reducer = RowReducer::new(unknowns);
        for gi in 0..ctx.params.n {
            let g = &ctx.models[si].gens[gi];
            let scale = if gi == 0 { eps_k.clone() } else { ctx.params.one() };
            // z g - scale * g z = 0
            for a in 0..dim {
                for b in 0..dim {
                    let mut row = vec![CycloRational::zero(p_conductor); unknowns];
                    for w in 0..dim {
                        // + z[a][w] g[w][b]
                        row[a * dim + w] += &g.at(w, b).clone();
                        // - scale g[a][w] z[w][b]
                        row[w * dim + b] -= &scale.mul_ref(g.at(a, w));
                    }
                    reducer.offer(row);
                }
            }
        }
        let basis = reducer
            .nullspace_basis(p_conductor)
            .into_iter()
            .map(|v| (si, v))
            .collect::<Vec<_>>();
        out.push(basis);
    }
    out
}

/// Exact dimensions of the twisted centers for every k, computed by the
/// nullspace solve.
pub fn brute_force_center_dims(ctx: &Context) -> Vec<usize> {
    (0..ctx.params.p)
        .map(|k| twisted_center_nullspace(ctx, k).iter().map(|b| b.len()).sum())
        .collect()
}

fn check_dimcor(ctx: &Context) -> Result<Option<Value>> {
    let dims = brute_force_center_dims(ctx);
    for (k, &dim) in dims.iter().enumerate() {
        let expected = ctx
            .shapes
            .iter()
            .enumerate()
            .filter(|(si, _)| ctx.shift_shape[*si][k] == *si)
            .count();
        if dim != expected {
            return Ok(Some(json!({ "k": k, "nullspace": dim, "orbit_count": expected })));
        }
    }
    Ok(None)
}

fn check_weightdecomp(ctx: &Context) -> Result<Option<Value>> {
    let p = ctx.params.p;
    let wb = ctx.word_basis()?;
    for k in 0..p {
        let per_shape = twisted_center_nullspace(ctx, k);
        for block_basis in per_shape {
            for (si, coords) in block_basis {
                // lift the block solution to a full element
                let mut z = ctx.zero_block();
                let dim = ctx.shapes[si].dim();
                for a in 0..dim {
                    for b in 0..dim {
                        *z.blocks[si].at_mut(a, b) = coords[a * dim + b].clone();
                    }
                }
                // split along twist eigenspaces: group word-basis terms by
                // the total Jucys-Murphy exponent mod p
                let coeffs = ctx.word_basis_expand(&z)?;
                let mut slices: Vec<BlockMatrix> = (0..p).map(|_| ctx.zero_block()).collect();
                for ((c, (exps, _)), m) in coeffs.iter().zip(&wb.labels).zip(&wb.mats) {
                    if c.is_zero() {
                        continue;
                    }
                    let weight: usize = exps.iter().map(|&e| e as usize).sum::<usize>() % p;
                    slices[weight].add_scaled_assign(m, c);
                }
                let mut total = ctx.zero_block();
                for (l, slice) in slices.iter().enumerate() {
                    total = total.add(slice);
                    // each slice is itself in the twisted center and is a
                    // twist eigenvector of weight l
                    let eps_l = ctx.params.eps_power(l as i64);
                    if ctx.sigma_apply(slice)? != slice.scale(&eps_l) {
                        return Ok(Some(json!({
                            "slice_not_eigen": { "k": k, "shape": shape_json(ctx, si), "l": l }
                        })));
                    }
                    let t0 = ctx.generator(0);
                    let eps_k = ctx.params.eps_power(k as i64);
                    if slice.mul(&t0) != t0.mul(slice).scale(&eps_k) {
                        return Ok(Some(json!({
                            "slice_not_central": { "k": k, "shape": shape_json(ctx, si), "l": l }
                        })));
                    }
                    for i in 1..ctx.params.n {
                        if !slice.commutator_is_zero(&ctx.generator(i)) {
                            return Ok(Some(json!({
                                "slice_not_central": { "k": k, "shape": shape_json(ctx, si), "l": l, "i": i }
                            })));
                        }
                    }
                }
                if total != z {
                    return Ok(Some(json!({
                        "slices_do_not_sum": { "k": k, "shape": shape_json(ctx, si) }
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_dimaudit(ctx: &Context) -> Result<Option<Value>> {
    let audit = dim_audit(ctx);
    if audit.consistent {
        Ok(None)
    } else {
        Ok(Some(serde_json::to_value(&audit).unwrap()))
    }
}

fn check_roundtrip(ctx: &Context) -> Result<Option<Value>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..50 {
        let mut x = ctx.zero_block();
        for _ in 0..3 {
            let si = rng.gen_range(0..ctx.shapes.len());
            let dim = ctx.shapes[si].dim();
            let s = rng.gen_range(0..dim);
            let t = rng.gen_range(0..dim);
            *x.blocks[si].at_mut(s, t) += &ctx.params.integer(rng.gen_range(-9..=9));
        }
        let coeffs = ctx.word_basis_expand(&x)?;
        if ctx.word_basis_combine(&coeffs)? != x {
            return Ok(Some(json!({ "round_trip_failed_at_trial": trial })));
        }
        if trial < 20 {
            let twisted = ctx.sigma_apply_power(&x, ctx.params.p as i64)?;
            if twisted != x {
                return Ok(Some(json!({ "twist_order_violated_at_trial": trial })));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// dimension audit
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct DimAudit {
    pub r: usize,
    pub p: usize,
    pub n: usize,
    /// r^n n!
    pub ambient_dim: String,
    /// sum of squared block dimensions
    pub sum_of_squares: String,
    /// r^n n! / p
    pub subalgebra_dim: String,
    /// sum over classes of p_lambda (dim / p_lambda)^2
    pub class_sum: String,
    pub shapes: usize,
    pub classes: usize,
    pub consistent: bool,
}

pub fn dim_audit(ctx: &Context) -> DimAudit {
    let ambient = ctx.word_basis_size();
    let sum_of_squares: u128 = ctx.shapes.iter().map(|s| (s.dim() * s.dim()) as u128).sum();
    let subalgebra = expected_subalgebra_dim(ctx.params.r, ctx.params.p, ctx.params.n);
    let mut class_sum = 0u128;
    let mut divisible = true;
    for class in &ctx.classes {
        let dim = ctx.shapes[class.rep].dim();
        if !dim.is_multiple_of(class.p_lam) {
            divisible = false;
            continue;
        }
        let part = (dim / class.p_lam) as u128;
        class_sum += class.p_lam as u128 * part * part;
    }
    let consistent = divisible && ambient == sum_of_squares && class_sum == subalgebra;
    DimAudit {
        r: ctx.params.r,
        p: ctx.params.p,
        n: ctx.params.n,
        ambient_dim: ambient.to_string(),
        sum_of_squares: sum_of_squares.to_string(),
        subalgebra_dim: subalgebra.to_string(),
        class_sum: class_sum.to_string(),
        shapes: ctx.shapes.len(),
        classes: ctx.classes.len(),
        consistent,
    }
}

// ---------------------------------------------------------------------------
// mutation harness
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct MutationOutcome {
    pub fault: String,
    pub detected: bool,
    pub how: String,
}

pub const ALL_FAULTS: &[FaultInjection] = &[
    FaultInjection::GammaScale,
    FaultInjection::EpsPowerDoubled,
    FaultInjection::StraightenIdentity,
    FaultInjection::DropBasisCoefficientFactor,
    FaultInjection::SquareRootParityFlip,
];

/// Run the suite against each seeded corruption; a corruption counts as
/// detected when construction rejects it or at least one check fails.
pub fn mutation_outcomes(r: usize, p: usize, n: usize) -> Result<Vec<MutationOutcome>> {
    let mut out = Vec::new();
    for &fault in ALL_FAULTS {
        let params = HeckeParams::default_point(r, p, n)?;
        let outcome = match Context::with_options(params, Some(fault), 1000) {
            Err(e) => MutationOutcome {
                fault: format!("{fault:?}"),
                detected: true,
                how: format!("construction rejected: {e}"),
            },
            Ok(ctx) => {
                let report = run_suite(&ctx, None)?;
                let failed: Vec<&str> =
                    report.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
                MutationOutcome {
                    fault: format!("{fault:?}"),
                    detected: !failed.is_empty(),
                    how: if failed.is_empty() {
                        "no check failed".into()
                    } else {
                        format!("failed checks: {}", failed.join(", "))
                    },
                }
            }
        };
        out.push(outcome);
    }
    Ok(out)
}
