//! The fixed-point subalgebra layer: square-root coefficient families, the
//! twisted basis coefficients A_{i,j}, the basis f^[k] of the subalgebra,
//! its central primitive idempotents, and the twisted-center bases of the
//! ambient algebra.

use crate::exactfield::CycloRational;
use crate::matrix::BlockMatrix;
use crate::seminormal::{AlgebraElement, Context, FaultInjection};
use crate::{HeckeError, Result};

/// Square-root and twist coefficient tables, one entry per block-shift
/// class.  Values depend on the shift indices only modulo the class period,
/// which is what the tables store; the raw evaluations remain available for
/// the periodicity checks.
pub struct GprnCoefficients<'a> {
    pub ctx: &'a Context,
    /// h_{lambda,0,1} per class
    h_anchor: Vec<CycloRational>,
    /// h_{lambda,l1,l2} for l1, l2 in 0..p_lambda
    h_pair_table: Vec<Vec<Vec<CycloRational>>>,
}

impl<'a> GprnCoefficients<'a> {
    pub fn new(ctx: &'a Context) -> Result<Self> {
        let mut h_anchor = Vec::with_capacity(ctx.classes.len());
        for ci in 0..ctx.classes.len() {
            h_anchor.push(h_lambda_value(ctx, ci)?);
        }
        let mut h_pair_table = Vec::with_capacity(ctx.classes.len());
        for (ci, class) in ctx.classes.iter().enumerate() {
            let table: Vec<Vec<CycloRational>> = (0..class.p_lam)
                .map(|l1| (0..class.p_lam).map(|l2| h_pair_raw_value(ctx, ci, &h_anchor[ci], l1, l2)).collect())
                .collect();
            h_pair_table.push(table);
        }
        Ok(GprnCoefficients { ctx, h_anchor, h_pair_table })
    }

    /// h_lambda = h_{lambda,0,1}, the explicit square root of
    /// gamma_{t^lambda shifted by o} / gamma_{t^lambda}.
    pub fn h_lambda(&self, class: usize) -> &CycloRational {
        &self.h_anchor[class]
    }

    /// h_{lambda,l1,l2}, table lookup with the indices reduced mod p_lambda.
    pub fn h_pair(&self, class: usize, l1: usize, l2: usize) -> &CycloRational {
        let p_lam = self.ctx.classes[class].p_lam;
        &self.h_pair_table[class][l1 % p_lam][l2 % p_lam]
    }

    /// h_{lambda,l1,l2} evaluated from the closed product form without
    /// reducing the indices.
    pub fn h_pair_raw(&self, class: usize, l1: usize, l2: usize) -> CycloRational {
        h_pair_raw_value(self.ctx, class, &self.h_anchor[class], l1, l2)
    }

    /// h_t^<l> = h_{lambda,0,l} gamma_{m_{lo}(t)} / gamma_t for any tableau
    /// t of the class representative (no condition on the entry 1).
    pub fn h_tableau(&self, class: usize, t: usize, l: usize) -> CycloRational {
        let ctx = self.ctx;
        let c = &ctx.classes[class];
        let rep = c.rep;
        let m = ctx.straighten_ref((rep, t), (l * c.o) % ctx.params.p);
        self.h_pair_raw(class, 0, l)
            .mul_ref(&ctx.gamma[rep][m.1])
            .checked_div(&ctx.gamma[rep][t])
            .expect("gamma is a unit")
    }

    /// h_{t,x}^<l> for a tableau of the class representative whose entry 1
    /// lies in the first o blocks.
    pub fn h_tableau_x(&self, class: usize, t: usize, x: usize, l: usize) -> Result<CycloRational> {
        let ctx = self.ctx;
        let c = &ctx.classes[class];
        let rep = c.rep;
        if !c.entry1_tabs.contains(&t) {
            return Err(HeckeError::InvalidParams(
                "the entry 1 must lie in the first o blocks for the shifted square-root family".into(),
            ));
        }
        let p = ctx.params.p;
        let t_ref = (rep, t);
        let t_shift = ctx.shift_ref(t_ref, (l * c.o) as i64); // same shape
        let m_x_shift = ctx.straighten_ref(t_shift, x % p);
        let m_x = ctx.straighten_ref(t_ref, x % p);
        let value = self
            .h_tableau(class, t, l)
            .mul_ref(&ctx.gamma[rep][t])
            .mul_ref(&ctx.gamma[rep][m_x_shift.1])
            .checked_div(&ctx.gamma[rep][m_x.1])?
            .checked_div(&ctx.gamma[rep][t_shift.1])?;
        Ok(value)
    }

    /// The basis coefficient A_{i,j}^{st} for tableaux s, t of the class
    /// representative: (h_s^<i>)^{-1} times the twist coefficient of the
    /// pair (s shifted by i o, t) at j.
    pub fn a_ij(&self, class: usize, s: usize, t: usize, i: usize, j: usize) -> CycloRational {
        let ctx = self.ctx;
        let c = &ctx.classes[class];
        let rep = c.rep;
        let h_inv = self.h_tableau(class, s, i).inv().expect("square roots are units");
        let s_shift = ctx.shift_ref((rep, s), (i * c.o) as i64); // same shape
        let mut value = h_inv
            .mul_ref(ctx.anchor_ratio_of(rep, j))
            .mul_ref(&ctx.r_coeff(s_shift, j));
        if ctx.fault != Some(FaultInjection::DropBasisCoefficientFactor) {
            value = value.mul_ref(&ctx.r_coeff((rep, t), j));
        }
        value
    }

    /// The twisted-invariant combination f_{st}^[k]: the double sum over
    /// i mod p_lambda and j mod p of (eps^o)^{ki} A_{i,j} f_{s<io+j> t<j>}.
    pub fn f_k_element(&self, class: usize, s: usize, t: usize, k: usize) -> AlgebraElement {
        let ctx = self.ctx;
        let c = &ctx.classes[class];
        let rep = c.rep;
        let p = ctx.params.p;
        let mut out = AlgebraElement::zero();
        for i in 0..c.p_lam {
            let root = ctx.params.eps_power((c.o * k * i) as i64);
            for j in 0..p {
                let coeff = root.mul_ref(&self.a_ij(class, s, t, i, j));
                let s_shift = ctx.shift_ref((rep, s), (i * c.o + j) as i64);
                let t_shift = ctx.shift_ref((rep, t), j as i64);
                debug_assert_eq!(s_shift.0, t_shift.0);
                out.add_term((s_shift.0, s_shift.1, t_shift.1), coeff);
            }
        }
        out
    }
}

fn rep_residues(ctx: &Context, class: usize) -> (&[CycloRational], usize) {
    let c = &ctx.classes[class];
    let rep = c.rep;
    let a: usize = ctx.shapes[rep].shape.components()[..ctx.params.d * c.o]
        .iter()
        .map(|p| p.size())
        .sum();
    (&ctx.res[rep][0][..a], a)
}

/// The square root h_lambda of gamma_{t^lambda<o>} / gamma_{t^lambda},
/// assembled from the residues of the first o blocks of the row-reading
/// tableau.  The two parity branches of p_lambda use different products;
/// p_lambda = 1 gives 1.
fn h_lambda_value(ctx: &Context, class: usize) -> Result<CycloRational> {
    let c = &ctx.classes[class];
    let params = &ctx.params;
    let mut p_lam = c.p_lam;
    if ctx.fault == Some(FaultInjection::SquareRootParityFlip) && p_lam > 1 {
        // deliberately use the branch of the opposite parity
        p_lam += 1;
    }
    if c.p_lam == 1 {
        return Ok(params.one());
    }
    let (rho, a) = rep_residues(ctx, class);
    let even = p_lam.is_multiple_of(2);
    let half_range = if even { p_lam / 2 - 1 } else { (p_lam - 1) / 2 };
    let mut h = params.one();
    for k in 1..=half_range {
        let root = params.eps_power((k * c.o) as i64);
        for i in 0..a {
            for j in 0..a {
                let num = (&params.q * &rho[j] - root.mul_ref(&rho[i]))
                    * (&rho[j] - &params.q * root.mul_ref(&rho[i]));
                let den = (&rho[j] - root.mul_ref(&rho[i])).mul_ref(&(&rho[j] - root.mul_ref(&rho[i])));
                h = h.mul_ref(&num.checked_div(&den)?);
            }
        }
    }
    if even {
        let two = params.integer(2);
        let factor = (params.one() + &params.q).checked_div(&two)?;
        for _ in 0..a {
            h = h.mul_ref(&factor);
        }
        for i in 0..a {
            for j in 0..i {
                let num = (&params.q * &rho[j] + &rho[i]) * (&rho[j] + &params.q * &rho[i]);
                let den = (&rho[j] + &rho[i]).mul_ref(&(&rho[j] + &rho[i]));
                h = h.mul_ref(&num.checked_div(&den)?);
            }
        }
    }
    Ok(h)
}

/// Closed product form of h_{lambda,l1,l2} for raw indices.
fn h_pair_raw_value(
    ctx: &Context,
    class: usize,
    h_anchor: &CycloRational,
    l1: usize,
    l2: usize,
) -> CycloRational {
    let c = &ctx.classes[class];
    let rep = c.rep;
    let p = ctx.params.p;
    let mut value = ctx.params.one();
    for _ in 0..l2 {
        value = value.mul_ref(h_anchor);
    }
    for k in 0..l2 {
        let u = ctx.shift_ref((rep, 0), (((l1 + k) * c.o) % p) as i64);
        debug_assert_eq!(u.0, rep);
        let m = ctx.straighten_ref(u, c.o % p);
        let ratio = ctx.gamma[rep][m.1].checked_div(&ctx.gamma[rep][u.1]).expect("gamma is a unit");
        value = value.mul_ref(&ratio);
    }
    value
}

/// One basis element of the fixed-point subalgebra.
pub struct GrpnBasisElement {
    pub class: usize,
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub alg: AlgebraElement,
    pub block: BlockMatrix,
}

pub struct GrpnBasis {
    pub elements: Vec<GrpnBasisElement>,
}

/// The expected dimension of the fixed-point subalgebra: r^n n! / p.
pub fn expected_subalgebra_dim(r: usize, p: usize, n: usize) -> u128 {
    let mut size = 1u128;
    for _ in 0..n {
        size *= r as u128;
    }
    for k in 1..=n {
        size *= k as u128;
    }
    size / p as u128
}

/// Assemble the basis of the fixed-point subalgebra: for every class, the
/// elements f_{st}^[k] with 0 <= k < p_lambda and s, t tableaux of the
/// representative whose entry 1 lies in the first o blocks.  Cardinality and
/// pairwise orthogonality are asserted before the basis is returned.
pub fn grpn_basis(ctx: &Context) -> Result<GrpnBasis> {
    let coeffs = GprnCoefficients::new(ctx)?;
    grpn_basis_with(ctx, &coeffs)
}

pub fn grpn_basis_with(ctx: &Context, coeffs: &GprnCoefficients<'_>) -> Result<GrpnBasis> {
    let mut elements = Vec::new();
    for (ci, class) in ctx.classes.iter().enumerate() {
        let dim = ctx.shapes[class.rep].dim();
        if !dim.is_multiple_of(class.p_lam) || class.entry1_tabs.len() * class.p_lam != dim {
            return Err(HeckeError::Internal(format!(
                "class {ci}: tableau count {dim} is not p_lambda = {} times the restricted count {}",
                class.p_lam,
                class.entry1_tabs.len()
            )));
        }
        for k in 0..class.p_lam {
            for &s in &class.entry1_tabs {
                for &t in &class.entry1_tabs {
                    let alg = coeffs.f_k_element(ci, s, t, k);
                    let block = alg.to_block(ctx);
                    elements.push(GrpnBasisElement { class: ci, k, s, t, alg, block });
                }
            }
        }
    }
    let expected = expected_subalgebra_dim(ctx.params.r, ctx.params.p, ctx.params.n);
    if elements.len() as u128 != expected {
        return Err(HeckeError::Internal(format!(
            "basis cardinality {} differs from r^n n!/p = {expected}",
            elements.len()
        )));
    }
    // pairwise orthogonality: f^[k]_{st} f^[l]_{uv} = [t=u][k=l] p_lam gamma_t f^[k]_{sv}
    for e1 in &elements {
        for e2 in &elements {
            let product = e1.block.mul(&e2.block);
            let expected = if e1.class == e2.class && e1.t == e2.s && e1.k == e2.k {
                let class = &ctx.classes[e1.class];
                let rep = class.rep;
                let scale =
                    ctx.params.integer(class.p_lam as i64).mul_ref(&ctx.gamma[rep][e1.t]);
                let target = elements
                    .iter()
                    .find(|e| e.class == e1.class && e.k == e1.k && e.s == e1.s && e.t == e2.t)
                    .expect("basis is closed under composition of labels");
                target.block.scale(&scale)
            } else {
                ctx.zero_block()
            };
            if product != expected {
                return Err(HeckeError::Internal(format!(
                    "orthogonality fails for (class {}, k {}, s {}, t {}) * (class {}, k {}, s {}, t {})",
                    e1.class, e1.k, e1.s, e1.t, e2.class, e2.k, e2.s, e2.t
                )));
            }
        }
    }
    Ok(GrpnBasis { elements })
}

/// The central primitive idempotents of the fixed-point subalgebra:
/// F_lambda^[k] = sum over restricted tableaux t of f_{tt}^[k] / (p_lambda gamma_t).
pub fn grpn_central_idempotents(ctx: &Context) -> Result<Vec<(usize, usize, BlockMatrix)>> {
    let coeffs = GprnCoefficients::new(ctx)?;
    let mut out = Vec::new();
    for (ci, class) in ctx.classes.iter().enumerate() {
        let rep = class.rep;
        let p_lam_inv = ctx.params.integer(class.p_lam as i64).inv()?;
        for k in 0..class.p_lam {
            let mut total = ctx.zero_block();
            for &t in &class.entry1_tabs {
                let f = coeffs.f_k_element(ci, t, t, k).to_block(ctx);
                let scale = p_lam_inv.mul_ref(&ctx.gamma[rep][t].inv()?);
                total = total.add(&f.scale(&scale));
            }
            out.push((ci, k, total));
        }
    }
    Ok(out)
}

/// The twisted-center elements F_{lambda,k} of the ambient algebra: for each
/// shape fixed by the k-fold block shift, the sum over its tableaux of
/// gamma_{m_k(t)}^{-1} f_{t<k> t}.
pub fn twisted_center_basis(ctx: &Context, k: usize) -> Result<Vec<(usize, BlockMatrix)>> {
    let p = ctx.params.p;
    let k = k % p;
    let mut out = Vec::new();
    for si in 0..ctx.shapes.len() {
        if ctx.shift_shape[si][k] != si {
            continue;
        }
        let mut total = ctx.zero_block();
        for t in 0..ctx.shapes[si].dim() {
            let m = ctx.straighten_ref((si, t), k);
            let t_shift = ctx.shift_ref((si, t), k as i64);
            debug_assert_eq!(t_shift.0, si);
            let coeff = ctx.gamma[si][m.1].inv()?;
            total = total.add(&ctx.f_element(t_shift, (si, t)).scale(&coeff));
        }
        out.push((si, total));
    }
    Ok(out)
}

/// The generators of the fixed-point subalgebra as block matrices:
/// T_0^p, T_0^{-1} T_1 T_0, and T_1, ..., T_{n-1}.
pub fn subalgebra_generators(ctx: &Context) -> Vec<BlockMatrix> {
    let mut gens = Vec::new();
    let t0 = ctx.generator(0);
    let mut t0_pow = ctx.identity_block();
    for _ in 0..ctx.params.p {
        t0_pow = t0_pow.mul(&t0);
    }
    gens.push(t0_pow);
    if ctx.params.n >= 2 {
        // T_0^{-1} T_1 T_0: T_0 is diagonal with unit entries
        let t0_inv = BlockMatrix {
            blocks: ctx
                .models
                .iter()
                .map(|m| {
                    let dim = m.gens[0].rows();
                    let entries: Vec<CycloRational> =
                        (0..dim).map(|u| m.gens[0].at(u, u).inv().expect("residues are units")).collect();
                    crate::matrix::Matrix::diagonal_with_conductor(ctx.params.conductor(), entries)
                })
                .collect(),
        };
        gens.push(t0_inv.mul(&ctx.generator(1)).mul(&t0));
        for i in 1..ctx.params.n {
            gens.push(ctx.generator(i));
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::HeckeParams;

    fn ctx(r: usize, p: usize, n: usize) -> Context {
        Context::new(HeckeParams::default_point(r, p, n).unwrap()).unwrap()
    }

    #[test]
    fn r_coefficients_at_the_initial_tableau_are_one() {
        let c = ctx(2, 2, 2);
        for si in 0..c.shapes.len() {
            for k in 0..c.params.p {
                assert!(c.r_coeff((si, 0), k).is_one());
            }
        }
    }

    #[test]
    fn rr_square_law() {
        for c in [ctx(2, 2, 2), ctx(3, 3, 2)] {
            for (si, sd) in c.shapes.iter().enumerate() {
                for s in 0..sd.dim() {
                    for t in 0..sd.dim() {
                        for k in 0..c.params.p {
                            let rr = c.rr_coeff((si, s), (si, t), k);
                            let s_k = c.shift_ref((si, s), k as i64);
                            let t_k = c.shift_ref((si, t), k as i64);
                            let expected = c.gamma[si][s]
                                .mul_ref(&c.gamma[si][t])
                                .checked_div(&c.gamma[s_k.0][s_k.1])
                                .unwrap()
                                .checked_div(&c.gamma[t_k.0][t_k.1])
                                .unwrap();
                            assert_eq!(rr.mul_ref(&rr), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rr_cycle_product_is_one() {
        for c in [ctx(2, 2, 2), ctx(3, 3, 2), ctx(4, 4, 2)] {
            let p = c.params.p;
            for (si, sd) in c.shapes.iter().enumerate() {
                for s in 0..sd.dim() {
                    for t in 0..sd.dim() {
                        for k in 1..=p {
                            let cycles = num_integer::lcm(k, p) / k;
                            let mut product = c.params.one();
                            for l in 0..cycles {
                                let s_l = c.shift_ref((si, s), (l * k) as i64);
                                let t_l = c.shift_ref((si, t), (l * k) as i64);
                                assert_eq!(s_l.0, t_l.0);
                                product = product.mul_ref(&c.rr_coeff(s_l, t_l, k));
                            }
                            assert!(product.is_one(), "cycle product differs from 1");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_lambda_examples() {
        // p_lambda = 1 forces h = 1
        let c = ctx(2, 2, 2);
        let coeffs = GprnCoefficients::new(&c).unwrap();
        for (ci, class) in c.classes.iter().enumerate() {
            if class.p_lam == 1 {
                assert!(coeffs.h_lambda(ci).is_one());
            }
            // square law
            let rep = class.rep;
            let shifted = c.shift_ref((rep, 0), class.o as i64);
            assert_eq!(shifted.0, rep);
            let expected = c.gamma[rep][shifted.1].checked_div(&c.gamma[rep][0]).unwrap();
            let h = coeffs.h_lambda(ci);
            assert_eq!(h.mul_ref(h), expected);
            // h_{lambda,0,p_lambda} = 1
            assert!(coeffs.h_pair_raw(ci, 0, class.p_lam).is_one());
        }
    }

    #[test]
    fn h_lambda_even_branch_value() {
        // the two-column class at r = p = 2 has p_lambda = 2 and a = 1:
        // h = (q+1)/2 = 3/2, whose square is gamma_{t<1>} / gamma_t = 9/4
        let c = ctx(2, 2, 2);
        let coeffs = GprnCoefficients::new(&c).unwrap();
        let ci = c
            .classes
            .iter()
            .position(|cl| cl.p_lam == 2)
            .expect("two-column class exists");
        let h = coeffs.h_lambda(ci);
        let expected = (c.params.one() + &c.params.q)
            .checked_div(&c.params.integer(2))
            .unwrap();
        assert_eq!(h, &expected);
    }

    #[test]
    fn h_lambda_odd_branch_value() {
        // at r = p = 3, n = 3 the shape with three equal single-box blocks
        // has p_lambda = 3, exercising the odd branch non-trivially
        let c = ctx(3, 3, 3);
        let coeffs = GprnCoefficients::new(&c).unwrap();
        let ci = c.classes.iter().position(|cl| cl.p_lam == 3).expect("fully periodic class");
        let class = &c.classes[ci];
        let rep = class.rep;
        let shifted = c.shift_ref((rep, 0), class.o as i64);
        let expected = c.gamma[rep][shifted.1].checked_div(&c.gamma[rep][0]).unwrap();
        let h = coeffs.h_lambda(ci);
        assert_eq!(h.mul_ref(h), expected);
        assert!(!h.is_one());
    }

    #[test]
    fn a_coefficient_normalization() {
        let c = ctx(2, 2, 2);
        let coeffs = GprnCoefficients::new(&c).unwrap();
        for (ci, class) in c.classes.iter().enumerate() {
            for &s in &class.entry1_tabs {
                for &t in &class.entry1_tabs {
                    assert!(coeffs.a_ij(ci, s, t, 0, 0).is_one());
                }
            }
        }
    }

    #[test]
    fn basis_counts() {
        assert_eq!(grpn_basis(&ctx(2, 2, 2)).unwrap().elements.len(), 4);
        assert_eq!(grpn_basis(&ctx(3, 3, 2)).unwrap().elements.len(), 6);
        assert_eq!(grpn_basis(&ctx(2, 2, 3)).unwrap().elements.len(), 24);
    }

    #[test]
    fn degenerate_p_one_reduces_to_the_plain_basis() {
        let c = ctx(2, 1, 2);
        let coeffs = GprnCoefficients::new(&c).unwrap();
        for (ci, class) in c.classes.iter().enumerate() {
            assert_eq!(class.p_lam, 1);
            for &s in &class.entry1_tabs {
                for &t in &class.entry1_tabs {
                    let f = coeffs.f_k_element(ci, s, t, 0).to_block(&c);
                    assert_eq!(f, c.f_element((class.rep, s), (class.rep, t)));
                }
            }
        }
    }

    #[test]
    fn central_idempotent_counts() {
        let c = ctx(2, 2, 2);
        let idems = grpn_central_idempotents(&c).unwrap();
        assert_eq!(idems.len(), 4); // classes contribute 1 + 1 + 2
        let total = idems.iter().fold(c.zero_block(), |acc, (_, _, f)| acc.add(f));
        assert_eq!(total, c.identity_block());
    }

    #[test]
    fn twisted_center_counts() {
        let c = ctx(2, 2, 2);
        assert_eq!(twisted_center_basis(&c, 0).unwrap().len(), 5);
        assert_eq!(twisted_center_basis(&c, 1).unwrap().len(), 1);
        let c = ctx(3, 3, 2);
        assert_eq!(twisted_center_basis(&c, 0).unwrap().len(), 9);
        assert_eq!(twisted_center_basis(&c, 1).unwrap().len(), 0);
    }
}
