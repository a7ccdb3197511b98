//! `w₂(F)`, dilogarithmic regulator matrices, tame-kernel order predictions,
//! and the cyclotomic verification chain.

mod cyclo;
mod w2;

pub use cyclo::{
    cyclotomic_regulator_closed, cyclotomic_regulator_det, theorem33_chain, CycloRegulator,
    Theorem33Report,
};
pub use w2::w2;

use num_bigint::BigInt;

use crate::apnum::{PrecisionContext, Real};
use crate::bloch::{dilog_value, CertifiedElement};
use crate::nfield::NumberField;
use crate::zeta::{dedekind_zeta2, transport_to_minus1, ZetaResult};
use crate::{Error, Result};

/// Matrix of Bloch–Wigner values `D(σᵢ(ξ_j))` over the complex places, with
/// its determinant in both normalizations.
#[derive(Clone, Debug)]
pub struct RegulatorMatrix {
    pub entries: Vec<Vec<Real>>,
    pub elements: Vec<String>,
    pub det_abs: Real,
    pub det_over_pi_r2: Real,
}

/// The regulator matrix for `r2` certified Bloch elements: rows are complex
/// places in canonical order, columns the elements.
pub fn regulator(
    field: &NumberField,
    elements: &[CertifiedElement],
    ctx: &PrecisionContext,
) -> Result<RegulatorMatrix> {
    let r2 = field.r2();
    if elements.len() != r2 {
        return Err(Error::WrongElementCount { expected: r2, got: elements.len() });
    }
    let mut entries = vec![vec![Real::zero(); r2]; r2];
    for (col, el) in elements.iter().enumerate() {
        for (row, entry) in entries.iter_mut().enumerate() {
            entry[col] = dilog_value(&el.sum, field, row, ctx)?;
        }
    }
    let det_abs = det(&entries, ctx).abs();
    let pi_r2 = Real::pi(ctx).powi(r2 as u64, ctx);
    let det_over_pi_r2 = det_abs.div(&pi_r2, ctx);
    Ok(RegulatorMatrix {
        entries,
        elements: elements.iter().map(|e| e.sum.display()).collect(),
        det_abs,
        det_over_pi_r2,
    })
}

pub(crate) fn det(m: &[Vec<Real>], ctx: &PrecisionContext) -> Real {
    let n = m.len();
    if n == 0 {
        return Real::one(ctx);
    }
    let mut a: Vec<Vec<Real>> = m.to_vec();
    let mut sign = 1i64;
    let mut acc = Real::one(ctx);
    for k in 0..n {
        // partial pivot
        let pivot = (k..n).max_by(|&i, &j| a[i][k].abs().cmp(&a[j][k].abs())).unwrap();
        if a[pivot][k].is_zero() {
            return Real::zero();
        }
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        acc = acc.mul(&a[k][k], ctx);
        for i in k + 1..n {
            let f = a[i][k].div(&a[k][k], ctx);
            for j in k..n {
                let t = f.mul(&a[k][j], ctx);
                a[i][j] = a[i][j].sub(&t, ctx);
            }
        }
    }
    acc.mul(&Real::from_i64(sign, ctx), ctx)
}

/// Everything that goes into a tame-kernel order prediction.
#[derive(Debug)]
pub struct K2Report {
    pub w2: u64,
    pub zeta2: ZetaResult,
    pub zeta_star_minus1: Real,
    pub regulator: RegulatorMatrix,
    pub predicted_order: Real,
    pub nearest_integer: BigInt,
    pub deviation: Real,
    pub error_budget: Real,
    pub consistent: bool,
    pub assumptions: Vec<String>,
}

/// Lichtenbaum-formula prediction of `#K₂(O_F)`:
/// `w₂(F) · |ζ*_F(-1)| / R̃₂(F)` with `ζ*` transported from the sieve value
/// of `ζ_F(2)` and `R̃₂ = |det| / π^{r2}`.
///
/// The element list is a conjecture-level input (assumed to be a basis of
/// the Bloch group); the report records that assumption explicitly.
pub fn k2_predict(
    field: &NumberField,
    elements: &[CertifiedElement],
    m_terms: u64,
    ctx: &PrecisionContext,
) -> Result<K2Report> {
    let zeta2 = dedekind_zeta2(field, m_terms, ctx)?;
    k2_predict_with_zeta(field, elements, zeta2, ctx)
}

/// Same as [`k2_predict`] with a precomputed zeta value (suite runs share
/// one sieve per field).
pub fn k2_predict_with_zeta(
    field: &NumberField,
    elements: &[CertifiedElement],
    zeta2: ZetaResult,
    ctx: &PrecisionContext,
) -> Result<K2Report> {
    let transport = transport_to_minus1(field);
    let zeta_star = transport.zeta_star_minus1_abs(&zeta2.value, field.discriminant(), ctx);
    let reg = regulator(field, elements, ctx)?;

    let floor = ctx.tolerance();
    if reg.det_over_pi_r2.abs().lt(&floor) {
        return Err(Error::SingularRegulator(reg.det_over_pi_r2.to_decimal_string(6)));
    }
    let w2_value = w2(field, ctx)?;
    let predicted = Real::from_i64(w2_value as i64, ctx)
        .mul(&zeta_star, ctx)
        .div(&reg.det_over_pi_r2, ctx);
    let nearest = predicted.round_to_bigint();
    let deviation = predicted.sub(&Real::from_bigint(&nearest, ctx), ctx).abs();

    // error budget: zeta tail dominates; dilogarithm and transport errors sit
    // many digits below the working precision
    let rel_zeta = zeta2.tail_bound.div(&zeta2.value.abs(), ctx);
    let rel_dilog = Real::pow10(-(ctx.digits() as i64) + 8, ctx);
    let error_budget = predicted.abs().mul(&rel_zeta.add(&rel_dilog, ctx), ctx);

    let consistent = deviation.lt(&Real::from_f64(1e-3, ctx).max(&error_budget));
    Ok(K2Report {
        w2: w2_value,
        zeta2,
        zeta_star_minus1: zeta_star,
        regulator: reg,
        predicted_order: predicted,
        nearest_integer: nearest,
        deviation,
        error_budget,
        consistent,
        assumptions: vec![
            "lichtenbaum_formula".into(),
            "elements_form_bloch_group_basis".into(),
        ],
    })
}

#[cfg(test)]
mod tests;
