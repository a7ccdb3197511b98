use num_bigint::BigInt;
use num_rational::BigRational;

use super::det;
use crate::apnum::{
    bloch_wigner, characters_mod, dirichlet_l2, Complex, Parity, PrecisionContext, Real,
};
use crate::exact::primes;
use crate::zeta::{cyclotomic_even_zeta2, cyclotomic_zeta2, transport_to_minus1};
use crate::nfield::NumberField;
use crate::{Error, Result};

/// Covolume of the subgroup generated by `p[ζ_p^j]` under the π-normalized
/// dilogarithm map, computed by two independent routes.
#[derive(Clone, Debug)]
pub struct CycloRegulator {
    /// `π^{-r2} |det D(σ_i(p[ζ_p^j]))|` with `σ(ζ_p) = ζ_p²`
    pub via_matrix: Real,
    /// `Π_{χ odd} (p/2π) |Σ_a χ(a) D(ζ_p^a)|`
    pub via_character_sums: Real,
}

const DEFAULT_PRIME_BOUND: u64 = 13;

fn check_prime(p: u64, bound: u64) -> Result<()> {
    if p < 3 || p > bound || !primes::is_prime_u128(p as u128) {
        return Err(Error::PrimeOutOfRange(p));
    }
    Ok(())
}

/// Bloch–Wigner values `D(ζ_p^a)` for `a = 0..p-1` at context precision.
fn dilog_table(p: u64, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    let mut out = Vec::with_capacity(p as usize);
    for a in 0..p {
        let t = BigRational::new(BigInt::from(a), BigInt::from(p));
        let z = Complex::unit_circle(&Real::from_ratio(&t, ctx), ctx);
        out.push(bloch_wigner(&z, ctx)?);
    }
    Ok(out)
}

/// Both evaluation routes for the covolume of `Z = ⟨p[ζ_p^j]⟩`.
///
/// Route (i) builds the `(p-1)/2` square matrix of `(p/π) D(ζ_p^{j·2^i})`
/// following the automorphism convention `σ_i = σ^i`, `σ(ζ_p) = ζ_p²`;
/// route (ii) multiplies the odd-character sums `(p/2π)|Σ_a χ(a) D(ζ_p^a)|`.
/// For `p ≤ 13` the powers of 2 hit every complex place up to conjugation,
/// so the matrix is nonsingular.
pub fn cyclotomic_regulator_det(p: u64, ctx: &PrecisionContext) -> Result<CycloRegulator> {
    check_prime(p, DEFAULT_PRIME_BOUND)?;
    let r2 = ((p - 1) / 2) as usize;
    let d = dilog_table(p, ctx)?;
    let p_over_pi = Real::from_i64(p as i64, ctx).div(&Real::pi(ctx), ctx);

    // route (i)
    let mut m = vec![vec![Real::zero(); r2]; r2];
    let mut pow2 = 1u64;
    for (i, row) in m.iter_mut().enumerate() {
        pow2 = pow2 * 2 % p;
        let _ = i;
        for (j, entry) in row.iter_mut().enumerate() {
            let e = (j as u64 + 1) * pow2 % p;
            *entry = d[e as usize].mul(&p_over_pi, ctx);
        }
    }
    let via_matrix = det(&m, ctx).abs();

    // route (ii)
    let p_over_2pi = p_over_pi.div(&Real::from_i64(2, ctx), ctx);
    let mut prod = Real::one(ctx);
    for chi in characters_mod(p)? {
        if chi.parity() != Parity::Odd {
            continue;
        }
        let mut s = Complex::zero();
        for a in 1..p {
            let v = chi.eval(a, ctx).mul_real(&d[a as usize], ctx);
            s = s.add(&v, ctx);
        }
        prod = prod.mul(&s.abs(ctx).mul(&p_over_2pi, ctx), ctx);
    }
    Ok(CycloRegulator { via_matrix, via_character_sums: prod })
}

/// Closed form `(2π)^{(1-p)/2} p^{3(p-1)/4} Π_{χ odd} |L(χ, 2)|`.
pub fn cyclotomic_regulator_closed(p: u64, ctx: &PrecisionContext) -> Result<Real> {
    check_prime(p, u64::MAX)?;
    let mut prod = Real::one(ctx);
    for chi in characters_mod(p)? {
        if chi.parity() != Parity::Odd {
            continue;
        }
        let l = dirichlet_l2(&chi, ctx)?;
        prod = prod.mul(&l.abs(ctx), ctx);
    }
    let two_pi = Real::pi(ctx).mul(&Real::from_i64(2, ctx), ctx);
    // (2π)^{(1-p)/2}: negative integer exponent
    let tp = Real::one(ctx).div(&two_pi.powi(((p - 1) / 2) as u64, ctx), ctx);
    // p^{3(p-1)/4}: integer or half-integer exponent
    let e = 3 * (p - 1);
    let p_real = Real::from_i64(p as i64, ctx);
    let pfac = if e % 4 == 0 {
        p_real.powi((e / 4) as u64, ctx)
    } else {
        // e/4 = k + 1/2
        p_real.powi((e / 4) as u64, ctx).mul(&p_real.sqrt(ctx), ctx)
    };
    Ok(tp.mul(&pfac, ctx).mul(&prod, ctx))
}

/// Both sides of the cyclotomic special-value identity, with all
/// intermediates, conditional on the supplied `#K₂(O_{F⁺})`.
#[derive(Debug)]
pub struct Theorem33Report {
    pub p: u64,
    pub k2_plus_order: u64,
    /// `|ζ*_F(-1)|` via the character product and the functional equation
    pub left: Real,
    /// `2^{(1-p)/2} · (#K₂(O_{F⁺})/w₂) · R̃₂(F)` via the closed regulator form
    pub right: Real,
    pub ratio: Real,
    /// `#K₂(O_F) = 2^{(1-p)/2} · #K₂(O_{F⁺})` as an exact rational
    pub implied_k2: BigRational,
    /// `|ζ_{F⁺}(-1)|` computed analytically from `ζ_{F⁺}(2)`
    pub zeta_plus_minus1_analytic: Real,
    /// `#K₂(O_{F⁺}) / w₂(F⁺)`, the Birch–Tate value of `|ζ_{F⁺}(-1)|`
    pub zeta_plus_minus1_birch_tate: Real,
    pub regulator: Real,
    pub w2: u64,
}

/// Verification chain for `|ζ*_F(-1)| = 2^{(1-p)/2} |ζ_{F⁺}(-1)| R̃₂(F)` on
/// `F = Q(ζ_p)`, with `|ζ_{F⁺}(-1)|` supplied through the Birch–Tate input
/// `#K₂(O_{F⁺})` (a conjecture-level quantity the caller asserts).
pub fn theorem33_chain(
    p: u64,
    k2_plus_order: u64,
    ctx: &PrecisionContext,
) -> Result<Theorem33Report> {
    check_prime(p, DEFAULT_PRIME_BOUND)?;
    let half = ((p - 1) / 2) as u64;

    // left: ζ_F(2) by character product, transported to s = -1 with
    // signature (0, (p-1)/2) and |d_F| = p^(p-2)
    let zf2 = cyclotomic_zeta2(p, ctx)?;
    let field = NumberField::cyclotomic(p)?;
    let transport = transport_to_minus1(&field);
    let left = transport.zeta_star_minus1_abs(&zf2.value, field.discriminant(), ctx);

    // regulator from the closed form of the covolume
    let reg = cyclotomic_regulator_closed(p, ctx)?;

    // w₂(F) = w₂(F⁺), closed form for prime cyclotomics
    let w2 = if p == 3 { 24 } else { 24 * p };

    let two_pow = Real::one(ctx).div(&Real::from_i64(2, ctx).powi(half, ctx), ctx);
    let bt = Real::from_i64(k2_plus_order as i64, ctx).div(&Real::from_i64(w2 as i64, ctx), ctx);
    let right = two_pow.mul(&bt, ctx).mul(&reg, ctx);

    // analytic |ζ_{F⁺}(-1)| from the even-character product:
    // ζ_{F⁺}(2) = 2^{(p-1)/2} π^{p-1} |d_{F⁺}|^{-3/2} |ζ_{F⁺}(-1)|,
    // |d_{F⁺}| = p^{(p-3)/2}
    let zplus2 = cyclotomic_even_zeta2(p, ctx)?;
    let d_plus = BigInt::from(p).pow(((p - 3) / 2) as u32);
    let d32 = Real::from_bigint(&d_plus, ctx).powi(3, ctx).sqrt(ctx);
    let denom = Real::from_i64(2, ctx)
        .powi(half, ctx)
        .mul(&Real::pi(ctx).powi((p - 1) as u64, ctx), ctx);
    let zeta_plus_analytic = zplus2.value.mul(&d32, ctx).div(&denom, ctx);

    let ratio = left.div(&right, ctx);
    let implied = BigRational::new(BigInt::from(k2_plus_order), BigInt::from(2u64).pow(half as u32));
    Ok(Theorem33Report {
        p,
        k2_plus_order,
        left,
        right,
        ratio,
        implied_k2: implied,
        zeta_plus_minus1_analytic: zeta_plus_analytic,
        zeta_plus_minus1_birch_tate: bt,
        regulator: reg,
        w2,
    })
}
