//! Dedekind zeta values `ζ_F(2)` with rigorous truncation bounds, the
//! abelian factorization into Dirichlet L-functions for cyclotomic fields,
//! and the functional-equation transport to `ζ*_F(-1)`.

mod sieve;

pub use sieve::dedekind_zeta2;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::apnum::{
    characters_mod, dirichlet_l2_with_bound, Complex, Parity, PrecisionContext, Real,
};
use crate::exact::modp::{self, PolyP};
use crate::exact::primes;
use crate::nfield::NumberField;
use crate::{Error, Result};

/// How a zeta value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZetaMethod {
    #[serde(rename = "dirichlet_sieve")]
    DirichletSieve,
    #[serde(rename = "character_product")]
    CharacterProduct,
}

/// A zeta value with a rigorous truncation bound:
/// `|value - ζ_F(2)| ≤ tail_bound`.
#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub value: Real,
    pub terms_used: u64,
    pub tail_bound: Real,
    pub method: ZetaMethod,
}

/// Residue degrees of the distinct primes above `p` (repeated factors of
/// `f mod p` collapse, matching the Euler product of the Dedekind zeta).
pub fn euler_factor_degrees(field: &NumberField, p: u64) -> Result<Vec<usize>> {
    if field.index_primes().contains(&p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let fbar = poly_mod_p(field.poly(), p);
    let mut out = Vec::new();
    for (g, _mult) in modp::squarefree_decomposition(&fbar) {
        for (d, count) in modp::distinct_degree_shape(&g) {
            for _ in 0..count {
                out.push(d);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Full factor shape `(degree, multiplicity, count)` of `f mod p`; used by
/// the Euler-factor consistency checks.
pub fn factorization_shape(field: &NumberField, p: u64) -> Result<Vec<(usize, usize, usize)>> {
    if field.index_primes().contains(&p) {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(modp::factor_shape(&poly_mod_p(field.poly(), p)))
}

pub(crate) fn poly_mod_p(coeffs: &[BigInt], p: u64) -> PolyP {
    PolyP::new(
        coeffs
            .iter()
            .map(|c| {
                let r = c % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
        p,
    )
}

/// `ζ_{Q(ζ_p)}(2)` as the product over all Dirichlet characters mod `p`.
///
/// Each character contributes its primitive L-value: the trivial character
/// yields the full Riemann `ζ(2)` (its Euler factor at `p` restored), the
/// rest their mod-p series unchanged. This is the convention under which the
/// product equals the sieve value; the cross-method tests pin it.
pub fn cyclotomic_zeta2(p: u64, ctx: &PrecisionContext) -> Result<ZetaResult> {
    character_product_zeta2(p, ctx, None)
}

/// Even-character subproduct: `ζ_{F⁺}(2)` for the maximal real subfield.
pub fn cyclotomic_even_zeta2(p: u64, ctx: &PrecisionContext) -> Result<ZetaResult> {
    character_product_zeta2(p, ctx, Some(Parity::Even))
}

fn character_product_zeta2(
    p: u64,
    ctx: &PrecisionContext,
    only: Option<Parity>,
) -> Result<ZetaResult> {
    if p < 3 || !primes::is_prime_u128(p as u128) {
        return Err(Error::PrimeOutOfRange(p));
    }
    let mut acc = Complex::from_i64(1, ctx);
    let mut rel_err = Real::zero();
    let mut used = 0u64;
    for chi in characters_mod(p)? {
        if let Some(par) = only {
            if chi.parity() != par {
                continue;
            }
        }
        used += 1;
        let (mut l, bound) = dirichlet_l2_with_bound(&chi, ctx)?;
        if chi.is_trivial() {
            // restore the Euler factor at p: mod-p series gave ζ(2)(1 - p⁻²)
            let psq = Real::from_i64((p * p) as i64, ctx);
            let factor = Real::one(ctx).sub(&Real::one(ctx).div(&psq, ctx), ctx);
            l = Complex::from_real(l.re.div(&factor, ctx));
        }
        let mag = l.abs(ctx);
        rel_err = rel_err.add(&bound.div(&mag, ctx), ctx);
        acc = acc.mul(&l, ctx);
    }
    // product of conjugate-closed character values is real
    let value = acc.re.clone();
    debug_assert!(acc.im.abs().lt(&ctx.tolerance()));
    let tail = value
        .abs()
        .mul(&rel_err, ctx)
        .add(&ctx.working_eps(), ctx);
    Ok(ZetaResult {
        value,
        terms_used: used,
        tail_bound: tail,
        method: ZetaMethod::CharacterProduct,
    })
}

/// Exact functional-equation bookkeeping between `ζ_F(2)` and `ζ*_F(-1)`:
///
/// `ζ_F(2) = sign · 2^a · π^b · |d_F|^(-3/2) · ζ*_F(-1)`
///
/// with `a = r1 + 3r2`, `b = 2r1 + 3r2`, `sign = (-1)^(r1+r2)`, and the order
/// of vanishing of `ζ_F` at `s = -1` equal to `r2`.
#[derive(Clone, Debug, Serialize)]
pub struct TransportFactor {
    pub two_exp: i64,
    pub pi_exp: i64,
    /// exponent of |d_F| applied to ζ*(-1), always -3/2 here
    pub disc_exp_num: i64,
    pub disc_exp_den: i64,
    pub rational_factor: String,
    pub sign: i8,
    pub vanishing_order: usize,
}

pub fn transport_to_minus1(field: &NumberField) -> TransportFactor {
    let (r1, r2) = field.signature();
    TransportFactor {
        two_exp: (r1 + 3 * r2) as i64,
        pi_exp: (2 * r1 + 3 * r2) as i64,
        disc_exp_num: -3,
        disc_exp_den: 2,
        rational_factor: BigRational::one().to_string(),
        sign: if (r1 + r2) % 2 == 0 { 1 } else { -1 },
        vanishing_order: r2,
    }
}

impl TransportFactor {
    /// `|ζ*_F(-1)| = ζ_F(2) · |d_F|^{3/2} / (2^a π^b)`.
    pub fn zeta_star_minus1_abs(
        &self,
        zeta2: &Real,
        disc: &BigInt,
        ctx: &PrecisionContext,
    ) -> Real {
        let d = Real::from_bigint(&disc.abs(), ctx);
        let d32 = d.powi(3, ctx).sqrt(ctx);
        let denom = Real::from_i64(2, ctx)
            .powi(self.two_exp as u64, ctx)
            .mul(&Real::pi(ctx).powi(self.pi_exp as u64, ctx), ctx);
        zeta2.abs().mul(&d32, ctx).div(&denom, ctx)
    }

    /// Inverse direction, for round-trip checks.
    pub fn zeta2_from_star(&self, star: &Real, disc: &BigInt, ctx: &PrecisionContext) -> Real {
        let d = Real::from_bigint(&disc.abs(), ctx);
        let d32 = d.powi(3, ctx).sqrt(ctx);
        let num = Real::from_i64(2, ctx)
            .powi(self.two_exp as u64, ctx)
            .mul(&Real::pi(ctx).powi(self.pi_exp as u64, ctx), ctx);
        star.mul(&num, ctx).div(&d32, ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfield::create_field;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn euler_degrees_examples() {
        let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
        assert_eq!(euler_factor_degrees(&f, 2).unwrap(), vec![1, 2]);
        // inert prime: x^3+x^2+x+2 mod 3 is irreducible
        assert_eq!(euler_factor_degrees(&f, 3).unwrap(), vec![3]);
        let f5 = NumberField::cyclotomic(5).unwrap();
        assert_eq!(euler_factor_degrees(&f5, 11).unwrap(), vec![1, 1, 1, 1]);
        // ramified: only the distinct factor counts
        assert_eq!(euler_factor_degrees(&f5, 5).unwrap(), vec![1]);
    }

    #[test]
    fn euler_consistency_degree_sum() {
        // Σ fᵢ·eᵢ·count = n for every p
        let fields = [
            create_field(&z(&[2, 1, 1, 1])).unwrap(),
            create_field(&z(&[1, 1, -2, 0, 1])).unwrap(),
            NumberField::cyclotomic(7).unwrap(),
        ];
        for f in &fields {
            for p in primes::primes_below(100) {
                let shape = factorization_shape(f, p).unwrap();
                let total: usize = shape.iter().map(|(d, m, c)| d * m * c).sum();
                assert_eq!(total, f.degree(), "p = {p}");
            }
        }
    }

    #[test]
    fn index_prime_refused() {
        let f = crate::nfield::create_field_with_override(
            &z(&[3, 0, 1]),
            Some(BigInt::from(-3)),
        )
        .unwrap();
        assert!(matches!(
            euler_factor_degrees(&f, 2),
            Err(Error::UnsupportedPrime(2))
        ));
        assert!(euler_factor_degrees(&f, 5).is_ok());
    }

    #[test]
    fn transport_exponents() {
        let f42 = create_field(&z(&[2, 1, 1, 1])).unwrap(); // (1,1)
        let t = transport_to_minus1(&f42);
        assert_eq!((t.two_exp, t.pi_exp), (4, 5));
        assert_eq!(t.vanishing_order, 1);
        assert_eq!(t.sign, 1);
        let f45 = create_field(&z(&[1, 1, -2, 0, 1])).unwrap(); // (2,1)
        let t = transport_to_minus1(&f45);
        assert_eq!((t.two_exp, t.pi_exp), (5, 7));
        // totally real subfield pattern ((p-1)/2, 0): 2^{(p-1)/2} π^{p-1}
        let fplus = create_field(&crate::exact::poly::real_cyclotomic_min_poly(7)).unwrap();
        let t = transport_to_minus1(&fplus);
        assert_eq!((t.two_exp, t.pi_exp), (3, 6));
        assert_eq!(t.vanishing_order, 0);
    }

    #[test]
    fn transport_round_trip() {
        let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
        let c = ctx();
        let t = transport_to_minus1(&f);
        let x = Real::from_f64(1.516751720642021, &c);
        let star = t.zeta_star_minus1_abs(&x, f.discriminant(), &c);
        let back = t.zeta2_from_star(&star, f.discriminant(), &c);
        assert!(back.sub(&x, &c).abs().lt(&c.working_eps()));
    }

    #[test]
    fn cyclotomic_product_p3_matches_classical() {
        // ζ_{Q(ζ3)}(2) = ζ(2)·L(χ3, 2)
        let c = ctx();
        let z = cyclotomic_zeta2(3, &c).unwrap();
        let l3 = crate::apnum::dirichlet_l2(&crate::apnum::DirichletCharacter::chi3(), &c)
            .unwrap()
            .re;
        let zeta2 = Real::pi(&c).square(&c).div(&Real::from_i64(6, &c), &c);
        let expect = zeta2.mul(&l3, &c);
        assert!(z.value.sub(&expect, &c).abs().lt(&Real::pow10(-35, &c)));
        assert_eq!(z.method, ZetaMethod::CharacterProduct);
    }
}
