use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{bernoulli, PrecisionContext, Real};
use crate::{Error, Result};

/// `ζ(2, x) = Σ_{n≥0} (n+x)^{-2}` for `0 < x ≤ 1`.
pub fn hurwitz_zeta2(x: &BigRational, ctx: &PrecisionContext) -> Result<Real> {
    hurwitz_zeta2_with_bound(x, ctx).map(|(v, _)| v)
}

/// Hurwitz zeta at `s = 2` together with a rigorous remainder bound.
///
/// Euler–Maclaurin with `N` initial terms and Bernoulli corrections of
/// increasing order: for `f(t) = (t+x)^{-2}`,
///
/// `ζ(2,x) = Σ_{n<N} f(n) + 1/(N+x) + f(N)/2 + Σ_{j≥1} B_{2j} (N+x)^{-2j-1} + R_k`
///
/// and since `f^{(2k+2)} > 0` on `[N, ∞)` the remainder is bounded by the
/// first omitted correction: `|R_k| ≤ |B_{2k+2}| (N+x)^{-2k-3}`.
pub fn hurwitz_zeta2_with_bound(
    x: &BigRational,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)> {
    if !x.is_positive() || x > &BigRational::one() {
        return Err(Error::DegenerateInput(format!("hurwitz argument {x} not in (0, 1]")));
    }
    let work_digits = ctx.digits() + ctx.guard();
    let n_terms = (work_digits as usize) * 2 / 5 + 8;

    let xr = Real::from_ratio(x, ctx);
    let mut acc = Real::zero();
    for n in 0..n_terms {
        let t = Real::from_i64(n as i64, ctx).add(&xr, ctx);
        acc = acc.add(&Real::one(ctx).div(&t.square(ctx), ctx), ctx);
    }
    let nx = Real::from_i64(n_terms as i64, ctx).add(&xr, ctx);
    let inv = Real::one(ctx).div(&nx, ctx);
    // integral term + f(N)/2
    acc = acc.add(&inv, ctx);
    acc = acc.add(&inv.square(ctx).div(&Real::from_i64(2, ctx), ctx), ctx);

    let eps = ctx.working_eps().mul(&Real::pow10(-4, ctx), ctx);
    let inv_sq = inv.square(ctx);
    let mut pw = inv.mul(&inv_sq, ctx); // (N+x)^{-3}
    let mut j = 1usize;
    let cap = 4 * n_terms + 64;
    loop {
        let b = bernoulli(2 * j);
        let term = Real::from_ratio(&b, ctx).mul(&pw, ctx);
        // bound on the yet-unadded remainder, by the next correction term
        let next_bound = Real::from_ratio(&bernoulli(2 * j + 2).abs(), ctx)
            .mul(&pw.mul(&inv_sq, ctx), ctx);
        acc = acc.add(&term, ctx);
        if next_bound.lt(&eps) {
            return Ok((acc, next_bound.add(&ctx.working_eps(), ctx)));
        }
        if j >= cap {
            return Err(Error::PrecisionUnattainable(
                "Euler-Maclaurin corrections did not reach target".into(),
            ));
        }
        pw = pw.mul(&inv_sq, ctx);
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn at_one_is_zeta2() {
        let c = ctx();
        let v = hurwitz_zeta2(&q(1, 1), &c).unwrap();
        let expect = Real::pi(&c).square(&c).div(&Real::from_i64(6, &c), &c);
        assert!(v.sub(&expect, &c).abs().lt(&c.tolerance()));
    }

    #[test]
    fn at_half_is_three_zeta2() {
        let c = ctx();
        let v = hurwitz_zeta2(&q(1, 2), &c).unwrap();
        let expect = Real::pi(&c).square(&c).div(&Real::from_i64(2, &c), &c);
        assert!(v.sub(&expect, &c).abs().lt(&c.tolerance()));
    }

    #[test]
    fn at_third_matches_direct_sum_oracle() {
        let c = ctx();
        // brute-force oracle: 10^7 terms in f64 with integral tail bracket
        let x = 1.0f64 / 3.0;
        let n = 10_000_000u64;
        let mut s = 0.0f64;
        let mut comp = 0.0f64;
        for k in (0..n).rev() {
            let term = 1.0 / ((k as f64 + x) * (k as f64 + x));
            let y = term - comp;
            let t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        let lo = s + 1.0 / (n as f64 + x);
        let hi = lo + 1.0 / ((n as f64 + x) * (n as f64 + x));
        let v = hurwitz_zeta2(&q(1, 3), &c).unwrap().to_f64();
        assert!(v >= lo - 1e-9 && v <= hi + 1e-9, "{v} not in [{lo}, {hi}]");
    }

    #[test]
    fn reflection_identity_at_full_precision() {
        // ζ(2,1/3) + ζ(2,2/3) = 8·ζ(2)
        let c = ctx();
        let a = hurwitz_zeta2(&q(1, 3), &c).unwrap();
        let b = hurwitz_zeta2(&q(2, 3), &c).unwrap();
        let expect = Real::pi(&c)
            .square(&c)
            .mul(&Real::from_i64(8, &c), &c)
            .div(&Real::from_i64(6, &c), &c);
        assert!(a.add(&b, &c).sub(&expect, &c).abs().lt(&c.tolerance()));
    }

    #[test]
    fn rigorous_bound_is_tiny() {
        let c = ctx();
        let (_, bound) = hurwitz_zeta2_with_bound(&q(1, 7), &c).unwrap();
        assert!(bound.lt(&Real::pow10(-40, &c)));
    }

    #[test]
    fn rejects_out_of_domain() {
        let c = ctx();
        assert!(hurwitz_zeta2(&q(0, 1), &c).is_err());
        assert!(hurwitz_zeta2(&q(3, 2), &c).is_err());
        assert!(hurwitz_zeta2(&q(-1, 3), &c).is_err());
    }

    #[test]
    fn precision_doubling_consistency() {
        let c30 = PrecisionContext::new(30).unwrap();
        let c60 = PrecisionContext::new(60).unwrap();
        let a = hurwitz_zeta2(&q(2, 7), &c30).unwrap();
        let b = hurwitz_zeta2(&q(2, 7), &c60).unwrap();
        assert!(a.sub(&b, &c60).abs().lt(&Real::pow10(-30, &c60)));
    }
}
