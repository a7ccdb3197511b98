use num_bigint::BigInt;
use num_rational::BigRational;


use super::{bernoulli, Complex, PrecisionContext, Real};
use crate::{Error, Result};

/// Dilogarithm value together with the branch-cut flag.
///
/// On the standard cut `[1, ∞)` the principal limit from below
/// (`Im z → 0⁻`) is returned and `on_cut` is set.
#[derive(Clone, Debug)]
pub struct Li2Value {
    pub value: Complex,
    pub on_cut: bool,
}

/// `Li₂(z) = Σ_{n≥1} zⁿ/n²`, principal branch, continuous on `C ∖ [1, ∞)`.
///
/// Power series for `|z| ≤ 1/2`, the inversion and reflection identities for
/// the far and near-one regions, and the Bernoulli series in `u = -ln(1-z)`
/// on the remaining annulus. Each region has a geometric term bound, so the
/// iteration caps below are only hit if convergence is genuinely broken.
pub fn li2(z: &Complex, ctx: &PrecisionContext) -> Result<Li2Value> {
    if z.is_real() {
        let (re, im, on_cut) = li2_real(&z.re, ctx)?;
        return Ok(Li2Value { value: Complex::new(re, im), on_cut });
    }
    Ok(Li2Value { value: li2_complex(z, ctx)?, on_cut: false })
}

/// Bloch–Wigner function `D(z) = Im Li₂(z) + arg(1-z)·log|z|`.
///
/// Exactly zero on the real line (including 0 and 1); real analytic
/// elsewhere.
pub fn bloch_wigner(z: &Complex, ctx: &PrecisionContext) -> Result<Real> {
    if z.is_real() {
        return Ok(Real::zero());
    }
    let li = li2_complex(z, ctx)?;
    let one_minus = Complex::from_i64(1, ctx).sub(z, ctx);
    let corr = one_minus.arg(ctx).mul(&z.ln_abs(ctx), ctx);
    Ok(li.im.add(&corr, ctx))
}

fn pi_sq_over_6(ctx: &PrecisionContext) -> Real {
    Real::pi(ctx).square(ctx).div(&Real::from_i64(6, ctx), ctx)
}

fn iteration_cap(ctx: &PrecisionContext) -> usize {
    64 + 6 * ctx.bits()
}

/// Series target: well below the working rounding floor.
fn series_eps(ctx: &PrecisionContext) -> Real {
    ctx.working_eps()
        .mul(&Real::pow10(-4, ctx), ctx)
}

/// Direct series for `|z| ≤ 1/2` (terms shrink at least geometrically with
/// ratio 1/2).
fn li2_series_complex(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let eps = series_eps(ctx);
    let mut acc = Complex::zero();
    let mut pow = z.clone();
    let mut n: u64 = 1;
    let cap = iteration_cap(ctx);
    for _ in 0..cap {
        let nsq = Real::from_i64((n * n) as i64, ctx);
        let term = Complex::new(pow.re.div(&nsq, ctx), pow.im.div(&nsq, ctx));
        acc = acc.add(&term, ctx);
        // |tail| <= |pow*z| / (n+1)^2 * 1/(1-|z|) <= 2 |pow|
        let bound = pow.re.abs().add(&pow.im.abs(), ctx);
        if bound.lt(&eps) {
            return Ok(acc);
        }
        pow = pow.mul(z, ctx);
        n += 1;
    }
    Err(Error::PrecisionUnattainable("dilogarithm series did not converge".into()))
}

fn li2_series_real(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let eps = series_eps(ctx);
    let mut acc = Real::zero();
    let mut pow = x.clone();
    let mut n: u64 = 1;
    let cap = iteration_cap(ctx);
    for _ in 0..cap {
        let nsq = Real::from_i64((n * n) as i64, ctx);
        acc = acc.add(&pow.div(&nsq, ctx), ctx);
        if pow.abs().lt(&eps) {
            return Ok(acc);
        }
        pow = pow.mul(x, ctx);
        n += 1;
    }
    Err(Error::PrecisionUnattainable("dilogarithm series did not converge".into()))
}

/// Bernoulli series `Li₂(z) = Σ_{n≥0} B_n u^{n+1} / (n+1)!` with
/// `u = -ln(1-z)`; converges for `|u| < 2π`. Used on the annulus where
/// neither the direct series nor a cheap identity applies; there `|u| ≤ 3.3`.
fn li2_log_series(u: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let eps = series_eps(ctx);
    let u_abs = u.abs(ctx);
    let two_pi = Real::pi(ctx).mul(&Real::from_i64(2, ctx), ctx);
    let q = u_abs.div(&two_pi, ctx).square(ctx); // even-term decay ratio
    if !q.lt(&Real::from_f64(0.9, ctx)) {
        return Err(Error::PrecisionUnattainable("log-series outside region".into()));
    }
    // tail(n) <= |t_n| * q/(1-q) * safety; iterate even n only after n = 1.
    let tail_scale = q
        .div(&Real::one(ctx).sub(&q, ctx), ctx)
        .mul(&Real::from_i64(4, ctx), ctx);

    let mut acc = u.clone(); // n = 0 term: u
    let u_sq = u.square(ctx);
    // n = 1 term: B_1 u^2 / 2! = -u^2/4
    acc = acc.sub(&u_sq.mul_real(&Real::from_f64(0.25, ctx), ctx), ctx);

    let mut pow = u.mul(&u_sq, ctx); // u^{n+1} for n = 2
    let mut fact = BigRational::from_integer(BigInt::from(6)); // (n+1)! = 3!
    let mut n = 2usize;
    let cap = iteration_cap(ctx);
    for _ in 0..cap {
        let coeff = bernoulli(n) / fact.clone();
        let c = Real::from_ratio(&coeff, ctx);
        let term = pow.mul_real(&c, ctx);
        acc = acc.add(&term, ctx);
        let mag = term.re.abs().add(&term.im.abs(), ctx);
        if mag.mul(&tail_scale, ctx).lt(&eps) && !mag.is_zero() {
            return Ok(acc);
        }
        // next even n
        pow = pow.mul(&u_sq, ctx);
        fact *= BigRational::from_integer(BigInt::from((n + 2) * (n + 3)));
        n += 2;
    }
    Err(Error::PrecisionUnattainable("dilogarithm log-series did not converge".into()))
}

fn li2_complex(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let half = Real::from_f64(0.5, ctx);
    let two = Real::from_i64(2, ctx);
    let abs = z.abs(ctx);
    if abs.le(&half) {
        return li2_series_complex(z, ctx);
    }
    let one = Complex::from_i64(1, ctx);
    if abs.gt(&two) || abs.cmp(&two) == std::cmp::Ordering::Equal {
        // Li2(z) = -Li2(1/z) - π²/6 - ln²(-z)/2
        let inv = one.div(z, ctx);
        let main = li2_complex(&inv, ctx)?;
        let ln_neg = z.neg().ln(ctx);
        let corr = ln_neg.square(ctx).mul_real(&half, ctx);
        return Ok(main.neg().sub(&Complex::from_real(pi_sq_over_6(ctx)), ctx).sub(&corr, ctx));
    }
    let one_minus = one.sub(z, ctx);
    if one_minus.abs(ctx).le(&half) {
        // Li2(z) = π²/6 - Li2(1-z) - ln(z)·ln(1-z)
        let main = li2_complex(&one_minus, ctx)?;
        let corr = z.ln(ctx).mul(&one_minus.ln(ctx), ctx);
        return Ok(Complex::from_real(pi_sq_over_6(ctx)).sub(&main, ctx).sub(&corr, ctx));
    }
    let u = one_minus.ln(ctx).neg();
    li2_log_series(&u, ctx)
}

/// Real-axis dilogarithm: returns `(Re, Im, on_cut)`. For `x > 1` the
/// imaginary part is the limit from below, `-π ln x`.
fn li2_real(x: &Real, ctx: &PrecisionContext) -> Result<(Real, Real, bool)> {
    let half = Real::from_f64(0.5, ctx);
    let one = Real::one(ctx);
    let two = Real::from_i64(2, ctx);

    if x.is_zero() {
        return Ok((Real::zero(), Real::zero(), false));
    }
    if x.cmp(&one) == std::cmp::Ordering::Equal {
        return Ok((pi_sq_over_6(ctx), Real::zero(), false));
    }
    if x.abs().le(&half) {
        return Ok((li2_series_real(x, ctx)?, Real::zero(), false));
    }
    if x.gt(&half) && x.lt(&one) {
        // reflection into [0, 1/2)
        let y = one.sub(x, ctx);
        let (main, _, _) = li2_real(&y, ctx)?;
        let corr = x.ln(ctx).mul(&y.ln(ctx), ctx);
        return Ok((pi_sq_over_6(ctx).sub(&main, ctx).sub(&corr, ctx), Real::zero(), false));
    }
    if x.gt(&one) && x.le(&two) {
        // reflection across the cut; Im picks up -π ln x
        let y = one.sub(x, ctx); // in [-1, 0)
        let (main, _, _) = li2_real(&y, ctx)?;
        let re = pi_sq_over_6(ctx)
            .sub(&main, ctx)
            .sub(&x.ln(ctx).mul(&y.abs().ln(ctx), ctx), ctx);
        let im = Real::pi(ctx).mul(&x.ln(ctx), ctx).neg();
        return Ok((re, im, true));
    }
    if x.gt(&two) {
        // inversion across the cut: Re = -Li2(1/x) + π²/3 - ln²x/2
        let (main, _, _) = li2_real(&one.div(x, ctx), ctx)?;
        let ln_x = x.ln(ctx);
        let re = main
            .neg()
            .add(&pi_sq_over_6(ctx).mul(&two, ctx), ctx)
            .sub(&ln_x.square(ctx).mul(&half, ctx), ctx);
        let im = Real::pi(ctx).mul(&ln_x, ctx).neg();
        return Ok((re, im, true));
    }
    // x < -1/2 from here down
    let minus_one = one.neg();
    if x.lt(&minus_one) {
        // real inversion, no branch issues since -x > 1
        let (main, _, _) = li2_real(&one.div(x, ctx), ctx)?;
        let l = x.neg().ln(ctx);
        let re = main
            .neg()
            .sub(&pi_sq_over_6(ctx), ctx)
            .sub(&l.square(ctx).mul(&half, ctx), ctx);
        return Ok((re, Real::zero(), false));
    }
    // x in [-1, -1/2): Landen x -> x/(x-1) in (1/3, 1/2]
    let y = x.div(&x.sub(&one, ctx), ctx);
    let (main, _, _) = li2_real(&y, ctx)?;
    let l = one.sub(x, ctx).ln(ctx);
    let re = main.neg().sub(&l.square(ctx).mul(&half, ctx), ctx);
    Ok((re, Real::zero(), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn near(a: &Real, b: &Real, tol: &Real, c: &PrecisionContext) -> bool {
        a.sub(b, c).abs().lt(tol)
    }

    #[test]
    fn li2_zero_is_zero() {
        let c = ctx();
        let v = li2(&Complex::zero(), &c).unwrap();
        assert!(v.value.re.is_zero() && v.value.im.is_zero());
        assert!(!v.on_cut);
    }

    #[test]
    fn li2_one_is_zeta2() {
        let c = ctx();
        let v = li2(&Complex::from_i64(1, &c), &c).unwrap();
        assert!(near(&v.value.re, &pi_sq_over_6(&c), &c.working_eps(), &c));
        assert!(v.value.im.is_zero());
    }

    #[test]
    fn li2_half_matches_series_oracle() {
        let c = ctx();
        // independent oracle: raw series at 1/2, run to quiescence (equal to
        // the 10^6-term sum at this precision since terms decay as 2^-n)
        let half = Real::from_f64(0.5, &c);
        let mut acc = Real::zero();
        let mut pow = half.clone();
        for n in 1u64..=600 {
            acc = acc.add(&pow.div(&Real::from_i64((n * n) as i64, &c), &c), &c);
            pow = pow.mul(&half, &c);
        }
        let v = li2(&Complex::from_real(half), &c).unwrap();
        assert!(near(&v.value.re, &acc, &c.tolerance(), &c));
        // frozen closed form: π²/12 - ln²2/2
        let closed = pi_sq_over_6(&c)
            .div(&Real::from_i64(2, &c), &c)
            .sub(&Real::from_i64(2, &c).ln(&c).square(&c).div(&Real::from_i64(2, &c), &c), &c);
        assert!(near(&v.value.re, &closed, &c.tolerance(), &c));
    }

    #[test]
    fn li2_on_cut_flagged_with_below_limit() {
        let c = ctx();
        let v = li2(&Complex::from_i64(2, &c), &c).unwrap();
        assert!(v.on_cut);
        // Li2(2 - i0) = π²/4 - iπ ln 2
        let re_expect = Real::pi(&c).square(&c).div(&Real::from_i64(4, &c), &c);
        let im_expect = Real::pi(&c).mul(&Real::from_i64(2, &c).ln(&c), &c).neg();
        assert!(near(&v.value.re, &re_expect, &c.tolerance(), &c));
        assert!(near(&v.value.im, &im_expect, &c.tolerance(), &c));
    }

    #[test]
    fn li2_regions_consistent_with_series_oracle() {
        // points in every transform region, compared against the raw series
        // evaluated at a mapped small argument via the defining identities is
        // circular; instead compare complex evaluation against the real path
        // and against series where it converges.
        let c = ctx();
        for (re, im) in [(0.3, 0.2), (0.9, 0.5), (-1.3, 0.7), (2.5, 1.5), (0.99, 0.01), (0.6, -0.8)] {
            let z = Complex::new(Real::from_f64(re, &c), Real::from_f64(im, &c));
            let v = li2(&z, &c).unwrap().value;
            // conjugation symmetry: Li2(conj z) = conj Li2(z)
            let vc = li2(&z.conj(), &c).unwrap().value;
            assert!(v.dist(&vc.conj(), &c).lt(&c.tolerance()), "conj symmetry at {re},{im}");
        }
    }

    #[test]
    fn bloch_wigner_real_axis_exact_zero() {
        let c = ctx();
        for x in [-3.5, -1.0, -0.2, 0.0, 0.4, 1.0, 2.7] {
            let v = bloch_wigner(&Complex::from_real(Real::from_f64(x, &c)), &c).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn bloch_wigner_at_i_matches_series_oracle() {
        let c = ctx();
        // D(i) = Im Li2(i) = Σ (-1)^k / (2k+1)^2 (Catalan), oracle by
        // alternating pair summation with rigorous truncation
        let mut acc = Real::zero();
        let mut k: i64 = 0;
        while k < 400 {
            let a = Real::from_i64((2 * k + 1) * (2 * k + 1), &c);
            let b = Real::from_i64((2 * k + 3) * (2 * k + 3), &c);
            let pair = Real::one(&c).div(&a, &c).sub(&Real::one(&c).div(&b, &c), &c);
            acc = acc.add(&pair, &c);
            k += 2;
        }
        let v = bloch_wigner(&Complex::i(&c), &c).unwrap();
        // oracle truncation error ~ 1/(2k)^2 ≈ 1.5e-6; assert to that level
        assert!(near(&v, &acc, &Real::from_f64(1e-5, &c), &c));
        // frozen 30-digit value computed from the same oracle at higher depth
        let frozen = Real::parse("0.915965594177219015054603514932", &c).unwrap();
        assert!(near(&v, &frozen, &Real::from_f64(1e-29, &c), &c));
    }

    #[test]
    fn bloch_wigner_zeta6_zeta3_ratio() {
        let c = ctx();
        let z3 = Complex::unit_circle(&Real::from_ratio(&BigRational::new(1.into(), 3.into()), &c), &c);
        let z6 = Complex::unit_circle(&Real::from_ratio(&BigRational::new(1.into(), 6.into()), &c), &c);
        let d3 = bloch_wigner(&z3, &c).unwrap();
        let d6 = bloch_wigner(&z6, &c).unwrap();
        let ratio = d6.div(&d3, &c);
        let expect = Real::from_f64(1.5, &c);
        assert!(near(&ratio, &expect, &Real::pow10(-30, &c), &c));
    }

    #[test]
    fn five_term_relation_random() {
        let c = ctx();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let tol = Real::pow10(-30, &c);
        for _ in 0..50 {
            let z1 = Complex::new(
                Real::from_f64(rng.gen_range(-1.5..1.5), &c),
                Real::from_f64(rng.gen_range(0.05..1.5), &c),
            );
            let z2 = Complex::new(
                Real::from_f64(rng.gen_range(-1.5..1.5), &c),
                Real::from_f64(rng.gen_range(0.05..1.5), &c),
            );
            let one = Complex::from_i64(1, &c);
            let z1z2 = z1.mul(&z2, &c);
            let d = one.sub(&z1z2, &c);
            let a3 = one.sub(&z1, &c).div(&d, &c);
            let a5 = one.sub(&z2, &c).div(&d, &c);
            let mut s = bloch_wigner(&z1, &c).unwrap();
            s = s.add(&bloch_wigner(&z2, &c).unwrap(), &c);
            s = s.add(&bloch_wigner(&a3, &c).unwrap(), &c);
            s = s.add(&bloch_wigner(&d, &c).unwrap(), &c);
            s = s.add(&bloch_wigner(&a5, &c).unwrap(), &c);
            assert!(s.abs().lt(&tol), "five-term residual {:?}", s.to_f64());
        }
    }

    #[test]
    fn precision_doubling_consistency() {
        let c30 = PrecisionContext::new(30).unwrap();
        let c60 = PrecisionContext::new(60).unwrap();
        let z30 = Complex::new(Real::from_f64(0.7, &c30), Real::from_f64(0.9, &c30));
        let z60 = Complex::new(Real::from_f64(0.7, &c60), Real::from_f64(0.9, &c60));
        let d30 = bloch_wigner(&z30, &c30).unwrap();
        let d60 = bloch_wigner(&z60, &c60).unwrap();
        let tol = Real::pow10(-30, &c60);
        assert!(d30.sub(&d60, &c60).abs().lt(&tol));
    }
}
