use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{FieldElement, NumberField};
use crate::apnum::{Complex, PrecisionContext, Real};
use crate::{Error, Result};

/// One archimedean place: real embeddings carry `im = 0` exactly; complex
/// places store the representative with positive imaginary part.
#[derive(Clone, Debug)]
pub struct Place {
    pub value: Complex,
    pub is_real: bool,
}

pub(super) fn places(field: &NumberField, ctx: &PrecisionContext) -> Result<Arc<Vec<Place>>> {
    let bits = ctx.bits();
    {
        let cache = field.places_cache().lock().unwrap();
        if let Some(hit) = cache.get(&bits) {
            return Ok(Arc::clone(hit));
        }
    }
    let computed = Arc::new(compute_places(field, ctx)?);
    field
        .places_cache()
        .lock()
        .unwrap()
        .insert(bits, Arc::clone(&computed));
    Ok(computed)
}

pub(super) fn eval_embedding(
    field: &NumberField,
    x: &FieldElement,
    j: usize,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    if j >= field.num_places() {
        return Err(Error::BadEmbeddingIndex(j));
    }
    if let Some(q) = x.is_rational() {
        return Ok(Complex::from_ratio(&q, ctx));
    }
    let places = places(field, ctx)?;
    let place = &places[j];
    if place.is_real {
        // keep the imaginary part exactly zero
        let mut acc = Real::zero();
        for c in x.coords().iter().rev() {
            acc = acc.mul(&place.value.re, ctx).add(&Real::from_ratio(c, ctx), ctx);
        }
        Ok(Complex::from_real(acc))
    } else {
        let mut acc = Complex::zero();
        for c in x.coords().iter().rev() {
            acc = acc.mul(&place.value, ctx).add(&Complex::from_ratio(c, ctx), ctx);
        }
        Ok(acc)
    }
}

fn compute_places(field: &NumberField, ctx: &PrecisionContext) -> Result<Vec<Place>> {
    if field.degree() == 1 {
        let root = -BigInt::from(0) - &field.poly()[0];
        return Ok(vec![Place {
            value: Complex::from_real(Real::from_bigint(&root, ctx)),
            is_real: true,
        }]);
    }
    let mut attempt_ctx = ctx.clone();
    for _ in 0..3 {
        match try_compute_places(field, &attempt_ctx, ctx) {
            Ok(places) => return Ok(places),
            Err(Error::PrecisionUnattainable(_)) => {
                attempt_ctx = attempt_ctx.doubled();
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionUnattainable(
        "root refinement failed after precision retries".into(),
    ))
}

fn try_compute_places(
    field: &NumberField,
    work: &PrecisionContext,
    report: &PrecisionContext,
) -> Result<Vec<Place>> {
    let n = field.degree();
    let (r1, r2) = field.signature();
    let roots = raw_roots_ctx(field.poly(), work)?;

    // classify: the r1 smallest |Im| are the real roots (certified counts by
    // Sturm at field creation)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        roots[a]
            .im
            .abs()
            .cmp(&roots[b].im.abs())
            .then(roots[a].re.cmp(&roots[b].re))
    });
    let threshold = Real::pow10(-(work.digits() as i64) / 2, work);
    let mut reals: Vec<Real> = Vec::with_capacity(r1);
    for &i in order.iter().take(r1) {
        if !roots[i].im.abs().lt(&threshold) {
            return Err(Error::PrecisionUnattainable(
                "real/complex classification unstable".into(),
            ));
        }
        // polish on the real axis so the place is exactly real
        reals.push(newton_real(field.poly(), &roots[i].re, work)?);
    }
    let mut complexes: Vec<Complex> = Vec::new();
    for &i in order.iter().skip(r1) {
        if roots[i].im.abs().lt(&threshold) {
            return Err(Error::PrecisionUnattainable(
                "real/complex classification unstable".into(),
            ));
        }
        if roots[i].im.is_positive() {
            complexes.push(roots[i].clone());
        }
    }
    if complexes.len() != r2 {
        return Err(Error::PrecisionUnattainable(
            "conjugate pairing failed".into(),
        ));
    }

    reals.sort_by(|a, b| a.cmp(b));
    complexes.sort_by(|a, b| a.im.cmp(&b.im).then(a.re.cmp(&b.re)));

    // separation check at reporting precision
    let sep = report.tolerance();
    let all: Vec<Complex> = reals
        .iter()
        .map(|r| Complex::from_real(r.clone()))
        .chain(complexes.iter().cloned())
        .collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i].dist(&all[j], work).lt(&sep) {
                return Err(Error::PrecisionUnattainable(
                    "embeddings not separated at working precision".into(),
                ));
            }
        }
    }

    let mut out: Vec<Place> = reals
        .into_iter()
        .map(|r| Place { value: Complex::from_real(round_to(&r, report)), is_real: true })
        .collect();
    out.extend(complexes.into_iter().map(|z| Place {
        value: Complex::new(round_to(&z.re, report), round_to(&z.im, report)),
        is_real: false,
    }));
    Ok(out)
}

fn round_to(x: &Real, ctx: &PrecisionContext) -> Real {
    // re-round through the context (only shrinks precision)
    x.add(&Real::zero(), ctx)
}

/// All complex roots at working precision (used by irreducibility checks and
/// embeddings; conjugates included).
pub(crate) fn raw_roots(coeffs: &[BigInt], ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    raw_roots_ctx(coeffs, ctx)
}

fn raw_roots_ctx(coeffs: &[BigInt], ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    let seeds = durand_kerner_f64(coeffs)?;
    seeds
        .into_iter()
        .map(|s| newton_complex(coeffs, s, ctx))
        .collect()
}

fn durand_kerner_f64(coeffs: &[BigInt]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let cf: Vec<f64> = coeffs
        .iter()
        .map(|c| c.to_f64().ok_or_else(|| Error::PrecisionUnattainable("coefficient overflow".into())))
        .collect::<Result<_>>()?;
    if cf.iter().any(|c| !c.is_finite()) {
        return Err(Error::PrecisionUnattainable("coefficient overflow".into()));
    }
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in cf.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let radius = 1.0 + cf.iter().take(n).map(|c| c.abs()).fold(0.0f64, f64::max);
    let offset = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            offset * radius * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        })
        .collect();
    for _ in 0..400 {
        let mut max_delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                return Err(Error::PrecisionUnattainable("coincident iteration points".into()));
            }
            let delta = eval(zs[i]) / denom;
            zs[i] -= delta;
            max_delta = max_delta.max(delta.norm());
        }
        if max_delta < 1e-13 {
            break;
        }
    }
    Ok(zs)
}

fn newton_complex(coeffs: &[BigInt], seed: Complex64, ctx: &PrecisionContext) -> Result<Complex> {
    let n = coeffs.len() - 1;
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let evalf = |z: &Complex, cs: &[BigInt]| -> Complex {
        let mut acc = Complex::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(z, ctx).add(&Complex::from_real(Real::from_bigint(c, ctx)), ctx);
        }
        acc
    };
    let mut z = Complex::new(Real::from_f64(seed.re, ctx), Real::from_f64(seed.im, ctx));
    let iters = 4 + (ctx.bits() as f64 / 40.0).log2().ceil().max(0.0) as usize;
    for _ in 0..(2 * iters + 8) {
        let f = evalf(&z, coeffs);
        let d = evalf(&z, &deriv);
        if d.is_zero() {
            return Err(Error::PrecisionUnattainable("derivative vanished".into()));
        }
        let step = f.div(&d, ctx);
        z = z.sub(&step, ctx);
        let scale = z.abs(ctx).add(&Real::one(ctx), ctx);
        if step.abs(ctx).lt(&ctx.working_eps().mul(&scale, ctx)) {
            // converged; one more polish step
            let f2 = evalf(&z, coeffs);
            let d2 = evalf(&z, &deriv);
            z = z.sub(&f2.div(&d2, ctx), ctx);
            let _ = n;
            return Ok(z);
        }
    }
    Err(Error::PrecisionUnattainable("Newton refinement did not converge".into()))
}

fn newton_real(coeffs: &[BigInt], seed: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let evalf = |x: &Real, cs: &[BigInt]| -> Real {
        let mut acc = Real::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(x, ctx).add(&Real::from_bigint(c, ctx), ctx);
        }
        acc
    };
    let mut x = seed.clone();
    for _ in 0..ctx.bits() {
        let f = evalf(&x, coeffs);
        let d = evalf(&x, &deriv);
        if d.is_zero() {
            return Err(Error::PrecisionUnattainable("derivative vanished".into()));
        }
        let step = f.div(&d, ctx);
        x = x.sub(&step, ctx);
        let scale = x.abs().add(&Real::one(ctx), ctx);
        if step.abs().lt(&ctx.working_eps().mul(&scale, ctx)) {
            let f2 = evalf(&x, coeffs);
            let d2 = evalf(&x, &deriv);
            return Ok(x.sub(&f2.div(&d2, ctx), ctx));
        }
    }
    Err(Error::PrecisionUnattainable("Newton refinement did not converge".into()))
}
