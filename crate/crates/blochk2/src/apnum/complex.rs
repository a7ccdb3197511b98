use num_rational::BigRational;

use super::{PrecisionContext, Real};

/// Finite arbitrary-precision complex number.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex { re: Real::zero(), im: Real::zero() }
    }

    pub fn from_real(re: Real) -> Self {
        Complex { re, im: Real::zero() }
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        Self::from_real(Real::from_i64(v, ctx))
    }

    pub fn from_ratio(v: &BigRational, ctx: &PrecisionContext) -> Self {
        Self::from_real(Real::from_ratio(v, ctx))
    }

    pub fn i(ctx: &PrecisionContext) -> Self {
        Complex { re: Real::zero(), im: Real::one(ctx) }
    }

    /// `e^(2πi t)` for real `t`.
    pub fn unit_circle(t: &Real, ctx: &PrecisionContext) -> Self {
        let two_pi = Real::pi(ctx).mul(&Real::from_i64(2, ctx), ctx);
        let theta = two_pi.mul(t, ctx);
        Complex { re: theta.cos(ctx), im: theta.sin(ctx) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        Complex {
            re: self.re.add(&rhs.re, ctx),
            im: self.im.add(&rhs.im, ctx),
        }
    }

    pub fn sub(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        Complex {
            re: self.re.sub(&rhs.re, ctx),
            im: self.im.sub(&rhs.im, ctx),
        }
    }

    pub fn mul(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        let re = self.re.mul(&rhs.re, ctx).sub(&self.im.mul(&rhs.im, ctx), ctx);
        let im = self.re.mul(&rhs.im, ctx).add(&self.im.mul(&rhs.re, ctx), ctx);
        Complex { re, im }
    }

    pub fn mul_real(&self, rhs: &Real, ctx: &PrecisionContext) -> Self {
        Complex { re: self.re.mul(rhs, ctx), im: self.im.mul(rhs, ctx) }
    }

    pub fn div(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        let d = rhs.norm_sq(ctx);
        assert!(!d.is_zero(), "division by zero complex");
        let num = self.mul(&rhs.conj(), ctx);
        Complex { re: num.re.div(&d, ctx), im: num.im.div(&d, ctx) }
    }

    pub fn norm_sq(&self, ctx: &PrecisionContext) -> Real {
        self.re.square(ctx).add(&self.im.square(ctx), ctx)
    }

    pub fn abs(&self, ctx: &PrecisionContext) -> Real {
        self.norm_sq(ctx).sqrt(ctx)
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self, ctx: &PrecisionContext) -> Real {
        Real::atan2(&self.im, &self.re, ctx)
    }

    /// `log|z|` without the intermediate square root.
    pub fn ln_abs(&self, ctx: &PrecisionContext) -> Real {
        self.norm_sq(ctx)
            .ln(ctx)
            .div(&Real::from_i64(2, ctx), ctx)
    }

    /// Principal logarithm `ln|z| + i arg z`.
    pub fn ln(&self, ctx: &PrecisionContext) -> Self {
        assert!(!self.is_zero(), "log of zero");
        Complex { re: self.ln_abs(ctx), im: self.arg(ctx) }
    }

    pub fn square(&self, ctx: &PrecisionContext) -> Self {
        self.mul(self, ctx)
    }

    pub fn powi(&self, e: i64, ctx: &PrecisionContext) -> Self {
        if e == 0 {
            return Complex::from_i64(1, ctx);
        }
        let mut base = if e < 0 {
            Complex::from_i64(1, ctx).div(self, ctx)
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Complex> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, ctx),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.square(ctx);
            }
        }
        acc.unwrap()
    }

    /// max(|Δre|, |Δim|) against another value.
    pub fn dist(&self, rhs: &Self, ctx: &PrecisionContext) -> Real {
        let dr = self.re.sub(&rhs.re, ctx).abs();
        let di = self.im.sub(&rhs.im, ctx).abs();
        dr.max(&di)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_div_roundtrip() {
        let c = PrecisionContext::default();
        let a = Complex::new(Real::from_f64(1.5, &c), Real::from_f64(-2.25, &c));
        let b = Complex::new(Real::from_f64(0.375, &c), Real::from_f64(4.0, &c));
        let r = a.mul(&b, &c).div(&b, &c);
        assert!(r.dist(&a, &c).lt(&c.working_eps()));
    }

    #[test]
    fn unit_circle_sixth_root() {
        let c = PrecisionContext::default();
        let t = Real::from_ratio(&BigRational::new(1.into(), 6.into()), &c);
        let z = Complex::unit_circle(&t, &c);
        let z6 = z.powi(6, &c);
        assert!(z6.dist(&Complex::from_i64(1, &c), &c).lt(&c.tolerance()));
    }

    #[test]
    fn principal_log() {
        let c = PrecisionContext::default();
        let z = Complex::from_i64(-1, &c);
        let l = z.ln(&c);
        assert!(l.re.abs().lt(&c.working_eps()));
        assert!(l.im.sub(&Real::pi(&c), &c).abs().lt(&c.working_eps()));
    }
}
