use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as ZSign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::PrecisionContext;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Finite arbitrary-precision real number.
///
/// Wraps `astro_float::BigFloat`; every operation takes the precision context
/// explicitly and panics if it would produce a NaN or infinity, so neither can
/// escape into downstream arithmetic.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    fn wrap(x: BigFloat) -> Self {
        assert!(!x.is_nan() && !x.is_inf(), "non-finite real produced");
        Real(x)
    }

    pub fn zero() -> Self {
        Real(BigFloat::from_i8(0, 64))
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_i64(1, ctx)
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        Real(BigFloat::from_i64(v, ctx.bits()))
    }

    pub fn from_f64(v: f64, ctx: &PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_f64(v, ctx.bits()))
    }

    pub fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        let nbits = v.bits();
        // from_words wants a normalized fraction: shift so the top bit of the
        // top word is set, then the exponent is the original bit length.
        let (sign, _) = v.to_u64_digits();
        let shifted = v.abs() << ((64 - (nbits % 64)) % 64) as usize;
        let (_, digits) = shifted.to_u64_digits();
        let s = if sign == ZSign::Minus { Sign::Neg } else { Sign::Pos };
        let f = BigFloat::from_words(&digits, s, nbits as astro_float::Exponent);
        let mut out = f;
        out.set_precision(ctx.bits().max(digits.len() * 64), RM)
            .expect("set precision");
        Self::wrap(out)
    }

    pub fn from_ratio(v: &BigRational, ctx: &PrecisionContext) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        let num = Self::from_bigint(v.numer(), ctx);
        let den = Self::from_bigint(v.denom(), ctx);
        num.div(&den, ctx)
    }

    /// Parse a decimal literal ("1.25e-3").
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Option<Self> {
        let t = s.trim();
        if t.is_empty()
            || !t.chars().all(|c| c.is_ascii_digit() || "+-.eE_".contains(c))
        {
            return None;
        }
        let f = with_cc(|cc| BigFloat::parse(t, Radix::Dec, ctx.bits(), RM, cc));
        if f.is_nan() || f.is_inf() {
            None
        } else {
            Some(Real(f))
        }
    }

    /// `10^k` at working precision.
    pub fn pow10(k: i64, ctx: &PrecisionContext) -> Self {
        let ten = Self::from_i64(10, ctx);
        if k >= 0 {
            ten.powi(k as u64, ctx)
        } else {
            Self::one(ctx).div(&ten.powi((-k) as u64, ctx), ctx)
        }
    }

    pub fn pi(ctx: &PrecisionContext) -> Self {
        Self::wrap(with_cc(|cc| cc.pi(ctx.bits(), RM)))
    }

    pub fn add(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        Self::wrap(self.0.add(&rhs.0, ctx.bits(), RM))
    }

    pub fn sub(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        Self::wrap(self.0.sub(&rhs.0, ctx.bits(), RM))
    }

    pub fn mul(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        Self::wrap(self.0.mul(&rhs.0, ctx.bits(), RM))
    }

    pub fn div(&self, rhs: &Self, ctx: &PrecisionContext) -> Self {
        assert!(!rhs.is_zero(), "division by zero real");
        Self::wrap(self.0.div(&rhs.0, ctx.bits(), RM))
    }

    pub fn neg(&self) -> Self {
        Real(self.0.neg())
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqrt(&self, ctx: &PrecisionContext) -> Self {
        assert!(!self.is_negative(), "sqrt of negative real");
        Self::wrap(self.0.sqrt(ctx.bits(), RM))
    }

    pub fn ln(&self, ctx: &PrecisionContext) -> Self {
        assert!(self.is_positive(), "log of non-positive real");
        Self::wrap(with_cc(|cc| self.0.ln(ctx.bits(), RM, cc)))
    }

    pub fn sin(&self, ctx: &PrecisionContext) -> Self {
        Self::wrap(with_cc(|cc| self.0.sin(ctx.bits(), RM, cc)))
    }

    pub fn cos(&self, ctx: &PrecisionContext) -> Self {
        Self::wrap(with_cc(|cc| self.0.cos(ctx.bits(), RM, cc)))
    }

    pub fn atan(&self, ctx: &PrecisionContext) -> Self {
        Self::wrap(with_cc(|cc| self.0.atan(ctx.bits(), RM, cc)))
    }

    /// Principal `atan2(y, x)` with values in `(-π, π]`; `arg` of a negative
    /// real is `+π`.
    pub fn atan2(y: &Self, x: &Self, ctx: &PrecisionContext) -> Self {
        let pi = Self::pi(ctx);
        if x.is_zero() && y.is_zero() {
            return Self::zero();
        }
        if x.is_zero() {
            let half = pi.div(&Self::from_i64(2, ctx), ctx);
            return if y.is_positive() { half } else { half.neg() };
        }
        let base = y.div(x, ctx).atan(ctx);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base.sub(&pi, ctx)
        } else {
            base.add(&pi, ctx)
        }
    }

    pub fn powi(&self, e: u64, ctx: &PrecisionContext) -> Self {
        Self::wrap(self.0.powi(e as usize, ctx.bits(), RM))
    }

    pub fn square(&self, ctx: &PrecisionContext) -> Self {
        self.mul(self, ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn cmp(&self, rhs: &Self) -> Ordering {
        match self.0.cmp(&rhs.0) {
            Some(c) => match c {
                c if c < 0 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            },
            None => unreachable!("finite reals always compare"),
        }
    }

    pub fn lt(&self, rhs: &Self) -> bool {
        self.cmp(rhs) == Ordering::Less
    }

    pub fn gt(&self, rhs: &Self) -> bool {
        self.cmp(rhs) == Ordering::Greater
    }

    pub fn le(&self, rhs: &Self) -> bool {
        self.cmp(rhs) != Ordering::Greater
    }

    pub fn min(&self, rhs: &Self) -> Self {
        if self.lt(rhs) { self.clone() } else { rhs.clone() }
    }

    pub fn max(&self, rhs: &Self) -> Self {
        if self.gt(rhs) { self.clone() } else { rhs.clone() }
    }

    /// Exact value as `m · 2^e` (mantissa and binary exponent). Zero maps to
    /// `(0, 0)`.
    pub fn to_mantissa_exp(&self) -> (BigInt, i64) {
        match self.0.as_raw_parts() {
            Some((words, nbits, sign, exp, _)) => {
                if words.iter().all(|&w| w == 0) {
                    return (BigInt::zero(), 0);
                }
                let mut m = BigInt::from_slice(
                    num_bigint::Sign::Plus,
                    &words
                        .iter()
                        .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                        .collect::<Vec<_>>(),
                );
                if sign == Sign::Neg {
                    m = -m;
                }
                (m, exp as i64 - nbits as i64)
            }
            None => (BigInt::zero(), 0),
        }
    }

    /// Nearest `BigInt` to `self * 2^bits` (round half away from zero).
    pub fn to_scaled_bigint(&self, bits: i64) -> BigInt {
        let (m, e) = self.to_mantissa_exp();
        if m.is_zero() {
            return BigInt::zero();
        }
        let shift = e + bits;
        if shift >= 0 {
            m << shift as usize
        } else {
            let s = (-shift) as usize;
            let half = BigInt::from(1) << (s - 1);
            // round half away from zero; shift floors, so work on |m|
            let neg = m.is_negative();
            let r = (m.abs() + half) >> s;
            if neg {
                -r
            } else {
                r
            }
        }
    }

    /// Nearest integer.
    pub fn round_to_bigint(&self) -> BigInt {
        self.to_scaled_bigint(0)
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.to_mantissa_exp();
        if m.is_zero() {
            return 0.0;
        }
        let bits = m.bits() as i64;
        if bits > 1000 {
            let top = (&m >> (bits - 64) as usize).to_i64().unwrap() as f64;
            return top * 2f64.powi((e + bits - 64) as i32);
        }
        m.to_f64().unwrap_or(0.0) * 2f64.powi(e as i32)
    }

    /// Deterministic decimal rendering with `sig` significant digits.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        let (m, e) = self.to_mantissa_exp();
        if m.is_zero() {
            return format!("0.{}e0", "0".repeat(sig.saturating_sub(1) as usize));
        }
        let neg = m.is_negative();
        let mabs = m.abs();
        // decimal exponent estimate of |self| = mabs * 2^e
        let bits = mabs.bits() as i64 + e;
        let mut dec_exp = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
        // digits = round(|self| * 10^(sig-1-dec_exp)), adjust if off by one
        loop {
            let k = sig as i64 - 1 - dec_exp;
            let scaled = scale_decimal(&mabs, e, k);
            let s = scaled.to_string();
            if s.len() as i64 > sig as i64 {
                dec_exp += 1;
                continue;
            }
            if (s.len() as i64) < sig as i64 {
                dec_exp -= 1;
                continue;
            }
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(&s[..1]);
            out.push('.');
            out.push_str(&s[1..]);
            out.push('e');
            out.push_str(&dec_exp.to_string());
            return out;
        }
    }
}

/// round(mabs * 2^e * 10^k) for nonzero mabs.
fn scale_decimal(mabs: &BigInt, e: i64, k: i64) -> BigInt {
    let mut num = mabs.clone();
    let mut den = BigInt::from(1);
    if k >= 0 {
        num *= BigInt::from(10).pow(k as u32);
    } else {
        den *= BigInt::from(10).pow((-k) as u32);
    }
    if e >= 0 {
        num <<= e as usize;
    } else {
        den <<= (-e) as usize;
    }
    (num * 2 + &den) / (den * 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn basic_arithmetic() {
        let c = ctx();
        let a = Real::from_i64(7, &c);
        let b = Real::from_i64(3, &c);
        let q = a.div(&b, &c);
        let r = q.mul(&b, &c).sub(&a, &c).abs();
        assert!(r.lt(&c.working_eps()));
    }

    #[test]
    fn ratio_roundtrip() {
        let c = ctx();
        let r = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let x = Real::from_ratio(&r, &c);
        assert!(x.to_f64() + 3.1415929 < 1e-6);
    }

    #[test]
    fn bigint_conversion_exact() {
        let c = ctx();
        let v = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let x = Real::from_bigint(&v, &c);
        assert_eq!(x.round_to_bigint(), v);
    }

    #[test]
    fn atan2_quadrants() {
        let c = ctx();
        let one = Real::one(&c);
        let pi = Real::pi(&c);
        // arg(-1 + 0i) = +pi
        let a = Real::atan2(&Real::zero(), &one.neg(), &c);
        assert!(a.sub(&pi, &c).abs().lt(&c.working_eps()));
        // arg(0 - i) = -pi/2
        let b = Real::atan2(&one.neg(), &Real::zero(), &c);
        let mhalf = pi.div(&Real::from_i64(-2, &c), &c);
        assert!(b.sub(&mhalf, &c).abs().lt(&c.working_eps()));
    }

    #[test]
    fn scaled_bigint_rounding() {
        let c = ctx();
        let x = Real::from_f64(2.75, &c);
        assert_eq!(x.to_scaled_bigint(2), BigInt::from(11));
        assert_eq!(x.round_to_bigint(), BigInt::from(3));
        assert_eq!(x.neg().round_to_bigint(), BigInt::from(-3));
    }

    #[test]
    fn decimal_string_deterministic() {
        let c = ctx();
        let pi = Real::pi(&c);
        let s = pi.to_decimal_string(20);
        assert_eq!(s, "3.1415926535897932385e0");
        let tiny = Real::from_f64(-0.001953125, &c);
        assert_eq!(tiny.to_decimal_string(5), "-1.9531e-3");
    }
}
