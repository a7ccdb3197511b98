use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intmat;
use crate::apnum::{Complex, PrecisionContext, Real};

/// Dense univariate polynomial over Q, little-endian coefficients with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q·rhs + r` with `deg r < deg rhs`.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < rhs.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - rhs.coeffs.len() + 1;
        let mut quot = vec![BigRational::zero(); qlen];
        let lead = rhs.leading();
        for shift in (0..qlen).rev() {
            let top = rem[shift + rhs.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let factor = top / lead.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let delta = &factor * b;
                rem[shift + j] -= delta;
            }
            quot[shift] = factor;
        }
        rem.truncate(rhs.coeffs.len() - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(BigRational::one() / lead))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval_q(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real, ctx: &PrecisionContext) -> Real {
        let mut acc = Real::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, ctx).add(&Real::from_ratio(c, ctx), ctx);
        }
        acc
    }

    pub fn eval_complex(&self, z: &Complex, ctx: &PrecisionContext) -> Complex {
        let mut acc = Complex::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, ctx).add(&Complex::from_ratio(c, ctx), ctx);
        }
        acc
    }

    /// Clear denominators: returns (integer polynomial, common denominator).
    pub fn to_integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    /// Number of distinct real roots, by Sturm's theorem (exact).
    pub fn count_real_roots(&self) -> usize {
        assert!(!self.is_zero());
        // squarefree part
        let d = self.derivative();
        if d.is_zero() {
            return if self.degree() == 0 { 0 } else { 1 };
        }
        let g = self.gcd(&d);
        let (f, _) = self.divrem(&g);
        let mut chain = vec![f.clone(), f.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain.pop();
        let sign_at_inf = |p: &QPoly, positive: bool| -> i32 {
            let lead = p.leading();
            let mut s = if lead.is_positive() { 1 } else { -1 };
            if !positive && p.degree() % 2 == 1 {
                s = -s;
            }
            s
        };
        let changes = |positive: bool| -> usize {
            let mut count = 0;
            let mut prev = 0i32;
            for p in &chain {
                if p.is_zero() {
                    continue;
                }
                let s = sign_at_inf(p, positive);
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
            count
        };
        changes(false) - changes(true)
    }
}

/// Resultant of two integer polynomials via the Sylvester matrix and exact
/// fraction-free elimination. `Res(f, g) = Π g(α_i)` when `f` is monic.
pub fn resultant_int(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let m = g.len() - 1;
    if n == 0 {
        // constant f
        return f[0].pow(m as u32);
    }
    if m == 0 {
        return g[0].pow(n as u32);
    }
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (j, c) in f.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in g.iter().rev().enumerate() {
            mat[m + row][row + j] = c.clone();
        }
    }
    intmat::determinant(&mat)
}

/// Discriminant of a monic integer polynomial:
/// `(-1)^{n(n-1)/2} Res(f, f')`.
pub fn discriminant_int(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let deriv: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let res = resultant_int(f, &deriv);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// `Φ_m`, the m-th cyclotomic polynomial (exact, via recursive division).
pub fn cyclotomic(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut poly = QPoly::from_int_coeffs(&num);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = QPoly::from_int_coeffs(&cyclotomic(d));
            let (q, r) = poly.divrem(&phi_d);
            assert!(r.is_zero());
            poly = q;
        }
    }
    poly.coeffs().iter().map(|c| c.numer().clone()).collect()
}

/// Minimal polynomial of `2cos(2π/m)` over Q (monic, integer coefficients).
///
/// For `m ≥ 3` it comes from the palindromic cyclotomic polynomial written in
/// the basis `P_k(y) = x^k + x^{-k}` with `y = x + x^{-1}`.
pub fn real_cyclotomic_min_poly(m: u64) -> Vec<BigInt> {
    match m {
        1 => return vec![BigInt::from(-2), BigInt::one()],
        2 => return vec![BigInt::from(2), BigInt::one()],
        _ => {}
    }
    let phi = cyclotomic(m);
    let d = (phi.len() - 1) / 2;
    // P_0 = 2, P_1 = y, P_{k+1} = y P_k - P_{k-1}
    let mut p_prev = QPoly::constant(BigRational::from_integer(BigInt::from(2)));
    let mut p_cur = QPoly::x();
    let mut acc = QPoly::constant(BigRational::from_integer(phi[d].clone()));
    for k in 1..=d {
        acc = acc.add(&p_cur.scale(&BigRational::from_integer(phi[d + k].clone())));
        let next = QPoly::x().mul(&p_cur).sub(&p_prev);
        p_prev = p_cur;
        p_cur = next;
    }
    acc.coeffs().iter().map(|c| c.numer().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn divrem_and_gcd() {
        let f = QPoly::from_int_coeffs(&zp(&[-1, 0, 1])); // x^2 - 1
        let g = QPoly::from_int_coeffs(&zp(&[-1, 1])); // x - 1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_int_coeffs(&zp(&[1, 1])));
        assert_eq!(f.gcd(&g), g);
    }

    #[test]
    fn sturm_counts() {
        // x^3 + x^2 + x + 2: one real root
        let f = QPoly::from_int_coeffs(&zp(&[2, 1, 1, 1]));
        assert_eq!(f.count_real_roots(), 1);
        // x^4 - 2x^2 + x + 1: two real roots
        let g = QPoly::from_int_coeffs(&zp(&[1, 1, -2, 0, 1]));
        assert_eq!(g.count_real_roots(), 2);
        // x^2 + 1: none
        let h = QPoly::from_int_coeffs(&zp(&[1, 0, 1]));
        assert_eq!(h.count_real_roots(), 0);
        // (x-1)^2 (x+2): two distinct
        let k = QPoly::from_int_coeffs(&zp(&[2, -3, 0, 1]));
        assert_eq!(k.count_real_roots(), 2);
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_int(&zp(&[2, 1, 1, 1])), BigInt::from(-83));
        assert_eq!(discriminant_int(&zp(&[2, -1, -1, 1])), BigInt::from(-59));
        assert_eq!(discriminant_int(&zp(&[2, -1, 0, 1])), BigInt::from(-104));
        assert_eq!(discriminant_int(&zp(&[1, 1, -2, 0, 1])), BigInt::from(-283));
        assert_eq!(discriminant_int(&zp(&[-1, 0, 0, 1, 1])), BigInt::from(-283));
        // disc(Φ5) = 125
        assert_eq!(discriminant_int(&cyclotomic(5)), BigInt::from(125));
    }

    #[test]
    fn norm_via_resultant() {
        // N(alpha) for monic cubic f = x^3+x^2+x+2 is (-1)^3 f(0) = -2
        let f = zp(&[2, 1, 1, 1]);
        let g = zp(&[0, 1]); // alpha
        assert_eq!(resultant_int(&f, &g), BigInt::from(-2));
        // N(1 - alpha) = f(1) for monic cubic... resultant gives product g(roots)
        let g2 = zp(&[1, -1]); // 1 - x
        assert_eq!(resultant_int(&f, &g2), BigInt::from(5)); // f(1) = 5
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), zp(&[-1, 1]));
        assert_eq!(cyclotomic(5), zp(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), zp(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), zp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn real_cyclotomic_minimal_polys() {
        // 2cos(2pi/5) has minimal polynomial y^2 + y - 1
        assert_eq!(real_cyclotomic_min_poly(5), zp(&[-1, 1, 1]));
        // 2cos(2pi/8) = sqrt(2): y^2 - 2
        assert_eq!(real_cyclotomic_min_poly(8), zp(&[-2, 0, 1]));
        // 2cos(2pi/3) = -1: y + 1
        assert_eq!(real_cyclotomic_min_poly(3), zp(&[1, 1]));
        // 2cos(2pi/4) = 0: y
        assert_eq!(real_cyclotomic_min_poly(4), zp(&[0, 1]));
        // 2cos(2pi/7): y^3 + y^2 - 2y - 1
        assert_eq!(real_cyclotomic_min_poly(7), zp(&[-1, -2, 1, 1]));
    }
}
