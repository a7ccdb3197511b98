use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{hurwitz_zeta2_with_bound, Complex, PrecisionContext, Real};
use crate::{Error, Result};

/// Parity of a Dirichlet character: `χ(-1) = +1` (even) or `-1` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Dirichlet character mod `q`, stored as exponents over fixed generators of
/// `(Z/q)^×`. Values are exact roots of unity; they only become approximate
/// at the final numeric evaluation.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    generator_orders: Vec<u64>,
    exponents: Vec<u64>,
    /// residue -> generator-exponent tuple, for every unit mod q
    dlog: HashMap<u64, Vec<u64>>,
    order: u64,
    parity: Parity,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let pk = p.pow(k);
    let phi = pk / p * (p - 1);
    let factors = factorize(phi);
    'g: for g in 2..pk {
        if g % p == 0 {
            continue;
        }
        for &(f, _) in &factors {
            if pow_mod(g, phi / f, pk) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("primitive root exists for odd prime powers")
}

/// CRT lift: x ≡ r (mod m), x ≡ 1 (mod q/m).
fn crt_lift(r: u64, m: u64, q: u64) -> u64 {
    let rest = q / m;
    if rest == 1 {
        return r % m;
    }
    let e = BigInt::from(m).extended_gcd(&BigInt::from(rest));
    // 1 = x*m + y*rest: combine r over m with 1 over rest
    let q_big = BigInt::from(q);
    let mut v = (BigInt::from(r) * &e.y * BigInt::from(rest) + &e.x * BigInt::from(m)) % &q_big;
    if v.is_negative() {
        v += &q_big;
    }
    v.to_u64().unwrap()
}

/// Generators of `(Z/q)^×` with their orders, CRT-lifted mod `q`.
fn unit_group_generators(q: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, k) in factorize(q) {
        if p == 2 {
            match k {
                1 => {}
                2 => gens.push((crt_lift(3, 4, q), 2)),
                _ => {
                    let m = 2u64.pow(k);
                    gens.push((crt_lift(m - 1, m, q), 2));
                    gens.push((crt_lift(3, m, q), 2u64.pow(k - 2)));
                }
            }
        } else {
            let m = p.pow(k);
            gens.push((crt_lift(primitive_root_prime_power(p, k), m, q), m / p * (p - 1)));
        }
    }
    gens
}

fn dlog_table(q: u64, gens: &[(u64, u64)]) -> HashMap<u64, Vec<u64>> {
    let mut table = HashMap::new();
    let total: u64 = gens.iter().map(|g| g.1).product::<u64>().max(1);
    for idx in 0..total {
        let mut rem = idx;
        let mut tuple = Vec::with_capacity(gens.len());
        let mut value: u64 = 1 % q.max(1);
        for &(g, ord) in gens {
            let k = rem % ord;
            rem /= ord;
            tuple.push(k);
            value = (value as u128 * pow_mod(g, k, q) as u128 % q.max(1) as u128) as u64;
        }
        table.insert(value, tuple);
    }
    table
}

impl DirichletCharacter {
    /// The trivial (principal) character mod `q`.
    pub fn trivial(q: u64) -> Result<Self> {
        let n = unit_group_generators(Self::check_modulus(q)?).len();
        Self::from_exponents(q, &vec![0; n])
    }

    /// Character defined by exponents on the canonical generators of
    /// `(Z/q)^×`: `χ(g_i) = e^(2πi e_i / ord(g_i))`.
    pub fn from_exponents(q: u64, exponents: &[u64]) -> Result<Self> {
        let q = Self::check_modulus(q)?;
        let gens = unit_group_generators(q);
        if gens.len() != exponents.len() {
            return Err(Error::MalformedInput(format!(
                "modulus {q} needs {} exponents, got {}",
                gens.len(),
                exponents.len()
            )));
        }
        let exps: Vec<u64> = gens
            .iter()
            .zip(exponents)
            .map(|(&(_, ord), e)| e % ord)
            .collect();
        let mut order = 1u64;
        for (&(_, ord), e) in gens.iter().zip(&exps) {
            order = order.lcm(&(ord / ord.gcd(e)));
        }
        let mut chi = DirichletCharacter {
            modulus: q,
            generator_orders: gens.iter().map(|g| g.1).collect(),
            exponents: exps,
            dlog: dlog_table(q, &gens),
            order,
            parity: Parity::Even,
        };
        if q > 2 {
            let t = chi.exponent_at(q - 1).expect("-1 is a unit");
            chi.parity = if t == BigRational::new(BigInt::one(), BigInt::from(2)) {
                Parity::Odd
            } else {
                Parity::Even
            };
        }
        Ok(chi)
    }

    /// The quadratic character mod 3 (`χ₃(2) = -1`).
    pub fn chi3() -> Self {
        Self::from_exponents(3, &[1]).unwrap()
    }

    /// The nontrivial character mod 6 (`χ₆(5) = -1`).
    pub fn chi6() -> Self {
        Self::from_exponents(6, &[1]).unwrap()
    }

    fn check_modulus(q: u64) -> Result<u64> {
        if q == 0 || q > 100_000 {
            return Err(Error::MalformedInput(format!("unsupported modulus {q}")));
        }
        Ok(q)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Real-valued characters have order ≤ 2.
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// `χ(a) = e^(2πi t)`: the exact rational `t ∈ [0, 1)`, or `None` when
    /// `gcd(a, q) > 1`.
    pub fn exponent_at(&self, a: u64) -> Option<BigRational> {
        if self.modulus == 1 {
            return Some(BigRational::zero());
        }
        let tuple = self.dlog.get(&(a % self.modulus))?;
        let mut t = BigRational::zero();
        for ((k, e), ord) in tuple
            .iter()
            .zip(&self.exponents)
            .zip(&self.generator_orders)
        {
            t += BigRational::new(BigInt::from(k * e), BigInt::from(*ord));
        }
        let fl = t.floor();
        Some(t - fl)
    }

    /// Numeric value `χ(a)` at context precision (0 when `gcd(a, q) > 1`).
    pub fn eval(&self, a: u64, ctx: &PrecisionContext) -> Complex {
        match self.exponent_at(a) {
            None => Complex::zero(),
            Some(t) => {
                if t.is_zero() {
                    Complex::from_i64(1, ctx)
                } else if t == BigRational::new(BigInt::one(), BigInt::from(2)) {
                    Complex::from_i64(-1, ctx)
                } else {
                    Complex::unit_circle(&Real::from_ratio(&t, ctx), ctx)
                }
            }
        }
    }
}

/// Enumerate all `φ(q)` characters mod `q` in a deterministic order.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    let gens = unit_group_generators(DirichletCharacter::check_modulus(q)?);
    let orders: Vec<u64> = gens.iter().map(|g| g.1).collect();
    let total: u64 = orders.iter().product::<u64>().max(1);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rem = idx;
        let mut exps = Vec::with_capacity(orders.len());
        for o in &orders {
            exps.push(rem % o);
            rem /= o;
        }
        out.push(DirichletCharacter::from_exponents(q, &exps)?);
    }
    Ok(out)
}

/// `L(χ, 2) = q^{-2} Σ_{a=1}^{q} χ(a) ζ(2, a/q)`, with real output forced for
/// real characters.
pub fn dirichlet_l2(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Complex> {
    dirichlet_l2_with_bound(chi, ctx).map(|(v, _)| v)
}

/// Same, plus a rigorous error bound inherited from the Hurwitz evaluations.
pub fn dirichlet_l2_with_bound(
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<(Complex, Real)> {
    let q = chi.modulus();
    if q == 1 {
        let (z2, b) = hurwitz_zeta2_with_bound(&BigRational::one(), ctx)?;
        return Ok((Complex::from_real(z2), b));
    }
    let mut acc = Complex::zero();
    let mut err = Real::zero();
    for a in 1..=q {
        let t = match chi.exponent_at(a) {
            None => continue,
            Some(t) => t,
        };
        let x = BigRational::new(BigInt::from(a), BigInt::from(q));
        let (z, b) = hurwitz_zeta2_with_bound(&x, ctx)?;
        let value = if t.is_zero() {
            Complex::from_real(z)
        } else if t == BigRational::new(BigInt::one(), BigInt::from(2)) {
            Complex::from_real(z.neg())
        } else {
            Complex::unit_circle(&Real::from_ratio(&t, ctx), ctx).mul_real(&z, ctx)
        };
        acc = acc.add(&value, ctx);
        err = err.add(&b, ctx);
    }
    let qsq = Real::from_i64((q * q) as i64, ctx);
    let mut out = Complex::new(acc.re.div(&qsq, ctx), acc.im.div(&qsq, ctx));
    if chi.is_real() {
        out = Complex::from_real(out.re);
    }
    Ok((out, err.div(&qsq, ctx).add(&ctx.working_eps(), ctx)))
}
