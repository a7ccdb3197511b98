//! Exact number field arithmetic: `F = Q[x]/(f)` with certified signature,
//! discriminant, embeddings, and the recognition primitives the Bloch-group
//! machinery builds on.

mod element;
mod embeddings;
mod recognize;

pub use element::FieldElement;
pub use embeddings::Place;
pub use recognize::{find_element_matching_value, real_cyclotomic_membership};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::apnum::{Complex, PrecisionContext};
use crate::exact::modp::{self, PolyP};
use crate::exact::poly::{self, QPoly};
use crate::exact::primes;
use crate::{Error, Result};

/// Per-prime record of the Dedekind maximality test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaximalityRecord {
    pub prime: u64,
    pub passed: bool,
}

/// A number field `Q[x]/(f)` with exact invariants and cached numerics.
pub struct NumberField {
    poly: Vec<BigInt>,
    degree: usize,
    r1: usize,
    r2: usize,
    disc: BigInt,
    poly_disc: BigInt,
    /// primes dividing the index `[O_F : Z[alpha]]` (nonempty only with a
    /// discriminant override)
    index_primes: Vec<u64>,
    maximality: Vec<MaximalityRecord>,
    /// reduction rows: coordinates of alpha^(n+k) for k = 0..n-2
    power_rows: Vec<Vec<BigRational>>,
    places_cache: Mutex<BTreeMap<usize, Arc<Vec<Place>>>>,
    torsion_cache: Mutex<Option<(FieldElement, u32)>>,
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumberField")
            .field("poly", &self.poly)
            .field("signature", &(self.r1, self.r2))
            .field("disc", &self.disc)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}
impl Eq for NumberField {}

/// Exact field creation: verifies monicity and irreducibility, computes the
/// signature by Sturm's theorem, the discriminant, and runs Dedekind's
/// criterion at every prime whose square divides the polynomial
/// discriminant.
pub fn create_field(coeffs: &[BigInt]) -> Result<NumberField> {
    create_field_with_override(coeffs, None)
}

pub fn create_field_with_override(
    coeffs: &[BigInt],
    disc_override: Option<BigInt>,
) -> Result<NumberField> {
    let n = coeffs.len().saturating_sub(1);
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if coeffs.last() != Some(&BigInt::one()) {
        return Err(Error::NonMonicPolynomial);
    }
    let poly_disc = poly::discriminant_int(coeffs);
    if poly_disc.is_zero() {
        return Err(Error::ReduciblePolynomial("repeated factor".into()));
    }
    certify_irreducible(coeffs)?;

    let q = QPoly::from_int_coeffs(coeffs);
    let r1 = q.count_real_roots();
    let r2 = (n - r1) / 2;
    debug_assert_eq!(r1 + 2 * r2, n);

    // Dedekind's criterion at primes with p^2 | disc(f)
    let mut maximality = Vec::new();
    let mut all_pass = true;
    for p in square_primes(&poly_disc)? {
        let passed = dedekind_at(coeffs, p);
        maximality.push(MaximalityRecord { prime: p, passed });
        all_pass &= passed;
    }

    let (disc, index_primes) = match disc_override {
        None => {
            if let Some(rec) = maximality.iter().find(|r| !r.passed) {
                return Err(Error::NonMaximalOrder(rec.prime));
            }
            (poly_disc.clone(), Vec::new())
        }
        Some(d) => {
            if d == poly_disc {
                (poly_disc.clone(), Vec::new())
            } else {
                let ratio = exact_div(&poly_disc, &d)
                    .ok_or(Error::BadDiscriminantOverride)?;
                let index = perfect_sqrt(&ratio).ok_or(Error::BadDiscriminantOverride)?;
                if all_pass {
                    // Z[alpha] is maximal, so a differing override is wrong
                    return Err(Error::BadDiscriminantOverride);
                }
                let mut ips = Vec::new();
                for p in square_primes(&poly_disc)? {
                    if (&index % BigInt::from(p)).is_zero() {
                        ips.push(p);
                    }
                }
                (d, ips)
            }
        }
    };

    Ok(NumberField {
        poly: coeffs.to_vec(),
        degree: n,
        r1,
        r2,
        disc,
        poly_disc,
        index_primes,
        maximality,
        power_rows: power_rows(coeffs),
        places_cache: Mutex::new(BTreeMap::new()),
        torsion_cache: Mutex::new(None),
    })
}

impl NumberField {
    /// The rational field as a degree-1 edge case (defining polynomial `x`),
    /// for operations like the zeta sieve that make sense over Q.
    pub fn rationals() -> NumberField {
        NumberField {
            poly: vec![BigInt::zero(), BigInt::one()],
            degree: 1,
            r1: 1,
            r2: 0,
            disc: BigInt::one(),
            poly_disc: BigInt::one(),
            index_primes: Vec::new(),
            maximality: Vec::new(),
            power_rows: Vec::new(),
            places_cache: Mutex::new(BTreeMap::new()),
            torsion_cache: Mutex::new(None),
        }
    }

    /// `Q(ζ_p)` for an odd prime `p`.
    pub fn cyclotomic(p: u64) -> Result<NumberField> {
        if p < 3 || !primes::is_prime_u128(p as u128) {
            return Err(Error::PrimeOutOfRange(p));
        }
        let field = create_field(&poly::cyclotomic(p))?;
        // |d_F| = p^(p-2) for prime cyclotomics
        debug_assert_eq!(field.disc.abs(), BigInt::from(p).pow((p - 2) as u32));
        Ok(field)
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    /// Field discriminant.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn maximality_certificate(&self) -> &[MaximalityRecord] {
        &self.maximality
    }

    pub fn index_primes(&self) -> &[u64] {
        &self.index_primes
    }

    /// If the defining polynomial is `Φ_p` for a prime `p`, returns `p`.
    pub fn cyclotomic_prime(&self) -> Option<u64> {
        let p = self.degree as u64 + 1;
        if !primes::is_prime_u128(p as u128) {
            return None;
        }
        if self.poly.iter().all(|c| c.is_one()) {
            Some(p)
        } else {
            None
        }
    }

    pub(crate) fn power_reduction(&self, k: usize) -> &[BigRational] {
        &self.power_rows[k]
    }

    pub(crate) fn places_cache(&self) -> &Mutex<BTreeMap<usize, Arc<Vec<Place>>>> {
        &self.places_cache
    }

    pub(crate) fn torsion_cache(&self) -> &Mutex<Option<(FieldElement, u32)>> {
        &self.torsion_cache
    }

    /// Number of places (r1 + r2); embedding indices run over this range,
    /// reals first.
    pub fn num_places(&self) -> usize {
        self.r1 + self.r2
    }

    /// Apply `element_arith`-style operations; exposed for CLI use.
    pub fn element_from_coords(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        FieldElement::from_coords(self, coords)
    }

    /// `σ_j(x)` at context precision. Indices: real places first (ascending),
    /// then complex representatives with positive imaginary part ascending.
    pub fn eval_embedding(
        &self,
        x: &FieldElement,
        j: usize,
        ctx: &PrecisionContext,
    ) -> Result<Complex> {
        embeddings::eval_embedding(self, x, j, ctx)
    }

    pub fn places(&self, ctx: &PrecisionContext) -> Result<Arc<Vec<Place>>> {
        embeddings::places(self, ctx)
    }

    /// Least `m` with `x^m = 1`, verified exactly, or `None`.
    pub fn root_of_unity_order(&self, x: &FieldElement) -> Option<u32> {
        recognize::root_of_unity_order(self, x)
    }

    /// `(ζ_w, w)`: a generator of the roots of unity in the field and its
    /// exact order, certified by exact arithmetic.
    pub fn torsion_generator(&self, ctx: &PrecisionContext) -> Result<(FieldElement, u32)> {
        recognize::torsion_generator(self, ctx)
    }

    /// The map `α → α^k` when it is a field endomorphism (checked exactly);
    /// for `Q(ζ_p)` these are the Galois automorphisms.
    pub fn power_substitution(&self, k: i64) -> Result<impl Fn(&FieldElement) -> FieldElement + '_> {
        let beta = FieldElement::generator(self).pow(k, self)?;
        let image = QPoly::from_int_coeffs(&self.poly);
        let check = eval_poly_element(&image, &beta, self);
        if !check.is_zero() {
            return Err(Error::MalformedInput(format!(
                "alpha -> alpha^{k} is not an endomorphism of this field"
            )));
        }
        Ok(move |x: &FieldElement| x.substitute(&beta, self))
    }
}

/// Evaluate a rational polynomial at a field element.
pub fn eval_poly_element(p: &QPoly, x: &FieldElement, field: &NumberField) -> FieldElement {
    let mut acc = FieldElement::zero(field);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x, field);
        acc = acc.add(&FieldElement::from_rational(field, c.clone()));
    }
    acc
}

fn power_rows(coeffs: &[BigInt]) -> Vec<Vec<BigRational>> {
    let n = coeffs.len() - 1;
    if n < 2 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n - 1);
    // alpha^n = -(a_0 + a_1 alpha + ... )
    let first: Vec<BigRational> = coeffs[..n]
        .iter()
        .map(|c| BigRational::from_integer(-c.clone()))
        .collect();
    rows.push(first);
    for k in 1..n - 1 {
        let prev = rows[k - 1].clone();
        // multiply by alpha: shift then reduce the overflow through row 0
        let mut row = vec![BigRational::zero(); n];
        for i in 0..n - 1 {
            row[i + 1] = prev[i].clone();
        }
        let top = prev[n - 1].clone();
        if !top.is_zero() {
            for (i, r) in rows[0].iter().enumerate() {
                row[i] += &top * r;
            }
        }
        rows.push(row);
    }
    rows
}

/// Irreducibility over Q: a mod-p certificate when one exists in the first
/// primes, otherwise a complex subset-product factor search whose positives
/// are verified by exact division.
fn certify_irreducible(coeffs: &[BigInt]) -> Result<()> {
    let n = coeffs.len() - 1;
    if coeffs[0].is_zero() {
        return Err(Error::ReduciblePolynomial("x".into()));
    }
    for p in primes::primes_below(200) {
        let f = PolyP::new(
            coeffs
                .iter()
                .map(|c| {
                    let r = c % BigInt::from(p);
                    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                    r.to_u64().unwrap()
                })
                .collect(),
            p,
        );
        if f.degree() == n && modp::is_irreducible(&f) {
            return Ok(());
        }
    }
    subset_factor_search(coeffs)
}

/// Exhaustive subset-product factor search over high-precision complex
/// roots; only exact division certifies reducibility, and a clean miss on
/// every subset certifies irreducibility at the stated threshold.
fn subset_factor_search(coeffs: &[BigInt]) -> Result<()> {
    let n = coeffs.len() - 1;
    if n > 16 {
        return Err(Error::IrreducibilityUnknown);
    }
    let ctx = PrecisionContext::with_guard(60, 8).expect("static context");
    let roots = embeddings::raw_roots(coeffs, &ctx)?;
    let tol = 1e-12f64;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size == 0 || size > n / 2 {
            continue;
        }
        // build monic product over the chosen roots
        let mut fac: Vec<Complex> = vec![Complex::from_i64(1, &ctx)];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let mut next = vec![Complex::zero(); fac.len() + 1];
            for (k, c) in fac.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c, &ctx);
                next[k] = next[k].sub(&c.mul(r, &ctx), &ctx);
            }
            fac = next;
        }
        let mut int_coeffs = Vec::with_capacity(fac.len());
        let mut ok = true;
        for c in &fac {
            if c.im.to_f64().abs() > tol {
                ok = false;
                break;
            }
            let re = c.re.to_f64();
            if (re - re.round()).abs() > tol {
                ok = false;
                break;
            }
            int_coeffs.push(c.re.round_to_bigint());
        }
        if !ok {
            continue;
        }
        let candidate = QPoly::from_int_coeffs(&int_coeffs);
        if candidate.degree() == 0 {
            continue;
        }
        let (_, rem) = QPoly::from_int_coeffs(coeffs).divrem(&candidate);
        if rem.is_zero() {
            return Err(Error::ReduciblePolynomial(format!(
                "degree {} factor",
                candidate.degree()
            )));
        }
    }
    Ok(())
}

/// Primes `p` with `p^2 | disc`, by trial division plus perfect-power
/// analysis of the large cofactor.
fn square_primes(disc: &BigInt) -> Result<Vec<u64>> {
    let mut n = disc.abs();
    let mut out = Vec::new();
    for p in primes::primes_below(1_000_000) {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            // remainder is 1 or a single prime: no square factor left
            return Ok(out);
        }
        if (&n % &pb).is_zero() {
            let mut v = 0u32;
            while (&n % &pb).is_zero() {
                n /= &pb;
                v += 1;
            }
            if v >= 2 {
                out.push(p);
            }
        }
    }
    if n.is_one() {
        return Ok(out);
    }
    // cofactor with all prime factors > 10^6: a square factor requires the
    // cofactor to be a perfect power
    if let Some(u) = n.to_u128() {
        if primes::is_prime_u128(u) {
            return Ok(out); // single large prime, multiplicity 1
        }
    }
    for e in [2u32, 3, 4, 5] {
        if let Some(root) = perfect_root(&n, e) {
            if let Some(u) = root.to_u128() {
                if primes::is_prime_u128(u) && u <= u64::MAX as u128 {
                    out.push(u as u64);
                    return Ok(out);
                }
            }
        }
    }
    // not prime, not a recognizable power: could hide p^2 q
    Err(Error::DiscriminantFactorization(disc.to_string()))
}

fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    perfect_root(n, 2)
}

fn perfect_root(n: &BigInt, e: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(e);
    if r.pow(e) == *n {
        Some(r)
    } else {
        None
    }
}

/// Dedekind's criterion at `p`: with `f ≡ g·h (mod p)` where `g` is the
/// radical, `Z[α]` is p-maximal iff `gcd(T, g, h)` is constant for
/// `T = (g*·h* - f)/p`.
fn dedekind_at(coeffs: &[BigInt], p: u64) -> bool {
    let pb = BigInt::from(p);
    let fbar = PolyP::new(
        coeffs
            .iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
        p,
    );
    let rad = modp::radical(&fbar);
    let hbar = fbar.div_exact(&rad);
    let lift = |q: &PolyP| -> Vec<BigInt> { q.coeffs.iter().map(|&c| BigInt::from(c)).collect() };
    let gstar = lift(&rad);
    let hstar = lift(&hbar);
    // T = (g*h* - f)/p over Z
    let mut prod = vec![BigInt::zero(); gstar.len() + hstar.len() - 1];
    for (i, a) in gstar.iter().enumerate() {
        for (j, b) in hstar.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    let mut t = vec![BigInt::zero(); prod.len().max(coeffs.len())];
    for (i, c) in prod.iter().enumerate() {
        t[i] += c;
    }
    for (i, c) in coeffs.iter().enumerate() {
        t[i] -= c;
    }
    let tbar = PolyP::new(
        t.iter()
            .map(|c| {
                let q = exact_div(c, &pb).expect("g*h* = f mod p");
                let r = &q % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
        p,
    );
    let g1 = rad.gcd(&hbar);
    let g2 = tbar.gcd(&g1);
    g2.degree() == 0
}
