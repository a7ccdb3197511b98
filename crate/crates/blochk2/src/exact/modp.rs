//! Polynomial arithmetic over F_p for word-sized p: squarefree
//! decomposition, distinct-degree factorization and root counting.
//!
//! Only factor *shapes* are needed upstream (Euler factors, Dedekind's
//! criterion), so equal-degree splitting is never required.

/// Dense polynomial over F_p, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl PolyP {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyP { coeffs, p }
    }

    pub fn zero(p: u64) -> Self {
        PolyP { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        PolyP { coeffs: vec![1], p }
    }

    pub fn x(p: u64) -> Self {
        PolyP { coeffs: vec![0, 1], p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(*self.coeffs.last().unwrap(), self.p);
        PolyP::new(self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect(), self.p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + p - b) % p;
        }
        PolyP::new(out, p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyP::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p) as u64) % p;
            }
        }
        PolyP::new(out, p)
    }

    /// Remainder of `self` modulo monic-normalized `rhs`.
    pub fn rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero());
        let p = self.p;
        let d = rhs.degree();
        if self.coeffs.len() <= d {
            return self.clone();
        }
        let lead_inv = inv_mod(*rhs.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let f = mulmod(c, lead_inv, p);
            let shift = top - d;
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p - mulmod(f, b, p)) % p;
            }
        }
        rem.truncate(d);
        PolyP::new(rem, p)
    }

    /// Exact quotient (panics if division is inexact).
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let p = self.p;
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return PolyP::zero(p);
        }
        let d = rhs.degree();
        assert!(self.coeffs.len() > d, "inexact division (degree)");
        let lead_inv = inv_mod(*rhs.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let f = mulmod(c, lead_inv, p);
            let shift = top - d;
            quot[shift] = f;
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p - mulmod(f, b, p)) % p;
            }
        }
        assert!(rem.iter().take(d).all(|&c| c == 0), "inexact division");
        PolyP::new(quot, p)
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyP::zero(self.p);
        }
        let p = self.p;
        PolyP::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
            p,
        )
    }

    /// `self(x)^e mod m` is not needed; this is `x^e mod m` for the Frobenius
    /// computations, by square and multiply on polynomials.
    pub fn x_pow_mod(e: u64, modulus: &Self) -> Self {
        let p = modulus.p;
        let mut acc = PolyP::one(p);
        let mut base = PolyP::x(p).rem(modulus);
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// p-th root of a polynomial whose nonzero terms all have exponents
    /// divisible by p (coefficients are already p-th powers in F_p).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        PolyP::new(out, self.p)
    }
}

/// Squarefree decomposition in characteristic p: returns pairs
/// `(g_i, m_i)` with `f = Π g_i^{m_i}`, the `g_i` squarefree and pairwise
/// coprime.
pub fn squarefree_decomposition(f: &PolyP) -> Vec<(PolyP, usize)> {
    let f = f.monic();
    let mut out: Vec<(PolyP, usize)> = Vec::new();
    decompose_into(&f, 1, &mut out);
    out.sort_by_key(|(g, m)| (*m, g.coeffs.clone()));
    // merge equal multiplicities
    let mut merged: Vec<(PolyP, usize)> = Vec::new();
    for (g, m) in out {
        if g.degree() == 0 {
            continue;
        }
        if let Some(last) = merged.last_mut() {
            if last.1 == m {
                last.0 = last.0.mul(&g);
                continue;
            }
        }
        merged.push((g, m));
    }
    merged
}

fn decompose_into(f: &PolyP, mult: usize, out: &mut Vec<(PolyP, usize)>) {
    if f.degree() == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p) = g-root^p
        let root = f.pth_root();
        decompose_into(&root, mult * f.p as usize, out);
        return;
    }
    // Yun's algorithm on the part with derivative
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.degree() > 0 {
            out.push((fac.monic(), mult * i));
        }
        w = y.clone();
        c = c.div_exact(&y);
        i += 1;
    }
    if c.degree() > 0 {
        // remaining part is a p-th power
        let root = c.pth_root();
        decompose_into(&root, mult * f.p as usize, out);
    }
}

/// Distinct-degree shape of a *squarefree* polynomial: list of
/// `(degree, count)` pairs with `count` irreducible factors of that degree.
pub fn distinct_degree_shape(f: &PolyP) -> Vec<(usize, usize)> {
    let mut shape = Vec::new();
    let mut rest = f.monic();
    let p = f.p;
    let mut d = 1usize;
    // x^{p^d} mod rest, recomputed as rest shrinks
    let mut frob = PolyP::x_pow_mod(p, &rest);
    while rest.degree() >= 1 {
        if d > rest.degree() {
            break;
        }
        if rest.degree() < 2 * d {
            // remainder is irreducible
            shape.push((rest.degree(), 1));
            break;
        }
        let diff = frob.sub(&PolyP::x(p).rem(&rest));
        let g = rest.gcd(&diff);
        if g.degree() > 0 {
            shape.push((d, g.degree() / d));
            rest = rest.div_exact(&g);
            frob = frob.rem(&rest);
        }
        d += 1;
        if rest.degree() >= 1 {
            // advance Frobenius: x^{p^d} = (x^{p^{d-1}})^p mod rest
            frob = frob_pow(&frob, p, &rest);
        }
    }
    shape
}

/// `g(x)^p mod m` via repeated squaring on the polynomial.
fn frob_pow(g: &PolyP, p: u64, m: &PolyP) -> PolyP {
    let mut acc = PolyP::one(m.p);
    let mut base = g.rem(m);
    let mut k = p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base).rem(m);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base).rem(m);
        }
    }
    acc
}

/// Full factor shape of an arbitrary monic polynomial mod p:
/// `(degree, multiplicity, count)` triples summing to `deg f`.
pub fn factor_shape(f: &PolyP) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (d, c) in distinct_degree_shape(&g) {
            out.push((d, m, c));
        }
    }
    out.sort();
    out
}

/// Number of roots of `f` in F_p (degree of `gcd(x^p - x, f)`).
pub fn root_count(f: &PolyP) -> usize {
    let p = f.p;
    let frob = PolyP::x_pow_mod(p, f);
    let diff = frob.sub(&PolyP::x(p).rem(f));
    if diff.is_zero() {
        // f divides x^p - x: all factors linear and distinct
        return f.degree();
    }
    f.gcd(&diff).degree()
}

/// Radical (product of distinct irreducible factors), via the squarefree
/// decomposition.
pub fn radical(f: &PolyP) -> PolyP {
    let mut rad = PolyP::one(f.p);
    for (g, _) in squarefree_decomposition(f) {
        rad = rad.mul(&g);
    }
    rad
}

/// Is `f` irreducible mod p? (squarefree with a single distinct-degree block
/// of full degree)
pub fn is_irreducible(f: &PolyP) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let sq = squarefree_decomposition(f);
    if sq.len() != 1 || sq[0].1 != 1 || sq[0].0.degree() != f.degree() {
        return false;
    }
    let shape = distinct_degree_shape(&sq[0].0);
    shape == vec![(f.degree(), 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u64], p: u64) -> PolyP {
        PolyP::new(c.to_vec(), p)
    }

    #[test]
    fn cubic_mod_2_splits_1_2() {
        // x^3 + x^2 + x + 2 mod 2 = x^3 + x^2 + x = x (x^2 + x + 1)
        let f = poly(&[0, 1, 1, 1], 2);
        let shape = factor_shape(&f);
        assert_eq!(shape, vec![(1, 1, 1), (2, 1, 1)]);
        assert_eq!(root_count(&f), 1);
    }

    #[test]
    fn cyclotomic5_total_split_mod_11() {
        // Φ5 mod 11 splits completely (11 ≡ 1 mod 5)
        let f = poly(&[1, 1, 1, 1, 1], 11);
        let shape = factor_shape(&f);
        assert_eq!(shape, vec![(1, 1, 4)]);
        assert_eq!(root_count(&f), 4);
    }

    #[test]
    fn cyclotomic5_ramified_mod_5() {
        // Φ5 mod 5 = (x-1)^4
        let f = poly(&[1, 1, 1, 1, 1], 5);
        let shape = factor_shape(&f);
        assert_eq!(shape, vec![(1, 4, 1)]);
    }

    #[test]
    fn inert_cubic() {
        // x^3 + x^2 + x + 2 mod 3 has no roots: irreducible cubic
        let f = poly(&[2, 1, 1, 1], 3);
        assert!(is_irreducible(&f));
        assert_eq!(factor_shape(&f), vec![(3, 1, 1)]);
    }

    #[test]
    fn char_p_power_squarefree() {
        // (x+1)^4 mod 2 = x^4 + 1 (derivative vanishes, needs p-th roots)
        let f = poly(&[1, 0, 0, 0, 1], 2);
        let shape = factor_shape(&f);
        assert_eq!(shape, vec![(1, 4, 1)]);
        let rad = radical(&f);
        assert_eq!(rad, poly(&[1, 1], 2));
    }

    #[test]
    fn mixed_multiplicities() {
        // (x^2+1)^2 (x+2) mod 7; x^2+1 = (x-...)— mod 7, -1 is not a QR? 7≡3 mod 4 so irreducible
        let sq = poly(&[1, 0, 1], 7);
        let f = sq.mul(&sq).mul(&poly(&[2, 1], 7));
        let shape = factor_shape(&f);
        assert_eq!(shape, vec![(1, 1, 1), (2, 2, 1)]);
    }

    #[test]
    fn root_count_large_prime() {
        // x^2 - 2 mod p: roots iff 2 is a QR mod p; p = 7 (2 is QR: 3^2=2)
        assert_eq!(root_count(&poly(&[5, 0, 1], 7)), 2);
        // p = 5: 2 is not a QR
        assert_eq!(root_count(&poly(&[3, 0, 1], 5)), 0);
        // big-ish prime
        assert_eq!(root_count(&poly(&[999_999_935, 0, 1], 1_000_003)), 2);
    }
}
