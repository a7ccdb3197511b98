use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumberField;
use crate::exact::poly::{resultant_int, QPoly};
use crate::{Error, Result};

/// Element of a number field in power-basis coordinates (exact rationals).
///
/// Arithmetic is always performed modulo the defining polynomial of the field
/// passed in; elements carry no field pointer themselves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_coords(field: &NumberField, mut coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() > field.degree() {
            return Err(Error::MalformedInput(format!(
                "coordinate vector of length {} in a degree {} field",
                coords.len(),
                field.degree()
            )));
        }
        coords.resize(field.degree(), BigRational::zero());
        Ok(FieldElement { coords })
    }

    pub fn zero(field: &NumberField) -> Self {
        FieldElement { coords: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &NumberField) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &NumberField, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        FieldElement { coords }
    }

    pub fn from_int(field: &NumberField, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// The class of `x` (the power-basis generator).
    pub fn generator(field: &NumberField) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        if field.degree() == 1 {
            // Q: the generator is the rational root of the defining linear poly
            coords[0] = -BigRational::from_integer(field.poly()[0].clone());
        } else {
            coords[1] = BigRational::one();
        }
        FieldElement { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FieldElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FieldElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement { coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }

    pub fn mul(&self, rhs: &Self, field: &NumberField) -> Self {
        let n = field.degree();
        if n == 1 {
            return FieldElement { coords: vec![&self.coords[0] * &rhs.coords[0]] };
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // fold powers alpha^n .. alpha^{2n-2} through the reduction table
        let mut out = prod[..n].to_vec();
        for (k, c) in prod.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in field.power_reduction(k - n).iter().enumerate() {
                out[i] += c * r;
            }
        }
        FieldElement { coords: out }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) defining polynomial.
    pub fn inv(&self, field: &NumberField) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.is_rational() {
            return Ok(Self::from_rational(field, BigRational::one() / q));
        }
        let f = QPoly::from_int_coeffs(field.poly());
        let g = QPoly::new(self.coords.clone());
        // Bezout: u*g + v*f = gcd = 1  (f irreducible, g nonzero of smaller degree)
        let (mut r0, mut r1) = (f, g);
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0.degree(), 0, "defining polynomial must be irreducible");
        let c = r0.coeff(0);
        let inv_poly = s0.scale(&(BigRational::one() / c));
        let mut coords: Vec<BigRational> = inv_poly.coeffs().to_vec();
        coords.resize(field.degree(), BigRational::zero());
        Ok(FieldElement { coords })
    }

    pub fn div(&self, rhs: &Self, field: &NumberField) -> Result<Self> {
        Ok(self.mul(&rhs.inv(field)?, field))
    }

    pub fn pow(&self, e: i64, field: &NumberField) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(field));
        }
        let mut base = if e < 0 { self.inv(field)? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<FieldElement> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, field),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, field);
            }
        }
        Ok(acc.unwrap())
    }

    /// Field norm, exact, via the resultant with the defining polynomial.
    pub fn norm(&self, field: &NumberField) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let g = QPoly::new(self.coords.clone());
        let (ints, den) = g.to_integer_scaled();
        let res = resultant_int(field.poly(), &ints);
        let n = field.degree() as u32;
        let scale = den.pow(n);
        BigRational::new(res, scale)
    }

    /// Substitute the generator: `g(α) → g(β)` for a given `β` (used for
    /// power maps `α → α^k` once verified to be endomorphisms).
    pub fn substitute(&self, beta: &FieldElement, field: &NumberField) -> Self {
        let mut acc = FieldElement::zero(field);
        for c in self.coords.iter().rev() {
            acc = acc.mul(beta, field);
            acc.coords[0] += c;
        }
        acc
    }

    /// Compact display like "a^2 - 2a + 1/3".
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".into(),
                _ => format!("a^{i}"),
            };
            let lead = if parts.is_empty() {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else if mag.is_integer() {
                format!("{}", mag.numer())
            } else {
                format!("{mag}")
            };
            let sep = if coeff.is_empty() || var.is_empty() { "" } else { "*" };
            parts.push(format!("{lead}{coeff}{sep}{var}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.concat()
        }
    }
}
