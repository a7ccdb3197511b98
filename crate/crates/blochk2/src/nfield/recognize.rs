use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{eval_poly_element, FieldElement, NumberField};
use crate::apnum::{Complex, PrecisionContext, Real};
use crate::exact::lll::lll_reduce;
use crate::exact::poly::{cyclotomic, real_cyclotomic_min_poly, QPoly};
use crate::{Error, Result};

fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Largest order a root of unity can have in a degree-n field
/// (`φ(m) ≤ n` forces `m ≤ 2n² + 2`).
fn torsion_bound(n: usize) -> u64 {
    let mut best = 2;
    for m in 1..=(2 * (n as u64) * (n as u64) + 2) {
        if euler_phi(m) <= n as u64 {
            best = m;
        }
    }
    best
}

/// Least `m` with `x^m = 1`, verified by exact arithmetic; `None` if `x` is
/// not a root of unity (including fast numeric rejection off the unit
/// circle).
pub(super) fn root_of_unity_order(field: &NumberField, x: &FieldElement) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    if let Some(q) = x.is_rational() {
        if q == BigRational::from_integer(BigInt::from(1)) {
            return Some(1);
        }
        if q == BigRational::from_integer(BigInt::from(-1)) {
            return Some(2);
        }
        return None;
    }
    // numeric prefilter: every embedding must sit on the unit circle
    let ctx = PrecisionContext::default();
    let gate = Real::pow10(-20, &ctx);
    for j in 0..field.num_places() {
        let v = field.eval_embedding(x, j, &ctx).ok()?;
        let dev = v.norm_sq(&ctx).sub(&Real::one(&ctx), &ctx).abs();
        if dev.gt(&gate) {
            return None;
        }
    }
    let bound = torsion_bound(field.degree());
    let mut y = x.clone();
    for m in 1..=bound {
        if y.is_one() {
            return Some(m as u32);
        }
        y = y.mul(x, field);
    }
    None
}

/// Lattice-assisted recovery of a field element whose image at place `j`
/// matches `target`. Returned candidates are unverified; callers must check
/// them exactly.
pub fn find_element_matching_value(
    field: &NumberField,
    target: &Complex,
    place: usize,
    ctx: &PrecisionContext,
) -> Vec<FieldElement> {
    let n = field.degree();
    let scale_bits = (ctx.bits() as i64) - 24;
    let alpha = FieldElement::generator(field);

    let mut values: Vec<Complex> = Vec::with_capacity(n + 1);
    let mut pw = FieldElement::one(field);
    for _ in 0..n {
        match field.eval_embedding(&pw, place, ctx) {
            Ok(v) => values.push(v),
            Err(_) => return Vec::new(),
        }
        pw = pw.mul(&alpha, field);
    }
    values.push(target.clone());

    let dim = n + 1;
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (i, v) in values.iter().enumerate() {
        let mut row = vec![BigInt::zero(); dim + 2];
        row[i] = BigInt::from(1);
        row[dim] = v.re.to_scaled_bigint(scale_bits);
        row[dim + 1] = v.im.to_scaled_bigint(scale_bits);
        basis.push(row);
    }
    lll_reduce(&mut basis);

    let residual_gate = BigInt::from(1) << ((scale_bits / 2).max(16) as usize);
    let height_gate = BigInt::from(1) << 44;
    let mut out = Vec::new();
    for row in &basis {
        let b = &row[n];
        if b.is_zero() {
            continue;
        }
        if row[dim].abs() > residual_gate || row[dim + 1].abs() > residual_gate {
            continue;
        }
        if row[..=n].iter().any(|c| c.abs() > height_gate) {
            continue;
        }
        let coords: Vec<BigRational> = row[..n]
            .iter()
            .map(|a| -BigRational::new(a.clone(), b.clone()))
            .collect();
        if let Ok(x) = FieldElement::from_coords(field, coords) {
            out.push(x);
        }
    }
    out
}

/// Is `2cos(2π/m) ∈ F`? Decided by matching roots of its minimal polynomial
/// against embedding values via lattice recovery, then verifying the
/// candidate exactly.
pub fn real_cyclotomic_membership(
    field: &NumberField,
    m: u64,
    ctx: &PrecisionContext,
) -> Result<bool> {
    if m < 3 {
        return Err(Error::DegenerateInput(format!("m = {m} < 3")));
    }
    let psi = real_cyclotomic_min_poly(m);
    let d = psi.len() - 1;
    if d == 1 {
        return Ok(true); // rational value, always present
    }
    if field.degree() % d != 0 {
        return Ok(false); // degree obstruction: Q(2cos) would not embed
    }
    let psi_q = QPoly::from_int_coeffs(&psi);

    let mut attempt = ctx.clone();
    for _ in 0..2 {
        // roots of psi are 2cos(2πk/m), k < m/2 coprime to m
        for k in 1..(m + 1) / 2 {
            if num_integer::gcd(k, m) != 1 {
                continue;
            }
            let t = BigRational::new(BigInt::from(k), BigInt::from(m));
            let theta = Real::from_ratio(&t, &attempt)
                .mul(&Real::pi(&attempt), &attempt)
                .mul(&Real::from_i64(2, &attempt), &attempt);
            let root = theta.cos(&attempt).mul(&Real::from_i64(2, &attempt), &attempt);
            let target = Complex::from_real(root);
            for cand in find_element_matching_value(field, &target, 0, &attempt) {
                if eval_poly_element(&psi_q, &cand, field).is_zero() {
                    return Ok(true);
                }
            }
        }
        attempt = attempt.doubled();
    }
    Ok(false)
}

/// Generator of the roots of unity of the field together with its exact
/// order. Fields with a real embedding have exactly `{±1}`.
pub(super) fn torsion_generator(
    field: &NumberField,
    ctx: &PrecisionContext,
) -> Result<(FieldElement, u32)> {
    if let Some(hit) = field.torsion_cache().lock().unwrap().clone() {
        return Ok(hit);
    }
    let computed = compute_torsion(field, ctx)?;
    *field.torsion_cache().lock().unwrap() = Some(computed.clone());
    Ok(computed)
}

fn compute_torsion(field: &NumberField, ctx: &PrecisionContext) -> Result<(FieldElement, u32)> {
    let minus_one = FieldElement::from_int(field, -1);
    if field.r1() > 0 {
        return Ok((minus_one, 2));
    }
    let n = field.degree();
    let bound = torsion_bound(n);
    let mut candidates: Vec<u64> = (3..=bound)
        .filter(|&m| (n as u64) % euler_phi(m) == 0)
        .collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    for m in candidates {
        let phi_m = QPoly::from_int_coeffs(&cyclotomic(m));
        for k in 1..m {
            if num_integer::gcd(k, m) != 1 {
                continue;
            }
            let t = BigRational::new(BigInt::from(k), BigInt::from(m));
            let target = Complex::unit_circle(&Real::from_ratio(&t, ctx), ctx);
            for cand in find_element_matching_value(field, &target, 0, ctx) {
                if eval_poly_element(&phi_m, &cand, field).is_zero() {
                    return Ok((cand, m as u32));
                }
            }
        }
    }
    Ok((minus_one, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfield::create_field;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn minus_one_has_order_two() {
        let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
        let m1 = FieldElement::from_int(&f, -1);
        assert_eq!(f.root_of_unity_order(&m1), Some(2));
        assert_eq!(f.root_of_unity_order(&FieldElement::one(&f)), Some(1));
    }

    #[test]
    fn zeta5_cubed_has_order_five() {
        let f = NumberField::cyclotomic(5).unwrap();
        let zeta = FieldElement::generator(&f);
        let x = zeta.pow(3, &f).unwrap();
        assert_eq!(f.root_of_unity_order(&x), Some(5));
        let y = zeta.neg();
        assert_eq!(f.root_of_unity_order(&y), Some(10));
    }

    #[test]
    fn generic_generator_is_not_torsion() {
        let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
        let alpha = FieldElement::generator(&f);
        assert_eq!(f.root_of_unity_order(&alpha), None);
    }

    #[test]
    fn recover_golden_ratio_combination() {
        // 2cos(2pi/5) = zeta + zeta^4 should be recoverable from its value
        let f = NumberField::cyclotomic(5).unwrap();
        let c = ctx();
        let zeta = FieldElement::generator(&f);
        let expect = zeta.add(&zeta.pow(4, &f).unwrap());
        let v = f.eval_embedding(&expect, 0, &c).unwrap();
        let cands = find_element_matching_value(&f, &v, 0, &c);
        assert!(cands.contains(&expect), "candidates: {cands:?}");
    }

    #[test]
    fn real_cyclotomic_membership_examples() {
        let c = ctx();
        let f5 = NumberField::cyclotomic(5).unwrap();
        assert!(real_cyclotomic_membership(&f5, 5, &c).unwrap());
        assert!(real_cyclotomic_membership(&f5, 4, &c).unwrap()); // 0 ∈ F
        assert!(!real_cyclotomic_membership(&f5, 8, &c).unwrap()); // sqrt2 ∉ Q(ζ5)
        let cubic = create_field(&z(&[2, 1, 1, 1])).unwrap();
        assert!(!real_cyclotomic_membership(&cubic, 5, &c).unwrap()); // degree obstruction
        assert!(real_cyclotomic_membership(&cubic, 6, &c).unwrap()); // -1 rational
        assert!(matches!(
            real_cyclotomic_membership(&cubic, 2, &c),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn torsion_groups() {
        let c = ctx();
        // real embedding: only ±1
        let cubic = create_field(&z(&[2, 1, 1, 1])).unwrap();
        let (g, w) = cubic.torsion_generator(&c).unwrap();
        assert_eq!(w, 2);
        assert_eq!(g, FieldElement::from_int(&cubic, -1));
        // Q(zeta5): ten roots of unity
        let f5 = NumberField::cyclotomic(5).unwrap();
        let (g5, w5) = f5.torsion_generator(&c).unwrap();
        assert_eq!(w5, 10);
        assert_eq!(f5.root_of_unity_order(&g5), Some(10));
        // Q(i): w = 4
        let gauss = create_field(&z(&[1, 0, 1])).unwrap();
        let (gi, wi) = gauss.torsion_generator(&c).unwrap();
        assert_eq!(wi, 4);
        assert_eq!(gauss.root_of_unity_order(&gi), Some(4));
    }
}
