use num_bigint::BigInt;

use super::{dilog_value, FormalSum};
use crate::apnum::{PrecisionContext, Real};
use crate::nfield::{FieldElement, NumberField};
use crate::{Error, Result};

fn bracket_arg(x: FieldElement, what: &str) -> Result<FieldElement> {
    if x.is_zero() || x.is_one() {
        return Err(Error::DegenerateInput(format!("bracket argument {what} is 0 or 1")));
    }
    Ok(x)
}

/// Symbolic check of the rearrangement identity behind the two Bloch-group
/// presentations: the five-term combination
///
/// `[x] - [y] + [y/x] - [(1-x⁻¹)/(1-y⁻¹)] + [(1-x)/(1-y)]`
///
/// must equal, as an exact element of `Z[F]`, its expansion into two-term
/// and five-term H generators. Verified with exact field arithmetic and
/// multiset equality.
pub fn check_identity_22(
    x: &FieldElement,
    y: &FieldElement,
    field: &NumberField,
) -> Result<bool> {
    let one = FieldElement::one(field);
    for (v, name) in [(x, "x"), (y, "y")] {
        if v.is_zero() || v.is_one() {
            return Err(Error::DegenerateInput(format!("{name} is 0 or 1")));
        }
    }
    if x == y {
        return Err(Error::DegenerateInput("x = y".into()));
    }

    let xinv = x.inv(field)?;
    let yinv = y.inv(field)?;
    let onemx = one.sub(x);
    let onemy = one.sub(y);
    let onemxi = one.sub(&xinv);
    let onemyi = one.sub(&yinv);

    // left side
    let b1 = bracket_arg(x.clone(), "x")?;
    let b2 = bracket_arg(y.clone(), "y")?;
    let b3 = bracket_arg(y.div(x, field)?, "y/x")?;
    let b4 = bracket_arg(onemxi.div(&onemyi, field)?, "(1-1/x)/(1-1/y)")?;
    let b5 = bracket_arg(onemx.div(&onemy, field)?, "(1-x)/(1-y)")?;
    let lhs = FormalSum::new(vec![
        (BigInt::from(1), b1.clone()),
        (BigInt::from(-1), b2.clone()),
        (BigInt::from(1), b3.clone()),
        (BigInt::from(-1), b4.clone()),
        (BigInt::from(1), b5.clone()),
    ])?;

    // right side: a five-term H generator plus two-term H generators
    let ratio = b5.clone(); // (1-x)/(1-y)
    let ratio_inv = ratio.inv(field)?;
    let five = vec![
        bracket_arg(yinv.clone(), "1/y")?,
        bracket_arg(y.mul(&xinv, field), "y/x")?,
        bracket_arg(onemyi.div(&onemxi, field)?, "(1-1/y)/(1-1/x)")?,
        bracket_arg(onemxi.clone(), "1-1/x")?,
        bracket_arg(y.sub(x).div(&onemx, field)?, "(y-x)/(1-x)")?,
    ];
    let mut rhs_terms: Vec<(BigInt, FieldElement)> =
        five.into_iter().map(|e| (BigInt::from(1), e)).collect();
    // + ([x] + [1/x]) + ([(1-x)/(1-y)] + [(1-y)/(1-x)])
    rhs_terms.push((BigInt::from(1), b1));
    rhs_terms.push((BigInt::from(1), bracket_arg(xinv.clone(), "1/x")?));
    rhs_terms.push((BigInt::from(1), ratio.clone()));
    rhs_terms.push((BigInt::from(1), bracket_arg(ratio_inv.clone(), "(1-y)/(1-x)")?));
    // - ([y] + [1/y]) - ([(1-1/x)/(1-1/y)] + [(1-1/y)/(1-1/x)])
    rhs_terms.push((BigInt::from(-1), b2));
    rhs_terms.push((BigInt::from(-1), bracket_arg(yinv, "1/y")?));
    rhs_terms.push((BigInt::from(-1), b4));
    rhs_terms.push((BigInt::from(-1), bracket_arg(onemyi.div(&onemxi, field)?, "(1-1/y)/(1-1/x)")?));
    // - ([1-1/x] + [1/x]) - ([1 - (1-y)/(1-x)] + [(1-y)/(1-x)])
    rhs_terms.push((BigInt::from(-1), bracket_arg(onemxi, "1-1/x")?));
    rhs_terms.push((BigInt::from(-1), bracket_arg(xinv, "1/x")?));
    rhs_terms.push((BigInt::from(-1), bracket_arg(one.sub(&ratio_inv), "1-(1-y)/(1-x)")?));
    rhs_terms.push((BigInt::from(-1), ratio_inv));
    let rhs = FormalSum::new(rhs_terms)?;

    Ok(lhs == rhs)
}

/// `max_j |D(five-term sum at (a, b))|` over the complex places; vanishes
/// identically for admissible inputs.
pub fn check_five_term_formal(
    a: &FieldElement,
    b: &FieldElement,
    field: &NumberField,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let one = FieldElement::one(field);
    for (v, name) in [(a, "a"), (b, "b")] {
        if v.is_zero() || v.is_one() {
            return Err(Error::DegenerateInput(format!("{name} is 0 or 1")));
        }
    }
    let ab = a.mul(b, field);
    if ab.is_one() {
        return Err(Error::DegenerateInput("ab = 1".into()));
    }
    let one_m_ab = one.sub(&ab);
    let t3 = bracket_arg(one.sub(a).div(&one_m_ab, field)?, "(1-a)/(1-ab)")?;
    let t4 = bracket_arg(one_m_ab.clone(), "1-ab")?;
    let t5 = bracket_arg(one.sub(b).div(&one_m_ab, field)?, "(1-b)/(1-ab)")?;
    let sum = FormalSum::new(vec![
        (BigInt::from(1), a.clone()),
        (BigInt::from(1), b.clone()),
        (BigInt::from(1), t3),
        (BigInt::from(1), t4),
        (BigInt::from(1), t5),
    ])?;
    let mut max = Real::zero();
    for j in 0..field.r2() {
        let v = dilog_value(&sum, field, j, ctx)?.abs();
        max = max.max(&v);
    }
    Ok(max)
}
