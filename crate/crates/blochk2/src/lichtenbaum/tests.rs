use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::bloch::{certify, FormalSum};
use crate::nfield::{create_field, FieldElement};

fn z(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn fs(terms: Vec<(i64, FieldElement)>) -> FormalSum {
    FormalSum::new(terms.into_iter().map(|(c, e)| (BigInt::from(c), e)).collect()).unwrap()
}

#[test]
fn regulator_matches_paper_43() {
    let f = create_field(&z(&[2, -1, -1, 1])).unwrap();
    let c = ctx();
    let a = FieldElement::generator(&f);
    let theta = fs(vec![(1, a.pow(2, &f).unwrap()), (2, a.clone())]);
    let el = certify(&theta, &f, &c).unwrap();
    let reg = regulator(&f, &[el], &c).unwrap();
    let expect = Real::parse("2.568970600936709", &c).unwrap();
    assert!(reg.det_abs.sub(&expect, &c).abs().lt(&Real::pow10(-14, &c)));
}

#[test]
fn regulator_matches_paper_46() {
    let f = create_field(&z(&[-1, 0, 0, 1, 1])).unwrap();
    let c = ctx();
    let minus_a = FieldElement::generator(&f).neg();
    let el = certify(&fs(vec![(3, minus_a)]), &f, &c).unwrap();
    let reg = regulator(&f, &[el], &c).unwrap();
    let expect = Real::parse("2.944106486676696", &c).unwrap();
    assert!(reg.det_abs.sub(&expect, &c).abs().lt(&Real::pow10(-14, &c)));
}

#[test]
fn regulator_scaling_covariance() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = FieldElement::generator(&f);
    let theta = fs(vec![(4, a.clone()), (1, a.sub(&FieldElement::one(&f)))]);
    let e1 = certify(&theta, &f, &c).unwrap();
    let r1 = regulator(&f, &[e1], &c).unwrap();
    let scaled = theta.scale(&BigInt::from(-3));
    let e2 = certify(&scaled, &f, &c).unwrap();
    let r2 = regulator(&f, &[e2], &c).unwrap();
    let three_r1 = r1.det_abs.mul(&Real::from_i64(3, &c), &c);
    assert!(r2.det_abs.sub(&three_r1, &c).abs().lt(&Real::pow10(-30, &c)));
}

#[test]
fn regulator_rejects_wrong_count() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    assert!(matches!(
        regulator(&f, &[], &c),
        Err(Error::WrongElementCount { expected: 1, got: 0 })
    ));
}

#[test]
fn certify_rejects_non_kernel() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let two = fs(vec![(1, FieldElement::from_int(&f, 2))]);
    assert!(matches!(certify(&two, &f, &c), Err(Error::UncertifiedElement)));
}

#[test]
fn k2_prediction_example_42() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = FieldElement::generator(&f);
    let theta = fs(vec![(4, a.clone()), (1, a.sub(&FieldElement::one(&f)))]);
    let el = certify(&theta, &f, &c).unwrap();
    let report = k2_predict(&f, &[el], 1_000_000, &c).unwrap();
    assert_eq!(report.nearest_integer, BigInt::from(4));
    assert_eq!(report.w2, 24);
    assert!(report.consistent);
    assert!(report.deviation.le(&report.error_budget));
}

#[test]
fn k2_prediction_q_zeta5() {
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = FieldElement::generator(&f);
    let one = FieldElement::one(&f);
    let x1 = one.add(&zeta).add(&zeta.pow(2, &f).unwrap());
    let x2 = zeta.pow(4, &f).unwrap().neg();
    let b1 = fs(vec![(2, x1), (4, x2)]);
    let sigma = f.power_substitution(2).unwrap();
    let b2 = b1.map_elements(|e| sigma(e)).unwrap();
    let e1 = certify(&b1, &f, &c).unwrap();
    let e2 = certify(&b2, &f, &c).unwrap();
    let report = k2_predict(&f, &[e1, e2], 1_000_000, &c).unwrap();
    assert_eq!(report.w2, 120);
    assert_eq!(report.nearest_integer, BigInt::from(1));
    assert!(report.consistent);
    // paper's printed ζ*_F(-1)
    let expect = Real::parse("0.0248111839", &c).unwrap();
    assert!(report
        .zeta_star_minus1
        .sub(&expect, &c)
        .abs()
        .lt(&Real::from_f64(5e-8, &c)));
}

#[test]
fn cyclo_regulator_routes_agree_p5() {
    let c = ctx();
    let reg = cyclotomic_regulator_det(5, &c).unwrap();
    let closed = cyclotomic_regulator_closed(5, &c).unwrap();
    let tol = Real::pow10(-30, &c);
    assert!(reg.via_matrix.sub(&reg.via_character_sums, &c).abs().lt(&tol));
    assert!(reg.via_matrix.sub(&closed, &c).abs().lt(&tol));
    // frozen reference from an independent multiprecision evaluation
    let expect = Real::parse("2.977342069105997622967525827715617916523", &c).unwrap();
    assert!(closed.sub(&expect, &c).abs().lt(&Real::pow10(-35, &c)));
}

#[test]
fn cyclo_regulator_routes_agree_p3_p7() {
    let c = ctx();
    for p in [3u64, 7] {
        let reg = cyclotomic_regulator_det(p, &c).unwrap();
        let closed = cyclotomic_regulator_closed(p, &c).unwrap();
        let tol = Real::pow10(-30, &c);
        assert!(
            reg.via_matrix.sub(&closed, &c).abs().lt(&tol),
            "p = {p}: matrix {} closed {}",
            reg.via_matrix.to_f64(),
            closed.to_f64()
        );
        assert!(reg.via_character_sums.sub(&closed, &c).abs().lt(&tol));
    }
}

#[test]
fn theorem33_chain_p3_and_p5() {
    let c = ctx();
    // p = 3: K2(Z) has order 2
    let r3 = theorem33_chain(3, 2, &c).unwrap();
    let one = Real::one(&c);
    assert!(r3.ratio.sub(&one, &c).abs().lt(&Real::pow10(-25, &c)), "ratio {}", r3.ratio.to_f64());
    assert_eq!(r3.implied_k2, BigRational::new(BigInt::from(1), BigInt::from(1)));
    // p = 5: #K2(O_{F+}) = 4
    let r5 = theorem33_chain(5, 4, &c).unwrap();
    assert!(r5.ratio.sub(&one, &c).abs().lt(&Real::pow10(-25, &c)), "ratio {}", r5.ratio.to_f64());
    assert_eq!(r5.implied_k2, BigRational::new(BigInt::from(1), BigInt::from(1)));
    // ζ_{Q(√5)}(-1) = 1/30 both analytically and via Birch–Tate
    let thirty = Real::one(&c).div(&Real::from_i64(30, &c), &c);
    assert!(r5.zeta_plus_minus1_analytic.sub(&thirty, &c).abs().lt(&Real::pow10(-30, &c)));
    assert!(r5.zeta_plus_minus1_birch_tate.sub(&thirty, &c).abs().lt(&Real::pow10(-30, &c)));
    // a wrong K2 input shows up as a ratio away from 1 (no laundering)
    let bad = theorem33_chain(3, 1, &c).unwrap();
    let two = Real::from_i64(2, &c);
    assert!(bad.ratio.sub(&two, &c).abs().lt(&Real::pow10(-25, &c)));
}

#[test]
fn zeta_plus_analytic_matches_sieve_route() {
    // independent check of |ζ_{Q(√5)}(-1)|: sieve ζ_{F+}(2) on x²-x-1, then
    // the (r1, r2) = (2, 0) transport
    let c = ctx();
    let f = create_field(&z(&[-1, -1, 1])).unwrap();
    let r = crate::zeta::dedekind_zeta2(&f, 1_000_000, &c).unwrap();
    let t = crate::zeta::transport_to_minus1(&f);
    let star = t.zeta_star_minus1_abs(&r.value, f.discriminant(), &c);
    let thirty = Real::one(&c).div(&Real::from_i64(30, &c), &c);
    // accuracy limited by the sieve tail
    let budget = r.tail_bound.div(&r.value, &c).mul(&thirty, &c).mul(&Real::from_i64(2, &c), &c);
    assert!(star.sub(&thirty, &c).abs().le(&budget));
}

#[test]
fn claim1_numeric_echo() {
    // D(2[ζ6] - 3[ζ3]) = 0 at the complex embedding of Q(ζ3)
    let f = NumberField::cyclotomic(3).unwrap();
    let c = ctx();
    let z3 = FieldElement::generator(&f);
    let z6 = z3.pow(2, &f).unwrap().neg();
    let xi = fs(vec![(2, z6), (-3, z3)]);
    let d = crate::bloch::dilog_value(&xi, &f, 0, &c).unwrap();
    assert!(d.abs().lt(&Real::pow10(-30, &c)));
}

#[test]
fn prime_bound_respected() {
    let c = ctx();
    assert!(matches!(cyclotomic_regulator_det(17, &c), Err(Error::PrimeOutOfRange(17))));
    assert!(matches!(theorem33_chain(4, 1, &c), Err(Error::PrimeOutOfRange(4))));
}
