use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::apnum::Complex;
use crate::nfield::{create_field, NumberField};

fn z(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn gen(f: &NumberField) -> FieldElement {
    FieldElement::generator(f)
}

fn fs(terms: Vec<(i64, FieldElement)>) -> FormalSum {
    FormalSum::new(terms.into_iter().map(|(c, e)| (BigInt::from(c), e)).collect()).unwrap()
}

#[test]
fn formal_sum_merging_and_validation() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let a = gen(&f);
    let s = fs(vec![(2, a.clone()), (3, a.clone())]);
    assert_eq!(s.terms().len(), 1);
    assert_eq!(s.terms()[0].0, BigInt::from(5));
    let t = s.sub(&s);
    assert!(t.is_zero());
    assert!(FormalSum::single(1, FieldElement::one(&f)).is_err());
    assert!(FormalSum::single(1, FieldElement::zero(&f)).is_err());
}

#[test]
fn boundary_rejects_bad_elements_and_builds_pairs() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let a = gen(&f);
    let xi = fs(vec![(4, a.clone()), (1, a.sub(&FieldElement::one(&f)))]);
    let t = boundary(&xi, &f).unwrap();
    assert_eq!(t.terms.len(), 2);
    // the [alpha] term pairs with 1 - alpha on the right
    let one_minus = FieldElement::one(&f).sub(&a);
    assert!(t.terms.iter().any(|(c, l, r)| *c == BigInt::from(4) && *l == a && *r == one_minus));
}

#[test]
fn two_term_h_generator_reduces_to_zero() {
    // [a] + [1-a] lies in ker ∂ and is stripped as an H generator
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let xi = fs(vec![(1, a.clone()), (1, FieldElement::one(&f).sub(&a))]);
    let cert = verify_bloch_element(&xi, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
    assert!(cert
        .trace
        .iter()
        .any(|s| matches!(s, TraceStep::HGenerator { kind: "reflection", .. })));
}

#[test]
fn five_zeta5_collapses() {
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    for k in [1i64, 2] {
        let xi = fs(vec![(5, zeta.pow(k, &f).unwrap())]);
        let cert = verify_bloch_element(&xi, &f, &c).unwrap();
        assert_eq!(cert.status, CertStatus::VerifiedZero, "5[zeta^{k}]");
    }
}

#[test]
fn example_42_theta_certifies() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let theta = fs(vec![(4, a.clone()), (1, a.sub(&FieldElement::one(&f)))]);
    let cert = verify_bloch_element(&theta, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
    assert!(replay_certificate(&cert, &theta, &f).unwrap());
}

#[test]
fn example_43_theta_certifies() {
    let f = create_field(&z(&[2, -1, -1, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let theta = fs(vec![(1, a.pow(2, &f).unwrap()), (2, a.clone())]);
    let cert = verify_bloch_element(&theta, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn example_44_theta_certifies() {
    let f = create_field(&z(&[2, -1, 0, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let one = FieldElement::one(&f);
    let beta_inv = a.sub(&one).inv(&f).unwrap();
    let theta = fs(vec![(-6, one.sub(&a)), (-2, beta_inv)]);
    let cert = verify_bloch_element(&theta, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn example_45_element_certifies() {
    let f = create_field(&z(&[1, 1, -2, 0, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let one = FieldElement::one(&f);
    let beta = one.sub(&a.pow(2, &f).unwrap());
    let theta = fs(vec![(3, beta.clone()), (2, beta.inv(&f).unwrap())]);
    let cert = verify_bloch_element(&theta, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn example_46_elements_certify() {
    let f = create_field(&z(&[-1, 0, 0, 1, 1])).unwrap();
    let c = ctx();
    let minus_a = gen(&f).neg();
    for coeff in [3i64, 1] {
        let xi = fs(vec![(coeff, minus_a.clone())]);
        let cert = verify_bloch_element(&xi, &f, &c).unwrap();
        assert_eq!(cert.status, CertStatus::VerifiedZero, "{coeff}[-alpha]");
    }
}

#[test]
fn claim1_certifies_in_q_zeta3() {
    let f = NumberField::cyclotomic(3).unwrap();
    let c = ctx();
    let zeta3 = gen(&f);
    let zeta6 = zeta3.pow(2, &f).unwrap().neg(); // e^{iπ/3} = -ζ₃²
    let xi = fs(vec![(2, zeta6), (-3, zeta3)]);
    let cert = verify_bloch_element(&xi, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn browkin_b1_and_difference_certify() {
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let one = FieldElement::one(&f);
    let x1 = one.add(&zeta).add(&zeta.pow(2, &f).unwrap());
    let x2 = zeta.pow(4, &f).unwrap().neg();
    let b1 = fs(vec![(2, x1), (4, x2)]);
    let cert = verify_bloch_element(&b1, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
    // b1 - a1 with a1 = 5[zeta]
    let diff = b1.sub(&fs(vec![(5, zeta.clone())]));
    let cert2 = verify_bloch_element(&diff, &f, &c).unwrap();
    assert_eq!(cert2.status, CertStatus::VerifiedZero);
    assert!(replay_certificate(&cert2, &diff, &f).unwrap());
}

#[test]
fn two_is_never_certified() {
    let c = ctx();
    for coeffs in [vec![2i64, 1, 1, 1], vec![1, 0, 1]] {
        let f = create_field(&z(&coeffs)).unwrap();
        let xi = fs(vec![(1, FieldElement::from_int(&f, 2))]);
        let cert = verify_bloch_element(&xi, &f, &c).unwrap();
        assert_ne!(cert.status, CertStatus::VerifiedZero);
        assert_eq!(cert.status, CertStatus::NonzeroWitness);
        assert!(cert.witness.is_some());
    }
}

#[test]
fn discover_relations_certifies_powers() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let b = a.sub(&FieldElement::one(&f));
    let asq = a.pow(2, &f).unwrap();
    let basis = discover_relations(&[a.clone(), b.clone(), asq.clone()], &f, &c).unwrap();
    assert!(basis.verify_all(&f).unwrap());
    // alpha^2 must decompose with exponent 2 on the alpha generator
    let d = basis.decomposition(&asq).unwrap();
    let gi = basis.generators().iter().position(|g| *g == a).unwrap();
    assert_eq!(d.exponents[gi], BigInt::from(2));
}

#[test]
fn discover_relations_example_22() {
    // (1 + ζ + ζ²)(1 + ζ³) = 1 certified
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let one = FieldElement::one(&f);
    let x1 = one.add(&zeta).add(&zeta.pow(2, &f).unwrap());
    let y = one.add(&zeta.pow(3, &f).unwrap());
    let basis = discover_relations(&[x1.clone(), y.clone()], &f, &c).unwrap();
    assert!(basis.verify_all(&f).unwrap());
    // rank 1: a single free generator carries both elements
    assert_eq!(basis.generators().len(), 1);
    let dx = basis.decomposition(&x1).unwrap();
    let dy = basis.decomposition(&y).unwrap();
    assert_eq!(dx.exponents[0], -dy.exponents[0].clone());
}

#[test]
fn discover_relations_example_44_exponents() {
    // support {-β, α}: 1 - β⁻¹ = β⁻¹ α³ decomposes as (-1 on β-gen, 3 on α)
    let f = create_field(&z(&[2, -1, 0, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let one = FieldElement::one(&f);
    let minus_beta = one.sub(&a); // -(α-1)
    let derived = one.sub(&a.sub(&one).inv(&f).unwrap()); // 1 - β⁻¹
    let basis =
        discover_relations(&[minus_beta.clone(), a.clone(), derived.clone()], &f, &c).unwrap();
    assert!(basis.verify_all(&f).unwrap());
    assert_eq!(basis.generators(), &[minus_beta.clone(), a.clone()]);
    let d = basis.decomposition(&derived).unwrap();
    assert_eq!(d.exponents, vec![BigInt::from(-1), BigInt::from(3)]);
}

#[test]
fn reduce_wedge_kills_x_tensor_minus_x() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let a = gen(&f);
    let basis = discover_relations(&[a.clone(), a.neg()], &f, &c).unwrap();
    let tensor = TensorSum { terms: vec![(BigInt::from(1), a.clone(), a.neg())] };
    let v = reduce_wedge(&tensor, &basis).unwrap();
    assert!(v.is_zero(), "x ⊗ (-x) must vanish: {}", v.summary(&basis));
}

#[test]
fn dilog_values_match_paper() {
    let c = ctx();
    // Example 4.2: D(4[α] + [α-1]) = 4.415332477453866
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let a = gen(&f);
    let theta = fs(vec![(4, a.clone()), (1, a.sub(&FieldElement::one(&f)))]);
    let d = dilog_value(&theta, &f, 0, &c).unwrap();
    let expect = Real::parse("4.415332477453866", &c).unwrap();
    assert!(d.sub(&expect, &c).abs().lt(&Real::pow10(-14, &c)), "got {}", d.to_f64());

    // Example 4.5: |D| of the certified combination equals D(α²)
    let f5 = create_field(&z(&[1, 1, -2, 0, 1])).unwrap();
    let a5 = gen(&f5);
    let beta = FieldElement::one(&f5).sub(&a5.pow(2, &f5).unwrap());
    let comb = fs(vec![(3, beta.clone()), (2, beta.inv(&f5).unwrap())]);
    let d5 = dilog_value(&comb, &f5, 0, &c).unwrap().abs();
    let expect5 = Real::parse("0.981368828892232", &c).unwrap();
    assert!(d5.sub(&expect5, &c).abs().lt(&Real::pow10(-14, &c)), "got {}", d5.to_f64());
}

#[test]
fn dilog_of_b1_minus_a1_vanishes() {
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let one = FieldElement::one(&f);
    let x1 = one.add(&zeta).add(&zeta.pow(2, &f).unwrap());
    let x2 = zeta.pow(4, &f).unwrap().neg();
    let b1 = fs(vec![(2, x1), (4, x2)]);
    let diff = b1.sub(&fs(vec![(5, zeta.clone())]));
    for j in 0..2 {
        let d = dilog_value(&diff, &f, j, &c).unwrap();
        assert!(d.abs().lt(&Real::pow10(-30, &c)), "place {j}: {}", d.to_f64());
    }
    // and D(b1) = 5 D(σ(ζ)) at each complex place
    let b1 = diff.add(&fs(vec![(5, zeta.clone())]));
    let d0 = dilog_value(&b1, &f, 0, &c).unwrap();
    let five_dz = dilog_value(&fs(vec![(5, zeta)]), &f, 0, &c).unwrap();
    assert!(d0.sub(&five_dz, &c).abs().lt(&Real::pow10(-30, &c)));
}

#[test]
fn distribution_relation_formal() {
    // [x^n] - n Σ_j [ζ_n^j x] maps to 0 under D for ζ_n ∈ F
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let x = FieldElement::one(&f)
        .add(&zeta.pow(2, &f).unwrap())
        .add(&FieldElement::from_int(&f, 2)); // 3 + ζ²
    let xn = x.pow(5, &f).unwrap();
    let mut terms = vec![(BigInt::from(1), xn)];
    for j in 0..5i64 {
        let zx = zeta.pow(j, &f).unwrap().mul(&x, &f);
        terms.push((BigInt::from(-5), zx));
    }
    let sum = FormalSum::new(terms).unwrap();
    for j in 0..2 {
        let d = dilog_value(&sum, &f, j, &c).unwrap();
        assert!(d.abs().lt(&Real::pow10(-29, &c)), "place {j}: {}", d.to_f64());
    }
}

#[test]
fn identity_22_random_and_degenerate() {
    use rand::{Rng, SeedableRng};
    let c = ctx();
    let _ = &c;
    let gauss = create_field(&z(&[1, 0, 1])).unwrap();
    let cubic = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for field in [&gauss, &cubic] {
        for _ in 0..20 {
            let n = field.degree();
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let coords: Vec<BigRational> = (0..n)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-4i64..=4))))
                    .collect();
                FieldElement::from_coords(field, coords).unwrap()
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            if x.is_zero() || x.is_one() || y.is_zero() || y.is_one() || x == y {
                continue;
            }
            assert!(check_identity_22(&x, &y, field).unwrap());
        }
    }
    // degenerate: x = y
    let a = FieldElement::generator(&gauss);
    assert!(matches!(
        check_identity_22(&a, &a, &gauss),
        Err(Error::DegenerateInput(_))
    ));
}

#[test]
fn five_term_formal_examples() {
    let c = ctx();
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let a = gen(&f);
    let one = FieldElement::one(&f);
    // the defining pair of Example 4.2: x = α, y = α - 1 with 1 + y = x
    let x = a.clone();
    let y = a.sub(&one);
    let r = check_five_term_formal(&x, &y, &f, &c).unwrap();
    assert!(r.lt(&Real::pow10(-30, &c)), "residual {}", r.to_f64());
    // a = b
    let r2 = check_five_term_formal(&x, &x, &f, &c).unwrap();
    assert!(r2.lt(&Real::pow10(-30, &c)));
    // degenerate ab = 1
    let inv = x.inv(&f).unwrap();
    assert!(matches!(
        check_five_term_formal(&x, &inv, &f, &c),
        Err(Error::DegenerateInput(_))
    ));
}

#[test]
fn five_term_boundary_certifies_for_random_elements() {
    // ∂ of the five-term H generator reduces to zero through the full
    // relation-discovery pipeline
    let f = create_field(&z(&[1, 0, 1])).unwrap(); // Q(i)
    let c = ctx();
    let i = gen(&f);
    let one = FieldElement::one(&f);
    let a = i.add(&FieldElement::from_int(&f, 2)); // 2 + i
    let b = i.neg().add(&FieldElement::from_int(&f, 1)); // 1 - i
    let ab = a.mul(&b, &f);
    let d = one.sub(&ab);
    let t3 = one.sub(&a).div(&d, &f).unwrap();
    let t5 = one.sub(&b).div(&d, &f).unwrap();
    let xi = fs(vec![
        (1, a.clone()),
        (1, b.clone()),
        (1, t3),
        (1, d.clone()),
        (1, t5),
    ]);
    let cert = verify_bloch_element(&xi, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn galois_image_of_b1_certifies() {
    // b2 = 2[σx₁] + 4[σx₂] with σ(ζ) = ζ² (Galois action applied term-wise)
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let one = FieldElement::one(&f);
    let x1 = one.add(&zeta).add(&zeta.pow(2, &f).unwrap());
    let x2 = zeta.pow(4, &f).unwrap().neg();
    let b1 = fs(vec![(2, x1), (4, x2)]);
    let sigma = f.power_substitution(2).unwrap();
    let b2 = b1.map_elements(|e| sigma(e)).unwrap();
    let cert = verify_bloch_element(&b2, &f, &c).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedZero);
}

#[test]
fn dilog_value_bad_index() {
    let f = create_field(&z(&[2, 1, 1, 1])).unwrap();
    let c = ctx();
    let xi = fs(vec![(1, FieldElement::from_int(&f, 2))]);
    assert!(matches!(
        dilog_value(&xi, &f, 1, &c),
        Err(Error::BadEmbeddingIndex(1))
    ));
}

#[test]
fn complex_conjugate_check_d_antisymmetry() {
    // D(σ(x̄-analog)) consistency: numeric sanity that dilog_value is the
    // Bloch-Wigner sum and flips sign under conjugate embeddings
    let f = NumberField::cyclotomic(5).unwrap();
    let c = ctx();
    let zeta = gen(&f);
    let xi = fs(vec![(1, zeta.clone())]);
    let d0 = dilog_value(&xi, &f, 0, &c).unwrap();
    let xi_conj = fs(vec![(1, zeta.pow(4, &f).unwrap())]); // complex conjugate of ζ at the std embedding
    let d0c = dilog_value(&xi_conj, &f, 0, &c).unwrap();
    assert!(d0.add(&d0c, &c).abs().lt(&Real::pow10(-30, &c)));
    let _ = Complex::zero();
}
