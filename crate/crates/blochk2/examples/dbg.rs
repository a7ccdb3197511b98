use blochk2::apnum::PrecisionContext;
use blochk2::nfield::create_field;
use blochk2::zeta::{cyclotomic_zeta2, dedekind_zeta2};
use num_bigint::BigInt;
use std::time::Instant;

fn z(v: &[i64]) -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() }

fn main() {
    let c = PrecisionContext::default();
    let cases: &[(&[i64], &str)] = &[
        (&[2, 1, 1, 1], "1.516751720642021"),
        (&[2, -1, -1, 1], "1.472479780199297"),
        (&[2, -1, 0, 1], "1.841207016617394"),
        (&[1, 1, -2, 0, 1], "1.056940574599707"),
        (&[-1, 0, 0, 1, 1], "1.056940574599707"),
    ];
    for (coeffs, expect) in cases {
        let f = create_field(&z(coeffs)).unwrap();
        let t0 = Instant::now();
        let r = dedekind_zeta2(&f, 10_000_000, &c).unwrap();
        let dt = t0.elapsed();
        let e: f64 = expect.parse().unwrap();
        println!(
            "{:?}: value {:.15} expect {} |err| {:.3e} tail {:.3e} time {:.1?}",
            coeffs, r.value.to_f64(), expect, (r.value.to_f64() - e).abs(), r.tail_bound.to_f64(), dt
        );
    }
    // cyclotomic cross-check p = 5
    let f5 = blochk2::nfield::NumberField::cyclotomic(5).unwrap();
    let t0 = Instant::now();
    let sieve = dedekind_zeta2(&f5, 10_000_000, &c).unwrap();
    println!("phi5 sieve: {:.15} tail {:.3e} time {:.1?}", sieve.value.to_f64(), sieve.tail_bound.to_f64(), t0.elapsed());
    let prod = cyclotomic_zeta2(5, &c).unwrap();
    println!("phi5 char product: {:.15} tail {:.3e}", prod.value.to_f64(), prod.tail_bound.to_f64());
    println!("diff: {:.3e}", (sieve.value.to_f64() - prod.value.to_f64()).abs());
}
