//! Bundled example corpus: the golden values live declaratively in
//! `data/suite.json`; this module recomputes every quantity and reports
//! per-case pass/fail records. The `paper-suite` CLI command and the
//! acceptance tests both run through here.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::apnum::{
    bloch_wigner, dirichlet_l2, Complex, DirichletCharacter, PrecisionContext, Real,
};
use crate::bloch::{certify, verify_bloch_element, CertStatus, FormalSum};
use crate::cli::{field_from_def, parse_formal_sum};
use crate::lichtenbaum::{
    cyclotomic_regulator_closed, cyclotomic_regulator_det, k2_predict_with_zeta, regulator,
    theorem33_chain, w2,
};
use crate::nfield::{FieldElement, NumberField};
use crate::zeta::{cyclotomic_even_zeta2, cyclotomic_zeta2, dedekind_zeta2, transport_to_minus1};
use crate::{Error, Result};

const SUITE_JSON: &str = include_str!("../data/suite.json");

#[derive(Deserialize)]
struct SuiteData {
    k2_cases: Vec<K2Case>,
    cyclo3: Cyclo3Case,
    cyclo5: Cyclo5Case,
    real_quadratic: RealQuadraticCase,
    theorem31_primes: Vec<u64>,
    theorem33_cases: Vec<Theorem33Case>,
    cross_method_primes: Vec<u64>,
    w2_cyclotomic: Vec<W2Case>,
}

#[derive(Deserialize)]
struct K2Case {
    id: String,
    poly: Vec<i64>,
    disc: String,
    r1: usize,
    r2: usize,
    w2: u64,
    embedding: EmbeddingExpect,
    certified: Vec<String>,
    regulator_elements: Vec<String>,
    regulator: String,
    basis_elements: Vec<String>,
    zeta2: String,
    k2: i64,
    #[serde(default)]
    notes: Option<String>,
}

#[derive(Deserialize)]
struct EmbeddingExpect {
    place: usize,
    re: String,
    im: String,
}

#[derive(Deserialize)]
struct Cyclo3Case {
    poly: Vec<i64>,
    claim_certified: Vec<String>,
    d_ratio: String,
    l_ratio: String,
}

#[derive(Deserialize)]
struct Cyclo5Case {
    poly: Vec<i64>,
    w2: u64,
    certified: Vec<String>,
    basis_elements: Vec<String>,
    zeta_star_minus1: String,
    k2: i64,
}

#[derive(Deserialize)]
struct RealQuadraticCase {
    poly: Vec<i64>,
    disc: String,
    zeta_minus1_abs: String,
}

#[derive(Deserialize)]
struct Theorem33Case {
    p: u64,
    k2_plus: u64,
    implied_k2: String,
}

#[derive(Deserialize)]
struct W2Case {
    p: u64,
    w2: u64,
}

/// One checked quantity inside a suite case.
#[derive(Debug)]
pub struct QuantityRecord {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub abs_diff: Option<Real>,
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug)]
pub struct SuiteCase {
    pub id: String,
    pub quantities: Vec<QuantityRecord>,
    pub notes: Option<String>,
    pub runtime_ms: Option<u128>,
}

impl SuiteCase {
    pub fn pass(&self) -> bool {
        self.quantities.iter().all(|q| q.pass)
    }
}

#[derive(Debug)]
pub struct SuiteResult {
    pub cases: Vec<SuiteCase>,
    pub all_pass: bool,
    pub terms: u64,
}

impl SuiteResult {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        json!({
            "terms": self.terms,
            "all_pass": self.all_pass,
            "cases": self.cases.iter().map(|c| json!({
                "id": c.id,
                "pass": c.pass(),
                "notes": c.notes,
                "runtime_ms": c.runtime_ms,
                "quantities": c.quantities.iter().map(|q| json!({
                    "name": q.name,
                    "computed": q.computed,
                    "expected": q.expected,
                    "abs_diff": q.abs_diff.as_ref().map(|d| d.to_decimal_string(ctx.digits().min(20))),
                    "tolerance": q.tolerance,
                    "pass": q.pass,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

struct Recorder<'c> {
    ctx: &'c PrecisionContext,
    quantities: Vec<QuantityRecord>,
}

impl<'c> Recorder<'c> {
    fn new(ctx: &'c PrecisionContext) -> Self {
        Recorder { ctx, quantities: Vec::new() }
    }

    fn exact<T: PartialEq + std::fmt::Display>(&mut self, name: &str, computed: T, expected: T) {
        let pass = computed == expected;
        self.quantities.push(QuantityRecord {
            name: name.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            abs_diff: None,
            tolerance: "exact".into(),
            pass,
        });
    }

    fn close(&mut self, name: &str, computed: &Real, expected: &Real, tol: &Real, tol_desc: &str) {
        let diff = computed.sub(expected, self.ctx).abs();
        let pass = diff.le(tol);
        self.quantities.push(QuantityRecord {
            name: name.into(),
            computed: computed.to_decimal_string(20),
            expected: expected.to_decimal_string(20),
            abs_diff: Some(diff),
            tolerance: tol_desc.into(),
            pass,
        });
    }

    fn status(&mut self, name: &str, status: CertStatus, pass: bool) {
        self.quantities.push(QuantityRecord {
            name: name.into(),
            computed: format!("{status:?}"),
            expected: "VerifiedZero".into(),
            abs_diff: None,
            tolerance: "exact".into(),
            pass,
        });
    }
}

fn load_suite() -> Result<SuiteData> {
    serde_json::from_str(SUITE_JSON)
        .map_err(|e| Error::MalformedInput(format!("bundled suite.json: {e}")))
}

fn parse_expected(s: &str, ctx: &PrecisionContext) -> Result<Real> {
    if let Some((n, d)) = s.split_once('/') {
        let num: i64 = n.trim().parse().map_err(|_| Error::MalformedInput(s.into()))?;
        let den: i64 = d.trim().parse().map_err(|_| Error::MalformedInput(s.into()))?;
        return Ok(Real::from_ratio(
            &BigRational::new(BigInt::from(num), BigInt::from(den)),
            ctx,
        ));
    }
    Real::parse(s, ctx).ok_or_else(|| Error::MalformedInput(format!("bad expected value {s:?}")))
}

/// Run the whole bundled corpus at the given precision and sieve budget.
pub fn run_suite(ctx: &PrecisionContext, terms: u64, timings: bool) -> Result<SuiteResult> {
    let data = load_suite()?;
    let mut cases = Vec::new();
    let mut quartic_zetas: Vec<(String, Real)> = Vec::new();

    for case in &data.k2_cases {
        let t0 = Instant::now();
        let mut rec = Recorder::new(ctx);
        let field = field_from_def(&case.poly, None)?;

        rec.exact("discriminant", field.discriminant().to_string(), case.disc.clone());
        rec.exact("r1", field.r1(), case.r1);
        rec.exact("r2", field.r2(), case.r2);
        rec.exact("w2", w2(&field, ctx)?, case.w2);

        let place = field.eval_embedding(
            &FieldElement::generator(&field),
            case.embedding.place,
            ctx,
        )?;
        let tol_emb = Real::pow10(-14, ctx);
        rec.close("embedding_re", &place.re, &parse_expected(&case.embedding.re, ctx)?, &tol_emb, "1e-14");
        rec.close("embedding_im", &place.im, &parse_expected(&case.embedding.im, ctx)?, &tol_emb, "1e-14");

        for (i, text) in case.certified.iter().enumerate() {
            let sum = parse_formal_sum(text, &field)?;
            let cert = verify_bloch_element(&sum, &field, ctx)?;
            rec.status(
                &format!("certificate[{i}] {text}"),
                cert.status,
                cert.status == CertStatus::VerifiedZero,
            );
        }

        let reg_elements: Vec<_> = case
            .regulator_elements
            .iter()
            .map(|t| certify(&parse_formal_sum(t, &field)?, &field, ctx))
            .collect::<Result<_>>()?;
        let reg = regulator(&field, &reg_elements, ctx)?;
        rec.close(
            "regulator_det",
            &reg.det_abs,
            &parse_expected(&case.regulator, ctx)?,
            &Real::pow10(-12, ctx),
            "1e-12",
        );

        let zeta = dedekind_zeta2(&field, terms, ctx)?;
        rec.close(
            "zeta2",
            &zeta.value,
            &parse_expected(&case.zeta2, ctx)?,
            &zeta.tail_bound,
            "tail_bound",
        );
        let tail_cap = Real::from_f64(1e-5, ctx);
        rec.quantities.push(QuantityRecord {
            name: "zeta2_tail_bound".into(),
            computed: zeta.tail_bound.to_decimal_string(6),
            expected: "< 1e-5".into(),
            abs_diff: None,
            tolerance: "1e-5".into(),
            pass: zeta.tail_bound.lt(&tail_cap),
        });
        if case.id.starts_with("quartic") {
            quartic_zetas.push((case.id.clone(), zeta.value.clone()));
        }

        let basis: Vec<_> = case
            .basis_elements
            .iter()
            .map(|t| certify(&parse_formal_sum(t, &field)?, &field, ctx))
            .collect::<Result<_>>()?;
        let k2 = k2_predict_with_zeta(&field, &basis, zeta, ctx)?;
        rec.exact("k2_nearest_integer", k2.nearest_integer.clone(), BigInt::from(case.k2));
        let dev_tol = Real::from_f64(1e-3, ctx).max(&k2.error_budget);
        rec.quantities.push(QuantityRecord {
            name: "k2_deviation".into(),
            computed: k2.deviation.to_decimal_string(6),
            expected: "< max(1e-3, error_budget)".into(),
            abs_diff: Some(k2.deviation.clone()),
            tolerance: "max(1e-3, error_budget)".into(),
            pass: k2.deviation.lt(&dev_tol) && k2.consistent,
        });

        cases.push(SuiteCase {
            id: case.id.clone(),
            quantities: rec.quantities,
            notes: case.notes.clone(),
            runtime_ms: timings.then(|| t0.elapsed().as_millis()),
        });
    }

    cases.push(run_cyclo3(&data.cyclo3, ctx, timings)?);
    cases.push(run_cyclo5(&data.cyclo5, ctx, terms, timings)?);
    cases.push(run_theorem31(&data.theorem31_primes, ctx, timings)?);
    cases.push(run_theorem33(&data.theorem33_cases, &data.real_quadratic, ctx, terms, timings)?);
    cases.push(run_cross_method(&data.cross_method_primes, ctx, terms, timings)?);
    cases.push(run_w2_closed_forms(&data.w2_cyclotomic, ctx, timings)?);
    cases.push(same_zeta_comparison(&quartic_zetas, ctx));

    let all_pass = cases.iter().all(|c| c.pass());
    Ok(SuiteResult { cases, all_pass, terms })
}

fn run_cyclo3(case: &Cyclo3Case, ctx: &PrecisionContext, timings: bool) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    let field = field_from_def(&case.poly, None)?;
    let tol = Real::pow10(-30, ctx);

    // D(ζ3), D(ζ6) through the embeddings; L-values through Hurwitz zeta
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
    let z3 = Complex::unit_circle(&Real::from_ratio(&third, ctx), ctx);
    let z6 = Complex::unit_circle(&Real::from_ratio(&sixth, ctx), ctx);
    let d3 = bloch_wigner(&z3, ctx)?;
    let d6 = bloch_wigner(&z6, ctx)?;
    let l3 = dirichlet_l2(&DirichletCharacter::chi3(), ctx)?.re;
    let l6 = dirichlet_l2(&DirichletCharacter::chi6(), ctx)?.re;
    let sqrt3_half = Real::from_i64(3, ctx).sqrt(ctx).div(&Real::from_i64(2, ctx), ctx);

    rec.close("eq_2_5: D(z3) = (sqrt3/2) L(chi3,2)", &d3, &sqrt3_half.mul(&l3, ctx), &tol, "1e-30");
    let rhs26 = sqrt3_half.mul(&l6.add(&l3.div(&Real::from_i64(4, ctx), ctx), ctx), ctx);
    rec.close("eq_2_6: D(z6) identity", &d6, &rhs26, &tol, "1e-30");
    rec.close(
        "eq_2_7: L(chi6,2)/L(chi3,2)",
        &l6.div(&l3, ctx),
        &parse_expected(&case.l_ratio, ctx)?,
        &tol,
        "1e-30",
    );
    rec.close(
        "d_ratio: D(z6)/D(z3)",
        &d6.div(&d3, ctx),
        &parse_expected(&case.d_ratio, ctx)?,
        &tol,
        "1e-30",
    );

    for text in &case.claim_certified {
        let sum = parse_formal_sum(text, &field)?;
        let cert = verify_bloch_element(&sum, &field, ctx)?;
        rec.status(&format!("certificate {text}"), cert.status, cert.status == CertStatus::VerifiedZero);
        // numeric echo at the unique complex place
        let d = crate::bloch::dilog_value(&sum, &field, 0, ctx)?;
        rec.close(&format!("dilog_echo {text}"), &d, &Real::zero(), &tol, "1e-30");
    }

    Ok(SuiteCase {
        id: "cyclotomic_q3_identities".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn run_cyclo5(
    case: &Cyclo5Case,
    ctx: &PrecisionContext,
    terms: u64,
    timings: bool,
) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    let field = field_from_def(&case.poly, None)?;
    rec.exact("w2", w2(&field, ctx)?, case.w2);

    for text in &case.certified {
        let sum = parse_formal_sum(text, &field)?;
        let cert = verify_bloch_element(&sum, &field, ctx)?;
        rec.status(&format!("certificate {text}"), cert.status, cert.status == CertStatus::VerifiedZero);
    }

    // [2] must never be certified
    let two = FormalSum::single(1, FieldElement::from_int(&field, 2))?;
    let cert2 = verify_bloch_element(&two, &field, ctx)?;
    rec.quantities.push(QuantityRecord {
        name: "certificate [2] rejected".into(),
        computed: format!("{:?}", cert2.status),
        expected: "not VerifiedZero".into(),
        abs_diff: None,
        tolerance: "exact".into(),
        pass: cert2.status != CertStatus::VerifiedZero,
    });

    let zeta = dedekind_zeta2(&field, terms, ctx)?;
    let transport = transport_to_minus1(&field);
    let star = transport.zeta_star_minus1_abs(&zeta.value, field.discriminant(), ctx);
    rec.close(
        "zeta_star_minus1",
        &star,
        &parse_expected(&case.zeta_star_minus1, ctx)?,
        &Real::from_f64(5e-8, ctx),
        "5e-8 (sieve tail + 10-digit print)",
    );

    let basis: Vec<_> = case
        .basis_elements
        .iter()
        .map(|t| certify(&parse_formal_sum(t, &field)?, &field, ctx))
        .collect::<Result<_>>()?;
    let k2 = k2_predict_with_zeta(&field, &basis, zeta, ctx)?;
    rec.exact("k2_nearest_integer", k2.nearest_integer.clone(), BigInt::from(case.k2));
    rec.quantities.push(QuantityRecord {
        name: "k2_consistent".into(),
        computed: k2.consistent.to_string(),
        expected: "true".into(),
        abs_diff: Some(k2.deviation.clone()),
        tolerance: "max(1e-3, error_budget)".into(),
        pass: k2.consistent,
    });

    Ok(SuiteCase {
        id: "cyclotomic_q5_chain".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn run_theorem31(primes: &[u64], ctx: &PrecisionContext, timings: bool) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    let tol = Real::pow10(-25, ctx);
    for &p in primes {
        let routes = cyclotomic_regulator_det(p, ctx)?;
        let closed = cyclotomic_regulator_closed(p, ctx)?;
        rec.close(&format!("p={p}: matrix route vs closed form"), &routes.via_matrix, &closed, &tol, "1e-25");
        rec.close(
            &format!("p={p}: character-sum route vs closed form"),
            &routes.via_character_sums,
            &closed,
            &tol,
            "1e-25",
        );
    }
    Ok(SuiteCase {
        id: "regulator_two_routes".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn run_theorem33(
    cases: &[Theorem33Case],
    rq: &RealQuadraticCase,
    ctx: &PrecisionContext,
    terms: u64,
    timings: bool,
) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    let tol = Real::pow10(-20, ctx);
    for case in cases {
        let r = theorem33_chain(case.p, case.k2_plus, ctx)?;
        rec.close(
            &format!("p={}: both sides", case.p),
            &r.left,
            &r.right,
            &r.left.mul(&tol, ctx),
            "relative 1e-20",
        );
        let implied = if r.implied_k2.is_integer() {
            r.implied_k2.numer().to_string()
        } else {
            r.implied_k2.to_string()
        };
        rec.exact(&format!("p={}: implied #K2(O_F)", case.p), implied, case.implied_k2.clone());
        if case.p == 5 {
            // |ζ_{F+}(-1)| both analytically and via Birch–Tate
            let expect = parse_expected(&rq.zeta_minus1_abs, ctx)?;
            rec.close("p=5: zeta_{F+}(-1) analytic", &r.zeta_plus_minus1_analytic, &expect, &Real::pow10(-30, ctx), "1e-30");
        }
    }
    // independent route: sieve the real quadratic field and transport
    let field = field_from_def(&rq.poly, None)?;
    rec.exact("sqrt5_disc", field.discriminant().to_string(), rq.disc.clone());
    let z = dedekind_zeta2(&field, terms, ctx)?;
    let tr = transport_to_minus1(&field);
    let star = tr.zeta_star_minus1_abs(&z.value, field.discriminant(), ctx);
    let expect = parse_expected(&rq.zeta_minus1_abs, ctx)?;
    let budget = z.tail_bound.div(&z.value, ctx).mul(&expect, ctx).mul(&Real::from_i64(2, ctx), ctx);
    rec.close("sqrt5: |zeta(-1)| via sieve transport", &star, &expect, &budget, "sieve tail");
    Ok(SuiteCase {
        id: "special_value_chain".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn run_cross_method(
    primes: &[u64],
    ctx: &PrecisionContext,
    terms: u64,
    timings: bool,
) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    for &p in primes {
        let field = NumberField::cyclotomic(p)?;
        let sieve = dedekind_zeta2(&field, terms, ctx)?;
        let product = cyclotomic_zeta2(p, ctx)?;
        let combined = sieve.tail_bound.add(&product.tail_bound, ctx);
        rec.close(
            &format!("p={p}: sieve vs character product"),
            &sieve.value,
            &product.value,
            &combined,
            "combined tail bounds",
        );
    }
    // even-character subproduct equals the real quadratic sieve for p = 5
    let even = cyclotomic_even_zeta2(5, ctx)?;
    let f = field_from_def(&[-1, -1, 1], None)?;
    let sieve = dedekind_zeta2(&f, terms, ctx)?;
    let combined = sieve.tail_bound.add(&even.tail_bound, ctx);
    rec.close(
        "p=5 even subproduct vs sqrt5 sieve",
        &even.value,
        &sieve.value,
        &combined,
        "combined tail bounds",
    );
    Ok(SuiteCase {
        id: "zeta_cross_method".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn run_w2_closed_forms(cases: &[W2Case], ctx: &PrecisionContext, timings: bool) -> Result<SuiteCase> {
    let t0 = Instant::now();
    let mut rec = Recorder::new(ctx);
    for case in cases {
        let field = NumberField::cyclotomic(case.p)?;
        rec.exact(&format!("w2(Q(zeta_{}))", case.p), w2(&field, ctx)?, case.w2);
    }
    Ok(SuiteCase {
        id: "w2_cyclotomic".into(),
        quantities: rec.quantities,
        notes: None,
        runtime_ms: timings.then(|| t0.elapsed().as_millis()),
    })
}

fn same_zeta_comparison(zetas: &[(String, Real)], ctx: &PrecisionContext) -> SuiteCase {
    let mut rec = Recorder::new(ctx);
    if zetas.len() == 2 {
        let diff = zetas[0].1.sub(&zetas[1].1, ctx).abs();
        rec.quantities.push(QuantityRecord {
            name: format!("sieve({}) vs sieve({})", zetas[0].0, zetas[1].0),
            computed: diff.to_decimal_string(6),
            expected: "identical coefficient sums".into(),
            abs_diff: Some(diff.clone()),
            tolerance: "exact".into(),
            pass: diff.is_zero(),
        });
    }
    SuiteCase {
        id: "quartic_same_zeta_report".into(),
        quantities: rec.quantities,
        notes: Some("the two degree-4 fields report identical sieve values".into()),
        runtime_ms: None,
    }
}
