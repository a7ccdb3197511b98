use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::apnum::{PrecisionContext, Real};
use crate::exact::intmat::{self, smith_normal_form};
use crate::exact::lll::lll_reduce;
use crate::nfield::{FieldElement, NumberField};
use crate::{Error, Result};

/// Spec'd search bound on relation exponents.
const EXPONENT_BOUND: i64 = 64;
/// Cap on transform entries when reconstructing generators exactly.
const TRANSFORM_BOUND: i64 = 10_000;

/// Exponents over the free generators plus a torsion power.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub exponents: Vec<BigInt>,
    pub torsion: u32,
}

/// A certified multiplicative basis for a set of support elements:
/// independent free generators, one torsion generator `ζ_w`, and for every
/// support element an exactly verified factorization
/// `x = ζ_w^t · Π gᵢ^{eᵢ}`.
#[derive(Debug)]
pub struct MultiplicativeBasis {
    generators: Vec<FieldElement>,
    torsion_gen: FieldElement,
    torsion_order: u32,
    decomp: BTreeMap<FieldElement, Decomposition>,
}

impl MultiplicativeBasis {
    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn torsion_generator(&self) -> (&FieldElement, u32) {
        (&self.torsion_gen, self.torsion_order)
    }

    pub fn torsion_order(&self) -> u32 {
        self.torsion_order
    }

    pub fn decomposition(&self, x: &FieldElement) -> Option<&Decomposition> {
        self.decomp.get(x)
    }

    pub fn decompositions(&self) -> impl Iterator<Item = (&FieldElement, &Decomposition)> {
        self.decomp.iter()
    }

    /// Re-verify every stored decomposition with exact arithmetic.
    pub fn verify_all(&self, field: &NumberField) -> Result<bool> {
        for (x, d) in &self.decomp {
            if !self.verify_one(field, x, d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn verify_one(&self, field: &NumberField, x: &FieldElement, d: &Decomposition) -> Result<bool> {
        let mut acc = self
            .torsion_gen
            .pow(d.torsion as i64, field)?;
        for (g, e) in self.generators.iter().zip(&d.exponents) {
            let e = e.to_i64().ok_or(Error::MissingDecomposition)?;
            acc = acc.mul(&g.pow(e, field)?, field);
        }
        Ok(&acc == x)
    }
}

/// Build a certified multiplicative basis for the support.
///
/// Candidate integer relations among the log-embedding vectors are found by
/// LLL; each candidate is verified by exact field arithmetic (the product
/// must be a root of unity). The verified relation lattice is put in Smith
/// normal form: zero columns give the free generators, and every support
/// element's factorization is certified exactly afterwards.
pub fn discover_relations(
    support: &[FieldElement],
    field: &NumberField,
    ctx: &PrecisionContext,
) -> Result<MultiplicativeBasis> {
    for x in support {
        if x.is_zero() {
            return Err(Error::DegenerateInput("zero element in support".into()));
        }
    }
    let (zeta, w) = field.torsion_generator(ctx)?;
    let torsion_powers = torsion_power_table(&zeta, w, field)?;

    // dedup, preserving first-occurrence order
    let mut elems: Vec<FieldElement> = Vec::new();
    for x in support {
        if !elems.contains(x) {
            elems.push(x.clone());
        }
    }

    let mut decomp: BTreeMap<FieldElement, Decomposition> = BTreeMap::new();
    let mut free: Vec<FieldElement> = Vec::new();
    for x in &elems {
        if field.root_of_unity_order(x).is_some() {
            let t = match_torsion(x, &torsion_powers)?;
            decomp.insert(x.clone(), Decomposition { exponents: Vec::new(), torsion: t });
        } else {
            free.push(x.clone());
        }
    }

    if free.is_empty() {
        return Ok(MultiplicativeBasis {
            generators: Vec::new(),
            torsion_gen: zeta,
            torsion_order: w,
            decomp,
        });
    }

    // later support elements are preferentially eliminated, so reverse for
    // the relation search and restore order at the end
    let mut ys: Vec<FieldElement> = free.clone();
    ys.reverse();
    let r = ys.len();

    let relations = find_relations(&ys, field, &zeta, &torsion_powers, ctx)?;

    // trivial case: everything independent
    let (gens_rev, rows_rev): (Vec<FieldElement>, Vec<Vec<BigInt>>) = if relations.is_empty() {
        (ys.clone(), intmat::identity(r))
    } else {
        let snf = smith_normal_form(&relations);
        let rank = (0..relations.len().min(r))
            .take_while(|&i| !snf.d[i][i].is_zero())
            .count();
        let vinv = intmat::unimodular_inverse(&snf.v);
        // generators h_j = Π y_i^{Vinv[j][i]}; j < rank are torsion
        let mut gens = Vec::new();
        for j in rank..r {
            if vinv[j].iter().any(|c| c.abs() > BigInt::from(TRANSFORM_BOUND)) {
                return Err(Error::RelationSearchFailed(
                    "basis transform entries too large".into(),
                ));
            }
            let mut h = FieldElement::one(field);
            for (i, y) in ys.iter().enumerate() {
                let e = vinv[j][i].to_i64().unwrap();
                if e != 0 {
                    h = h.mul(&y.pow(e, field)?, field);
                }
            }
            gens.push(h);
        }
        // decomposition rows: y_i = Π_j h_j^{V[i][j]}; keep only free columns
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|i| snf.v[i][rank..].to_vec())
            .collect();
        (gens, rows)
    };

    // restore original orientation: generators and exponent rows get their
    // order from the original support
    let mut generators = gens_rev;
    generators.reverse();
    for (i, y) in ys.iter().enumerate() {
        let mut exps = rows_rev[i].clone();
        exps.reverse();
        // certify: the torsion part is the exact ratio y / Π g^e
        let mut prod = FieldElement::one(field);
        for (g, e) in generators.iter().zip(&exps) {
            let e = e
                .to_i64()
                .ok_or_else(|| Error::RelationSearchFailed("exponent overflow".into()))?;
            if e != 0 {
                prod = prod.mul(&g.pow(e, field)?, field);
            }
        }
        let ratio = y.div(&prod, field)?;
        let t = match_torsion(&ratio, &torsion_powers)?;
        decomp.insert(y.clone(), Decomposition { exponents: exps, torsion: t });
    }

    Ok(MultiplicativeBasis {
        generators,
        torsion_gen: zeta,
        torsion_order: w,
        decomp,
    })
}

fn torsion_power_table(
    zeta: &FieldElement,
    w: u32,
    field: &NumberField,
) -> Result<Vec<FieldElement>> {
    let mut table = Vec::with_capacity(w as usize);
    let mut cur = FieldElement::one(field);
    for _ in 0..w {
        table.push(cur.clone());
        cur = cur.mul(zeta, field);
    }
    if !cur.is_one() {
        return Err(Error::RelationSearchFailed(
            "torsion generator order mismatch".into(),
        ));
    }
    Ok(table)
}

fn match_torsion(x: &FieldElement, table: &[FieldElement]) -> Result<u32> {
    table
        .iter()
        .position(|p| p == x)
        .map(|t| t as u32)
        .ok_or_else(|| {
            Error::RelationSearchFailed("element is torsion but outside <zeta_w>".into())
        })
}

/// LLL candidates for the relation lattice of the free support elements,
/// each verified exactly before being admitted.
///
/// The lattice carries, per place, a scaled `log|σ_j(·)|` column and a
/// scaled `arg σ_j(·)` column; one auxiliary variable per place absorbs
/// `2π` wraps and one tracks the torsion exponent through
/// `arg σ_j(ζ_w)`. With the argument data the numeric kernel matches the
/// true relation lattice, so the exact verification below rarely rejects.
fn find_relations(
    ys: &[FieldElement],
    field: &NumberField,
    zeta: &FieldElement,
    torsion_powers: &[FieldElement],
    ctx: &PrecisionContext,
) -> Result<Vec<Vec<BigInt>>> {
    let r = ys.len();
    let places = field.num_places();
    let scale_bits = (ctx.bits() as i64) - 24;
    let dim = r + 1 + places; // exponents, torsion exponent, 2π wraps
    let cols = dim + 2 * places;

    let two_pi = Real::pi(ctx).mul(&Real::from_i64(2, ctx), ctx);
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (i, y) in ys.iter().enumerate() {
        let mut row = vec![BigInt::zero(); cols];
        row[i] = BigInt::one();
        for j in 0..places {
            let v = field.eval_embedding(y, j, ctx)?;
            row[dim + j] = v.ln_abs(ctx).to_scaled_bigint(scale_bits);
            row[dim + places + j] = v.arg(ctx).to_scaled_bigint(scale_bits);
        }
        basis.push(row);
    }
    // torsion generator row: subtracting t·arg σ_j(ζ_w)
    {
        let mut row = vec![BigInt::zero(); cols];
        row[r] = BigInt::one();
        for j in 0..places {
            let v = field.eval_embedding(zeta, j, ctx)?;
            row[dim + places + j] = v.arg(ctx).neg().to_scaled_bigint(scale_bits);
        }
        basis.push(row);
    }
    // one 2π row per place
    for j in 0..places {
        let mut row = vec![BigInt::zero(); cols];
        row[r + 1 + j] = BigInt::one();
        row[dim + places + j] = two_pi.to_scaled_bigint(scale_bits);
        basis.push(row);
    }
    lll_reduce(&mut basis);

    let residual_gate = BigInt::from(1) << ((scale_bits / 2).max(16) as usize);
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    'rows: for row in &basis {
        let exps = &row[..r];
        if exps.iter().all(|e| e.is_zero()) {
            continue;
        }
        if exps.iter().any(|e| e.abs() > BigInt::from(EXPONENT_BOUND)) {
            continue;
        }
        for c in &row[dim..] {
            if c.abs() > residual_gate {
                continue 'rows;
            }
        }
        // exact verification: Π y^e must be a root of unity in <zeta_w>
        let mut prod = FieldElement::one(field);
        for (y, e) in ys.iter().zip(exps) {
            let e = e.to_i64().unwrap();
            if e != 0 {
                prod = prod.mul(&y.pow(e, field)?, field);
            }
        }
        if field.root_of_unity_order(&prod).is_some()
            && torsion_powers.iter().any(|p| p == &prod)
        {
            relations.push(exps.to_vec());
        }
    }
    Ok(relations)
}
