//! Formal sums in `Z[F]`, the boundary map into `F^× ∧ F^×`, certified
//! kernel verification, and dilogarithm evaluation of formal sums.
//!
//! The kernel check is sound but not complete: `VERIFIED_ZERO` means the
//! boundary literally reduces to the zero wedge coordinate vector over a
//! certified multiplicative basis, with every rewrite backed by exact field
//! arithmetic. A `NONZERO_WITNESS` is evidence, not proof.

mod basis;
mod identities;
mod wedge;

pub use basis::{discover_relations, Decomposition, MultiplicativeBasis};
pub use identities::{check_five_term_formal, check_identity_22};
pub use wedge::{reduce_wedge, WedgeVector};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::apnum::{bloch_wigner, PrecisionContext, Real};
use crate::nfield::{FieldElement, NumberField};
use crate::{Error, Result};

/// Integer combination `Σ nᵢ[aᵢ]` with `aᵢ ∈ F \ {0, 1}`, merged terms,
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    terms: Vec<(BigInt, FieldElement)>,
}

impl FormalSum {
    pub fn new(terms: Vec<(BigInt, FieldElement)>) -> Result<Self> {
        for (_, el) in &terms {
            if el.is_zero() || el.is_one() {
                return Err(Error::ElementZeroOrOne);
            }
        }
        Ok(Self::merge(terms))
    }

    fn merge(terms: Vec<(BigInt, FieldElement)>) -> Self {
        let mut merged: Vec<(BigInt, FieldElement)> = Vec::new();
        for (c, el) in terms {
            match merged.iter_mut().find(|(_, e)| *e == el) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, el)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        // canonical order so structural equality is multiset equality
        merged.sort_by(|a, b| a.1.cmp(&b.1));
        FormalSum { terms: merged }
    }

    pub fn single(coeff: i64, el: FieldElement) -> Result<Self> {
        Self::new(vec![(BigInt::from(coeff), el)])
    }

    pub fn zero() -> Self {
        FormalSum { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(BigInt, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(rhs.terms.iter().cloned());
        Self::merge(t)
    }

    pub fn neg(&self) -> Self {
        FormalSum {
            terms: self.terms.iter().map(|(c, e)| (-c.clone(), e.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(k, e)| (k * c, e.clone())).collect(),
        }
    }

    /// Term-wise image under a map of elements (e.g. a Galois action).
    pub fn map_elements(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Result<Self> {
        Self::new(self.terms.iter().map(|(c, e)| (c.clone(), f(e))).collect())
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, e)| format!("{}*[{}]", c, e.display()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `Σ nᵢ (xᵢ ⊗ yᵢ)`: the boundary image before any basis reduction.
#[derive(Clone, Debug)]
pub struct TensorSum {
    pub terms: Vec<(BigInt, FieldElement, FieldElement)>,
}

/// `∂: [a] ↦ a ⊗ (1-a)`, term by term.
pub fn boundary(xi: &FormalSum, field: &NumberField) -> Result<TensorSum> {
    let one = FieldElement::one(field);
    let mut terms = Vec::with_capacity(xi.terms.len());
    for (c, a) in &xi.terms {
        if a.is_zero() || a.is_one() {
            return Err(Error::ElementZeroOrOne);
        }
        let rest = one.sub(a);
        terms.push((c.clone(), a.clone(), rest));
    }
    Ok(TensorSum { terms })
}

/// Verification outcome of a boundary-kernel check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    #[serde(rename = "VERIFIED_ZERO")]
    VerifiedZero,
    #[serde(rename = "NONZERO_WITNESS")]
    NonzeroWitness,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// One replayable step of a verification trace.
#[derive(Clone, Debug, Serialize)]
pub enum TraceStep {
    /// `count * ([a] + [1-a])` or `count * ([a] + [1/a])` stripped as an H
    /// generator before reduction.
    HGenerator { kind: &'static str, element: String, count: String },
    /// Exactly certified decomposition over the basis.
    Decomposition { element: String, exponents: Vec<String>, torsion: u32 },
    /// Tensor term fed to the wedge reduction.
    TensorTerm { coeff: String, left: String, right: String },
    /// Final reduced coordinates.
    Reduced { summary: String },
}

/// Result of `verify_bloch_element`: status plus a replayable trace and the
/// multiplicative basis all decompositions refer to.
#[derive(Debug)]
pub struct BlochCertificate {
    pub status: CertStatus,
    pub trace: Vec<TraceStep>,
    pub basis: Option<MultiplicativeBasis>,
    pub reduced: Option<WedgeVector>,
    /// Set on NONZERO_WITNESS: a human-readable nonzero coordinate.
    pub witness: Option<String>,
}

/// Sound kernel certification: strips the two-term H generators, reduces the
/// boundary over a certified multiplicative basis, and reports
/// `VERIFIED_ZERO` only when every coordinate vanishes exactly.
pub fn verify_bloch_element(
    xi: &FormalSum,
    field: &NumberField,
    ctx: &PrecisionContext,
) -> Result<BlochCertificate> {
    let mut trace = Vec::new();
    let remainder = strip_h_generators(xi, field, &mut trace);

    let tensor = boundary(&remainder, field)?;
    for (c, x, y) in &tensor.terms {
        trace.push(TraceStep::TensorTerm {
            coeff: c.to_string(),
            left: x.display(),
            right: y.display(),
        });
    }
    let mut support: Vec<FieldElement> = Vec::new();
    for (_, x, y) in &tensor.terms {
        if !support.contains(x) {
            support.push(x.clone());
        }
        if !support.contains(y) {
            support.push(y.clone());
        }
    }
    let basis = match discover_relations(&support, field, ctx) {
        Ok(b) => b,
        Err(Error::RelationSearchFailed(msg)) => {
            trace.push(TraceStep::Reduced { summary: format!("relation search failed: {msg}") });
            return Ok(BlochCertificate {
                status: CertStatus::Inconclusive,
                trace,
                basis: None,
                reduced: None,
                witness: None,
            });
        }
        Err(e) => return Err(e),
    };
    for (el, d) in basis.decompositions() {
        trace.push(TraceStep::Decomposition {
            element: el.display(),
            exponents: d.exponents.iter().map(|e| e.to_string()).collect(),
            torsion: d.torsion,
        });
    }
    let reduced = reduce_wedge(&tensor, &basis)?;
    trace.push(TraceStep::Reduced { summary: reduced.summary(&basis) });
    let status = if reduced.is_zero() {
        CertStatus::VerifiedZero
    } else {
        CertStatus::NonzeroWitness
    };
    let witness = if status == CertStatus::NonzeroWitness {
        Some(reduced.first_nonzero(&basis))
    } else {
        None
    };
    Ok(BlochCertificate {
        status,
        trace,
        basis: Some(basis),
        reduced: Some(reduced),
        witness,
    })
}

/// Remove `c([a] + [1-a])` and `c([a] + [1/a])` pairs; both families lie in
/// `H ⊆ ker ∂`, which shortens traces and sidesteps needless relation
/// discovery.
fn strip_h_generators(
    xi: &FormalSum,
    field: &NumberField,
    trace: &mut Vec<TraceStep>,
) -> FormalSum {
    let one = FieldElement::one(field);
    let mut terms = xi.terms.clone();
    loop {
        let mut stripped = false;
        'outer: for i in 0..terms.len() {
            let (ci, a) = terms[i].clone();
            if ci.is_zero() {
                continue;
            }
            let partners = [
                ("reflection", one.sub(&a)),
                ("inversion", match a.inv(field) {
                    Ok(v) => v,
                    Err(_) => continue,
                }),
            ];
            for (kind, partner) in partners {
                if partner.is_zero() || partner.is_one() || partner == a {
                    continue;
                }
                if let Some(j) = terms.iter().position(|(c, e)| *e == partner && !c.is_zero()) {
                    let cj = terms[j].0.clone();
                    if ci.sign() != cj.sign() {
                        continue;
                    }
                    let mag = ci.abs().min(cj.abs());
                    let count = if ci.is_negative() { -mag } else { mag };
                    terms[i].0 -= &count;
                    terms[j].0 -= &count;
                    trace.push(TraceStep::HGenerator {
                        kind,
                        element: a.display(),
                        count: count.to_string(),
                    });
                    stripped = true;
                    break 'outer;
                }
            }
        }
        if !stripped {
            break;
        }
        terms.retain(|(c, _)| !c.is_zero());
    }
    terms.retain(|(c, _)| !c.is_zero());
    FormalSum { terms }
}

/// `Σ nᵢ D(σ_j(aᵢ))` at the j-th complex place.
pub fn dilog_value(
    xi: &FormalSum,
    field: &NumberField,
    complex_index: usize,
    ctx: &PrecisionContext,
) -> Result<Real> {
    if complex_index >= field.r2() {
        return Err(Error::BadEmbeddingIndex(complex_index));
    }
    let place = field.r1() + complex_index;
    let mut acc = Real::zero();
    for (c, a) in &xi.terms {
        let v = field.eval_embedding(a, place, ctx)?;
        let d = bloch_wigner(&v, ctx)?;
        acc = acc.add(&d.mul(&Real::from_bigint(c, ctx), ctx), ctx);
    }
    Ok(acc)
}

/// A formal sum together with its `VERIFIED_ZERO` certificate; the only
/// currency the regulator accepts.
#[derive(Debug)]
pub struct CertifiedElement {
    pub sum: FormalSum,
    pub certificate: BlochCertificate,
}

/// Verify and wrap; errors with `UncertifiedElement` unless the check
/// returns `VERIFIED_ZERO`.
pub fn certify(
    xi: &FormalSum,
    field: &NumberField,
    ctx: &PrecisionContext,
) -> Result<CertifiedElement> {
    let certificate = verify_bloch_element(xi, field, ctx)?;
    if certificate.status != CertStatus::VerifiedZero {
        return Err(Error::UncertifiedElement);
    }
    Ok(CertifiedElement { sum: xi.clone(), certificate })
}

/// Re-execute a certificate: re-derive the boundary, re-verify every
/// decomposition by exact arithmetic, re-reduce, and confirm the zero
/// vector. Used by the soundness tests.
pub fn replay_certificate(
    cert: &BlochCertificate,
    xi: &FormalSum,
    field: &NumberField,
) -> Result<bool> {
    if cert.status != CertStatus::VerifiedZero {
        return Ok(false);
    }
    let basis = cert.basis.as_ref().ok_or(Error::MissingDecomposition)?;
    if !basis.verify_all(field)? {
        return Ok(false);
    }
    let mut trace_h = Vec::new();
    let rest = strip_h_generators(xi, field, &mut trace_h);
    let tensor = boundary(&rest, field)?;
    let reduced = reduce_wedge(&tensor, basis)?;
    Ok(reduced.is_zero())
}

#[cfg(test)]
mod tests;
