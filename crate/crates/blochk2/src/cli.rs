//! Command-line front end: configuration, input parsing, command dispatch
//! and exit-code mapping.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::apnum::{bloch_wigner, li2, Complex, PrecisionContext, Real};
use crate::bloch::{certify, verify_bloch_element, CertStatus, FormalSum};
use crate::corpus;
use crate::lichtenbaum::{
    cyclotomic_regulator_closed, cyclotomic_regulator_det, k2_predict, theorem33_chain,
};
use crate::nfield::{create_field_with_override, FieldElement, NumberField};
use crate::report;
use crate::zeta::dedekind_zeta2;
use crate::{Error, Result};

/// Exit codes: scriptable contract.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_INCONCLUSIVE: i32 = 2;
    pub const NUMERIC_FAILURE: i32 = 3;
    pub const INPUT_ERROR: i32 = 4;
    pub const UNSUPPORTED_FIELD: i32 = 5;
}

/// Which subcommand to run, with its inputs.
#[derive(Clone, Debug)]
pub enum Command {
    Dilog { z: String },
    FieldInfo { field_path: PathBuf },
    VerifyBloch { field_path: PathBuf, elements_path: PathBuf },
    Zeta2 { field_path: PathBuf },
    K2Predict { field_path: PathBuf, elements_path: PathBuf },
    Cyclo { p: u64, check: CycloCheck, k2_plus: Option<u64> },
    PaperSuite { timings: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloCheck {
    Regulator,
    Theorem33,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Fully resolved run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub digits: u32,
    pub terms: u64,
    pub command: Command,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn context(&self) -> Result<PrecisionContext> {
        PrecisionContext::new(self.digits)
    }
}

/// Outcome of a run: rendered report plus process exit code.
pub struct RunOutcome {
    pub report: Value,
    pub exit_code: i32,
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::MalformedInput(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::DegenerateInput(_)
        | Error::WrongElementCount { .. }
        | Error::PrimeOutOfRange(_)
        | Error::InvalidPrecision(_)
        | Error::ElementZeroOrOne
        | Error::DivisionByZero
        | Error::BadEmbeddingIndex(_)
        | Error::TermBudget(_) => exit_code::INPUT_ERROR,
        Error::NonMonicPolynomial
        | Error::ReduciblePolynomial(_)
        | Error::IrreducibilityUnknown
        | Error::DegreeTooSmall(_)
        | Error::NonMaximalOrder(_)
        | Error::BadDiscriminantOverride
        | Error::DiscriminantFactorization(_)
        | Error::UnsupportedPrime(_)
        | Error::UnsupportedField(_) => exit_code::UNSUPPORTED_FIELD,
        Error::PrecisionUnattainable(_)
        | Error::RelationSearchFailed(_)
        | Error::MissingDecomposition
        | Error::SingularRegulator(_)
        | Error::UncertifiedElement => exit_code::NUMERIC_FAILURE,
    }
}

/// Field definition file: `{"poly": [c0, ..., 1], "disc_override": d?}`.
#[derive(Deserialize)]
struct FieldFile {
    poly: Vec<i64>,
    #[serde(default)]
    disc_override: Option<i64>,
}

pub fn load_field(path: &Path) -> Result<NumberField> {
    let raw = std::fs::read_to_string(path)?;
    let parsed: FieldFile = serde_json::from_str(&raw)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    field_from_def(&parsed.poly, parsed.disc_override)
}

pub fn field_from_def(poly: &[i64], disc_override: Option<i64>) -> Result<NumberField> {
    let coeffs: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
    create_field_with_override(&coeffs, disc_override.map(BigInt::from))
}

/// Elements file: `{"elements": [...]}` where each entry is either a formal
/// sum string like `"4*[a] + 1*[a-1]"` or an array `[[c, [coords...]], ...]`.
#[derive(Deserialize)]
struct ElementsFile {
    elements: Vec<ElementEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementEntry {
    Text(String),
    Terms(Vec<(i64, Vec<CoordEntry>)>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoordEntry {
    Int(i64),
    Frac(String),
}

pub fn load_elements(path: &Path, field: &NumberField) -> Result<Vec<FormalSum>> {
    let raw = std::fs::read_to_string(path)?;
    let parsed: ElementsFile = serde_json::from_str(&raw)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    parsed
        .elements
        .iter()
        .map(|entry| match entry {
            ElementEntry::Text(s) => parse_formal_sum(s, field),
            ElementEntry::Terms(terms) => {
                let mut out = Vec::new();
                for (c, coords) in terms {
                    let mut v = Vec::with_capacity(coords.len());
                    for coord in coords {
                        v.push(match coord {
                            CoordEntry::Int(n) => BigRational::from_integer(BigInt::from(*n)),
                            CoordEntry::Frac(s) => parse_rational(s)?,
                        });
                    }
                    out.push((BigInt::from(*c), FieldElement::from_coords(field, v)?));
                }
                FormalSum::new(out)
            }
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedInput(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let num: BigInt = n.trim().parse().map_err(|_| bad())?;
            let den: BigInt = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parse `"4*[a] + 1*[a-1] - 2*[1/(a-1)]"` into a formal sum: integer
/// coefficients on brackets of polynomial expressions in the generator `a`
/// (with `+ - * / ^` and parentheses).
pub fn parse_formal_sum(input: &str, field: &NumberField) -> Result<FormalSum> {
    let mut terms = Vec::new();
    let mut rest = input.trim();
    let mut leading_sign = BigInt::one();
    if let Some(r) = rest.strip_prefix('-') {
        leading_sign = -leading_sign;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let open = rest
            .find('[')
            .ok_or_else(|| Error::MalformedInput(format!("missing '[' in {input:?}")))?;
        let close = rest[open..]
            .find(']')
            .map(|i| open + i)
            .ok_or_else(|| Error::MalformedInput(format!("missing ']' in {input:?}")))?;
        let coeff_part = rest[..open].trim().trim_end_matches('*').trim();
        let coeff: BigInt = if coeff_part.is_empty() {
            BigInt::one()
        } else {
            coeff_part
                .parse()
                .map_err(|_| Error::MalformedInput(format!("bad coefficient {coeff_part:?}")))?
        };
        let elem = ElementParser::parse(&rest[open + 1..close], field)?;
        terms.push((leading_sign.clone() * coeff, elem));
        rest = rest[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix('+') {
            leading_sign = BigInt::one();
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            leading_sign = -BigInt::one();
            rest = r.trim_start();
        } else {
            return Err(Error::MalformedInput(format!("expected '+' or '-' in {input:?}")));
        }
    }
    FormalSum::new(terms)
}

/// Recursive-descent parser for polynomial expressions in `a` over Q.
struct ElementParser<'a, 'f> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    field: &'f NumberField,
}

impl<'a, 'f> ElementParser<'a, 'f> {
    fn parse(s: &'a str, field: &'f NumberField) -> Result<FieldElement> {
        let mut p = ElementParser { chars: s.chars().peekable(), field };
        let v = p.expr()?;
        p.skip_ws();
        if p.chars.peek().is_some() {
            return Err(Error::MalformedInput(format!("trailing input in element {s:?}")));
        }
        Ok(v)
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        let mut negate = false;
        if self.chars.peek() == Some(&'-') {
            self.chars.next();
            negate = true;
        } else if self.chars.peek() == Some(&'+') {
            self.chars.next();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f, self.field);
                }
                Some('/') => {
                    self.chars.next();
                    let f = self.factor()?;
                    acc = acc.div(&f, self.field)?;
                }
                // implicit multiplication: `2a`, `a(a+1)`
                Some('a') | Some('(') => {
                    let f = self.factor()?;
                    acc = acc.mul(&f, self.field);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        self.skip_ws();
        if self.chars.peek() == Some(&'^') {
            self.chars.next();
            self.skip_ws();
            let mut digits = String::new();
            if self.chars.peek() == Some(&'-') {
                digits.push('-');
                self.chars.next();
            }
            while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.chars.next().unwrap());
            }
            let e: i64 = digits
                .parse()
                .map_err(|_| Error::MalformedInput("bad exponent".into()))?;
            return base.pow(e, self.field);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        match self.chars.peek() {
            Some('a') => {
                self.chars.next();
                Ok(FieldElement::generator(self.field))
            }
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::MalformedInput("missing ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(self.chars.next().unwrap());
                }
                let n: BigInt = digits.parse().unwrap();
                Ok(FieldElement::from_rational(self.field, BigRational::from_integer(n)))
            }
            other => Err(Error::MalformedInput(format!("unexpected {other:?} in element"))),
        }
    }
}

/// Parse a complex literal like `0.5+0.5i`, `-1.2e-3i`, `2`.
pub fn parse_complex(s: &str, ctx: &PrecisionContext) -> Result<Complex> {
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::MalformedInput(format!("bad complex literal {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i') {
        // split into real and imaginary at the last top-level sign
        let chars: Vec<char> = body.chars().collect();
        let mut split = None;
        for k in (1..chars.len()).rev() {
            let c = chars[k];
            if (c == '+' || c == '-') && chars[k - 1] != 'e' && chars[k - 1] != 'E' {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re_part: String = chars[..k].iter().collect();
                let im_part: String = chars[k..].iter().collect();
                let im_str = match im_part.as_str() {
                    "+" => "1".into(),
                    "-" => "-1".into(),
                    other => other.to_string(),
                };
                let re = Real::parse(&re_part, ctx).ok_or_else(bad)?;
                let im = Real::parse(&im_str, ctx).ok_or_else(bad)?;
                Ok(Complex::new(re, im))
            }
            None => {
                let im_str = if body.is_empty() { "1" } else { body };
                let im = Real::parse(im_str, ctx).ok_or_else(bad)?;
                Ok(Complex::new(Real::zero(), im))
            }
        }
    } else {
        let re = Real::parse(&t, ctx).ok_or_else(bad)?;
        Ok(Complex::from_real(re))
    }
}

/// Execute a command; all reports go through the JSON envelope.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let ctx = config.context()?;
    match &config.command {
        Command::Dilog { z } => {
            let zv = parse_complex(z, &ctx)?;
            let li = li2(&zv, &ctx)?;
            let d = bloch_wigner(&zv, &ctx)?;
            let body = json!({
                "z": report::complex_obj(&zv, &ctx),
                "li2": report::complex_obj(&li.value, &ctx),
                "on_cut": li.on_cut,
                "bloch_wigner": report::real_str(&d, &ctx),
                "bloch_wigner_f64": d.to_f64(),
            });
            Ok(RunOutcome {
                report: report::envelope("dilog", &ctx, body),
                exit_code: exit_code::SUCCESS,
            })
        }
        Command::FieldInfo { field_path } => {
            let field = load_field(field_path)?;
            let w2 = crate::lichtenbaum::w2(&field, &ctx)?;
            let mut body = report::field_obj(&field, &ctx);
            body["w2"] = json!(w2);
            Ok(RunOutcome {
                report: report::envelope("field-info", &ctx, body),
                exit_code: exit_code::SUCCESS,
            })
        }
        Command::VerifyBloch { field_path, elements_path } => {
            let field = load_field(field_path)?;
            let sums = load_elements(elements_path, &field)?;
            let mut certs = Vec::new();
            let mut all_verified = true;
            for sum in &sums {
                let cert = verify_bloch_element(sum, &field, &ctx)?;
                all_verified &= cert.status == CertStatus::VerifiedZero;
                certs.push(report::certificate_obj(&cert, &sum.display()));
            }
            let body = json!({
                "field": report::field_obj(&field, &ctx),
                "certificates": certs,
                "all_verified": all_verified,
            });
            Ok(RunOutcome {
                report: report::envelope("verify-bloch", &ctx, body),
                exit_code: if all_verified {
                    exit_code::SUCCESS
                } else {
                    exit_code::VERIFICATION_INCONCLUSIVE
                },
            })
        }
        Command::Zeta2 { field_path } => {
            let field = load_field(field_path)?;
            let z = dedekind_zeta2(&field, config.terms, &ctx)?;
            let body = report::zeta_obj(&z, &ctx);
            Ok(RunOutcome {
                report: report::envelope("zeta2", &ctx, body),
                exit_code: exit_code::SUCCESS,
            })
        }
        Command::K2Predict { field_path, elements_path } => {
            let field = load_field(field_path)?;
            let sums = load_elements(elements_path, &field)?;
            let mut certified = Vec::new();
            for sum in &sums {
                certified.push(certify(sum, &field, &ctx)?);
            }
            let k2 = k2_predict(&field, &certified, config.terms, &ctx)?;
            let consistent = k2.consistent;
            let body = report::k2_obj(&k2, &field, &ctx);
            Ok(RunOutcome {
                report: report::envelope("k2-predict", &ctx, body),
                exit_code: if consistent {
                    exit_code::SUCCESS
                } else {
                    exit_code::NUMERIC_FAILURE
                },
            })
        }
        Command::Cyclo { p, check, k2_plus } => match check {
            CycloCheck::Regulator => {
                let routes = cyclotomic_regulator_det(*p, &ctx)?;
                let closed = cyclotomic_regulator_closed(*p, &ctx)?;
                let spread = routes
                    .via_matrix
                    .sub(&closed, &ctx)
                    .abs()
                    .max(&routes.via_character_sums.sub(&closed, &ctx).abs());
                let tol = Real::pow10(-(config.digits as i64) + 13, &ctx);
                let ok = spread.lt(&tol);
                let body = json!({
                    "p": p,
                    "via_matrix": report::real_str(&routes.via_matrix, &ctx),
                    "via_character_sums": report::real_str(&routes.via_character_sums, &ctx),
                    "closed_form": report::real_str(&closed, &ctx),
                    "max_spread": report::real_str(&spread, &ctx),
                    "routes_agree": ok,
                });
                Ok(RunOutcome {
                    report: report::envelope("cyclo", &ctx, body),
                    exit_code: if ok { exit_code::SUCCESS } else { exit_code::NUMERIC_FAILURE },
                })
            }
            CycloCheck::Theorem33 => {
                let k2p = k2_plus.ok_or_else(|| {
                    Error::MalformedInput("--k2-plus is required for the theorem33 check".into())
                })?;
                let r = theorem33_chain(*p, k2p, &ctx)?;
                let one = Real::one(&ctx);
                let tol = Real::pow10(-20, &ctx);
                let ok = r.ratio.sub(&one, &ctx).abs().lt(&tol);
                let mut body = report::theorem33_obj(&r, &ctx);
                body["sides_agree"] = json!(ok);
                Ok(RunOutcome {
                    report: report::envelope("cyclo", &ctx, body),
                    exit_code: if ok { exit_code::SUCCESS } else { exit_code::NUMERIC_FAILURE },
                })
            }
        },
        Command::PaperSuite { timings } => {
            let suite = corpus::run_suite(&ctx, config.terms, *timings)?;
            let ok = suite.all_pass;
            Ok(RunOutcome {
                report: report::envelope("paper-suite", &ctx, suite.to_json(&ctx)),
                exit_code: if ok { exit_code::SUCCESS } else { exit_code::NUMERIC_FAILURE },
            })
        }
    }
}

/// Plain-text rendering for `--output-format text`.
pub fn render_text(outcome: &Value) -> String {
    let mut out = String::new();
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, val) in m {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&path, val, out);
                }
            }
            Value::Array(a) => {
                for (i, val) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), val, out);
                }
            }
            other => {
                out.push_str(&format!("{prefix} = {other}\n"));
            }
        }
    }
    walk("", outcome, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn formal_sum_string_parser() {
        let f = field_from_def(&[2, 1, 1, 1], None).unwrap();
        let s = parse_formal_sum("4*[a] + 1*[a-1]", &f).unwrap();
        assert_eq!(s.terms().len(), 2);
        let t = parse_formal_sum("-6*[1-a] - 2*[1/(a-1)]", &f).unwrap();
        assert_eq!(t.terms().len(), 2);
        let alpha = FieldElement::generator(&f);
        let inv = alpha.sub(&FieldElement::one(&f)).inv(&f).unwrap();
        assert!(t.terms().iter().any(|(c, e)| *c == BigInt::from(-2) && *e == inv));
        // powers and implicit multiplication
        let u = parse_formal_sum("1*[a^2] + 2*[a]", &f).unwrap();
        assert_eq!(u.terms().len(), 2);
        assert!(parse_formal_sum("3*[b]", &f).is_err());
        assert!(parse_formal_sum("3*[a", &f).is_err());
    }

    #[test]
    fn complex_literal_parser() {
        let c = ctx();
        let z = parse_complex("0.5+0.5i", &c).unwrap();
        assert!((z.re.to_f64() - 0.5).abs() < 1e-15);
        assert!((z.im.to_f64() - 0.5).abs() < 1e-15);
        let w = parse_complex("-2.5e-1i", &c).unwrap();
        assert!(w.re.is_zero());
        assert!((w.im.to_f64() + 0.25).abs() < 1e-15);
        let r = parse_complex("3", &c).unwrap();
        assert!(r.im.is_zero());
        let i = parse_complex("i", &c).unwrap();
        assert!((i.im.to_f64() - 1.0).abs() < 1e-15);
        let m = parse_complex("1-i", &c).unwrap();
        assert!((m.im.to_f64() + 1.0).abs() < 1e-15);
        assert!(parse_complex("nope", &c).is_err());
    }

    #[test]
    fn rational_coordinate_parsing() {
        assert_eq!(
            parse_rational("3/2").unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from_integer(BigInt::from(-7)));
        assert!(parse_rational("1/0").is_err());
    }
}
