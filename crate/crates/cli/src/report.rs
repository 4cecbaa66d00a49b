//! Machine-readable reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use veronese_core::checks::SuiteSummary;
use veronese_core::lie::LieBasis;
use veronese_core::poly::{Monomial, Polynomial, Scalar};
use veronese_core::veronese::{Context, Lift, LndReport, LndVerdict, Obstruction};

use crate::parse::print_expression;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Lifted,
    Obstructed,
    Inconclusive,
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Lifted | Status::Inconclusive => 0,
            Status::Obstructed => 2,
            Status::Failed | Status::Error => 1,
        }
    }
}

/// A polynomial as `[exponents, numerator, denominator]` terms in
/// decreasing order; exponent vectors drop trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub text: String,
    pub arity: usize,
    pub terms: Vec<(Vec<u32>, String, String)>,
}

impl ElementJson {
    pub fn new(p: &Polynomial, ctx: &Context) -> Self {
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut exps = m.to_dense(p.arity());
                while exps.last() == Some(&0) {
                    exps.pop();
                }
                (exps, c.numer().to_string(), c.denom().to_string())
            })
            .collect();
        ElementJson {
            text: print_expression(p, ctx),
            arity: p.arity(),
            terms,
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, String> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (exps, num, den) in &self.terms {
            if exps.len() > self.arity {
                return Err(format!("exponent vector longer than arity {}", self.arity));
            }
            let num = num.parse().map_err(|_| format!("bad numerator {num}"))?;
            let den: num_bigint::BigInt = den.parse().map_err(|_| format!("bad denominator {den}"))?;
            if num_traits::Zero::is_zero(&den) {
                return Err("zero denominator".to_string());
            }
            terms.push((Monomial::from_dense(exps), Scalar::new(num, den)));
        }
        Ok(Polynomial::from_terms(self.arity, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEcho {
    pub kind: String,
    pub n: usize,
    pub d: Option<u32>,
    pub bound: Option<usize>,
    pub generator_bound: Option<usize>,
}

impl ContextEcho {
    pub fn new(ctx: &Context, d: Option<u32>) -> Self {
        ContextEcho {
            kind: if ctx.is_poisson() { "poisson" } else { "poly" }.to_string(),
            n: ctx.n(),
            d,
            bound: ctx.table_bound(),
            generator_bound: ctx.generator_bound().filter(|g| Some(*g) != ctx.table_bound()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub value: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub word: String,
    pub element: String,
    pub degree: usize,
    pub multidegree: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationJson {
    pub v: String,
    pub mu: String,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub generators_checked: usize,
    pub generators_skipped: usize,
    pub bracket_pairs_checked: usize,
    pub bracket_pairs_skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Element {
        value: ElementJson,
    },
    Grade {
        d: u32,
        parts: Vec<ElementJson>,
    },
    Basis {
        elements: Vec<BasisEntry>,
    },
    Restriction {
        map: String,
        images: Vec<NamedElement>,
    },
    Lift {
        map: String,
        images: Vec<NamedElement>,
        normalization: Option<NormalizationJson>,
        verification: VerificationJson,
    },
    Obstruction {
        reason: String,
        message: String,
        witness: Vec<NamedElement>,
        scalar: Option<String>,
    },
    Lnd {
        verdict: String,
        indices: Vec<Option<usize>>,
        cap: usize,
        witness: Option<ElementJson>,
        message: String,
    },
    Kernel {
        lambda: String,
        checked: usize,
        forward: Vec<NamedElement>,
        inverse: Vec<NamedElement>,
    },
    Selftest {
        seed: u64,
        suites: Vec<SuiteJson>,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub context: Option<ContextEcho>,
    /// The parsed input in canonical form.
    pub input: Vec<String>,
    pub payload: Payload,
    pub elapsed_us: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, status_word(self.status));
        match &self.payload {
            Payload::Element { value } => {
                let _ = writeln!(out, "{}", value.text);
            }
            Payload::Grade { d, parts } => {
                for (i, p) in parts.iter().enumerate() {
                    let _ = writeln!(out, "part {i} (mod {d}): {}", p.text);
                }
            }
            Payload::Basis { elements } => {
                for e in elements {
                    let md: Vec<String> = e.multidegree.iter().map(|m| m.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "e{:<4} degree {:<2} ({})  {}",
                        e.index + 1,
                        e.degree,
                        md.join(","),
                        e.element
                    );
                }
            }
            Payload::Restriction { images, .. } => write_named(&mut out, images),
            Payload::Lift {
                images,
                normalization,
                verification,
                ..
            } => {
                write_named(&mut out, images);
                if let Some(n) = normalization {
                    let _ = writeln!(out, "normalization: v = {}, mu = {}, lambda = {}", n.v, n.mu, n.lambda);
                }
                let _ = writeln!(
                    out,
                    "verified on {} generators ({} beyond the bound), {} bracket pairs ({} skipped)",
                    verification.generators_checked,
                    verification.generators_skipped,
                    verification.bracket_pairs_checked,
                    verification.bracket_pairs_skipped
                );
            }
            Payload::Obstruction {
                reason,
                message,
                witness,
                scalar,
            } => {
                let _ = writeln!(out, "{reason}: {message}");
                if let Some(s) = scalar {
                    let _ = writeln!(out, "scalar: {s}");
                }
                write_named(&mut out, witness);
            }
            Payload::Lnd {
                verdict,
                indices,
                cap,
                message,
                ..
            } => {
                let _ = writeln!(out, "{verdict} (cap {cap}): {message}");
                for (i, k) in indices.iter().enumerate() {
                    match k {
                        Some(k) => {
                            let _ = writeln!(out, "x{}: nilpotency index {k}", i + 1);
                        }
                        None => {
                            let _ = writeln!(out, "x{}: not killed", i + 1);
                        }
                    }
                }
            }
            Payload::Kernel { lambda, checked, .. } => {
                let _ = writeln!(out, "composite of the lifts is {lambda} * id ({checked} indeterminates checked)");
            }
            Payload::Selftest { seed, suites } => {
                let _ = writeln!(out, "seed {seed}");
                for s in suites {
                    let _ = writeln!(
                        out,
                        "{}: {} ({} cases, {} checks)",
                        s.name,
                        if s.passed { "ok" } else { "FAILED" },
                        s.cases,
                        s.checks
                    );
                    for f in &s.failures {
                        let _ = writeln!(out, "  {f}");
                    }
                }
            }
            Payload::Error { message } => {
                let _ = writeln!(out, "{message}");
            }
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Lifted => "lifted",
        Status::Obstructed => "obstructed",
        Status::Inconclusive => "inconclusive",
        Status::Failed => "failed",
        Status::Error => "error",
    }
}

fn write_named(out: &mut String, items: &[NamedElement]) {
    for item in items {
        let value = item.value.as_ref().map_or("(beyond the bound)", |v| v.text.as_str());
        match &item.source {
            Some(src) => {
                let _ = writeln!(out, "{} -> {}    [{src}]", item.name, value);
            }
            None => {
                let _ = writeln!(out, "{} -> {}", item.name, value);
            }
        }
    }
}

pub fn lift_images(lift: &Lift) -> Vec<NamedElement> {
    let ctx = &lift.context;
    lift.images
        .iter()
        .enumerate()
        .map(|(j, img)| NamedElement {
            name: ctx.var_name(j),
            value: img.as_ref().map(|p| ElementJson::new(p, ctx)),
            source: Some(lift.sources[j].as_str().to_string()),
        })
        .collect()
}

pub fn lift_payload(lift: &Lift) -> Payload {
    let v = &lift.verification;
    Payload::Lift {
        map: format!("{:?}", lift.kind).to_lowercase(),
        images: lift_images(lift),
        normalization: lift.normalization.as_ref().map(|n| NormalizationJson {
            v: n.v.to_string(),
            mu: n.mu.to_string(),
            lambda: n.lambda.to_string(),
        }),
        verification: VerificationJson {
            generators_checked: v.generators_checked,
            generators_skipped: v.generators_skipped,
            bracket_pairs_checked: v.bracket_pairs_checked,
            bracket_pairs_skipped: v.bracket_pairs_skipped,
        },
    }
}

pub fn obstruction_payload(o: &Obstruction, ctx: &Context) -> Payload {
    Payload::Obstruction {
        reason: o.reason.as_str().to_string(),
        message: o.message.clone(),
        witness: o
            .witness
            .iter()
            .map(|(name, p)| NamedElement {
                name: name.clone(),
                value: Some(ElementJson::new(p, ctx)),
                source: None,
            })
            .collect(),
        scalar: o.scalar.as_ref().map(|s| s.to_string()),
    }
}

pub fn lnd_payload(r: &LndReport, ctx: &Context) -> (Status, Payload) {
    let (status, verdict, message, witness) = match &r.verdict {
        LndVerdict::LocallyNilpotent => (
            Status::Ok,
            "locally_nilpotent",
            "every free generator is killed by an iterate".to_string(),
            None,
        ),
        LndVerdict::NotNilpotent {
            variable,
            iteration,
            witness,
        } => (
            Status::Obstructed,
            "not_nilpotent",
            format!(
                "S^{iteration}({}) is nonzero and a combination of lower iterates",
                ctx.var_name(*variable)
            ),
            Some(ElementJson::new(witness, ctx)),
        ),
        LndVerdict::CapExceeded { variable } => (
            Status::Inconclusive,
            "cap_exceeded",
            format!("{} survives {} iterations", ctx.var_name(*variable), r.cap),
            None,
        ),
        LndVerdict::BeyondBound { variable, iteration } => (
            Status::Inconclusive,
            "beyond_bound",
            format!("S^{iteration}({}) leaves the basis table", ctx.var_name(*variable)),
            None,
        ),
    };
    (
        status,
        Payload::Lnd {
            verdict: verdict.to_string(),
            indices: r.indices.clone(),
            cap: r.cap,
            witness,
            message,
        },
    )
}

pub fn basis_payload(basis: &LieBasis) -> Payload {
    Payload::Basis {
        elements: basis
            .elements()
            .iter()
            .map(|e| BasisEntry {
                index: e.index,
                word: e.word.iter().map(|c| (*c as usize + 1).to_string()).collect::<Vec<_>>().join(if basis.n() < 10 { "" } else { "." }),
                element: basis.name(e.index),
                degree: e.degree(),
                multidegree: e.multidegree.clone(),
            })
            .collect(),
    }
}

pub fn suite_json(s: &SuiteSummary) -> SuiteJson {
    SuiteJson {
        name: s.name.to_string(),
        passed: s.passed(),
        cases: s.cases,
        checks: s.checks,
        failures: s.failures.clone(),
    }
}
