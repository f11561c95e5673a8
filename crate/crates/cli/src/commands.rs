use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;

use umbral_core::config::{OperatorSpec, Resolved};
use umbral_core::detect::{detect_psi_form, Detection};
use umbral_core::error::Error;
use umbral_core::expansion::{expand_in_dual_pair, RaiserMode};
use umbral_core::integration::{IntegralKind, IntegralOperator};
use umbral_core::operator::OperatorMatrix;
use umbral_core::poly::Polynomial;
use umbral_core::psi::{AdmissibleSequence, Family};
use umbral_core::report::{all_acceptable, Kind};
use umbral_core::scalar::{format_scalar, parse_scalar, Scalar};
use umbral_core::sequences::{basic_sequence, sheffer_sequence, ShefferSequence};
use umbral_core::series::DeltaSeries;
use umbral_core::spectral::spectral_operator;
use umbral_core::star::StarContext;
use umbral_core::verify::{self, Perturbation};

use crate::{Format, Integral, Raiser};

/// What `sequence --format json` emits; `entries` re-parse into a `SequenceTable`.
#[derive(Serialize)]
struct SequenceReport<'a> {
    family: &'a Family,
    operator: OperatorSpec,
    s: Option<Vec<String>>,
    #[serde(rename = "N")]
    n: usize,
    entries: &'a [Polynomial],
}

fn json_text(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn seq_of(r: &Resolved) -> Result<AdmissibleSequence> {
    Ok(AdmissibleSequence::new(r.family().clone(), r.degree + 1)?)
}

fn operator_spec(r: &Resolved) -> OperatorSpec {
    r.operator
        .clone()
        .unwrap_or_else(|| OperatorSpec::Builtin("psi_derivative".into()))
}

fn operator(r: &Resolved) -> Result<OperatorMatrix> {
    Ok(operator_spec(r).resolve(r.family(), r.degree)?)
}

fn series_text(s: &DeltaSeries) -> Vec<String> {
    s.coeffs().iter().map(format_scalar).collect()
}

fn sheffer(r: &Resolved) -> Result<ShefferSequence> {
    let seq = seq_of(r)?;
    let basic = basic_sequence(&operator(r)?, &seq)?;
    let s = r.s.clone().unwrap_or_else(|| DeltaSeries::one(r.degree));
    Ok(sheffer_sequence(&basic, &s)?)
}

pub fn parse_perturbation(text: &str) -> Result<Perturbation> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, i, delta] = parts[..] else {
        bail!("perturbation must be n,i,delta, got '{text}'");
    };
    Ok(Perturbation {
        n: n.parse()?,
        i: i.parse()?,
        delta: parse_scalar(delta)?,
    })
}

pub fn sequence(r: &Resolved, format: Format) -> Result<String> {
    let table = match &r.s {
        Some(_) => sheffer(r)?.table,
        None => basic_sequence(&operator(r)?, &seq_of(r)?)?.table,
    };
    match format {
        Format::Json => json_text(&SequenceReport {
            family: r.family(),
            operator: operator_spec(r),
            s: r.s.as_ref().map(series_text),
            n: r.degree,
            entries: table.entries(),
        }),
        Format::Text => {
            let mut out = String::new();
            for (n, p) in table.entries().iter().enumerate() {
                writeln!(out, "p_{n} = {p}")?;
            }
            Ok(out)
        }
    }
}

/// The report, and whether every asserted invariant holds.
pub fn verify(r: &Resolved, format: Format) -> Result<(String, bool)> {
    let entries = verify::run(&r.verify_config())?;
    let ok = all_acceptable(&entries);
    let out = match format {
        Format::Json => json_text(&json!({
            "N": r.degree,
            "seed": r.seed,
            "invariants_hold": ok,
            "entries": entries,
        }))?,
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                writeln!(out, "{}", e.text_line())?;
            }
            let failing = entries.iter().filter(|e| !e.acceptable()).count();
            let findings = entries.iter().filter(|e| e.kind == Kind::Finding).count();
            writeln!(
                out,
                "{} entries, {failing} failing invariants, {findings} findings",
                entries.len()
            )?;
            out
        }
    };
    Ok((out, ok))
}

pub fn expand(
    r: &Resolved,
    target: &OperatorSpec,
    raiser: Raiser,
    format: Format,
) -> Result<String> {
    let q = operator(r)?;
    let t = target.resolve(r.family(), r.degree)?;
    let seq = seq_of(r)?;
    let mode = match raiser {
        Raiser::Multiplication => RaiserMode::Multiplication,
        Raiser::Dual => RaiserMode::Dual(&seq),
    };
    let coeffs = expand_in_dual_pair(&t, &q, mode)?;
    match format {
        Format::Json => json_text(
            &json!({ "raiser": format!("{raiser:?}").to_lowercase(), "coefficients": coeffs }),
        ),
        Format::Text => {
            let mut out = String::new();
            for (n, c) in coeffs.iter().enumerate() {
                writeln!(out, "q_{n} = {c}")?;
            }
            Ok(out)
        }
    }
}

pub fn detect(r: &Resolved, format: Format) -> Result<String> {
    let q = operator(r)?;
    let detection = detect_psi_form(&q)?;
    let values: Vec<String> = detection
        .candidate_values()
        .iter()
        .map(format_scalar)
        .collect();
    match (&detection, format) {
        (Detection::Conforming(form), Format::Json) => json_text(&json!({
            "psi_form": true,
            "n_psi": values,
            "q": series_text(&form.series),
            "scale": format_scalar(&form.scale),
        })),
        (Detection::NotPsiForm(v), Format::Json) => json_text(&json!({
            "psi_form": false,
            "violation": v,
        })),
        (Detection::Conforming(form), Format::Text) => {
            let mut out = format!("n_psi = {}\n", values.join(", "));
            for (k, c) in form.series.coeffs().iter().enumerate().skip(1) {
                writeln!(out, "q_{k} = {}", format_scalar(c))?;
            }
            Ok(out)
        }
        (Detection::NotPsiForm(v), Format::Text) => Ok(format!(
            "not of psi-form: condition fails at (n, k) = ({}, {}): b = {}, expected {}\n",
            v.n,
            v.k,
            format_scalar(&v.actual),
            format_scalar(&v.expected)
        )),
    }
}

pub fn integrate(r: &Resolved, poly: &str, kind: Integral, format: Format) -> Result<String> {
    let p: Polynomial = poly.parse()?;
    let kind = match (kind, r.family()) {
        (Integral::Psi, _) => IntegralKind::Psi(seq_of(r)?),
        (Integral::Q, Family::QDeformed { q }) => IntegralKind::Q { q: q.clone() },
        (Integral::R, Family::RSeries { r, q }) => IntegralKind::R {
            r: r.clone(),
            q: q.clone(),
        },
        _ => return Err(Error::WrongFamily.into()),
    };
    let result = IntegralOperator::new(kind, r.degree)?.integrate(&p)?;
    match format {
        Format::Json => json_text(&json!({ "integral": result })),
        Format::Text => Ok(format!("{result}\n")),
    }
}

pub fn star(
    r: &Resolved,
    left: Option<&str>,
    right: Option<&str>,
    poisson: Option<&str>,
    m: usize,
    format: Format,
) -> Result<String> {
    let ctx = StarContext::new(&seq_of(r)?, r.degree)?;
    if let Some(lambda) = poisson {
        let lambda: Scalar = parse_scalar(lambda)?;
        let table = ctx.poisson_polynomials(&lambda, m)?;
        return match format {
            Format::Json => json_text(&json!({ "lambda": format_scalar(&lambda), "pi": table })),
            Format::Text => {
                let mut out = String::new();
                for (k, p) in table.iter().enumerate() {
                    writeln!(out, "pi_{k} = {p}")?;
                }
                Ok(out)
            }
        };
    }
    let (Some(f), Some(g)) = (left, right) else {
        bail!("star needs --left and --right, or --poisson");
    };
    let product = ctx.star_product(&f.parse()?, &g.parse()?)?;
    match format {
        Format::Json => json_text(&json!({ "product": product })),
        Format::Text => Ok(format!("{product}\n")),
    }
}

pub fn spectral(r: &Resolved, format: Format) -> Result<String> {
    let sh = sheffer(r)?;
    let a = spectral_operator(&sh)?;
    let eigen = a.check_eigen(&sh, r.degree);
    let routes: Vec<String> = a
        .agreeing_routes()
        .iter()
        .map(|(nu, base, inv)| format!("{nu:?}/{base:?}/{inv:?}"))
        .collect();
    match format {
        Format::Json => json_text(&json!({
            "expansion": a.expansion,
            "eigen_relation_holds": eigen.holds,
            "agreeing_formula_routes": routes,
        })),
        Format::Text => {
            let mut out = String::new();
            for (k, c) in a.expansion.iter().enumerate() {
                writeln!(out, "c_{k} = {c}")?;
            }
            let status = if eigen.holds { "holds" } else { "FAILS" };
            writeln!(out, "A s_n = n s_n for n <= {}: {status}", r.degree)?;
            if routes.is_empty() {
                writeln!(out, "series formula: no reading reproduces A")?;
            } else {
                writeln!(out, "series formula agrees under: {}", routes.join(", "))?;
            }
            Ok(out)
        }
    }
}
