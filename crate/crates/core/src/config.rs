//! Family and operator literals, and the run configuration read by the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    classical_derivative, dilation, divided_difference_operator, dxd_operator, forward_difference,
    hyperbolic_q_operator, jackson_operator, multiplication_x, psi_derivative_operator,
    OperatorMatrix,
};
use crate::poly::Polynomial;
use crate::psi::{AdmissibleSequence, Family};
use crate::scalar::{parse_scalar, Scalar};
use crate::series::DeltaSeries;
use crate::verify::{Perturbation, Suite, VerifyConfig};

/// Either a tagged record (`{"family": "q_deformed", "q": "2"}`) or a short
/// string: `classical`, `q:2`, `fibonacci`, `hyperbolic`, `custom:1,2,3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Short(String),
    Full(Family),
}

impl FamilySpec {
    pub fn resolve(&self) -> Result<Family> {
        match self {
            FamilySpec::Full(f) => Ok(f.clone()),
            FamilySpec::Short(s) => parse_family(s),
        }
    }
}

fn scalar_list(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(|v| parse_scalar(v.trim())).collect()
}

pub fn parse_family(s: &str) -> Result<Family> {
    let s = s.trim();
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (s, None),
    };
    let need =
        |what: &str| arg.ok_or_else(|| Error::Parse(format!("family '{head}' needs {what}")));
    let family = match head {
        "classical" => Family::Classical,
        "fibonacci" => Family::Fibonacci,
        "hyperbolic" => Family::Hyperbolic,
        "q" | "q_deformed" => Family::q(parse_scalar(need("q")?)?),
        "custom" => Family::Custom {
            values: scalar_list(need("values")?)?,
        },
        _ => return Err(Error::Parse(format!("unknown family '{s}'"))),
    };
    family.check_parameters()?;
    Ok(family)
}

/// A builtin name (`psi_derivative`, `jackson(q)`, `divided_difference`,
/// `forward_difference`, `DxD`, `hyperbolic_Q`, `dilation(q)`, `multiplication_x`,
/// `D`, `id`), a series in `partial_psi`, or explicit columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Builtin(String),
    Series {
        series: Vec<String>,
        #[serde(default)]
        family: Option<FamilySpec>,
    },
    Columns {
        columns: Vec<String>,
    },
}

fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

impl OperatorSpec {
    /// The operator on degrees `<= degree`; `family` is used by `psi_derivative`
    /// and by series without their own family.
    pub fn resolve(&self, family: &Family, degree: usize) -> Result<OperatorMatrix> {
        match self {
            OperatorSpec::Builtin(name) => {
                let name = name.trim();
                if let Some(q) = call_arg(name, "jackson") {
                    return jackson_operator(&parse_scalar(q)?, degree);
                }
                if let Some(q) = call_arg(name, "dilation") {
                    return Ok(dilation(&parse_scalar(q)?, degree));
                }
                Ok(match name {
                    "psi_derivative" => {
                        let seq = AdmissibleSequence::new(family.clone(), degree)?;
                        psi_derivative_operator(&seq, degree)?
                    }
                    "divided_difference" => divided_difference_operator(degree),
                    "forward_difference" => forward_difference(degree),
                    "DxD" => dxd_operator(degree),
                    "hyperbolic_Q" => hyperbolic_q_operator(degree),
                    "multiplication_x" => multiplication_x(degree),
                    "D" => classical_derivative(degree),
                    "id" => OperatorMatrix::identity(degree),
                    _ => return Err(Error::Parse(format!("unknown operator '{name}'"))),
                })
            }
            OperatorSpec::Series {
                series,
                family: own,
            } => {
                let family = match own {
                    Some(f) => f.resolve()?,
                    None => family.clone(),
                };
                let seq = AdmissibleSequence::new(family, degree)?;
                parse_series(series, degree)?.realize_psi(&seq, degree)
            }
            OperatorSpec::Columns { columns } => {
                if columns.len() != degree + 1 {
                    return Err(Error::Parse(format!(
                        "expected {} columns, got {}",
                        degree + 1,
                        columns.len()
                    )));
                }
                let cols = columns
                    .iter()
                    .map(|c| c.parse::<Polynomial>())
                    .collect::<Result<Vec<_>>>()?;
                if let Some(j) = cols
                    .iter()
                    .position(|c| c.degree().is_some_and(|d| d > degree))
                {
                    return Err(Error::DegreeOverflow {
                        degree: j,
                        cap: degree,
                    });
                }
                Ok(OperatorMatrix::from_columns(cols, degree))
            }
        }
    }

    /// The series and family when the literal is a series in `partial_psi`.
    pub fn as_series(
        &self,
        family: &Family,
        degree: usize,
    ) -> Result<Option<(DeltaSeries, Family)>> {
        Ok(match self {
            OperatorSpec::Series {
                series,
                family: own,
            } => {
                let f = match own {
                    Some(f) => f.resolve()?,
                    None => family.clone(),
                };
                Some((parse_series(series, degree)?, f))
            }
            OperatorSpec::Builtin(name) if name.trim() == "psi_derivative" => {
                Some((DeltaSeries::t(degree), family.clone()))
            }
            _ => None,
        })
    }
}

/// `series:0,1,1`, `columns:0;1;2*x`, a JSON object, or a builtin name.
impl std::str::FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("operator: {e}")));
        }
        if let Some(rest) = s.strip_prefix("series:") {
            return Ok(OperatorSpec::Series {
                series: rest.split(',').map(|c| c.trim().to_string()).collect(),
                family: None,
            });
        }
        if let Some(rest) = s.strip_prefix("columns:") {
            return Ok(OperatorSpec::Columns {
                columns: rest.split(';').map(|c| c.trim().to_string()).collect(),
            });
        }
        Ok(OperatorSpec::Builtin(s.to_string()))
    }
}

pub fn parse_series(coeffs: &[String], order: usize) -> Result<DeltaSeries> {
    let c = coeffs
        .iter()
        .map(|s| parse_scalar(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaSeries::new(c, order))
}

/// The JSON configuration file.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub operator: Option<OperatorSpec>,
    /// Coefficients of `S` as a series in `partial_psi`.
    #[serde(default)]
    pub s: Option<Vec<String>>,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub perturb: Option<Perturbation>,
}

pub const DEFAULT_DEGREE: usize = 12;

/// Everything resolved up front.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub families: Vec<Family>,
    pub degree: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub perturb: Option<Perturbation>,
    pub operator: Option<OperatorSpec>,
    pub s: Option<DeltaSeries>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// Applies command-line overrides and checks every literal.
    pub fn resolve(&self, degree: Option<usize>, seed: Option<u64>) -> Result<Resolved> {
        let degree = degree.or(self.degree).unwrap_or(DEFAULT_DEGREE);
        if degree < 2 {
            return Err(Error::BadParameter(format!(
                "working degree {degree} is below 2"
            )));
        }
        let seed = seed.or(self.seed).unwrap_or(crate::random::DEFAULT_SEED);
        let mut families = self
            .families
            .iter()
            .map(FamilySpec::resolve)
            .collect::<Result<Vec<_>>>()?;
        for f in &families {
            // Standard constructions need one index beyond the working degree.
            AdmissibleSequence::new(f.clone(), degree + 1)?;
        }
        if families.is_empty() {
            families = crate::verify::standard_families(degree, seed);
        }
        let suites = self
            .suites
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<_>>>()?;
        if let Some(op) = &self.operator {
            op.resolve(&families[0], degree)?;
        }
        let s = self
            .s
            .as_ref()
            .map(|c| parse_series(c, degree))
            .transpose()?;
        if let Some(s) = &s {
            if !s.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(Resolved {
            families,
            degree,
            seed,
            suites,
            perturb: self.perturb.clone(),
            operator: self.operator.clone(),
            s,
        })
    }
}

impl Resolved {
    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            families: self.families.clone(),
            degree: self.degree,
            seed: self.seed,
            suites: self.suites.clone(),
            perturbation: self.perturb.clone(),
        }
    }

    pub fn family(&self) -> &Family {
        &self.families[0]
    }
}
