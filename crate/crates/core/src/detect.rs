//! Recognizing a degree-lowering operator as a power series in some `partial_psi`.
//!
//! Writing `Q x^n = sum_k b_{n,k} x^{n-k}`, the operator is a series in
//! `partial_psi` exactly when `b_{n,k} = (n over k)_psi b_{k,k}` with
//! `n_psi = b_{n,1}`. The series coefficients are then `q_k = b_{k,k} / k_psi!`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{Grading, OperatorMatrix};
use crate::psi::AdmissibleSequence;
use crate::scalar::{self, zero, Scalar};
use crate::series::DeltaSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct PsiForm {
    /// Custom family carrying `n_psi = b_{n,1}`.
    pub seq: AdmissibleSequence,
    /// `q_0 = 0, q_1 = 1, q_k = b_{k,k} / k_psi!`.
    pub series: DeltaSeries,
    /// `b_{1,1}`, the value of `1_psi`.
    pub scale: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The `n_psi = b_{n,1}` candidates, `n = 1..=N`.
    #[serde(with = "scalar::serde_scalar_vec")]
    pub candidate: Vec<Scalar>,
    pub n: usize,
    pub k: usize,
    #[serde(with = "scalar::serde_scalar")]
    pub actual: Scalar,
    #[serde(with = "scalar::serde_scalar")]
    pub expected: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Detection {
    Conforming(PsiForm),
    NotPsiForm(Violation),
}

impl Detection {
    pub fn candidate_values(&self) -> Vec<Scalar> {
        match self {
            Detection::Conforming(form) => form.seq.values()[1..].to_vec(),
            Detection::NotPsiForm(v) => v.candidate.clone(),
        }
    }

    pub fn form(&self) -> Option<&PsiForm> {
        match self {
            Detection::Conforming(form) => Some(form),
            Detection::NotPsiForm(_) => None,
        }
    }
}

/// `b_{n,k}`.
fn b(q: &OperatorMatrix, n: usize, k: usize) -> Scalar {
    q.entry(n - k, n)
}

pub fn detect_psi_form(q: &OperatorMatrix) -> Result<Detection> {
    if q.grading() != Grading::LowersByOne {
        return Err(Error::NotDifferenceTial);
    }
    let n_max = q.degree();
    let candidate: Vec<Scalar> = (1..=n_max).map(|n| b(q, n, 1)).collect();
    let seq = AdmissibleSequence::custom(candidate.clone())?;
    for n in 2..=n_max {
        for k in 2..=n {
            let expected = seq.binomial(n, k)? * b(q, k, k);
            let actual = b(q, n, k);
            if actual != expected {
                return Ok(Detection::NotPsiForm(Violation {
                    candidate,
                    n,
                    k,
                    actual,
                    expected,
                }));
            }
        }
    }
    let mut coeffs = vec![zero()];
    for k in 1..=n_max {
        coeffs.push(b(q, k, k) / seq.factorial_ref(k));
    }
    let scale = b(q, 1, 1);
    Ok(Detection::Conforming(PsiForm {
        seq,
        series: DeltaSeries::new(coeffs, n_max),
        scale,
    }))
}
