//! Right inverses of the q-, R- and psi-difference operators.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::operator::{
    classical_derivative, dilation, divided_difference_operator, multiplication_x,
    psi_derivative_operator, OperatorMatrix,
};
use crate::poly::Polynomial;
use crate::psi::AdmissibleSequence;
use crate::report::Check;
use crate::scalar::{factorial, one, pow, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum IntegralKind {
    Q {
        q: Scalar,
    },
    /// `R(z) = sum r_i z^i` evaluated at powers of `q`.
    R {
        r: Vec<Scalar>,
        q: Scalar,
    },
    Psi(AdmissibleSequence),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralOperator {
    pub kind: IntegralKind,
    n: usize,
}

fn r_at(r: &[Scalar], z: &Scalar) -> Scalar {
    r.iter().rev().fold(Scalar::zero(), |acc, c| acc * z + c)
}

impl IntegralOperator {
    /// Validates every denominator needed on degrees `0..N-1`.
    pub fn new(kind: IntegralKind, n: usize) -> Result<Self> {
        let op = IntegralOperator { kind, n };
        for m in 1..=n {
            if op.denominator(m)?.is_zero() {
                return Err(Error::DegenerateFamily {
                    index: m,
                    reason: "integral denominator vanishes".into(),
                });
            }
        }
        Ok(op)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `d` with `integral x^{m-1} = x^m / d`.
    fn denominator(&self, m: usize) -> Result<Scalar> {
        Ok(match &self.kind {
            IntegralKind::Q { q } => {
                if q.is_one() {
                    return Err(Error::BadParameter("q-integral needs q != 1".into()));
                }
                (one() - pow(q, m as i64)) / (one() - q)
            }
            IntegralKind::R { r, q } => r_at(r, &pow(q, m as i64)),
            IntegralKind::Psi(seq) => seq.n_psi(m)?,
        })
    }

    /// Exact antiderivative with zero constant term, `deg p <= N - 1`.
    pub fn integrate(&self, p: &Polynomial) -> Result<Polynomial> {
        if let Some(d) = p.degree() {
            if d + 1 > self.n {
                return Err(Error::DegreeOverflow {
                    degree: d + 1,
                    cap: self.n,
                });
            }
        }
        let mut coeffs = vec![Scalar::zero()];
        for (k, c) in p.coeffs().iter().enumerate() {
            coeffs.push(c / self.denominator(k + 1)?);
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Monomial action as a matrix; the top column is truncated.
    pub fn matrix(&self) -> Result<OperatorMatrix> {
        let cols = (0..self.n)
            .map(|j| self.integrate(&Polynomial::monomial(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix::from_columns(cols, self.n))
    }

    /// `nhat_psi x^m = (m+1)_psi x^m`. The entry for `m = N` is set to 1: both
    /// consumers only ever feed it degrees below `N`.
    fn nhat(&self) -> Result<OperatorMatrix> {
        let mut diag = (0..self.n)
            .map(|m| self.denominator(m + 1))
            .collect::<Result<Vec<_>>>()?;
        diag.push(one());
        Ok(OperatorMatrix::diagonal(&diag))
    }

    /// The matching difference operator.
    pub fn differencer(&self) -> Result<OperatorMatrix> {
        let cols = (0..=self.n)
            .map(|j| {
                if j == 0 {
                    Ok(Polynomial::zero())
                } else {
                    Ok(Polynomial::term(self.denominator(j)?, j - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix::from_columns(cols, self.n))
    }

    /// The operator-form route: `(1-q) xhat (1 - q Qhat)^{-1}`, `xhat R(q Qhat)^{-1}`
    /// or `xhat nhat_psi^{-1}`, all with `Qhat f(x) = f(qx)`.
    pub fn operator_form(&self) -> Result<OperatorMatrix> {
        let n = self.n;
        let x = multiplication_x(n);
        let id = OperatorMatrix::identity(n);
        Ok(match &self.kind {
            IntegralKind::Q { q } => {
                let inner = &id - &dilation(q, n).scale(q);
                x.compose(&inner.inverse()?).scale(&(one() - q))
            }
            IntegralKind::R { r, q } => {
                let qq = dilation(q, n).scale(q);
                x.compose(&qq.polynomial_in(&Polynomial::new(r.clone())).inverse()?)
            }
            IntegralKind::Psi(_) => x.compose(&self.nhat()?.inverse()?),
        })
    }

    /// The difference operator in operator form: `((1 - q Qhat)/(1-q)) d_0`,
    /// `R(q Qhat) d_0` or `nhat_psi d_0`.
    pub fn differencer_operator_form(&self) -> Result<OperatorMatrix> {
        let n = self.n;
        let d0 = divided_difference_operator(n);
        let id = OperatorMatrix::identity(n);
        Ok(match &self.kind {
            IntegralKind::Q { q } => (&id - &dilation(q, n).scale(q))
                .scale(&(one() - q).recip())
                .compose(&d0),
            IntegralKind::R { r, q } => dilation(q, n)
                .scale(q)
                .polynomial_in(&Polynomial::new(r.clone()))
                .compose(&d0),
            IntegralKind::Psi(_) => self.nhat()?.compose(&d0),
        })
    }
}

/// `differencer o integral = id` on degrees `<= N - 1`, after checking that the
/// differencer is the one matching the integral.
pub fn verify_right_inverse(op: &IntegralOperator, differencer: &OperatorMatrix) -> Result<Check> {
    let n = op.degree();
    if differencer.degree() != n {
        return Err(Error::DegreeMismatch {
            left: differencer.degree(),
            right: n,
        });
    }
    if *differencer != op.differencer()? {
        return Err(Error::MismatchedPair);
    }
    let composed = differencer.compose(&op.matrix()?);
    let id = OperatorMatrix::identity(n);
    Ok(match composed.first_difference(&id, n - 1) {
        None => Check::pass_on(n - 1),
        Some(j) => Check::fail(format!("column {j}")),
    })
}

/// `integral o partial_psi = id - ev_0` on degrees `<= N - 1`.
pub fn verify_left_inverse_defect(seq: &AdmissibleSequence, n: usize) -> Result<Check> {
    let op = IntegralOperator::new(IntegralKind::Psi(seq.clone()), n)?;
    let d = psi_derivative_operator(seq, n)?;
    let composed = op.matrix()?.compose(&d);
    let ev0 = OperatorMatrix::from_fn(n, |j| {
        if j == 0 {
            Polynomial::one()
        } else {
            Polynomial::zero()
        }
    });
    let expected = &OperatorMatrix::identity(n) - &ev0;
    Ok(match composed.first_difference(&expected, n - 1) {
        None => Check::pass_on(n - 1),
        Some(j) => Check::fail(format!("column {j}")),
    })
}

/// `d_0 = sum_{n>=1} (-1)^{n+1} (x^{n-1}/n!) d^n/dx^n` on all degrees `<= N`.
pub fn check_divided_difference_series(n: usize) -> Check {
    let d = classical_derivative(n);
    let mut sum = OperatorMatrix::zero(n);
    for k in 1..=n {
        let sign = if k % 2 == 1 { one() } else { -one() };
        let mult = Polynomial::term(sign / factorial(k), k - 1);
        let mult_op = multiplication_x(n).polynomial_in(&mult);
        sum = &sum + &mult_op.compose(&d.pow(k));
    }
    match sum.first_difference(&divided_difference_operator(n), n) {
        None => Check::pass_on(n),
        Some(j) => Check::fail(format!("column {j}")),
    }
}
