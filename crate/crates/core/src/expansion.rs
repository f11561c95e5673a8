//! Unique expansion `T = sum_n q_n(R) Q^n` of an operator in a lowering `Q` and
//! a raising map `R`, and the indicator `P(x; lambda) = sum q_n(x) lambda^n`.

use num::Zero;

use crate::error::{Error, Result};
use crate::operator::{dual_operator, Grading, OperatorMatrix};
use crate::poly::Polynomial;
use crate::psi::AdmissibleSequence;
use crate::sequences::{basic_sequence, eigen_coefficients};

/// Which raising map the coefficients `q_n` are substituted into.
#[derive(Clone, Copy, Debug)]
pub enum RaiserMode<'a> {
    /// Multiplication by `x`.
    Multiplication,
    /// The dual `xhat_Q` built from the basic sequence of `Q` over `seq`.
    Dual(&'a AdmissibleSequence),
}

/// The raising map of a mode, as a matrix on the working degree of `q`.
pub fn raiser(q: &OperatorMatrix, mode: RaiserMode<'_>) -> Result<OperatorMatrix> {
    match mode {
        RaiserMode::Multiplication => Ok(crate::operator::multiplication_x(q.degree())),
        RaiserMode::Dual(seq) => {
            let basic = basic_sequence(q, seq)?;
            dual_operator(q, &basic.table, seq)
        }
    }
}

/// `q(R) u` with `q(R) = sum a_i R^i`, by Horner's rule on vectors.
fn apply_poly_of(r: &OperatorMatrix, q: &Polynomial, u: &Polynomial) -> Polynomial {
    q.coeffs()
        .iter()
        .rev()
        .fold(Polynomial::zero(), |acc, a| r.apply(&acc) + u.scale(a))
}

/// Expansion coefficients `q_0..q_N`.
pub fn expand_in_dual_pair(
    t: &OperatorMatrix,
    q: &OperatorMatrix,
    mode: RaiserMode<'_>,
) -> Result<Vec<Polynomial>> {
    if q.grading() != Grading::LowersByOne {
        return Err(Error::NotDifferenceTial);
    }
    let n_max = q.degree();
    if t.degree() != n_max {
        return Err(Error::DegreeMismatch {
            left: t.degree(),
            right: n_max,
        });
    }
    let r = raiser(q, mode)?;
    // R^i 1 has degree exactly i, which makes the solve below triangular.
    let mut r_powers = vec![Polynomial::one()];
    for i in 1..=n_max {
        let next = r.apply(&r_powers[i - 1]);
        if next.degree() != Some(i) {
            return Err(Error::Singular { n: i });
        }
        r_powers.push(next);
    }

    let mut coeffs: Vec<Polynomial> = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        // Q^n x^m for n = 0..=m.
        let mut lowered = vec![Polynomial::monomial(m)];
        for n in 1..=m {
            lowered.push(q.apply(&lowered[n - 1]));
        }
        let mut v = t.column(m).clone();
        for n in 0..m {
            v -= &apply_poly_of(&r, &coeffs[n], &lowered[n]);
        }
        let c = lowered[m].constant_term();
        if c.is_zero() {
            return Err(Error::Singular { n: m });
        }
        let mut residual = v.scale(&c.recip());
        let mut a = vec![num::zero(); residual.degree().map_or(0, |d| d + 1)];
        while let Some(d) = residual.degree() {
            let lead = r_powers[d].coeff(d);
            let coeff = residual.coeff(d) / lead;
            residual -= &r_powers[d].scale(&coeff);
            a[d] = coeff;
        }
        coeffs.push(Polynomial::new(a));
    }
    Ok(coeffs)
}

/// `sum_n q_n(R) Q^n` as a matrix.
pub fn reassemble(
    coeffs: &[Polynomial],
    q: &OperatorMatrix,
    mode: RaiserMode<'_>,
) -> Result<OperatorMatrix> {
    let r = raiser(q, mode)?;
    let n_max = q.degree();
    let cols = (0..=n_max)
        .map(|m| {
            let mut lowered = Polynomial::monomial(m);
            let mut out = Polynomial::zero();
            for c in coeffs.iter().take(m + 1) {
                out += &apply_poly_of(&r, c, &lowered);
                lowered = q.apply(&lowered);
            }
            out
        })
        .collect();
    Ok(OperatorMatrix::from_columns(cols, n_max))
}

/// The indicator `P(x; lambda)` as its `lambda`-coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Indicator {
    pub coefficients: Vec<Polynomial>,
    /// `Phi^{-1} T Phi` order by order, with `Phi` the eigenseries of `Q`.
    pub conjugated: Vec<Polynomial>,
}

impl Indicator {
    pub fn conjugation_holds(&self) -> bool {
        self.coefficients == self.conjugated
    }
}

/// Multiplication-mode expansion read as a `lambda`-series, checked against
/// `Phi^{-1} T Phi` where `Q Phi = lambda Phi`, `Phi(0; lambda) = 1`.
pub fn indicator(t: &OperatorMatrix, q: &OperatorMatrix, truncation: usize) -> Result<Indicator> {
    let truncation = truncation.min(q.degree());
    let coeffs = expand_in_dual_pair(t, q, RaiserMode::Multiplication)?;
    let phi = eigen_coefficients(q, truncation)?;
    // Phi^{-1} as a lambda-series: psi_0 = 1, psi_n = -sum_{k>=1} phi_k psi_{n-k}.
    let mut phi_inv = vec![Polynomial::one()];
    for n in 1..=truncation {
        let mut acc = Polynomial::zero();
        for k in 1..=n {
            acc += &phi[k].multiply(&phi_inv[n - k]);
        }
        phi_inv.push(-acc);
    }
    let t_phi: Vec<Polynomial> = phi.iter().map(|p| t.apply(p)).collect();
    let conjugated = (0..=truncation)
        .map(|n| {
            let mut acc = Polynomial::zero();
            for j in 0..=n {
                acc += &t_phi[j].multiply(&phi_inv[n - j]);
            }
            acc
        })
        .collect();
    Ok(Indicator {
        coefficients: coeffs[..=truncation].to_vec(),
        conjugated,
    })
}
