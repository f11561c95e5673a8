//! The `qhat_{psi,Q}` operator, the mutator `AB - qhat BA`, and the q-plane
//! realization `p(xhat + y Qhat) 1` of the generalized translation.

use crate::error::{Error, Result};
use crate::operator::{
    dilation, dual_operator, generalized_shift, multiplication_x, OperatorMatrix,
};
use crate::poly::{Polynomial, SequenceTable};
use crate::psi::{AdmissibleSequence, Family};
use crate::report::Check;
use crate::scalar::{one, pow, Scalar};
use crate::sequences::BasicSequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QHatForm {
    /// `((n+1)_psi - 1_psi) / n_psi`, paired with `X p_n = p_{n+1} / 1_psi`.
    Normalized,
    /// `((n+1)_psi - 1) / n_psi`, paired with `X p_n = p_{n+1}`.
    Literal,
}

/// Diagonal in the basic sequence of `Q`. `qhat p_0 = p_0`.
#[derive(Clone, Debug)]
pub struct QHatOperator {
    pub matrix: OperatorMatrix,
    pub eigenvalues: Vec<Scalar>,
    pub form: QHatForm,
}

fn unit(seq: &AdmissibleSequence, form: &QHatForm) -> Scalar {
    match form {
        QHatForm::Normalized => seq.value(1).clone(),
        QHatForm::Literal => one(),
    }
}

pub fn qhat_operator(basic: &BasicSequence, form: QHatForm) -> Result<QHatOperator> {
    let seq = &basic.seq;
    let n = basic.table.working_degree();
    let u = unit(seq, &form);
    let mut eigenvalues = vec![one()];
    for k in 1..=n {
        eigenvalues.push((seq.n_psi(k + 1)? - &u) / seq.value(k));
    }
    let matrix = OperatorMatrix::diagonal_in_basis(&basic.table, &eigenvalues)?;
    Ok(QHatOperator {
        matrix,
        eigenvalues,
        form,
    })
}

/// `X p_n = p_{n+1} / u`, with `u = 1_psi` or `1` according to the form.
pub fn shift_raiser(basic: &BasicSequence, form: &QHatForm) -> Result<OperatorMatrix> {
    let n = basic.table.working_degree();
    let w = unit(&basic.seq, form).recip();
    OperatorMatrix::raising_in_basis(&basic.table, &vec![w; n])
}

pub fn q_mutator(a: &OperatorMatrix, b: &OperatorMatrix, qhat: &QHatOperator) -> OperatorMatrix {
    &a.compose(b) - &qhat.matrix.compose(&b.compose(a))
}

fn identity_window(m: &OperatorMatrix) -> Check {
    let n = m.degree();
    let id = OperatorMatrix::identity(n);
    match m.first_difference(&id, n - 1) {
        None => Check::pass_on(n - 1),
        Some(j) => Check::fail(format!("degree {j}: {}", m.column(j))),
    }
}

/// `[Q, X]_{qhat} = id` on degrees `<= N - 1`.
pub fn check_mutator(basic: &BasicSequence, form: QHatForm) -> Result<Check> {
    let x = shift_raiser(basic, &form)?;
    let qhat = qhat_operator(basic, form)?;
    Ok(identity_window(&q_mutator(&basic.operator, &x, &qhat)))
}

/// The same relation with the dual operator `xhat_Q p_n = (n+1)/(n+1)_psi p_{n+1}`.
pub fn check_mutator_with_dual(basic: &BasicSequence) -> Result<Check> {
    let x = dual_operator(&basic.operator, &basic.table, &basic.seq)?;
    let qhat = qhat_operator(basic, QHatForm::Literal)?;
    Ok(identity_window(&q_mutator(&basic.operator, &x, &qhat)))
}

fn q_of(seq: &AdmissibleSequence) -> Result<Scalar> {
    match seq.family() {
        Family::QDeformed { q } => Ok(q.clone()),
        _ => Err(Error::WrongFamily),
    }
}

/// `qhat x^n = q^n x^n` for `Q = partial_q`; the window is the last `n` before
/// the first disagreement.
pub fn check_qhat_powers(basic: &BasicSequence) -> Result<Check> {
    let q = q_of(&basic.seq)?;
    let qhat = qhat_operator(basic, QHatForm::Literal)?;
    for n in 0..=basic.table.working_degree() {
        let lhs = qhat.matrix.apply(&Polynomial::monomial(n));
        let rhs = Polynomial::term(pow(&q, n as i64), n);
        if lhs != rhs {
            let check = Check::fail(format!("n = {n}: {lhs} vs {rhs}"));
            return Ok(if n > 0 {
                check.with_window(n - 1)
            } else {
                check
            });
        }
    }
    Ok(Check::pass())
}

/// `B A - q A B` for `A = xhat`, `B = y Qhat`.
pub fn q_commutation(
    seq: &AdmissibleSequence,
    y: &Scalar,
    degree: usize,
) -> Result<OperatorMatrix> {
    let q = q_of(seq)?;
    let a = multiplication_x(degree);
    let b = dilation(&q, degree).scale(y);
    Ok(&b.compose(&a) - &a.compose(&b).scale(&q))
}

pub fn check_q_commutation(seq: &AdmissibleSequence, y: &Scalar, degree: usize) -> Result<Check> {
    let m = q_commutation(seq, y, degree)?;
    let zero = OperatorMatrix::zero(degree);
    Ok(match m.first_difference(&zero, degree) {
        None => Check::pass(),
        Some(j) => Check::fail(format!("column {j}")),
    })
}

/// `p(xhat + y Qhat) 1`.
pub fn qplane_substitution(
    seq: &AdmissibleSequence,
    p: &Polynomial,
    y: &Scalar,
) -> Result<Polynomial> {
    let q = q_of(seq)?;
    let d = p.degree().unwrap_or(0).max(1);
    let m = &multiplication_x(d) + &dilation(&q, d).scale(y);
    Ok(m.polynomial_in(p).apply(&Polynomial::one()))
}

/// For every entry: `p_n(xhat + y Qhat) 1 = E^y p_n = sum_k binom_q(n, k) s_k(x) b_{n-k}(y)`,
/// where `b` is the attached binomial-type sequence (the table itself for 5.3).
pub fn qplane_identification(
    seq: &AdmissibleSequence,
    table: &SequenceTable,
    binomial: &SequenceTable,
    y: &Scalar,
) -> Result<Check> {
    check_q_commutation(seq, y, table.working_degree())?;
    for n in 0..=table.working_degree() {
        let p = &table[n];
        let via_plane = qplane_substitution(seq, p, y)?;
        let via_shift = generalized_shift(seq, p, y)?;
        let mut via_sum = Polynomial::zero();
        for k in 0..=n {
            let c = seq.binomial(n, k)? * binomial[n - k].evaluate(y);
            via_sum += &table[k].scale(&c);
        }
        if via_plane != via_shift || via_shift != via_sum {
            return Ok(Check::fail(format!("n = {n}, y = {y}")));
        }
    }
    Ok(Check::pass())
}
