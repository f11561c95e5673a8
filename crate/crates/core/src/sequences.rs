//! Basic, Sheffer and Appell sequences and their characterisations.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{apply_xhat_psi, check_basic, Grading, OperatorMatrix};
use crate::poly::{Polynomial, SequenceTable};
use crate::psi::AdmissibleSequence;
use crate::scalar::{int, one, zero, Scalar};
use crate::series::DeltaSeries;

/// The normal sequence with `Q p_n = n_psi p_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicSequence {
    pub table: SequenceTable,
    pub operator: OperatorMatrix,
    pub seq: AdmissibleSequence,
}

/// `s_n = S^{-1} q_n` for the basic sequence `q_n` of `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferSequence {
    pub table: SequenceTable,
    pub basic: BasicSequence,
    pub s: DeltaSeries,
}

impl ShefferSequence {
    pub fn seq(&self) -> &AdmissibleSequence {
        &self.basic.seq
    }
}

/// The unique `p` with `Q p = rhs` and `p(0) = 0`, for lowering `Q`.
pub fn solve_lowering(q: &OperatorMatrix, rhs: &Polynomial) -> Result<Polynomial> {
    let Some(d) = rhs.degree() else {
        return Ok(Polynomial::zero());
    };
    if d + 1 > q.degree() {
        return Err(Error::DegreeOverflow {
            degree: d + 1,
            cap: q.degree(),
        });
    }
    let mut residual = rhs.clone();
    let mut out = vec![zero(); d + 2];
    for j in (1..=d + 1).rev() {
        let col = q.column(j);
        let lead = col.coeff(j - 1);
        if lead.is_zero() {
            return Err(Error::Singular { n: j });
        }
        let a = residual.coeff(j - 1) / &lead;
        if !a.is_zero() {
            residual -= &col.scale(&a);
        }
        out[j] = a;
    }
    if !residual.is_zero() {
        return Err(Error::NotDifferenceTial);
    }
    Ok(Polynomial::new(out))
}

/// Triangular construction of the basic sequence of a lowering `Q`.
pub fn basic_sequence(q: &OperatorMatrix, seq: &AdmissibleSequence) -> Result<BasicSequence> {
    if q.grading() != Grading::LowersByOne {
        return Err(Error::NotDifferenceTial);
    }
    let n = q.degree();
    let mut entries = vec![Polynomial::one()];
    for k in 1..=n {
        let rhs = entries[k - 1].scale(&seq.n_psi(k)?);
        entries.push(solve_lowering(q, &rhs)?);
    }
    Ok(BasicSequence {
        table: SequenceTable::new(entries)?,
        operator: q.clone(),
        seq: seq.clone(),
    })
}

/// The four closed forms for the basic sequence of `Q = partial_psi S`.
#[derive(Clone, Debug, PartialEq)]
pub struct RodriguesTables {
    /// `p_n = Q' S^{-n-1} x^n`.
    pub transfer: SequenceTable,
    /// `p_n = S^{-n} x^n - (n_psi/n) (S^{-n})' x^{n-1}`.
    pub difference: SequenceTable,
    /// `p_n = (n_psi/n) xhat_psi S^{-n} x^{n-1}`.
    pub raising: SequenceTable,
    /// `p_n = (n_psi/n) xhat_psi (Q')^{-1} p_{n-1}`.
    pub rodrigues: SequenceTable,
}

impl RodriguesTables {
    pub fn all(&self) -> [&SequenceTable; 4] {
        [
            &self.transfer,
            &self.difference,
            &self.raising,
            &self.rodrigues,
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.all();
        a.iter().all(|t| *t == a[0])
    }
}

/// `T' = T xhat_psi - xhat_psi T` for a series operator, applied to `p`.
fn pincherle_apply(
    t: &DeltaSeries,
    seq: &AdmissibleSequence,
    p: &Polynomial,
) -> Result<Polynomial> {
    let up = t.apply_psi(seq, &apply_xhat_psi(seq, p)?)?;
    let down = apply_xhat_psi(seq, &t.apply_psi(seq, p)?)?;
    Ok(up - down)
}

/// Evaluates all four formulas up to degree `n_max`. Needs `(n_max + 1)_psi`.
pub fn rodrigues_sequence(
    q_series: &DeltaSeries,
    seq: &AdmissibleSequence,
    n_max: usize,
) -> Result<RodriguesTables> {
    if !q_series.is_delta() {
        return Err(Error::NotDelta);
    }
    seq.n_psi(n_max + 1)?;
    let order = q_series.order().max(n_max + 1);
    let q_series = q_series.with_order(order);
    // Q = t s(t), so s has the coefficients shifted down by one.
    let s = DeltaSeries::new(q_series.coeffs()[1..].to_vec(), order);
    let s_inv = s.multiplicative_inverse()?;

    // Q' restricted to degree n_max is degree preserving with nonzero diagonal.
    let q_prime = OperatorMatrix::from_columns(
        (0..=n_max)
            .map(|j| pincherle_apply(&q_series, seq, &Polynomial::monomial(j)))
            .collect::<Result<Vec<_>>>()?,
        n_max,
    );
    let q_prime_inv = q_prime.inverse()?;

    let mut transfer = vec![Polynomial::one()];
    let mut difference = vec![Polynomial::one()];
    let mut raising = vec![Polynomial::one()];
    let mut rodrigues = vec![Polynomial::one()];
    let mut s_pow = DeltaSeries::one(order);
    for n in 1..=n_max {
        s_pow = s_pow.multiply(&s_inv);
        let x_n = Polynomial::monomial(n);
        let x_prev = Polynomial::monomial(n - 1);
        let factor = seq.n_psi(n)? / int(n as i64);

        let s_next = s_pow.multiply(&s_inv);
        transfer.push(q_prime.apply(&s_next.apply_psi(seq, &x_n)?));

        let d = s_pow.apply_psi(seq, &x_n)? - pincherle_apply(&s_pow, seq, &x_prev)?.scale(&factor);
        difference.push(d);

        let r = apply_xhat_psi(seq, &s_pow.apply_psi(seq, &x_prev)?)?.scale(&factor);
        raising.push(r);

        let prev = q_prime_inv.apply(&rodrigues[n - 1]);
        rodrigues.push(apply_xhat_psi(seq, &prev)?.scale(&factor));
    }
    Ok(RodriguesTables {
        transfer: SequenceTable::new(transfer)?,
        difference: SequenceTable::new(difference)?,
        raising: SequenceTable::new(raising)?,
        rodrigues: SequenceTable::new(rodrigues)?,
    })
}

/// `s_n = S^{-1} q_n`, with the defining conditions checked.
pub fn sheffer_sequence(basic: &BasicSequence, s: &DeltaSeries) -> Result<ShefferSequence> {
    if !s.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let seq = &basic.seq;
    let n = basic.table.working_degree();
    let s_inv = s.with_order(s.order().max(n)).multiplicative_inverse()?;
    let entries = basic
        .table
        .entries()
        .iter()
        .map(|q| s_inv.apply_psi(seq, q))
        .collect::<Result<Vec<_>>>()?;
    let table = SequenceTable::new(entries)?;
    for k in 1..=n {
        if basic.operator.apply(&table[k]) != table[k - 1].scale(seq.value(k)) {
            return Err(Error::BasisMismatch { n: k });
        }
    }
    Ok(ShefferSequence {
        table,
        basic: basic.clone(),
        s: s.clone(),
    })
}

/// `sum_k s_k(0)/k_psi! Q^k`, which should equal `S^{-1}`.
pub fn sheffer_reconstruction(sheffer: &ShefferSequence) -> OperatorMatrix {
    let seq = sheffer.seq();
    let n = sheffer.table.working_degree();
    let coeffs: Vec<Scalar> = (0..=n)
        .map(|k| sheffer.table[k].constant_term() / seq.factorial_ref(k))
        .collect();
    sheffer
        .basic
        .operator
        .polynomial_in(&Polynomial::new(coeffs))
}

/// `0, 1, -1, 2, 3, 4, ...`, `count` distinct values.
pub fn sample_points(count: usize) -> Vec<Scalar> {
    let mut out = vec![zero(), one(), -one()];
    let mut k = 2;
    while out.len() < count {
        out.push(int(k));
        k += 1;
    }
    out.truncate(count);
    out
}

/// Per-degree outcome of a sampled binomial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub passed: Vec<bool>,
    /// First failing `(n, y)` with `y` as a fraction string.
    pub counterexample: Option<(usize, String)>,
}

impl BinomialReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn binomial_check(
    shift: &AdmissibleSequence,
    seq: &AdmissibleSequence,
    left: &SequenceTable,
    right: &SequenceTable,
    ys: &[Scalar],
) -> Result<BinomialReport> {
    let n_max = left.working_degree();
    let mut passed = Vec::with_capacity(n_max + 1);
    let mut counterexample = None;
    for n in 0..=n_max {
        let mut ok = true;
        for y in ys {
            let lhs = crate::operator::generalized_shift(shift, &left[n], y)?;
            let mut rhs = Polynomial::zero();
            for k in 0..=n {
                let c = seq.binomial(n, k)? * right[n - k].evaluate(y);
                rhs += &left[k].scale(&c);
            }
            if lhs != rhs {
                ok = false;
                if counterexample.is_none() {
                    counterexample = Some((n, y.to_string()));
                }
                break;
            }
        }
        passed.push(ok);
    }
    Ok(BinomialReport {
        passed,
        counterexample,
    })
}

/// `p_n(x +_psi y) = sum_k (n over k)_psi p_k(x) p_{n-k}(y)` at the sample points.
pub fn verify_binomial_type(
    table: &SequenceTable,
    seq: &AdmissibleSequence,
    ys: &[Scalar],
) -> Result<BinomialReport> {
    binomial_check(seq, seq, table, table, ys)
}

/// As [`verify_binomial_type`], shifting with `shift` but expanding with the
/// binomial coefficients of `seq`.
pub fn verify_binomial_mixed(
    table: &SequenceTable,
    shift: &AdmissibleSequence,
    seq: &AdmissibleSequence,
    ys: &[Scalar],
) -> Result<BinomialReport> {
    binomial_check(shift, seq, table, table, ys)
}

/// `s_n(x +_psi y) = sum_k (n over k)_psi s_k(x) q_{n-k}(y)`.
pub fn verify_sheffer_binomial(sheffer: &ShefferSequence, ys: &[Scalar]) -> Result<BinomialReport> {
    binomial_check(
        sheffer.seq(),
        sheffer.seq(),
        &sheffer.table,
        &sheffer.basic.table,
        ys,
    )
}

/// Coefficients of `z^0..z^order` of a generating function, each a polynomial in `x`.
pub type ZSeries = Vec<Polynomial>;

/// Outcome of comparing `sum s_k(x) z^k / k_psi!` with closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingFunctionReport {
    pub lhs: ZSeries,
    /// `exp_psi(x g(z)) / s(g(z))`, with `g` the compositional inverse of `q`.
    pub reciprocal_form: ZSeries,
    /// `s(g(z)) exp_psi(x g(z))`.
    pub literal_form: ZSeries,
    pub reciprocal_holds: bool,
    pub literal_holds: bool,
}

/// `A(z) exp_psi(x g(z))` truncated at `z^order`.
pub fn psi_generating_series(
    seq: &AdmissibleSequence,
    a: &DeltaSeries,
    g: &DeltaSeries,
    order: usize,
) -> Result<ZSeries> {
    let mut out = vec![Polynomial::zero(); order + 1];
    let mut g_pow = DeltaSeries::one(order);
    for n in 0..=order {
        let term = a.multiply(&g_pow);
        let inv_fact = seq.factorial(n)?.recip();
        for (k, slot) in out.iter_mut().enumerate() {
            let c = term.coeff(k) * &inv_fact;
            if !c.is_zero() {
                *slot += &Polynomial::term(c, n);
            }
        }
        g_pow = g_pow.multiply(&g.with_order(order));
    }
    Ok(out)
}

/// Compares the exponential generating function of a Sheffer sequence with
/// both closed forms, to `z`-order `min(order, N)`.
pub fn generating_function_check(
    sheffer: &ShefferSequence,
    q_series: &DeltaSeries,
    order: usize,
) -> Result<GeneratingFunctionReport> {
    let seq = sheffer.seq();
    let order = order.min(sheffer.table.working_degree());
    let g = q_series.with_order(order).compositional_inverse()?;
    let s_of_g = sheffer.s.with_order(order).compose(&g)?;
    let lhs: ZSeries = (0..=order)
        .map(|k| sheffer.table[k].scale(&seq.factorial_ref(k).recip()))
        .collect();
    let reciprocal_form = psi_generating_series(seq, &s_of_g.multiplicative_inverse()?, &g, order)?;
    let literal_form = psi_generating_series(seq, &s_of_g, &g, order)?;
    Ok(GeneratingFunctionReport {
        reciprocal_holds: lhs == reciprocal_form,
        literal_holds: lhs == literal_form,
        lhs,
        reciprocal_form,
        literal_form,
    })
}

/// `Phi(x; lambda) = sum lambda^n phi_n(x)` with `Q phi_n = phi_{n-1}`, `phi_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenSeries {
    /// `phi_n = x^n / n_phi!`, listed as the values `1_phi, 2_phi, ...`.
    Exponential(Vec<Scalar>),
    Table(Vec<Polynomial>),
}

pub fn eigen_coefficients(q: &OperatorMatrix, truncation: usize) -> Result<Vec<Polynomial>> {
    let mut phi = vec![Polynomial::one()];
    for n in 1..=truncation {
        let next = solve_lowering(q, &phi[n - 1]).map_err(|_| Error::EigenSeriesFailure { n })?;
        phi.push(next);
    }
    Ok(phi)
}

pub fn eigenfunction_series(q: &OperatorMatrix, truncation: usize) -> Result<EigenSeries> {
    let phi = eigen_coefficients(q, truncation)?;
    let monomial = phi
        .iter()
        .enumerate()
        .all(|(n, p)| *p == Polynomial::term(p.coeff(n), n));
    if !monomial {
        return Ok(EigenSeries::Table(phi));
    }
    // 1/n_phi! = c_n, so n_phi = c_{n-1} / c_n.
    let values = (1..=truncation)
        .map(|n| phi[n - 1].coeff(n - 1) / phi[n].coeff(n))
        .collect();
    Ok(EigenSeries::Exponential(values))
}

/// Which binomial convention admits constants `c_k` with
/// `A s_n = sum_k (n over k) s_k c_{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionReport {
    /// Constants under the plain binomial, if they exist.
    pub plain: Option<Vec<String>>,
    /// Constants under the psi-binomial, if they exist.
    pub psi: Option<Vec<String>>,
}

/// Solves for the constants under each convention degree by degree.
pub fn shift_invariant_constants(
    sheffer: &ShefferSequence,
    a: &OperatorMatrix,
) -> Result<ConventionReport> {
    let seq = sheffer.seq();
    let n_max = sheffer.table.working_degree();
    let plain_binom = AdmissibleSequence::classical(n_max);
    let solve = |binom: &dyn Fn(usize, usize) -> Result<Scalar>| -> Result<Option<Vec<String>>> {
        let s = &sheffer.table;
        let s0 = s[0].constant_term();
        let mut c: Vec<Scalar> = Vec::new();
        for n in 0..=n_max {
            let target = a.apply(&s[n]);
            let mut known = Polynomial::zero();
            for k in 1..=n {
                known += &s[k].scale(&(binom(n, k)? * &c[n - k]));
            }
            let rest = &target - &known;
            // rest must be c_n s_0 with s_0 a nonzero constant.
            let cn = rest.constant_term() / &s0;
            if rest != s[0].scale(&cn) {
                return Ok(None);
            }
            c.push(cn);
        }
        Ok(Some(c.iter().map(|v| v.to_string()).collect()))
    };
    let plain = solve(&|n, k| plain_binom.binomial(n, k))?;
    let psi = solve(&|n, k| seq.binomial(n, k))?;
    Ok(ConventionReport { plain, psi })
}

/// The check `Q p_n = n_psi p_{n-1}`, exposed for tables built elsewhere.
pub fn is_basic_for(q: &OperatorMatrix, table: &SequenceTable, seq: &AdmissibleSequence) -> bool {
    check_basic(q, table, seq).is_ok()
}
