//! Inner product attached to a Sheffer sequence, the operator with spectrum
//! `{0, 1, ..., N}` on it, and umbral operators between basic sequences.

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{expand_in_dual_pair, reassemble, RaiserMode};
use crate::operator::{apply_xhat_psi, dual_operator, xhat_psi_left_inverse, OperatorMatrix};
use crate::poly::Polynomial;
use crate::report::Check;
use crate::scalar::{int, Scalar};
use crate::sequences::{BasicSequence, ShefferSequence};
use crate::series::DeltaSeries;

/// `(f, g) = [(W f)(Q) S g](0)` with `W s_n = x^n`.
#[derive(Clone, Debug)]
pub struct InnerProductContext {
    pub sheffer: ShefferSequence,
    /// Maps `s_n` to `x^n`.
    pub w: OperatorMatrix,
    q_powers: Vec<OperatorMatrix>,
}

impl InnerProductContext {
    pub fn new(sheffer: &ShefferSequence) -> Result<Self> {
        let w = OperatorMatrix::basis_matrix(&sheffer.table).inverse()?;
        let q = &sheffer.basic.operator;
        let mut q_powers = vec![OperatorMatrix::identity(q.degree())];
        for k in 1..=q.degree() {
            q_powers.push(q_powers[k - 1].compose(q));
        }
        Ok(InnerProductContext {
            sheffer: sheffer.clone(),
            w,
            q_powers,
        })
    }

    pub fn inner_product(&self, f: &Polynomial, g: &Polynomial) -> Result<Scalar> {
        let wf = self.w.apply(f);
        let sg = self.sheffer.s.apply_psi(self.sheffer.seq(), g)?;
        let mut out = Scalar::zero();
        for (k, c) in wf.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out += c * self.q_powers[k].apply(&sg).constant_term();
            }
        }
        Ok(out)
    }

    /// Entry `(k, n)` is `(s_k, s_n)`.
    pub fn gram_in_sheffer_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let s = &self.sheffer.table;
        let n = s.working_degree();
        (0..=n)
            .map(|k| (0..=n).map(|m| self.inner_product(&s[k], &s[m])).collect())
            .collect()
    }

    /// Entry `(i, j)` is `(x^i, x^j)`.
    pub fn gram_in_monomial_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.sheffer.table.working_degree();
        (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| self.inner_product(&Polynomial::monomial(i), &Polynomial::monomial(j)))
                    .collect()
            })
            .collect()
    }

    /// `(s_k, s_n) = n_psi! delta_{kn}` for all `k, n <= N`.
    pub fn check_orthogonality(&self) -> Result<Check> {
        let gram = self.gram_in_sheffer_basis()?;
        let seq = self.sheffer.seq();
        for (k, row) in gram.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                let expected = if k == n {
                    seq.factorial(n)?
                } else {
                    Scalar::zero()
                };
                if *v != expected {
                    return Ok(Check::fail(format!(
                        "(s_{k}, s_{n}) = {v}, expected {expected}"
                    )));
                }
            }
        }
        Ok(Check::pass())
    }
}

/// Positive definiteness of a symmetric rational matrix via `L D L^T` pivots.
pub fn positive_definite(matrix: &[Vec<Scalar>]) -> Check {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] != a[j][i] {
                return Check::fail(format!("not symmetric at ({i}, {j})"));
            }
        }
    }
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            return Check::fail(format!("pivot {k} is {pivot}"));
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let d = &factor * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    Check::pass()
}

/// Which printed reading of the series formula reproduces the operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NuReading {
    /// `nu_k(x) = [D q_k](0) x / 1_psi`, used as a multiplication operator.
    ScalarTimesX,
    /// `nu_k = [xhat_psi D q_k](0) = 0`.
    Evaluated,
    /// `nu_k = [D q_k](0) xhat_psi` as an operator factor.
    OperatorXhat,
}

/// Which raising map the Pincherle derivative of `log S` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PincherleBase {
    XhatPsi,
    XhatQ,
}

/// How `xhat_psi^{-1}` acts on `q_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseReading {
    /// Left inverse of `xhat_psi`: `x^{n+1} -> ((n+1)_psi/(n+1)) x^n`.
    LeftInverse,
    /// Division by `x`.
    DivideByX,
}

#[derive(Clone, Debug)]
pub struct FormulaRoute {
    pub reading: NuReading,
    pub base: PincherleBase,
    pub inverse: InverseReading,
    pub u: Vec<Scalar>,
    pub matrix: OperatorMatrix,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct SpectralOperator {
    /// Diagonal with entries `0, 1, ..., N` in the Sheffer basis.
    pub matrix: OperatorMatrix,
    /// Coefficients `c_k(x)` of `A = sum_k c_k(x) Q^k`.
    pub expansion: Vec<Polynomial>,
    pub formula_routes: Vec<FormulaRoute>,
}

impl SpectralOperator {
    /// `A s_n = n s_n` for `n <= window`.
    pub fn check_eigen(&self, sheffer: &ShefferSequence, window: usize) -> Check {
        for n in 0..=window.min(sheffer.table.working_degree()) {
            let lhs = self.matrix.apply(&sheffer.table[n]);
            if lhs != sheffer.table[n].scale(&int(n as i64)) {
                return Check::fail(format!("n = {n}"));
            }
        }
        Check::pass_on(window)
    }

    /// Routes that reproduce the operator.
    pub fn agreeing_routes(&self) -> Vec<(NuReading, PincherleBase, InverseReading)> {
        self.formula_routes
            .iter()
            .filter(|r| r.agrees)
            .map(|r| (r.reading, r.base, r.inverse))
            .collect()
    }
}

/// Builds the operator from its defining property, expands it in `Q` and
/// multiplication by `x`, and evaluates the printed series under each reading.
pub fn spectral_operator(sheffer: &ShefferSequence) -> Result<SpectralOperator> {
    let n = sheffer.table.working_degree();
    let seq = sheffer.seq();
    let q = &sheffer.basic.operator;
    let eigen: Vec<Scalar> = (0..=n).map(|k| int(k as i64)).collect();
    let matrix = OperatorMatrix::diagonal_in_basis(&sheffer.table, &eigen)?;
    let expansion = expand_in_dual_pair(&matrix, q, RaiserMode::Multiplication)?;
    if reassemble(&expansion, q, RaiserMode::Multiplication)? != matrix {
        return Err(Error::EigenSeriesFailure { n });
    }

    let basic = &sheffer.basic.table;
    let log_s = sheffer.s.with_order(n).formal_log_nonconstant()?;
    let xhat_q = dual_operator(q, basic, seq)?;
    let xhat_psi_m = crate::operator::xhat_psi_operator(seq, n)?;
    let log_op = log_s.realize_psi(seq, n)?;

    let mut routes = Vec::new();
    let bases = [PincherleBase::XhatPsi, PincherleBase::XhatQ];
    let inverses = [InverseReading::LeftInverse, InverseReading::DivideByX];
    for (base, inverse) in bases.into_iter().flat_map(|b| inverses.map(|i| (b, i))) {
        let x = match base {
            PincherleBase::XhatPsi => &xhat_psi_m,
            PincherleBase::XhatQ => &xhat_q,
        };
        let log_prime = log_op.commutator(x);
        let mut u = vec![Scalar::zero()];
        for k in 1..=n {
            let lowered = match inverse {
                InverseReading::LeftInverse => xhat_psi_left_inverse(seq, &basic[k])?,
                InverseReading::DivideByX => crate::harness::divided_difference(&basic[k]),
            };
            u.push(-log_prime.apply(&lowered).constant_term());
        }
        for reading in [
            NuReading::ScalarTimesX,
            NuReading::Evaluated,
            NuReading::OperatorXhat,
        ] {
            let mut a = OperatorMatrix::zero(n);
            for k in 1..=n {
                let dq0 = basic[k].derivative().constant_term();
                let coeff_op = match reading {
                    NuReading::ScalarTimesX => {
                        let nu = apply_xhat_psi(seq, &Polynomial::constant(dq0))?;
                        let c = &Polynomial::constant(u[k].clone()) + &nu;
                        crate::operator::multiplication_x(n).polynomial_in(&c)
                    }
                    NuReading::Evaluated => OperatorMatrix::scalar(&u[k], n),
                    NuReading::OperatorXhat => {
                        &OperatorMatrix::scalar(&u[k], n) + &xhat_psi_m.scale(&dq0)
                    }
                };
                let term = coeff_op
                    .compose(&q.pow(k))
                    .scale(&seq.factorial(k - 1)?.recip());
                a = &a + &term;
            }
            routes.push(FormulaRoute {
                reading,
                base,
                inverse,
                u: u.clone(),
                agrees: a == matrix,
                matrix: a,
            });
        }
    }
    Ok(SpectralOperator {
        matrix,
        expansion,
        formula_routes: routes,
    })
}

/// `T p_n = q_n`.
#[derive(Clone, Debug)]
pub struct UmbralOperator {
    pub matrix: OperatorMatrix,
    pub inverse: OperatorMatrix,
    pub source: BasicSequence,
    pub target: BasicSequence,
}

pub fn umbral_operator(source: &BasicSequence, target: &BasicSequence) -> Result<UmbralOperator> {
    let (a, b) = (source.table.working_degree(), target.table.working_degree());
    if a != b {
        return Err(Error::DegreeMismatch { left: a, right: b });
    }
    let p = OperatorMatrix::basis_matrix(&source.table);
    let q = OperatorMatrix::basis_matrix(&target.table);
    let matrix = q.compose(&p.inverse()?);
    let inverse = p.compose(&q.inverse()?);
    Ok(UmbralOperator {
        matrix,
        inverse,
        source: source.clone(),
        target: target.clone(),
    })
}

impl UmbralOperator {
    pub fn conjugate(&self, s: &OperatorMatrix) -> OperatorMatrix {
        self.matrix.compose(s).compose(&self.inverse)
    }
}

#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    /// `T S T^{-1}` commutes with `P` and conjugation respects the product.
    pub automorphism: Check,
    /// `T L T^{-1}` lowers degree by one.
    pub lowering: Check,
    /// `T s(Q) T^{-1} = s(P)`.
    pub series_image: Check,
    /// `T` maps the Sheffer sequence of `(Q, S)` to one of `P`.
    pub sheffer_image: Check,
}

impl AutomorphismReport {
    pub fn all(&self) -> Check {
        Check::all([
            self.automorphism.clone(),
            self.lowering.clone(),
            self.series_image.clone(),
            self.sheffer_image.clone(),
        ])
    }
}

/// The four claims, for `S = s(Q)` and `L = l(Q)` series in the source operator `Q`.
pub fn verify_umbral_automorphism(
    t: &UmbralOperator,
    s: &DeltaSeries,
    l: &DeltaSeries,
    sheffer: &ShefferSequence,
) -> Result<AutomorphismReport> {
    let q = &t.source.operator;
    let n = q.degree();
    let p = t.conjugate(q);
    let s_op = s.realize(q);
    let s_conj = t.conjugate(&s_op);

    let commutes = s_conj.compose(&p) == p.compose(&s_conj);
    let l_op = l.realize(q);
    let product = t.conjugate(&s_op.compose(&l_op)) == s_conj.compose(&t.conjugate(&l_op));
    let automorphism = if commutes && product {
        Check::pass()
    } else {
        Check::fail(if commutes { "product" } else { "commutation" })
    };

    let l_conj = t.conjugate(&l_op);
    let lowering = if l_conj.grading() == crate::operator::Grading::LowersByOne {
        Check::pass()
    } else {
        Check::fail("conjugated operator is not lowering")
    };

    let series_image = match s_conj.first_difference(&s.realize(&p), n) {
        None => Check::pass(),
        Some(j) => Check::fail(format!("column {j}")),
    };

    let seq = sheffer.seq();
    let mapped: Vec<Polynomial> = sheffer
        .table
        .entries()
        .iter()
        .map(|e| t.matrix.apply(e))
        .collect();
    let mut sheffer_image = if mapped[0].degree() == Some(0) {
        Check::pass()
    } else {
        Check::fail("image of s_0 is not a nonzero constant")
    };
    for k in 1..=n {
        if p.apply(&mapped[k]) != mapped[k - 1].scale(seq.value(k)) {
            sheffer_image = Check::fail(format!("n = {k}"));
            break;
        }
    }
    Ok(AutomorphismReport {
        automorphism,
        lowering,
        series_image,
        sheffer_image,
    })
}

/// Both sides of `U' = xhat_Q U (L' - I)` with `U q_n = (n_psi!/n!) xhat_Q^n 1`,
/// `q_n` basic for `L` and primes taken against `xhat_Q`.
#[derive(Clone, Debug)]
pub struct UmbralDerivativeReport {
    pub lhs: OperatorMatrix,
    pub rhs: OperatorMatrix,
    /// Columns `0..=w` agree; `None` when column 0 already differs.
    pub window: Option<usize>,
    /// Whether `(n_psi!/n!) xhat_Q^n 1 = x^n` for every `n`.
    pub image_is_monomial: bool,
}

pub fn verify_umbral_derivative(
    q_basic: &BasicSequence,
    l: &DeltaSeries,
) -> Result<UmbralDerivativeReport> {
    let q = &q_basic.operator;
    let seq = &q_basic.seq;
    let n = q.degree();
    let xq = dual_operator(q, &q_basic.table, seq)?;
    let l_op = l.realize(q);
    let l_basic = crate::sequences::basic_sequence(&l_op, seq)?;

    let mut images = vec![Polynomial::one()];
    for k in 1..=n {
        images.push(xq.apply(&images[k - 1]));
    }
    let images: Vec<Polynomial> = images
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.scale(&(seq.factorial_ref(k) / crate::scalar::factorial(k))))
        .collect();
    let image_is_monomial = images
        .iter()
        .enumerate()
        .all(|(k, p)| *p == Polynomial::monomial(k));

    let target = OperatorMatrix::from_columns(images, n);
    let u = target.compose(&OperatorMatrix::basis_matrix(&l_basic.table).inverse()?);
    let lhs = u.commutator(&xq);
    let l_prime = l_op.commutator(&xq);
    let rhs = xq
        .compose(&u)
        .compose(&(&l_prime - &OperatorMatrix::identity(n)));
    let window = lhs.agreement_window(&rhs);
    Ok(UmbralDerivativeReport {
        lhs,
        rhs,
        window,
        image_is_monomial,
    })
}
