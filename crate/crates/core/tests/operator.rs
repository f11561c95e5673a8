use umbral_core::error::Error;
use umbral_core::operator::*;
use umbral_core::poly::{Polynomial, SequenceTable};
use umbral_core::psi::AdmissibleSequence;
use umbral_core::psi::Family;
use umbral_core::scalar::ratio;
use umbral_core::scalar::{int, one, zero};

fn q2(n: usize) -> AdmissibleSequence {
    AdmissibleSequence::new(Family::q(int(2)), n).unwrap()
}

fn fib(n: usize) -> AdmissibleSequence {
    AdmissibleSequence::new(Family::Fibonacci, n).unwrap()
}

#[test]
fn psi_derivative_columns() {
    let d = psi_derivative_operator(&AdmissibleSequence::classical(6), 6).unwrap();
    assert_eq!(d.column(3), &Polynomial::from_ints(&[0, 0, 3]));
    let d = psi_derivative_operator(&q2(6), 6).unwrap();
    assert_eq!(d.column(4), &Polynomial::term(int(15), 3));
    let d = psi_derivative_operator(&fib(6), 6).unwrap();
    assert_eq!(d.column(5), &Polynomial::term(int(5), 4));
    assert_eq!(d.grading(), Grading::LowersByOne);
}

#[test]
fn jackson_examples() {
    let p = Polynomial::monomial(2);
    assert_eq!(
        jackson_derivative(&p, &int(2)).unwrap(),
        Polynomial::term(int(3), 1)
    );
    assert_eq!(
        jackson_derivative(&Polynomial::constant(int(7)), &int(2)).unwrap(),
        Polynomial::zero()
    );
    assert_eq!(
        jackson_derivative(&Polynomial::monomial(3), &ratio(1, 2)).unwrap(),
        Polynomial::term(ratio(7, 4), 2)
    );
    assert!(jackson_derivative(&p, &one()).is_err());
    let j = jackson_operator(&int(2), 6).unwrap();
    assert_eq!(j, psi_derivative_operator(&q2(6), 6).unwrap());
}

#[test]
fn divided_difference_columns() {
    let d0 = divided_difference_operator(5);
    assert_eq!(d0.column(1), &Polynomial::one());
    assert!(d0.column(0).is_zero());
}

#[test]
fn xhat_psi_columns() {
    let x = xhat_psi_operator(&AdmissibleSequence::classical(6), 6).unwrap();
    assert_eq!(x.column(2), &Polynomial::monomial(3));
    assert!(x.column(6).is_zero());
    assert_eq!(x.grading(), Grading::RaisesByOne);
    let x = xhat_psi_operator(&q2(6), 6).unwrap();
    assert_eq!(x.column(1), &Polynomial::term(ratio(2, 3), 2));
    let x = xhat_psi_operator(&fib(6), 6).unwrap();
    assert_eq!(x.column(3), &Polynomial::term(ratio(4, 3), 4));
}

#[test]
fn generalized_shift_examples() {
    let p = Polynomial::monomial(2);
    let cl = AdmissibleSequence::classical(4);
    assert_eq!(
        generalized_shift(&cl, &p, &one()).unwrap(),
        Polynomial::from_ints(&[1, 2, 1])
    );
    assert_eq!(generalized_shift(&q2(4), &p, &zero()).unwrap(), p);
    assert_eq!(
        generalized_shift(&q2(4), &p, &one()).unwrap(),
        Polynomial::from_ints(&[1, 3, 1])
    );
}

#[test]
fn dual_operator_examples() {
    let n = 6;
    for seq in [AdmissibleSequence::classical(n), q2(n), fib(n)] {
        let d = psi_derivative_operator(&seq, n).unwrap();
        let x = dual_operator(&d, &SequenceTable::monomials(n), &seq).unwrap();
        assert_eq!(x, xhat_psi_operator(&seq, n).unwrap());
    }
    // Forward difference with falling factorials: xhat_Q x^(n) = x^(n+1).
    let cl = AdmissibleSequence::classical(n);
    let falling: Vec<Polynomial> = (0..=n)
        .map(|k| {
            (0..k).fold(Polynomial::one(), |acc, i| {
                acc.multiply(&Polynomial::from_ints(&[-(i as i64), 1]))
            })
        })
        .collect();
    let table = SequenceTable::new(falling.clone()).unwrap();
    let x = dual_operator(&forward_difference(n), &table, &cl).unwrap();
    for k in 0..n {
        assert_eq!(x.apply(&falling[k]), falling[k + 1]);
    }
    let wrong = SequenceTable::monomials(n);
    assert_eq!(
        dual_operator(&forward_difference(n), &wrong, &cl),
        Err(Error::BasisMismatch { n: 2 })
    );
}

#[test]
fn pincherle_examples() {
    let n = 8;
    for seq in [AdmissibleSequence::classical(n), q2(n), fib(n)] {
        let d = psi_derivative_operator(&seq, n).unwrap();
        let x = xhat_psi_operator(&seq, n).unwrap();
        let id = OperatorMatrix::identity(n);
        assert!(pincherle_derivative(&d, &x).unwrap().agrees_on(&id, n - 1));
        assert_eq!(
            pincherle_derivative(&id, &x).unwrap(),
            OperatorMatrix::zero(n)
        );
        let d2 = d.pow(2);
        assert!(pincherle_derivative(&d2, &x)
            .unwrap()
            .agrees_on(&d.scale(&int(2)), n - 1));
    }
}

#[test]
fn inverse_round_trip() {
    let t = translation(&ratio(3, 2), 6);
    let inv = t.inverse().unwrap();
    assert_eq!(inv, translation(&ratio(-3, 2), 6));
    assert_eq!(
        classical_derivative(3).inverse(),
        Err(Error::Singular { n: 0 })
    );
}

#[test]
fn named_operators() {
    let q = dxd_operator(5);
    assert_eq!(q.column(3), &Polynomial::term(int(9), 2));
    let h = hyperbolic_q_operator(5);
    assert_eq!(h.column(3), &Polynomial::term(int(30), 2));
    let delta = forward_difference(4);
    assert_eq!(delta.column(2), &Polynomial::from_ints(&[1, 2]));
}
