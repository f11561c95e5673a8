use num::Zero;
use umbral_core::harness::*;
use umbral_core::operator::{classical_derivative, psi_derivative_operator};
use umbral_core::operator::{dual_operator, multiplication_x};
use umbral_core::poly::{Polynomial, SequenceTable};
use umbral_core::psi::AdmissibleSequence;
use umbral_core::psi::Family;
use umbral_core::scalar::int;
use umbral_core::sequences::basic_sequence;

fn seq(f: Family, n: usize) -> AdmissibleSequence {
    AdmissibleSequence::new(f, n + 1).unwrap()
}

#[test]
fn ghw_and_leibnitz() {
    for f in [
        Family::Classical,
        Family::q(int(2)),
        Family::Fibonacci,
        Family::Hyperbolic,
    ] {
        let s = seq(f, 8);
        assert!(check_ghw(&s, 8).unwrap().holds);
        assert!(check_leibnitz(&s, 8, 3, 2).unwrap().holds);
        assert!(check_exp_commutation(&s, 8, 8).unwrap().holds);
    }
}

#[test]
fn leibnitz_rules() {
    let s = seq(Family::q(int(3)), 8);
    let f = Polynomial::from_ints(&[1, 2, 0, -1]);
    let g = Polynomial::from_ints(&[3, 0, 5]);
    assert!(check_q_leibnitz(&s, &int(3), &f, &g).unwrap().holds);
    assert!(check_psi_leibnitz(&s, &f, &g).unwrap().holds);
    assert!(!check_q_leibnitz(&s, &int(2), &f, &g).unwrap().holds);
    assert!(
        check_psi_leibnitz(&seq(Family::Hyperbolic, 8), &f, &g)
            .unwrap()
            .holds
    );
}

#[test]
fn closing_conversions() {
    assert!(check_closing_conversions(10).holds);
}

#[test]
fn dual_pair_identities_classical() {
    let n = 10;
    let d = classical_derivative(n);
    let x = multiplication_x(n);
    assert!(check_dual_powers(&d, &x, 2).holds);
    let x2 = Polynomial::monomial(2);
    assert!(check_falling_identity(&d, &x, 1, &x2, None).unwrap().holds);
    let cl = AdmissibleSequence::classical(n + 1);
    assert!(
        check_falling_identity(&d, &x, 3, &x2, Some(&cl))
            .unwrap()
            .holds
    );
    // Hockey stick: sum_{m<=n} C(k+m, m) = C(k+n+1, n).
    let table = SequenceTable::monomials(n);
    assert!(
        check_appell_identity(&d, &x, &cl, &table, 2, AppellReading::Summed)
            .unwrap()
            .holds
    );
    assert!(
        !check_appell_identity(&d, &x, &cl, &table, 2, AppellReading::Termwise)
            .unwrap()
            .holds
    );
}

#[test]
fn psi_falling_form_differs_for_q() {
    let n = 8;
    let s = seq(Family::q(int(2)), n);
    let d = psi_derivative_operator(&s, n).unwrap();
    let b = basic_sequence(&d, &s).unwrap();
    let x = dual_operator(&d, &b.table, &s).unwrap();
    let f = Polynomial::from_ints(&[1, 1]);
    assert!(check_falling_identity(&d, &x, 3, &f, None).unwrap().holds);
    assert!(
        !check_falling_identity(&d, &x, 3, &f, Some(&s))
            .unwrap()
            .holds
    );
    assert!(check_dual_powers(&d, &x, 3).holds);
}

#[test]
fn unit_powers() {
    let cl = AdmissibleSequence::classical(8);
    let v = psi_unit_powers(&cl, 6).unwrap();
    assert!(v[1..].iter().all(|x| x.is_zero()));
    // Gauss: sum_k (-1)^k binom_q(2, k) = 1 - q.
    let q = seq(Family::q(int(2)), 4);
    assert_eq!(psi_unit_powers(&q, 2).unwrap()[2], int(-1));
    assert!(!check_even_unit_powers(&q, 4).unwrap().holds);
}
