use umbral_core::error::Error;
use umbral_core::operator::{
    classical_derivative, forward_difference, psi_derivative_operator, translation,
};
use umbral_core::poly::{Polynomial, SequenceTable};
use umbral_core::psi::AdmissibleSequence;
use umbral_core::psi::Family;
use umbral_core::scalar::ratio;
use umbral_core::scalar::{int, one};
use umbral_core::sequences::*;
use umbral_core::series::DeltaSeries;

fn falling(n: usize) -> Vec<Polynomial> {
    (0..=n)
        .map(|k| {
            (0..k).fold(Polynomial::one(), |acc, i| {
                acc.multiply(&Polynomial::from_ints(&[-(i as i64), 1]))
            })
        })
        .collect()
}

fn q2(n: usize) -> AdmissibleSequence {
    AdmissibleSequence::new(Family::q(int(2)), n).unwrap()
}

#[test]
fn basic_sequence_examples() {
    let cl = AdmissibleSequence::classical(7);
    let b = basic_sequence(&psi_derivative_operator(&q2(6), 6).unwrap(), &q2(6)).unwrap();
    assert_eq!(b.table, SequenceTable::monomials(6));
    let b = basic_sequence(&forward_difference(6), &cl).unwrap();
    assert_eq!(b.table.entries(), &falling(6)[..]);
    // D - D^2 against the Rodrigues closed forms.
    let d = classical_derivative(6);
    let q = &d - &d.pow(2);
    let b = basic_sequence(&q, &cl).unwrap();
    let r = rodrigues_sequence(&DeltaSeries::from_ints(&[0, 1, -1], 6), &cl, 6).unwrap();
    assert!(r.agree());
    assert_eq!(r.rodrigues, b.table);
}

#[test]
fn rodrigues_examples() {
    let cl = AdmissibleSequence::classical(9);
    let r = rodrigues_sequence(&DeltaSeries::t(8), &cl, 8).unwrap();
    assert!(r.agree());
    assert_eq!(r.transfer, SequenceTable::monomials(8));
    let q = DeltaSeries::from_ints(&[0, 1, 1], 8);
    let r = rodrigues_sequence(&q, &cl, 8).unwrap();
    assert!(r.agree());

    let seq = q2(7);
    let r = rodrigues_sequence(&q, &seq, 6).unwrap();
    assert!(r.agree());
    let qm = q.realize_psi(&seq, 6).unwrap();
    assert_eq!(basic_sequence(&qm, &seq).unwrap().table, r.raising);
    assert_eq!(
        rodrigues_sequence(&DeltaSeries::from_ints(&[1, 1], 4), &seq, 4),
        Err(Error::NotDelta)
    );
}

#[test]
fn sheffer_examples() {
    let n = 6;
    let cl = AdmissibleSequence::classical(n);
    let basic = basic_sequence(&classical_derivative(n), &cl).unwrap();
    let same = sheffer_sequence(&basic, &DeltaSeries::one(n)).unwrap();
    assert_eq!(same.table, basic.table);

    let shifted = sheffer_sequence(&basic, &DeltaSeries::exp_t(n)).unwrap();
    let x_minus_1 = Polynomial::from_ints(&[-1, 1]);
    for k in 0..=n {
        assert_eq!(shifted.table[k], x_minus_1.pow(k));
    }
    let inv = translation(&-one(), n);
    assert_eq!(sheffer_reconstruction(&shifted), inv);
    assert_eq!(
        sheffer_sequence(&basic, &DeltaSeries::t(n)),
        Err(Error::NotInvertible)
    );
}

#[test]
fn binomial_type_examples() {
    let n = 6;
    let ys = sample_points(n + 2);
    let cl = AdmissibleSequence::classical(n);
    assert!(
        verify_binomial_type(&SequenceTable::monomials(n), &q2(n), &ys)
            .unwrap()
            .holds()
    );
    let ff = SequenceTable::new(falling(n)).unwrap();
    assert!(verify_binomial_type(&ff, &cl, &ys).unwrap().holds());
    let mono = SequenceTable::monomials(n);
    let report = verify_binomial_mixed(&mono, &cl, &q2(n), &ys).unwrap();
    assert_eq!(report.counterexample, Some((2, "1".to_string())));
    assert!(!verify_binomial_type(&ff, &q2(n), &ys).unwrap().holds());
}

#[test]
fn sheffer_binomial_examples() {
    let n = 8;
    let ys = sample_points(n + 2);
    let cl = AdmissibleSequence::classical(n);
    let basic = basic_sequence(&classical_derivative(n), &cl).unwrap();
    let sh = sheffer_sequence(&basic, &DeltaSeries::exp_t(n)).unwrap();
    assert!(verify_sheffer_binomial(&sh, &ys).unwrap().holds());

    let seq = q2(n);
    let basic = basic_sequence(&psi_derivative_operator(&seq, n).unwrap(), &seq).unwrap();
    let s = DeltaSeries::from_ints(&[1, 1], n);
    let sh = sheffer_sequence(&basic, &s).unwrap();
    assert!(verify_sheffer_binomial(&sh, &ys).unwrap().holds());
}

#[test]
fn generating_function_examples() {
    let n = 6;
    let cl = AdmissibleSequence::classical(n);
    let q = DeltaSeries::from_ints(&[0, 1, 1], n);
    let basic = basic_sequence(&q.realize_psi(&cl, n).unwrap(), &cl).unwrap();
    let sh = sheffer_sequence(&basic, &DeltaSeries::one(n)).unwrap();
    let r = generating_function_check(&sh, &q, 6).unwrap();
    assert!(r.reciprocal_holds && r.literal_holds);

    let seq = q2(n);
    let q = DeltaSeries::t(n);
    let basic = basic_sequence(&q.realize_psi(&seq, n).unwrap(), &seq).unwrap();
    let sh = sheffer_sequence(&basic, &DeltaSeries::from_ints(&[1, 1], n)).unwrap();
    let r = generating_function_check(&sh, &q, 6).unwrap();
    assert!(r.reciprocal_holds);
    assert!(!r.literal_holds);
}

#[test]
fn eigenfunction_examples() {
    let n = 6;
    let seq = q2(n);
    let d = psi_derivative_operator(&seq, n).unwrap();
    assert_eq!(
        eigenfunction_series(&d, n).unwrap(),
        EigenSeries::Exponential(seq.values()[1..].to_vec())
    );
    let cl = AdmissibleSequence::classical(n);
    let e = eigenfunction_series(&classical_derivative(n), n).unwrap();
    assert_eq!(e, EigenSeries::Exponential(cl.values()[1..].to_vec()));
    // (1 + lambda)^x = sum lambda^n x^(n) / n!
    let EigenSeries::Table(phi) = eigenfunction_series(&forward_difference(n), n).unwrap() else {
        panic!("expected a table");
    };
    for (k, p) in falling(n).iter().enumerate() {
        assert_eq!(phi[k], p.scale(&umbral_core::scalar::factorial(k).recip()));
    }
}

#[test]
fn shift_invariant_constant_conventions() {
    let n = 6;
    let cl = AdmissibleSequence::classical(n);
    let d = classical_derivative(n);
    let basic = basic_sequence(&d, &cl).unwrap();
    let sh = sheffer_sequence(&basic, &DeltaSeries::one(n)).unwrap();
    let r = shift_invariant_constants(&sh, &d).unwrap();
    let expected: Vec<String> = (0..=n)
        .map(|k| if k == 1 { "1" } else { "0" }.into())
        .collect();
    assert_eq!(r.psi.as_ref(), Some(&expected));
    assert_eq!(r.plain.as_ref(), Some(&expected));

    let seq = q2(n);
    let dq = psi_derivative_operator(&seq, n).unwrap();
    let basic = basic_sequence(&dq, &seq).unwrap();
    let sh = sheffer_sequence(&basic, &DeltaSeries::one(n)).unwrap();
    let r = shift_invariant_constants(&sh, &dq.pow(2)).unwrap();
    let mut psi_expected = vec!["0".to_string(); n + 1];
    psi_expected[2] = ratio(3, 1).to_string();
    assert_eq!(r.psi, Some(psi_expected));
    assert_eq!(r.plain, None);
}
