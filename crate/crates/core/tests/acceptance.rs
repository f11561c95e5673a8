//! Acceptance criteria over the standard families at N = 12.
//! Prints one line per criterion; exits non-zero on an unexplained failure.

use std::process::ExitCode;
use std::time::Instant;

use num::{One, Signed};
use umbral_core::psi::AdmissibleSequence;
use umbral_core::random::DEFAULT_SEED;
use umbral_core::report::{Kind, ReportEntry};
use umbral_core::scalar::Scalar;
use umbral_core::sequences::{basic_sequence, sample_points};
use umbral_core::series::DeltaSeries;
use umbral_core::verify::{perturbation_sweep, run, standard_families, VerifyConfig};

const N: usize = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Every invariant entry of `suite` whose id starts with `id` holds, and the
/// invariant is present on at least `families` families. A count of zero
/// marks an id that only carries findings.
fn criterion(entries: &[ReportEntry], suite: &str, ids: &[(&str, usize)]) -> Outcome {
    let mut checked = 0;
    let mut findings = 0;
    for &(id, families) in ids {
        let matching: Vec<&ReportEntry> = entries
            .iter()
            .filter(|e| e.suite == suite && e.identity_id.starts_with(id))
            .collect();
        if matching.is_empty() {
            return Outcome {
                pass: false,
                detail: format!("{id}: no entries"),
            };
        }
        let invariants: Vec<&&ReportEntry> = matching
            .iter()
            .filter(|e| e.kind == Kind::Invariant)
            .collect();
        findings += matching.len() - invariants.len();
        if let Some(bad) = invariants.iter().find(|e| !e.acceptable()) {
            return Outcome {
                pass: false,
                detail: bad.text_line(),
            };
        }
        let mut fams: Vec<&str> = invariants.iter().map(|e| e.family.as_str()).collect();
        fams.dedup();
        if fams.len() < families {
            return Outcome {
                pass: false,
                detail: format!("{id}: {} of {families} families covered", fams.len()),
            };
        }
        checked += invariants.len();
    }
    let mut detail = format!("{checked} exact checks");
    if findings > 0 {
        detail.push_str(&format!(", {findings} findings reported"));
    }
    Outcome { pass: true, detail }
}

/// Every single-coefficient perturbation of the basic sequence of
/// `Q = partial_psi + partial_psi^2` at N = 8, against 10 values of y.
fn perturbations(families: &[umbral_core::psi::Family]) -> (Outcome, bool) {
    let top = 8;
    let ys = sample_points(10);
    let q = DeltaSeries::new(
        vec![Scalar::from_integer(0.into()), Scalar::one(), Scalar::one()],
        top,
    );
    let mut survivors = Vec::new();
    let mut explained = true;
    for f in families {
        let seq = AdmissibleSequence::new(f.clone(), top + 1).expect("family");
        let op = q.realize_psi(&seq, top).expect("operator");
        let basic = basic_sequence(&op, &seq).expect("basic sequence");
        let sweep = perturbation_sweep(&basic, &q, &ys, &Scalar::one()).expect("sweep");
        explained &= sweep.check(top).holds;
        if !sweep.undetected.is_empty() {
            survivors.push(format!("{f}: {:?}", sweep.undetected));
        }
    }
    let outcome = if survivors.is_empty() {
        Outcome {
            pass: true,
            detail: "every perturbation detected".into(),
        }
    } else {
        Outcome {
            pass: false,
            detail: format!(
                "undetected {}; p_8 + x is basic for Q + c partial_psi^8",
                survivors.join(", ")
            ),
        }
    };
    (outcome, explained)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let families = standard_families(N, DEFAULT_SEED);
    let k = families.len();
    let entries = run(&VerifyConfig::new(families.clone(), N)).expect("verification run");

    let positive = families
        .iter()
        .filter(|f| {
            let seq = AdmissibleSequence::new((*f).clone(), N).expect("family");
            seq.values()[1..].iter().all(|v| v.is_positive())
        })
        .count();
    let c = |suite: &str, ids: &[(&str, usize)]| criterion(&entries, suite, ids);

    let mut rows: Vec<(usize, &str, Outcome)> = vec![
        (1, "GHW relation", c("ghw", &[("ghw_relation", k)])),
        (
            2,
            "psi-Leibnitz rule and exponential commutation",
            c("leibnitz", &[("leibnitz_rule", k), ("exp_commutation", k)]),
        ),
        (
            3,
            "four formulas for basic sequences",
            c("rodrigues", &[("rodrigues_formulas", k)]),
        ),
        (
            4,
            "psi-form detection",
            c(
                "detect",
                &[("detect_round_trip", k), ("detect_examples", 1)],
            ),
        ),
    ];
    let (perturbed, explained) = perturbations(&families);
    let binomial = c("binomial", &[("binomial_type#", k)]);
    rows.push((
        5,
        "binomial type and perturbation detection",
        if binomial.pass { perturbed } else { binomial },
    ));
    rows.extend([
        (
            6,
            "Sheffer construction, reconstruction and binomial identity",
            c(
                "sheffer",
                &[("sheffer_construction", k), ("sheffer_binomial", k)],
            ),
        ),
        (
            7,
            "generating functions",
            c("generating_function", &[("generating_function", k)]),
        ),
        (
            8,
            "expansion and indicator",
            c("expansion", &[("expansion#", k), ("indicator#", k)]),
        ),
        (
            9,
            "orthogonality and Gram positivity",
            c(
                "inner_product",
                &[("orthogonality", k), ("positivity", positive)],
            ),
        ),
        (
            10,
            "spectral eigen-relation",
            c(
                "spectral",
                &[("spectral_eigen", k), ("spectral_formula", 0)],
            ),
        ),
        (
            11,
            "right inverses and divided-difference series",
            c(
                "integration",
                &[
                    ("psi_right_inverse", k),
                    ("operator_forms", k),
                    ("divided_difference_series", 1),
                ],
            ),
        ),
        (12, "q-mutator, q-plane and dual pairs", {
            let q = c(
                "q_calculus",
                &[
                    ("qhat_mutator", k),
                    ("q_commutation", 2),
                    ("q_plane", 2),
                    ("qhat_powers", 0),
                ],
            );
            let d = c(
                "dual_pairs",
                &[
                    ("dual_pair_powers", k),
                    ("dual_pair_falling", k),
                    ("appell", 0),
                    ("even_unit_powers", 0),
                ],
            );
            match (q.pass, d.pass) {
                (false, _) => q,
                (_, false) => d,
                _ => Outcome {
                    pass: true,
                    detail: format!("{}; {}", q.detail, d.detail),
                },
            }
        }),
        (
            13,
            "Fibonomial integrality",
            c("fibonomial", &[("fibonomial_integrality", 1)]),
        ),
        (
            14,
            "star calculus and Poisson system",
            c("star", &[("star_", k), ("poisson_", k)]),
        ),
    ]);

    let mut unexplained = 0;
    for (n, name, o) in &rows {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {tag} {name}: {}", o.detail);
        if !o.pass && !(*n == 5 && explained) {
            unexplained += 1;
        }
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if unexplained == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
