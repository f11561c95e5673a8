//! Verification suites over a set of families, producing sorted report entries.

use std::fmt;
use std::str::FromStr;

use num::One;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detect::{detect_psi_form, Detection};
use crate::error::{Error, Result};
use crate::expansion::{expand_in_dual_pair, indicator, reassemble, RaiserMode};
use crate::harness::{self, AppellReading};
use crate::integration::{
    check_divided_difference_series, verify_left_inverse_defect, verify_right_inverse,
    IntegralKind, IntegralOperator,
};
use crate::operator::{
    dual_operator, dxd_operator, hyperbolic_q_operator, jackson_operator, psi_derivative_operator,
};
use crate::poly::{Polynomial, SequenceTable};
use crate::psi::{AdmissibleSequence, Family};
use crate::qcalculus::{self, QHatForm};
use crate::random;
use crate::report::{sort_entries, Check, Kind, ReportEntry};
use crate::scalar::{int, ratio, Scalar};
use crate::sequences::{
    basic_sequence, generating_function_check, is_basic_for, rodrigues_sequence, sample_points,
    sheffer_reconstruction, sheffer_sequence, shift_invariant_constants, verify_binomial_type,
    verify_sheffer_binomial, BasicSequence, ShefferSequence,
};
use crate::series::DeltaSeries;
use crate::spectral::{
    positive_definite, spectral_operator, umbral_operator, verify_umbral_automorphism,
    verify_umbral_derivative, InnerProductContext,
};
use crate::star::{self, StarContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ghw,
    Leibnitz,
    Rodrigues,
    Detect,
    Binomial,
    Sheffer,
    GeneratingFunction,
    Expansion,
    InnerProduct,
    Spectral,
    Umbral,
    Integration,
    QCalculus,
    DualPairs,
    Fibonomial,
    Star,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Ghw,
        Suite::Leibnitz,
        Suite::Rodrigues,
        Suite::Detect,
        Suite::Binomial,
        Suite::Sheffer,
        Suite::GeneratingFunction,
        Suite::Expansion,
        Suite::InnerProduct,
        Suite::Spectral,
        Suite::Umbral,
        Suite::Integration,
        Suite::QCalculus,
        Suite::DualPairs,
        Suite::Fibonomial,
        Suite::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ghw => "ghw",
            Suite::Leibnitz => "leibnitz",
            Suite::Rodrigues => "rodrigues",
            Suite::Detect => "detect",
            Suite::Binomial => "binomial",
            Suite::Sheffer => "sheffer",
            Suite::GeneratingFunction => "generating_function",
            Suite::Expansion => "expansion",
            Suite::InnerProduct => "inner_product",
            Suite::Spectral => "spectral",
            Suite::Umbral => "umbral",
            Suite::Integration => "integration",
            Suite::QCalculus => "q_calculus",
            Suite::DualPairs => "dual_pairs",
            Suite::Fibonomial => "fibonomial",
            Suite::Star => "star",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Adds `delta` to the coefficient of `x^i` in `p_n` of the `partial_psi`-basic sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub n: usize,
    pub i: usize,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub delta: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub families: Vec<Family>,
    pub degree: usize,
    pub seed: u64,
    /// Empty means every suite.
    pub suites: Vec<Suite>,
    pub perturbation: Option<Perturbation>,
}

impl VerifyConfig {
    pub fn new(families: Vec<Family>, degree: usize) -> Self {
        VerifyConfig {
            families,
            degree,
            seed: random::DEFAULT_SEED,
            suites: Vec::new(),
            perturbation: None,
        }
    }

    fn suites(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            self.suites.clone()
        }
    }
}

/// Classical, q = 2, q = 1/2, Fibonacci, hyperbolic and one seeded custom family.
pub fn standard_families(degree: usize, seed: u64) -> Vec<Family> {
    let mut rng = random::rng(seed);
    vec![
        Family::Classical,
        Family::q(int(2)),
        Family::q(ratio(1, 2)),
        Family::Fibonacci,
        Family::Hyperbolic,
        random::custom_family(&mut rng, degree + 1),
    ]
}

pub fn run(config: &VerifyConfig) -> Result<Vec<ReportEntry>> {
    if config.degree < 2 {
        return Err(Error::BadParameter(
            "working degree must be at least 2".into(),
        ));
    }
    let seqs = config
        .families
        .iter()
        .map(|f| AdmissibleSequence::new(f.clone(), config.degree + 1))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, Suite)> = (0..seqs.len())
        .flat_map(|i| config.suites().into_iter().map(move |s| (i, s)))
        .collect();
    let mut entries: Vec<ReportEntry> = jobs
        .par_iter()
        .flat_map_iter(|&(i, suite)| {
            let seed = config
                .seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add((i as u64) << 8 | suite as u64);
            let mut ctx = Ctx {
                suite,
                seq: &seqs[i],
                n: config.degree,
                rng: random::rng(seed),
                out: Vec::new(),
            };
            if let Err(e) = ctx.run(config) {
                ctx.push("error", Kind::Invariant, Check::fail(e.to_string()));
            }
            ctx.out
        })
        .collect();
    if config.suites().contains(&Suite::Fibonomial) {
        entries.push(fibonomial_entry(16));
    }
    if config.suites().contains(&Suite::Detect) {
        entries.extend(detect_example_entries(config.degree));
    }
    if config.suites().contains(&Suite::Leibnitz) {
        let c = harness::check_closing_conversions(config.degree);
        entries.push(ReportEntry::new(
            "leibnitz",
            "any",
            "derivative_difference_conversion",
            config.degree,
            Kind::Invariant,
            c,
        ));
    }
    if config.suites().contains(&Suite::Integration) {
        let c = check_divided_difference_series(config.degree);
        entries.push(ReportEntry::new(
            "integration",
            "any",
            "divided_difference_series",
            config.degree,
            Kind::Invariant,
            c,
        ));
    }
    sort_entries(&mut entries);
    Ok(entries)
}

/// Every Fibonomial coefficient with `n <= max` is an integer.
pub fn check_fibonomial_integrality(max: usize) -> Result<Check> {
    let seq = AdmissibleSequence::new(Family::Fibonacci, max)?;
    for n in 0..=max {
        for k in 0..=n {
            let b = seq.binomial(n, k)?;
            if !b.is_integer() {
                return Ok(Check::fail(format!("({n} over {k}) = {b}")));
            }
        }
    }
    Ok(Check::pass())
}

fn fibonomial_entry(max: usize) -> ReportEntry {
    let check = check_fibonomial_integrality(max).unwrap_or_else(|e| Check::fail(e.to_string()));
    ReportEntry::new(
        "fibonomial",
        "fibonacci",
        "fibonomial_integrality",
        max,
        Kind::Invariant,
        check,
    )
}

/// The three worked examples: `DxD`, `(1/2) DxD - (1/3) D^3` and `2 (2 DxD - D)`.
pub fn check_detect_examples(degree: usize) -> Result<Check> {
    let n = degree;
    let dxd = dxd_operator(n);
    let d3 = crate::operator::classical_derivative(n).pow(3);
    let mixed = &dxd.scale(&ratio(1, 2)) - &d3.scale(&ratio(1, 3));
    let hyper = hyperbolic_q_operator(n);
    let squares: Vec<Scalar> = (1..=n).map(|k| int((k * k) as i64)).collect();
    let halves: Vec<Scalar> = squares.iter().map(|v| v * ratio(1, 2)).collect();
    let hyperbolic: Vec<Scalar> = (1..=n).map(|k| int((2 * k * (2 * k - 1)) as i64)).collect();
    for (label, op, expected, conforming) in [
        ("DxD", dxd, squares, true),
        ("(1/2)DxD - (1/3)D^3", mixed, halves, false),
        ("2(2DxD - D)", hyper, hyperbolic, true),
    ] {
        let d = detect_psi_form(&op)?;
        if d.candidate_values() != expected || d.form().is_some() != conforming {
            return Ok(Check::fail(label));
        }
    }
    Ok(Check::pass())
}

fn detect_example_entries(degree: usize) -> Vec<ReportEntry> {
    let check = check_detect_examples(degree).unwrap_or_else(|e| Check::fail(e.to_string()));
    vec![ReportEntry::new(
        "detect",
        "any",
        "detect_examples",
        degree,
        Kind::Invariant,
        check,
    )]
}

/// Which single-coefficient perturbations of a basic sequence still pass the
/// binomial check, and whether the lone expected survivor `p_N + delta x` is
/// basic for `Q + c partial_psi^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSweep {
    pub undetected: Vec<(usize, usize)>,
    pub witnesses: usize,
    pub survivor_is_basic: bool,
}

impl PerturbationSweep {
    pub fn check(&self, top: usize) -> Check {
        if self.undetected != [(top, 1)] {
            Check::fail(format!("undetected perturbations {:?}", self.undetected))
        } else if !self.survivor_is_basic {
            Check::fail("survivor is not basic for the perturbed operator")
        } else {
            Check::pass()
        }
    }
}

pub fn perturbation_sweep(
    basic: &BasicSequence,
    q_series: &DeltaSeries,
    ys: &[Scalar],
    delta: &Scalar,
) -> Result<PerturbationSweep> {
    let seq = &basic.seq;
    let top = basic.table.working_degree();
    let mut undetected = Vec::new();
    let mut witnesses = 0;
    for n in 0..=top {
        for i in 0..=n {
            let table = perturb(&basic.table, n, i, delta)?;
            let report = verify_binomial_type(&table, seq, ys)?;
            if report.holds() {
                undetected.push((n, i));
            } else if report.counterexample.is_some() {
                witnesses += 1;
            }
        }
    }
    // Q x = q_1 1_psi and partial_psi^N p_N = N_psi! lc(p_N).
    let lc = basic.table[top]
        .leading_coeff()
        .cloned()
        .unwrap_or_else(Scalar::one);
    let q1 = q_series.coeff(1);
    let c = -(delta * q1 * seq.value(1)) / (seq.factorial(top)? * lc);
    let mut coeffs = q_series.with_order(top).coeffs().to_vec();
    coeffs[top] += c;
    let perturbed_op = DeltaSeries::new(coeffs, top).realize_psi(seq, top)?;
    let survivor = perturb(&basic.table, top, 1, delta)?;
    Ok(PerturbationSweep {
        undetected,
        witnesses,
        survivor_is_basic: is_basic_for(&perturbed_op, &survivor, seq),
    })
}

pub fn perturb(table: &SequenceTable, n: usize, i: usize, delta: &Scalar) -> Result<SequenceTable> {
    let mut entries = table.entries().to_vec();
    entries[n] = &entries[n] + &Polynomial::term(delta.clone(), i);
    SequenceTable::new(entries)
}

struct Ctx<'a> {
    suite: Suite,
    seq: &'a AdmissibleSequence,
    n: usize,
    rng: rand_chacha::ChaCha8Rng,
    out: Vec<ReportEntry>,
}

fn q_param(family: &Family) -> Option<Scalar> {
    match family {
        Family::QDeformed { q } => Some(q.clone()),
        _ => None,
    }
}

impl Ctx<'_> {
    fn push(&mut self, id: &str, kind: Kind, check: Check) {
        let label = self.seq.label();
        self.out.push(ReportEntry::new(
            self.suite.name(),
            &label,
            id,
            self.n,
            kind,
            check,
        ));
    }

    fn invariant(&mut self, id: &str, check: Check) {
        self.push(id, Kind::Invariant, check);
    }

    fn finding(&mut self, id: &str, check: Check) {
        self.push(id, Kind::Finding, check);
    }

    fn d_psi(&self) -> DeltaSeries {
        DeltaSeries::t(self.n)
    }

    fn d_plus_square(&self) -> DeltaSeries {
        DeltaSeries::from_ints(&[0, 1, 1], self.n)
    }

    fn basic(&self, q: &DeltaSeries) -> Result<BasicSequence> {
        basic_sequence(&q.realize_psi(self.seq, self.n)?, self.seq)
    }

    /// `(Q, S)` pairs: `(partial_psi, 1 + t)`, `(t + t^2, e^t)` and one random pair.
    fn sheffer_pairs(&mut self) -> Result<Vec<(DeltaSeries, ShefferSequence)>> {
        let n = self.n;
        let random_q = random::delta_series(&mut self.rng, n);
        let random_s = random::invertible_series(&mut self.rng, n);
        [
            (self.d_psi(), DeltaSeries::from_ints(&[1, 1], n)),
            (self.d_plus_square(), DeltaSeries::exp_t(n)),
            (random_q, random_s),
        ]
        .into_iter()
        .map(|(q, s)| Ok((q.clone(), sheffer_sequence(&self.basic(&q)?, &s)?)))
        .collect()
    }

    fn run(&mut self, config: &VerifyConfig) -> Result<()> {
        match self.suite {
            Suite::Ghw => self.ghw(),
            Suite::Leibnitz => self.leibnitz(),
            Suite::Rodrigues => self.rodrigues(),
            Suite::Detect => self.detect(),
            Suite::Binomial => self.binomial(config.perturbation.as_ref()),
            Suite::Sheffer => self.sheffer(),
            Suite::GeneratingFunction => self.generating_function(),
            Suite::Expansion => self.expansion(),
            Suite::InnerProduct => self.inner_product(),
            Suite::Spectral => self.spectral(),
            Suite::Umbral => self.umbral(),
            Suite::Integration => self.integration(),
            Suite::QCalculus => self.q_calculus(),
            Suite::DualPairs => self.dual_pairs(),
            Suite::Fibonomial => Ok(()),
            Suite::Star => self.star(),
        }
    }

    fn ghw(&mut self) -> Result<()> {
        let c = harness::check_ghw(self.seq, self.n)?;
        self.invariant("ghw_relation", c);
        Ok(())
    }

    fn leibnitz(&mut self) -> Result<()> {
        let mut all = Check::pass();
        for a in 0..=4 {
            for b in 0..=4 {
                let c = harness::check_leibnitz(self.seq, self.n, a, b)?;
                if !c.holds {
                    all = Check::fail(format!(
                        "n = {a}, m = {b}: {}",
                        c.witness.unwrap_or_default()
                    ));
                    break;
                }
            }
        }
        self.invariant("leibnitz_rule", all.with_window(self.n.saturating_sub(4)));
        let c = harness::check_exp_commutation(self.seq, self.n, self.n)?;
        self.invariant("exp_commutation", c);

        let mut rule = Check::pass();
        let mut q_rule = Check::pass();
        for _ in 0..3 {
            let df = self.rng.gen_range(0..=self.n / 2);
            let dg = self.rng.gen_range(0..=self.n / 2);
            let f = random::polynomial(&mut self.rng, df);
            let g = random::polynomial(&mut self.rng, dg);
            rule = rule.and(harness::check_psi_leibnitz(self.seq, &f, &g)?);
            if let Some(q) = q_param(self.seq.family()) {
                q_rule = q_rule.and(harness::check_q_leibnitz(self.seq, &q, &f, &g)?);
            }
        }
        self.invariant("psi_leibnitz_rule", rule);
        if q_param(self.seq.family()).is_some() {
            self.invariant("q_leibnitz_rule", q_rule);
        }
        Ok(())
    }

    fn rodrigues(&mut self) -> Result<()> {
        let mut ops = vec![self.d_psi(), self.d_plus_square()];
        for _ in 0..4 {
            ops.push(random::delta_series(&mut self.rng, self.n));
        }
        for (k, q) in ops.iter().enumerate() {
            let basic = self.basic(q)?;
            let tables = rodrigues_sequence(q, self.seq, self.n)?;
            let names = ["transfer", "difference", "raising", "rodrigues"];
            let bad = tables
                .all()
                .iter()
                .zip(names)
                .find(|(t, _)| ***t != basic.table)
                .map(|(_, name)| format!("{name} formula differs for Q = {q}"));
            self.invariant(&format!("rodrigues_formulas#{k}"), Check::from_witness(bad));
        }
        Ok(())
    }

    fn detect(&mut self) -> Result<()> {
        let mut check = Check::pass();
        for _ in 0..20 {
            let mut coeffs = random::delta_series(&mut self.rng, self.n)
                .coeffs()
                .to_vec();
            coeffs[1] = Scalar::one();
            let series = DeltaSeries::new(coeffs, self.n);
            let op = series.realize_psi(self.seq, self.n)?;
            let recovered = match detect_psi_form(&op)? {
                Detection::Conforming(form) => form,
                Detection::NotPsiForm(v) => {
                    check = Check::fail(format!("rejected at ({}, {})", v.n, v.k));
                    break;
                }
            };
            let values_match = recovered.seq.values()[1..] == self.seq.values()[1..=self.n];
            if !values_match || recovered.series.coeffs() != series.coeffs() {
                check = Check::fail(format!("series {series} not recovered"));
                break;
            }
        }
        self.invariant("detect_round_trip", check);
        Ok(())
    }

    fn binomial(&mut self, perturbation: Option<&Perturbation>) -> Result<()> {
        let ys = sample_points(10);
        let mut ops = vec![self.d_psi(), self.d_plus_square()];
        for _ in 0..2 {
            ops.push(random::delta_series(&mut self.rng, self.n));
        }
        for (k, q) in ops.iter().enumerate() {
            let basic = self.basic(q)?;
            let r = verify_binomial_type(&basic.table, self.seq, &ys)?;
            let c = Check::from_witness(r.counterexample.map(|(n, w)| format!("n = {n}: {w}")));
            self.invariant(&format!("binomial_type#{k}"), c);
        }
        let top = self.n.min(8);
        let q = self.d_plus_square().with_order(top);
        let basic = basic_sequence(&q.realize_psi(self.seq, top)?, self.seq)?;
        let sweep = perturbation_sweep(&basic, &q, &ys, &Scalar::one())?;
        self.invariant("perturbations_detected", sweep.check(top));

        if let Some(p) = perturbation {
            let basic = self.basic(&self.d_psi())?;
            if p.n > self.n || p.i > p.n {
                return Err(Error::IndexOrder { n: p.n, k: p.i });
            }
            let table = perturb(&basic.table, p.n, p.i, &p.delta)?;
            let r = verify_binomial_type(&table, self.seq, &ys)?;
            let c = Check::from_witness(r.counterexample.map(|(n, w)| format!("n = {n}: {w}")));
            self.invariant("binomial_type_perturbed", c);
        }
        Ok(())
    }

    fn sheffer(&mut self) -> Result<()> {
        let ys = sample_points(10);
        for k in 0..4 {
            let q = random::delta_series(&mut self.rng, self.n);
            let s = random::invertible_series(&mut self.rng, self.n);
            let basic = self.basic(&q)?;
            let sh = sheffer_sequence(&basic, &s)?;
            let s0_ok = sh.table[0].degree() == Some(0);
            let reconstructed = sheffer_reconstruction(&sh);
            let s_inv = s.multiplicative_inverse()?.realize_psi(self.seq, self.n)?;
            let construction = if !s0_ok {
                Check::fail("s_0 is not a nonzero constant")
            } else if reconstructed != s_inv {
                Check::fail(format!("reconstruction of S^-1 differs for S = {s}"))
            } else {
                Check::pass()
            };
            self.invariant(&format!("sheffer_construction#{k}"), construction);
            let r = verify_sheffer_binomial(&sh, &ys)?;
            let c = Check::from_witness(r.counterexample.map(|(n, w)| format!("n = {n}: {w}")));
            self.invariant(&format!("sheffer_binomial#{k}"), c);
        }

        let sh = sheffer_sequence(
            &self.basic(&self.d_plus_square())?,
            &DeltaSeries::from_ints(&[1, 1], self.n),
        )?;
        let a = psi_derivative_operator(self.seq, self.n)?.pow(2);
        let conv = shift_invariant_constants(&sh, &a)?;
        let psi = if conv.psi.is_some() {
            Check::pass()
        } else {
            Check::fail("no constants")
        };
        let plain = if conv.plain.is_some() {
            Check::pass()
        } else {
            Check::fail("no constants")
        };
        self.invariant("shift_invariant_expansion", psi);
        self.finding("shift_invariant_expansion_plain_binomial", plain);
        Ok(())
    }

    fn generating_function(&mut self) -> Result<()> {
        let n = self.n;
        let random_q = random::delta_series(&mut self.rng, n);
        let random_s = random::invertible_series(&mut self.rng, n);
        let pairs = [
            (self.d_psi(), DeltaSeries::from_ints(&[1, 1], n)),
            (self.d_plus_square(), DeltaSeries::from_ints(&[2, -1, 1], n)),
            (random_q, random_s),
        ];
        for (k, (q, s)) in pairs.into_iter().enumerate() {
            let sh = sheffer_sequence(&self.basic(&q)?, &s)?;
            let r = generating_function_check(&sh, &q, 8)?;
            let window = 8.min(n);
            let ok = |holds: bool| {
                if holds {
                    Check::pass_on(window)
                } else {
                    Check::fail(format!("Q = {q}, S = {s}"))
                }
            };
            self.invariant(&format!("generating_function#{k}"), ok(r.reciprocal_holds));
            self.finding(
                &format!("generating_function_literal#{k}"),
                ok(r.literal_holds),
            );
        }
        Ok(())
    }

    fn expansion(&mut self) -> Result<()> {
        let q_plain = self.d_psi().realize_psi(self.seq, self.n)?;
        let q_square = self.d_plus_square().realize_psi(self.seq, self.n)?;
        for k in 0..10 {
            let t = random::triangular_operator(&mut self.rng, self.n);
            let q = if k % 2 == 0 { &q_plain } else { &q_square };
            let mut check = Check::pass();
            for mode in [RaiserMode::Multiplication, RaiserMode::Dual(self.seq)] {
                let coeffs = expand_in_dual_pair(&t, q, mode)?;
                if reassemble(&coeffs, q, mode)? != t {
                    check = Check::fail(format!("{mode:?} reassembly differs"));
                }
            }
            self.invariant(&format!("expansion#{k}"), check);
            let ind = indicator(&t, q, 8)?;
            let c = if ind.conjugation_holds() {
                Check::pass()
            } else {
                Check::fail("indicator conjugation differs")
            };
            self.invariant(&format!("indicator#{k}"), c);
        }
        Ok(())
    }

    fn inner_product(&mut self) -> Result<()> {
        for (k, (_, sh)) in self.sheffer_pairs()?.into_iter().enumerate() {
            let ctx = InnerProductContext::new(&sh)?;
            self.invariant(&format!("orthogonality#{k}"), ctx.check_orthogonality()?);
            if self.seq.all_positive() {
                let gram = ctx.gram_in_monomial_basis()?;
                self.invariant(&format!("positivity#{k}"), positive_definite(&gram));
            }
        }
        Ok(())
    }

    fn spectral(&mut self) -> Result<()> {
        for (k, (_, sh)) in self.sheffer_pairs()?.into_iter().enumerate() {
            let a = spectral_operator(&sh)?;
            self.invariant(
                &format!("spectral_eigen#{k}"),
                a.check_eigen(&sh, self.n.min(10)),
            );
            let c = if a.agreeing_routes().is_empty() {
                Check::fail(format!(
                    "no reading reproduces the operator for S = {}",
                    sh.s
                ))
            } else {
                Check::pass()
            };
            self.finding(&format!("spectral_formula#{k}"), c);
        }
        Ok(())
    }

    fn umbral(&mut self) -> Result<()> {
        let n = self.n;
        let source = self.basic(&self.d_psi())?;
        let target_q = random::delta_series(&mut self.rng, n);
        let target = self.basic(&target_q)?;
        let t = umbral_operator(&source, &target)?;
        let s = random::invertible_series(&mut self.rng, n);
        let l = random::delta_series(&mut self.rng, n);
        let sh = sheffer_sequence(&source, &s)?;
        let r = verify_umbral_automorphism(&t, &s, &l, &sh)?;
        self.invariant("umbral_automorphism", r.automorphism);
        self.invariant("umbral_lowering", r.lowering);
        self.invariant("umbral_series_image", r.series_image);
        self.invariant("umbral_sheffer_image", r.sheffer_image);

        let basic = self.basic(&self.d_psi())?;
        let d = verify_umbral_derivative(&basic, &self.d_plus_square())?;
        let c = match d.window {
            Some(w) if w + 1 >= n => Check::pass_on(w),
            Some(w) => Check::fail(format!("agrees on degrees <= {w}")).with_window(w),
            None => Check::fail("differs on constants"),
        };
        self.finding("umbral_derivative", c);
        Ok(())
    }

    fn integration(&mut self) -> Result<()> {
        let n = self.n;
        let psi = IntegralOperator::new(IntegralKind::Psi(self.seq.clone()), n)?;
        let d = psi_derivative_operator(self.seq, n)?;
        self.invariant("psi_right_inverse", verify_right_inverse(&psi, &d)?);
        self.invariant(
            "psi_left_inverse_defect",
            verify_left_inverse_defect(self.seq, n)?,
        );
        let mut kinds = vec![psi];
        match self.seq.family() {
            Family::QDeformed { q } => {
                let op = IntegralOperator::new(IntegralKind::Q { q: q.clone() }, n)?;
                self.invariant(
                    "q_right_inverse",
                    verify_right_inverse(&op, &jackson_operator(q, n)?)?,
                );
                kinds.push(op);
            }
            Family::RSeries { r, q } => {
                let op = IntegralOperator::new(
                    IntegralKind::R {
                        r: r.clone(),
                        q: q.clone(),
                    },
                    n,
                )?;
                self.invariant("r_right_inverse", verify_right_inverse(&op, &d)?);
                kinds.push(op);
            }
            _ => {}
        }
        let mut forms = Check::pass();
        for op in &kinds {
            let m = op.matrix()?;
            if op.operator_form()?.first_difference(&m, n - 1).is_some()
                || op.differencer_operator_form()? != op.differencer()?
            {
                forms = Check::fail(format!("{:?}", op.kind));
            }
        }
        self.invariant("operator_forms", forms.with_window(n - 1));
        Ok(())
    }

    fn q_calculus(&mut self) -> Result<()> {
        let plain = self.basic(&self.d_psi())?;
        let square = self.basic(&self.d_plus_square())?;
        let c = qcalculus::check_mutator(&plain, QHatForm::Normalized)?
            .and(qcalculus::check_mutator(&square, QHatForm::Normalized)?);
        self.invariant("qhat_mutator", c);
        self.finding(
            "qhat_mutator_literal",
            qcalculus::check_mutator(&plain, QHatForm::Literal)?,
        );
        self.finding(
            "qhat_mutator_dual",
            qcalculus::check_mutator_with_dual(&plain)?,
        );
        if q_param(self.seq.family()).is_none() {
            return Ok(());
        }
        self.finding("qhat_powers", qcalculus::check_qhat_powers(&plain)?);
        let ys = sample_points(10);
        let mut commutation = Check::pass();
        let mut binomial = Check::pass();
        let mut sheffer = Check::pass();
        let sh = sheffer_sequence(&square, &DeltaSeries::from_ints(&[1, 2], self.n))?;
        for y in &ys {
            commutation = commutation.and(qcalculus::check_q_commutation(self.seq, y, self.n)?);
            binomial = binomial.and(qcalculus::qplane_identification(
                self.seq,
                &square.table,
                &square.table,
                y,
            )?);
            sheffer = sheffer.and(qcalculus::qplane_identification(
                self.seq,
                &sh.table,
                &square.table,
                y,
            )?);
        }
        self.invariant("q_commutation", commutation);
        self.invariant("q_plane_binomial", binomial);
        self.invariant("q_plane_sheffer", sheffer);
        Ok(())
    }

    fn dual_pairs(&mut self) -> Result<()> {
        let n = self.n;
        let fs = [
            Polynomial::monomial(2),
            Polynomial::from_ints(&[1, 1]),
            Polynomial::from_ints(&[2, -1, 3]),
        ];
        let mut powers = Check::pass();
        let mut falling = Check::pass();
        let mut psi_falling = Check::pass();
        let mut appell = Vec::new();
        for q_series in [self.d_psi(), self.d_plus_square()] {
            let basic = self.basic(&q_series)?;
            let q = &basic.operator;
            let x = dual_operator(q, &basic.table, self.seq)?;
            let shifted = sheffer_sequence(&basic, &DeltaSeries::from_ints(&[1, 1], n))?;
            for k in 1..=3 {
                powers = powers.and(harness::check_dual_powers(q, &x, k));
                for f in &fs {
                    falling = falling.and(harness::check_falling_identity(q, &x, k, f, None)?);
                    psi_falling = psi_falling.and(harness::check_falling_identity(
                        q,
                        &x,
                        k,
                        f,
                        Some(self.seq),
                    )?);
                }
            }
            for table in [&basic.table, &shifted.table] {
                let mut summed = Check::pass();
                let mut termwise = Check::pass();
                for k in 1..=3 {
                    summed = summed.and(harness::check_appell_identity(
                        q,
                        &x,
                        self.seq,
                        table,
                        k,
                        AppellReading::Summed,
                    )?);
                    termwise = termwise.and(harness::check_appell_identity(
                        q,
                        &x,
                        self.seq,
                        table,
                        k,
                        AppellReading::Termwise,
                    )?);
                }
                appell.push((summed, termwise));
            }
        }
        self.invariant("dual_pair_powers", powers);
        self.invariant("dual_pair_falling", falling);
        if self.seq.is_classical() {
            self.invariant("dual_pair_psi_falling", psi_falling);
        } else {
            self.finding("dual_pair_psi_falling", psi_falling);
        }
        // #0: Q = partial_psi with its basic sequence, #1: with s_n = (1 + t)^{-1} x^n,
        // #2 and #3: the same for Q = t + t^2.
        for (k, (summed, termwise)) in appell.into_iter().enumerate() {
            self.finding(&format!("appell_sum_identity#{k}"), summed);
            self.finding(&format!("appell_termwise_identity#{k}"), termwise);
        }
        self.finding(
            "even_unit_powers",
            harness::check_even_unit_powers(self.seq, n)?,
        );
        Ok(())
    }

    fn star(&mut self) -> Result<()> {
        let n = self.n;
        let ctx = StarContext::new(self.seq, n)?;
        let half = ratio(1, 2);
        let one = Scalar::one();
        self.invariant("star_power_rule", star::check_power_rule(&ctx)?);
        self.invariant(
            "star_exp_representation",
            star::check_exp_representation(&ctx, &half)?,
        );
        self.invariant(
            "star_exp_addition",
            star::check_exp_addition(&ctx, &one, &half)?,
        );
        self.finding(
            "star_exp_addition_literal",
            star::check_exp_addition_literal(&ctx, &one, &half)?,
        );
        let mut product = Check::pass();
        let mut substitution = Check::pass();
        let mut scalar = Check::pass();
        for _ in 0..3 {
            let df = self.rng.gen_range(0..=n / 2);
            let dg = self.rng.gen_range(0..=n - df);
            let f = random::polynomial(&mut self.rng, df);
            let g = random::polynomial(&mut self.rng, dg);
            product = product.and(star::check_product_rule(&ctx, &f, &g)?);
            substitution = substitution.and(star::check_substitution(&ctx, &f, &g)?);
            let alpha = random::nonzero_scalar(&mut self.rng);
            scalar = scalar.and(star::check_scalar_rules(&ctx, &alpha, &g)?);
        }
        self.invariant("star_product_rule", product);
        self.invariant("star_substitution", substitution);
        self.invariant("star_scalar_rules", scalar);
        let f = random::polynomial(&mut self.rng, n / 2);
        self.invariant(
            "star_pincherle_derivation",
            star::check_pincherle_derivation(&ctx, &f)?,
        );
        let mut products = Check::pass();
        for a in 0..=n / 2 {
            for b in 0..=n - a {
                products = products.and(star::check_power_products(&ctx, a, b)?.0);
            }
        }
        self.invariant("star_power_products", products);
        let mut system = Check::pass();
        let mut op_form = Check::pass();
        let mut literal = Check::pass();
        for lambda in [Scalar::one(), half.clone()] {
            system = system.and(star::check_poisson_system(&ctx, &lambda, 4)?);
            op_form = op_form.and(star::check_poisson_operator_form(&ctx, &lambda, 4, false)?);
            literal = literal.and(star::check_poisson_operator_form(&ctx, &lambda, 4, true)?);
        }
        self.invariant("poisson_system", system);
        self.invariant("poisson_operator_form", op_form);
        self.finding("poisson_operator_form_literal", literal);
        Ok(())
    }
}
