//! Seeded sampling of scalars, polynomials, series, operators and families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::operator::OperatorMatrix;
use crate::poly::Polynomial;
use crate::psi::{AdmissibleSequence, Family};
use crate::scalar::{ratio, zero, Scalar};
use crate::series::DeltaSeries;

pub const DEFAULT_SEED: u64 = 20_240_607;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `[-5, 5] \ {0}`, denominator in `[1, 4]`.
pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    let mut num = rng.gen_range(-5i64..=4);
    if num >= 0 {
        num += 1;
    }
    ratio(num, rng.gen_range(1..=4))
}

/// Zero with probability one third.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    if rng.gen_range(0..3) == 0 {
        zero()
    } else {
        nonzero_scalar(rng)
    }
}

/// Exact degree `degree`.
pub fn polynomial(rng: &mut impl Rng, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Scalar> = (0..degree).map(|_| scalar(rng)).collect();
    coeffs.push(nonzero_scalar(rng));
    Polynomial::new(coeffs)
}

/// Zero constant term, nonzero linear term; at most `nonzero` higher coefficients.
pub fn delta_series(rng: &mut impl Rng, order: usize) -> DeltaSeries {
    let mut c = vec![zero(), nonzero_scalar(rng)];
    for _ in 2..=order.min(4) {
        c.push(scalar(rng));
    }
    DeltaSeries::new(c, order)
}

pub fn invertible_series(rng: &mut impl Rng, order: usize) -> DeltaSeries {
    let mut c = vec![nonzero_scalar(rng)];
    for _ in 1..=order.min(3) {
        c.push(scalar(rng));
    }
    DeltaSeries::new(c, order)
}

/// Column `j` has degree at most `j`.
pub fn triangular_operator(rng: &mut impl Rng, degree: usize) -> OperatorMatrix {
    OperatorMatrix::from_fn(degree, |j| {
        Polynomial::new((0..=j).map(|_| scalar(rng)).collect())
    })
}

/// Values `1_psi, ..., count_psi`, all nonzero.
pub fn custom_family(rng: &mut impl Rng, count: usize) -> Family {
    Family::Custom {
        values: (0..count).map(|_| nonzero_scalar(rng)).collect(),
    }
}

pub fn custom_sequence(rng: &mut impl Rng, max_index: usize) -> Result<AdmissibleSequence> {
    AdmissibleSequence::new(custom_family(rng, max_index), max_index)
}
