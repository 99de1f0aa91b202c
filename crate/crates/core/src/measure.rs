//! Moments of the Riesz product measures.
//!
//! The measure `μ` (product over `k ≥ 1`) has moment `μ_j = 2^{-p}` when
//! `j = ±4^{k_1} ± … ± 4^{k_p}` with distinct `k_i ≥ 1`, and zero otherwise.
//! The companion `ν` (product over `k ≥ 0`) satisfies `dμ(z) = dν(z^4)`, so
//! `ν_j = μ_{4j}`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{Rational, TruncatedSeries};

/// Which Riesz product the moments belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasureVariant {
    /// Product starting at `k = 1`; Carathéodory function `F`, Schur function `f`.
    Mu,
    /// Product starting at `k = 0`; Carathéodory function `G`, Schur function `g`.
    Nu,
}

impl MeasureVariant {
    /// Smallest exponent allowed in a digit expansion.
    pub fn min_exponent(self) -> u32 {
        match self {
            MeasureVariant::Mu => 1,
            MeasureVariant::Nu => 0,
        }
    }
}

/// `j = Σ sign · 4^exponent` with strictly decreasing exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedQuarticExpansion {
    digits: Vec<(u32, i8)>,
}

impl SignedQuarticExpansion {
    /// `(exponent, ±1)` pairs, largest exponent first.
    pub fn digits(&self) -> &[(u32, i8)] {
        &self.digits
    }

    /// Number of nonzero digits (the `p` in `2^{-p}`).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Sums the expansion back to an integer.
    pub fn value(&self) -> i128 {
        self.digits
            .iter()
            .map(|&(k, s)| i128::from(s) * 4i128.pow(k))
            .sum()
    }
}

/// Balanced base-4 digit extraction with digits in `{-1, 0, 1}`.
///
/// Returns `None` when `j` is not a signed sum of distinct admissible powers
/// of 4 (a residue 2 appears, or for [`MeasureVariant::Mu`] the units digit is
/// nonzero). `j = 0` yields the empty expansion.
pub fn signed_quartic_digits(j: i64, variant: MeasureVariant) -> Option<SignedQuarticExpansion> {
    let flip: i8 = if j < 0 { -1 } else { 1 };
    let mut m = j.unsigned_abs();
    let mut level = 0u32;
    let mut digits = Vec::new();
    while m != 0 {
        let sign = match m % 4 {
            0 => 0,
            1 => 1,
            3 => -1,
            _ => return None,
        };
        if sign != 0 {
            if level < variant.min_exponent() {
                return None;
            }
            digits.push((level, sign * flip));
        }
        m = match sign {
            1 => (m - 1) / 4,
            -1 => m / 4 + 1,
            _ => m / 4,
        };
        level += 1;
    }
    digits.reverse();
    Some(SignedQuarticExpansion { digits })
}

/// Exact moment `∫ z^j dμ` (or `dν`).
pub fn moment(j: i64, variant: MeasureVariant) -> Rational {
    match signed_quartic_digits(j, variant) {
        Some(e) => Rational::new(BigInt::one(), BigInt::one() << e.len()),
        None => Rational::zero(),
    }
}

/// Moments `0..=max_degree`.
pub fn moments(max_degree: usize, variant: MeasureVariant) -> Vec<Rational> {
    (0..=max_degree as i64).map(|j| moment(j, variant)).collect()
}

/// Carathéodory series `1 + 2 Σ_{j≥1} μ_j z^j`, valid through `max_order`.
///
/// All Riesz moments are real, so the conjugation in the general formula is
/// the identity here.
pub fn caratheodory_series(max_order: usize, variant: MeasureVariant) -> TruncatedSeries {
    let two = Rational::from_integer(BigInt::from(2));
    let terms = (1..=max_order as i64)
        .filter_map(|j| {
            let m = moment(j, variant);
            (!m.is_zero()).then(|| (j as usize, &two * m))
        })
        .chain(core::iter::once((0, Rational::one())));
    TruncatedSeries::from_terms(terms, max_order as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, ratio};

    #[test]
    fn digit_examples() {
        let e = signed_quartic_digits(4, MeasureVariant::Mu).unwrap();
        assert_eq!(e.digits(), &[(1, 1)]);
        let e = signed_quartic_digits(44, MeasureVariant::Mu).unwrap();
        assert_eq!(e.digits(), &[(3, 1), (2, -1), (1, -1)]);
        assert_eq!(e.value(), 44);
        assert_eq!(signed_quartic_digits(8, MeasureVariant::Mu), None);
        assert_eq!(signed_quartic_digits(1, MeasureVariant::Mu), None);
        assert_eq!(
            signed_quartic_digits(1, MeasureVariant::Nu).unwrap().digits(),
            &[(0, 1)]
        );
        let e = signed_quartic_digits(-44, MeasureVariant::Mu).unwrap();
        assert_eq!(e.digits(), &[(3, -1), (2, 1), (1, 1)]);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment(0, MeasureVariant::Mu), int(1));
        assert_eq!(moment(4, MeasureVariant::Mu), ratio(1, 2));
        assert_eq!(moment(44, MeasureVariant::Mu), ratio(1, 8));
        assert_eq!(moment(2, MeasureVariant::Mu), int(0));
        assert_eq!(moment(-12, MeasureVariant::Mu), ratio(1, 4));
        assert_eq!(moment(i64::MIN, MeasureVariant::Mu), int(0));
    }

    #[test]
    fn caratheodory_examples() {
        let f = caratheodory_series(20, MeasureVariant::Mu);
        let expected = TruncatedSeries::from_terms(
            [
                (0, int(1)),
                (4, int(1)),
                (12, ratio(1, 2)),
                (16, int(1)),
                (20, ratio(1, 2)),
            ],
            20,
        );
        assert_eq!(f, expected);
        assert_eq!(
            caratheodory_series(64, MeasureVariant::Mu).coeff(64),
            Some(&int(1))
        );
        let g = caratheodory_series(5, MeasureVariant::Nu);
        let expected = TruncatedSeries::from_terms(
            [
                (0, int(1)),
                (1, int(1)),
                (3, ratio(1, 2)),
                (4, int(1)),
                (5, ratio(1, 2)),
            ],
            5,
        );
        assert_eq!(g, expected);
        assert_eq!(caratheodory_series(0, MeasureVariant::Nu), TruncatedSeries::constant(int(1), 0));
    }
}
