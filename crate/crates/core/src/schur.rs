//! Carathéodory to Schur conversion, the Schur algorithm, and first-return
//! amplitudes.
//!
//! The engine works over real rationals: the conjugations in the Schur
//! recursion are the identity for every series it is fed here.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::measure::{caratheodory_series, MeasureVariant};
use crate::series::{inside_unit_disk, Rational, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchurError {
    /// `|α_k| ≥ 1`: the measure has finite support, or the input is not a
    /// Schur function.
    ParameterOutOfDisk { index: usize, value: Rational },
    /// The iterate has no valid order left to produce another step.
    PrecisionExhausted { step: usize, valid_order: i64 },
    /// A requested coefficient lies beyond the series' valid order.
    InsufficientPrecision { needed: i64, valid_order: i64 },
    /// Carathéodory series must start with 1.
    NotNormalized,
    Series(SeriesError),
}

impl fmt::Display for SchurError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurError::ParameterOutOfDisk { index, value } => {
                write!(f, "Verblunsky parameter α_{index} = {value} is not inside the unit disk")
            }
            SchurError::PrecisionExhausted { step, valid_order } => write!(
                f,
                "precision exhausted at Schur step {step} (iterate valid through order {valid_order})"
            ),
            SchurError::InsufficientPrecision {
                needed,
                valid_order,
            } => write!(
                f,
                "order {needed} requested but the series is only valid through {valid_order}"
            ),
            SchurError::NotNormalized => f.write_str("Carathéodory series must have F(0) = 1"),
            SchurError::Series(e) => write!(f, "series error: {e}"),
        }
    }
}

impl core::error::Error for SchurError {}

impl From<SeriesError> for SchurError {
    fn from(e: SeriesError) -> Self {
        SchurError::Series(e)
    }
}

/// `f(z) = z^{-1} (F(z) - 1) / (F(z) + 1)`, valid through `F.valid_order - 1`.
pub fn schur_from_caratheodory(caratheodory: &TruncatedSeries) -> Result<TruncatedSeries, SchurError> {
    let (num, den) = caratheodory_fraction(caratheodory)?;
    Ok((&num * &den.reciprocal()?).truncate(num.valid_order()))
}

/// Splits `f = (F - 1)/z ÷ (F + 1)` without dividing.
fn caratheodory_fraction(
    caratheodory: &TruncatedSeries,
) -> Result<(TruncatedSeries, TruncatedSeries), SchurError> {
    if caratheodory.coeff(0) != Some(&Rational::one()) {
        return Err(SchurError::NotNormalized);
    }
    let one = TruncatedSeries::constant(Rational::one(), caratheodory.valid_order());
    let num = (caratheodory - &one).shift_down()?;
    let den = (caratheodory + &one).truncate(num.valid_order());
    Ok((num, den))
}

/// One point of the Schur algorithm: the iterate `f_k` and `α_0 … α_{k-1}`.
///
/// The iterate is held as a quotient `numerator / denominator` of two series
/// valid through the same order. In that form a step is
///
/// ```text
/// numerator'   = (numerator − α·denominator) / z
/// denominator' =  denominator − ᾱ·numerator
/// ```
///
/// which costs two linear passes instead of a series division, while
/// [`SchurState::current`] still materialises `f_k` on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurState {
    numerator: TruncatedSeries,
    denominator: TruncatedSeries,
    step: usize,
    extracted: Vec<Rational>,
}

impl SchurState {
    /// Starts the algorithm on a Schur function `f_0 = f`.
    pub fn new(schur: TruncatedSeries) -> Self {
        let denominator = TruncatedSeries::constant(Rational::one(), schur.valid_order());
        Self {
            numerator: schur,
            denominator,
            step: 0,
            extracted: Vec::new(),
        }
    }

    /// Starts from a Carathéodory series, skipping the initial division.
    pub fn from_caratheodory(caratheodory: &TruncatedSeries) -> Result<Self, SchurError> {
        let (numerator, denominator) = caratheodory_fraction(caratheodory)?;
        Ok(Self {
            numerator,
            denominator,
            step: 0,
            extracted: Vec::new(),
        })
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn extracted(&self) -> &[Rational] {
        &self.extracted
    }

    pub fn into_extracted(self) -> Vec<Rational> {
        self.extracted
    }

    pub fn valid_order(&self) -> i64 {
        self.numerator.valid_order()
    }

    /// Constant term of the current iterate, i.e. the next `α`.
    pub fn next_parameter(&self) -> Option<Rational> {
        let n = self.numerator.coeff(0)?;
        let d = self.denominator.coeff(0)?;
        Some(n / d)
    }

    /// The iterate `f_k` as a single series.
    pub fn current(&self) -> TruncatedSeries {
        // The denominator's constant term is a product of factors 1 − α² > 0.
        let inv = self
            .denominator
            .reciprocal()
            .expect("Schur denominator has a positive constant term");
        &self.numerator * &inv
    }

    /// Extracts `α_k` and advances to `f_{k+1}`, losing one order of validity.
    pub fn advance(&mut self) -> Result<&Rational, SchurError> {
        let valid_order = self.valid_order();
        if valid_order < 1 {
            return Err(SchurError::PrecisionExhausted {
                step: self.step,
                valid_order,
            });
        }
        let alpha = self.next_parameter().expect("valid order is at least 1");
        if !inside_unit_disk(&alpha) {
            return Err(SchurError::ParameterOutOfDisk {
                index: self.step,
                value: alpha,
            });
        }
        let numerator = if alpha.is_zero() {
            self.numerator.shift_down()?
        } else {
            (&self.numerator - &self.denominator.scale(&alpha)).shift_down()?
        };
        let denominator = if alpha.is_zero() {
            self.denominator.truncate(valid_order - 1)
        } else {
            (&self.denominator - &self.numerator.scale(&alpha)).truncate(valid_order - 1)
        };
        self.numerator = numerator;
        self.denominator = denominator;
        self.step += 1;
        self.extracted.push(alpha);
        Ok(self.extracted.last().expect("just pushed"))
    }
}

/// Value-style single step of the Schur algorithm.
pub fn schur_step(state: &SchurState) -> Result<SchurState, SchurError> {
    let mut next = state.clone();
    next.advance()?;
    Ok(next)
}

/// Runs `count` Schur steps starting from a Carathéodory series and returns
/// `α_0 … α_{count-1}`. Requires `F.valid_order ≥ count + 1`.
pub fn extract_verblunsky(
    caratheodory: &TruncatedSeries,
    count: usize,
) -> Result<Vec<Rational>, SchurError> {
    let mut state = SchurState::from_caratheodory(caratheodory)?;
    for _ in 0..count {
        state.advance()?;
    }
    Ok(state.into_extracted())
}

/// Places `ν`'s parameters at indices `4m − 1` with zeros elsewhere, giving
/// the parameters of `μ` (`f(z) = z^3 g(z^4)`).
pub fn interleave_quartic(nu_parameters: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(4 * nu_parameters.len());
    for a in nu_parameters {
        out.extend(core::iter::repeat_n(Rational::zero(), 3));
        out.push(a.clone());
    }
    out
}

/// The first `count` nonzero Verblunsky parameters of the Riesz measure,
/// `ξ_1 … ξ_count`, computed on the `ν` side where they are consecutive.
pub fn riesz_nonnull_parameters(count: usize) -> Result<Vec<Rational>, SchurError> {
    let g = caratheodory_series(count + 1, MeasureVariant::Nu);
    extract_verblunsky(&g, count)
}

/// Schur function of `μ` (or `ν`) valid through `max_order`.
///
/// For `Mu` this is assembled as `z^3 g(z^4)` from the `ν` side, which needs a
/// quarter of the series length.
pub fn riesz_schur_function(max_order: usize, variant: MeasureVariant) -> Result<TruncatedSeries, SchurError> {
    match variant {
        MeasureVariant::Nu => schur_from_caratheodory(&caratheodory_series(max_order + 1, variant)),
        MeasureVariant::Mu => {
            let nu_order = max_order / 4 + 1;
            let g = schur_from_caratheodory(&caratheodory_series(nu_order + 1, MeasureVariant::Nu))?;
            Ok(g.substitute_quartic().shift_up(3).truncate(max_order as i64))
        }
    }
}

/// Amplitudes of first return to the initial state; index 0 holds step 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstReturnSeries {
    amplitudes: Vec<Rational>,
}

impl FirstReturnSeries {
    pub fn new(amplitudes: Vec<Rational>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Rational] {
        &self.amplitudes
    }

    /// Amplitude of first return at exactly `n ≥ 1` steps.
    pub fn at(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.amplitudes.get(i))
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }
}

/// Reads first-return amplitudes off a Schur function: the amplitude at step
/// `n` is the coefficient of `z^{n-1}` (`z f(z)` is the first-return
/// generating function).
pub fn first_return_series(schur: &TruncatedSeries, max_n: usize) -> Result<FirstReturnSeries, SchurError> {
    let needed = max_n as i64 - 1;
    if needed > schur.valid_order() {
        return Err(SchurError::InsufficientPrecision {
            needed,
            valid_order: schur.valid_order(),
        });
    }
    Ok(FirstReturnSeries::new(schur.coefficients()[..max_n].to_vec()))
}

/// Renewal inversion: with `r(z) = Σ_{n≥0} μ_n z^n`, the first-return series
/// is `1 − 1/r(z)`. `moments[0]` is taken as `μ_0 = 1` regardless of its value.
pub fn renewal_first_return(moments: &[Rational], max_n: usize) -> Result<FirstReturnSeries, SchurError> {
    if moments.len() <= max_n {
        return Err(SchurError::InsufficientPrecision {
            needed: max_n as i64,
            valid_order: moments.len() as i64 - 1,
        });
    }
    let mut r = moments[..=max_n].to_vec();
    r[0] = Rational::one();
    let inv = TruncatedSeries::polynomial(r, max_n as i64).reciprocal()?;
    let amplitudes = inv.coefficients()[1..].iter().map(|c| -c).collect();
    Ok(FirstReturnSeries::new(amplitudes))
}

/// Partial sums of squared amplitudes; entry `n` covers steps `1..=n`, so
/// entry 0 is the empty sum.
pub fn cumulative_return_probability(series: &FirstReturnSeries) -> Vec<Rational> {
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity(series.len() + 1);
    out.push(acc.clone());
    for a in series.amplitudes() {
        acc += a * a;
        out.push(acc.clone());
    }
    out
}
