//! Exact truncated power series over arbitrary-precision rationals.
//!
//! A [`TruncatedSeries`] carries its coefficients together with the highest
//! order that is actually known (`valid_order`). Every operation states how
//! that bound propagates, so the one-order-per-step loss of the Schur
//! algorithm is accounted for in the data rather than by convention.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number in canonical form (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a canonical rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `|x| < 1`, exactly.
pub fn inside_unit_disk(x: &Rational) -> bool {
    x.abs() < Rational::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Reciprocal of a series whose constant term vanishes.
    ZeroConstantTerm,
    /// Division by `z` of a series whose constant term does not vanish.
    NonzeroConstantTerm,
    /// `valid_order` below −1 or fewer coefficients than `valid_order + 1`.
    InvalidShape { coefficients: usize, valid_order: i64 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroConstantTerm => f.write_str("series has a zero constant term"),
            SeriesError::NonzeroConstantTerm => {
                f.write_str("series has a nonzero constant term and cannot be divided by z")
            }
            SeriesError::InvalidShape {
                coefficients,
                valid_order,
            } => write!(
                f,
                "{coefficients} coefficients cannot carry valid order {valid_order}"
            ),
        }
    }
}

impl core::error::Error for SeriesError {}

/// Formal power series known exactly through `valid_order`.
///
/// Coefficients are stored densely; the vector always has exactly
/// `valid_order + 1` entries, so nothing beyond the trustworthy range is ever
/// held (and therefore never read).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    valid_order: i64,
}

impl TruncatedSeries {
    /// Takes the first `valid_order + 1` coefficients; extra entries are dropped.
    pub fn new(mut coeffs: Vec<Rational>, valid_order: i64) -> Result<Self, SeriesError> {
        if valid_order < -1 || (coeffs.len() as i64) < valid_order + 1 {
            return Err(SeriesError::InvalidShape {
                coefficients: coeffs.len(),
                valid_order,
            });
        }
        coeffs.truncate((valid_order + 1) as usize);
        Ok(Self {
            coeffs,
            valid_order,
        })
    }

    /// A polynomial known to be exact through `valid_order`: missing
    /// coefficients are zero, coefficients above `valid_order` are dropped.
    pub fn polynomial(mut coeffs: Vec<Rational>, valid_order: i64) -> Self {
        assert!(valid_order >= -1, "valid order must be at least -1");
        coeffs.resize((valid_order + 1) as usize, Rational::zero());
        Self {
            coeffs,
            valid_order,
        }
    }

    pub fn zero(valid_order: i64) -> Self {
        Self::polynomial(Vec::new(), valid_order)
    }

    pub fn constant(c: Rational, valid_order: i64) -> Self {
        Self::polynomial(alloc::vec![c], valid_order)
    }

    /// Series whose only nonzero terms are `(order, coefficient)` pairs.
    pub fn from_terms<I>(terms: I, valid_order: i64) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut s = Self::zero(valid_order);
        for (k, c) in terms {
            if let Some(slot) = s.coeffs.get_mut(k) {
                *slot += c;
            }
        }
        s
    }

    pub fn valid_order(&self) -> i64 {
        self.valid_order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^k`, or `None` if `k` lies beyond `valid_order`.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Drops every order above `order` (no-op if already shorter).
    pub fn truncate(&self, order: i64) -> Self {
        let v = order.min(self.valid_order).max(-1);
        Self {
            coeffs: self.coeffs[..(v + 1) as usize].to_vec(),
            valid_order: v,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            valid_order: self.valid_order,
        }
    }

    /// Multiplicative inverse through `valid_order`.
    ///
    /// Uses the triangular recurrence `b_n = -(1/a_0) Σ_{k=1}^{n} a_k b_{n-k}`,
    /// skipping the zero coefficients of `a` (Carathéodory series of the
    /// Riesz measures are very sparse).
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(SeriesError::ZeroConstantTerm),
        };
        let n = self.coeffs.len();
        let support: Vec<(usize, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let inv0 = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for m in 1..n {
            let mut acc = Rational::zero();
            for &(k, ak) in &support {
                if k > m {
                    break;
                }
                let bk = &b[m - k];
                if !bk.is_zero() {
                    acc += ak * bk;
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Self {
            coeffs: b,
            valid_order: self.valid_order,
        })
    }

    /// Division by `z`: `result[k] = self[k + 1]`; one order of validity is lost.
    pub fn shift_down(&self) -> Result<Self, SeriesError> {
        match self.coeffs.first() {
            None => Ok(Self::zero(self.valid_order - 1)),
            Some(c) if !c.is_zero() => Err(SeriesError::NonzeroConstantTerm),
            Some(_) => Ok(Self {
                coeffs: self.coeffs[1..].to_vec(),
                valid_order: self.valid_order - 1,
            }),
        }
    }

    /// Multiplication by `z^k`; validity grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + k);
        coeffs.resize(k, Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            coeffs,
            valid_order: self.valid_order + k as i64,
        }
    }

    /// Composition with `z^4`: `result[4k] = self[k]`.
    ///
    /// The three orders after `4·valid_order` are known to be zero, so the
    /// result is valid through `4·valid_order + 3`.
    pub fn substitute_quartic(&self) -> Self {
        let valid_order = 4 * self.valid_order + 3;
        let mut coeffs = alloc::vec![Rational::zero(); (valid_order + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[4 * k] = c.clone();
        }
        Self {
            coeffs,
            valid_order,
        }
    }

    /// `self(-z)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
            valid_order: self.valid_order,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let valid_order = self.valid_order.min(other.valid_order);
        let coeffs = self.coeffs[..(valid_order + 1) as usize]
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| op(a, b))
            .collect();
        Self {
            coeffs,
            valid_order,
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            valid_order: self.valid_order,
        }
    }
}

/// Truncated Cauchy product. Both factors have nonnegative valuation, so the
/// product is valid exactly as far as the shorter factor.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let valid_order = self.valid_order.min(rhs.valid_order);
        let n = (valid_order + 1) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries {
            coeffs,
            valid_order,
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.valid_order + 1)
    }
}
