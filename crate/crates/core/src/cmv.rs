//! Banded unitary operators: CMV matrices built from Verblunsky coefficients.
//!
//! States evolve as row vectors, `state ↦ state · M`, so row `r` of a matrix
//! lists the one-step amplitudes out of basis state `r`. Both the CMV pattern
//! and the coined-walk pattern keep every entry within two places of the
//! diagonal, which makes one step `O(dim)`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::series::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum CmvError {
    CoefficientOutOfDisk { index: usize, modulus: f64 },
    DimensionMismatch { expected: usize, found: usize },
    DimensionTooSmall { needed: usize, found: usize },
    NotEnoughCoefficients { needed: usize, found: usize },
}

impl fmt::Display for CmvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmvError::CoefficientOutOfDisk { index, modulus } => {
                write!(f, "|α_{index}| = {modulus} is not below 1")
            }
            CmvError::DimensionMismatch { expected, found } => {
                write!(f, "state has length {found}, operator has dimension {expected}")
            }
            CmvError::DimensionTooSmall { needed, found } => {
                write!(f, "dimension {found} is too small, need at least {needed}")
            }
            CmvError::NotEnoughCoefficients { needed, found } => {
                write!(f, "{found} Verblunsky coefficients given, {needed} needed")
            }
        }
    }
}

impl core::error::Error for CmvError {}

/// A point `α` of the open unit disk with `ρ = sqrt(1 - |α|²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerblunskyCoefficient {
    value: Complex64,
    rho: f64,
}

impl VerblunskyCoefficient {
    pub fn new(value: Complex64) -> Result<Self, CmvError> {
        let modulus = value.norm();
        if modulus.is_nan() || modulus >= 1.0 {
            return Err(CmvError::CoefficientOutOfDisk { index: 0, modulus });
        }
        Ok(Self {
            value,
            rho: (1.0 - value.norm_sqr()).sqrt(),
        })
    }

    pub fn real(x: f64) -> Result<Self, CmvError> {
        Self::new(Complex64::new(x, 0.0))
    }

    /// `ρ` is taken from the exact `1 - α²` before rounding, so it is correct
    /// to one rounding of the square root.
    pub fn from_rational(alpha: &Rational) -> Result<Self, CmvError> {
        let value = alpha.to_f64().unwrap_or(f64::NAN);
        let one_minus = Rational::from_integer(1.into()) - alpha * alpha;
        if one_minus <= Rational::zero() {
            return Err(CmvError::CoefficientOutOfDisk {
                index: 0,
                modulus: value.abs(),
            });
        }
        Ok(Self {
            value: Complex64::new(value, 0.0),
            rho: one_minus.to_f64().unwrap_or(f64::NAN).sqrt(),
        })
    }

    pub fn zero() -> Self {
        Self {
            value: Complex64::zero(),
            rho: 1.0,
        }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Converts a slice of values, reporting the index of the first bad one.
pub fn coefficients_from_values(values: &[Complex64]) -> Result<Vec<VerblunskyCoefficient>, CmvError> {
    values
        .iter()
        .enumerate()
        .map(|(index, &v)| {
            VerblunskyCoefficient::new(v).map_err(|e| match e {
                CmvError::CoefficientOutOfDisk { modulus, .. } => {
                    CmvError::CoefficientOutOfDisk { index, modulus }
                }
                other => other,
            })
        })
        .collect()
}

pub fn coefficients_from_rationals(values: &[Rational]) -> Result<Vec<VerblunskyCoefficient>, CmvError> {
    values
        .iter()
        .enumerate()
        .map(|(index, v)| {
            VerblunskyCoefficient::from_rational(v).map_err(|e| match e {
                CmvError::CoefficientOutOfDisk { modulus, .. } => {
                    CmvError::CoefficientOutOfDisk { index, modulus }
                }
                other => other,
            })
        })
        .collect()
}

/// Number of diagonals on each side of the main one.
pub const HALF_BANDWIDTH: usize = 2;
const BAND: usize = 2 * HALF_BANDWIDTH + 1;

/// Square matrix with nonzero entries only for `|row - col| ≤ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedUnitary {
    dim: usize,
    // rows[r][c + 2 - r]
    rows: Vec<[Complex64; BAND]>,
}

impl BandedUnitary {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: alloc::vec![[Complex64::zero(); BAND]; dim],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    fn slot(&self, row: usize, col: usize) -> Option<usize> {
        if row >= self.dim || col >= self.dim {
            return None;
        }
        let off = col as isize - row as isize + HALF_BANDWIDTH as isize;
        (0..BAND as isize).contains(&off).then_some(off as usize)
    }

    /// Entry `(row, col)`; zero outside the band or the matrix.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.slot(row, col)
            .map_or(Complex64::zero(), |k| self.rows[row][k])
    }

    /// Sets an in-band entry. Writes outside the matrix are dropped (that is
    /// the truncation); writes outside the band panic.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        if row >= self.dim || col >= self.dim {
            return;
        }
        let k = self
            .slot(row, col)
            .unwrap_or_else(|| panic!("entry ({row}, {col}) lies outside the band"));
        self.rows[row][k] = value;
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, band)| {
            band.iter().enumerate().filter_map(move |(k, &v)| {
                let c = r as isize + k as isize - HALF_BANDWIDTH as isize;
                (c >= 0 && (c as usize) < self.dim && !v.is_zero()).then_some((r, c as usize, v))
            })
        })
    }

    /// `result[k] = Σ_j state[j] · M[j, k]`.
    pub fn apply_from_source(&self, state: &[Complex64]) -> Result<Vec<Complex64>, CmvError> {
        if state.len() != self.dim {
            return Err(CmvError::DimensionMismatch {
                expected: self.dim,
                found: state.len(),
            });
        }
        let mut out = alloc::vec![Complex64::zero(); self.dim];
        self.apply_into(state, &mut out);
        Ok(out)
    }

    pub(crate) fn apply_into(&self, state: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|x| *x = Complex64::zero());
        for (r, (&s, band)) in state.iter().zip(&self.rows).enumerate() {
            if s.is_zero() {
                continue;
            }
            for (k, &m) in band.iter().enumerate() {
                let c = r + k;
                if c < HALF_BANDWIDTH || c - HALF_BANDWIDTH >= self.dim {
                    continue;
                }
                out[c - HALF_BANDWIDTH] += s * m;
            }
        }
    }

    /// Largest `|⟨col_i, col_j⟩ - δ_ij|` over columns untouched by truncation.
    ///
    /// Column `c` has entries in rows `c - 2 ..= c + 2`, so dropping rows
    /// `≥ dim` only affects the last two columns; those are excluded.
    pub fn unitarity_defect(&self) -> f64 {
        let interior = self.dim.saturating_sub(HALF_BANDWIDTH);
        let mut worst = 0.0f64;
        for i in 0..interior {
            for j in i..interior.min(i + 2 * HALF_BANDWIDTH + 1) {
                let lo = j.saturating_sub(HALF_BANDWIDTH);
                let hi = (i + HALF_BANDWIDTH).min(self.dim - 1);
                let mut dot = Complex64::zero();
                for r in lo..=hi {
                    dot += self.get(r, i).conj() * self.get(r, j);
                }
                if i == j {
                    dot -= 1.0;
                }
                worst = worst.max(dot.norm());
            }
        }
        worst
    }

    /// `(M^n)_{0,0}`, computed by pushing the first basis vector through `n`
    /// banded applications. Needs `dim ≥ 2n + 3` so that truncation cannot
    /// reach the origin.
    pub fn spectral_moment(&self, n: usize) -> Result<Complex64, CmvError> {
        Ok(self.return_amplitudes(n)?.pop().unwrap_or(Complex64::new(1.0, 0.0)))
    }

    /// `[(M^1)_{0,0}, …, (M^n)_{0,0}]`.
    pub fn return_amplitudes(&self, n: usize) -> Result<Vec<Complex64>, CmvError> {
        let needed = (2 * n + 3).max(2);
        if self.dim < needed {
            return Err(CmvError::DimensionTooSmall {
                needed,
                found: self.dim,
            });
        }
        let mut state = alloc::vec![Complex64::zero(); self.dim];
        state[0] = Complex64::new(1.0, 0.0);
        let mut next = state.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            self.apply_into(&state, &mut next);
            core::mem::swap(&mut state, &mut next);
            out.push(state[0]);
        }
        Ok(out)
    }
}

/// CMV matrix truncated to `dim × dim`.
///
/// The infinite matrix factors as `L · M` with
/// `L = Θ_0 ⊕ Θ_2 ⊕ …`, `M = 1 ⊕ Θ_1 ⊕ Θ_3 ⊕ …` and
/// `Θ_j = [[ᾱ_j, ρ_j], [ρ_j, -α_j]]`; rows 0 and 1 read
/// `(ᾱ_0, ρ_0 ᾱ_1, ρ_0 ρ_1)` and `(ρ_0, -α_0 ᾱ_1, -α_0 ρ_1)`, after which
/// the 2×4 block pattern repeats shifted by two.
pub fn build_cmv(alphas: &[VerblunskyCoefficient], dim: usize) -> Result<BandedUnitary, CmvError> {
    if dim < 2 {
        return Err(CmvError::DimensionTooSmall { needed: 2, found: dim });
    }
    if alphas.len() < dim {
        return Err(CmvError::NotEnoughCoefficients {
            needed: dim,
            found: alphas.len(),
        });
    }
    for (index, a) in alphas[..dim].iter().enumerate() {
        let modulus = a.value().norm();
        if modulus.is_nan() || modulus >= 1.0 {
            return Err(CmvError::CoefficientOutOfDisk { index, modulus });
        }
    }
    let a = |j: usize| alphas[j].value();
    let rho = |j: usize| alphas[j].rho();
    let cplx = |x: f64| Complex64::new(x, 0.0);

    // Row k of the factor M: list of (col, value).
    let m_row = |k: usize| -> [(usize, Complex64); 2] {
        if k == 0 {
            [(0, cplx(1.0)), (0, Complex64::zero())]
        } else if k % 2 == 1 {
            [(k, a(k).conj()), (k + 1, cplx(rho(k)))]
        } else {
            [(k - 1, cplx(rho(k - 1))), (k, -a(k - 1))]
        }
    };

    let mut mat = BandedUnitary::zeros(dim);
    for r in 0..dim {
        let b = r - r % 2;
        // Row r of L: (col, value) within the block Θ_b at columns b, b+1.
        let l_row = if r % 2 == 0 {
            [(b, a(b).conj()), (b + 1, cplx(rho(b)))]
        } else {
            [(b, cplx(rho(b))), (b + 1, -a(b))]
        };
        for (k, lv) in l_row {
            if k >= dim || lv.is_zero() {
                continue;
            }
            for (c, mv) in m_row(k) {
                if c < dim && !mv.is_zero() {
                    let cur = mat.get(r, c);
                    mat.set(r, c, cur + lv * mv);
                }
            }
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;
    use alloc::vec;

    const EPS: f64 = 1e-15;

    fn close(a: Complex64, b: f64) -> bool {
        (a - Complex64::new(b, 0.0)).norm() < 1e-14
    }

    fn riesz(dim: usize) -> BandedUnitary {
        let al: Vec<_> = (0..dim as u64).map(crate::ansatz::alpha).collect();
        build_cmv(&coefficients_from_rationals(&al).unwrap(), dim).unwrap()
    }

    #[test]
    fn free_case_is_a_shift_pattern() {
        let m = build_cmv(&[VerblunskyCoefficient::zero(); 8], 8).unwrap();
        assert!(close(m.get(0, 2), 1.0));
        assert!(close(m.get(1, 0), 1.0));
        assert!(close(m.get(2, 4), 1.0));
        let nz: Vec<_> = m.nonzero_entries().map(|(r, c, _)| (r, c)).collect();
        assert_eq!(nz, [(0, 2), (1, 0), (2, 4), (3, 1), (4, 6), (5, 3), (7, 5)]);
        assert!(m.unitarity_defect() <= EPS);
    }

    #[test]
    fn riesz_entries() {
        let m = riesz(16);
        assert!(close(m.get(2, 4), 3f64.sqrt() / 2.0));
        assert!(close(m.get(2, 3), 0.5));
        assert!(close(m.get(0, 2), 1.0));
        assert!(close(m.get(3, 3), 0.0));
        let mut e2 = vec![Complex64::zero(); 16];
        e2[2] = Complex64::new(1.0, 0.0);
        let out = m.apply_from_source(&e2).unwrap();
        assert!(close(out[1], 0.0) && close(out[2], 0.0));
        assert!(close(out[3], 0.5) && close(out[4], 3f64.sqrt() / 2.0));
    }

    #[test]
    fn hadamard_like_corner() {
        let h = 0.5f64.sqrt();
        let al: Vec<_> = (0..6)
            .map(|j| VerblunskyCoefficient::real(if j % 2 == 0 { h } else { 0.0 }).unwrap())
            .collect();
        let m = build_cmv(&al, 6).unwrap();
        assert!(close(m.get(0, 0), h));
    }

    #[test]
    fn general_entries_follow_block_pattern() {
        let vals: Vec<Complex64> = (0..10)
            .map(|j| Complex64::new(0.1 * j as f64 - 0.4, 0.05 * j as f64))
            .collect();
        let al = coefficients_from_values(&vals).unwrap();
        let m = build_cmv(&al, 10).unwrap();
        let a = |j: usize| vals[j];
        let r = |j: usize| al[j].rho();
        let c = |x: f64| Complex64::new(x, 0.0);
        let expect = [
            ((0, 0), a(0).conj()),
            ((0, 1), c(r(0)) * a(1).conj()),
            ((0, 2), c(r(0) * r(1))),
            ((1, 1), -a(0) * a(1).conj()),
            ((1, 2), -a(0) * r(1)),
            ((2, 1), c(r(1)) * a(2).conj()),
            ((2, 2), -a(1) * a(2).conj()),
            ((3, 1), c(r(1) * r(2))),
            ((3, 2), -a(1) * r(2)),
            ((3, 3), -a(2) * a(3).conj()),
            ((3, 4), -a(2) * r(3)),
            ((4, 5), c(r(4)) * a(5).conj()),
            ((5, 3), c(r(3) * r(4))),
        ];
        for ((i, j), v) in expect {
            assert!((m.get(i, j) - v).norm() < 1e-15, "entry ({i},{j})");
        }
        assert!(m.unitarity_defect() < 1e-14);
    }

    #[test]
    fn errors() {
        let big = VerblunskyCoefficient::real(1.5);
        assert!(matches!(big, Err(CmvError::CoefficientOutOfDisk { .. })));
        assert!(VerblunskyCoefficient::from_rational(&ratio(-1, 1)).is_err());
        let bad = coefficients_from_values(&[Complex64::zero(), Complex64::new(0.0, 1.0)]);
        assert!(matches!(bad, Err(CmvError::CoefficientOutOfDisk { index: 1, .. })));
        let m = riesz(8);
        assert!(matches!(
            m.apply_from_source(&[Complex64::zero(); 3]),
            Err(CmvError::DimensionMismatch { expected: 8, found: 3 })
        ));
        assert!(matches!(m.spectral_moment(3), Err(CmvError::DimensionTooSmall { needed: 9, .. })));
        assert!(build_cmv(&[VerblunskyCoefficient::zero(); 3], 4).is_err());
    }

    #[test]
    fn riesz_moments() {
        let m = riesz(64);
        assert!((m.spectral_moment(4).unwrap() - 0.5).norm() < 1e-10);
        assert!(m.spectral_moment(2).unwrap().norm() < 1e-10);
        assert!(close(m.spectral_moment(0).unwrap(), 1.0));
    }
}
