//! Quantum walks on the half line `|site⟩ ⊗ |spin⟩`.
//!
//! Basis index `2i` is `|i⟩⊗|↑⟩` and `2i + 1` is `|i⟩⊗|↓⟩`. Two families of
//! evolution operators live here: coined walks (an arbitrary unitary coin per
//! site, only nearest-neighbour moves) and CMV walks driven by Verblunsky
//! coefficients, which also allow staying on the same site.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::ansatz::Backbone;
use crate::cmv::{build_cmv, coefficients_from_rationals, BandedUnitary, CmvError, VerblunskyCoefficient};
use crate::series::Rational;

/// Tolerance for accepting a coin as unitary.
pub const COIN_UNITARITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum WalkError {
    NonUnitaryCoin { site: usize, defect: f64 },
    ZeroCoin,
    Operator(CmvError),
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::NonUnitaryCoin { site, defect } => {
                write!(f, "coin at site {site} is not unitary (defect {defect:e})")
            }
            WalkError::ZeroCoin => f.write_str("constant-coin parameter a must be nonzero"),
            WalkError::Operator(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for WalkError {}

impl From<CmvError> for WalkError {
    fn from(e: CmvError) -> Self {
        WalkError::Operator(e)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `[[c11, c12], [c21, c22]]`.
///
/// From `|i↑⟩` the walker goes to `|i+1↑⟩` with amplitude `c11` and to
/// `|i-1↓⟩` with `c21`; from `|i↓⟩` the amplitudes are `c12` and `c22`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix {
    pub c11: Complex64,
    pub c12: Complex64,
    pub c21: Complex64,
    pub c22: Complex64,
}

impl CoinMatrix {
    pub fn new(c11: Complex64, c12: Complex64, c21: Complex64, c22: Complex64) -> Result<Self, WalkError> {
        let coin = Self { c11, c12, c21, c22 };
        let defect = coin.unitarity_defect();
        if defect.is_nan() || defect > COIN_UNITARITY_TOLERANCE {
            return Err(WalkError::NonUnitaryCoin { site: 0, defect });
        }
        Ok(coin)
    }

    pub fn identity() -> Self {
        Self {
            c11: c(1.0),
            c12: c(0.0),
            c21: c(0.0),
            c22: c(1.0),
        }
    }

    pub fn hadamard() -> Self {
        let h = 0.5f64.sqrt();
        Self {
            c11: c(h),
            c12: c(h),
            c21: c(h),
            c22: c(-h),
        }
    }

    /// Max entry of `|C*C - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d11 = self.c11.norm_sqr() + self.c21.norm_sqr() - 1.0;
        let d22 = self.c12.norm_sqr() + self.c22.norm_sqr() - 1.0;
        let off = (self.c11.conj() * self.c12 + self.c21.conj() * self.c22).norm();
        d11.abs().max(d22.abs()).max(off)
    }
}

/// Transition matrix of the coined walk on `dim` basis states.
///
/// Row `2i` holds `c21` at `|i-1↓⟩` and `c11` at `|i+1↑⟩`; row `2i + 1`
/// holds `c22` and `c12` at the same columns. At the origin `|-1↓⟩` is
/// identified with `|0↑⟩`. Sites beyond the end of `coins` reuse the last
/// coin.
pub fn coined_walk_matrix(coins: &[CoinMatrix], dim: usize) -> Result<BandedUnitary, WalkError> {
    if dim < 4 {
        return Err(CmvError::DimensionTooSmall { needed: 4, found: dim }.into());
    }
    let last = *coins.last().ok_or(CmvError::NotEnoughCoefficients { needed: 1, found: 0 })?;
    for (site, coin) in coins.iter().enumerate() {
        let defect = coin.unitarity_defect();
        if defect.is_nan() || defect > COIN_UNITARITY_TOLERANCE {
            return Err(WalkError::NonUnitaryCoin { site, defect });
        }
    }
    let mut m = BandedUnitary::zeros(dim);
    for site in 0..dim.div_ceil(2) {
        let coin = coins.get(site).copied().unwrap_or(last);
        let up = 2 * site;
        let left = if site == 0 { 0 } else { 2 * site - 1 };
        let right = 2 * site + 2;
        m.set(up, left, coin.c21);
        m.set(up, right, coin.c11);
        m.set(up + 1, left, coin.c22);
        m.set(up + 1, right, coin.c12);
    }
    Ok(m)
}

pub fn constant_coin_walk(coin: CoinMatrix, dim: usize) -> Result<BandedUnitary, WalkError> {
    coined_walk_matrix(&[coin], dim)
}

/// Diagonal unitary `D` with `U = D C D*`, if one exists (`d_0 = 1`).
///
/// Phases are propagated along nonzero entries of `C` from the origin and
/// then every entry is checked to `tol`.
pub fn diagonal_conjugation(u: &BandedUnitary, cmv: &BandedUnitary, tol: f64) -> Option<Vec<Complex64>> {
    let dim = u.dimension();
    if cmv.dimension() != dim {
        return None;
    }
    let mut d: Vec<Option<Complex64>> = alloc::vec![None; dim];
    d[0] = Some(c(1.0));
    let mut changed = true;
    while changed {
        changed = false;
        for (r, col, v) in cmv.nonzero_entries() {
            if v.norm() <= tol {
                continue;
            }
            let w = u.get(r, col);
            match (d[r], d[col]) {
                // U[r,c] = d_r C[r,c] conj(d_c)
                (Some(dr), None) => {
                    let dc = (w / (dr * v)).conj();
                    d[col] = Some(dc / dc.norm());
                    changed = true;
                }
                (None, Some(dc)) => {
                    let dr = w / (v * dc.conj());
                    d[r] = Some(dr / dr.norm());
                    changed = true;
                }
                _ => {}
            }
        }
    }
    let d: Vec<Complex64> = d.into_iter().map(|x| x.unwrap_or(c(1.0))).collect();
    for r in 0..dim {
        for col in r.saturating_sub(2)..(r + 3).min(dim) {
            let expect = d[r] * cmv.get(r, col) * d[col].conj();
            if (u.get(r, col) - expect).norm() > tol {
                return None;
            }
        }
    }
    Some(d)
}

/// Verblunsky coefficients of the Hadamard walk: `(a, 0, -a, 0, a, 0, …)`
/// with `a = 1/√2`.
///
/// This is the sequence whose CMV matrix is diagonally conjugate to
/// [`coined_walk_matrix`] with Hadamard coins in the basis ordering used
/// here; its even entries alternate in sign. The constant sequence
/// `(a, 0, a, 0, …)` describes the same walk up to the rotation `z ↦ iz`.
pub fn hadamard_alpha(len: usize) -> Vec<VerblunskyCoefficient> {
    let a = 0.5f64.sqrt();
    (0..len)
        .map(|j| {
            let v = match j % 4 {
                0 => a,
                2 => -a,
                _ => 0.0,
            };
            VerblunskyCoefficient::real(v).expect("|a| < 1")
        })
        .collect()
}

/// `(a, 0, a, 0, …)`: a constant coin after phase conjugation.
pub fn constant_coin_alpha(a: Complex64, len: usize) -> Result<Vec<VerblunskyCoefficient>, WalkError> {
    let alpha = VerblunskyCoefficient::new(a)?;
    Ok((0..len)
        .map(|j| if j % 2 == 0 { alpha } else { VerblunskyCoefficient::zero() })
        .collect())
}

/// Nonzero Verblunsky coefficients of the Riesz measure from the closed form,
/// as an exact sequence `α_0 … α_{len-1}`.
pub fn riesz_alphas(len: usize) -> Vec<Rational> {
    let mut backbone = Backbone::for_parameters(len as u64 / 4 + 1);
    (0..len as u64).map(|j| backbone.alpha(j)).collect()
}

/// CMV matrix of the Riesz walk.
pub fn riesz_walk_matrix(dim: usize) -> Result<BandedUnitary, WalkError> {
    let alphas = coefficients_from_rationals(&riesz_alphas(dim))?;
    Ok(build_cmv(&alphas, dim)?)
}

/// Dimension that simulates `steps` steps from the origin without the
/// truncation reaching the support.
pub fn safe_dimension(steps: usize) -> usize {
    2 * steps + 8
}

/// Amplitudes over the ordered basis `|0↑⟩, |0↓⟩, |1↑⟩, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// `|0⟩ ⊗ |↑⟩`.
    pub fn origin(dim: usize) -> Self {
        let mut amplitudes = alloc::vec![Complex64::zero(); dim];
        if let Some(a) = amplitudes.first_mut() {
            *a = c(1.0);
        }
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Highest basis index carrying a nonzero amplitude.
    pub fn support_end(&self) -> Option<usize> {
        self.amplitudes.iter().rposition(|a| !a.is_zero())
    }
}

/// Applies `M` to `initial` `steps` times (source-row convention).
///
/// The support grows by at most two basis states per step, so the operator
/// must satisfy `dim ≥ support_end + 2·steps + 8`, i.e. `2·steps + 8` for a
/// walk started at the origin.
pub fn evolve(m: &BandedUnitary, initial: &WalkState, steps: usize) -> Result<WalkState, WalkError> {
    evolve_with(m, initial, steps, |_, _| {})
}

/// [`evolve`] with a callback after every step (`step`, state).
pub fn evolve_with(
    m: &BandedUnitary,
    initial: &WalkState,
    steps: usize,
    mut observe: impl FnMut(usize, &WalkState),
) -> Result<WalkState, WalkError> {
    let dim = m.dimension();
    if initial.amplitudes.len() != dim {
        return Err(CmvError::DimensionMismatch {
            expected: dim,
            found: initial.amplitudes.len(),
        }
        .into());
    }
    let needed = initial.support_end().unwrap_or(0) + safe_dimension(steps);
    if steps > 0 && dim < needed {
        return Err(CmvError::DimensionTooSmall { needed, found: dim }.into());
    }
    let mut state = initial.clone();
    let mut next = alloc::vec![Complex64::zero(); dim];
    for step in 1..=steps {
        m.apply_into(&state.amplitudes, &mut next);
        core::mem::swap(&mut state.amplitudes, &mut next);
        observe(step, &state);
    }
    Ok(state)
}

/// Law of the site `X_n` after `step_count` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionDistribution {
    pub probabilities: Vec<f64>,
    pub step_count: usize,
}

impl PositionDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// `(site, site / n, probability)` for sites `0..=n`. At `n = 0` the
    /// abscissa is reported as 0.
    pub fn scaled(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        let n = self.step_count;
        self.probabilities
            .iter()
            .take(n + 1)
            .enumerate()
            .map(move |(i, &p)| (i, if n == 0 { 0.0 } else { i as f64 / n as f64 }, p))
    }
}

/// `P(X = i) = |ψ_{2i}|² + |ψ_{2i+1}|²`.
pub fn position_distribution(state: &WalkState, step_count: usize) -> PositionDistribution {
    let probabilities = state
        .amplitudes
        .chunks(2)
        .map(|pair| pair.iter().map(Complex64::norm_sqr).sum())
        .collect();
    PositionDistribution {
        probabilities,
        step_count,
    }
}

/// `1 − 1/r(z)` in floating point for `r(z) = 1 + Σ_{n≥1} r_n z^n`.
/// `returns[k]` is `r_{k+1}`; the output is indexed the same way.
pub fn renewal_inversion(returns: &[Complex64]) -> Vec<Complex64> {
    let n = returns.len();
    // b = 1/r, b_0 = 1.
    let mut b = alloc::vec![Complex64::zero(); n + 1];
    b[0] = c(1.0);
    for m in 1..=n {
        let mut acc = Complex64::zero();
        for k in 1..=m {
            acc += returns[k - 1] * b[m - k];
        }
        b[m] = -acc;
    }
    b.into_iter().skip(1).map(|x| -x).collect()
}

/// First-return amplitudes at steps `1..=max_n` from the matrix: return
/// amplitudes `(M^n)_{0,0}` followed by a floating-point renewal inversion.
pub fn first_return_numeric(m: &BandedUnitary, max_n: usize) -> Result<Vec<Complex64>, WalkError> {
    Ok(renewal_inversion(&m.return_amplitudes(max_n)?))
}

fn series_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::zero(); n];
    for (i, &x) in a.iter().take(n).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_reciprocal(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let inv0 = a[0].inv();
    let mut b = alloc::vec![Complex64::zero(); n];
    b[0] = inv0;
    for m in 1..n {
        let mut acc = Complex64::zero();
        for k in 1..=m.min(a.len() - 1) {
            acc += a[k] * b[m - k];
        }
        b[m] = -acc * inv0;
    }
    b
}

/// Square root of a series with constant term 1, by Newton's iteration
/// `s ← (s + p/s)/2`, doubling the number of correct terms per round.
pub fn series_sqrt(p: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut s = alloc::vec![Complex64::zero(); n];
    if n == 0 {
        return s;
    }
    s[0] = c(1.0);
    let mut correct = 1;
    while correct < n {
        correct = (2 * correct).min(n);
        let q = series_mul(p, &series_reciprocal(&s[..correct], correct), correct);
        for k in 0..correct {
            s[k] = (s[k] + q[k]) * 0.5;
        }
    }
    s
}

/// Taylor coefficients `0..=max_order` of the Schur function of the
/// constant-coin sequence `(a, 0, a, 0, …)`:
/// `f(z) = (z² − 1 + sqrt((z² − 1)² + 4|a|² z²)) / (2 ā z²)`.
pub fn constant_coin_schur_coeffs(a: Complex64, max_order: usize) -> Result<Vec<Complex64>, WalkError> {
    if a.is_zero() {
        return Err(WalkError::ZeroCoin);
    }
    let n = max_order + 3;
    // (z² − 1)² + 4|a|² z² = 1 + (4|a|² − 2) z² + z⁴
    let mut p = alloc::vec![Complex64::zero(); n.max(5)];
    p[0] = c(1.0);
    p[2] = c(4.0 * a.norm_sqr() - 2.0);
    p[4] = c(1.0);
    let mut num = series_sqrt(&p, n);
    num[0] -= 1.0;
    if n > 2 {
        num[2] += 1.0;
    }
    // Constant and linear terms of the numerator vanish; divide by z².
    let scale = (a.conj() * 2.0).inv();
    Ok(num[2..n].iter().map(|&x| x * scale).collect())
}

/// Carathéodory coefficients `1, 2 μ̄_1, 2 μ̄_2, …` from moments `μ_1, μ_2, …`.
pub fn caratheodory_from_moments(moments: &[Complex64]) -> Vec<Complex64> {
    core::iter::once(c(1.0))
        .chain(moments.iter().map(|m| m.conj() * 2.0))
        .collect()
}

/// Whether `F(−z) F(z) = 1` through the given coefficients, i.e. the Schur
/// function is even and all odd Verblunsky parameters vanish.
pub fn traditional_walk_test(caratheodory: &[Complex64], tol: f64) -> bool {
    let reflected: Vec<Complex64> = caratheodory
        .iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 1 { -x } else { x })
        .collect();
    let prod = series_mul(caratheodory, &reflected, caratheodory.len());
    prod.iter()
        .enumerate()
        .all(|(k, &x)| (x - if k == 0 { c(1.0) } else { Complex64::zero() }).norm() <= tol)
}

/// Exact variant of [`traditional_walk_test`].
pub fn traditional_walk_test_exact(caratheodory: &crate::series::TruncatedSeries) -> bool {
    use num_traits::One;
    let prod = caratheodory * &caratheodory.reflect();
    prod.coefficients()
        .iter()
        .enumerate()
        .all(|(k, x)| if k == 0 { x.is_one() } else { x.is_zero() })
}
