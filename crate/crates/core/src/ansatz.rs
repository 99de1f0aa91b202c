//! Closed-form description of the nonzero Verblunsky parameters of the Riesz
//! measure.
//!
//! Integers are split into the residue classes
//! `v_j = { ((-2)^j - 1)/3 + k·2^{j+1} : k ∈ ℤ }`, `j ≥ 0`, which partition
//! ℤ. Counting the positive members of each class up to `n` and weighting by
//! an alternating sequence gives the backbone `A_i`. Every nonzero parameter
//! `ξ_m = α_{4m-1}` is then a simple rational function of one backbone value.
//!
//! All arithmetic here is exact (`i128` for the integer sequences, big
//! rationals for the parameters).

use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::schur::{riesz_nonnull_parameters, SchurError};
use crate::series::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnsatzError {
    /// The alternating weight sequence starts at index 4.
    IndexOutOfRange { index: u32 },
    /// The offset recipe covers `j ≥ 15` with `j ≡ 3 (mod 4)` only.
    OutOfDomain { index: u64 },
}

impl fmt::Display for AnsatzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnsatzError::IndexOutOfRange { index } => {
                write!(f, "weight index {index} is below 4")
            }
            AnsatzError::OutOfDomain { index } => write!(
                f,
                "offset recipe does not cover α_{index} (needs j ≥ 15 and j ≡ 3 mod 4)"
            ),
        }
    }
}

impl core::error::Error for AnsatzError {}

fn pow_neg2(j: u32) -> i128 {
    (-2i128).pow(j)
}

/// Representative `((-2)^j - 1)/3` of the class `v_j`.
pub fn class_base(j: u32) -> i128 {
    (pow_neg2(j) - 1) / 3
}

/// Spacing `2^{j+1}` of the class `v_j`.
pub fn class_modulus(j: u32) -> i128 {
    1i128 << (j + 1)
}

pub fn class_contains(j: u32, t: i128) -> bool {
    (t - class_base(j)).rem_euclid(class_modulus(j)) == 0
}

/// Smallest positive member of `v_j`.
pub fn first_positive(j: u32) -> i128 {
    if j == 0 {
        return 2;
    }
    let odd = if j % 2 == 1 { 2 } else { 0 };
    class_base(j) + odd * (1i128 << j)
}

/// Weight attached to class `n - 4`: `8 + ((-2)^{n-4} - 1)·32/3`, for `n ≥ 4`.
/// The sequence runs 8, −24, 40, −88, … with differences `(-2)^{n+1}`.
pub fn class_weight(n: u32) -> Result<i128, AnsatzError> {
    if n < 4 {
        return Err(AnsatzError::IndexOutOfRange { index: n });
    }
    Ok(8 + (pow_neg2(n - 4) - 1) * 32 / 3)
}

/// Number of positive members of `v_j` that are at most `n`.
pub fn count_up_to(j: u32, n: i128) -> i128 {
    let m = class_modulus(j);
    (n + m - first_positive(j)).div_euclid(m)
}

/// `Σ_j count_up_to(j, n) · class_weight(j + 4)`.
///
/// Every class with `j ≥ 1` has `first_positive(j) ≥ (2^j - 1)/3`, so once
/// that bound exceeds `n` no later class contributes.
pub fn backbone_offset(n: u64) -> i128 {
    let n = i128::from(n);
    let mut total = 0;
    for j in 0u32.. {
        if j >= 1 && ((1i128 << j) - 1) / 3 > n {
            break;
        }
        let w = count_up_to(j, n);
        if w > 0 {
            total += w * class_weight(j + 4).expect("j + 4 >= 4");
        }
    }
    total
}

/// `A_i = 13 + backbone_offset(i - 1)`, for `i ≥ 1`.
pub fn backbone_value(i: u64) -> i128 {
    assert!(i >= 1, "backbone is indexed from 1");
    13 + backbone_offset(i - 1)
}

/// Split of `m ≥ 1` as `m = 1/3 + 4^p (3n - 1)/3` with `n ≢ 3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BIndex {
    pub m: u64,
    pub n: u64,
    pub p: u32,
}

impl BIndex {
    /// `(1 + 4^p (3n - 1)) / 3`.
    pub fn reconstruct(&self) -> u128 {
        (1 + (1u128 << (2 * self.p)) * (3 * u128::from(self.n) - 1)) / 3
    }
}

/// Strips factors of 4 from `3m - 1`.
pub fn b_decompose(m: u64) -> BIndex {
    assert!(m >= 1, "B-index decomposition needs m >= 1");
    let mut q = 3 * u128::from(m) - 1;
    let mut p = 0;
    while q % 4 == 0 {
        q /= 4;
        p += 1;
    }
    BIndex {
        m,
        n: ((q + 1) / 3) as u64,
        p,
    }
}

fn rat(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Memoized backbone `A_1, A_2, …` with the derived constants and closed forms.
///
/// Extension needs `&mut self`; once extended far enough the `try_*`
/// accessors work through a shared reference.
#[derive(Clone, Debug, Default)]
pub struct Backbone {
    values: Vec<i128>,
}

impl Backbone {
    pub fn new() -> Self {
        Self::default()
    }

    /// Backbone holding `A_1 … A_len`.
    pub fn with_len(len: usize) -> Self {
        let mut b = Self::new();
        b.extend_to(len);
        b
    }

    /// Backbone long enough for `xi(1..=max_m)`.
    pub fn for_parameters(max_m: u64) -> Self {
        Self::with_len(Self::len_needed_for_xi(max_m))
    }

    fn len_needed_for_xi(max_m: u64) -> usize {
        // n ≤ m, s = n/4, K_s needs A_{ceil(s/2)}.
        (max_m / 8 + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn extend_to(&mut self, len: usize) {
        let start = self.values.len();
        if len > start {
            self.values.reserve(len - start);
            self.values
                .extend((start..len).map(|k| backbone_value(k as u64 + 1)));
        }
    }

    pub fn try_get(&self, i: usize) -> Option<i128> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    /// `A_i`, extending the memo as needed.
    pub fn get(&mut self, i: usize) -> i128 {
        self.extend_to(i);
        self.try_get(i).expect("backbone is indexed from 1")
    }

    pub fn try_k_constant(&self, i: usize) -> Option<i128> {
        if i == 0 {
            return Some(3);
        }
        let a = self.try_get(i.div_ceil(2))?;
        Some(if i % 2 == 1 { 3 * a } else { 3 * (a - 4) })
    }

    /// `K_0 = 3`, `K_{2i-1} = 3 A_i`, `K_{2i} = 3 (A_i - 4)`.
    pub fn k_constant(&mut self, i: usize) -> i128 {
        self.extend_to(i.div_ceil(2));
        self.try_k_constant(i).expect("extended above")
    }

    pub fn try_xi(&self, m: u64) -> Option<Rational> {
        let b = b_decompose(m);
        let s = (b.n / 4) as usize;
        let k = self.try_k_constant(s)?;
        let scale = 1i128 << (2 * b.p);
        Some(match b.n % 4 {
            0 => -rat(2 * scale + 1, k * scale),
            1 => rat(4 * scale - 1, (k + 3) * scale),
            2 => -rat(2 * scale + 1, (k + 6) * scale),
            _ => unreachable!("3m - 1 = 4^p q with 4 ∤ q rules out n ≡ 3 (mod 4)"),
        })
    }

    /// `ξ_m = α_{4m-1}` from the closed form indexed by [`b_decompose`].
    pub fn xi(&mut self, m: u64) -> Rational {
        self.extend_to(Self::len_needed_for_xi(m));
        self.try_xi(m).expect("extended above")
    }

    /// `α_j` of the measure `μ`: zero unless `j ≡ 3 (mod 4)`.
    pub fn alpha(&mut self, j: u64) -> Rational {
        if j % 4 == 3 {
            self.xi((j + 1) / 4)
        } else {
            Rational::zero()
        }
    }

    /// `α_j` from the backbone anchors `α_{16(2p-1)-1} = -1/A_p` and the seven
    /// offsets filled in between consecutive anchors.
    pub fn offset_alpha(&mut self, j: u64) -> Result<Rational, AnsatzError> {
        if j < 15 || j % 4 != 3 {
            return Err(AnsatzError::OutOfDomain { index: j });
        }
        let p = ((j + 17) / 32) as usize;
        let t = (j + 17) % 32;
        let a = self.get(p);
        Ok(match t {
            0 => rat(-1, a),
            4 => rat(1, a + 1),
            8 => rat(-1, a + 2),
            12 => rat(-3, a - 1),
            16 => rat(-1, a - 4),
            20 => rat(1, a - 3),
            24 => rat(-1, a - 2),
            28 => {
                let next = self.get(p + 1);
                rat(next - a + 2, next + a - 2)
            }
            _ => unreachable!("j ≡ 3 (mod 4) gives t ≡ 0 (mod 4)"),
        })
    }

    /// The three families of limit points of `ξ`, `count` members each.
    pub fn limit_values(&mut self, count: usize) -> LimitFamilies {
        self.extend_to(count.div_ceil(2) + 1);
        let k = |b: &Self, i: usize| b.try_k_constant(i).expect("extended above");
        LimitFamilies {
            negative: (1..=count).map(|i| rat(-2, k(self, i))).collect(),
            positive: (0..count).map(|i| rat(4, k(self, i) + 3)).collect(),
            shifted: (0..count).map(|i| rat(-2, k(self, i) + 6)).collect(),
        }
    }
}

/// Limit points of the nonzero parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitFamilies {
    /// `-2/K_i`, `i = 1, 2, …`
    pub negative: Vec<Rational>,
    /// `4/(K_i + 3)`, `i = 0, 1, …`
    pub positive: Vec<Rational>,
    /// `-2/(K_i + 6)`, `i = 0, 1, …`
    pub shifted: Vec<Rational>,
}

pub fn k_constant(i: usize) -> i128 {
    Backbone::new().k_constant(i)
}

pub fn xi(m: u64) -> Rational {
    Backbone::new().xi(m)
}

pub fn alpha(j: u64) -> Rational {
    Backbone::new().alpha(j)
}

pub fn offset_alpha(j: u64) -> Result<Rational, AnsatzError> {
    Backbone::new().offset_alpha(j)
}

pub fn limit_values(count: usize) -> LimitFamilies {
    Backbone::new().limit_values(count)
}

/// First disagreement between the closed form and the Schur algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based index `m` of `ξ_m`.
    pub m: u64,
    pub closed_form: Rational,
    pub schur: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Wall-clock time, when the caller has a clock to measure it with.
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn success(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `ξ_1 … ξ_count` with the Schur algorithm run on `ν`, exactly.
pub fn verify_ansatz(count: usize) -> Result<VerificationReport, SchurError> {
    let schur = riesz_nonnull_parameters(count)?;
    let backbone = Backbone::for_parameters(count as u64);
    let first_mismatch = schur.into_iter().enumerate().find_map(|(k, s)| {
        let m = k as u64 + 1;
        let closed_form = backbone.try_xi(m).expect("backbone sized for count");
        (closed_form != s).then_some(Mismatch {
            m,
            closed_form,
            schur: s,
        })
    });
    Ok(VerificationReport {
        checked: count,
        first_mismatch,
        elapsed: None,
    })
}
