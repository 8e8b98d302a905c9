//! MPEG-2 deadzone scalar quantization of a single DCT coefficient.
//!
//! The step size is `delta = q * weight / 8` where `q` is the quantization
//! parameter (2..=31) and `weight` one entry of the 8x8 weighting matrix.
//! Quantization maps a coefficient `u` to the index
//! `sgn(u) * floor((|u| + delta * (1 - alpha/2)) / delta)`, which leaves a
//! deadzone of total width `alpha * delta` around zero. Reconstruction is
//! mode dependent: intra levels sit on `floor(k * delta)`, inter levels on
//! `floor(k * delta + delta/2)`, so the first nonzero inter level is shifted
//! 3/2 of a step away from zero.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

pub const Q_MIN: u8 = 2;
pub const Q_MAX: u8 = 31;

/// Coding mode selecting the reconstruction rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantMode {
    Intra,
    Inter,
}

/// 8x8 table of per-coefficient quantization weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightingMatrix<F> {
    entries: [[F; 8]; 8],
}

impl<F: Real> WeightingMatrix<F> {
    pub fn new(entries: [[F; 8]; 8]) -> Result<Self> {
        for row in &entries {
            for &w in row {
                if !(w > F::zero()) {
                    return Err(Error::NonPositiveWeight(w.to_f64_lossy()));
                }
            }
        }
        Ok(WeightingMatrix { entries })
    }

    /// Default intra table (the ffmpeg MPEG-2 one).
    pub fn intra_default() -> Self {
        const S_INTRA: [[u16; 8]; 8] = [
            [8, 16, 19, 22, 26, 27, 29, 34],
            [16, 16, 22, 24, 27, 29, 34, 37],
            [19, 22, 26, 27, 29, 34, 34, 38],
            [22, 22, 26, 27, 29, 34, 37, 40],
            [22, 26, 27, 29, 32, 35, 40, 48],
            [26, 27, 29, 32, 35, 40, 48, 58],
            [26, 27, 29, 34, 38, 46, 56, 69],
            [27, 29, 35, 38, 46, 56, 69, 83],
        ];
        let mut entries = [[F::zero(); 8]; 8];
        for (i, row) in S_INTRA.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                entries[i][j] = real(w as f64);
            }
        }
        WeightingMatrix { entries }
    }

    /// Default inter table: all entries 16.
    pub fn inter_default() -> Self {
        WeightingMatrix {
            entries: [[real(16.0); 8]; 8],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> F {
        self.entries[row][col]
    }
}

/// One scalar quantizer configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantSpec<F> {
    q: u8,
    alpha: F,
    weight: F,
    mode: QuantMode,
}

impl<F: Real> QuantSpec<F> {
    /// Builds a validated spec. `q` must lie in 2..=31, `alpha` in [1, 2],
    /// and `weight` must be strictly positive.
    pub fn new(q: u8, alpha: F, weight: F, mode: QuantMode) -> Result<Self> {
        if !(Q_MIN..=Q_MAX).contains(&q) {
            return Err(Error::QuantParamRange(q as i64));
        }
        if !(alpha >= F::one() && alpha <= real(2.0)) {
            return Err(Error::DeadzoneFactor(alpha.to_f64_lossy()));
        }
        if !(weight > F::zero()) {
            return Err(Error::NonPositiveWeight(weight.to_f64_lossy()));
        }
        Ok(QuantSpec {
            q,
            alpha,
            weight,
            mode,
        })
    }

    /// Spec at the default analyzed coefficient position (weight 16).
    pub fn with_default_weight(q: u8, alpha: F, mode: QuantMode) -> Result<Self> {
        Self::new(q, alpha, real(16.0), mode)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn weight(&self) -> F {
        self.weight
    }

    pub fn mode(&self) -> QuantMode {
        self.mode
    }

    /// Quantization step `q * weight / 8`, kept as an exact real.
    pub fn delta(&self) -> F {
        quant_step(self.q, self.weight).expect("validated on construction")
    }

    /// Deadzone total width `alpha * delta`.
    pub fn deadzone(&self) -> F {
        self.alpha * self.delta()
    }
}

/// Sign convention used by the quantization formulas: sgn(0) = 0.
#[inline]
fn sgn<F: Real>(x: F) -> F {
    if x > F::zero() {
        F::one()
    } else if x < F::zero() {
        -F::one()
    } else {
        F::zero()
    }
}

/// Quantization step size `q * weight / 8`.
pub fn quant_step<F: Real>(q: u8, weight: F) -> Result<F> {
    if !(Q_MIN..=Q_MAX).contains(&q) {
        return Err(Error::QuantParamRange(q as i64));
    }
    if !(weight > F::zero()) {
        return Err(Error::NonPositiveWeight(weight.to_f64_lossy()));
    }
    Ok(real::<F>(q as f64) * weight / real(8.0))
}

/// Deadzone width `alpha * delta`.
pub fn deadzone_width<F: Real>(alpha: F, delta: F) -> Result<F> {
    if !(alpha >= F::one() && alpha <= real(2.0)) {
        return Err(Error::DeadzoneFactor(alpha.to_f64_lossy()));
    }
    if !(delta > F::zero()) {
        return Err(Error::NonPositiveWeight(delta.to_f64_lossy()));
    }
    Ok(alpha * delta)
}

/// Quantization index of the coefficient `u`.
pub fn quantize<F: Real>(u: F, spec: &QuantSpec<F>) -> i64 {
    let delta = spec.delta();
    let offset = delta * (F::one() - spec.alpha() / real(2.0));
    let magnitude = ((u.abs() + offset) / delta).floor();
    (sgn(u) * magnitude)
        .to_i64()
        .expect("quantization index overflows i64")
}

/// Reconstruction of a quantization index under the spec's coding mode.
pub fn dequantize<F: Real>(q_idx: i64, spec: &QuantSpec<F>) -> F {
    let delta = spec.delta();
    let k = real::<F>(q_idx.unsigned_abs() as f64);
    let level = match spec.mode() {
        QuantMode::Intra => (delta * k).floor(),
        QuantMode::Inter => (delta * k + delta / real(2.0)).floor(),
    };
    sgn(real::<F>(q_idx as f64)) * level
}

/// Quantize-then-dequantize roundtrip.
pub fn requantize<F: Real>(u: F, spec: &QuantSpec<F>) -> F {
    dequantize(quantize(u, spec), spec)
}
