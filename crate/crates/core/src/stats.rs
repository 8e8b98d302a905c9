//! Sample moments with compensated accumulation.
//!
//! Variances and covariances here back an algebraic-identity check between
//! two evaluation routes of the same statistic, so plain summation error is
//! not acceptable: near sign changes of the statistic the identity must
//! still hold to a tight relative tolerance. All sums are therefore carried
//! in unevaluated double-word form (two-sum / two-product), which keeps the
//! accumulated moments exact to far below the final rounding of the result.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[inline]
fn two_sum<F: Real>(a: F, b: F) -> (F, F) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

/// Requires |a| >= |b| or a == 0.
#[inline]
fn quick_two_sum<F: Real>(a: F, b: F) -> (F, F) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod<F: Real>(a: F, b: F) -> (F, F) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Double-word accumulator (value = hi + lo).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd<F> {
    hi: F,
    lo: F,
}

impl<F: Real> Dd<F> {
    pub fn zero() -> Self {
        Dd {
            hi: F::zero(),
            lo: F::zero(),
        }
    }

    pub fn from_scalar(x: F) -> Self {
        Dd { hi: x, lo: F::zero() }
    }

    #[inline]
    pub fn add_scalar(self, x: F) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = quick_two_sum(s, self.lo + e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(s, self.lo + o.lo + e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        self.add(Dd {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    #[inline]
    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_scalar(self, d: F) -> Self {
        let q0 = self.hi / d;
        let (p, e) = two_prod(q0, d);
        let r = ((self.hi - p) - e) + self.lo;
        let (hi, lo) = quick_two_sum(q0, r / d);
        Dd { hi, lo }
    }

    pub fn value(self) -> F {
        self.hi + self.lo
    }
}

/// Sum of the elements and sum of pairwise products, both in double-word
/// precision: (sum_x, sum_y, sum_xy).
fn cross_sums<F: Real>(x: &[F], y: &[F]) -> (Dd<F>, Dd<F>, Dd<F>) {
    let mut sx = Dd::zero();
    let mut sy = Dd::zero();
    let mut sxy = Dd::zero();
    for (&a, &b) in x.iter().zip(y) {
        sx = sx.add_scalar(a);
        sy = sy.add_scalar(b);
        let (p, e) = two_prod(a, b);
        sxy = sxy.add_scalar(p).add_scalar(e);
    }
    (sx, sy, sxy)
}

fn check_pair<F>(x: &[F], y: &[F]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::TooFewSamples {
            min: 2,
            got: x.len(),
        });
    }
    Ok(())
}

/// (sum_xy - sum_x * sum_y / n) / (n - 1), carried in double-word form.
fn centered_cross<F: Real>(sx: Dd<F>, sy: Dd<F>, sxy: Dd<F>, n: usize) -> Dd<F> {
    let nf = F::from_usize(n).expect("sample count representable");
    let correction = sx.mul(sy).div_scalar(nf);
    sxy.sub(correction).div_scalar(nf - F::one())
}

/// Unbiased sample variance (denominator n - 1).
pub fn sample_variance<F: Real>(x: &[F]) -> Result<F> {
    check_pair(x, x)?;
    let (sx, sy, sxx) = cross_sums(x, x);
    Ok(centered_cross(sx, sy, sxx, x.len()).value())
}

/// Unbiased sample covariance (denominator n - 1).
pub fn sample_covariance<F: Real>(x: &[F], y: &[F]) -> Result<F> {
    check_pair(x, y)?;
    let (sx, sy, sxy) = cross_sums(x, y);
    Ok(centered_cross(sx, sy, sxy, x.len()).value())
}

/// Sample Pearson correlation coefficient.
pub fn pearson_corr<F: Real>(x: &[F], y: &[F]) -> Result<F> {
    check_pair(x, y)?;
    let n = x.len();
    let (sx, sy, sxy) = cross_sums(x, y);
    let (_, _, sxx) = cross_sums(x, x);
    let (_, _, syy) = cross_sums(y, y);
    let cov = centered_cross(sx, sy, sxy, n).value();
    let vx = centered_cross(sx, sx, sxx, n).value();
    let vy = centered_cross(sy, sy, syy, n).value();
    if vx <= F::zero() || vy <= F::zero() {
        return Err(Error::DegenerateCorrelation);
    }
    let r = cov / (vx * vy).sqrt();
    Ok(r.min(F::one()).max(-F::one()))
}

/// Variance of the elementwise difference a - c - d, with the differences
/// expanded exactly so the result stays consistent with the covariance
/// decomposition of the same quantity.
pub fn variance_of_triple_diff<F: Real>(a: &[F], c: &[F], d: &[F]) -> Result<F> {
    check_pair(a, c)?;
    check_pair(a, d)?;
    let n = a.len();
    let nf = F::from_usize(n).expect("sample count representable");
    let mut s1 = Dd::zero();
    let mut s2 = Dd::zero();
    for i in 0..n {
        // a - c - d as an exact (hi, lo) pair
        let (t, e1) = two_sum(a[i], -c[i]);
        let (hi, e2) = two_sum(t, -d[i]);
        let lo = e1 + e2;
        s1 = s1.add_scalar(hi).add_scalar(lo);
        let (p, pe) = two_prod(hi, hi);
        let cross = (hi + hi) * lo;
        s2 = s2.add_scalar(p).add_scalar(pe).add_scalar(cross);
    }
    let correction = s1.mul(s1).div_scalar(nf);
    Ok(s2.sub(correction).div_scalar(nf - F::one()).value())
}

/// Spearman rank correlation of `y` against its index order.
///
/// Used for monotone-trend checks on sweep curves. Ties share averaged ranks.
pub fn spearman_against_index<F: Real>(y: &[F]) -> Result<F> {
    if y.len() < 2 {
        return Err(Error::TooFewSamples { min: 2, got: y.len() });
    }
    let n = y.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| y[i].partial_cmp(&y[j]).expect("finite values"));
    let mut ranks = vec![F::zero(); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && y[order[j + 1]] == y[order[i]] {
            j += 1;
        }
        let avg = F::from_usize(i + j).unwrap() / (F::one() + F::one()) + F::one();
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    let idx: Vec<F> = (0..n).map(|k| F::from_usize(k).unwrap()).collect();
    pearson_corr(&idx, &ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn variance_matches_textbook_values() {
        let x = [2.0_f64, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_relative_eq!(sample_variance(&x).unwrap(), 32.0 / 7.0, max_relative = 1e-15);
    }

    #[test]
    fn covariance_of_sequence_with_itself_is_its_variance() {
        let x: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin() * 5.0).collect();
        assert_relative_eq!(
            sample_covariance(&x, &x).unwrap(),
            sample_variance(&x).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn compensated_sum_survives_adversarial_magnitudes() {
        // 1e16 + 1 + ... + 1 - 1e16 loses the ones in naive f64 summation.
        let mut x = vec![1e16_f64];
        x.extend(std::iter::repeat(1.0).take(100));
        x.push(-1e16);
        let mut s = Dd::zero();
        for &v in &x {
            s = s.add_scalar(v);
        }
        assert_eq!(s.value(), 100.0);
    }

    #[test]
    fn pearson_on_identical_and_negated_inputs() {
        let x: Vec<f64> = (0..50).map(|i| (i as f64).cos()).collect();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(pearson_corr(&x, &x).unwrap(), 1.0);
        assert_eq!(pearson_corr(&x, &neg).unwrap(), -1.0);
    }

    #[test]
    fn pearson_rejects_constant_input() {
        let x = [1.0_f64; 8];
        let y = [1.0_f64, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
        assert_eq!(pearson_corr(&x, &y), Err(Error::DegenerateCorrelation));
    }

    #[test]
    fn triple_diff_variance_matches_direct_evaluation() {
        let a: Vec<f64> = (0..200).map(|i| (i as f64 * 0.11).sin() * 30.0).collect();
        let c: Vec<f64> = (0..200).map(|i| (i as f64 * 0.07).cos() * 20.0).collect();
        let d: Vec<f64> = (0..200).map(|i| ((i * i) as f64 * 0.013).sin() * 10.0).collect();
        let w: Vec<f64> = (0..200).map(|i| a[i] - c[i] - d[i]).collect();
        assert_relative_eq!(
            variance_of_triple_diff(&a, &c, &d).unwrap(),
            sample_variance(&w).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn spearman_detects_monotone_trends() {
        let up: Vec<f64> = (0..30).map(|i| (i as f64).sqrt()).collect();
        let down: Vec<f64> = up.iter().rev().copied().collect();
        assert_eq!(spearman_against_index(&up).unwrap(), 1.0);
        assert_eq!(spearman_against_index(&down).unwrap(), -1.0);
    }
}
