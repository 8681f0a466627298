//! Scalar abstraction and the small statistics kernel shared by the
//! discovery and abstraction modules.
//!
//! All duration/statistics math is generic over [`Scalar`] so artifacts can
//! be computed in `f32` or `f64`; the crate-root types default to `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used for durations and statistics.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Display + Debug + Copy + PartialOrd + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Display + Debug + Copy + PartialOrd + 'static
{
}

/// Converts a microsecond duration to seconds without routing the whole
/// magnitude through the scalar's mantissa.
pub fn micros_to_seconds<F: Scalar>(us: i64) -> F {
    let secs = us / 1_000_000;
    let rem = us % 1_000_000;
    F::from_i64(secs).unwrap() + F::from_i64(rem).unwrap() / F::from_i64(1_000_000).unwrap()
}

/// Arithmetic mean; zero for an empty slice.
pub fn mean<F: Scalar>(values: &[F]) -> F {
    if values.is_empty() {
        return F::zero();
    }
    let sum = values.iter().fold(F::zero(), |acc, v| acc + *v);
    sum / F::from_usize(values.len()).unwrap()
}

/// Population standard deviation (two-pass); zero for fewer than two values.
pub fn population_stdev<F: Scalar>(values: &[F]) -> F {
    if values.len() < 2 {
        return F::zero();
    }
    let m = mean(values);
    let var = values
        .iter()
        .fold(F::zero(), |acc, v| acc + (*v - m) * (*v - m))
        / F::from_usize(values.len()).unwrap();
    var.sqrt()
}

/// Median of a non-empty sorted slice; the mean of the two middle values for
/// even lengths.
pub fn median_sorted<F: Scalar>(sorted: &[F]) -> F {
    let n = sorted.len();
    debug_assert!(n > 0);
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / F::from_u8(2).unwrap()
    }
}

/// Quantile with lower interpolation: the element at index `floor(q * (n-1))`
/// of a non-empty sorted slice.
pub fn quantile_lower<F: Scalar>(sorted: &[F], q: f64) -> F {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&q));
    let idx = (q * (sorted.len() - 1) as f64).floor() as usize;
    sorted[idx.min(sorted.len() - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn micros_conversion_is_exact_for_whole_seconds() {
        assert_eq!(micros_to_seconds::<f64>(3_600_000_000), 3600.0);
        assert_eq!(micros_to_seconds::<f64>(1_500_000), 1.5);
        assert_eq!(micros_to_seconds::<f32>(7_200_000_000), 7200.0f32);
    }

    #[test]
    fn population_stdev_matches_hand_computation() {
        // {3600, 7200}: deviations +-1800
        let s = population_stdev(&[3600.0, 7200.0]);
        assert!((s - 1800.0f64).abs() < 1e-9);
        assert_eq!(population_stdev::<f64>(&[5.0]), 0.0);
    }

    #[test]
    fn quantile_lower_uses_floor_index() {
        let xs = [2.0, 3.0, 3.0];
        assert_eq!(quantile_lower(&xs, 0.0), 2.0);
        assert_eq!(quantile_lower(&xs, 0.5), 3.0);
        assert_eq!(quantile_lower(&xs, 1.0), 3.0);
        let ys = [3600.0, 7200.0, 14400.0];
        assert_eq!(quantile_lower(&ys, 0.75), 7200.0);
    }

    #[test]
    fn median_averages_middle_pair() {
        assert_eq!(median_sorted(&[3600.0, 7200.0]), 5400.0);
        assert_eq!(median_sorted(&[1.0, 2.0, 3.0]), 2.0);
    }
}
