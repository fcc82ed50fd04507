//! Small numeric helpers shared by the metric modules.

use crate::scalar::Scalar;

/// Neumaier-compensated summation. Deterministic for a fixed input order.
pub fn compensated_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

pub fn mean<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    Some(compensated_sum(values.iter().copied()) / T::of_usize(values.len()))
}

/// Median of `values`, reordering the slice in place. Even lengths give the
/// midpoint of the two central order statistics.
pub fn median_in_place<T: Scalar>(values: &mut [T]) -> Option<T> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let cmp = |a: &T, b: &T| a.partial_cmp(b).expect("finite values");
    let mid = n / 2;
    let (lower, upper, _) = values.select_nth_unstable_by(mid, cmp);
    let upper = *upper;
    if n % 2 == 1 {
        return Some(upper);
    }
    let lower = lower
        .iter()
        .copied()
        .fold(T::neg_infinity(), |acc, v| if v > acc { v } else { acc });
    Some(lower + (upper - lower) / (T::one() + T::one()))
}

pub fn median<T: Scalar>(values: &[T]) -> Option<T> {
    let mut scratch = values.to_vec();
    median_in_place(&mut scratch)
}

/// Sample mean and standard error of the mean. The standard error is zero for
/// a single observation.
pub fn mean_and_stderr<T: Scalar>(values: &[T]) -> Option<(T, T)> {
    let m = mean(values)?;
    let n = values.len();
    if n < 2 {
        return Some((m, T::zero()));
    }
    let ss = compensated_sum(values.iter().map(|&v| (v - m) * (v - m)));
    let var = ss / T::of_usize(n - 1);
    Some((m, (var / T::of_usize(n)).sqrt()))
}

/// Average ranks (1-based), ties sharing the mean of their positions.
pub fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut v = vec![1e16_f64];
        v.extend(std::iter::repeat_n(1.0, 1000));
        v.push(-1e16);
        assert_eq!(compensated_sum(v), 1000.0);
    }

    #[test]
    fn median_conventions() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[10.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&[5.0_f32]), Some(5.0));
        assert_eq!(median::<f64>(&[]), None);
    }

    #[test]
    fn stderr_of_constant_is_zero() {
        let (m, se) = mean_and_stderr(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!((m, se), (2.0, 0.0));
        assert_eq!(mean_and_stderr(&[4.0]).unwrap(), (4.0, 0.0));
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(ranks(&[10.0, 20.0, 10.0, 5.0]), vec![2.5, 4.0, 2.5, 1.0]);
    }
}
