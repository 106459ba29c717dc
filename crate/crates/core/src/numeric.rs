//! Summary statistics and order-independent summation.

/// Pairwise (cascade) summation; error grows as `O(log n)` rather than `O(n)`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Sorts then sums pairwise, so the result depends only on the multiset of
/// values and not on the order they were produced in.
pub fn canonical_sum(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    pairwise_sum(&xs)
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| pairwise_sum(xs) / xs.len() as f64)
}

/// Unbiased sample variance (`n - 1` denominator).
pub fn variance(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs)?;
    let sq: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    Some(pairwise_sum(&sq) / (xs.len() - 1) as f64)
}

/// Standard error of the sample mean.
pub fn standard_error(xs: &[f64]) -> Option<f64> {
    variance(xs).map(|v| (v / xs.len() as f64).sqrt())
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

/// Median of the means of consecutive blocks of `block_size` values. A short
/// trailing block is ignored unless it is the only one.
pub fn median_of_means(xs: &[f64], block_size: usize) -> Option<f64> {
    assert!(block_size > 0, "block size must be positive");
    let full = xs.len() / block_size;
    if full == 0 {
        return mean(xs);
    }
    let means: Vec<f64> = xs
        .chunks_exact(block_size)
        .map(|b| mean(b).expect("non-empty block"))
        .collect();
    median(&means)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(mean(&[]), None);
        assert_eq!(mean(&[1.0, 2.0, 6.0]), Some(3.0));
        assert_eq!(variance(&[1.0]), None);
        assert_eq!(variance(&[1.0, 3.0]), Some(2.0));
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn median_of_means_blocks() {
        let xs = [1.0, 3.0, 10.0, 10.0, 100.0, 0.0, 7.0];
        // block means 2, 10, 50; the trailing 7 is dropped
        assert_eq!(median_of_means(&xs, 2), Some(10.0));
        assert_eq!(median_of_means(&xs[..1], 2), Some(1.0));
    }

    #[test]
    fn pairwise_beats_naive_on_long_sums() {
        let xs = vec![0.1; 1_000_000];
        let exact = 100_000.0;
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - exact).abs() <= (naive - exact).abs());
        assert!((pairwise_sum(&xs) - exact).abs() / exact < 1e-12);
    }

    proptest! {
        #[test]
        fn canonical_sum_ignores_order(mut xs in prop::collection::vec(-1e6f64..1e6, 0..200)) {
            let a = canonical_sum(xs.clone());
            xs.reverse();
            prop_assert_eq!(a.to_bits(), canonical_sum(xs).to_bits());
        }
    }
}
