//! One-pass mean/variance accumulation with mergeable partials.

/// Welford accumulator: count, running mean, and sum of squared deviations.
///
/// Partials can be merged, and a fold over partials in a fixed order is
/// bit-reproducible no matter which worker produced each partial.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    /// Combines two accumulators as if their samples had been concatenated.
    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n1 = self.count as f64;
        let n2 = other.count as f64;
        let total = n1 + n2;
        let delta = other.mean - self.mean;
        self.mean += delta * (n2 / total);
        self.m2 += other.m2 + delta * delta * (n1 * n2 / total);
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance (divisor `count - 1`); zero below two samples.
    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn matches_two_pass_computation() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        let mut acc = RunningMoments::new();
        for &x in &xs {
            acc.push(x);
        }
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert_abs_diff_eq!(acc.mean(), mean, epsilon = 1e-12);
        assert_abs_diff_eq!(acc.sample_variance(), var, epsilon = 1e-12);
    }

    #[test]
    fn merge_equals_concatenation() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut whole = RunningMoments::new();
        for &x in &xs {
            whole.push(x);
        }
        let mut left = RunningMoments::new();
        let mut right = RunningMoments::new();
        for &x in &xs[..33] {
            left.push(x);
        }
        for &x in &xs[33..] {
            right.push(x);
        }
        left.merge(&right);
        assert_eq!(left.count(), whole.count());
        assert_abs_diff_eq!(left.mean(), whole.mean(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            left.sample_variance(),
            whole.sample_variance(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn merge_with_empty_is_identity() {
        let mut acc = RunningMoments::new();
        acc.push(1.5);
        acc.push(2.5);
        let before = acc;
        acc.merge(&RunningMoments::new());
        assert_eq!(acc, before);

        let mut empty = RunningMoments::new();
        empty.merge(&before);
        assert_eq!(empty, before);
    }

    #[test]
    fn degenerate_counts() {
        let mut acc = RunningMoments::new();
        assert_eq!(acc.sample_variance(), 0.0);
        acc.push(3.0);
        assert_eq!(acc.mean(), 3.0);
        assert_eq!(acc.sample_variance(), 0.0);
    }
}
