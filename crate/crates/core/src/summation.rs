//! Compensated floating-point accumulation.
//!
//! [`Neumaier`] keeps a running correction term alongside the sum, which keeps
//! the result accurate when addends span many orders of magnitude (the csc³
//! ring sums cover ~18 decades at N = 10⁶). Accumulators can be merged, so a
//! fixed block decomposition gives the same bits no matter how the blocks were
//! scheduled.

use std::iter::Sum;
use std::ops::AddAssign;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for Neumaier {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl Sum<f64> for Neumaier {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().sum::<Neumaier>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_next_to_large_ones() {
        let values = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = values.iter().sum();
        assert_eq!(naive, 1.0);
        assert_eq!(compensated_sum(values), 2.0);
    }

    #[test]
    fn merge_matches_sequential_for_split_input() {
        let xs: Vec<f64> = (1..10_000).map(|i| 1.0 / (i as f64).powi(3)).collect();
        let whole = compensated_sum(xs.iter().copied());
        let (a, b) = xs.split_at(4_321);
        let mut left: Neumaier = a.iter().copied().sum();
        let right: Neumaier = b.iter().copied().sum();
        left.merge(&right);
        assert!((left.value() - whole).abs() <= 2.0 * f64::EPSILON * whole);
    }
}
