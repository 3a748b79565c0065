use crate::error::{Error, Result};

/// Geometric threshold schedule of the thresholding stage.
///
/// Starts at `λ/(αK)` and divides by `1+ε` after every pass while the
/// threshold is still above `λ/(2K)`. For `α·f(OPT) ≤ λ ≤ f(OPT)` the first
/// threshold is at least `f(OPT)/K` and the last one at most `f(OPT)/(2K)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSchedule {
    pub lambda: f64,
    pub alpha: f64,
    pub epsilon: f64,
    pub capacity: f64,
}

impl ThresholdSchedule {
    pub fn new(lambda: f64, alpha: f64, epsilon: f64, capacity: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidLambda(lambda));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!("alpha must be in (0, 1], got {alpha}")));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(capacity.is_finite() && capacity > 0.0) {
            return Err(Error::InvalidCapacity(capacity));
        }
        Ok(Self {
            lambda,
            alpha,
            epsilon,
            capacity,
        })
    }

    pub fn initial(&self) -> f64 {
        self.lambda / (self.alpha * self.capacity)
    }

    pub fn floor(&self) -> f64 {
        self.lambda / (2.0 * self.capacity)
    }

    /// All thresholds in pass order.
    pub fn thresholds(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut tau = self.initial();
        let floor = self.floor();
        while tau > floor {
            out.push(tau);
            tau /= 1.0 + self.epsilon;
        }
        out
    }

    /// Number of thresholding passes, `⌈log_{1+ε}(2/α)⌉` up to rounding.
    pub fn pass_count(&self) -> usize {
        self.thresholds().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_example_schedule() {
        let s = ThresholdSchedule::new(1.0, 1.0, 0.5, 2.0).unwrap();
        let t = s.thresholds();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], 0.5);
        assert!((t[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pass_count_matches_log_ratio() {
        for &(alpha, eps) in &[(1.0, 0.1), (1.0 / 6.0, 0.1), (0.5, 0.25), (1.0 / 6.0, 0.5)] {
            let s = ThresholdSchedule::new(3.7, alpha, eps, 9.0).unwrap();
            let expected = ((2.0 / alpha).ln() / (1.0f64 + eps).ln()).ceil() as usize;
            assert!(s.pass_count().abs_diff(expected) <= 1, "{alpha} {eps}");
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            ThresholdSchedule::new(0.0, 1.0, 0.1, 1.0),
            Err(Error::InvalidLambda(_))
        ));
        assert!(ThresholdSchedule::new(1.0, 0.0, 0.1, 1.0).is_err());
        assert!(ThresholdSchedule::new(1.0, 1.0, 0.0, 1.0).is_err());
    }
}
