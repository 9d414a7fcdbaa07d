//! Problem instances: the hidden values and the imprecision radius.

use crate::error::{Error, Result};
use crate::ElementId;

/// Hidden ground truth for one run.
///
/// Algorithms never see an `Instance`; they only talk to a
/// [`Comparator`](crate::Comparator) built from it. Verifiers read it
/// directly.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    values: Vec<f64>,
    delta: f64,
}

impl Instance {
    pub fn new(values: Vec<f64>, delta: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInstance("no elements".into()));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidInstance(format!(
                "delta must be positive and finite, got {delta}"
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "value of element {pos} is not finite"
            )));
        }
        Ok(Self { values, delta })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, id: ElementId) -> f64 {
        self.values[id]
    }

    /// Largest value in the instance.
    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether a comparison between `i` and `j` is unconstrained.
    pub fn within_delta(&self, i: ElementId, j: ElementId) -> bool {
        (self.values[i] - self.values[j]).abs() <= self.delta
    }

    /// Same instance with every value and the radius multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.values.iter().map(|v| v * factor).collect(),
            self.delta * factor,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_bad_delta() {
        assert!(Instance::new(vec![], 1.0).is_err());
        assert!(Instance::new(vec![1.0], 0.0).is_err());
        assert!(Instance::new(vec![1.0], -1.0).is_err());
        assert!(Instance::new(vec![1.0], f64::NAN).is_err());
        assert!(Instance::new(vec![f64::INFINITY], 1.0).is_err());
    }

    #[test]
    fn within_delta_is_inclusive() {
        let inst = Instance::new(vec![0.0, 1.0, 2.5], 1.0).unwrap();
        assert!(inst.within_delta(0, 1));
        assert!(!inst.within_delta(1, 2));
        assert_eq!(inst.max_value(), 2.5);
    }
}
