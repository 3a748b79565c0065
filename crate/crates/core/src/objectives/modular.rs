use std::collections::HashMap;

use crate::instance::ElementId;
use crate::oracle::Objective;

/// Additive objective `f(S) = Σ_{e∈S} w(e)` with non-negative weights.
#[derive(Debug, Clone)]
pub struct ModularObjective {
    weights: HashMap<ElementId, f64>,
}

impl ModularObjective {
    /// Weights indexed by element id `0..values.len()`.
    pub fn new(values: Vec<f64>) -> Self {
        let weights = values
            .into_iter()
            .enumerate()
            .map(|(i, w)| (i as ElementId, w))
            .collect();
        Self { weights }
    }

    pub fn from_pairs(pairs: &[(ElementId, f64)]) -> Self {
        Self {
            weights: pairs.iter().copied().collect(),
        }
    }

    pub fn weight(&self, id: ElementId) -> f64 {
        self.weights.get(&id).copied().unwrap_or(0.0)
    }
}

impl Objective for ModularObjective {
    fn value(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|&id| self.weight(id)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive() {
        let f = ModularObjective::new(vec![0.5, 0.5, 0.6]);
        assert_eq!(f.value(&[]), 0.0);
        assert_eq!(f.value(&[0, 1]), 1.0);
        assert!((f.value(&[0, 1, 2]) - 1.6).abs() < 1e-12);
        assert_eq!(f.value(&[9]), 0.0);
    }
}
