use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::Rng;

use crate::instance::{Element, ElementId};
use crate::oracle::Objective;

/// Which form of the hidden-pair function to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HiddenPairVariant {
    /// `f(S) = 1` only for the hidden pair itself; submodular on feasible sets.
    Exact,
    /// Additionally `f(S) = 1` for every set of more than two items, which
    /// makes `f` monotone everywhere.
    Monotone,
}

/// Adversarial objective over items `0..n` each costing half the capacity.
///
/// `f(∅) = 0` and `f(S) = ½` for every other set, except that the hidden
/// pair (when present) is worth 1. Any feasible query touches at most two
/// items, so finding the pair takes a number of queries quadratic in `n`.
/// The objective records whether the pair was ever evaluated.
#[derive(Debug)]
pub struct HiddenPairObjective {
    n: usize,
    pair: Option<(ElementId, ElementId)>,
    variant: HiddenPairVariant,
    pair_hit: AtomicBool,
    pair_queries: AtomicU64,
}

impl HiddenPairObjective {
    pub fn new(n: usize, pair: Option<(ElementId, ElementId)>, variant: HiddenPairVariant) -> Self {
        if let Some((i, j)) = pair {
            assert!(i != j, "hidden pair needs two distinct items");
            assert!((i as usize) < n && (j as usize) < n, "hidden pair out of range");
        }
        let pair = pair.map(|(i, j)| (i.min(j), i.max(j)));
        Self {
            n,
            pair,
            variant,
            pair_hit: AtomicBool::new(false),
            pair_queries: AtomicU64::new(0),
        }
    }

    /// Draws the hidden pair uniformly among all pairs.
    pub fn random<R: Rng + ?Sized>(n: usize, variant: HiddenPairVariant, rng: &mut R) -> Self {
        assert!(n >= 2);
        let i = rng.gen_range(0..n as ElementId);
        let mut j = rng.gen_range(0..n as ElementId - 1);
        if j >= i {
            j += 1;
        }
        Self::new(n, Some((i, j)), variant)
    }

    /// Items `0..n`, each of cost `capacity / 2`.
    pub fn elements(&self, capacity: f64) -> Vec<Element> {
        (0..self.n as ElementId)
            .map(|id| Element::new(id, capacity / 2.0))
            .collect()
    }

    pub fn pair(&self) -> Option<(ElementId, ElementId)> {
        self.pair
    }

    /// Whether any evaluation so far was exactly the hidden pair.
    pub fn pair_was_queried(&self) -> bool {
        self.pair_hit.load(Ordering::SeqCst)
    }

    pub fn pair_query_count(&self) -> u64 {
        self.pair_queries.load(Ordering::SeqCst)
    }

    fn is_pair(&self, set: &[ElementId]) -> bool {
        match (self.pair, set) {
            (Some((i, j)), &[a, b]) => (a.min(b), a.max(b)) == (i, j),
            _ => false,
        }
    }
}

impl Objective for HiddenPairObjective {
    fn value(&self, set: &[ElementId]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        if self.is_pair(set) {
            self.pair_hit.store(true, Ordering::SeqCst);
            self.pair_queries.fetch_add(1, Ordering::SeqCst);
            return 1.0;
        }
        if self.variant == HiddenPairVariant::Monotone && self.pair.is_some() && set.len() > 2 {
            return 1.0;
        }
        0.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let f = HiddenPairObjective::new(5, Some((3, 1)), HiddenPairVariant::Exact);
        assert_eq!(f.value(&[]), 0.0);
        assert_eq!(f.value(&[0]), 0.5);
        assert_eq!(f.value(&[0, 1]), 0.5);
        assert!(!f.pair_was_queried());
        assert_eq!(f.value(&[1, 3]), 1.0);
        assert!(f.pair_was_queried());
        assert_eq!(f.value(&[0, 1, 3]), 0.5);
    }

    #[test]
    fn monotone_variant_saturates_large_sets() {
        let f = HiddenPairObjective::new(5, Some((0, 1)), HiddenPairVariant::Monotone);
        assert_eq!(f.value(&[2, 3, 4]), 1.0);
        assert_eq!(f.value(&[2, 3]), 0.5);
        let flat = HiddenPairObjective::new(5, None, HiddenPairVariant::Monotone);
        assert_eq!(flat.value(&[2, 3, 4]), 0.5);
    }

    #[test]
    fn random_pair_is_distinct() {
        let mut rng = rand::thread_rng();
        for _ in 0..100 {
            let f = HiddenPairObjective::random(3, HiddenPairVariant::Exact, &mut rng);
            let (i, j) = f.pair().unwrap();
            assert!(i < j && j < 3);
        }
    }
}
