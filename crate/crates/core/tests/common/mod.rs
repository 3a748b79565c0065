#![allow(dead_code)]

use knapsack_submod::bench::random_graph;
use knapsack_submod::objectives::{CoverageObjective, ModularObjective};
use knapsack_submod::{normalize, Element, ElementId, Instance, Objective};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random small instance: costs uniform in `[1, K]`, `K` in `3..=8`.
pub struct Case {
    pub seed: u64,
    pub instance: Instance,
    pub objective: Box<dyn Objective>,
}

impl Case {
    pub fn kind(&self) -> &'static str {
        if self.seed.is_multiple_of(2) {
            "coverage"
        } else {
            "modular"
        }
    }
}

/// Even seeds give coverage objectives, odd seeds modular ones.
pub fn random_case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=12usize);
    let k = rng.gen_range(3..=8u32) as f64;
    let objective: Box<dyn Objective> = if seed.is_multiple_of(2) {
        let degree = rng.gen_range(0.5..4.0);
        Box::new(CoverageObjective::new(random_graph(n, degree, &mut rng)))
    } else {
        Box::new(ModularObjective::new((0..n).map(|_| rng.gen::<f64>()).collect()))
    };
    let elements = (0..n as ElementId)
        .map(|id| Element::new(id, rng.gen_range(1.0..=k)))
        .collect();
    Case {
        seed,
        instance: normalize(elements, k).expect("valid random instance"),
        objective,
    }
}

pub fn cases(count: u64) -> impl Iterator<Item = Case> {
    (0..count).map(random_case)
}

/// Exhaustive optimum by a plain loop over subset bitmasks, evaluating the
/// objective directly. Returns `(value, ids)`.
pub fn bitmask_opt(instance: &Instance, objective: &dyn Objective) -> (f64, Vec<ElementId>) {
    let mut elements = instance.elements().to_vec();
    elements.sort_by_key(|e| e.id);
    let n = elements.len();
    let base = instance.base_set();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for mask in 0u32..(1 << n) {
        let members: Vec<&Element> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &elements[i]).collect();
        let cost: f64 = members.iter().map(|e| e.cost).sum();
        if cost > instance.capacity() * (1.0 + 1e-9) {
            continue;
        }
        let mut ids: Vec<ElementId> = members.iter().map(|e| e.id).collect();
        let mut full = ids.clone();
        full.extend_from_slice(base);
        let v = objective.value(&full);
        ids.sort_unstable();
        if v > best.0 || (v == best.0 && ids < best.1) {
            best = (v, ids);
        }
    }
    best
}
