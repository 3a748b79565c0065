mod common;

use knapsack_submod::bench::LoadedDataset;
use knapsack_submod::distributed::{
    distributed_sieve_plus_max, greedy_order, sample_probability, DistributedParams, MpcConfig, PrefixOrder,
};
use knapsack_submod::objectives::ModularObjective;
use knapsack_submod::offline::greedy;
use knapsack_submod::streaming::estimate_lambda;
use knapsack_submod::streaming::ElementStream;
use knapsack_submod::{normalize, Element, Error, Oracle, QueryLedger};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bitmask_opt, random_case};

const TOL: f64 = 1e-9;

#[test]
fn tight_example_on_any_partition() {
    let data = LoadedDataset::tight_example();
    let instance = data.instance(2.0).unwrap();
    for seed in 0..20 {
        for machines in 1..=3 {
            let ledger = QueryLedger::enforcing();
            let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
            let cfg = MpcConfig::for_instance(3, 2, seed).machines(machines);
            let (r, log) = distributed_sieve_plus_max(&oracle, &DistributedParams::new(1.0, 1.0, 0.5), &cfg).unwrap();
            assert!((r.value() - 0.6).abs() < TOL, "seed {seed} m {machines}: {}", r.value());
            assert_eq!(log.total_queries(), r.queries);
            assert_eq!(ledger.infeasible_query_count(), 0);
        }
    }
}

#[test]
fn greedy_order_examples() {
    let instance = normalize(
        vec![Element::new(0, 1.0), Element::new(1, 2.0), Element::new(2, 1.0), Element::new(3, 1.0)],
        4.0,
    )
    .unwrap();
    let f = ModularObjective::new(vec![1.0, 3.0, 0.5, 2.0]);
    let ledger = QueryLedger::enforcing();
    let oracle = Oracle::new(&instance, &f, &ledger);
    let el = |id: u32| instance.element(id).unwrap();
    assert_eq!(greedy_order(&oracle, &[el(1)]).unwrap(), vec![1]);
    // densities 2.0 for item 3 and 1.5 for item 1
    assert_eq!(greedy_order(&oracle, &[el(1), el(3)]).unwrap(), vec![3, 1]);
    assert_eq!(greedy_order(&oracle, &[]).unwrap(), Vec::<u32>::new());
}

#[test]
fn greedy_order_matches_offline_greedy() {
    for seed in 0..40 {
        let case = random_case(seed);
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&case.instance, case.objective.as_ref(), &ledger);
        let offline = greedy(&oracle).unwrap().report.trace.unwrap();
        let order = greedy_order(&oracle, case.instance.elements()).unwrap();
        assert_eq!(order, offline.order(), "seed {seed}");
    }
}

#[test]
fn runs_are_deterministic() {
    let data = LoadedDataset::synthetic(400, 6.0, 9);
    let instance = data.instance(6.0).unwrap();
    let run = || {
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
        let cfg = MpcConfig::for_instance(instance.len(), instance.k_tilde(), 17);
        let (r, log) = distributed_sieve_plus_max(&oracle, &DistributedParams::new(0.05, 1.0 / 6.0, 0.1), &cfg).unwrap();
        (r.solution, r.queries, log)
    };
    let (a, b) = (run(), run());
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.2, b.2);
}

#[test]
fn memory_cap_is_enforced() {
    let data = LoadedDataset::synthetic(200, 6.0, 1);
    let instance = data.instance(5.0).unwrap();
    let ledger = QueryLedger::enforcing();
    let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
    let cfg = MpcConfig::for_instance(instance.len(), instance.k_tilde(), 0).memory_cap(3);
    let err = distributed_sieve_plus_max(&oracle, &DistributedParams::new(0.1, 0.5, 0.1), &cfg).unwrap_err();
    assert!(matches!(err, Error::MemoryCapExceeded { .. }), "{err}");
}

#[test]
fn round_log_accounts_for_every_query() {
    let data = LoadedDataset::synthetic(1000, 8.0, 4);
    let instance = data.instance(10.0).unwrap();
    let ledger = QueryLedger::enforcing();
    let oracle = Oracle::new(&instance, data.objective.as_ref(), &ledger);
    let est = estimate_lambda(&mut ElementStream::from_elements(instance.elements().to_vec()), &oracle, 1.0 / 6.0)
        .unwrap();
    let before = ledger.query_count();
    let cfg = MpcConfig::for_instance(instance.len(), instance.k_tilde(), 3);
    let (r, log) = distributed_sieve_plus_max(&oracle, &DistributedParams::new(est.lambda, est.alpha, 0.1), &cfg)
        .unwrap();
    assert_eq!(r.queries, ledger.query_count() - before);
    assert_eq!(log.total_queries(), r.queries);
    assert_eq!(r.rounds as usize, log.rounds.len() + 1);
    assert_eq!(r.max_central_receipts as usize, log.max_central_received());
    let mut csv = Vec::new();
    log.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.starts_with("round,t,gamma_size,sent_total,T_size\n"));
    assert_eq!(text.lines().count(), log.rounds.len() + 1);
}

#[test]
fn sampling_probability() {
    assert_eq!(sample_probability(0, 0), 0.0);
    assert_eq!(sample_probability(10, 10), 1.0);
    assert!((sample_probability(10_000, 10) - 4.0 * 0.001f64.sqrt()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn many_machines_keep_the_guarantee(seed in 0u64..1_000_000, machines in 1usize..6, run_seed in 0u64..1000) {
        let case = random_case(seed);
        let (opt, _) = bitmask_opt(&case.instance, case.objective.as_ref());
        prop_assume!(opt > 0.0);
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&case.instance, case.objective.as_ref(), &ledger);
        let cfg = MpcConfig::for_instance(case.instance.len(), case.instance.k_tilde(), run_seed).machines(machines);
        for order in [PrefixOrder::Greedy, PrefixOrder::Collection] {
            let params = DistributedParams::new(opt, 1.0, 0.1).prefix_order(order);
            let (r, _) = distributed_sieve_plus_max(&oracle, &params, &cfg).unwrap();
            prop_assert!(r.value() >= 0.4 * opt - TOL);
            prop_assert!(r.solution.cost <= case.instance.capacity() + TOL);
        }
    }

    #[test]
    fn scaled_lambda_stays_valid(seed in 0u64..1_000_000) {
        let case = random_case(seed);
        let (opt, _) = bitmask_opt(&case.instance, case.objective.as_ref());
        prop_assume!(opt > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // any λ in [αOPT, OPT] works
        let alpha = 1.0 / 6.0;
        let lambda = opt * rng.gen_range(alpha..=1.0);
        let ledger = QueryLedger::enforcing();
        let oracle = Oracle::new(&case.instance, case.objective.as_ref(), &ledger);
        let cfg = MpcConfig::for_instance(case.instance.len(), case.instance.k_tilde(), seed).machines(4);
        let (r, _) = distributed_sieve_plus_max(&oracle, &DistributedParams::new(lambda, alpha, 0.1), &cfg).unwrap();
        prop_assert!(r.value() >= 0.4 * opt - TOL);
    }
}
