mod common;

use matroid_cost::algorithms::{
    base_cover, greedy_basis, max_weight_basis_bounded_circ, min_dependent_prefix, partition_size,
    rank, BoundedCircParams, CoverOutcome,
};
use matroid_cost::combinators::{free_uniform_union, l_relax, truncate, TieBrokenWeights};
use matroid_cost::families::random::parallel_pairs;
use matroid_cost::families::{
    BicircularMatroid, ConvexTransversalMatroid, FreeMatroid, GraphicMatroid, PartitionMatroid,
    UniformMatroid,
};
use matroid_cost::hard::{
    count_partition_witness_partitions, count_rank_witness_sets, for_each_equal_partition, gamma,
    is_partition_witness, is_rank_witness, partition_instance, partition_witness_count_bound,
    rank_instance, rank_witness_count_bound, sample_rank_instance, PartitionHardParams,
    RankHardParams,
};
use matroid_cost::verify::{
    bf_circumference, bf_max_weight_basis, bf_partition_size, bf_rank, check_family_axioms,
    AxiomVerdict, AxiomViolation, SubsetFamilyOracle,
};
use matroid_cost::{Cost, CostModel, Descriptor, IndependenceOracle, Matroid, MeteredOracle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn triangle() -> GraphicMatroid {
    GraphicMatroid::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
}

fn two_triples() -> PartitionMatroid {
    PartitionMatroid::new(&[vec![0, 1, 2], vec![3, 4, 5]], vec![1, 1]).unwrap()
}

#[test]
fn metered_queries() {
    let mut oracle = MeteredOracle::new(FreeMatroid::new(8), CostModel::linear());
    assert!(oracle.query(&[0, 1, 2, 3, 4]).unwrap());
    assert_eq!(oracle.ledger_snapshot().total_cost, Cost::Exact(5));
    assert!(oracle.query(&[]).unwrap());
    assert_eq!(oracle.ledger_snapshot().total_cost, Cost::Exact(5));

    let mut unit = MeteredOracle::new(FreeMatroid::new(8), CostModel::unit());
    unit.query(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(unit.ledger_snapshot().total_cost, Cost::Exact(1));
}

#[test]
fn ledger_snapshots() {
    for (model, want) in [(CostModel::linear(), 7), (CostModel::power(2.0).unwrap(), 25)] {
        let mut oracle = MeteredOracle::new(FreeMatroid::new(8), model);
        let fresh = oracle.ledger_snapshot();
        assert_eq!((fresh.total_cost.as_f64(), fresh.query_count, fresh.max_query_size), (0.0, 0, 0));
        oracle.query(&[0, 1, 2]).unwrap();
        oracle.query(&[0, 1, 2, 3]).unwrap();
        let ledger = oracle.ledger_snapshot();
        assert_eq!(ledger.total_cost, Cost::Exact(want));
        assert_eq!((ledger.query_count, ledger.max_query_size), (2, 4));
    }
}

#[test]
fn cost_model_specs() {
    let eval = |spec: &str, k| spec.parse::<CostModel>().unwrap().eval(k).as_f64();
    assert_eq!(eval("linear", 12), 12.0);
    assert_eq!(eval("poly:2", 3), 9.0);
    assert!((eval("poly:0.5", 16) - 4.0).abs() < 1e-12);
    assert!("poly:-1".parse::<CostModel>().is_err());
    assert!("cubic".parse::<CostModel>().is_err());
}

#[test]
fn partition_examples() {
    let m = two_triples();
    assert!(m.is_independent(&[0, 3]));
    assert!(!m.is_independent(&[0, 1]));
    assert!(m.is_independent(&[]));
}

#[test]
fn graphic_examples() {
    assert!(triangle().is_independent(&[0, 1]));
    assert!(!triangle().is_independent(&[0, 1, 2]));
    let looped = GraphicMatroid::new(5, vec![(0, 1), (4, 4)]).unwrap();
    assert!(!looped.is_independent(&[1]));
}

#[test]
fn bicircular_examples() {
    let tri = BicircularMatroid::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(tri.is_independent(&[0, 1, 2]));
    let edges = vec![(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)];
    let theta = BicircularMatroid::new(4, edges.clone()).unwrap();
    assert!(!theta.is_independent(&[0, 1, 2, 3, 4]));
    assert!(theta.is_independent(&[]));
    assert!(!common::is_pseudoforest(&edges, &[0, 1, 2, 3, 4]));
}

#[test]
fn transversal_examples() {
    let intervals = vec![(1, 2), (1, 1), (2, 2)];
    let m = ConvexTransversalMatroid::new(2, intervals.clone()).unwrap();
    assert!(!m.is_independent(&[0, 1, 2]));
    assert!(m.is_independent(&[1, 2]));
    assert!(common::is_matchable(2, &intervals, &[1, 2]));
    let same_slot = ConvexTransversalMatroid::new(1, vec![(1, 1), (1, 1)]).unwrap();
    assert!(!same_slot.is_independent(&[0, 1]));
    let jobs = ConvexTransversalMatroid::job_scheduling(2, &[1, 2, 2]).unwrap();
    assert!(jobs.is_independent(&[0, 1]));
    assert!(!jobs.is_independent(&[0, 1, 2]));
}

#[test]
fn truncation_examples() {
    let t = truncate(FreeMatroid::new(5), 3).unwrap();
    assert!(t.is_independent(&[1, 2, 3]));
    assert!(!t.is_independent(&[1, 2, 3, 4]));
    let zero = truncate(FreeMatroid::new(5), 0).unwrap();
    assert!(zero.is_independent(&[]));
    assert!((0..5).all(|e| !zero.is_independent(&[e])));
}

#[test]
fn l_relaxation_examples() {
    let parts = || PartitionMatroid::new(&[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    let relaxed = l_relax(parts(), 1).unwrap();
    assert!(relaxed.is_independent(&[0, 1, 2]));
    assert!(!relaxed.is_independent(&[0, 1, 2, 3]));
    let base = Descriptor::Partition {
        parts: vec![vec![0, 1], vec![2, 3]],
        capacities: vec![1, 1],
    };
    assert!(common::relaxed(&base, 1, &[0, 1, 2]));
    assert!(!common::relaxed(&base, 1, &[0, 1, 2, 3]));

    let same = l_relax(parts(), 0).unwrap();
    for mask in 0u32..16 {
        let set = common::mask_set(mask, 4);
        assert_eq!(same.is_independent(&set), parts().is_independent(&set));
    }
}

#[test]
fn union_examples() {
    let u = free_uniform_union(6, &[1, 2], 2).unwrap();
    assert!(!u.is_independent(&[3, 4, 5]));
    for mask in 0u32..64 {
        let set = common::mask_set(mask, 6);
        if set.len() <= 2 {
            assert!(u.is_independent(&set));
        }
    }
    assert_eq!(bf_rank(&u).unwrap(), 4);
}

#[test]
fn weight_order_examples() {
    let w = TieBrokenWeights::new(vec![5.0, 3.0, 1.0]).unwrap();
    assert_eq!(w.order_elements(&[0, 1, 2]), vec![0, 1, 2]);
    let ties = TieBrokenWeights::new(vec![1.0, 1.0]).unwrap();
    assert_eq!(ties.order_elements(&[0, 1]), vec![1, 0]);
    assert!(ties.order_elements(&[]).is_empty());
}

#[test]
fn greedy_examples() {
    let mut oracle = MeteredOracle::new(triangle(), CostModel::linear());
    let result = greedy_basis(&mut oracle, &[0, 1, 2]).unwrap();
    assert_eq!(result.basis, vec![0, 1]);
    assert_eq!(result.ledger.total_cost, Cost::Exact(6));

    let mut uniform = MeteredOracle::new(UniformMatroid::new(7, 3), CostModel::linear());
    let order: Vec<_> = (0..7).collect();
    assert_eq!(greedy_basis(&mut uniform, &order).unwrap().basis, vec![0, 1, 2]);

    let mut free = MeteredOracle::new(FreeMatroid::new(6), CostModel::linear());
    assert_eq!(rank(&mut free).unwrap(), 6);
}

#[test]
fn bounded_circ_examples() {
    let weights = TieBrokenWeights::new(vec![5.0, 3.0, 1.0]).unwrap();
    let mut oracle = MeteredOracle::new(triangle(), CostModel::linear());
    let result =
        max_weight_basis_bounded_circ(&mut oracle, &weights, BoundedCircParams::new(3, 1).unwrap()).unwrap();
    assert_eq!(result.basis, vec![0, 1]);
    assert_eq!(weights.total(&result.basis), 8.0);

    let free_weights = TieBrokenWeights::new(vec![0.3, 0.1, 0.9, 0.4]).unwrap();
    let mut free = MeteredOracle::new(FreeMatroid::new(4), CostModel::linear());
    let all = max_weight_basis_bounded_circ(&mut free, &free_weights, BoundedCircParams::new(2, 1).unwrap());
    assert_eq!(all.unwrap().basis, vec![0, 1, 2, 3]);

    let (vertices, edges) = parallel_pairs(3);
    let pairs = GraphicMatroid::new(vertices, edges).unwrap();
    let weights = TieBrokenWeights::new(vec![0.2, 0.7, 0.9, 0.1, 0.35, 0.6]).unwrap();
    for seed in 0..5 {
        let mut oracle = MeteredOracle::new(&pairs, CostModel::linear());
        let result =
            max_weight_basis_bounded_circ(&mut oracle, &weights, BoundedCircParams::new(2, seed).unwrap())
                .unwrap();
        assert_eq!(result.basis, vec![1, 2, 5]);
        assert_eq!(result.basis, bf_max_weight_basis(&pairs, &weights).unwrap());
    }
}

#[test]
fn prefix_examples() {
    let mut oracle = MeteredOracle::new(triangle(), CostModel::linear());
    assert_eq!(min_dependent_prefix(&mut oracle, &[0, 1, 2]).unwrap(), Some(3));
    assert_eq!(min_dependent_prefix(&mut oracle, &[0, 1]).unwrap(), None);
    let looped = GraphicMatroid::new(3, vec![(2, 2), (0, 1)]).unwrap();
    let mut oracle = MeteredOracle::new(looped, CostModel::linear());
    assert_eq!(min_dependent_prefix(&mut oracle, &[0, 1]).unwrap(), Some(1));
}

#[test]
fn partition_size_examples() {
    let mut oracle = MeteredOracle::new(two_triples(), CostModel::linear());
    assert_eq!(partition_size(&mut oracle).unwrap().k, 3);

    let parts = [vec![0, 4, 8, 9], vec![1, 5, 10, 2], vec![3, 6, 7, 11]];
    for (truncated, k) in [(false, 3), (true, 4)] {
        let inst = partition_instance(PartitionHardParams::new(3, 3, truncated).unwrap(), &parts).unwrap();
        let mut oracle = MeteredOracle::new(inst.matroid.clone(), CostModel::linear());
        assert_eq!(partition_size(&mut oracle).unwrap().k, k);
        assert_eq!(bf_partition_size(&*inst.matroid).unwrap(), k);
    }
}

#[test]
fn base_cover_examples() {
    let pairs = PartitionMatroid::new(&[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    let mut oracle = MeteredOracle::new(&pairs, CostModel::linear());
    match base_cover(&mut oracle, 2).unwrap() {
        CoverOutcome::Covered(classes) => {
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 4);
            assert!(classes.iter().all(|c| pairs.is_independent(c)));
        }
        other => panic!("expected a cover, got {other:?}"),
    }
    assert!(matches!(base_cover(&mut oracle, 1).unwrap(), CoverOutcome::Infeasible { .. }));

    let mut free = MeteredOracle::new(FreeMatroid::new(4), CostModel::linear());
    assert_eq!(
        base_cover(&mut free, 1).unwrap(),
        CoverOutcome::Covered(vec![vec![0, 1, 2, 3]])
    );

    let looped = GraphicMatroid::new(2, vec![(0, 1), (1, 1)]).unwrap();
    let mut oracle = MeteredOracle::new(looped, CostModel::linear());
    for lambda in 1..4 {
        assert!(matches!(base_cover(&mut oracle, lambda).unwrap(), CoverOutcome::Infeasible { .. }));
    }
}

#[test]
fn rank_examples() {
    let secret = [1, 2];
    let plain = rank_instance(RankHardParams::new(2, 1, false).unwrap(), &secret).unwrap();
    let cut = rank_instance(RankHardParams::new(2, 1, true).unwrap(), &secret).unwrap();
    let mut oracle = MeteredOracle::new(plain.matroid.clone(), CostModel::linear());
    assert_eq!(rank(&mut oracle).unwrap(), 4);
    let mut oracle = MeteredOracle::new(cut.matroid.clone(), CostModel::linear());
    assert_eq!(rank(&mut oracle).unwrap(), 3);
    let mut oracle = MeteredOracle::new(UniformMatroid::new(10, 3), CostModel::linear());
    assert_eq!(rank(&mut oracle).unwrap(), 3);
}

#[test]
fn rank_sampler_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for truncated in [false, true] {
        let inst = sample_rank_instance(RankHardParams::new(2, 1, truncated).unwrap(), &mut rng).unwrap();
        let matroid_cost::hard::Secret::Set(s) = &inst.secret else { panic!() };
        assert_eq!(s.len(), 2);
        assert_eq!(bf_rank(&*inst.matroid).unwrap(), if truncated { 3 } else { 4 });
        for mask in 0u32..64 {
            let q = common::mask_set(mask, 6);
            if q.len() <= 2 {
                assert!(inst.matroid.is_independent(&q));
            }
        }
    }
    assert!(RankHardParams::from_epsilon(3, 0.25, false).is_err());
}

#[test]
fn rank_witness_examples() {
    // elements are 0-based here, so S = {1,2} and W = {1,2,3,4} stay as written
    let s = [1, 2];
    assert!(is_rank_witness(&[1, 2, 3, 4], &s, 2, 1));
    let plain = rank_instance(RankHardParams::new(2, 1, false).unwrap(), &s).unwrap();
    let cut = rank_instance(RankHardParams::new(2, 1, true).unwrap(), &s).unwrap();
    assert!(plain.matroid.is_independent(&[1, 2, 3, 4]));
    assert!(!cut.matroid.is_independent(&[1, 2, 3, 4]));
    assert!(!is_rank_witness(&[0, 3, 4, 5], &s, 2, 1));
    assert!(!is_rank_witness(&[1, 2, 3], &s, 2, 1));
}

#[test]
fn partition_sampler_examples() {
    assert!(PartitionHardParams::new(3, 2, false).is_err());
    let parts = [vec![0, 1, 2], vec![3, 4, 5]];
    for truncated in [false, true] {
        let inst = partition_instance(PartitionHardParams::new(2, 2, truncated).unwrap(), &parts).unwrap();
        assert!((0..6).all(|e| inst.matroid.is_independent(&[e])));
    }
    let q = partition_instance(PartitionHardParams::new(2, 2, true).unwrap(), &parts).unwrap();
    assert_eq!(bf_partition_size(&*q.matroid).unwrap(), 3);
}

#[test]
fn partition_witness_examples() {
    let parts = [vec![0, 1, 2], vec![3, 4, 5]];
    let w = [0, 3, 4];
    assert!(is_partition_witness(&w, &parts, 2, 2));
    let plain = partition_instance(PartitionHardParams::new(2, 2, false).unwrap(), &parts).unwrap();
    let cut = partition_instance(PartitionHardParams::new(2, 2, true).unwrap(), &parts).unwrap();
    assert!(plain.matroid.is_independent(&w) && !cut.matroid.is_independent(&w));
    assert!(!is_partition_witness(&[0, 3], &parts, 2, 2));
    assert!(!is_partition_witness(&[0, 1, 2], &parts, 2, 2));
}

#[test]
fn gamma_examples() {
    assert!((gamma(1.0).unwrap() - 0.5).abs() < 1e-15);
    let g3 = gamma(3.0).unwrap();
    assert!((1.1199..=1.1201).contains(&g3));
    assert!((3..=64).all(|a| gamma(a as f64).unwrap() > 1.1199));
    assert!(gamma(0.5).is_err());
}

fn brute_rank_witness_count(w: &[usize], m: usize, eps_m: usize) -> u64 {
    (0u32..1 << (3 * m))
        .filter(|mask| mask.count_ones() as usize == m)
        .filter(|&mask| is_rank_witness(w, &common::mask_set(mask, 3 * m), m, eps_m))
        .count() as u64
}

#[test]
fn rank_witness_count_examples() {
    assert_eq!(rank_witness_count_bound(2, 4), 6);
    let w = [0, 1, 2, 3];
    let count = count_rank_witness_sets(&w, 2, 1).unwrap();
    assert_eq!(count, brute_rank_witness_count(&w, 2, 1));
    assert!(count as u128 <= 6);
    assert_eq!(count_rank_witness_sets(&[0, 1, 2], 2, 1).unwrap(), 0);
    assert_eq!(count_rank_witness_sets(&[0, 1, 2, 3, 4, 5], 2, 1).unwrap(), 0);
    assert!(count_rank_witness_sets(&[0], 7, 1).is_err());
}

#[test]
fn partition_witness_count_examples() {
    let mut partitions = Vec::new();
    for_each_equal_partition(6, 3, |p| partitions.push(p.to_vec()));
    assert_eq!(partitions.len(), 10);
    let w = [0, 1, 5];
    let brute = partitions
        .iter()
        .filter(|p| is_partition_witness(&w, p, 2, 2))
        .count() as u64;
    assert_eq!(count_partition_witness_partitions(&w, 2, 2).unwrap(), brute);
    assert_eq!(count_partition_witness_partitions(&[0, 1], 2, 2).unwrap(), 0);
    assert_eq!(partition_witness_count_bound(2, 2), 36);
}

#[test]
fn brute_force_examples() {
    assert_eq!(bf_rank(&triangle()).unwrap(), 2);
    assert_eq!(bf_rank(&UniformMatroid::new(4, 2)).unwrap(), 2);
    assert_eq!(bf_partition_size(&FreeMatroid::new(5)).unwrap(), 1);
    assert_eq!(bf_partition_size(&two_triples()).unwrap(), 3);
    assert_eq!(bf_circumference(&triangle()).unwrap(), 3);
    assert_eq!(bf_circumference(&FreeMatroid::new(4)).unwrap(), 0);
    let parallel = GraphicMatroid::new(2, vec![(0, 1), (0, 1)]).unwrap();
    assert_eq!(bf_circumference(&parallel).unwrap(), 2);

    let w = TieBrokenWeights::new(vec![5.0, 3.0, 1.0]).unwrap();
    assert_eq!(bf_max_weight_basis(&triangle(), &w).unwrap(), vec![0, 1]);
    let w = TieBrokenWeights::new(vec![1.0; 4]).unwrap();
    assert_eq!(bf_max_weight_basis(&FreeMatroid::new(4), &w).unwrap(), vec![0, 1, 2, 3]);
    let w = TieBrokenWeights::new(vec![2.0, 9.0, 4.0]).unwrap();
    assert_eq!(bf_max_weight_basis(&UniformMatroid::new(3, 1), &w).unwrap(), vec![1]);
}

#[test]
fn axiom_counterexamples() {
    // elements 1 and 2 of the written families become 0 and 1
    let chain = SubsetFamilyOracle::from_sets(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
    match check_family_axioms(&chain) {
        AxiomVerdict::Fail(AxiomViolation::NotDownwardClosed { missing, .. }) => assert_eq!(missing, vec![1]),
        other => panic!("{other:?}"),
    }
    let skewed =
        SubsetFamilyOracle::from_sets(3, &[vec![], vec![0], vec![1], vec![2], vec![0, 1]]).unwrap();
    match check_family_axioms(&skewed) {
        AxiomVerdict::Fail(AxiomViolation::Exchange { smaller, larger }) => {
            assert_eq!((smaller, larger), (vec![2], vec![0, 1]));
        }
        other => panic!("{other:?}"),
    }
}
