mod common;

use faultdiag::boolfn::{difference_set, equivalent, min_distinguishing_set, truth_table_parallel};
use faultdiag::io::{parse_network, parse_tree, serialize_network, serialize_tree};
use faultdiag::treediag::{build_tree_greedy, verify_tree};
use faultdiag::{
    shannon_network, truth_table, Assignment, BooleanFunction, DiagnosisProblem, Fault, FaultType, Limits,
    SymmetricSpec,
};
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn inputs(m: usize) -> impl Iterator<Item = Assignment> {
    (0..1usize << m).map(move |i| Assignment::from_index(i, m))
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn connectivity_agrees_with_path_dnf(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 8, 12, 5);
        let fault = common::random_fault(&mut rng, &net, FaultType::Both, 0.3);
        let limits = Limits::default();
        for a in inputs(net.arity()) {
            prop_assert_eq!(net.evaluate(&fault, &a)?, net.path_dnf_eval(&fault, &a, &limits)?, "input {}", a);
        }
    }

    #[test]
    fn tables_agree_with_pointwise_evaluation(seed in any::<u64>(), jobs in 1usize..5) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 10, 16, 8);
        let fault = common::random_fault(&mut rng, &net, FaultType::Both, 0.2);
        let f = truth_table(&net, &fault)?;
        prop_assert_eq!(f.len(), 1 << net.arity());
        for a in inputs(net.arity()) {
            prop_assert_eq!(f.value_at(&a)?, net.evaluate(&fault, &a)?);
        }
        prop_assert_eq!(truth_table_parallel(&net, &fault, &Limits::default(), jobs)?, f);
    }

    #[test]
    fn raising_an_edge_never_lowers_the_output(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 8, 12, 5);
        let other = common::random_fault(&mut rng, &net, FaultType::Both, 0.3);
        let e = rng.gen_range(0..net.edge_count());
        // the middle rung leaves `e` on its literal
        let mid_fault: Fault = other.iter().filter(|&(edge, _)| edge != e).collect();
        let mut zero = mid_fault.clone();
        zero.set(e, false);
        let mut one = mid_fault.clone();
        one.set(e, true);
        for a in inputs(net.arity()) {
            let lo = net.evaluate(&zero, &a)?;
            let mid = net.evaluate(&mid_fault, &a)?;
            let hi = net.evaluate(&one, &a)?;
            prop_assert!(lo <= mid && mid <= hi, "input {}: {} {} {}", a, lo, mid, hi);
        }
    }

    #[test]
    fn pinning_an_edge_to_its_current_value_changes_nothing(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 8, 12, 5);
        let m = net.arity();
        let a = Assignment::from_index(rng.gen_range(0..1usize << m), m);
        let e = rng.gen_range(0..net.edge_count());
        let label = net.edge(e).unwrap().label;
        let value = label.eval(a.bit(net.variable_position(label.var).unwrap()));
        let pinned = Fault::constant_on([e], value);
        let before = net.evaluate(&Fault::empty(), &a)?;
        prop_assert_eq!(net.evaluate(&pinned, &a)?, before);
        prop_assert_eq!(net.evaluate(&Fault::empty(), &a)?, before);
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 5, 6, 3);
        // few edges and heavy faulting make coinciding functions common
        let fs: Vec<BooleanFunction> = (0..6)
            .map(|_| truth_table(&net, &common::random_fault(&mut rng, &net, FaultType::Both, 0.5)))
            .collect::<Result<_, _>>()?;
        for f in &fs {
            prop_assert!(equivalent(f, f)?);
            for g in &fs {
                prop_assert_eq!(equivalent(f, g)?, equivalent(g, f)?);
                prop_assert_eq!(difference_set(f, g)?.is_empty(), equivalent(f, g)?);
                for h in &fs {
                    if equivalent(f, g)? && equivalent(g, h)? {
                        prop_assert!(equivalent(f, h)?);
                    }
                }
            }
        }
    }

    #[test]
    fn distinguishing_sets_are_minimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let arity = rng.gen_range(1..=4);
        let f0 = BooleanFunction::from_fn(arity, |_| rng.gen_bool(0.5));
        let family: Vec<BooleanFunction> = (0..rng.gen_range(1..6))
            .map(|_| BooleanFunction::from_fn(arity, |_| rng.gen_bool(0.5)))
            .filter(|f| *f != f0)
            .collect();
        prop_assume!(!family.is_empty());
        let r = min_distinguishing_set(&f0, &family)?;
        prop_assert_eq!(r.witness.len(), r.t);
        let hits = |set: &[usize], f: &BooleanFunction| set.iter().any(|&i| f.value(i) != f0.value(i));
        let witness: Vec<usize> = r.witness.iter().map(Assignment::index).collect();
        prop_assert!(family.iter().all(|f| hits(&witness, f)));
        // exhaustive: no subset of size t - 1 of the 2^arity inputs hits every difference
        let n = 1usize << arity;
        let smaller_exists = (0u32..1 << n).filter(|s| s.count_ones() as usize + 1 == r.t).any(|s| {
            let set: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
            family.iter().all(|f| hits(&set, f))
        });
        prop_assert!(!smaller_exists);
    }

    #[test]
    fn network_documents_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 8, 12, 5);
        let text = serialize_network(&net);
        prop_assert_eq!(parse_network(&text)?, net);
        prop_assert_eq!(serialize_network(&parse_network(&text)?), text);
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn greedy_trees_solve_random_problems(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let net = common::random_network(&mut rng, 6, 8, 4);
        let t = common::random_fault_type(&mut rng);
        let faults: Vec<Fault> = (0..rng.gen_range(1..10))
            .map(|_| common::random_fault(&mut rng, &net, t, 0.3))
            .collect();
        let r = faults.len();
        let problem = DiagnosisProblem::new(net.clone(), t, faults)?;
        let tree = build_tree_greedy(&problem)?;
        prop_assert!(verify_tree(&tree, &problem)?);
        prop_assert!(tree.node_count() < 2 * r);
        let (back, arity) = parse_tree(&serialize_tree(&tree, net.arity()))?;
        prop_assert_eq!(arity, net.arity());
        prop_assert_eq!(back, tree);
    }

    #[test]
    fn ladders_implement_their_spectrum(n in 1usize..=6, bits in any::<u64>()) {
        let spectrum: Vec<bool> = (0..=n).map(|k| bits >> k & 1 == 1).collect();
        prop_assume!(spectrum.iter().any(|&b| b));
        let net = shannon_network(&SymmetricSpec::new(spectrum.clone())?);
        prop_assert_eq!(net.edge_count(), n * n + n);
        prop_assert!(net.validate().is_empty());
        let f = truth_table(&net, &Fault::empty())?;
        for i in 0..1usize << n {
            prop_assert_eq!(f.value(i), spectrum[i.count_ones() as usize]);
        }
    }
}
