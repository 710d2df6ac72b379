//! Shared generators for the integration tests.
#![allow(dead_code)]

use faultdiag::{Fault, FaultType, Literal, SwitchingNetwork};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid network: a random spanning tree over `2..=max_nodes`
/// nodes plus extra parallel or chord edges, labels over `x_0..x_{max_vars-1}`.
pub fn random_network(rng: &mut impl Rng, max_nodes: u32, max_edges: usize, max_vars: u32) -> SwitchingNetwork {
    let k = rng.gen_range(2..=max_nodes);
    let total = rng.gen_range((k as usize - 1).max(1)..=max_edges.max(k as usize - 1));
    let mut order: Vec<u32> = (0..k).collect();
    order.shuffle(rng);
    let mut edges = Vec::with_capacity(total);
    for i in 1..k as usize {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    while edges.len() < total {
        let u = rng.gen_range(0..k);
        let v = rng.gen_range(0..k);
        if u != v {
            edges.push((u, v));
        }
    }
    edges.shuffle(rng);
    let labeled: Vec<_> = edges
        .into_iter()
        .map(|(u, v)| {
            let lit = Literal {
                var: rng.gen_range(0..max_vars),
                negated: rng.gen_bool(0.4),
            };
            (u, v, lit)
        })
        .collect();
    let a = rng.gen_range(0..k);
    let b = loop {
        let b = rng.gen_range(0..k);
        if b != a {
            break b;
        }
    };
    SwitchingNetwork::from_edges((a, b), labeled).expect("generator builds valid networks")
}

/// Each edge is faulted with probability `p`, to a constant from `fault_type`.
pub fn random_fault(rng: &mut impl Rng, net: &SwitchingNetwork, fault_type: FaultType, p: f64) -> Fault {
    let constants = fault_type.constants();
    let mut fault = Fault::empty();
    for e in 0..net.edge_count() {
        if rng.gen_bool(p) {
            fault.set(e, *constants.choose(rng).unwrap());
        }
    }
    fault
}

pub fn random_fault_type(rng: &mut impl Rng) -> FaultType {
    *FaultType::ALL.choose(rng).unwrap()
}
