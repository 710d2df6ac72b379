//! Diagnostic decision trees.
//!
//! A tree queries the faulty network's function on chosen inputs and ends
//! in a leaf naming a fault. It solves a problem `(P, C, R)` when, for every
//! `ρ ∈ R`, the leaf reached names a C-fault with the same function as `ρ`.
//! Faults are grouped into classes of equal truth tables; trees only need to
//! tell classes apart.

use std::collections::{BTreeSet, HashMap};

use crate::boolfn::{equivalent, min_distinguishing_set, truth_table_with, BooleanFunction, DistinguishingResult};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::network::{Assignment, Fault, FaultType, SwitchingNetwork};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosisProblem {
    network: SwitchingNetwork,
    fault_type: FaultType,
    faults: Vec<Fault>,
}

impl DiagnosisProblem {
    /// Fails if the network is invalid, `faults` is empty, or some fault is
    /// not a `fault_type`-fault of the network.
    pub fn new(network: SwitchingNetwork, fault_type: FaultType, faults: Vec<Fault>) -> Result<Self> {
        let diags = network.validate();
        if !diags.is_empty() {
            return Err(Error::InvalidNetwork(diags));
        }
        if faults.is_empty() {
            return Err(Error::Precondition("fault set R must be nonempty".into()));
        }
        for f in &faults {
            network.check_fault_of_type(f, fault_type)?;
        }
        Ok(DiagnosisProblem {
            network,
            fault_type,
            faults,
        })
    }

    pub fn network(&self) -> &SwitchingNetwork {
        &self.network
    }

    pub fn fault_type(&self) -> FaultType {
        self.fault_type
    }

    pub fn faults(&self) -> &[Fault] {
        &self.faults
    }
}

/// Faults of `R` sharing one truth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionClass {
    /// First member in `R` order; used as the leaf label.
    pub representative: Fault,
    pub function: BooleanFunction,
    /// Indices into `R`.
    pub members: Vec<usize>,
}

pub fn function_classes(problem: &DiagnosisProblem) -> Result<Vec<FunctionClass>> {
    function_classes_with(problem, &Limits::default())
}

/// Partition of `R` by truth-table equality, classes in order of first
/// appearance.
pub fn function_classes_with(problem: &DiagnosisProblem, limits: &Limits) -> Result<Vec<FunctionClass>> {
    let mut classes: Vec<FunctionClass> = Vec::new();
    let mut by_table: HashMap<BooleanFunction, usize> = HashMap::new();
    let mut by_fault: HashMap<&Fault, usize> = HashMap::new();
    for (i, fault) in problem.faults.iter().enumerate() {
        if let Some(&c) = by_fault.get(fault) {
            classes[c].members.push(i);
            continue;
        }
        let table = truth_table_with(&problem.network, fault, limits)?;
        let c = *by_table.entry(table.clone()).or_insert_with(|| {
            classes.push(FunctionClass {
                representative: fault.clone(),
                function: table,
                members: Vec::new(),
            });
            classes.len() - 1
        });
        classes[c].members.push(i);
        by_fault.insert(fault, c);
    }
    Ok(classes)
}

/// Binary tree of queries with fault-labeled leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(Fault),
    Query {
        input: Assignment,
        /// Followed when the observed value is 0.
        zero: Box<DecisionTree>,
        /// Followed when the observed value is 1.
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn query(input: Assignment, zero: DecisionTree, one: DecisionTree) -> Self {
        DecisionTree::Query {
            input,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    /// Longest root-to-leaf edge count, `h(Γ)`.
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { zero, one, .. } => 1 + zero.node_count() + one.node_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { zero, one, .. } => zero.leaf_count() + one.leaf_count(),
        }
    }

    /// Walks from the root with an infallible oracle.
    pub fn run(&self, mut oracle: impl FnMut(&Assignment) -> bool) -> &Fault {
        let mut node = self;
        loop {
            match node {
                DecisionTree::Leaf(f) => return f,
                DecisionTree::Query { input, zero, one } => {
                    node = if oracle(input) { one } else { zero };
                }
            }
        }
    }
}

/// Walks from the root, asking `oracle` at each query node, and returns the
/// leaf's fault. Oracle errors (e.g. a query of the wrong arity) propagate.
pub fn run_tree(
    tree: &DecisionTree,
    mut oracle: impl FnMut(&Assignment) -> Result<bool>,
) -> Result<&Fault> {
    let mut node = tree;
    loop {
        match node {
            DecisionTree::Leaf(f) => return Ok(f),
            DecisionTree::Query { input, zero, one } => {
                node = if oracle(input)? { one } else { zero };
            }
        }
    }
}

pub fn verify_tree(tree: &DecisionTree, problem: &DiagnosisProblem) -> Result<bool> {
    verify_tree_with(tree, problem, &Limits::default())
}

/// True iff for every `ρ ∈ R` the tree, fed `f_{P,ρ}`, outputs a C-fault
/// `δ` of `P` with `f_{P,δ} = f_{P,ρ}`.
pub fn verify_tree_with(tree: &DecisionTree, problem: &DiagnosisProblem, limits: &Limits) -> Result<bool> {
    let net = &problem.network;
    let mut tables: HashMap<Fault, BooleanFunction> = HashMap::new();
    for rho in &problem.faults {
        if !tables.contains_key(rho) {
            tables.insert(rho.clone(), truth_table_with(net, rho, limits)?);
        }
        let f_rho = &tables[rho];
        let delta = match run_tree(tree, |a| f_rho.value_at(a)) {
            Ok(d) => d.clone(),
            Err(Error::Arity { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        if net.check_fault_of_type(&delta, problem.fault_type).is_err() {
            return Ok(false);
        }
        let f_delta = match tables.get(&delta) {
            Some(t) => t.clone(),
            None => {
                let t = truth_table_with(net, &delta, limits)?;
                tables.insert(delta.clone(), t.clone());
                t
            }
        };
        if !equivalent(&tables[rho], &f_delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn build_tree_greedy(problem: &DiagnosisProblem) -> Result<DecisionTree> {
    build_tree_greedy_with(problem, &Limits::default())
}

/// Splits the live classes on the query maximizing the smaller side
/// (smallest input index on ties) until one class remains. Each split is
/// proper, so the tree has one leaf per class and `2k − 1` nodes.
pub fn build_tree_greedy_with(problem: &DiagnosisProblem, limits: &Limits) -> Result<DecisionTree> {
    let classes = function_classes_with(problem, limits)?;
    let live: Vec<usize> = (0..classes.len()).collect();
    Ok(greedy_split(&classes, &live, problem.network.arity()))
}

fn greedy_split(classes: &[FunctionClass], live: &[usize], arity: usize) -> DecisionTree {
    if live.len() == 1 {
        return DecisionTree::Leaf(classes[live[0]].representative.clone());
    }
    let mut best: Option<(usize, usize)> = None;
    for q in 0..1usize << arity {
        let ones = live.iter().filter(|&&c| classes[c].function.value(q)).count();
        let smaller = ones.min(live.len() - ones);
        if smaller > best.map_or(0, |b| b.1) {
            best = Some((q, smaller));
            if 2 * smaller >= live.len() - 1 {
                break;
            }
        }
    }
    let (q, _) = best.expect("distinct classes differ on some input");
    let (one, zero): (Vec<usize>, Vec<usize>) = live.iter().partition(|&&c| classes[c].function.value(q));
    DecisionTree::query(
        Assignment::from_index(q, arity),
        greedy_split(classes, &zero, arity),
        greedy_split(classes, &one, arity),
    )
}

pub fn build_tree_exact(problem: &DiagnosisProblem) -> Result<DecisionTree> {
    build_tree_exact_with(problem, &Limits::default())
}

/// Minimum-depth tree.
///
/// Depth-first search over sets of live classes (bitmasks), memoizing the
/// exact optimum per set. A set's search stops once it meets the larger of
/// `⌈log2 k⌉` and, for every live class, a disjoint-packing bound on its
/// distinguishing set against the other live classes.
pub fn build_tree_exact_with(problem: &DiagnosisProblem, limits: &Limits) -> Result<DecisionTree> {
    let classes = function_classes_with(problem, limits)?;
    let arity = problem.network.arity();
    let mut solver = ExactSolver::new(&classes, arity, limits)?;
    let full = solver.full_set();
    solver.solve(full)?;
    solver.reconstruct(full, &classes)
}

/// Depth of a minimum-depth tree for `problem`.
pub fn exact_depth(problem: &DiagnosisProblem) -> Result<usize> {
    exact_depth_with(problem, &Limits::default())
}

pub fn exact_depth_with(problem: &DiagnosisProblem, limits: &Limits) -> Result<usize> {
    let classes = function_classes_with(problem, limits)?;
    let mut solver = ExactSolver::new(&classes, problem.network.arity(), limits)?;
    let full = solver.full_set();
    Ok(solver.solve(full)? as usize)
}

struct ExactSolver {
    class_count: usize,
    arity: usize,
    /// Per class: bit `q` is the function's value at input `q`.
    values: Vec<u64>,
    /// Per input: bit `c` is class `c`'s value there.
    splits: Vec<u64>,
    memo: HashMap<u64, u32>,
    max_states: usize,
}

impl ExactSolver {
    fn new(classes: &[FunctionClass], arity: usize, limits: &Limits) -> Result<Self> {
        if classes.len() > limits.exact_max_classes.min(64) {
            return Err(Error::resource(format!(
                "{} function classes exceed the exact-search cap {}",
                classes.len(),
                limits.exact_max_classes.min(64)
            )));
        }
        if arity > limits.exact_max_arity.min(6) {
            return Err(Error::resource(format!(
                "arity {arity} exceeds the exact-search cap {}",
                limits.exact_max_arity.min(6)
            )));
        }
        let values: Vec<u64> = classes.iter().map(|c| c.function.words()[0]).collect();
        let splits = (0..1usize << arity)
            .map(|q| {
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| *v >> q & 1 == 1)
                    .fold(0u64, |m, (c, _)| m | 1 << c)
            })
            .collect();
        Ok(ExactSolver {
            class_count: classes.len(),
            arity,
            values,
            splits,
            memo: HashMap::new(),
            max_states: limits.exact_max_states,
        })
    }

    fn full_set(&self) -> u64 {
        if self.class_count == 64 {
            !0
        } else {
            (1u64 << self.class_count) - 1
        }
    }

    fn lower_bound(&self, set: u64) -> u32 {
        let k = set.count_ones();
        let mut lb = ceil_log2(k);
        let members: Vec<usize> = bits(set).collect();
        let mut diffs = Vec::with_capacity(members.len());
        for &c in &members {
            diffs.clear();
            diffs.extend(members.iter().filter(|&&d| d != c).map(|&d| self.values[c] ^ self.values[d]));
            diffs.sort_by_key(|d| d.count_ones());
            let mut used = 0u64;
            let mut packed = 0;
            for &d in &diffs {
                if d & used == 0 {
                    used |= d;
                    packed += 1;
                }
            }
            lb = lb.max(packed);
        }
        lb
    }

    /// Proper splits of `set`, one per distinct partition, most balanced first.
    fn candidate_splits(&self, set: u64) -> Vec<(usize, u64, u64)> {
        let mut seen = BTreeSet::new();
        let mut out: Vec<(usize, u64, u64)> = Vec::new();
        for (q, &m) in self.splits.iter().enumerate() {
            let one = set & m;
            let zero = set & !m;
            if one == 0 || zero == 0 || !seen.insert(one.min(zero)) {
                continue;
            }
            out.push((q, zero, one));
        }
        out.sort_by_key(|&(q, z, o)| (z.count_ones().max(o.count_ones()), q));
        out
    }

    fn solve(&mut self, set: u64) -> Result<u32> {
        let k = set.count_ones();
        if k <= 1 {
            return Ok(0);
        }
        if let Some(&d) = self.memo.get(&set) {
            return Ok(d);
        }
        if self.memo.len() >= self.max_states {
            return Err(Error::resource(format!(
                "exact tree search visited more than {} states",
                self.max_states
            )));
        }
        let lb = self.lower_bound(set);
        // k − 1 is always achievable, so k acts as "nothing found yet"
        let mut best = k;
        for (_, zero, one) in self.candidate_splits(set) {
            if best <= lb {
                break;
            }
            let (big, small) = if zero.count_ones() >= one.count_ones() {
                (zero, one)
            } else {
                (one, zero)
            };
            let d_big = self.solve(big)?;
            if d_big + 1 >= best {
                continue;
            }
            let d_small = self.solve(small)?;
            best = best.min(1 + d_big.max(d_small));
        }
        self.memo.insert(set, best);
        Ok(best)
    }

    /// Tree achieving the memoized optimum, choosing the smallest input
    /// index among optimal queries at each node.
    fn reconstruct(&mut self, set: u64, classes: &[FunctionClass]) -> Result<DecisionTree> {
        if set.count_ones() <= 1 {
            // an empty set never arises from proper splits; fall back to class 0
            let c = if set == 0 { 0 } else { set.trailing_zeros() as usize };
            return Ok(DecisionTree::Leaf(classes[c].representative.clone()));
        }
        let opt = self.solve(set)?;
        for q in 0..self.splits.len() {
            let one = set & self.splits[q];
            let zero = set & !self.splits[q];
            if one == 0 || zero == 0 {
                continue;
            }
            if 1 + self.solve(zero)?.max(self.solve(one)?) == opt {
                return Ok(DecisionTree::query(
                    Assignment::from_index(q, self.arity),
                    self.reconstruct(zero, classes)?,
                    self.reconstruct(one, classes)?,
                ));
            }
        }
        unreachable!("memoized optimum is realized by some query")
    }
}

fn ceil_log2(k: u32) -> u32 {
    if k <= 1 {
        0
    } else {
        32 - (k - 1).leading_zeros()
    }
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let b = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(b)
        }
    })
}

/// Minimum distinguishing set of class `base` against every other class;
/// a lower bound on the depth of any tree solving the problem.
pub fn lemma1_bound(classes: &[FunctionClass], base: usize) -> Result<DistinguishingResult> {
    let f0 = &classes
        .get(base)
        .ok_or_else(|| Error::Range(format!("class {base} does not exist ({} classes)", classes.len())))?
        .function;
    let family: Vec<BooleanFunction> = classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != base)
        .map(|(_, c)| c.function.clone())
        .collect();
    min_distinguishing_set(f0, &family)
}
