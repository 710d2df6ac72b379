//! Named networks and fault families, the vertex-cover reduction, and
//! desk-scale verifiers for the depth lower bounds.

use serde::Serialize;

use crate::boolfn::{
    difference_indices, equivalent, min_distinguishing_set, min_distinguishing_set_with, truth_table,
    truth_table_with, BooleanFunction,
};
use crate::error::{Error, Result};
use crate::faults::enumerate_faults;
use crate::hitting::HittingSetOptions;
use crate::limits::Limits;
use crate::network::{Assignment, Fault, FaultType, Literal, NodeId, SwitchingNetwork};
use crate::symmetric::{shannon_network, SymmetricKind, SymmetricSpec};
use crate::treediag::{build_tree_greedy, exact_depth_with, run_tree, DiagnosisProblem};

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges are stored as `(min, max)` in input order; loops, vertices
    /// outside `1..=n` and repeated edges are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            if i == j {
                return Err(Error::Range(format!("loop at vertex {i}")));
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Range(format!("edge {{{i},{j}}} leaves vertex range 1..={n}")));
            }
            let e = (i.min(j), i.max(j));
            if !seen.insert(e) {
                return Err(Error::Range(format!("edge {{{i},{j}}} listed twice")));
            }
            out.push(e);
        }
        Ok(SimpleGraph { n, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Vertex-cover question "is there a cover with at most `m` vertices?",
/// with `0 < m < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcInstance {
    graph: SimpleGraph,
    m: usize,
}

impl VcInstance {
    pub fn new(graph: SimpleGraph, m: usize) -> Result<Self> {
        if m == 0 || m >= graph.n {
            return Err(Error::Range(format!("need 0 < m < n, got m = {m}, n = {}", graph.n)));
        }
        Ok(VcInstance { graph, m })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Range("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `n` cells in series between nodes `0..=n`, cell `i` holding parallel
/// edges `x_i` (id `2i−2`) and `x̄_i` (id `2i−1`). Implements constant 1.
pub fn s1_network(n: usize) -> Result<SwitchingNetwork> {
    require_positive(n)?;
    let edges = (1..=n).flat_map(|i| {
        let (u, v) = ((i - 1) as NodeId, i as NodeId);
        [(u, v, Literal::pos(i as u32)), (u, v, Literal::neg(i as u32))]
    });
    SwitchingNetwork::from_edges((0, n as NodeId), edges)
}

/// One path of `2n` edges `x_1, x̄_1, …, x_n, x̄_n` between nodes `0..=2n`.
/// Implements constant 0.
pub fn s2_network(n: usize) -> Result<SwitchingNetwork> {
    require_positive(n)?;
    let edges = (1..=n).flat_map(|i| {
        let u = (2 * i - 2) as NodeId;
        [
            (u, u + 1, Literal::pos(i as u32)),
            (u + 1, u + 2, Literal::neg(i as u32)),
        ]
    });
    SwitchingNetwork::from_edges((0, (2 * n) as NodeId), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjunctionKind {
    /// `{0}`-fault of S1.
    S1Zero,
    /// `{1}`-fault of S2.
    S2One,
}

/// The fault turning S1 (resp. S2) into `x_1^{δ_1} ⋯ x_n^{δ_n}`: per
/// variable, the edge whose literal disagrees with `δ_i` gets 0 on S1,
/// and the edge whose literal agrees gets 1 on S2.
pub fn conjunction_fault(kind: ConjunctionKind, n: usize, delta: &[bool]) -> Result<Fault> {
    if delta.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: delta.len(),
        });
    }
    Ok(delta
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            // ids 2i and 2i+1 carry x_{i+1} and x̄_{i+1} in both networks
            match kind {
                ConjunctionKind::S1Zero => (if d { 2 * i + 1 } else { 2 * i }, false),
                ConjunctionKind::S2One => (if d { 2 * i + 1 } else { 2 * i }, true),
            }
        })
        .collect())
}

fn index_of(bits: &[bool]) -> usize {
    Assignment::new(bits.to_vec()).index()
}

/// `x_1^{δ_1} ⋯ x_n^{δ_n}`: 1 exactly at `δ`.
pub fn conjunction_function(delta: &[bool]) -> BooleanFunction {
    let at = index_of(delta);
    BooleanFunction::from_fn(delta.len(), |i| i == at)
}

/// The clause that is 0 exactly at `delta`.
pub fn clause_function(delta: &[bool]) -> BooleanFunction {
    let at = index_of(delta);
    BooleanFunction::from_fn(delta.len(), |i| i != at)
}

/// Edges of the ψ_G cells in series from `from` to `to`, fresh interior
/// nodes drawn from `next`. An edgeless graph gets the single cell
/// `x_1 ∨ x̄_1`, since the empty product is 1.
fn psi_g_cells(graph: &SimpleGraph, from: NodeId, to: NodeId, next: &mut NodeId) -> Vec<(NodeId, NodeId, Literal)> {
    if graph.edges.is_empty() {
        return vec![(from, to, Literal::pos(1)), (from, to, Literal::neg(1))];
    }
    let t = graph.edges.len();
    let mut out = Vec::with_capacity(2 * t);
    let mut u = from;
    for (l, &(i, j)) in graph.edges.iter().enumerate() {
        let v = if l + 1 == t {
            to
        } else {
            *next += 1;
            *next - 1
        };
        out.push((u, v, Literal::pos(i as u32)));
        out.push((u, v, Literal::pos(j as u32)));
        u = v;
    }
    out
}

/// `t` cells in series, cell `l` holding parallel edges `x_{i_l}`, `x_{j_l}`.
/// Implements `ψ_G = ∏ (x_i ∨ x_j)`.
pub fn psi_g_network(graph: &SimpleGraph) -> Result<SwitchingNetwork> {
    let t = graph.edges.len().max(1) as NodeId;
    let mut next = 1;
    SwitchingNetwork::from_edges((0, t), psi_g_cells(graph, 0, t, &mut next))
}

/// `ψ_G` over all `n` vertices `x_1..x_n`.
pub fn psi_g_function(graph: &SimpleGraph) -> BooleanFunction {
    BooleanFunction::from_fn(graph.n, |a| {
        graph
            .edges
            .iter()
            .all(|&(i, j)| a >> (i - 1) & 1 == 1 || a >> (j - 1) & 1 == 1)
    })
}

/// `ψ_n^{≥m+1}`.
pub fn at_least_function(n: usize, threshold: usize) -> BooleanFunction {
    BooleanFunction::from_fn(n, |a| a.count_ones() as usize >= threshold)
}

/// A reduction gadget: network plus `R = {λ, ρ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub network: SwitchingNetwork,
    pub fault_type: FaultType,
    /// The distinguished fault `ρ`; `R = {λ, ρ}`.
    pub rho: Fault,
}

impl Gadget {
    pub fn faults(&self) -> Vec<Fault> {
        vec![Fault::empty(), self.rho.clone()]
    }

    pub fn problem(&self) -> Result<DiagnosisProblem> {
        DiagnosisProblem::new(self.network.clone(), self.fault_type, self.faults())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionVariant {
    Q1,
    Q2,
}

fn threshold_ladder(instance: &VcInstance) -> SwitchingNetwork {
    let spec = SymmetricSpec::of_kind(
        SymmetricKind::AtLeast {
            threshold: instance.m + 1,
        },
        instance.graph.n,
    )
    .expect("0 < m < n keeps the threshold in range");
    shannon_network(&spec)
}

/// `ψ_n^{≥m+1}` ladder in parallel with the ψ_G chain. `λ` gives
/// `ψ_n^{≥m+1} ∨ ψ_G`; `ρ` zeroes every chain edge, leaving `ψ_n^{≥m+1}`.
pub fn q1_network(instance: &VcInstance) -> Result<Gadget> {
    let ladder = threshold_ladder(instance);
    let (a, b) = ladder.poles();
    let mut next = ladder.nodes().last().copied().unwrap_or(0) + 1;
    let base = ladder.edge_count();
    let mut edges: Vec<_> = ladder.edges().iter().map(|e| (e.u, e.v, e.label)).collect();
    edges.extend(psi_g_cells(&instance.graph, a, b, &mut next));
    let total = edges.len();
    Ok(Gadget {
        network: SwitchingNetwork::from_edges((a, b), edges)?,
        fault_type: FaultType::Zero,
        rho: Fault::constant_on(base..total, false),
    })
}

/// `ψ_n^{≥m+1}` ladder in parallel with (ψ_G chain, `x_1`, `x̄_1`) in
/// series. `λ` gives `ψ_n^{≥m+1}` since the blocking pair is never both 1;
/// `ρ` sets the pair to 1, giving `ψ_n^{≥m+1} ∨ ψ_G`.
pub fn q2_network(instance: &VcInstance) -> Result<Gadget> {
    let ladder = threshold_ladder(instance);
    let (a, b) = ladder.poles();
    let mut next = ladder.nodes().last().copied().unwrap_or(0) + 1;
    let mut edges: Vec<_> = ladder.edges().iter().map(|e| (e.u, e.v, e.label)).collect();
    let chain_end = next;
    next += 1;
    edges.extend(psi_g_cells(&instance.graph, a, chain_end, &mut next));
    let middle = next;
    let blocking = edges.len();
    edges.push((chain_end, middle, Literal::pos(1)));
    edges.push((middle, b, Literal::neg(1)));
    Ok(Gadget {
        network: SwitchingNetwork::from_edges((a, b), edges)?,
        fault_type: FaultType::One,
        rho: Fault::constant_on([blocking, blocking + 1], true),
    })
}

pub fn gadget(instance: &VcInstance, variant: ReductionVariant) -> Result<Gadget> {
    match variant {
        ReductionVariant::Q1 => q1_network(instance),
        ReductionVariant::Q2 => q2_network(instance),
    }
}

/// Smallest vertex cover, by enumerating subsets in order of size.
pub fn min_vertex_cover(graph: &SimpleGraph) -> Vec<usize> {
    (0..=graph.n)
        .find_map(|size| cover_of_size(graph, size))
        .expect("the full vertex set is a cover")
}

/// Whether some cover has at most `m` vertices; stops at the first hit.
pub fn has_vertex_cover(graph: &SimpleGraph, m: usize) -> bool {
    (0..=m.min(graph.n)).any(|size| cover_of_size(graph, size).is_some())
}

fn cover_of_size(graph: &SimpleGraph, size: usize) -> Option<Vec<usize>> {
    fn rec(graph: &SimpleGraph, start: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        if left == 0 {
            return graph
                .edges
                .iter()
                .all(|(i, j)| chosen.contains(i) || chosen.contains(j));
        }
        for v in start..=graph.n {
            chosen.push(v);
            if rec(graph, v + 1, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    rec(graph, 1, size, &mut chosen).then_some(chosen)
}

/// Answers the vertex-cover question through diagnosis: build the gadget,
/// construct a tree solving `R = {λ, ρ}`, run it on both faults and report
/// whether the two outputs implement different functions.
pub fn vc_reduction_decide(instance: &VcInstance, variant: ReductionVariant) -> Result<bool> {
    let g = gadget(instance, variant)?;
    let problem = g.problem()?;
    let tree = build_tree_greedy(&problem)?;
    let f_lambda = truth_table(&g.network, &Fault::empty())?;
    let f_rho = truth_table(&g.network, &g.rho)?;
    let out_lambda = run_tree(&tree, |a| f_lambda.value_at(a))?;
    let out_rho = run_tree(&tree, |a| f_rho.value_at(a))?;
    Ok(!equivalent(
        &truth_table(&g.network, out_lambda)?,
        &truth_table(&g.network, out_rho)?,
    )?)
}

fn all_tuples(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << n).map(move |i| Assignment::from_index(i, n).bits().to_vec())
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem1Options {
    /// Rerun the distinguishing set without the singleton shortcut up to this n.
    pub confirm_max_n: usize,
    /// Compute the exact tree depth over all C-faults up to this n.
    pub exact_depth_max_n: usize,
}

impl Default for Theorem1Options {
    fn default() -> Self {
        Theorem1Options {
            confirm_max_n: 4,
            exact_depth_max_n: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub fault_type: String,
    pub network: &'static str,
    pub edge_count: usize,
    pub input_count: usize,
    /// The base fault (all edges 0 on S1, `λ` on S2) implements constant 0.
    pub base_is_zero: bool,
    /// Every `ρ(δ)` implements `x_1^{δ_1} ⋯ x_n^{δ_n}`.
    pub family_matches_conjunctions: bool,
    /// Every `ρ(δ)` differs from the base exactly at `δ`.
    pub family_differs_exactly_at_delta: bool,
    pub distinguishing_number: usize,
    /// Same number from the exact search with the shortcut disabled.
    pub exact_confirmation: Option<usize>,
    /// Minimum tree depth over all C-faults of the network.
    pub exact_depth: Option<usize>,
    pub expected_bound: usize,
    /// Set when the exact-depth part was skipped for size.
    pub partial: bool,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.base_is_zero
            && self.family_matches_conjunctions
            && self.family_differs_exactly_at_delta
            && self.distinguishing_number == self.expected_bound
            && self.exact_confirmation.is_none_or(|t| t == self.expected_bound)
            && self.exact_depth.is_none_or(|d| d >= self.expected_bound)
    }
}

pub fn theorem1_verify(n: usize, fault_type: FaultType) -> Result<Theorem1Report> {
    theorem1_verify_with(n, fault_type, &Theorem1Options::default(), &Limits::default())
}

/// Checks the `2^n` lower bound for S1 (`{0,1}`, `{0}`) or S2 (`{1}`).
pub fn theorem1_verify_with(
    n: usize,
    fault_type: FaultType,
    options: &Theorem1Options,
    limits: &Limits,
) -> Result<Theorem1Report> {
    let (name, net, kind, base_fault) = match fault_type {
        FaultType::Both | FaultType::Zero => {
            let net = s1_network(n)?;
            let all_zero = Fault::constant_on(0..net.edge_count(), false);
            ("S1", net, ConjunctionKind::S1Zero, all_zero)
        }
        FaultType::One => ("S2", s2_network(n)?, ConjunctionKind::S2One, Fault::empty()),
    };
    let base = truth_table_with(&net, &base_fault, limits)?;

    let mut family = Vec::with_capacity(1 << n);
    let mut matches = true;
    let mut exact_at_delta = true;
    for delta in all_tuples(n) {
        let fault = conjunction_fault(kind, n, &delta)?;
        net.check_fault_of_type(&fault, fault_type)?;
        let f = truth_table_with(&net, &fault, limits)?;
        matches &= f == conjunction_function(&delta);
        exact_at_delta &= difference_indices(&base, &f)? == vec![index_of(&delta)];
        family.push(f);
    }
    let t = min_distinguishing_set(&base, &family)?.t;
    let exact_confirmation = if n <= options.confirm_max_n {
        let opts = HittingSetOptions {
            singleton_shortcut: false,
            max_nodes: limits.hitting_set_max_nodes,
        };
        Some(min_distinguishing_set_with(&base, &family, &opts)?.t)
    } else {
        None
    };
    let exact_depth = if n <= options.exact_depth_max_n {
        let faults = enumerate_faults(&net, fault_type, limits)?;
        let problem = DiagnosisProblem::new(net.clone(), fault_type, faults)?;
        Some(exact_depth_with(&problem, limits)?)
    } else {
        None
    };
    Ok(Theorem1Report {
        n,
        fault_type: fault_type.to_string(),
        network: name,
        edge_count: net.edge_count(),
        input_count: net.arity(),
        base_is_zero: base.is_constant(false),
        family_matches_conjunctions: matches,
        family_differs_exactly_at_delta: exact_at_delta,
        distinguishing_number: t,
        exact_confirmation,
        partial: exact_depth.is_none(),
        exact_depth,
        expected_bound: 1 << n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Entry {
    /// `δ` as a bit string, `x_1` leftmost.
    pub delta: String,
    /// Edges assigned by the constructed fault.
    pub assigned_edges: usize,
    /// The induced function equals the predicted clause (case a) or term (case b).
    pub matches_prediction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub n: usize,
    pub fault_type: String,
    /// `clause` for `{0,1}` and `{1}`, `term` for `{0}`.
    pub case: &'static str,
    pub k: usize,
    pub network_edge_count: usize,
    pub entries: Vec<Theorem2Entry>,
    /// Every edge set to the base constant gives that constant function.
    pub base_is_constant: bool,
    pub distinguishing_number: usize,
    pub expected_bound: usize,
}

impl Theorem2Report {
    pub fn holds(&self) -> bool {
        self.base_is_constant
            && self.entries.iter().all(|e| e.matches_prediction)
            && self.entries.len() == self.expected_bound
            && self.distinguishing_number == self.expected_bound
    }
}

/// Replays the construction of the `binom(n, ⌈n/2⌉)` bound on a given `Q`.
///
/// For `{0,1}` and `{1}`, `Q` must implement `ψ_n^{≠⌈n/2⌉}`; each `δ` with
/// `k = ⌈n/2⌉` ones gets the fault setting to 1 every edge whose literal is
/// true at `δ`, which must leave the clause that is 0 only at `δ`. For `{0}`,
/// `Q` must implement `ψ_n^{=⌈n/2⌉}`; each `δ` gets the fault zeroing every
/// edge off the first simple path satisfied at `δ`, which must leave the
/// term that is 1 only at `δ`.
pub fn theorem2_verify(n: usize, fault_type: FaultType, q: &SwitchingNetwork) -> Result<Theorem2Report> {
    theorem2_verify_with(n, fault_type, q, &Limits::default())
}

pub fn theorem2_verify_with(
    n: usize,
    fault_type: FaultType,
    q: &SwitchingNetwork,
    limits: &Limits,
) -> Result<Theorem2Report> {
    require_positive(n)?;
    let k = n.div_ceil(2);
    let clause_case = fault_type != FaultType::Zero;
    let expected_vars: Vec<u32> = (1..=n as u32).collect();
    if q.input_variables() != expected_vars {
        return Err(Error::Precondition(format!(
            "network inputs {:?} are not x_1..x_{n}",
            q.input_variables()
        )));
    }
    let psi = BooleanFunction::from_fn(n, |a| (a.count_ones() as usize == k) != clause_case);
    if truth_table_with(q, &Fault::empty(), limits)? != psi {
        return Err(Error::Precondition(format!(
            "network does not implement the symmetric function {} ⌈n/2⌉ ones",
            if clause_case { "≠" } else { "=" }
        )));
    }

    let mut entries = Vec::new();
    let mut family = Vec::new();
    for delta in all_tuples(n).filter(|d| d.iter().filter(|&&b| b).count() == k) {
        let input = Assignment::new(delta.clone());
        let fault = if clause_case {
            let agree = q.edges().iter().filter(|e| {
                let pos = q.variable_position(e.label.var).expect("input variable");
                e.label.eval(delta[pos])
            });
            Fault::constant_on(agree.map(|e| e.id), true)
        } else {
            let path = q.find_satisfied_path(&Fault::empty(), &input)?.ok_or_else(|| {
                Error::Precondition(format!("no path of the network is satisfied at {input}"))
            })?;
            Fault::constant_on((0..q.edge_count()).filter(|e| !path.contains(e)), false)
        };
        q.check_fault_of_type(&fault, fault_type)?;
        let induced = truth_table_with(q, &fault, limits)?;
        let predicted = if clause_case {
            clause_function(&delta)
        } else {
            conjunction_function(&delta)
        };
        entries.push(Theorem2Entry {
            delta: input.to_string(),
            assigned_edges: fault.len(),
            matches_prediction: induced == predicted,
        });
        family.push(induced);
    }

    let base_value = clause_case;
    let base = truth_table_with(q, &Fault::constant_on(0..q.edge_count(), base_value), limits)?;
    let t = min_distinguishing_set(&base, &family)?.t;
    Ok(Theorem2Report {
        n,
        fault_type: fault_type.to_string(),
        case: if clause_case { "clause" } else { "term" },
        k,
        network_edge_count: q.edge_count(),
        entries,
        base_is_constant: base.is_constant(base_value),
        distinguishing_number: t,
        expected_bound: binomial(n as u64, k as u64) as usize,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remark1Row {
    pub n: u64,
    pub central: u128,
    pub max_over_k: u128,
    pub bound_holds: bool,
}

impl Remark1Row {
    pub fn holds(&self) -> bool {
        self.bound_holds && self.central == self.max_over_k
    }
}

/// For each `n ≤ max_n`: `binom(n, ⌈n/2⌉)` is the largest binomial
/// coefficient of row `n` and is at least `2^n / (n + 1)`.
pub fn remark1(max_n: u64) -> Vec<Remark1Row> {
    (1..=max_n)
        .map(|n| {
            let central = binomial(n, n.div_ceil(2));
            let max_over_k = (0..=n).map(|k| binomial(n, k)).max().unwrap_or(1);
            Remark1Row {
                n,
                central,
                max_over_k,
                // compared as central·(n+1) ≥ 2^n to stay in integers
                bound_holds: central * (n as u128 + 1) >= 1u128 << n,
            }
        })
        .collect()
}
