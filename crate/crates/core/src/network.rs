//! Switching networks, constant faults and the implemented function.
//!
//! A network is an undirected connected multigraph without loops, with two
//! distinct poles and a literal on every edge. Under an input assignment it
//! outputs 1 iff the poles are joined by edges whose effective function is 1.
//! A fault replaces the literals of some edges by constants.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

pub type NodeId = u32;

/// A variable `x_i` or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub const fn pos(var: u32) -> Self {
        Literal { var, negated: false }
    }

    pub const fn neg(var: u32) -> Self {
        Literal { var, negated: true }
    }

    /// `x^1 = x`, `x^0 = x̄`.
    pub const fn with_polarity(var: u32, polarity: bool) -> Self {
        Literal {
            var,
            negated: !polarity,
        }
    }

    /// Value of the literal when its variable takes `value`.
    #[inline]
    pub const fn eval(self, value: bool) -> bool {
        value != self.negated
    }

    pub const fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub u: NodeId,
    pub v: NodeId,
    pub label: Literal,
}

impl Edge {
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A structural invariant violation reported by [`SwitchingNetwork::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Diagnostic {
    EqualPoles { node: NodeId },
    UnknownPole { node: NodeId },
    Loop { edge: usize, node: NodeId },
    UnknownEndpoint { edge: usize, node: NodeId },
    DuplicateEdgeId { edge: usize },
    EdgeIdsNotDense { missing: usize },
    Disconnected { unreachable: Vec<NodeId> },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EqualPoles { node } => write!(f, "both poles are node {node}"),
            Diagnostic::UnknownPole { node } => write!(f, "pole {node} is not a node"),
            Diagnostic::Loop { edge, node } => write!(f, "edge {edge} is a loop at node {node}"),
            Diagnostic::UnknownEndpoint { edge, node } => {
                write!(f, "edge {edge} has unknown endpoint {node}")
            }
            Diagnostic::DuplicateEdgeId { edge } => write!(f, "edge id {edge} appears twice"),
            Diagnostic::EdgeIdsNotDense { missing } => {
                write!(f, "edge ids are not dense: id {missing} is missing")
            }
            Diagnostic::Disconnected { unreachable } => {
                write!(f, "graph is disconnected: nodes {unreachable:?} unreachable from pole a")
            }
        }
    }
}

/// Two-pole undirected multigraph with literal-labeled edges.
///
/// Constructed through [`SwitchingNetwork::new`] (checked) or
/// [`SwitchingNetwork::from_parts`] (unchecked, for diagnostics).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingNetwork {
    nodes: Vec<NodeId>,
    poles: (NodeId, NodeId),
    edges: Vec<Edge>,
    variables: Vec<u32>,
}

impl SwitchingNetwork {
    /// Builds a network and rejects it if any structural invariant fails.
    pub fn new(nodes: Vec<NodeId>, poles: (NodeId, NodeId), edges: Vec<Edge>) -> Result<Self> {
        let net = Self::from_parts(nodes, poles, edges);
        let diags = net.validate();
        if diags.is_empty() {
            Ok(net)
        } else {
            Err(Error::InvalidNetwork(diags))
        }
    }

    /// Builds a network from labeled node pairs; edge ids follow iteration
    /// order and the node set is every endpoint plus the poles.
    pub fn from_edges<I>(poles: (NodeId, NodeId), edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, Literal)>,
    {
        let edges: Vec<Edge> = edges
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, label))| Edge { id, u, v, label })
            .collect();
        let mut nodes: Vec<NodeId> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        nodes.push(poles.0);
        nodes.push(poles.1);
        Self::new(nodes, poles, edges)
    }

    /// Stores the parts as given (nodes sorted and deduplicated, edges sorted
    /// by id) without checking invariants.
    pub fn from_parts(mut nodes: Vec<NodeId>, poles: (NodeId, NodeId), mut edges: Vec<Edge>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        edges.sort_by_key(|e| e.id);
        let variables: BTreeSet<u32> = edges.iter().map(|e| e.label.var).collect();
        SwitchingNetwork {
            nodes,
            poles,
            edges,
            variables: variables.into_iter().collect(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn poles(&self) -> (NodeId, NodeId) {
        self.poles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.get(id).filter(|e| e.id == id)
    }

    /// `L(P)`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Input variables in canonical (ascending) order. Faults never change it.
    pub fn input_variables(&self) -> &[u32] {
        &self.variables
    }

    /// Number of input variables `m`.
    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// Position of `var` in the canonical order.
    pub fn variable_position(&self, var: u32) -> Option<usize> {
        self.variables.binary_search(&var).ok()
    }

    /// One diagnostic per violated invariant; empty iff the network is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let (a, b) = self.poles;
        let known = |n: NodeId| self.nodes.binary_search(&n).is_ok();
        if a == b {
            diags.push(Diagnostic::EqualPoles { node: a });
        }
        for p in if a == b { vec![a] } else { vec![a, b] } {
            if !known(p) {
                diags.push(Diagnostic::UnknownPole { node: p });
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.id) {
                diags.push(Diagnostic::DuplicateEdgeId { edge: e.id });
            }
            if e.u == e.v {
                diags.push(Diagnostic::Loop { edge: e.id, node: e.u });
            }
            for n in [e.u, e.v] {
                if !known(n) {
                    diags.push(Diagnostic::UnknownEndpoint { edge: e.id, node: n });
                }
            }
        }
        if let Some(missing) = (0..self.edges.len()).find(|i| !seen.contains(i)) {
            diags.push(Diagnostic::EdgeIdsNotDense { missing });
        }

        if known(a) {
            let mut reached: BTreeSet<NodeId> = BTreeSet::from([a]);
            let mut queue = VecDeque::from([a]);
            let adj = self.adjacency_by_node();
            while let Some(n) = queue.pop_front() {
                for &ei in adj.get(&n).into_iter().flatten() {
                    let m = self.edges[ei].other(n);
                    if reached.insert(m) {
                        queue.push_back(m);
                    }
                }
            }
            let unreachable: Vec<NodeId> = self
                .nodes
                .iter()
                .copied()
                .filter(|n| !reached.contains(n))
                .collect();
            if !unreachable.is_empty() {
                diags.push(Diagnostic::Disconnected { unreachable });
            }
        }
        diags
    }

    fn adjacency_by_node(&self) -> BTreeMap<NodeId, Vec<usize>> {
        let mut adj: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                continue;
            }
            adj.entry(e.u).or_default().push(i);
            adj.entry(e.v).or_default().push(i);
        }
        adj
    }

    /// Checks that `fault` only touches existing edges.
    pub fn check_fault(&self, fault: &Fault) -> Result<()> {
        match fault.edges().find(|&id| self.edge(id).is_none()) {
            Some(edge) => Err(Error::InvalidFault {
                edge,
                edge_count: self.edges.len(),
            }),
            None => Ok(()),
        }
    }

    /// Checks that `fault` is a `fault_type`-fault of this network.
    pub fn check_fault_of_type(&self, fault: &Fault, fault_type: FaultType) -> Result<()> {
        self.check_fault(fault)?;
        match fault.iter().find(|&(_, value)| !fault_type.allows(value)) {
            Some((edge, value)) => Err(Error::ConstantNotInType {
                edge,
                value: value as u8,
                fault_type: fault_type.to_string(),
            }),
            None => Ok(()),
        }
    }

    fn check_input(&self, input: &Assignment) -> Result<()> {
        if input.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: input.len(),
            });
        }
        Ok(())
    }

    /// Effective value of edge `edge` (an index into [`Self::edges`]).
    fn edge_value(&self, edge: &Edge, fault: &Fault, input: &Assignment) -> bool {
        match fault.get(edge.id) {
            Some(c) => c,
            None => {
                let pos = self.variable_position(edge.label.var).expect("label variable is an input");
                edge.label.eval(input.bit(pos))
            }
        }
    }

    /// `f_{P,ρ}(input)`: poles connected through edges whose effective
    /// function is 1.
    pub fn evaluate(&self, fault: &Fault, input: &Assignment) -> Result<bool> {
        self.check_fault(fault)?;
        self.check_input(input)?;
        let compiled = CompiledNetwork::new(self, fault);
        let mut scratch = Vec::new();
        Ok(compiled.eval_index(input.index(), &mut scratch))
    }

    /// Every simple pole-to-pole path, as edge-id sequences.
    pub fn simple_paths(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        if self.edges.len() > limits.max_path_edges {
            return Err(Error::resource(format!(
                "simple-path enumeration on {} edges exceeds cap {}",
                self.edges.len(),
                limits.max_path_edges
            )));
        }
        let adj = self.adjacency_by_node();
        let mut paths = Vec::new();
        let mut on_path = BTreeSet::from([self.poles.0]);
        let mut stack = Vec::new();
        self.paths_from(self.poles.0, &adj, &mut on_path, &mut stack, &mut paths, limits, &|_| true)?;
        Ok(paths)
    }

    #[allow(clippy::too_many_arguments)]
    fn paths_from(
        &self,
        node: NodeId,
        adj: &BTreeMap<NodeId, Vec<usize>>,
        on_path: &mut BTreeSet<NodeId>,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
        usable: &dyn Fn(&Edge) -> bool,
    ) -> Result<()> {
        if node == self.poles.1 {
            if out.len() >= limits.max_paths {
                return Err(Error::resource(format!(
                    "more than {} simple paths",
                    limits.max_paths
                )));
            }
            out.push(stack.clone());
            return Ok(());
        }
        for &ei in adj.get(&node).into_iter().flatten() {
            let e = &self.edges[ei];
            if !usable(e) {
                continue;
            }
            let next = e.other(node);
            if on_path.insert(next) {
                stack.push(e.id);
                self.paths_from(next, adj, on_path, stack, out, limits, usable)?;
                stack.pop();
                on_path.remove(&next);
            }
        }
        Ok(())
    }

    /// Disjunction over simple paths of the conjunction of effective edge
    /// functions. Exponential; kept as an independent check of [`Self::evaluate`].
    pub fn path_dnf_eval(&self, fault: &Fault, input: &Assignment, limits: &Limits) -> Result<bool> {
        self.check_fault(fault)?;
        self.check_input(input)?;
        let paths = self.simple_paths(limits)?;
        Ok(self.dnf_value(&paths, fault, input))
    }

    /// [`Self::path_dnf_eval`] with a precomputed path list.
    pub fn dnf_value(&self, paths: &[Vec<usize>], fault: &Fault, input: &Assignment) -> bool {
        paths.iter().any(|path| {
            path.iter()
                .all(|&id| self.edge_value(&self.edges[id], fault, input))
        })
    }

    /// First simple pole-to-pole path, in depth-first order with edges tried
    /// by ascending id, all of whose edges are 1 under `fault` and `input`.
    pub fn find_satisfied_path(&self, fault: &Fault, input: &Assignment) -> Result<Option<Vec<usize>>> {
        self.check_fault(fault)?;
        self.check_input(input)?;
        let adj = self.adjacency_by_node();
        let mut on_path = BTreeSet::from([self.poles.0]);
        let mut stack = Vec::new();
        let mut found = Vec::new();
        let limits = Limits {
            max_paths: 1,
            ..Limits::default()
        };
        let usable = |e: &Edge| self.edge_value(e, fault, input);
        match self.paths_from(self.poles.0, &adj, &mut on_path, &mut stack, &mut found, &limits, &usable) {
            // the second hit trips the one-path cap; the first is what we want
            Ok(()) | Err(Error::Resource { .. }) => Ok(found.into_iter().next()),
            Err(e) => Err(e),
        }
    }
}

/// Constant set `C` of a fault type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultType {
    /// `{0,1}`
    Both,
    /// `{0}`
    Zero,
    /// `{1}`
    One,
}

impl FaultType {
    pub const ALL: [FaultType; 3] = [FaultType::Both, FaultType::Zero, FaultType::One];

    pub fn allows(self, value: bool) -> bool {
        match self {
            FaultType::Both => true,
            FaultType::Zero => !value,
            FaultType::One => value,
        }
    }

    pub fn constants(self) -> &'static [bool] {
        match self {
            FaultType::Both => &[false, true],
            FaultType::Zero => &[false],
            FaultType::One => &[true],
        }
    }

    /// Short form used in documents and on the command line: `01`, `0`, `1`.
    pub fn as_str(self) -> &'static str {
        match self {
            FaultType::Both => "01",
            FaultType::Zero => "0",
            FaultType::One => "1",
        }
    }
}

impl fmt::Display for FaultType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultType::Both => f.write_str("{0,1}"),
            FaultType::Zero => f.write_str("{0}"),
            FaultType::One => f.write_str("{1}"),
        }
    }
}

impl FromStr for FaultType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "01" | "10" | "{0,1}" => Ok(FaultType::Both),
            "0" | "{0}" => Ok(FaultType::Zero),
            "1" | "{1}" => Ok(FaultType::One),
            other => Err(Error::Range(format!("unknown fault type {other:?}"))),
        }
    }
}

/// Partial mapping from edge ids to constants. The empty mapping is `λ`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fault {
    assignments: BTreeMap<usize, bool>,
}

impl Fault {
    /// The empty fault `λ`.
    pub fn empty() -> Self {
        Fault::default()
    }

    /// Every listed edge set to `value`.
    pub fn constant_on<I: IntoIterator<Item = usize>>(edges: I, value: bool) -> Self {
        Fault {
            assignments: edges.into_iter().map(|e| (e, value)).collect(),
        }
    }

    pub fn set(&mut self, edge: usize, value: bool) {
        self.assignments.insert(edge, value);
    }

    pub fn get(&self, edge: usize) -> Option<bool> {
        self.assignments.get(&edge).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.assignments.iter().map(|(&e, &v)| (e, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignments.keys().copied()
    }
}

impl FromIterator<(usize, bool)> for Fault {
    fn from_iter<T: IntoIterator<Item = (usize, bool)>>(iter: T) -> Self {
        Fault {
            assignments: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("λ");
        }
        f.write_str("{")?;
        for (i, (e, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "e{e}={}", v as u8)?;
        }
        f.write_str("}")
    }
}

/// Input tuple in canonical variable order.
///
/// As an integer index, bit `j` is the `j`-th canonical variable (first
/// variable least significant). As text, the first variable is leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn from_index(index: usize, arity: usize) -> Self {
        Assignment {
            bits: (0..arity).map(|j| index >> j & 1 == 1).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | (b as usize) << j)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits[j]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Range(format!("invalid bit {other:?} in assignment {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment::new)
    }
}

#[derive(Debug, Clone, Copy)]
enum EdgeFn {
    Const(bool),
    Lit { pos: usize, negated: bool },
}

/// Network with a fault baked in, nodes renumbered densely, ready for
/// repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct CompiledNetwork {
    node_count: usize,
    pole_a: usize,
    pole_b: usize,
    arity: usize,
    // edges faulted to 0 are dropped; edges faulted to 1 are Const(true)
    edges: Vec<(usize, usize, EdgeFn)>,
}

impl CompiledNetwork {
    /// `fault` must already have been checked against `net`.
    pub(crate) fn new(net: &SwitchingNetwork, fault: &Fault) -> Self {
        let index = |n: NodeId| net.nodes.binary_search(&n).expect("node of a valid network");
        let edges = net
            .edges
            .iter()
            .filter_map(|e| {
                let f = match fault.get(e.id) {
                    Some(false) => return None,
                    Some(true) => EdgeFn::Const(true),
                    None => EdgeFn::Lit {
                        pos: net.variable_position(e.label.var).expect("label variable is an input"),
                        negated: e.label.negated,
                    },
                };
                Some((index(e.u), index(e.v), f))
            })
            .collect();
        CompiledNetwork {
            node_count: net.nodes.len(),
            pole_a: index(net.poles.0),
            pole_b: index(net.poles.1),
            arity: net.arity(),
            edges,
        }
    }

    pub(crate) fn arity(&self) -> usize {
        self.arity
    }

    /// Union-find over the satisfied edges for a single input.
    pub(crate) fn eval_index(&self, input: usize, parent: &mut Vec<usize>) -> bool {
        parent.clear();
        parent.extend(0..self.node_count);
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v, f) in &self.edges {
            let on = match f {
                EdgeFn::Const(c) => c,
                EdgeFn::Lit { pos, negated } => (input >> pos & 1 == 1) != negated,
            };
            if on {
                let (ru, rv) = (find(parent, u), find(parent, v));
                if ru != rv {
                    parent[ru] = rv;
                }
            }
        }
        find(parent, self.pole_a) == find(parent, self.pole_b)
    }

    /// Evaluates the 64 consecutive inputs starting at `base` (a multiple of
    /// 64) at once: bit `k` of the result is the value at input `base + k`.
    /// Reachability from pole a is propagated as per-node 64-bit masks until
    /// a fixpoint.
    pub(crate) fn eval_block(&self, base: usize, reach: &mut Vec<u64>) -> u64 {
        debug_assert_eq!(base % 64, 0);
        let masks: Vec<(usize, usize, u64)> = self
            .edges
            .iter()
            .map(|&(u, v, f)| {
                let m = match f {
                    EdgeFn::Const(c) => {
                        if c {
                            !0
                        } else {
                            0
                        }
                    }
                    EdgeFn::Lit { pos, negated } => {
                        let m = variable_mask(pos, base);
                        if negated {
                            !m
                        } else {
                            m
                        }
                    }
                };
                (u, v, m)
            })
            .collect();
        reach.clear();
        reach.resize(self.node_count, 0);
        reach[self.pole_a] = !0;
        loop {
            let mut changed = false;
            for &(u, v, m) in &masks {
                let to_v = reach[u] & m & !reach[v];
                if to_v != 0 {
                    reach[v] |= to_v;
                    changed = true;
                }
                let to_u = reach[v] & m & !reach[u];
                if to_u != 0 {
                    reach[u] |= to_u;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        reach[self.pole_b]
    }
}

/// Bit `k` set iff variable `pos` is 1 in input `base + k`.
fn variable_mask(pos: usize, base: usize) -> u64 {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if pos < 6 {
        PATTERNS[pos]
    } else if base >> pos & 1 == 1 {
        !0
    } else {
        0
    }
}
