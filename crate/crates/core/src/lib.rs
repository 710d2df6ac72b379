//! Diagnosis of constant faults in switching networks.
//!
//! A switching network is a two-pole multigraph whose edges carry literals;
//! it implements the function "the poles are joined by a path of true
//! edges". A constant fault pins some edges to 0 or 1. Given a network and a
//! set of possible faults, a diagnostic decision tree asks for the faulty
//! network's value on chosen inputs and names a fault with the same
//! function.
//!
//! Modules:
//! - [`network`]: networks, faults, assignments and evaluation.
//! - [`boolfn`]: truth tables, equivalence, minimum distinguishing sets.
//! - [`symmetric`]: Shannon's ladder for symmetric functions.
//! - [`treediag`]: greedy and exact tree construction, execution, verification.
//! - [`constructions`]: S1/S2, ψ_G and the Q1/Q2 reduction gadgets, plus
//!   desk-scale verifiers for the lower bounds.
//! - [`io`], [`dot`]: JSON documents and Graphviz export.

pub mod boolfn;
pub mod cli;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod faults;
pub mod hitting;
pub mod io;
pub mod limits;
pub mod network;
pub mod symmetric;
pub mod treediag;

pub use boolfn::{
    difference_set, equivalent, min_distinguishing_set, truth_table, BooleanFunction, DistinguishingResult,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use network::{Assignment, Diagnostic, Edge, Fault, FaultType, Literal, NodeId, SwitchingNetwork};
pub use symmetric::{shannon_network, SymmetricKind, SymmetricSpec};
pub use treediag::{
    build_tree_exact, build_tree_greedy, function_classes, run_tree, verify_tree, DecisionTree, DiagnosisProblem,
    FunctionClass,
};
