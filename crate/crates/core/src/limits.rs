/// Size caps applied by operations whose cost grows exponentially.
///
/// Exceeding a cap yields [`crate::Error::Resource`]; nothing is silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest arity for which a truth table is materialized.
    pub max_arity: usize,
    /// Largest edge count accepted by simple-path enumeration.
    pub max_path_edges: usize,
    /// Largest number of simple pole-to-pole paths enumerated.
    pub max_paths: usize,
    /// Largest number of function classes handled by the exact tree builder.
    pub exact_max_classes: usize,
    /// Largest arity handled by the exact tree builder.
    pub exact_max_arity: usize,
    /// Largest number of memoized states visited by the exact tree builder.
    pub exact_max_states: usize,
    /// Largest number of branch nodes explored by the exact hitting-set search.
    pub hitting_set_max_nodes: u64,
    /// Largest number of faults produced by fault enumeration.
    pub max_fault_enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arity: 20,
            max_path_edges: 24,
            max_paths: 1 << 20,
            exact_max_classes: 64,
            exact_max_arity: 6,
            exact_max_states: 1 << 22,
            hitting_set_max_nodes: 50_000_000,
            max_fault_enumeration: 1 << 20,
        }
    }
}
