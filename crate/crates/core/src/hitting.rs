//! Exact minimum hitting set over small universes.
//!
//! Iterative deepening on the solution size, starting from a disjoint-packing
//! lower bound and stopping below a greedy upper bound. Each level branches
//! on the elements of the unhit set with the fewest elements.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HittingSetOptions {
    /// When every set is a singleton the answer is the set of distinct
    /// elements; skip the search in that case.
    pub singleton_shortcut: bool,
    /// Branch nodes explored before giving up.
    pub max_nodes: u64,
}

impl Default for HittingSetOptions {
    fn default() -> Self {
        HittingSetOptions {
            singleton_shortcut: true,
            max_nodes: 50_000_000,
        }
    }
}

/// Minimum-cardinality set of elements meeting every input set, ascending.
///
/// Fails with [`Error::Precondition`] if some set is empty, and with
/// [`Error::Resource`] (carrying the greedy size) if the node cap is hit.
pub fn min_hitting_set(sets: &[Vec<usize>], options: &HittingSetOptions) -> Result<Vec<usize>> {
    if let Some(i) = sets.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("set {i} is empty and cannot be hit")));
    }
    let sets = normalize(sets);
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    if options.singleton_shortcut && sets.iter().all(|s| s.len() == 1) {
        // after normalization the singletons are already distinct
        let mut out: Vec<usize> = sets.iter().map(|s| s[0]).collect();
        out.sort_unstable();
        return Ok(out);
    }

    let greedy = greedy_hitting_set(&sets);
    let lower = disjoint_lower_bound(&sets);
    if lower >= greedy.len() {
        return Ok(greedy);
    }

    let mut search = Search::new(&sets, options.max_nodes);
    for k in lower..greedy.len() {
        match search.run(k) {
            Ok(Some(mut found)) => {
                found.sort_unstable();
                return Ok(found);
            }
            Ok(None) => {}
            Err(()) => {
                return Err(Error::Resource {
                    what: format!(
                        "hitting-set search exceeded {} nodes at size {k}",
                        options.max_nodes
                    ),
                    greedy_bound: Some(greedy.len()),
                })
            }
        }
    }
    Ok(greedy)
}

/// Sort and deduplicate each set, drop duplicate sets and any set that is
/// a superset of another (hitting the subset hits it too).
fn normalize(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let unique: BTreeSet<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut by_size: Vec<Vec<usize>> = unique.into_iter().collect();
    by_size.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if by_size.iter().all(|s| s.len() == 1) {
        return by_size;
    }
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(by_size.len());
    for s in by_size {
        if !kept.iter().any(|k| is_subset(k, &s)) {
            kept.push(s);
        }
    }
    kept
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Repeatedly take the element hitting the most unhit sets (smallest
/// element on ties).
pub fn greedy_hitting_set(sets: &[Vec<usize>]) -> Vec<usize> {
    let mut unhit: Vec<&Vec<usize>> = sets.iter().collect();
    let mut chosen = Vec::new();
    while !unhit.is_empty() {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for s in &unhit {
            for &e in s.iter() {
                *counts.entry(e).or_default() += 1;
            }
        }
        let (&best, _) = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .expect("unhit sets are nonempty");
        chosen.push(best);
        unhit.retain(|s| !s.contains(&best));
    }
    chosen.sort_unstable();
    chosen
}

/// Size of a greedily chosen family of pairwise disjoint sets; each needs
/// its own element, so this bounds any hitting set from below.
pub fn disjoint_lower_bound(sets: &[Vec<usize>]) -> usize {
    let mut order: Vec<&Vec<usize>> = sets.iter().collect();
    order.sort_by_key(|s| s.len());
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut count = 0;
    for s in order {
        if s.iter().all(|e| !used.contains(e)) {
            used.extend(s.iter().copied());
            count += 1;
        }
    }
    count
}

struct Search<'a> {
    sets: &'a [Vec<usize>],
    incidence: HashMap<usize, Vec<usize>>,
    hits: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Search<'a> {
    fn new(sets: &'a [Vec<usize>], max_nodes: u64) -> Self {
        let mut incidence: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, s) in sets.iter().enumerate() {
            for &e in s {
                incidence.entry(e).or_default().push(i);
            }
        }
        Search {
            sets,
            incidence,
            hits: vec![0; sets.len()],
            chosen: Vec::new(),
            nodes: 0,
            max_nodes,
        }
    }

    /// Hitting set of size at most `k`, if one exists.
    fn run(&mut self, k: usize) -> std::result::Result<Option<Vec<usize>>, ()> {
        self.chosen.clear();
        self.hits.iter_mut().for_each(|h| *h = 0);
        if self.dfs(k)? {
            Ok(Some(self.chosen.clone()))
        } else {
            Ok(None)
        }
    }

    fn dfs(&mut self, k: usize) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(());
        }
        let unhit: Vec<usize> = (0..self.sets.len()).filter(|&i| self.hits[i] == 0).collect();
        let Some(&pivot) = unhit.iter().min_by_key(|&&i| self.sets[i].len()) else {
            return Ok(true);
        };
        let remaining = k - self.chosen.len();
        if remaining == 0 {
            return Ok(false);
        }
        let unhit_sets: Vec<Vec<usize>> = unhit.iter().map(|&i| self.sets[i].clone()).collect();
        if disjoint_lower_bound(&unhit_sets) > remaining {
            return Ok(false);
        }
        for &e in &self.sets[pivot] {
            self.choose(e, 1);
            let found = self.dfs(k)?;
            if found {
                return Ok(true);
            }
            self.choose(e, -1);
        }
        Ok(false)
    }

    fn choose(&mut self, e: usize, delta: i32) {
        for &i in &self.incidence[&e] {
            self.hits[i] = (self.hits[i] as i32 + delta) as u32;
        }
        if delta > 0 {
            self.chosen.push(e);
        } else {
            self.chosen.pop();
        }
    }
}
