//! Truth tables of implemented functions, equivalence and the
//! minimum-distinguishing-set lower bound on diagnostic tree depth.

use std::fmt;

use crate::error::{Error, Result};
use crate::hitting::{min_hitting_set, HittingSetOptions};
use crate::limits::Limits;
use crate::network::{Assignment, CompiledNetwork, Fault, SwitchingNetwork};

/// Packed truth table over `arity` variables in canonical order.
///
/// Entry `i` is the value at [`Assignment::from_index`]`(i, arity)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    arity: usize,
    words: Vec<u64>,
}

impl BooleanFunction {
    pub fn constant(arity: usize, value: bool) -> Self {
        let mut f = BooleanFunction {
            arity,
            words: vec![if value { !0 } else { 0 }; word_count(arity)],
        };
        f.trim();
        f
    }

    pub fn from_fn(arity: usize, mut value: impl FnMut(usize) -> bool) -> Self {
        let mut words = vec![0u64; word_count(arity)];
        for i in 0..1usize << arity {
            if value(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        BooleanFunction { arity, words }
    }

    /// Symmetric function with value `spectrum[k]` on inputs with `k` ones.
    pub fn symmetric(spectrum: &[bool]) -> Self {
        let arity = spectrum.len() - 1;
        Self::from_fn(arity, |i| spectrum[i.count_ones() as usize])
    }

    fn trim(&mut self) {
        if self.arity < 6 {
            self.words[0] &= (1u64 << (1 << self.arity)) - 1;
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of table entries, `2^arity`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn value_at(&self, input: &Assignment) -> Result<bool> {
        check_arity(self.arity, input.len())?;
        Ok(self.value(input.index()))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_constant(&self, value: bool) -> bool {
        let c = self.count_ones();
        if value {
            c == self.len()
        } else {
            c == 0
        }
    }

    /// Indices of entries equal to 1.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn xor(&self, other: &Self) -> Self {
        BooleanFunction {
            arity: self.arity,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Table entries concatenated in index order, e.g. `0110` for XOR.
    pub fn to_bit_string(&self) -> String {
        (0..self.len()).map(|i| if self.value(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity <= 8 {
            write!(f, "BooleanFunction({}: {})", self.arity, self.to_bit_string())
        } else {
            write!(f, "BooleanFunction({}: {} ones)", self.arity, self.count_ones())
        }
    }
}

fn word_count(arity: usize) -> usize {
    (1usize << arity).div_ceil(64)
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Arity { expected, found })
    }
}

/// `f_{P,ρ}` as a truth table, with default limits.
pub fn truth_table(network: &SwitchingNetwork, fault: &Fault) -> Result<BooleanFunction> {
    truth_table_with(network, fault, &Limits::default())
}

pub fn truth_table_with(network: &SwitchingNetwork, fault: &Fault, limits: &Limits) -> Result<BooleanFunction> {
    truth_table_parallel(network, fault, limits, 1)
}

/// Truth table computed by up to `jobs` threads over disjoint 64-entry
/// blocks. The result does not depend on `jobs`.
pub fn truth_table_parallel(
    network: &SwitchingNetwork,
    fault: &Fault,
    limits: &Limits,
    jobs: usize,
) -> Result<BooleanFunction> {
    let arity = network.arity();
    if arity > limits.max_arity {
        return Err(Error::resource(format!(
            "truth table over {arity} variables exceeds cap {}",
            limits.max_arity
        )));
    }
    network.check_fault(fault)?;
    let compiled = CompiledNetwork::new(network, fault);
    let mut words = vec![0u64; word_count(arity)];
    let jobs = jobs.clamp(1, words.len());
    if jobs == 1 {
        fill_blocks(&compiled, 0, &mut words);
    } else {
        let chunk = words.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            for (ci, part) in words.chunks_mut(chunk).enumerate() {
                let compiled = &compiled;
                scope.spawn(move || fill_blocks(compiled, ci * chunk, part));
            }
        });
    }
    let mut f = BooleanFunction { arity, words };
    f.trim();
    Ok(f)
}

fn fill_blocks(compiled: &CompiledNetwork, first_word: usize, out: &mut [u64]) {
    debug_assert!(compiled.arity() <= 63);
    let mut reach = Vec::new();
    for (k, w) in out.iter_mut().enumerate() {
        *w = compiled.eval_block((first_word + k) * 64, &mut reach);
    }
}

/// Table equality.
pub fn equivalent(f: &BooleanFunction, g: &BooleanFunction) -> Result<bool> {
    check_arity(f.arity, g.arity)?;
    Ok(f.words == g.words)
}

/// Indices of the inputs on which `f` and `g` differ, ascending.
pub fn difference_indices(f: &BooleanFunction, g: &BooleanFunction) -> Result<Vec<usize>> {
    check_arity(f.arity, g.arity)?;
    Ok(f.xor(g).ones().collect())
}

/// The inputs on which `f` and `g` differ.
pub fn difference_set(f: &BooleanFunction, g: &BooleanFunction) -> Result<Vec<Assignment>> {
    Ok(difference_indices(f, g)?
        .into_iter()
        .map(|i| Assignment::from_index(i, f.arity))
        .collect())
}

/// Minimum set of inputs on which a base function differs from each
/// function of a family, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishingResult {
    pub t: usize,
    pub witness: Vec<Assignment>,
}

/// Smallest set of inputs meeting `difference_set(f0, f_i)` for every
/// family member. This `t` lower-bounds the depth of any tree that
/// diagnoses a problem containing these functions.
pub fn min_distinguishing_set(f0: &BooleanFunction, family: &[BooleanFunction]) -> Result<DistinguishingResult> {
    min_distinguishing_set_with(f0, family, &HittingSetOptions::default())
}

pub fn min_distinguishing_set_with(
    f0: &BooleanFunction,
    family: &[BooleanFunction],
    options: &HittingSetOptions,
) -> Result<DistinguishingResult> {
    let mut sets = Vec::with_capacity(family.len());
    for (i, f) in family.iter().enumerate() {
        let d = difference_indices(f0, f)?;
        if d.is_empty() {
            return Err(Error::Precondition(format!(
                "family member {i} equals the base function"
            )));
        }
        sets.push(d);
    }
    let hs = min_hitting_set(&sets, options)?;
    Ok(DistinguishingResult {
        t: hs.len(),
        witness: hs.into_iter().map(|i| Assignment::from_index(i, f0.arity)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Literal;

    fn parity(n: usize) -> BooleanFunction {
        BooleanFunction::from_fn(n, |i| i.count_ones() % 2 == 1)
    }

    #[test]
    fn constants_are_trimmed() {
        let one = BooleanFunction::constant(2, true);
        assert_eq!(one.count_ones(), 4);
        assert!(one.is_constant(true));
        assert_eq!(one.to_bit_string(), "1111");
        assert_eq!(BooleanFunction::constant(7, true).count_ones(), 128);
    }

    #[test]
    fn all_ones_fault_gives_constant_one() {
        let net = SwitchingNetwork::from_edges(
            (0, 1),
            [(0, 2, Literal::pos(0)), (2, 1, Literal::neg(0)), (0, 1, Literal::pos(1))],
        )
        .unwrap();
        let all = Fault::constant_on(0..3, true);
        assert!(truth_table(&net, &all).unwrap().is_constant(true));
        // x0·~x0 ∨ x1 = x1
        assert_eq!(truth_table(&net, &Fault::empty()).unwrap().to_bit_string(), "0011");
    }

    #[test]
    fn parallel_table_matches_sequential() {
        let edges: Vec<_> = (0..8).map(|v| (v, v + 1, Literal::pos(v))).chain([(0, 8, Literal::neg(3))]).collect();
        let net = SwitchingNetwork::from_edges((0, 8), edges).unwrap();
        let limits = Limits::default();
        let seq = truth_table_with(&net, &Fault::empty(), &limits).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(truth_table_parallel(&net, &Fault::empty(), &limits, jobs).unwrap(), seq);
        }
    }

    #[test]
    fn arity_cap_is_enforced() {
        let net = SwitchingNetwork::from_edges((0, 1), (0..3).map(|v| (0, 1, Literal::pos(v)))).unwrap();
        let limits = Limits {
            max_arity: 2,
            ..Limits::default()
        };
        assert!(matches!(
            truth_table_with(&net, &Fault::empty(), &limits),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn equivalence_and_difference() {
        let f = parity(3);
        assert_eq!(equivalent(&f, &f), Ok(true));
        assert!(difference_set(&f, &f).unwrap().is_empty());
        let zero = BooleanFunction::constant(3, false);
        let d = difference_set(&zero, &f).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|a| a.ones() % 2 == 1));
        assert_eq!(
            equivalent(&f, &BooleanFunction::constant(2, false)),
            Err(Error::Arity { expected: 3, found: 2 })
        );
    }

    #[test]
    fn clause_differs_from_one_at_a_single_point() {
        // x1 ∨ ~x2 ∨ x3, falsified only by (0,1,0); brute force over 8 inputs
        let clause = BooleanFunction::from_fn(3, |i| i & 1 == 1 || i >> 1 & 1 == 0 || i >> 2 & 1 == 1);
        let one = BooleanFunction::constant(3, true);
        let d = difference_set(&one, &clause).unwrap();
        assert_eq!(d, vec!["010".parse::<Assignment>().unwrap()]);
    }

    #[test]
    fn distinguishing_set_basics() {
        let f0 = BooleanFunction::constant(2, false);
        let g = BooleanFunction::from_fn(2, |i| i != 0);
        let r = min_distinguishing_set(&f0, &[g]).unwrap();
        assert_eq!(r.t, 1);
        assert!(matches!(
            min_distinguishing_set(&f0, std::slice::from_ref(&f0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conjunction_family_needs_every_input() {
        for n in 1..=4 {
            let zero = BooleanFunction::constant(n, false);
            let family: Vec<_> = (0..1 << n).map(|d| BooleanFunction::from_fn(n, |i| i == d)).collect();
            let r = min_distinguishing_set(&zero, &family).unwrap();
            assert_eq!(r.t, 1 << n);
        }
    }

    #[test]
    fn clauses_over_two_zeros_in_four_variables_need_six_inputs() {
        // clause falsified exactly by a tuple with two zeros
        let one = BooleanFunction::constant(4, true);
        let family: Vec<_> = (0..16usize)
            .filter(|d| d.count_ones() == 2)
            .map(|d| BooleanFunction::from_fn(4, |i| i != d))
            .collect();
        assert_eq!(family.len(), 6);
        assert_eq!(min_distinguishing_set(&one, &family).unwrap().t, 6);
    }
}
