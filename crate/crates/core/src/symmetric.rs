//! Shannon's triangular-ladder network for symmetric functions.

use crate::error::{Error, Result};
use crate::network::{Edge, Literal, NodeId, SwitchingNetwork};

/// Value spectrum `(t_0, …, t_n)` of a symmetric function of `x_1..x_n`:
/// `t_k` is the value on inputs with exactly `k` ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricSpec {
    spectrum: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricKind {
    /// 1 iff at least `threshold` ones.
    AtLeast { threshold: usize },
    /// 1 iff exactly `⌈n/2⌉` ones.
    EqualMid,
    /// 1 iff not exactly `⌈n/2⌉` ones.
    NotEqualMid,
}

impl SymmetricSpec {
    /// Fails unless `n ≥ 1` and the spectrum has a 1 somewhere.
    pub fn new(spectrum: Vec<bool>) -> Result<Self> {
        if spectrum.len() < 2 {
            return Err(Error::Range("symmetric spectrum needs n ≥ 1 (length ≥ 2)".into()));
        }
        if !spectrum.iter().any(|&b| b) {
            return Err(Error::Range("symmetric function must not be identically 0".into()));
        }
        Ok(SymmetricSpec { spectrum })
    }

    /// The spectrum of one of the named families.
    pub fn of_kind(kind: SymmetricKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("n must be at least 1".into()));
        }
        let mid = n.div_ceil(2);
        let spectrum = match kind {
            SymmetricKind::AtLeast { threshold } => {
                if threshold == 0 || threshold > n {
                    return Err(Error::Range(format!(
                        "threshold {threshold} must lie in 1..={n}"
                    )));
                }
                (0..=n).map(|k| k >= threshold).collect()
            }
            SymmetricKind::EqualMid => (0..=n).map(|k| k == mid).collect(),
            SymmetricKind::NotEqualMid => (0..=n).map(|k| k != mid).collect(),
        };
        Self::new(spectrum)
    }

    pub fn n(&self) -> usize {
        self.spectrum.len() - 1
    }

    pub fn spectrum(&self) -> &[bool] {
        &self.spectrum
    }
}

fn ladder_node(level: usize, ones: usize) -> NodeId {
    (level * (level + 1) / 2 + ones) as NodeId
}

/// Shannon network with `n² + n` edges implementing `spec`.
///
/// Node `(i, j)` means "after reading `x_1..x_i`, `j` of them were 1".
/// From `(i, j)` an `x̄_{i+1}` edge leads to `(i+1, j)` and an `x_{i+1}`
/// edge to `(i+1, j+1)`. Pole a is `(0, 0)`; every final node `(n, j)` with
/// `t_j = 1` is merged into pole b, the one with the smallest `j`.
/// Final nodes with `t_j = 0` stay as dead ends.
pub fn shannon_network(spec: &SymmetricSpec) -> SwitchingNetwork {
    let n = spec.n();
    let first_one = spec.spectrum.iter().position(|&b| b).expect("spec is nonzero");
    let pole_b = ladder_node(n, first_one);
    let target = |level: usize, ones: usize| {
        if level == n && spec.spectrum[ones] {
            pole_b
        } else {
            ladder_node(level, ones)
        }
    };
    let mut edges = Vec::with_capacity(n * n + n);
    for level in 0..n {
        let var = (level + 1) as u32;
        for ones in 0..=level {
            let from = ladder_node(level, ones);
            edges.push((from, target(level + 1, ones), Literal::neg(var)));
            edges.push((from, target(level + 1, ones + 1), Literal::pos(var)));
        }
    }
    let mut nodes: Vec<NodeId> = (0..=n)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .map(|(i, j)| target(i, j))
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(id, (u, v, label))| Edge { id, u, v, label })
        .collect();
    SwitchingNetwork::new(nodes, (ladder_node(0, 0), pole_b), edges).expect("ladder construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{truth_table, BooleanFunction};
    use crate::network::Fault;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn named_spectra() {
        let s = SymmetricSpec::of_kind(SymmetricKind::AtLeast { threshold: 2 }, 3).unwrap();
        assert_eq!(s.spectrum(), bits("0011"));
        let s = SymmetricSpec::of_kind(SymmetricKind::EqualMid, 3).unwrap();
        assert_eq!(s.spectrum(), bits("0010"));
        let s = SymmetricSpec::of_kind(SymmetricKind::NotEqualMid, 4).unwrap();
        assert_eq!(s.spectrum(), bits("11011"));
        assert!(matches!(
            SymmetricSpec::of_kind(SymmetricKind::AtLeast { threshold: 4 }, 3),
            Err(Error::Range(_))
        ));
        assert!(SymmetricSpec::new(bits("000")).is_err());
    }

    #[test]
    fn parity_of_three() {
        let net = shannon_network(&SymmetricSpec::new(bits("0101")).unwrap());
        assert_eq!(net.edge_count(), 12);
        assert_eq!(net.input_variables(), &[1, 2, 3]);
        let parity = BooleanFunction::from_fn(3, |i| i.count_ones() % 2 == 1);
        assert_eq!(truth_table(&net, &Fault::empty()).unwrap(), parity);
    }

    #[test]
    fn all_ones_detector() {
        for n in 1..=5 {
            let mut t = vec![false; n + 1];
            t[n] = true;
            let net = shannon_network(&SymmetricSpec::new(t).unwrap());
            let f = truth_table(&net, &Fault::empty()).unwrap();
            assert_eq!(f.ones().collect::<Vec<_>>(), vec![(1 << n) - 1]);
        }
    }

    #[test]
    fn not_equal_mid_of_four_matches_popcount() {
        let net = shannon_network(&SymmetricSpec::of_kind(SymmetricKind::NotEqualMid, 4).unwrap());
        let f = truth_table(&net, &Fault::empty()).unwrap();
        for i in 0..16usize {
            assert_eq!(f.value(i), i.count_ones() != 2, "input {i:04b}");
        }
    }

    #[test]
    fn generation_work_is_quadratic() {
        for n in [1usize, 5, 12, 30] {
            let net = shannon_network(&SymmetricSpec::of_kind(SymmetricKind::EqualMid, n).unwrap());
            assert_eq!(net.edge_count(), n * n + n);
            assert!(net.nodes().len() <= (n + 1) * (n + 2) / 2);
        }
    }
}
