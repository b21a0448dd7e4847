//! Strong regularity, checked pair by pair.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SrgResult {
    /// `mu` is `None` for a complete graph, where no non-adjacent pair exists.
    Strong {
        v: usize,
        k: usize,
        lambda: Option<usize>,
        mu: Option<usize>,
        degenerate: bool,
    },
    NotStrong {
        reason: String,
        witness: Vec<usize>,
    },
}

impl SrgResult {
    pub fn is_strong(&self) -> bool {
        matches!(self, SrgResult::Strong { .. })
    }

    pub fn params(&self) -> Option<(usize, usize, Option<usize>, Option<usize>)> {
        match self {
            SrgResult::Strong { v, k, lambda, mu, .. } => Some((*v, *k, *lambda, *mu)),
            SrgResult::NotStrong { .. } => None,
        }
    }
}

fn common(g: &Graph, a: usize, b: usize) -> usize {
    let (x, y) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Checks regularity and the two common-neighbour counts over every pair.
/// Empty and complete graphs are reported as degenerate.
pub fn srg_check(g: &Graph) -> SrgResult {
    let v = g.num_vertices();
    if v == 0 {
        return SrgResult::Strong { v, k: 0, lambda: None, mu: None, degenerate: true };
    }
    let k = g.degree(0);
    if let Some(x) = (0..v).find(|&x| g.degree(x) != k) {
        return SrgResult::NotStrong {
            reason: format!("degree {} differs from {k}", g.degree(x)),
            witness: vec![0, x],
        };
    }
    let mut lambda: Option<(usize, usize, usize)> = None;
    let mut mu: Option<(usize, usize, usize)> = None;
    for a in 0..v {
        for b in a + 1..v {
            let c = common(g, a, b);
            let slot = if g.adjacent(a, b) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some((c, a, b)),
                Some((c0, a0, b0)) if *c0 != c => {
                    let what = if g.adjacent(a, b) { "adjacent" } else { "non-adjacent" };
                    return SrgResult::NotStrong {
                        reason: format!("{what} pairs have {c0} and {c} common neighbours"),
                        witness: vec![*a0, *b0, a, b],
                    };
                }
                _ => {}
            }
        }
    }
    let degenerate = lambda.is_none() || mu.is_none();
    SrgResult::Strong { v, k, lambda: lambda.map(|x| x.0), mu: mu.map(|x| x.0), degenerate }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_examples() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(srg_check(&c5).params(), Some((5, 2, Some(0), Some(1))));
        let mut e = Vec::new();
        for i in 0..5 {
            e.extend([(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
        }
        assert_eq!(srg_check(&Graph::from_edges(10, e)).params(), Some((10, 3, Some(0), Some(1))));
        assert!(matches!(srg_check(&Graph::complete(4)), SrgResult::Strong { degenerate: true, mu: None, .. }));
    }

    #[test]
    fn failures_carry_witnesses() {
        match srg_check(&Graph::path(3)) {
            SrgResult::NotStrong { witness, .. } => assert_eq!(witness, vec![0, 1]),
            r => panic!("{r:?}"),
        }
        // C6 is regular, but opposite and distance-two vertices differ in common neighbours
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        assert!(!srg_check(&c6).is_strong());
    }
}
