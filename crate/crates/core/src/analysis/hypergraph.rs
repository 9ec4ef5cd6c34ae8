use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use rand::seq::index;
use rand::Rng;

use super::lemmas::{BoundReport, BoundValue};
use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::scalar::BigFrac;

/// Largest number of candidate edges [`Hypergraph::random_with_edges`] will list.
pub const MAX_CANDIDATE_EDGES: u128 = 10_000_000;

/// A `c`-uniform hypergraph with sorted, distinct edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: usize,
    edge_size: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertices: usize, edge_size: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if edge_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "edge size {edge_size} must be at least 2"
            )));
        }
        if edge_size > vertices {
            return Err(Error::InvalidParameter(format!(
                "edge size {edge_size} exceeds vertex count {vertices}"
            )));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != edge_size || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "edge {e:?} is not a {edge_size}-set"
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertices) {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    universe: vertices,
                });
            }
            if !set.insert(e.clone()) {
                return Err(Error::InvalidParameter(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Hypergraph {
            vertices,
            edge_size,
            edges: set.into_iter().collect(),
        })
    }

    /// Every `c`-subset of `[0, V)`.
    pub fn complete(vertices: usize, edge_size: usize) -> Result<Self> {
        Self::random_with_edges(
            vertices,
            edge_size,
            usize::MAX,
            &mut crate::rng::rng_from(0),
        )
    }

    /// `edges` distinct `c`-subsets chosen uniformly (all of them when fewer exist).
    pub fn random_with_edges<R: Rng + ?Sized>(
        vertices: usize,
        edge_size: usize,
        edges: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if edge_size < 2 || edge_size > vertices {
            return Self::new(vertices, edge_size, vec![]);
        }
        let total = binomial(vertices as u64, edge_size as u64).unwrap_or(u128::MAX);
        if total > MAX_CANDIDATE_EDGES {
            return Err(Error::CapExceeded {
                count: total,
                cap: MAX_CANDIDATE_EDGES,
            });
        }
        let mut all = Vec::with_capacity(total as usize);
        for_each_combination::<()>(vertices, edge_size, |c| {
            all.push(c.to_vec());
            ControlFlow::Continue(())
        });
        let chosen: Vec<Vec<usize>> = if edges >= all.len() {
            all
        } else {
            let mut picks = index::sample(rng, all.len(), edges).into_vec();
            picks.sort_unstable();
            picks
                .into_iter()
                .map(|i| std::mem::take(&mut all[i]))
                .collect()
        };
        Ok(Hypergraph {
            vertices,
            edge_size,
            edges: chosen,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edge_size(&self) -> usize {
        self.edge_size
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `|E| / C(V, c)`.
    pub fn density(&self) -> BigFrac {
        let total = crate::combinatorics::binomial_big(self.vertices as u64, self.edge_size as u64);
        BigFrac::new(BigInt::from(self.edges.len()), BigInt::from(total))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }
}

/// Scans edges in sorted order, keeping each one disjoint from all kept so far.
pub fn greedy_maximal_matching(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut used = vec![false; h.vertices];
    let mut out = Vec::new();
    for e in &h.edges {
        if e.iter().all(|&v| !used[v]) {
            for &v in e {
                used[v] = true;
            }
            out.push(e.clone());
        }
    }
    out
}

/// Pairwise disjoint, and no edge of `h` avoids all of them.
pub fn is_maximal_matching(h: &Hypergraph, matching: &[Vec<usize>]) -> bool {
    let mut used = vec![false; h.vertices];
    for e in matching {
        for &v in e {
            if used[v] {
                return false;
            }
            used[v] = true;
        }
    }
    h.edges.iter().all(|e| e.iter().any(|&v| used[v]))
}

/// Greedy matching size against `(ε / c²)·(V − c + 1)`, compared exactly as
/// `|M|·c²·C(V, c) ≥ |E|·(V − c + 1)`.
pub fn check_matching_lemma(h: &Hypergraph) -> BoundReport {
    let matching = greedy_maximal_matching(h);
    let c = h.edge_size;
    let density = h.density();
    let bound = &density * BigFrac::new(BigInt::from(h.vertices - c + 1), BigInt::from(c * c));
    let satisfied = BigFrac::from(BigInt::from(matching.len())) >= bound;
    BoundReport {
        bound_name: "matching",
        inputs: vec![
            ("vertices", h.vertices.to_string()),
            ("edge_size", c.to_string()),
            ("edges", h.edges.len().to_string()),
            ("density", density.to_string()),
        ],
        computed_bound: BoundValue::Rational(bound),
        satisfied,
        extra: vec![("matching_size", matching.len().to_string())],
    }
}
