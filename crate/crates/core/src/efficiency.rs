//! Efficiency of a weight vector via the induced digraph.
//!
//! For a reciprocal `A` and positive `w`, the digraph `G(A, w)` has an edge
//! `i -> j` (`i != j`) whenever `w_i / w_j >= a_ij`. The vector is efficient
//! (Pareto optimal) exactly when that digraph is strongly connected.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{one_based, one_based_groups};
use crate::matrix::{ReciprocalMatrix, WeightVector};

/// Relative edge tolerance used when the vector is a computed Perron vector
/// rather than an exact input. Structural ties `w_i / w_j = a_ij` (entries of
/// a consistent block, rows forced to all ones) are otherwise decided by the
/// last bits of the eigen-solve.
pub const PERRON_EDGE_TOL: f64 = 1e-9;

/// Largest order accepted by the cubic-time closure oracle.
pub const ORACLE_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct InducedDigraph {
    order: usize,
    adjacency: Vec<bool>,
}

impl InducedDigraph {
    pub fn from_fn(order: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adjacency = vec![false; order * order];
        for i in 0..order {
            for j in 0..order {
                adjacency[i * order + j] = i != j && edge(i, j);
            }
        }
        Self { order, adjacency }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.order + j]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&j| self.has_edge(i, j))
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.successors(i).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (0..self.order).filter(|&i| self.has_edge(i, j)).count()
    }

    /// Vertices with out-degree 0.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.order).filter(|&i| self.out_degree(i) == 0).collect()
    }

    /// Vertices with in-degree 0.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.order).filter(|&i| self.in_degree(i) == 0).collect()
    }

    /// Subgraph induced by deleting vertex `v`.
    pub fn without(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.order).filter(|&i| i != v).collect();
        Self::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]))
    }

    /// Strongly connected components in topological order of the
    /// condensation (a component precedes every component it reaches).
    /// Vertices inside a component are ascending.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut t = Tarjan {
            graph: self,
            next_index: 0,
            index: vec![None; self.order],
            lowlink: vec![0; self.order],
            on_stack: vec![false; self.order],
            stack: Vec::new(),
            components: Vec::new(),
        };
        for v in 0..self.order {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        // Tarjan finishes a component only after everything it reaches.
        let mut comps = t.components;
        comps.reverse();
        comps
    }
}

impl Serialize for InducedDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.adjacency.chunks(self.order).map(|row| {
            row.iter().map(|&e| u8::from(e)).collect::<Vec<_>>()
        }))
    }
}

struct Tarjan<'a> {
    graph: &'a InducedDigraph,
    next_index: usize,
    index: Vec<Option<usize>>,
    lowlink: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.next_index);
        self.lowlink[v] = self.next_index;
        self.next_index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;

        for w in self.graph.successors(v) {
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.lowlink[v] = self.lowlink[v].min(self.lowlink[w]);
                }
                Some(iw) if self.on_stack[w] => {
                    self.lowlink[v] = self.lowlink[v].min(iw);
                }
                Some(_) => {}
            }
        }

        if Some(self.lowlink[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("root is on the stack");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            self.components.push(comp);
        }
    }
}

fn check_dims(a: &ReciprocalMatrix, w: &WeightVector) -> Result<()> {
    if a.order() != w.len() {
        return Err(Error::DimensionMismatch { expected: a.order(), got: w.len() });
    }
    Ok(())
}

/// `G(A, w)` with edge `i -> j` iff `w_i / w_j >= a_ij (1 - eps)`.
pub fn induced_digraph(a: &ReciprocalMatrix, w: &WeightVector, eps: f64) -> Result<InducedDigraph> {
    check_dims(a, w)?;
    Ok(InducedDigraph::from_fn(a.order(), |i, j| w[i] / w[j] >= a.get(i, j) * (1.0 - eps)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub efficient: bool,
    #[serde(rename = "adjacency")]
    pub digraph: InducedDigraph,
    pub scc_count: usize,
    #[serde(rename = "sccs", serialize_with = "one_based_groups")]
    pub condensation: Vec<Vec<usize>>,
    #[serde(serialize_with = "one_based")]
    pub sinks: Vec<usize>,
    #[serde(serialize_with = "one_based")]
    pub sources: Vec<usize>,
}

impl EfficiencyReport {
    pub fn from_digraph(digraph: InducedDigraph) -> Self {
        let condensation = digraph.strongly_connected_components();
        Self {
            efficient: condensation.len() == 1,
            scc_count: condensation.len(),
            sinks: digraph.sinks(),
            sources: digraph.sources(),
            condensation,
            digraph,
        }
    }
}

pub fn is_efficient(a: &ReciprocalMatrix, w: &WeightVector) -> Result<EfficiencyReport> {
    is_efficient_with(a, w, 0.0)
}

pub fn is_efficient_with(
    a: &ReciprocalMatrix,
    w: &WeightVector,
    eps: f64,
) -> Result<EfficiencyReport> {
    Ok(EfficiencyReport::from_digraph(induced_digraph(a, w, eps)?))
}

/// Strong connectivity of `G(A, w)` decided by boolean transitive closure.
/// Shares nothing with the component search beyond the edge rule.
pub fn efficiency_oracle(a: &ReciprocalMatrix, w: &WeightVector) -> Result<bool> {
    efficiency_oracle_with(a, w, 0.0)
}

pub fn efficiency_oracle_with(a: &ReciprocalMatrix, w: &WeightVector, eps: f64) -> Result<bool> {
    check_dims(a, w)?;
    let n = a.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: ORACLE_MAX_ORDER });
    }
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            *r = i == j || w[i] / w[j] >= a.get(i, j) * (1.0 - eps);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    Ok(reach.iter().all(|row| row.iter().all(|&r| r)))
}

/// Entry `i` tells whether `w(i)` is efficient for `A(i)`.
pub fn subvector_efficiency_profile(a: &ReciprocalMatrix, w: &WeightVector) -> Result<Vec<bool>> {
    subvector_efficiency_profile_with(a, w, 0.0)
}

pub fn subvector_efficiency_profile_with(
    a: &ReciprocalMatrix,
    w: &WeightVector,
    eps: f64,
) -> Result<Vec<bool>> {
    check_dims(a, w)?;
    if a.order() < 3 {
        return Err(Error::OrderTooSmall { order: a.order(), min: 3 });
    }
    // G(A(i), w(i)) is the subgraph of G(A, w) with vertex i removed.
    let g = induced_digraph(a, w, eps)?;
    Ok((0..a.order())
        .map(|i| g.without(i).strongly_connected_components().len() == 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> InducedDigraph {
        InducedDigraph::from_fn(n, |i, j| edges.contains(&(i, j)))
    }

    #[test]
    fn scc_chain_and_cycle() {
        let chain = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(chain.strongly_connected_components(), vec![vec![0], vec![1], vec![2]]);
        let cycle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(cycle.strongly_connected_components(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn condensation_is_topological() {
        // {2,3} -> {0,1} -> {4}
        let g = graph(5, &[(0, 1), (1, 0), (2, 3), (3, 2), (3, 0), (1, 4)]);
        assert_eq!(g.strongly_connected_components(), vec![vec![2, 3], vec![0, 1], vec![4]]);
        assert_eq!(g.sinks(), vec![4]);
        assert_eq!(g.sources(), Vec::<usize>::new());
    }

    #[test]
    fn ones_matrix_gives_complete_digraph() {
        let r = is_efficient(&ReciprocalMatrix::ones(4), &WeightVector::ones(4)).unwrap();
        assert!(r.efficient);
        for i in 0..4 {
            assert_eq!(r.digraph.out_degree(i), 3);
        }
        assert!(r.sinks.is_empty() && r.sources.is_empty());
        assert!(efficiency_oracle(&ReciprocalMatrix::ones(4), &WeightVector::ones(4)).unwrap());
        assert_eq!(
            subvector_efficiency_profile(&ReciprocalMatrix::ones(4), &WeightVector::ones(4)).unwrap(),
            vec![true; 4]
        );
    }

    #[test]
    fn dimension_checks() {
        let a = ReciprocalMatrix::ones(3);
        let w = WeightVector::ones(4);
        assert!(matches!(is_efficient(&a, &w), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(efficiency_oracle(&a, &w), Err(Error::DimensionMismatch { .. })));
        let big = ReciprocalMatrix::ones(13);
        assert!(matches!(
            efficiency_oracle(&big, &WeightVector::ones(13)),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(subvector_efficiency_profile(&ReciprocalMatrix::ones(2), &WeightVector::ones(2))
            .is_err());
    }

    #[test]
    fn report_serializes_one_based() {
        let g = graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let r = EfficiencyReport::from_digraph(g);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["sinks"], serde_json::json!([3]));
        assert_eq!(v["sources"], serde_json::json!([1]));
        assert_eq!(v["sccs"], serde_json::json!([[1], [2], [3]]));
        assert_eq!(v["adjacency"][0], serde_json::json!([0, 1, 1]));
        assert_eq!(v["efficient"], serde_json::json!(false));
    }
}
