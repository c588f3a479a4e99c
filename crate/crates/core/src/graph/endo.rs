//! Backtracking search for endomorphisms (adjacency-preserving self-maps).

use super::{Graph, GraphError};
use crate::bits::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoMode {
    /// Stop at the first endomorphism that is not a bijection.
    FindProper,
    /// Count every endomorphism.
    EnumerateAll,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoReport {
    pub automorphisms: u64,
    pub proper_endomorphisms: u64,
    /// First proper endomorphism found, as an image table.
    pub proper_witness: Option<Vec<usize>>,
    pub nodes: u64,
}

impl EndoReport {
    pub fn is_core(&self) -> bool {
        self.proper_endomorphisms == 0
    }
}

struct Search<'a> {
    g: &'a Graph,
    mode: EndoMode,
    budget: u64,
    assignment: Vec<Option<usize>>,
    image_count: Vec<u32>,
    report: EndoReport,
}

impl Search<'_> {
    /// Returns `Ok(true)` when the search should stop.
    fn run(&mut self, domains: Vec<VertexSet>) -> Result<bool, GraphError> {
        self.report.nodes += 1;
        if self.report.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.budget));
        }
        // Most constrained unassigned vertex; ties by index.
        let next = (0..self.g.vertex_count())
            .filter(|&u| self.assignment[u].is_none())
            .min_by_key(|&u| (domains[u].len(), u));
        let Some(u) = next else {
            return Ok(self.leaf());
        };
        for x in domains[u].iter() {
            let mut child = domains.clone();
            let mut dead = false;
            for w in self.g.neighbors(u).iter() {
                if self.assignment[w].is_none() {
                    child[w] = child[w].intersection(self.g.neighbors(x));
                    if child[w].is_empty() {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            self.assignment[u] = Some(x);
            self.image_count[x] += 1;
            let stop = self.run(child)?;
            self.image_count[x] -= 1;
            self.assignment[u] = None;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn leaf(&mut self) -> bool {
        if self.image_count.iter().all(|&c| c == 1) {
            self.report.automorphisms += 1;
            false
        } else {
            self.report.proper_endomorphisms += 1;
            if self.report.proper_witness.is_none() {
                self.report.proper_witness =
                    Some(self.assignment.iter().map(|a| a.expect("complete")).collect());
            }
            self.mode == EndoMode::FindProper
        }
    }
}

/// Exhaustive endomorphism search with forward checking: assigning `u ↦ x`
/// restricts every unassigned neighbour of `u` to the neighbourhood of `x`.
pub fn endomorphism_search(g: &Graph, mode: EndoMode, budget: u64) -> Result<EndoReport, GraphError> {
    let n = g.vertex_count();
    let non_isolated = VertexSet::from_indices(n, (0..n).filter(|&v| g.degree(v) > 0));
    let domains = (0..n)
        .map(|v| {
            if g.degree(v) > 0 {
                non_isolated.clone()
            } else {
                VertexSet::full(n)
            }
        })
        .collect();
    let mut search = Search {
        g,
        mode,
        budget,
        assignment: vec![None; n],
        image_count: vec![0; n],
        report: EndoReport {
            automorphisms: 0,
            proper_endomorphisms: 0,
            proper_witness: None,
            nodes: 0,
        },
    };
    search.run(domains)?;
    Ok(search.report)
}
