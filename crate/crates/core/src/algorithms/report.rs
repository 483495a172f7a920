use serde::Serialize;
use serde_json::{json, Value};

use crate::ground::{ElementSet, GroundSet};
use crate::oracle::QueryLedger;
use crate::weights::Weight;

/// What one pass of the reduction did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IterationTrace {
    /// Basis of the contraction returned by the search procedure.
    pub basis: ElementSet,
    /// Rank of the contraction at the start of the pass.
    pub contraction_rank: usize,
    /// Minima of the fundamental cocircuits.
    pub direct: ElementSet,
    /// Minima of symmetric differences inside collision groups, beyond `direct`.
    pub via_differences: ElementSet,
    /// Number of collision groups with at least two cocircuits.
    pub collisions: usize,
    /// Rounds spent in this pass, including the basis search.
    pub rounds: usize,
}

/// Outcome and cost of one algorithm run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport<W> {
    pub algorithm: String,
    pub solution: ElementSet,
    pub total_weight: W,
    pub rounds: usize,
    pub queries: usize,
    pub basis_calls: usize,
    pub outer_iterations: usize,
    pub per_iteration: Vec<IterationTrace>,
}

impl<W: Weight> RunReport<W> {
    pub(crate) fn new(algorithm: &str, solution: ElementSet, total_weight: W, cost: &QueryLedger) -> Self {
        RunReport {
            algorithm: algorithm.to_string(),
            solution,
            total_weight,
            rounds: cost.rounds,
            queries: cost.queries,
            basis_calls: cost.basis_calls,
            outer_iterations: 0,
            per_iteration: Vec::new(),
        }
    }

    /// JSON with element names in place of indices.
    pub fn to_json(&self, ground: &GroundSet) -> Value {
        let names = |s: ElementSet| ground.names_of(s);
        let iterations: Vec<Value> = self
            .per_iteration
            .iter()
            .map(|it| {
                json!({
                    "basis": names(it.basis),
                    "contraction_rank": it.contraction_rank,
                    "direct": names(it.direct),
                    "symmetric_differences": names(it.via_differences),
                    "collisions": it.collisions,
                    "rounds": it.rounds,
                })
            })
            .collect();
        json!({
            "algorithm": self.algorithm,
            "solution": names(self.solution),
            "weight": self.total_weight.to_f64(),
            "rounds": self.rounds,
            "queries": self.queries,
            "basis_calls": self.basis_calls,
            "outer_iterations": self.outer_iterations,
            "per_iteration": iterations,
        })
    }
}
