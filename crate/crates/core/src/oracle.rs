//! Batched independence oracle and adaptive-round accounting.
//!
//! Algorithms talk to a matroid only through [`Oracle::submit_round`]. Each call
//! is one adaptive round, no matter how many subsets it carries. Shared
//! [`QueryLedger`]s let composed algorithms accumulate a single cost.

use std::cell::RefCell;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, GroundSet};

/// Batches at least this large are evaluated on the rayon pool.
const PARALLEL_BATCH: usize = 256;

/// A pure independence predicate over subsets of `0..len()`.
pub trait Independence: Send + Sync {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn is_independent(&self, set: ElementSet) -> bool;
}

/// Any `Fn(ElementSet) -> bool` as a backend. Handy for hand-built fixtures.
pub struct FnIndependence<F> {
    n: usize,
    f: F,
}

impl<F: Fn(ElementSet) -> bool + Send + Sync> FnIndependence<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnIndependence { n, f }
    }
}

impl<F: Fn(ElementSet) -> bool + Send + Sync> Independence for FnIndependence<F> {
    fn len(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: ElementSet) -> bool {
        (self.f)(set)
    }
}

/// Adaptive cost of everything run against one session.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    pub rounds: usize,
    pub queries: usize,
    pub basis_calls: usize,
    pub per_round_sizes: Vec<usize>,
}

impl QueryLedger {
    /// Cost accrued after `earlier` was snapshotted from the same session.
    pub fn since(&self, earlier: &QueryLedger) -> QueryLedger {
        QueryLedger {
            rounds: self.rounds - earlier.rounds,
            queries: self.queries - earlier.queries,
            basis_calls: self.basis_calls - earlier.basis_calls,
            per_round_sizes: self.per_round_sizes[earlier.per_round_sizes.len()..].to_vec(),
        }
    }
}

impl fmt::Display for QueryLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rounds, {} queries, {} basis calls",
            self.rounds, self.queries, self.basis_calls
        )
    }
}

/// The query interface every algorithm is written against.
///
/// Sessions, contraction/deletion/dual views and the unmetered wrapper all
/// implement it. Queries must be subsets of [`Oracle::active`].
pub trait Oracle {
    fn ground(&self) -> &GroundSet;

    /// Elements addressable through this oracle.
    fn active(&self) -> ElementSet {
        self.ground().full()
    }

    /// One adaptive round: answers positionally, charges the ledger once.
    fn submit_round(&self, batch: &[ElementSet]) -> Result<Vec<bool>>;

    /// A single query outside the cost model (verification and brute force only).
    fn probe(&self, set: ElementSet) -> Result<bool>;

    fn ledger(&self) -> QueryLedger;

    fn record_basis_call(&self);

    /// Convenience: a round holding exactly one query.
    fn query(&self, set: ElementSet) -> Result<bool> {
        Ok(self.submit_round(&[set])?[0])
    }
}

/// Rejects empty batches and queries outside `active`.
pub(crate) fn check_batch(ground: &GroundSet, active: ElementSet, batch: &[ElementSet]) -> Result<()> {
    if batch.is_empty() {
        return Err(MatroidError::EmptyBatch);
    }
    for &set in batch {
        check_query(ground, active, set)?;
    }
    Ok(())
}

pub(crate) fn check_query(ground: &GroundSet, active: ElementSet, set: ElementSet) -> Result<()> {
    ground.check(set)?;
    if let Some(bad) = (set - active).first() {
        return Err(MatroidError::MalformedQuery(format!(
            "element {} is not addressable in this view",
            ground.names()[bad]
        )));
    }
    Ok(())
}

/// A matroid behind a metered oracle.
pub struct OracleSession {
    ground: GroundSet,
    backend: Arc<dyn Independence>,
    ledger: RefCell<QueryLedger>,
}

impl OracleSession {
    pub fn new(ground: GroundSet, backend: Arc<dyn Independence>) -> Result<Self> {
        if ground.len() != backend.len() {
            return Err(MatroidError::Domain(format!(
                "ground set has {} elements but the backend has {}",
                ground.len(),
                backend.len()
            )));
        }
        Ok(OracleSession {
            ground,
            backend,
            ledger: RefCell::new(QueryLedger::default()),
        })
    }

    pub fn backend(&self) -> &Arc<dyn Independence> {
        &self.backend
    }

    /// A fresh session over the same matroid with an empty ledger.
    pub fn fresh(&self) -> OracleSession {
        OracleSession {
            ground: self.ground.clone(),
            backend: Arc::clone(&self.backend),
            ledger: RefCell::new(QueryLedger::default()),
        }
    }

    pub fn reset_ledger(&self) {
        *self.ledger.borrow_mut() = QueryLedger::default();
    }
}

impl fmt::Debug for OracleSession {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleSession")
            .field("ground", &self.ground.names())
            .field("ledger", &*self.ledger.borrow())
            .finish()
    }
}

impl Oracle for OracleSession {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn submit_round(&self, batch: &[ElementSet]) -> Result<Vec<bool>> {
        check_batch(&self.ground, self.ground.full(), batch)?;
        let backend = &self.backend;
        let answers: Vec<bool> = if batch.len() >= PARALLEL_BATCH {
            batch.par_iter().map(|&s| backend.is_independent(s)).collect()
        } else {
            batch.iter().map(|&s| backend.is_independent(s)).collect()
        };
        let mut ledger = self.ledger.borrow_mut();
        ledger.rounds += 1;
        ledger.queries += batch.len();
        ledger.per_round_sizes.push(batch.len());
        Ok(answers)
    }

    fn probe(&self, set: ElementSet) -> Result<bool> {
        self.ground.check(set)?;
        Ok(self.backend.is_independent(set))
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger.borrow().clone()
    }

    fn record_basis_call(&self) {
        self.ledger.borrow_mut().basis_calls += 1;
    }
}

/// Routes every round through [`Oracle::probe`], so nothing is charged.
///
/// Brute-force checkers run through this so that round counts measure only
/// the algorithm under test.
pub struct Unmetered<'a>(pub &'a dyn Oracle);

impl Oracle for Unmetered<'_> {
    fn ground(&self) -> &GroundSet {
        self.0.ground()
    }

    fn active(&self) -> ElementSet {
        self.0.active()
    }

    fn submit_round(&self, batch: &[ElementSet]) -> Result<Vec<bool>> {
        check_batch(self.ground(), self.active(), batch)?;
        batch.iter().map(|&s| self.0.probe(s)).collect()
    }

    fn probe(&self, set: ElementSet) -> Result<bool> {
        self.0.probe(set)
    }

    fn ledger(&self) -> QueryLedger {
        self.0.ledger()
    }

    fn record_basis_call(&self) {}
}
