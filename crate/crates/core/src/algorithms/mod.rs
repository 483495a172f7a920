//! Greedy, Borůvka, block-wise parallel basis search, and the reduction from
//! optimization to basis search.

mod boruvka;
mod greedy;
mod kuw;
mod reduction;
mod report;

pub use boruvka::boruvka;
pub use greedy::greedy;
pub use kuw::{kuw_basis_search, kuw_blocks, kuw_with, KuwSchedule, LoopHead};
pub use reduction::{optimize_binary, reduction_optimize, BasisSearch, Kuw, ReductionOptions};
pub use report::{IterationTrace, RunReport};
