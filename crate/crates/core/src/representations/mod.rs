//! Concrete matroid backends and the oracle views built on top of them.

mod binary;
mod graphic;
pub mod io;
mod uniform;
pub(crate) mod views;

pub use binary::BinaryRep;
pub use graphic::{graphic_to_binary, GraphRep};
pub use uniform::UniformRep;
pub use views::{contract_view, delete_view, dual_view, OracleView, ViewKind};
