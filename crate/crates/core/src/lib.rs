//! Coherent sets of gambles on finite possibility spaces as an information
//! algebra, with exact rational arithmetic throughout.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod atoms;
pub mod cli;
pub mod cone;
pub mod desirability;
pub mod embeddings;
pub mod error;
pub mod lp;
pub mod partition;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod space;

pub use algebra::{combine, extract, AlgebraModel};
pub use desirability::{SetKind, SetRep};
pub use error::{Error, Result};
pub use partition::{Partition, QuestionLattice};
pub use report::Report;
pub use space::{make_space, Event, Gamble, Space};
