//! Finite groupoids, bibundles and their calculus.
//!
//! Arrows compose as `gg'` when `r(g) = l(g')` (`l` is the target, `r`
//! the source), bibundles compose left to right, and every construction
//! is exact and deterministic at finite scale.

pub mod bibundle;
pub mod calculus;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod finset;
pub mod fixtures;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod linking;
pub mod simplicial;

pub use bibundle::{Bibundle, Point, Side};
pub use error::{Error, Result, ValidationReport};
pub use finset::FinSet;
pub use groupoid::{FinCategory, FinGroupoid, GroupoidHom};
