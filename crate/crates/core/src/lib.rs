pub mod bases;
pub mod catalog;
pub mod complex;
pub mod error;
pub mod generate;
pub mod gf2;
pub mod matroid;
pub mod oracle;
pub mod reduction;
pub mod suite;
pub mod tripartition;

pub use complex::{Cell, Chain, OrderedComplex, PerDim};
pub use error::{Error, Result};
pub use gf2::{int_product, Gf2Matrix, IntMatrix};
