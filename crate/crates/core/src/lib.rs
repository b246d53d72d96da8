//! Exact construction, multiplication and basis decomposition for the `K`
//! and `L` families of formal power series in `x_0, x_1, x_2, ..., x_inf`.

pub mod basis;
pub mod cli;
pub mod error;
pub mod families;
pub mod oracle;
pub mod series;
pub mod shuffle;
pub mod subset;
pub mod suites;

pub use error::{Error, Result};
pub use series::{ExtIndex, Monomial, Series};
pub use subset::SubsetSpec;
