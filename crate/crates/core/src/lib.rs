pub mod error;
pub mod lag;
pub mod ols;
pub mod series;
pub mod simulate;
pub mod unit_root;

pub use error::{Error, Result};
pub mod breaks;
pub mod cli;
