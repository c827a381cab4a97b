pub mod arith;
pub mod baker;
pub mod bound;
pub mod dominance;
pub mod error;
pub mod height;
pub mod instance;
pub mod poly;
pub mod recurrence;
pub mod report;
pub mod roots;
pub mod search;

pub use error::{Error, Result};
