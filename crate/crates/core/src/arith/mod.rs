//! Certified arithmetic: dyadic rationals, real intervals, complex rectangles.

mod complex;
pub mod decimal;
mod dyadic;
mod elementary;
mod interval;

pub use complex::ComplexInterval;
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
