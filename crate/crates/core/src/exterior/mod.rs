//! Alternating forms on a coframe e¹,…,eⁿ.

mod blade;
mod form;
mod matrix;

pub use blade::{Blade, MAX_DIM};
pub use form::{volume, KForm};
pub use matrix::SquareMatrix;
