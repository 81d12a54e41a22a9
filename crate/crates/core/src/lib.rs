//! Exact computations on finite ranked posets and their quadratic algebras.

pub mod dual_koszul;
pub mod error;
pub mod field;
pub mod linalg;
pub mod order_complex;
pub mod phi;
pub mod poset;
pub mod ralgebra;
pub mod series;
