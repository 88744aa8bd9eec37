//! Homogeneous elements of free associative algebras: rigid factorization, good sets,
//! the lattice of subcategories they generate, and the supporting linear algebra.

pub mod algebra;
pub mod cpoly;
pub mod error;
pub mod expr;
pub mod factor;
pub mod good;
pub mod hom;
pub mod lattice;
pub mod linalg;
pub mod scalar;
pub mod subcat;
pub mod support;
pub mod word;

pub use algebra::{Algebra, HomElement};
pub use error::{Error, Result};
pub use expr::{format_element, parse_element};
pub use scalar::{Field, Scalar};
pub use word::Word;
