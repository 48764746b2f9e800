//! Exact linear algebra over the simplex category: operator normal forms,
//! normalized chains, combinatorial homotopy, and crossed group actions.

pub mod chain;
pub mod crossed;
pub mod delta;
pub mod doc;
pub mod dold_kan;
pub mod error;
pub mod family;
pub mod field;
pub mod generate;
pub mod matrix;
pub mod operator;
pub mod resolution;
pub mod selfcheck;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
