//! Computations in τ-tilting theory for finite dimensional bound quiver algebras.

pub mod error;
pub mod exactalg;
pub mod quiveralg;
pub mod repmod;
pub mod format;
pub mod corpus;
pub mod approx;
pub mod tautilt;
pub mod latticewide;
pub mod epis;
pub mod export;
pub mod oracle;

pub use error::{Error, Result};
