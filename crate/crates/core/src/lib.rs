//! Exact computations for rank-n generalized Baumslag-Solitar groups.
//!
//! * [`lattice`]: integer matrices, Hermite/Smith forms, sublattices of Z^n.
//! * [`gog`]: graphs of groups with Z^n vertex and edge groups.
//! * [`monodromy`]: modular homomorphism, monodromy classification and
//!   property verdicts.
//! * [`hnn`]: Britton normal forms in ascending HNN extensions of Z^n.
//! * [`finquo`]: finite quotients of ascending HNN extensions and the
//!   certificate search.

pub mod cli;
pub mod error;
pub mod finquo;
pub mod gog;
pub mod hnn;
pub mod json;
pub mod lattice;
pub mod monodromy;

pub use error::{Error, ParseError, Result};
