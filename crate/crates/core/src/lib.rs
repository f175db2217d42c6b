//! Numerical laboratory for Chebyshev-type functionals.
//!
//! The crate evaluates the Chebyshev, Pompeiu–Chebyshev and Hardy–Chebyshev
//! functionals in both product and double-integral form, checks a catalog of
//! inequality bounds with verified preconditions, solves Pompeiu/Boggio
//! mean-value points, and searches parameterized function families for
//! equality witnesses.

pub mod bounds;
pub mod error;
pub mod expr;
pub mod functionals;
pub mod mvt;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{parse, Expr, ParamEnv};
pub use quad::{Interval, QuadConfig, QuadResult};
