//! Quantum knot asymptotics.
//!
//! Exact and arbitrary-precision colored Jones polynomials of `T(2,2a+1)` and of the
//! twice-iterated torus knots `T(2,2a+1)^(2,2b+1)`, their saddle-point expansions, and the
//! SL(2,C) Chern-Simons invariants and twisted Reidemeister torsions that the expansion
//! coefficients are matched against.

pub mod asymptotics;
pub mod chern_simons;
pub mod error;
pub mod freegroup;
pub mod jones;
pub mod numerics;
pub mod representations;
pub mod torsion;

pub use error::{Error, Result};
pub use numerics::{ComplexAP, Ctx, MatC, Strip};
