//! Exact arithmetic, effective bounds and desk-scale solvers for unit
//! equations `a*eps + b*eta = c` over finitely generated domains.
//!
//! The crate is organised bottom-up: [`poly`] and [`upoly`] hold exact
//! polynomial arithmetic, [`linalg`] integer linear algebra with height
//! certificates, [`poly_linear`] degree-truncated polynomial systems and ideal
//! membership, [`domain`] presentations of domains, [`reduction`] the passage to
//! `B = A0[y, 1/f]`, [`function_field`] S-units over `Q(z)`, [`specialization`]
//! maps to algebraic numbers, [`bounds`] the explicit bound formulas and
//! [`solvers`] the enumeration solvers.

pub mod algebraic;
pub mod bounds;
pub mod domain;
pub mod error;
pub mod exec;
pub mod function_field;
pub mod linalg;
pub mod logvalue;
pub mod poly;
pub mod poly_linear;
pub mod reduction;
pub mod report;
pub mod solvers;
pub mod specialization;
pub mod upoly;
pub mod verify;

pub use error::{Error, Result};
pub use logvalue::LogValue;
pub use poly::{MultiPoly, QPoly, ZPoly};
