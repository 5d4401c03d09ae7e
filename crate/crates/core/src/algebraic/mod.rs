//! Exact algebraic numbers: certified root isolation, factorization over `Q`,
//! arithmetic in simple number fields and absolute heights.

pub mod complex;
pub mod factor;
pub mod field;
pub mod number;
pub mod roots;

pub use factor::{factor_squarefree, factor_z, is_irreducible};
pub use field::NumberField;
pub use number::AlgebraicNumber;
pub use roots::{isolate_roots, RootDisc};
