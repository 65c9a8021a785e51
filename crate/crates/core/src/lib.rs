//! Designs over finite fields and the algebra around them.

pub mod arith;
pub mod codes;
pub mod counting;
pub mod crypto;
pub mod cyclotomic;
pub mod design;
pub mod error;
pub mod factor;
pub mod field;
pub mod fractions;
pub mod graph;
pub mod group;
pub mod matrix;
pub mod poly;
pub mod subspace;
pub mod text;

pub use codes::LinearCode;
pub use design::{DesignInstance, Mode};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use matrix::Matrix;
pub use num_bigint::BigUint;
pub use poly::Poly;
pub use subspace::Subspace;
