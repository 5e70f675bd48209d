//! Finite fields, univariate polynomials and homogeneous forms.

pub mod factor;
pub mod field;
pub mod form;
pub mod mpoly;
pub mod poly;
pub mod prime;

pub use factor::{factor, is_irreducible, roots, set_default_seed, Embedding};
pub use field::{Fe, Field, MAX_EXT};
pub use poly::{Degree, Targeted, UniPoly};
pub use prime::{is_prime, Modulus};
