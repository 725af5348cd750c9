//! Group-code structure of linear codes over small finite fields.
//!
//! The central question: given a generator matrix of a linear code C in
//! F_q^n, is C the image of a (left, two-sided) ideal of some group algebra
//! FG under a basis-to-group bijection? The decision procedures work
//! entirely inside the ambient space, through the permutation automorphism
//! group of the code: C is a left group code exactly when PAut(C) contains
//! a regular subgroup, and a two-sided group code exactly when some regular
//! subgroup has its full S_n-centralizer inside PAut(C).
//!
//! On top of that sits a Cauchy/generalized Reed-Solomon layer: projective
//! line, PGL_2 homographies, code construction from a location vector and a
//! scaling map, and the classification of group-code structures at lengths
//! q, q-1 and q-2.

pub mod caps;
pub mod cauchy;
pub mod classify;
pub mod error;
pub mod gf;
pub mod groupalg;
pub mod lincode;
pub mod perm;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gf::{FieldElement, FiniteField};
pub use lincode::LinearCode;
pub use perm::{PermGroup, Permutation};
