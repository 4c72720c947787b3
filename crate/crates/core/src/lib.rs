//! Finite 2-groups built from squarings, the semilinear group ΓL_1(p^m)
//! in standard form, digit combinatorics, and the classification of
//! 2-groups whose automorphism group has exactly three orbits.

pub mod classify;
pub mod error;
pub mod field;
pub mod gammal1;
pub mod group;
pub mod intertwine;
pub mod lemmas;
pub mod linalg;
pub mod numtheory;
pub mod report;
pub mod squaring;

pub use error::{Error, Result};
pub use field::{Elem, FieldSpec};
pub use gammal1::{HomTarget, SemilinearMap, StandardParams};
pub use group::GroupSpec;
pub use squaring::{Predatum, Squaring};
