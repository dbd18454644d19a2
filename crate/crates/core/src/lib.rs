//! Exact computations in stable categories of finite-dimensional modules over
//! bound quiver algebras.
//!
//! The crate builds the right triangulated category `B/I` (modules modulo
//! maps factoring through injectives, shift = cosyzygy) and the left
//! triangulated category `B/P` (modulo projectives, shift = syzygy), tests
//! rigidity of a subcategory `M`, certifies membership in `M * ΣM` and
//! `ΩM * M`, and verifies on concrete instances that the subquotients
//! `M*ΣM / ΣM` and `ΩM*M / M` are equivalent to finite-dimensional modules
//! over the stable endomorphism algebra of `M`.
//!
//! Everything is exact arithmetic over a prime field; there is no floating
//! point anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod exactla;
pub mod fpmod;
pub mod onesided;
pub mod rep;
pub mod rigidstar;


pub use algebra::{Arrow, BoundAlgebra, Path, Quiver, Relation};
pub use error::{Error, Result};
pub use exactla::{FieldPrime, Mat};
pub use onesided::{LeftTriangle, QuotCategory, QuotHom, RightTriangle, Side, StableCategory, Subcat};
pub use rep::{HomSpace, Rep, RepMor, Ses};
