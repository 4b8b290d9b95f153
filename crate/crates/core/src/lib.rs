//! Evaluation codes from polynomials invariant under the alternating group,
//! over small finite fields.
//!
//! The crate is `no_std` (it needs `alloc`). Scans are sequential here but
//! every long-running one accepts a range or a first-coordinate split so
//! callers can distribute the work and merge results deterministically.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod codes;
pub mod count;
pub mod gf;
pub mod linalg;
pub mod mvpoly;
pub mod perm;
pub mod sym;

pub use codes::{build_am_code, build_dj_code, CodeKind, CodeParams, EvalCode};
pub use gf::{Field, FieldElement, GfError};
pub use mvpoly::{Monomial, MultiPoly, Permutation, PolyError};
pub use perm::{PermError, PermGroup};
pub use sym::{SymCombo, SymComboClass, SymError};
