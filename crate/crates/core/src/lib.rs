//! Finite p-groups, their modular group algebras over `F_p`, and
//! invariants of the modular isomorphism problem.

pub mod catalog;
pub mod error;
pub mod fpalgebra;
pub mod invariants;
mod linalg;
pub mod obelisk;
pub mod pcgroup;
pub mod presentation;
pub mod smallalg;

pub use error::{MipError, Result};
pub use pcgroup::{GroupElement, PcGroup, Subgroup};
