//! Exact finite-instance machinery for Laurent polynomial identities (LPIs)
//! of unit groups: free-group words, Laurent polynomials, finite-dimensional
//! algebras given by structure constants, radicals, unit groups, and the
//! identity checks built on top of them.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod group;
pub mod identity;
pub mod laurent;
pub mod linalg;
pub mod scalar;
pub mod structure;
pub mod suite;
pub mod unipoly;
pub mod word;
