//! Twisted quantum double of a finite group, with exhaustive exact
//! verification of the quasitriangular quasi-Hopf algebra axioms and the
//! braided category of cocycle crossed G-modules.
//!
//! All arithmetic is exact, over cyclotomic fields Q(zeta_N); every axiom
//! check is an equality of fully reduced scalars or sparse tensors.

pub mod catalog;
pub mod cochain;
pub mod crossedmod;
pub mod cyclotomic;
pub mod dpr;
pub mod group;
pub mod qhopf;
pub mod reconstruct;
pub mod report;
pub mod solve;

pub use cyclotomic::Cyc;
pub use group::FiniteGroup;
pub use report::{Report, Status};
