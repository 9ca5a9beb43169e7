//! Exact K-theoretic invariants of matroids and polymatroids.
//!
//! The crate computes, with exact rational arithmetic throughout:
//!
//! - matroid rank calculus (minors, duals, Tutte/beta, principal extensions),
//! - polymatroid lattice-point bodies and multisymmetric lifts,
//! - Snapper polynomials via the Hall-Rado and dragon Hall-Rado counts,
//! - the structure-sheaf K-class of the degeneration `Y_P` and its
//!   transform, computed by two independent routes,
//! - Lorentzian and denormalized-Lorentzian certification,
//! - h*-vectors, Macaulay-bound verdicts, and Speyer's omega invariant.
//!
//! Data-parallel inner loops (axiom sweeps, lattice enumeration, grid
//! cross-validation, derivative scans) run on rayon when the default
//! `parallel` feature is on and degrade to plain iterators without it; both
//! paths emit identical, canonically ordered results.

pub mod catalog;
pub mod error;
pub mod experiments;
pub mod hstar;
pub mod io;
pub mod kclass;
pub mod lorentzian;
pub mod matroid;
mod par;
pub mod poly;
pub mod polymatroid;
pub mod snapper;
pub mod subset;

pub use error::{Error, Result};
pub use matroid::Matroid;
pub use poly::{Basis, ExactPoly, Signature};
pub use polymatroid::{LatticePointSet, Polymatroid};
pub use snapper::BundleSpec;
pub use subset::Subset;
