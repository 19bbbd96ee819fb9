//! Exact enumeration toolkit for GR(d,N) garden algebras and valise Adinkras.
//!
//! The library is organized around the chain of objects that the counting
//! results tie together:
//!
//! * [`bitlinalg`] — vectors and matrices over Z_2, row reduction, affine
//!   systems, and subspace enumeration; the substrate for everything else.
//! * [`codes`] — doubly-even binary codes: representation, exhaustive
//!   enumeration, and the closed-form counts C(N,k).
//! * [`chromotopology`] — edge-colored coset graphs of doubly-even codes and
//!   the chromotopology axioms.
//! * [`adinkra`] — valise rankings and dashings: the 2-colored 4-cycle parity
//!   system, dashing counts, and adinkraizability.
//! * [`garden`] — signed permutation matrices, the GR(d,N) relation checker,
//!   and the bijection between generator lists and row-ordered valise
//!   Adinkras, in both directions.
//! * [`census`] — exact closed-form class counts for unsigned and signed
//!   generator sets, over unbounded integers.
//! * [`oracle`] — independent brute-force enumerators that validate every
//!   closed-form count at small scale.

pub mod adinkra;
pub mod bitlinalg;
pub mod census;
pub mod chromotopology;
pub mod codes;
pub mod error;
pub mod garden;
pub mod oracle;
pub mod report;

pub use error::Error;
pub use report::{Check, ValidationReport};
