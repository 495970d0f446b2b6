//! Computational kernel for finite-type Garside monoids.
//!
//! The crate builds a monoid from a finite lattice of simple elements (the
//! divisors of a Garside element), computes greedy normal forms, gcds and
//! lcms on both sides, parabolic submonoids and their standardizers, ribbons,
//! and conjugacy of parabolic subgroups in the group of fractions. Instances
//! come from Coxeter presentations (classical braid monoids for any finite
//! Coxeter matrix, dual braid monoids for the symmetric groups) or from a
//! JSON description. A brute-force oracle re-derives every operation from
//! the product table alone and backs the test suites.

pub mod error;
pub mod fractions;
pub mod coxeter;
pub mod lattice;
pub mod monoid;
pub mod oracle;
pub mod parabolic;
pub mod perm;
pub mod ribbon;
pub mod presentations;

pub use error::{Error, Result, RibbonError};
pub use lattice::{AtomId, AtomInfo, LatticeInput, Simple, SimpleLattice, ValidationCheck, ValidationReport};
pub use fractions::{GroupFraction, ParabolicSubgroup};
pub use monoid::{Monoid, MonoidElement};
pub use oracle::{AgreementBounds, DivisorSet, LemmaSuiteConfig, Oracle};
pub use ribbon::{Ribbon, RibbonGraph};
pub use parabolic::StandardParabolic;
pub use presentations::{CheckReport, MonoidSpec};
