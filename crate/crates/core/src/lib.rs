//! Computational toolkit for counting prime elements of number fields in
//! regions of `K (x) R` with congruence conditions, and for the geometry and
//! harmonic analysis around it.

pub mod characters;
pub mod dd;
pub mod domain;
pub mod elements;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fields;
pub mod fourier;
pub mod harness;
pub mod ideal;
pub mod integral;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod primes;
pub mod qmc;
pub mod region;
pub mod residue;
pub mod sectors;
pub mod sieve;

pub use error::{Error, Result};
pub use field::{FieldElement, NumberField, NumberFieldSpec};
pub use ideal::FractionalIdeal;
