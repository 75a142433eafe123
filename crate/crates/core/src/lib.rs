//! Chip-firing ideals of multigraphs: toppling and parking ideals, Riemann-Roch
//! for monomial ideals, free resolutions and multigraded Hilbert series.

pub mod error;
pub mod exact_linalg;
pub mod chipfiring;
pub mod hilbert;
pub mod monomials;
pub mod multigraph;
pub mod resolutions;
pub mod riemann_roch;

pub use error::{Error, Result};
pub use hilbert::GradedPolynomial;
pub use exact_linalg::{Characteristic, IntMatrix, SmithForm};
pub use monomials::{Monomial, MonomialIdeal};
pub use multigraph::{DivisorClassGroup, Multigraph, Split};
pub use resolutions::{BettiTable, FreeComplex, LabeledComplex, OrderedPartition};
