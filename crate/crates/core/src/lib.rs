//! Splitting bases for the top homology of partition lattices and their
//! signed variants, with certificates and geometric cross-checks against the
//! bounded regions of the corresponding hyperplane arrangements.

pub mod arrangement;
pub mod error;
pub mod flat;
pub mod homology;
pub mod parallel;
pub mod partition;
pub mod permutation;
pub mod poset;
pub mod report;
pub mod splitting;
pub mod zmatrix;

pub use error::{Error, Result};
pub use partition::{FamilyKind, LatticeFamily, PartitionLattice};
pub use report::CertificateReport;
