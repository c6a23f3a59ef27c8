//! Exact combinatorics of partitions, binary words and q-series: Durfee
//! decompositions and rim-hook statistics, energy and crystal operators on
//! bit sequences, the associated bijections, and finite checks of the
//! generating-function identities that tie them together.

pub mod abf;
pub mod bijections;
pub mod cli;
pub mod error;
pub mod kostka;
pub mod partitions;
pub mod paths;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use paths::BitSeq;
pub use qseries::QSeries;
