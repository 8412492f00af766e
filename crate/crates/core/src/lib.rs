//! Free-group subgroup calculus over Stallings core graphs, and the
//! combinatorics of apartments in the free factor complexes `AF_n` and
//! `OF_n`.

pub mod complex;
pub mod error;
pub mod graphs;
pub mod oracle;
pub mod report;
pub mod subgroups;
pub mod suite;
pub mod words;

pub use complex::{Apartment, FactorVertex};
pub use error::{Error, Result};
pub use graphs::LabeledGraph;
pub use report::{Check, Report};
pub use subgroups::{FactorWitness, Mode, Subgroup};
pub use words::{BasisMap, Letter, Word};
