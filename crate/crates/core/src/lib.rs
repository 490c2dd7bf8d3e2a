//! A finite order-algebra workbench for skew Hilbert algebras and their
//! relatives: orthoposets, orthomodular implication algebras, sectional
//! structures and the congruence and filter theory over them.

pub mod axioms;
pub mod cli;
pub mod bitset;
pub mod codec;
pub mod congruence;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod order;
pub mod report;
pub mod search;
pub mod structure;
pub mod term;
pub mod verdict;

pub use axioms::AxiomSystem;
pub use bitset::ElemSet;
pub use congruence::{CongMode, FilterKind, Partition};
pub use error::{Error, Result};
pub use order::{BoundDir, Carrier, ConeDir, FinPoset};
pub use structure::{FinStructure, SectionDir, Sectionals, Table};
pub use verdict::Verdict;
