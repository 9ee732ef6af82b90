//! Generalized Grigorchuk overgroups as 8-marked groups.
//!
//! The crate decides the word problem for the overgroups `G̃_ω` over
//! eventually periodic oracles `ω ∈ {0,1,2}^ℕ` and for the modified groups
//! defined by the nucleus algorithms α and β_ij, enumerates Cayley balls,
//! compares marked groups in the space `M₈`, and builds the witness words
//! that separate these groups.

pub mod action;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod markedspace;
pub mod oracle;
pub mod sections;
pub mod verify;
pub mod wordproblem;
pub mod words;

pub use error::{Error, Result};
pub use oracle::{Oracle, OracleClass, Symbol};
pub use wordproblem::{DeciderFamily, GroupSpec, MarkedGroup};
pub use words::{KElement, Letter, ReducedWord};
