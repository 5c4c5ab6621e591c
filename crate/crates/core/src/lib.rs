//! Computational checks around a perfect group whose localization is not perfect.
//!
//! * [`freegroup`]: reduced words, commutators, conjugacy, roots, cyclic cosets.
//! * [`bigmatrix`]: exact integer matrices for the unitriangular representations.
//! * [`tower`]: the direct system of free groups, its matrix representations,
//!   the Heisenberg model of the first level and the localization `LP`.
//! * [`freeprod`]: the quotient `G = F₁∗F₂/⟨⟨[u₁,u₂]⟩⟩`, its kernel basis and
//!   word problem, and empirical scans of the commuting-commutator lemma.
//! * [`cli`]: command surface and JSON reports.

pub mod bigmatrix;
pub mod cli;
pub mod error;
pub mod freegroup;
pub mod freeprod;
pub mod tower;

pub use error::{Error, Result};
pub use freegroup::{GeneratorId, Letter, Sign, Word};
