//! Quantum secret sharing over stabilizer codes on qudits of prime dimension.
//!
//! A stabilizer code fixes, for every subset of carriers, which logical
//! Pauli operators that subset can measure (its information group). From
//! those groups follow the access structure, the Pauli twirl that hides the
//! secret from intermediate subsets, and the classical key that lets
//! authorized subsets undo the twirl.

pub mod classical;
pub mod code;
pub mod dense;
pub mod error;
pub mod infogroup;
pub mod oracle;
pub mod pauli;
pub mod primefield;
pub mod report;
pub mod simulate;
pub mod subset;
pub mod symplectic;
pub mod twirl;

pub use classical::{key_transport, ClassicalShareSet, KeyTransport, SchemeKind};
pub use code::{catalog, StabilizerCode};
pub use error::{Error, Result};
pub use infogroup::{classify, info_group, InfoGroup, SchemeTriplet, SubsetClass};
pub use oracle::Oracle;
pub use pauli::PauliProduct;
pub use report::{ClassifyReport, PlanReport, ValidateReport};
pub use simulate::{simulate, CheckSelection, SimulateOptions, SimulationReport};
pub use primefield::{FieldElement, FieldMatrix, Prime};
pub use subset::Subset;
pub use symplectic::CanonicalForm;
pub use twirl::{twirl_plan, TwirlPlan};
