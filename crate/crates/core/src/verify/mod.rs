//! Property catalog, claim search and verification campaigns.

pub mod agreement;
pub mod catalog;
pub mod claims;
pub mod exec;
pub mod generate;
pub mod outcome;
pub mod properties;
pub mod suite;

pub use agreement::{agree_exhaustive, agree_sampled, AgreementReport, Disagreement};
pub use catalog::{ClaimId, PropertyId, CATALOG_VERSION};
pub use claims::{replay_claim, search_counterexample};
pub use exec::Execution;
pub use generate::{count_up_to, enumerate_spaces, random_space, EdgeProbability};
pub use outcome::{CheckOutcome, NamedSet, Status, Subject, Witness, WitnessDoc};
pub use properties::{check_property, replay_property, PROPERTY_LIMIT};
pub use suite::{run_suite, strip_metadata, PropertyTally, SuiteBounds, SuiteReport};
