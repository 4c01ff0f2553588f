//! Finite convergence spaces, represented as reflexive digraphs on at most 64
//! points: `x -> y` means `y` is a limit of the principal ultrafilter at `x`.
//!
//! The crate provides the operator algebra (adherence, closure, the
//! topological, reciprocal and dual modifications), connectedness and
//! enclosures, T-subspaces, brute-force reference oracles, and a property
//! checker that runs over exhaustive and seeded random instance streams.
//!
//! ```
//! use convspace::{calculus::adh, fixtures};
//!
//! let t = fixtures::triangle();
//! let a = t.set_of(["a"]).unwrap();
//! assert_eq!(t.set_labels(&adh(&t, &a)), ["a", "b"]);
//! ```

pub mod calculus;
pub mod connectivity;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod pointset;
pub mod space;
pub mod tsubspace;
pub mod verify;

pub use error::{Error, Result};
pub use pointset::{Point, PointSet, CAPACITY};
pub use space::ConvergenceSpace;
