//! Computations in the triangulated category generated by a `w`-spherical
//! object, modelled as perfect dg modules over `k[T]` with `|T| = w - 1`.
//!
//! Indecomposables are `Σ^i X_r` with `X_r = k[T]/(T^{r+1})`. Dimensions of
//! Hom spaces come from two independent sources: closed formulas on the AR
//! quiver ([`ar`]) and a linear-algebra oracle over a resolution
//! ([`oracle`]).

pub mod ar;
pub mod backend;
pub mod dg;
pub mod error;
pub mod label;
pub mod linalg;
pub mod oracle;
pub mod registry;
pub mod report;
pub mod tstructure;
pub mod verify;

pub use backend::{backend_registry, ClosedForm, HomBackend, Oracle};
pub use dg::{AlgebraDescriptor, DgModule};
pub use error::{Error, Result};
pub use label::{Indec, Window};
pub use linalg::{Matrix, PrimeField};
pub use report::{Report, Status, Violation};
