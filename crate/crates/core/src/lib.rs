//! Exact algebraic core of the curved Casimir and BGG machinery for
//! parabolic subalgebras of complex simple Lie algebras.
//!
//! * [`rootsys`]: root systems, weights, Weyl groups, Killing-normalized form.
//! * [`parabolic`]: gradings, filtrations and grading elements from crossed nodes.
//! * [`kostant`]: Hasse diagrams, Kostant's homology `H_k(p_+, V)`, Laplacian eigenvalues.
//! * [`casimir`]: Casimir eigenvalues, the `2 box + c_0` identity, splitting-operator scalars.
//! * [`oracle`]: brute-force matrix realizations used to verify everything above.

pub mod casimir;
pub mod character;
pub mod error;
pub mod guard;
pub mod kostant;
pub mod linalg;
pub mod oracle;
pub mod parabolic;
pub mod rootsys;

pub use error::{Error, Result};
pub use guard::Guardrails;
pub use linalg::{QMatrix, Q};
pub use parabolic::{ParabolicData, ParabolicSpec};
pub use rootsys::{DynkinSpec, Family, Root, RootSystem, Weight, WeylWord};
