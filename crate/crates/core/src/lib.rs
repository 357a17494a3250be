//! Exact combinatorics of hypercube reliability: minimum vertex-boundary
//! numbers b_v(m; Q_n), the small-component structure guarantee under
//! bounded vertex failures, and the (h-1)-extra connectivity closed forms,
//! together with the brute-force and randomized engines that certify them
//! at desk scale.
//!
//! Modules:
//! * [`hypercube`] - the implicit graph: bit-label vertices, fault sets,
//!   boundaries, decompositions, connected components.
//! * [`isoperimetry`] - cascade representations, b_v evaluation by cascade
//!   and by closed form, ordering and plateau identities, witness sets.
//! * [`reliability`] - f(h), the structure predicate, extra connectivity.
//! * [`oracle`] - exhaustive searches and seeded fault-injection trials.
//!
//! All arithmetic is exact integer arithmetic; operations are pure
//! functions of their inputs and safe to call from concurrent workers.

pub mod binomial;
pub mod error;
pub mod hypercube;
pub mod isoperimetry;
pub mod oracle;
pub mod reliability;

pub use error::{Error, Result};
pub use hypercube::{CubeDim, FaultSet, VertexId};
