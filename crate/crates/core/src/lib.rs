//! Reductions of binary trees and simple lattice paths.
//!
//! * [`tree`]: binary trees, the compactification `Φ`, register function and r-branches.
//! * [`path`]: lattice paths over `URDL`, the reduction `Φ_L`, compactification degree and
//!   fringes.
//! * [`exact`]: arbitrary-precision binomials, truncated power series, generating functions
//!   and explicit expectation formulas.
//! * [`oracle`]: brute-force enumeration statistics that the formulas are checked against.
//! * [`asymptotics`]: floating-point asymptotic expansions, complex Γ and ζ, and periodic
//!   fluctuations.
//! * [`montecarlo`]: seeded sampling and the normality check for fringe sizes.
//! * [`verify`]: formula-versus-oracle sweeps.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod oracle;
pub mod path;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use path::{LatticePath, NormalizedPath, Step};
pub use tree::{BinaryTree, BranchProfile, RegisterLabeling};
