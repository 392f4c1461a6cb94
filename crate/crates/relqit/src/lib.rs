//! relqit: relativistic qubits under Lorentz transformations.
//!
//! A small numerical library for spin-1/2 particles with discrete momentum
//! superpositions: Wigner little-group rotations and their SU(2) lift,
//! joint spin–momentum boosts of multi-particle states, density matrices
//! with partial traces over arbitrary spin/momentum factor partitions, and
//! linear-entropy entanglement measures. The harness module runs randomized
//! scans that sort partitions into Lorentz-invariant and frame-dependent
//! ones: tracing over complete one-particle spinors (the particle
//! partition) is covariant, while any split of a particle's spin from its
//! momentum is not.

pub mod density;
pub mod error;
pub mod harness;
pub mod lorentz;
pub mod specfile;
pub mod state;

pub use density::{DensityMatrix, Dof, EntropyReport, Factor, PartitionSpec};
pub use error::{Error, ErrorCategory, Result};
pub use harness::{ScanReport, SweepTable, Verdict};
pub use lorentz::{FourVector, LorentzTransform, SpinHalfOperator, WignerRotation};
pub use state::{Configuration, MomentumLabel, Spin, StateVector};
