//! Dense ranking r-constraint satisfaction problems.
//!
//! Three constraint families over a dense system of r-subsets are supported:
//! betweenness, transitive FAST and FAST. The crate provides an exhaustive
//! oracle, structural conflict predicates, the Inc-Degree approximation for
//! FAST with its inequality checkers, sunflower-based kernelization, a seeded
//! instance generator and a plain-text file format.

pub mod approx;
pub mod characterize;
pub mod error;
pub mod format;
pub mod generate;
pub mod kernel;
pub mod model;
pub mod oracle;
pub mod rng;

pub use approx::{in_degrees, inc_degree_ranking};
pub use error::{ModelError, OracleError};
pub use format::{parse, serialize, FormatError};
pub use generate::{generate, GenerateError, Generated, GeneratorMode, GeneratorSpec};
pub use kernel::{
    kernelize_characterized, kernelize_rfast, KernelError, KernelOptions, KernelOutcome, RankingProvider,
    Verdict,
};
pub use model::{
    edit_wrt, evaluate, induced, span, span_minus, Constraint, Family, Instance, OrderedInstance,
    ProblemKind, Ranking, Selection, Vertex,
};
pub use oracle::{Decision, ExactResult, Oracle};
