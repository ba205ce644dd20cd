//! Book embeddings with matching pages: verification, an exact SAT-based
//! search for the least page count, and a constructive three-page layout for
//! 3-connected cubic bipartite plane graphs.

pub mod barnette;
pub mod book;
pub mod cli;
pub mod dimacs;
pub mod encoding;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod planar;
pub mod render;
pub mod solver;

pub use book::{verify, BookEmbedding, VerificationReport};
pub use encoding::{encode, CnfFormula, Model, SymmetryBreaking};
pub use graph::{bipartition, Graph};
pub use planar::RotationSystem;
pub use solver::{decide_dbt, solve, Budget, SolveOutcome, Verdict};
