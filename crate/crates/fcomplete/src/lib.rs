//! Exact solvers for F-completion problems: trivially perfect completion via
//! vital potential maximal cliques, threshold completion via chromatic coding,
//! pseudosplit completion via split completion, plus branching oracles and the
//! 3SAT gadget generators for C4-free deletion, C4-free completion and
//! P4-free deletion.

pub mod completion;
pub mod error;
pub mod graph;
pub mod par;
pub mod pattern;
pub mod oracle;
pub mod pseudosplit;
pub mod recognition;
pub mod reductions;
pub mod threshold;
pub mod tp;

pub use completion::{CompletionSet, Mode};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use pattern::Pattern;
