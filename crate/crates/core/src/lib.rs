//! Maximum fork forests in two-colored complete bipartite graphs `K_{n,n}`.
//!
//! A *fork* is a vertex together with two neighbors on the other side joined
//! to it by edges of different colors; a *fork forest* is a set of
//! vertex-disjoint forks whose centers all lie on one side.
//!
//! * [`reduction`] finds a maximum forest exactly through minimum-weight
//!   perfect matching.
//! * [`constructive`] builds a forest of size at least `⌊(1 − 1/√2)n⌋` for
//!   any balanced coloring from a König cover of the majority color.
//! * [`oracle`] is an exhaustive search for small `n`.
//! * [`generators`] produces extremal, balanced random and Bernoulli
//!   instances.

pub mod cli;
pub mod coloring;
pub mod constructive;
pub mod generators;
pub mod matching;
pub mod oracle;
pub mod reduction;

pub use coloring::{
    lower_bound_ceil, lower_bound_floor, validate_forest, Color, Coloring, Fork, ForkForest, ParseError, Side,
    ValidationReport, Vertex,
};
pub use constructive::{constructive_lower_bound, ConstructError, ConstructiveReport};
pub use reduction::{solve_both, solve_exact};
