//! Exact solvers for data placement and page placement on networks with a
//! small, fixed number of clients.
//!
//! * [`dp_uniform`]: dynamic program over remaining-capacity vectors; exact
//!   for any instance whose lengths share a common unit.
//! * [`dp_scaled`]: scales non-uniform lengths by `epsilon * l_max / N`,
//!   solves exactly and bounds the capacity overload by `epsilon * l_max`.
//! * [`page_placement`]: the same idea with per-client limits on how many
//!   distinct clients each one may serve.
//! * [`oracle`]: exhaustive enumeration used to cross-check the above.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! and [`SolverOptions::parallelism`] asks for it; results are identical
//! either way.

pub mod dp_scaled;
pub mod dp_uniform;
pub mod error;
pub mod exec;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracle;
pub mod page_placement;
pub mod rational;
pub mod report;
mod state;

pub use error::SolveError;
pub use exec::Parallelism;
pub use model::{Config, Instance, Outcome, Solution};
pub use rational::Rational;

pub const DEFAULT_MAX_CLIENTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Instances with more clients are rejected up front.
    pub max_clients: usize,
    pub parallelism: Parallelism,
    /// Largest capacity space indexed by a dense table; above it a hash map is used.
    pub dense_budget: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_clients: DEFAULT_MAX_CLIENTS,
            parallelism: Parallelism::default(),
            dense_budget: 1 << 20,
        }
    }
}
