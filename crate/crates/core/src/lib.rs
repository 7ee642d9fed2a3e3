//! Solver for a finite n-player facility-siting game.
//!
//! Each player places a polluting enterprise at one of its candidate sites.
//! Its payoff is income that decays with distance to each natural object,
//! minus compensation for the pollution damage it causes there. The crate
//! evaluates that payoff (with an analytic gradient), checks site
//! feasibility, builds the dense payoff tensor, and finds pure Nash
//! equilibria and the compromise (minimax shortfall from the ideal vector)
//! profiles of any payoff tensor.

pub mod cli;
pub mod feasibility;
pub mod fixture;
pub mod payoff;
pub mod report;
pub mod scenario;
pub mod solvers;
pub mod tensor;

pub use payoff::{
    distance, payoff, payoff_at, payoff_gradient, payoff_gradient_at, Gradient, PayoffBreakdown, PayoffError,
};
pub use scenario::{CandidateSite, NaturalObject, PlayerSpec, Point, RegionConfig, Scenario, Violation};
pub use solvers::{best_response, find_compromise, find_pure_nash, ideal_vector, CompromiseResult, NashResult};
pub use tensor::{build_tensor, iterate_profiles, PayoffTensor, Profile, Provenance, TensorDocument};
