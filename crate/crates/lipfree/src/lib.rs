//! Exact order theory of Lipschitz-free spaces over finite pointed metric
//! spaces.
//!
//! Everything runs in arbitrary-precision rational arithmetic — no floating
//! point touches the mathematics — so equalities like "this measure's mass
//! is exactly the norm of the element it represents" are decidable and the
//! answers are reproducible bit for bit.
//!
//! The main objects:
//!
//! - [`space::FiniteMetricSpace`]: at least three named points, exact
//!   distances, and a distinguished base point.
//! - [`deleeuw`]: functions vanishing at the base, free vectors, molecules,
//!   pair measures, the difference-quotient transform, and its adjoint
//!   pushforward. A measure *represents* the free vector it pushes forward
//!   to.
//! - [`cone`]: the max-stable cone of functions on ordered pairs whose
//!   associated "distance-like" map respects triangles, with constructors,
//!   a sup-of-transforms decomposition, interior points, and the detour
//!   generators of its polar cone.
//! - [`order`]: the representation order induced by integrating cone
//!   members, decided by exact linear programming with verifiable evidence
//!   either way; minimality testing and minimal-measure extraction.
//! - [`freespace`]: free-space norms, mass-minimal and minimal-optimal
//!   representations, extreme-molecule classification, shadows, and
//!   marginals.
//! - [`lp`]: the exact rational simplex solver with Farkas certificates
//!   that powers the decision procedures.
//! - [`fixtures`] and [`sample`]: named example spaces with exactly known
//!   constants, and seeded random generators for property tests.

pub mod cone;
pub mod deleeuw;
pub mod fixtures;
pub mod freespace;
pub mod lp;
pub mod order;
pub mod rational;
pub mod sample;
pub mod space;

pub use cone::{ConeError, ConeFunction, PairSide, TripleGenerator};
pub use deleeuw::{
    de_leeuw, lip_norm, molecule, push_forward, FreeVector, InputError, LipFunction,
    Measure,
};
pub use freespace::{
    extreme_points_oracle, free_norm, is_extreme_molecule, is_optimal,
    minimal_optimal_representation, optimal_representation, FreeSpaceError,
    RepresentationReport,
};
pub use order::{
    eliminate_step, is_minimal, minimality_gap, minimize_below, precedes,
    precedes_via_cone, OrderDecision, OrderError, OrderWitness,
};
pub use rational::{parse_rational, Rational};
pub use space::{FiniteMetricSpace, MetricError, PairId};
