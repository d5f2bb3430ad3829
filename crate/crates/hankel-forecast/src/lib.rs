//! Time-series forecasting and denoising by completing the missing
//! bottom-right corner of a Hankel matrix.
//!
//! A series of `n` observations is embedded into an `L x K` Hankel matrix
//! whose last `m` antidiagonals are unknown; filling them with the matrix
//! rank as small as possible continues the series. For series of finite
//! rank the exact answer is the minimal linear recurrence
//! ([`finite_rank`]); in general the rank is relaxed to the nuclear norm
//! and solved as a convex program with exact, ball-constrained or
//! penalized data fit ([`solver`]). Closed-form bounds say when the
//! relaxation provably recovers the exact continuation, and optimality
//! certificates verify individual solutions ([`theory`]). Weighting
//! schemes and an exponential-scaling pipeline tilt the data fit toward
//! recent observations ([`weights`]); harnesses for the bundled studies
//! live in [`experiments`].
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example minimal_rank_completion   # exact recurrence oracle
//! cargo run --example nuclear_norm_forecast     # the two relaxation regimes
//! cargo run --example success_bounds            # closed-form guarantees
//! cargo run --example optimality_certificate    # certifying solutions
//! cargo run --release --example phase_diagram   # success region sweep
//! cargo run --release --example exponential_scaling
//! cargo run --release --example simulation_study
//! cargo run --example tau_calibration           # budget from truncation
//! cargo run --release --example forecast_deaths # real-data study
//! cargo run --release --example approximate_wine
//! ```
//!
//! A thin command-line binary (`hankel-forecast`) drives the same
//! harnesses for file-based workflows; see the repository README.

pub mod error;
pub mod experiments;
pub mod finite_rank;
pub mod hankel;
mod linalg;
pub mod series;
pub mod solver;
pub mod theory;
pub mod weights;

pub use error::Error;
pub use hankel::HankelShape;
pub use series::TimeSeries;
