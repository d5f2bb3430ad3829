//! Experiment harnesses and data plumbing behind the command-line
//! interface and the runnable examples: CSV ingestion, dataset loaders,
//! single forecast/calibration runs, success-region sweeps, the simulation
//! study, and the weighting-rate/budget error surface.
//!
//! Randomized harnesses take an explicit seed and derive one ChaCha8
//! stream per cell or repetition, so identical configurations produce
//! byte-identical result files regardless of thread scheduling.

pub mod csv_io;
pub mod datasets;
pub mod runs;
pub mod simulate;
pub mod surface;
pub mod sweeps;

pub use csv_io::{ingest_csv, IngestReport};
pub use datasets::{load_deaths, load_wine, sqrt_mse, StudySeries, DEATHS_BENCHMARKS};
pub use runs::{
    run_calibration, run_forecast, BudgetSpec, CalibrationRow, ForecastOutcome, ForecastRequest,
};
pub use simulate::{run_simulation, SimulationCase, SimulationConfig, SimulationRow};
pub use surface::{alpha_tau_surface, Surface, SurfaceCell, SurfaceConfig};
pub use sweeps::{
    sweep_phase, sweep_rank, PhaseSweep, PhaseSweepConfig, RankCell, RankSweepConfig,
};
