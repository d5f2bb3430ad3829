//! Success region of nuclear-norm completion for a single exponential
//! over (modulus, missing count) with the closed-form bound overlay: the
//! relaxation recovers the exact continuation everywhere inside the
//! guaranteed region, and also somewhat beyond it for few missing values.
//!
//! ```bash
//! cargo run --release --example phase_diagram
//! ```

use hankel_forecast::experiments::{sweep_phase, PhaseSweepConfig};
use hankel_forecast::theory::ProbeOutcome;

fn main() {
    let config = PhaseSweepConfig::standard();
    let sweep = sweep_phase(&config).expect("sweep should run");

    println!("window 13 x 13; '#' success inside bound, '+' success outside,");
    println!("'.' failure, '!' solver hit its iteration cap\n");
    print!("        m:");
    for m in &config.missing {
        print!("{m:3}");
    }
    println!();
    for rho in config.rhos.iter().rev() {
        print!("rho = {rho:4.2}");
        for m in &config.missing {
            let cell = sweep
                .cells
                .iter()
                .find(|c| c.rho == *rho && c.missing == *m)
                .unwrap();
            let mark = match (&cell.outcome, cell.inside_bound) {
                (ProbeOutcome::SolverLimit { .. }, _) => '!',
                (o, true) if o.is_success() => '#',
                (o, false) if o.is_success() => '+',
                _ => '.',
            };
            print!("  {mark}");
        }
        println!();
    }

    println!("\nclosed-form bound (largest guaranteed m):");
    for (rho, max_m) in &sweep.bound_overlay {
        println!("rho = {rho:4.2}: m <= {max_m}");
    }
}
