//! Tour of the closed-form machinery: the certificate bound C(rho), the
//! largest guaranteed number of missing values, and the optimal window
//! length.
//!
//! ```bash
//! cargo run --example success_bounds
//! ```

use hankel_forecast::theory::{c_rho, max_missing, optimal_window};

fn main() {
    println!("C(rho) for a 20 x 50 matrix:");
    println!("  rho   m=0       m=5       m=9");
    for rho in [0.7, 0.9, 1.0, 1.1, 1.3] {
        println!(
            "{rho:5.2} {:9.5} {:9.5} {:9.5}",
            c_rho(rho, 20, 50, 0),
            c_rho(rho, 20, 50, 5),
            c_rho(rho, 20, 50, 9)
        );
    }

    println!("\nlargest guaranteed missing count, 13 x 13:");
    for rho in [0.8, 0.95, 1.0, 1.05, 1.1, 1.2, 1.3] {
        let budget = max_missing(rho, 13, 13);
        println!(
            "rho = {rho:4.2}: bound on m+1 = {:8.3}, max m = {}",
            budget.bound_on_m_plus_one, budget.max_missing
        );
    }

    println!("\noptimal window length (square or nearly square):");
    for (total, missing) in [(69usize, 3usize), (70, 3), (78, 6), (50, 10)] {
        let window = optimal_window(total, missing);
        println!(
            "total {total:3}, missing {missing:2}: L = {window}, K = {}",
            total + 1 - window
        );
    }

    // brute-force confirmation for one case
    let (total, missing, rho) = (69, 3, 1.1);
    let best = (1..total)
        .filter(|window| missing < (*window).min(total + 1 - window))
        .min_by(|a, b| {
            c_rho(rho, *a, total + 1 - a, missing).total_cmp(&c_rho(
                rho,
                *b,
                total + 1 - b,
                missing,
            ))
        })
        .unwrap();
    println!(
        "\nbrute-force argmin of C({rho}) over L at total {total}, m {missing}: L = {best} \
         (formula gives {})",
        optimal_window(total, missing)
    );
}
