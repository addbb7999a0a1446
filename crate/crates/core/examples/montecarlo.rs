//! Monte Carlo estimates of two probabilities over Gaussian weights: that a
//! shallow network is PL Morse, and that a point lies in a flat cell.

use plmorse::ensembles::{montecarlo_flat_cell, montecarlo_plmorse, plmorse_probability_formula};
use plmorse::rational::to_f64;

fn main() -> plmorse::Result<()> {
    for (n, n1) in [(1, 3), (2, 3), (2, 4)] {
        let s = montecarlo_plmorse(n, n1, 2000, 1)?;
        let (lo, hi) = s.wilson_bounds();
        println!(
            "PL Morse n={n} n1={n1}: {:.4} in [{lo:.4}, {hi:.4}], exact {:.4}",
            to_f64(&s.empirical_rate()),
            to_f64(&plmorse_probability_formula(n, n1))
        );
    }
    let s = montecarlo_flat_cell(&[2, 3, 1], 2000, 1)?;
    println!("flat cell (2,3,1): {:.4} >= {:.4}: {}", to_f64(&s.empirical_rate()), to_f64(&s.reference), s.within_tolerance());
    Ok(())
}
