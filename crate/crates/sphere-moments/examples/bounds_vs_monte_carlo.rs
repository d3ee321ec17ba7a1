//! Monte-Carlo dominance check: estimated moments never exceed their
//! theoretical bounds (up to sampling noise), across a small (n, q) grid.
//!
//! ```bash
//! cargo run --release --example bounds_vs_monte_carlo
//! ```

use sphere_moments::bounds::{bound_inner_product_weighted, bound_q_norm_sq};
use sphere_moments::exact::DirectionVector;
use sphere_moments::montecarlo::{estimate, Estimand};
use sphere_moments::sampler::QExponent;

fn main() -> sphere_moments::Result<()> {
    let samples = 50_000;
    let qs = [QExponent::new(2.0)?, QExponent::new(4.0)?, QExponent::INFINITY];

    println!("{samples} samples per point, streams = 8, seed = 42\n");
    println!(
        "{:>6} {:>5} {:>13} {:>13} {:>8}  {:>13} {:>13} {:>8}",
        "n", "q", "Ê[‖e‖_q²]", "bound", "ratio", "Ê[⟨s,e⟩²‖e‖²]", "bound", "ratio"
    );
    for &n in &[8usize, 100, 1000] {
        let s = DirectionVector::first_basis(n)?;
        for &q in &qs {
            let norm_est = estimate(n, &Estimand::QNormSq { q }, samples, 42, 8)?;
            let norm_bound = bound_q_norm_sq(n, q)?.value;

            let w_est = estimate(
                n,
                &Estimand::InnerProductSqTimesQNormSq { q, s: s.clone() },
                samples,
                42,
                8,
            )?;
            let w_bound = bound_inner_product_weighted(n, q, &s)?.value;

            assert!(norm_est.mean <= norm_bound + 5.0 * norm_est.std_error);
            assert!(w_est.mean <= w_bound + 5.0 * w_est.std_error);
            println!(
                "{n:>6} {q:>5} {:>13.6e} {:>13.6e} {:>8.4}  {:>13.6e} {:>13.6e} {:>8.4}",
                norm_est.mean,
                norm_bound,
                norm_est.mean / norm_bound,
                w_est.mean,
                w_bound,
                w_est.mean / w_bound
            );
        }
    }
    println!("\nall estimates within their bounds ✓");
    Ok(())
}
