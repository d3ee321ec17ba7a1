//! Concentration in action: tail events that the theory says are rare
//! really are rare, and ‖e‖_∞ hugs its median.
//!
//! ```bash
//! cargo run --release --example concentration_tails
//! ```

use sphere_moments::bounds::{cap_tail_bound, infinity_norm_tail, median_concentration_bound};
use sphere_moments::exact::DirectionVector;
use sphere_moments::montecarlo::{empirical_median_deviation, empirical_tail, Estimand, TailStatistic};
use sphere_moments::sampler::QExponent;

fn main() -> sphere_moments::Result<()> {
    let n = 100usize;
    let samples = 200_000;

    // Spherical cap: |⟨s,e⟩| rarely exceeds c/√(n−1).
    println!("cap tails at n = {n} ({samples} samples):");
    println!("{:>6} {:>12} {:>14} {:>14}", "c", "threshold", "P bound", "empirical");
    let s = DirectionVector::first_basis(n)?;
    for &c in &[1.0, 2.0, 3.0, 10.0] {
        let bound = cap_tail_bound(n, c)?;
        let est = Estimand::TailIndicator {
            statistic: TailStatistic::InnerProductSq { s: s.clone() },
            threshold: bound.threshold * bound.threshold,
        };
        let emp = empirical_tail(n, &est, samples, 42, 8)?;
        println!(
            "{c:>6} {:>12.5} {:>14.6e} {:>14.6e}",
            bound.threshold, bound.probability_bound, emp.mean
        );
    }

    // ∞-norm tail: the largest coordinate stays below 2√(ln n)/√(n−1).
    let tail = infinity_norm_tail(n)?;
    let est = Estimand::TailIndicator {
        statistic: TailStatistic::QNorm { q: QExponent::INFINITY },
        threshold: tail.threshold,
    };
    let emp = empirical_tail(n, &est, samples, 42, 8)?;
    println!(
        "\n‖e‖_∞ tail at n = {n}: threshold {:.5}, bound {:.3e}, empirical {:.3e}",
        tail.threshold, tail.probability_bound, emp.mean
    );

    // Median concentration of the 1-Lipschitz function ‖e‖_∞.
    let t_grid = [0.01, 0.02, 0.05, 0.1, 0.2];
    let curve = empirical_median_deviation(1000, QExponent::INFINITY, 100_000, 42, 8, &t_grid)?;
    println!("\nmedian concentration of ‖e‖_∞ at n = 1000 (median ≈ {:.5}):", curve.median);
    println!("{:>6} {:>14} {:>14}", "t", "4·e^(−t²/4)", "empirical");
    for p in &curve.points {
        println!(
            "{:>6} {:>14.6} {:>14.6}",
            p.t,
            median_concentration_bound(p.t)?,
            p.exceedance.mean
        );
    }
    println!("\n(the dimension-free bound is loose here; deviations die out much faster)");
    Ok(())
}
