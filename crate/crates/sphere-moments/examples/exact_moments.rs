//! Closed-form sphere moments next to their Monte-Carlo estimates.
//!
//! ```bash
//! cargo run --release --example exact_moments
//! ```

use sphere_moments::exact::{
    component_abs_moment, inner_product_fourth_moment, inner_product_sq_moment, DirectionVector,
};
use sphere_moments::montecarlo::{estimate, Estimand};
use sphere_moments::sampler::QExponent;

fn main() -> sphere_moments::Result<()> {
    println!("E[|e₂|^q] = Γ(n/2)·Γ((q+1)/2) / (√π·Γ((q+n)/2))\n");
    println!("{:>8} {:>6} {:>14}", "n", "q", "E[|e₂|^q]");
    for &n in &[2usize, 10, 100, 10_000, 1_000_000] {
        for &q in &[2.0, 4.0, 8.0] {
            println!("{n:>8} {q:>6} {:>14.6e}", component_abs_moment(n, q)?);
        }
    }

    let n = 10usize;
    let s = DirectionVector::first_basis(n)?;
    println!("\nfixed direction s = e₁, n = {n}:");
    println!("  E[⟨s,e⟩²] = {}   (= 1/n)", inner_product_sq_moment(n, &s)?);
    println!(
        "  E[⟨s,e⟩⁴] = {}   (= 3/(n(n+2)))",
        inner_product_fourth_moment(n, &s)?
    );

    // Cross-check the fourth moment by simulation.
    let mc = estimate(n, &Estimand::InnerProductFourth { s }, 200_000, 1, 8)?;
    println!(
        "  Monte-Carlo: {:.6} ± {:.6}  ({} samples)",
        mc.mean, mc.std_error, mc.samples
    );

    // And the circle (n = 2), where everything reduces to 1-D integrals:
    // E[|e₂|⁴] = (1/2π)·∫ sin⁴θ dθ = 3/8.
    println!(
        "\ncircle check: E[|e₂|⁴] = {} (exactly 3/8)",
        component_abs_moment(2, 4.0)?
    );
    let inf_sq = estimate(
        2,
        &Estimand::QNormSq { q: QExponent::INFINITY },
        200_000,
        2,
        8,
    )?;
    println!(
        "circle check: Ê[‖e‖_∞²] = {:.5} ± {:.5} vs 1/2 + 1/π = {:.5}",
        inf_sq.mean,
        inf_sq.std_error,
        0.5 + std::f64::consts::FRAC_1_PI
    );
    Ok(())
}
