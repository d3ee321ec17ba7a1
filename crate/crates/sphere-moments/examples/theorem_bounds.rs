//! Evaluate the moment bounds: values, attained branches, validity flags,
//! and the optimal exponents q₀ where the polynomial branch is tightest.
//!
//! ```bash
//! cargo run --release --example theorem_bounds
//! ```

use sphere_moments::bounds::{
    bound_inner_product_weighted, bound_q_norm_fourth_root, bound_q_norm_sq,
    optimal_q_expectation, optimal_q_fourth,
};
use sphere_moments::exact::DirectionVector;
use sphere_moments::sampler::QExponent;

fn main() -> sphere_moments::Result<()> {
    let qs = [
        QExponent::new(2.0)?,
        QExponent::new(4.0)?,
        QExponent::new(16.0)?,
        QExponent::INFINITY,
    ];

    println!("bound on E[‖e‖_q²] = min{{q−1, 16·ln n − 8}}·n^(2/q−1):\n");
    println!("{:>8} {:>5} {:>14} {:>12} {:>6}", "n", "q", "bound", "branch", "valid");
    for &n in &[7usize, 8, 100, 10_000] {
        for &q in &qs {
            let b = bound_q_norm_sq(n, q)?;
            println!(
                "{n:>8} {q:>5} {:>14.6e} {:>12} {:>6}",
                b.value,
                format!("{:?}", b.branch).to_lowercase(),
                b.valid
            );
        }
    }

    let n = 1000usize;
    let s = DirectionVector::first_basis(n)?;
    println!("\nweighted bound at n = {n}, unit s:");
    for &q in &qs {
        let b = bound_inner_product_weighted(n, q, &s)?;
        println!("  q = {q:>4}: E[⟨s,e⟩²‖e‖_q²] ≤ {:.6e}", b.value);
    }
    println!("\nfourth-moment bound at n = {n}:");
    for &q in &qs {
        let b = bound_q_norm_fourth_root(n, q)?;
        println!("  q = {q:>4}: √E[‖e‖_q⁴] ≤ {:.6e}", b.value);
    }

    println!("\noptimal exponents (both lie in [ln n, 2·ln n]):");
    println!("{:>8} {:>10} {:>10} {:>10}", "n", "ln n", "q₀ (E‖·‖²)", "q₀ (4th)");
    for &n in &[8usize, 100, 10_000, 100_000] {
        println!(
            "{n:>8} {:>10.4} {:>10.4} {:>10.4}",
            (n as f64).ln(),
            optimal_q_expectation(n)?,
            optimal_q_fourth(n)?
        );
    }
    Ok(())
}
