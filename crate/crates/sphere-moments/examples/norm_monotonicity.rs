//! The q-norm of a fixed vector never increases in q:
//! ‖x‖_{q₁} ≤ ‖x‖_{q₂} whenever q₁ ≥ q₂.
//!
//! ```bash
//! cargo run --release --example norm_monotonicity
//! ```

use sphere_moments::sampler::{q_norm, sample_sphere, QExponent, SamplerState};

fn main() -> sphere_moments::Result<()> {
    let qs: Vec<QExponent> = [1.0, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0, 64.0]
        .iter()
        .map(|&v| QExponent::new(v))
        .collect::<Result<_, _>>()?;

    let mut state = SamplerState::new(1, 0);
    let e = sample_sphere(20, &mut state)?;

    println!("random unit vector, n = {}:", e.dim());
    println!("{:>6} {:>12}", "q", "‖e‖_q");
    let mut prev = f64::INFINITY;
    for &q in &qs {
        let v = q_norm(e.as_slice(), q)?;
        assert!(v <= prev + 1e-12);
        prev = v;
        println!("{q:>6} {v:>12.8}");
    }
    let inf = q_norm(e.as_slice(), QExponent::INFINITY)?;
    println!("{:>6} {inf:>12.8}", "inf");
    assert!(inf <= prev + 1e-12);

    // Sweep many random vectors to exercise the property broadly.
    let mut violations = 0usize;
    for _ in 0..1000 {
        let x = sample_sphere(8, &mut state)?;
        let mut last = f64::INFINITY;
        for &q in &qs {
            let v = q_norm(x.as_slice(), q)?;
            if v > last + 1e-12 {
                violations += 1;
            }
            last = v;
        }
    }
    println!("\nmonotonicity violations over 1000 random vectors: {violations}");
    Ok(())
}
