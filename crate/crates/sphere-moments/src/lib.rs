//! Moments of uniformly distributed unit-sphere vectors: exact formulas,
//! theoretical upper bounds, and seeded Monte-Carlo verification.
//!
//! For a random vector `e` uniform on the unit Euclidean sphere in n
//! dimensions, this crate computes
//!
//! * exact component and inner-product moments (`E[|e₂|^q]`, `E[⟨s,e⟩²]`,
//!   `E[⟨s,e⟩⁴]`) in log-Gamma arithmetic that stays accurate up to n = 10⁹,
//! * the concentration bounds `E[‖e‖_q²] ≤ min{q−1, 16·ln n − 8}·n^{2/q−1}`
//!   and `E[⟨s,e⟩²‖e‖_q²] ≤ √3‖s‖₂²·min{2q−1, 32·ln n − 8}·n^{2/q−2}` for
//!   2 ≤ q ≤ ∞, plus spherical-cap, ∞-norm, and median tail inequalities,
//! * reproducible Monte-Carlo estimates (mean, standard error, seed
//!   provenance) of every bounded quantity, partitioned over deterministic
//!   ChaCha substreams so parallel runs replay bit for bit.
//!
//! # Modules
//!
//! | module         | contents                                              |
//! |----------------|-------------------------------------------------------|
//! | [`specfun`]    | log-Gamma, digamma, log-Beta                          |
//! | [`sampler`]    | seeded sphere sampling, q-norms                       |
//! | [`exact`]      | closed-form moments                                   |
//! | [`bounds`]     | moment bounds, tail inequalities, optimal exponents   |
//! | [`montecarlo`] | estimators with standard errors                       |
//! | [`experiment`] | figure-style C_p/C_t sweeps with CSV output           |
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release --example sample_sphere        # seeded sampling and q-norms
//! cargo run --release --example exact_moments        # closed forms vs Monte Carlo
//! cargo run --release --example norm_monotonicity    # ‖x‖_q non-increasing in q
//! cargo run --release --example theorem_bounds       # bounds, branches, optimal q₀
//! cargo run --release --example bounds_vs_monte_carlo # dominance on an (n, q) grid
//! cargo run --release --example figure1              # C_p/C_t sweep for E[‖e‖_∞²]
//! cargo run --release --example figure2              # C_p/C_t sweep for E[⟨s,e⟩²‖e‖_∞²]
//! cargo run --release --example concentration_tails  # tail probabilities vs bounds
//! ```
//!
//! The same operations are exposed by the `sphere-moments` binary
//! (`figure1`, `figure2`, `exact`, `bound`, `estimate`, `sample`
//! subcommands); see the README for the CLI and file formats.
//!
//! # Quick start
//!
//! ```
//! use sphere_moments::bounds::bound_q_norm_sq;
//! use sphere_moments::montecarlo::{estimate, Estimand};
//! use sphere_moments::sampler::QExponent;
//!
//! let n = 100;
//! let q = QExponent::INFINITY;
//! let bound = bound_q_norm_sq(n, q)?;
//! let mc = estimate(n, &Estimand::QNormSq { q }, 10_000, 42, 8)?;
//! assert!(mc.mean <= bound.value);
//! # Ok::<(), sphere_moments::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod montecarlo;
pub mod sampler;
pub mod specfun;

pub use error::{Error, Result};
