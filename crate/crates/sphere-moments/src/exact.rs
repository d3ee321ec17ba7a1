//! Closed-form moments of uniform unit-sphere vectors.
//!
//! For `e` uniform on the unit sphere in n dimensions and a fixed direction
//! `s`, this module evaluates
//!
//! * `E[|e₂|^q] = Γ(n/2)·Γ((q+1)/2) / (√π·Γ((q+n)/2))`   (any component),
//! * `E[⟨s,e⟩²]  = ‖s‖₂²/n`,
//! * `E[⟨s,e⟩⁴]  = 3‖s‖₂⁴/(n(n+2))`,
//!
//! plus the Jensen bound `E[‖e‖_q²] ≤ (n·E[|e₂|^q])^{2/q}` built from the
//! first. All Gamma ratios are formed in log space ([`crate::specfun`]),
//! never by exponentiating individual Γ values.

use crate::error::{Error, Result};
use crate::sampler::euclidean_norm;
use crate::specfun::{ln_gamma_diff, ln_gamma_raw, LN_PI};

/// A fixed (non-random) direction vector with its squared Euclidean norm
/// cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionVector {
    components: Vec<f64>,
    squared_norm: f64,
}

impl DirectionVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dimension {
                min: 1,
                actual: 0,
            });
        }
        if components.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("direction vector has non-finite components"));
        }
        let norm = euclidean_norm(&components);
        Ok(DirectionVector {
            components,
            squared_norm: norm * norm,
        })
    }

    /// The first standard basis vector in `n` dimensions.
    pub fn first_basis(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension { min: 1, actual: 0 });
        }
        let mut components = vec![0.0; n];
        components[0] = 1.0;
        Ok(DirectionVector {
            components,
            squared_norm: 1.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn squared_norm(&self) -> f64 {
        self.squared_norm
    }
}

impl From<crate::sampler::UnitSphereVector> for DirectionVector {
    fn from(v: crate::sampler::UnitSphereVector) -> Self {
        DirectionVector {
            components: v.into_components(),
            // Unit by the source type's invariant.
            squared_norm: 1.0,
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Dimension { min: 2, actual: n });
    }
    Ok(())
}

fn check_matching(n: usize, s: &DirectionVector) -> Result<()> {
    check_dim(n)?;
    if s.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.dim(),
        });
    }
    Ok(())
}

/// ln E[|e₂|^q]; finite for every n ≥ 2 and finite q > 0 even where the
/// moment itself underflows f64 (it does below ≈ e⁻⁷⁴⁵).
pub fn component_abs_moment_ln(n: usize, q: f64) -> Result<f64> {
    check_dim(n)?;
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::domain(format!(
            "component moment exponent must be finite and > 0, got {q}"
        )));
    }
    let half_n = n as f64 / 2.0;
    // ln Γ((q+n)/2) − ln Γ(n/2) as one cancellation-free term.
    Ok(ln_gamma_raw((q + 1.0) / 2.0) - 0.5 * LN_PI - ln_gamma_diff(half_n, q / 2.0))
}

/// E[|e₂|^q] = Γ(n/2)·Γ((q+1)/2) / (√π·Γ((q+n)/2)).
pub fn component_abs_moment(n: usize, q: f64) -> Result<f64> {
    component_abs_moment_ln(n, q).map(f64::exp)
}

/// Jensen upper bound (n·E[|e₂|^q])^{2/q} on E[‖e‖_q²], for finite q ≥ 2.
pub fn jensen_q_norm_sq_bound(n: usize, q: f64) -> Result<f64> {
    if !(q.is_finite() && q >= 2.0) {
        return Err(Error::domain(format!(
            "Jensen bound requires finite q ≥ 2 (x ↦ x^{{2/q}} must be concave), got {q}"
        )));
    }
    let ln_moment = component_abs_moment_ln(n, q)?;
    Ok(((2.0 / q) * ((n as f64).ln() + ln_moment)).exp())
}

/// E[⟨s,e⟩²] = ‖s‖₂²/n.
pub fn inner_product_sq_moment(n: usize, s: &DirectionVector) -> Result<f64> {
    check_matching(n, s)?;
    Ok(s.squared_norm() / n as f64)
}

/// E[⟨s,e⟩⁴] = 3‖s‖₂⁴/(n(n+2)).
pub fn inner_product_fourth_moment(n: usize, s: &DirectionVector) -> Result<f64> {
    check_matching(n, s)?;
    let nf = n as f64;
    Ok(3.0 * s.squared_norm() * s.squared_norm() / (nf * (nf + 2.0)))
}
