//! Theoretical upper bounds and tail inequalities for uniform sphere vectors.
//!
//! The two headline bounds, valid for n ≥ 8 and 2 ≤ q ≤ ∞, are
//!
//!   E[‖e‖_q²]        ≤ min{q−1, 16·ln n − 8} · n^{2/q−1},
//!   E[⟨s,e⟩²‖e‖_q²] ≤ √3‖s‖₂² · min{2q−1, 32·ln n − 8} · n^{2/q−2},
//!
//! with the conventions 2/∞ = 0 and (∞−1 treated as +∞ inside the min).
//! Each evaluation reports which branch of the min was attained and whether
//! the inputs satisfy the hypotheses of the inequality; out-of-domain n is
//! still computed but flagged, which is useful for exploration.
//!
//! Alongside these are the spherical-cap tail, the ∞-norm tail, the
//! Lipschitz median-concentration bound, and the minimizers q₀ of the
//! polynomial branches, which lie in [ln n, 2·ln n].

use crate::error::{Error, Result};
use crate::exact::DirectionVector;
use crate::sampler::QExponent;

/// Which argument of the min attained a bound (ties report `Polynomial`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Polynomial,
    Logarithmic,
}

/// A theoretical bound value plus its validity metadata.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundEvaluation {
    pub value: f64,
    pub branch: Branch,
    /// False when the inputs fall outside the stated hypotheses of the
    /// inequality; the value is computed regardless.
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validity_note: Option<String>,
}

/// Tail inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    Cap,
    InfinityNorm,
    Median,
}

/// A tail inequality: P{statistic > threshold} ≤ probability_bound.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TailBound {
    pub threshold: f64,
    /// Clamped to [0, 1]; the raw inequalities can exceed 1 and are then vacuous.
    pub probability_bound: f64,
    pub kind: TailKind,
}

fn check_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Dimension { min, actual: n });
    }
    Ok(())
}

fn check_q_at_least_two(q: QExponent) -> Result<()> {
    if !q.is_infinite() && q.get() < 2.0 {
        return Err(Error::domain(format!(
            "bound requires q ≥ 2 (got q = {q})"
        )));
    }
    Ok(())
}

/// min{poly, logv} with branch reporting; an infinite q makes poly +∞.
fn min_branch(poly: f64, logv: f64) -> (f64, Branch) {
    if poly <= logv {
        (poly, Branch::Polynomial)
    } else {
        (logv, Branch::Logarithmic)
    }
}

/// min{q−1, 16·ln n − 8}, the constant of the squared-norm bound.
pub(crate) fn norm_sq_min_constant(n: usize, q: QExponent) -> (f64, Branch) {
    let poly = if q.is_infinite() { f64::INFINITY } else { q.get() - 1.0 };
    min_branch(poly, 16.0 * (n as f64).ln() - 8.0)
}

/// min{2q−1, 32·ln n − 8}, the constant of the weighted and fourth-moment bounds.
pub(crate) fn weighted_min_constant(n: usize, q: QExponent) -> (f64, Branch) {
    let poly = if q.is_infinite() {
        f64::INFINITY
    } else {
        2.0 * q.get() - 1.0
    };
    min_branch(poly, 32.0 * (n as f64).ln() - 8.0)
}

fn validity(n: usize, min_n: usize, what: &str) -> (bool, Option<String>) {
    if n >= min_n {
        (true, None)
    } else {
        (
            false,
            Some(format!("{what} requires n ≥ {min_n}; got n = {n}")),
        )
    }
}

/// Upper bound on E[‖e‖_q²]: min{q−1, 16·ln n − 8}·n^{2/q−1}.
pub fn bound_q_norm_sq(n: usize, q: QExponent) -> Result<BoundEvaluation> {
    check_dim(n, 2)?;
    check_q_at_least_two(q)?;
    let nf = n as f64;
    let (constant, branch) = norm_sq_min_constant(n, q);
    let (valid, validity_note) = validity(n, 8, "the squared-norm bound");
    Ok(BoundEvaluation {
        value: constant * nf.powf(q.two_over() - 1.0),
        branch,
        valid,
        validity_note,
    })
}

/// Upper bound on E[⟨s,e⟩²‖e‖_q²]: √3‖s‖₂²·min{2q−1, 32·ln n − 8}·n^{2/q−2}.
pub fn bound_inner_product_weighted(
    n: usize,
    q: QExponent,
    s: &DirectionVector,
) -> Result<BoundEvaluation> {
    check_dim(n, 2)?;
    check_q_at_least_two(q)?;
    if s.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.dim(),
        });
    }
    let nf = n as f64;
    let (constant, branch) = weighted_min_constant(n, q);
    let (valid, validity_note) = validity(n, 8, "the weighted inner-product bound");
    Ok(BoundEvaluation {
        value: 3f64.sqrt() * s.squared_norm() * constant * nf.powf(q.two_over() - 2.0),
        branch,
        valid,
        validity_note,
    })
}

/// Upper bound on √(E[‖e‖_q⁴]): min{2q−1, 32·ln n − 8}·n^{2/q−1}.
pub fn bound_q_norm_fourth_root(n: usize, q: QExponent) -> Result<BoundEvaluation> {
    check_dim(n, 3)?;
    check_q_at_least_two(q)?;
    let nf = n as f64;
    let (constant, branch) = weighted_min_constant(n, q);
    Ok(BoundEvaluation {
        value: constant * nf.powf(q.two_over() - 1.0),
        branch,
        valid: true,
        validity_note: None,
    })
}

/// Minimizer q₀ = ln n·(1 + √(1 − 2/ln n)) of (q−1)·n^{2/q−1} over [2, ∞).
///
/// For n ≤ 7 the minimum sits at the boundary q = 2 and the interior
/// formula does not apply, hence the domain restriction.
pub fn optimal_q_expectation(n: usize) -> Result<f64> {
    if n < 8 {
        return Err(Error::domain(format!(
            "interior minimizer requires n ≥ 8 (the minimum is at q = 2 for n ≤ 7); got n = {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    Ok(ln_n * (1.0 + (1.0 - 2.0 / ln_n).sqrt()))
}

/// Minimizer of (2q−1)·n^{2/q−1} over [2, ∞): ln n·(1 + √(1 − 1/ln n)),
/// clamped up to 2 where the unconstrained formula dips below the domain
/// (n = 3, 4).
pub fn optimal_q_fourth(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain(format!(
            "fourth-moment minimizer requires n ≥ 3; got n = {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    Ok((ln_n * (1.0 + (1.0 - 1.0 / ln_n).sqrt())).max(2.0))
}

/// Spherical-cap tail: P{|⟨s,e⟩| > c/√(n−1)} ≤ (2/c)·e^{−c²/2} for unit s.
pub fn cap_tail_bound(n: usize, c: f64) -> Result<TailBound> {
    check_dim(n, 2)?;
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain(format!("cap parameter must be > 0, got {c}")));
    }
    Ok(TailBound {
        threshold: c / ((n - 1) as f64).sqrt(),
        probability_bound: ((2.0 / c) * (-0.5 * c * c).exp()).min(1.0),
        kind: TailKind::Cap,
    })
}

/// ∞-norm tail: P{‖e‖_∞ > 2√(ln n)/√(n−1)} ≤ n^{−3/2}.
pub fn infinity_norm_tail(n: usize) -> Result<TailBound> {
    check_dim(n, 2)?;
    let nf = n as f64;
    Ok(TailBound {
        threshold: 2.0 * nf.ln().sqrt() / (nf - 1.0).sqrt(),
        probability_bound: nf.powf(-1.5).min(1.0),
        kind: TailKind::InfinityNorm,
    })
}

/// Median concentration for 1-Lipschitz f: P{|f(e) − M_f| > t} ≤ 4·e^{−t²/4}.
pub fn median_concentration_bound(t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!(
            "median concentration requires t > 0, got {t}"
        )));
    }
    Ok((4.0 * (-0.25 * t * t).exp()).min(1.0))
}
