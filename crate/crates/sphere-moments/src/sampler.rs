//! Seeded sampling of uniformly distributed unit-sphere vectors and
//! Hölder q-norm evaluation.
//!
//! A standard Gaussian vector divided by its Euclidean norm is uniform on
//! the unit sphere, so [`sample_sphere`] draws `n` standard normals and
//! normalizes. Determinism is part of the contract: a [`SamplerState`] is
//! fully described by `(seed, stream_id)` and replays the identical sample
//! sequence bit for bit on the same build. Distinct `stream_id`s select
//! statistically independent ChaCha streams, which is what makes parallel
//! estimation reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// A Hölder exponent q ∈ [1, ∞]; infinity is a first-class value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QExponent(f64);

impl QExponent {
    /// The ∞-norm exponent.
    pub const INFINITY: QExponent = QExponent(f64::INFINITY);

    /// Validates q ≥ 1 (NaN rejected; +∞ accepted).
    pub fn new(q: f64) -> Result<Self> {
        if q >= 1.0 {
            Ok(QExponent(q))
        } else {
            Err(Error::domain(format!("q-norm exponent must be ≥ 1, got {q}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// 2/q with the convention 2/∞ = 0.
    pub(crate) fn two_over(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            2.0 / self.0
        }
    }
}

impl std::fmt::Display for QExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_infinite() {
            f.pad("inf")
        } else {
            f.pad(&self.0.to_string())
        }
    }
}

impl std::str::FromStr for QExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(QExponent::INFINITY);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse q-exponent from {s:?}")))?;
        QExponent::new(v)
    }
}

impl serde::Serialize for QExponent {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            ser.serialize_str("inf")
        } else {
            ser.serialize_f64(self.0)
        }
    }
}

impl<'de> serde::Deserialize<'de> for QExponent {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let q = match Raw::deserialize(de)? {
            Raw::Num(v) => QExponent::new(v),
            Raw::Text(s) => s.parse(),
        };
        q.map_err(serde::de::Error::custom)
    }
}

/// An n-dimensional vector of unit Euclidean length, n ≥ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSphereVector {
    components: Vec<f64>,
}

impl UnitSphereVector {
    /// Wraps a pre-normalized vector, verifying | ‖v‖₂ − 1 | ≤ 1e-12 and n ≥ 2.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::Dimension {
                min: 2,
                actual: components.len(),
            });
        }
        let norm = euclidean_norm(&components);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "vector is not unit length: ‖v‖₂ = {norm:.17}"
            )));
        }
        Ok(UnitSphereVector { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<f64> {
        self.components
    }
}

/// Deterministic sampler state: a ChaCha stream selected by `(seed, stream_id)`.
///
/// States are single-owner; parallel workers each construct their own state
/// with a distinct `stream_id` under a common seed.
#[derive(Debug)]
pub struct SamplerState {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl SamplerState {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        SamplerState { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

/// One standard normal N(0, 1) variate; advances the state.
pub fn standard_normal(state: &mut SamplerState) -> f64 {
    StandardNormal.sample(&mut state.rng)
}

/// One uniformly distributed vector on the unit sphere in `n` dimensions.
pub fn sample_sphere(n: usize, state: &mut SamplerState) -> Result<UnitSphereVector> {
    if n < 2 {
        return Err(Error::Dimension { min: 2, actual: n });
    }
    let mut buf = vec![0.0; n];
    fill_sphere(state, &mut buf);
    Ok(UnitSphereVector { components: buf })
}

/// Hot-loop variant writing into a caller-owned buffer (`buf.len() ≥ 2`).
pub(crate) fn fill_sphere(state: &mut SamplerState, buf: &mut [f64]) {
    debug_assert!(buf.len() >= 2);
    loop {
        for slot in buf.iter_mut() {
            *slot = StandardNormal.sample(&mut state.rng);
        }
        let norm = euclidean_norm(buf);
        // An all-zero Gaussian draw has probability zero but is representable;
        // redrawing the whole vector preserves uniformity.
        if norm > 0.0 {
            for slot in buf.iter_mut() {
                *slot /= norm;
            }
            return;
        }
    }
}

/// The Hölder q-norm (Σ|x_k|^q)^{1/q}; max_k |x_k| for q = ∞.
///
/// Components are rescaled by the largest magnitude before powering, so
/// huge exponents cannot underflow the sum to zero.
pub fn q_norm(x: &[f64], q: QExponent) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::domain("q-norm of an empty vector"));
    }
    let max = x.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if q.is_infinite() || max == 0.0 {
        return Ok(max);
    }
    let qv = q.get();
    let sum = abs_power_sum_scaled(x, max, qv);
    Ok(max * sum.powf(1.0 / qv))
}

/// Σ (|x_k|/scale)^q, with a multiply-chain fast path for integer q.
pub(crate) fn abs_power_sum_scaled(x: &[f64], scale: f64, q: f64) -> f64 {
    if q == 2.0 {
        return x.iter().map(|&v| (v / scale) * (v / scale)).sum();
    }
    if q.fract() == 0.0 && (1.0..=64.0).contains(&q) {
        let k = q as i32;
        return x.iter().map(|&v| (v.abs() / scale).powi(k)).sum();
    }
    x.iter().map(|&v| (v.abs() / scale).powf(q)).sum()
}

pub(crate) fn euclidean_norm(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&u, &v)| u * v).sum()
}
