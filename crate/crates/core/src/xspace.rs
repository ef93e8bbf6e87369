//! The compactum `X = [0,1] ∪ [2,3] ∪ [4,5] ∪ … ∪ {∞}` and its metric.
//!
//! A finite point is stored as an interval index `k ≥ 1` together with a
//! local coordinate `u ∈ [0,1]`, so that the ambient value is
//! `t = 2(k-1) + u ∈ I_k = [2k-2, 2k-1]`. The metric pulls back the usual
//! distance on `[0,1]` through the affine model map
//!
//! ```text
//! embed(k, u) = q_{2k-2} + u / 2^{2k-1},   q_j = 1 - 1/2^j,   embed(∞) = 1
//! ```
//!
//! which sends `I_k` onto `[q_{2k-2}, q_{2k-1}]`, hence `diam(I_k) = 1/2^{2k-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default absolute comparison tolerance.
pub const DEFAULT_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum XError {
    #[error("interval index must be at least 1, got {0}")]
    BadIndex(u32),
    #[error("local coordinate {u} is outside [0,1] for interval I_{k}")]
    OutOfRange { k: u32, u: f64 },
    #[error("ambient value {0} does not lie in any interval I_k")]
    NotInSpace(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

/// Absolute comparison tolerance used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_eq: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_eq: DEFAULT_EPS }
    }
}

impl Tolerance {
    pub fn new(eps_eq: f64) -> Result<Self, XError> {
        if eps_eq > 0.0 && eps_eq.is_finite() {
            Ok(Tolerance { eps_eq })
        } else {
            Err(XError::BadTolerance(eps_eq))
        }
    }

    #[inline]
    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eps_eq
    }
}

/// `2^{-n}` computed exactly.
#[inline]
pub fn pow2_neg(n: u32) -> f64 {
    // exact for n <= 1074 (subnormals included)
    2f64.powi(-(n as i32))
}

/// `q_j = 1 - 1/2^j`.
#[inline]
pub fn q(j: u32) -> f64 {
    1.0 - pow2_neg(j)
}

/// `diam(I_k) = 1/2^{2k-1}`.
#[inline]
pub fn interval_diam(k: u32) -> f64 {
    pow2_neg(2 * k - 1)
}

/// A point of the compactum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "XPointRecord", try_from = "XPointRecord")]
pub enum XPoint {
    Finite { k: u32, u: f64 },
    Infinity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum XPointRecord {
    Finite { k: u32, u: f64 },
    Symbol(String),
}

impl From<XPoint> for XPointRecord {
    fn from(x: XPoint) -> Self {
        match x {
            XPoint::Finite { k, u } => XPointRecord::Finite { k, u },
            XPoint::Infinity => XPointRecord::Symbol("infinity".to_string()),
        }
    }
}

impl TryFrom<XPointRecord> for XPoint {
    type Error = String;

    fn try_from(r: XPointRecord) -> Result<Self, String> {
        match r {
            XPointRecord::Finite { k, u } => XPoint::finite(k, u).map_err(|e| e.to_string()),
            XPointRecord::Symbol(s) if s == "infinity" => Ok(XPoint::Infinity),
            XPointRecord::Symbol(s) => Err(format!("unknown point symbol {s:?}")),
        }
    }
}

impl XPoint {
    /// Builds `Finite(k, u)`, clamping `u` when it overshoots `[0,1]` by at
    /// most [`DEFAULT_EPS`].
    pub fn finite(k: u32, u: f64) -> Result<Self, XError> {
        Self::finite_with(k, u, Tolerance::default())
    }

    pub fn finite_with(k: u32, u: f64, tol: Tolerance) -> Result<Self, XError> {
        if k == 0 {
            return Err(XError::BadIndex(k));
        }
        if !u.is_finite() || u < -tol.eps_eq || u > 1.0 + tol.eps_eq {
            return Err(XError::OutOfRange { k, u });
        }
        Ok(XPoint::Finite {
            k,
            u: u.clamp(0.0, 1.0),
        })
    }

    /// Reads an ambient value `t ∈ I_k`.
    pub fn from_ambient(t: f64) -> Result<Self, XError> {
        if !t.is_finite() || t < 0.0 {
            return Err(XError::NotInSpace(t));
        }
        let pair = (t / 2.0).floor();
        let u = t - 2.0 * pair;
        if u > 1.0 {
            return Err(XError::NotInSpace(t));
        }
        XPoint::finite(pair as u32 + 1, u)
    }

    pub fn index(&self) -> Option<u32> {
        match *self {
            XPoint::Finite { k, .. } => Some(k),
            XPoint::Infinity => None,
        }
    }

    pub fn local(&self) -> Option<f64> {
        match *self {
            XPoint::Finite { u, .. } => Some(u),
            XPoint::Infinity => None,
        }
    }

    pub fn ambient(&self) -> Option<f64> {
        match *self {
            XPoint::Finite { k, u } => Some(2.0 * (k - 1) as f64 + u),
            XPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, XPoint::Infinity)
    }

    /// The ambient value is the even integer `2k-2`.
    pub fn is_even_endpoint(&self) -> bool {
        matches!(*self, XPoint::Finite { u, .. } if u == 0.0)
    }

    /// The ambient value is the odd integer `2k-1`.
    pub fn is_odd_endpoint(&self) -> bool {
        matches!(*self, XPoint::Finite { u, .. } if u == 1.0)
    }

    pub fn embed(&self) -> f64 {
        embed(*self)
    }

    /// Same interval index and local coordinates within `tol`.
    pub fn approx_eq(&self, other: &XPoint, tol: Tolerance) -> bool {
        match (*self, *other) {
            (XPoint::Infinity, XPoint::Infinity) => true,
            (XPoint::Finite { k: k1, u: u1 }, XPoint::Finite { k: k2, u: u2 }) => {
                k1 == k2 && tol.eq(u1, u2)
            }
            _ => false,
        }
    }
}

impl fmt::Display for XPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            XPoint::Finite { k, u } => write!(f, "({k}, {u})"),
            XPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// The model coordinate of `x` in `[0,1]`; strictly increasing in ambient order.
pub fn embed(x: XPoint) -> f64 {
    match x {
        XPoint::Finite { k, u } => q(2 * k - 2) + u * pow2_neg(2 * k - 1),
        XPoint::Infinity => 1.0,
    }
}

/// Inverse of [`embed`] on its image. Values in the gaps between the model
/// intervals are rejected.
pub fn pull_back(v: f64, tol: Tolerance) -> Option<XPoint> {
    if !(0.0..=1.0).contains(&v) {
        return None;
    }
    if v == 1.0 {
        return Some(XPoint::Infinity);
    }
    // embed(I_k) = [q_{2k-2}, q_{2k-1}]; 1 - v ∈ (2^{-(2k-1)}, 2^{-(2k-2)}]
    let depth = -(1.0 - v).log2();
    let k = ((depth / 2.0).floor() as u32 + 1).max(1);
    for cand in [k.saturating_sub(1).max(1), k, k + 1] {
        let lo = q(2 * cand - 2);
        let hi = q(2 * cand - 1);
        if v >= lo - tol.eps_eq && v <= hi + tol.eps_eq {
            let u = (v - lo) / pow2_neg(2 * cand - 1);
            return XPoint::finite_with(cand, u, tol).ok();
        }
    }
    None
}

/// `d(x, y) = |embed(y) - embed(x)|`.
pub fn dist(x: XPoint, y: XPoint) -> f64 {
    (embed(y) - embed(x)).abs()
}
