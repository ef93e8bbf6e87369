//! The closed relation `H` on `X` and the three homeomorphisms whose graphs
//! cover it.
//!
//! `H` is the union of the graphs of the cube root on `I_1`, the square
//! `t ↦ (t-2)^2 + 2` on `I_2`, the translations by `±2`, the identity on
//! `I_k` for `k ≥ 3`, and the pair `(∞, ∞)`. In local coordinates every
//! piece is a monotone bijection `[0,1] → [0,1]` combined with an index move.

use serde::Serialize;
use thiserror::Error;

use crate::xspace::{Tolerance, XPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelationError {
    #[error("{point} is outside the domain of {map:?}")]
    Domain { map: PieceMap, point: XPoint },
}

/// One monotone piece of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PieceMap {
    /// `I_1 → I_1`, `u ↦ u^{1/3}`.
    CubeRoot,
    /// `I_2 → I_2`, `u ↦ u^2`.
    Square,
    /// `I_k → I_{k+1}`.
    Up(u32),
    /// `I_k → I_{k-1}`, `k ≥ 2`.
    Down(u32),
    /// `I_k → I_k`, `k ≥ 3`.
    Id(u32),
    InfFix,
}

impl PieceMap {
    /// Domain interval index, `None` for the point at infinity.
    pub fn domain(&self) -> Option<u32> {
        match *self {
            PieceMap::CubeRoot => Some(1),
            PieceMap::Square => Some(2),
            PieceMap::Up(k) | PieceMap::Down(k) | PieceMap::Id(k) => Some(k),
            PieceMap::InfFix => None,
        }
    }

    pub fn range(&self) -> Option<u32> {
        match *self {
            PieceMap::CubeRoot => Some(1),
            PieceMap::Square => Some(2),
            PieceMap::Up(k) => Some(k + 1),
            PieceMap::Down(k) => Some(k - 1),
            PieceMap::Id(k) => Some(k),
            PieceMap::InfFix => None,
        }
    }

    /// Whether the variant parameters describe an actual piece of `H`.
    pub fn is_valid(&self) -> bool {
        match *self {
            PieceMap::Up(k) => k >= 1,
            PieceMap::Down(k) => k >= 2,
            PieceMap::Id(k) => k >= 3,
            _ => true,
        }
    }

    /// The local-coordinate action `[0,1] → [0,1]`.
    #[inline]
    pub fn local(&self, u: f64) -> f64 {
        match self {
            PieceMap::CubeRoot => u.cbrt(),
            PieceMap::Square => u * u,
            _ => u,
        }
    }

    #[inline]
    pub fn local_inverse(&self, u: f64) -> f64 {
        match self {
            PieceMap::CubeRoot => u * u * u,
            PieceMap::Square => u.sqrt(),
            _ => u,
        }
    }

    pub fn apply(&self, x: XPoint) -> Result<XPoint, RelationError> {
        match (self.domain(), x) {
            (None, XPoint::Infinity) => Ok(XPoint::Infinity),
            (Some(d), XPoint::Finite { k, u }) if d == k && self.is_valid() => Ok(XPoint::Finite {
                k: self.range().expect("finite piece"),
                u: self.local(u),
            }),
            _ => Err(RelationError::Domain { map: *self, point: x }),
        }
    }

    pub fn apply_inverse(&self, y: XPoint) -> Result<XPoint, RelationError> {
        match (self.range(), y) {
            (None, XPoint::Infinity) => Ok(XPoint::Infinity),
            (Some(r), XPoint::Finite { k, u }) if r == k && self.is_valid() => Ok(XPoint::Finite {
                k: self.domain().expect("finite piece"),
                u: self.local_inverse(u),
            }),
            _ => Err(RelationError::Domain { map: *self, point: y }),
        }
    }

    /// Pieces of `H` whose domain contains `x`, in a fixed order.
    pub fn starting_at(x: XPoint) -> Vec<PieceMap> {
        match x {
            XPoint::Infinity => vec![PieceMap::InfFix],
            XPoint::Finite { k: 1, .. } => vec![PieceMap::CubeRoot, PieceMap::Up(1)],
            XPoint::Finite { k: 2, .. } => vec![PieceMap::Down(2), PieceMap::Square, PieceMap::Up(2)],
            XPoint::Finite { k, .. } => vec![PieceMap::Down(k), PieceMap::Id(k), PieceMap::Up(k)],
        }
    }

    /// Pieces of `H` whose range contains `y`.
    pub fn ending_at(y: XPoint) -> Vec<PieceMap> {
        match y {
            XPoint::Infinity => vec![PieceMap::InfFix],
            XPoint::Finite { k: 1, .. } => vec![PieceMap::CubeRoot, PieceMap::Down(2)],
            XPoint::Finite { k: 2, .. } => vec![PieceMap::Up(1), PieceMap::Square, PieceMap::Down(3)],
            XPoint::Finite { k, .. } => vec![PieceMap::Up(k - 1), PieceMap::Id(k), PieceMap::Down(k + 1)],
        }
    }
}

/// Membership `(x, y) ∈ H`, comparing local coordinates under `tol`.
pub fn in_h(x: XPoint, y: XPoint, tol: Tolerance) -> bool {
    PieceMap::starting_at(x)
        .into_iter()
        .any(|m| m.apply(x).is_ok_and(|img| img.approx_eq(&y, tol)))
}

fn push_unique(out: &mut Vec<XPoint>, p: XPoint, tol: Tolerance) {
    if !out.iter().any(|q| q.approx_eq(&p, tol)) {
        out.push(p);
    }
}

/// The vertical section `{y : (x, y) ∈ H}`.
pub fn h_image(x: XPoint) -> Vec<XPoint> {
    let tol = Tolerance::default();
    let mut out = Vec::with_capacity(3);
    for m in PieceMap::starting_at(x) {
        push_unique(&mut out, m.apply(x).expect("piece chosen by domain"), tol);
    }
    out
}

/// The horizontal section `{x : (x, y) ∈ H}`.
pub fn h_preimage(y: XPoint) -> Vec<XPoint> {
    let tol = Tolerance::default();
    let mut out = Vec::with_capacity(3);
    for m in PieceMap::ending_at(y) {
        push_unique(&mut out, m.apply_inverse(y).expect("piece chosen by range"), tol);
    }
    out
}

/// The three global homeomorphisms of `X` with `H = Γ(F1) ∪ Γ(F2) ∪ Γ(F3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GlobalMap {
    F1,
    F2,
    F3,
}

impl GlobalMap {
    pub const ALL: [GlobalMap; 3] = [GlobalMap::F1, GlobalMap::F2, GlobalMap::F3];

    /// The piece of `H` that this map uses at `x`.
    pub fn piece_at(&self, x: XPoint) -> PieceMap {
        let k = match x {
            XPoint::Infinity => return PieceMap::InfFix,
            XPoint::Finite { k, .. } => k,
        };
        match self {
            // u ↦ u^2 on I_2 is the map t ↦ (t-2)^2 + 2 in ambient terms
            GlobalMap::F1 => match k {
                1 => PieceMap::CubeRoot,
                2 => PieceMap::Square,
                _ => PieceMap::Id(k),
            },
            GlobalMap::F2 => {
                if k % 2 == 1 {
                    PieceMap::Up(k)
                } else {
                    PieceMap::Down(k)
                }
            }
            GlobalMap::F3 => {
                if k == 1 {
                    PieceMap::CubeRoot
                } else if k % 2 == 0 {
                    PieceMap::Up(k)
                } else {
                    PieceMap::Down(k)
                }
            }
        }
    }

    pub fn apply(&self, x: XPoint) -> XPoint {
        self.piece_at(x).apply(x).expect("global maps are total")
    }

    pub fn inverse(&self, y: XPoint) -> XPoint {
        let k = match y {
            XPoint::Infinity => return XPoint::Infinity,
            XPoint::Finite { k, .. } => k,
        };
        let piece = match self {
            GlobalMap::F1 => self.piece_at(y),
            // F2 swaps I_{2j+1} and I_{2j+2}
            GlobalMap::F2 => {
                if k % 2 == 1 {
                    PieceMap::Down(k + 1)
                } else {
                    PieceMap::Up(k - 1)
                }
            }
            // F3 fixes I_1 setwise and swaps I_{2j} and I_{2j+1}
            GlobalMap::F3 => {
                if k == 1 {
                    PieceMap::CubeRoot
                } else if k % 2 == 0 {
                    PieceMap::Down(k + 1)
                } else {
                    PieceMap::Up(k - 1)
                }
            }
        };
        piece.apply_inverse(y).expect("global maps are bijective")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionMismatch {
    pub point: XPoint,
    /// `"image"` or `"preimage"`.
    pub section: &'static str,
    pub relation: Vec<XPoint>,
    pub from_maps: Vec<XPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub pass: bool,
    pub kmax: u32,
    pub samples_per_interval: usize,
    pub points_checked: usize,
    pub counterexample: Option<SectionMismatch>,
}

fn same_set(a: &[XPoint], b: &[XPoint], tol: Tolerance) -> bool {
    a.iter().all(|p| b.iter().any(|q| p.approx_eq(q, tol)))
        && b.iter().all(|p| a.iter().any(|q| p.approx_eq(q, tol)))
}

/// Points `Finite(k, i/(n-1))` for `k ≤ kmax`, `0 ≤ i < n`, followed by `∞`.
pub fn interval_samples(kmax: u32, samples_per_interval: usize) -> Vec<XPoint> {
    let n = samples_per_interval.max(2);
    let mut pts = Vec::with_capacity(kmax as usize * n + 1);
    for k in 1..=kmax {
        for i in 0..n {
            let u = i as f64 / (n - 1) as f64;
            pts.push(XPoint::Finite { k, u });
        }
    }
    pts.push(XPoint::Infinity);
    pts
}

/// Checks `H = Γ(F1) ∪ Γ(F2) ∪ Γ(F3)` and `H^{-1} = Γ(F1^{-1}) ∪ Γ(F2^{-1}) ∪ Γ(F3^{-1})`
/// section by section on a grid.
pub fn decomposition_check(kmax: u32, samples_per_interval: usize, tol: Tolerance) -> DecompositionReport {
    let pts = interval_samples(kmax.max(1), samples_per_interval);
    let mut checked = 0;
    for &x in &pts {
        checked += 1;
        let image = h_image(x);
        let mut via_maps = Vec::new();
        for g in GlobalMap::ALL {
            push_unique(&mut via_maps, g.apply(x), tol);
        }
        if !same_set(&image, &via_maps, tol) {
            return DecompositionReport {
                pass: false,
                kmax,
                samples_per_interval,
                points_checked: checked,
                counterexample: Some(SectionMismatch {
                    point: x,
                    section: "image",
                    relation: image,
                    from_maps: via_maps,
                }),
            };
        }
        let pre = h_preimage(x);
        let mut via_inverses = Vec::new();
        for g in GlobalMap::ALL {
            push_unique(&mut via_inverses, g.inverse(x), tol);
        }
        if !same_set(&pre, &via_inverses, tol) {
            return DecompositionReport {
                pass: false,
                kmax,
                samples_per_interval,
                points_checked: checked,
                counterexample: Some(SectionMismatch {
                    point: x,
                    section: "preimage",
                    relation: pre,
                    from_maps: via_inverses,
                }),
            };
        }
    }
    DecompositionReport {
        pass: true,
        kmax,
        samples_per_interval,
        points_checked: checked,
        counterexample: None,
    }
}
