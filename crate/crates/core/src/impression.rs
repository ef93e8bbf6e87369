//! Forward impressions of `H`, the symbolic dense family `t^{2^m/3^n}` spread
//! over all intervals, ε-density checks on `𝕏`, and a builder for orbits of
//! the shift that pass close to every element of a window net.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::itinerary::{Letter, Word};
use crate::mahavier::{dist_forward, dist_window, MPoint, MahavierError, WindowConfig};
use crate::relations::PieceMap;
use crate::xspace::{dist, embed, pull_back, Tolerance, XPoint};

/// Default cap on reachable-set and search sizes.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ImpressionError {
    #[error("search exceeded the cap of {cap} nodes")]
    CapExceeded { cap: usize },
    #[error("no connecting path from {from} to {to} within exponent bound {bound}")]
    PathNotFound { from: XPoint, to: XPoint, bound: u32 },
    #[error("base value {0} must lie strictly between 0 and 1")]
    BadBase(f64),
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("net element {0} does not cover the window")]
    ShortNetElement(usize),
    #[error(transparent)]
    Mahavier(#[from] MahavierError),
}

/// The point `Finite(k, u^{2^m/3^n})` for a base height `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolicPoint {
    pub t_base: f64,
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

impl SymbolicPoint {
    pub fn exponent_ln(&self) -> f64 {
        self.m as f64 * std::f64::consts::LN_2 - self.n as f64 * 3f64.ln()
    }

    pub fn local(&self) -> f64 {
        power_local(self.t_base, self.m, self.n)
    }

    pub fn value(&self) -> XPoint {
        XPoint::Finite {
            k: self.k,
            u: self.local(),
        }
    }
}

fn power_local(u: f64, m: u32, n: u32) -> f64 {
    if u == 0.0 || u == 1.0 {
        return u;
    }
    let e = (m as f64 * std::f64::consts::LN_2 - n as f64 * 3f64.ln()).exp();
    (u.ln() * e).exp()
}

/// Points reachable from `s` along at most `depth` steps of `H`.
///
/// Finite points are tracked by the exact key `(k, m, n)` for the value
/// `u^{2^m/3^n}`, so no float comparison enters the deduplication.
pub fn forward_reachable(s: XPoint, depth: usize, cap: usize) -> Result<Vec<XPoint>, ImpressionError> {
    let XPoint::Finite { k: k0, u } = s else {
        return Ok(vec![XPoint::Infinity]);
    };
    let fixed = u == 0.0 || u == 1.0;
    let mut seen: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert((k0, 0, 0));
    order.push((k0, 0, 0));
    queue.push_back(((k0, 0u32, 0u32), 0usize));
    while let Some(((k, m, n), d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        let here = XPoint::Finite { k, u: 0.5 };
        for piece in PieceMap::starting_at(here) {
            let next = match piece {
                PieceMap::CubeRoot if !fixed => (1, m, n + 1),
                PieceMap::Square if !fixed => (2, m + 1, n),
                _ => (piece.range().expect("finite piece"), m, n),
            };
            if seen.insert(next) {
                if seen.len() > cap {
                    return Err(ImpressionError::CapExceeded { cap });
                }
                order.push(next);
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|(k, m, n)| XPoint::Finite {
            k,
            u: power_local(u, m, n),
        })
        .collect())
}

/// A symbolic point together with an admissible path reaching it from the seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witnessed {
    pub point: SymbolicPoint,
    pub path: Vec<Letter>,
}

impl Witnessed {
    /// Runs the path from `seed` and compares with the symbolic value.
    pub fn verify(&self, seed: XPoint, tol: Tolerance) -> bool {
        if !crate::itinerary::is_admissible(&self.path) {
            return false;
        }
        let mut x = seed;
        for l in &self.path {
            match l.apply(x) {
                Ok(y) => x = y,
                Err(_) => return false,
            }
        }
        x.approx_eq(&self.point.value(), tol)
    }
}

fn down_path(from: u32, to: u32) -> Vec<Letter> {
    (to + 1..=from).rev().map(|i| Letter::f(i, 1)).collect()
}

fn up_path(from: u32, to: u32) -> Vec<Letter> {
    (from..to).map(|i| Letter::f(i, 3)).collect()
}

/// Appends `m` square cycles and `n` cube roots inside `I_1`, interleaved so
/// the running value stays away from underflow.
fn steer_in_first(u: f64, m: u32, n: u32, out: &mut Vec<Letter>) -> f64 {
    let (mut m, mut n, mut x) = (m, n, u);
    while m > 0 || n > 0 {
        if n > 0 && (m == 0 || x < 0.5) {
            out.push(Letter::f(1, 2));
            x = x.cbrt();
            n -= 1;
        } else {
            out.extend_from_slice(&[Letter::f(1, 3), Letter::f(2, 2), Letter::f(2, 1)]);
            x *= x;
            m -= 1;
        }
    }
    x
}

/// Seeds in `(0,1) ∪ (2,3) ∪ ⋯`: interior points of some `I_k`.
pub fn in_dense_seed_set(x: XPoint) -> bool {
    matches!(x, XPoint::Finite { u, .. } if u > 0.0 && u < 1.0)
}

/// The family `{u^{2^m/3^n} in I_k}` for a seed `Finite(k0, u)` with `0 < u < 1`.
///
/// Paths go down to `I_1`, take the cube roots and square cycles, then climb
/// to `I_k`.
pub fn symbolic_family(seed: XPoint, m_max: u32, n_max: u32, k_max: u32) -> Result<Vec<Witnessed>, ImpressionError> {
    let XPoint::Finite { k: k0, u } = seed else {
        return Err(ImpressionError::BadBase(f64::INFINITY));
    };
    if !(u > 0.0 && u < 1.0) {
        return Err(ImpressionError::BadBase(u));
    }
    let mut out = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            let mut core = down_path(k0, 1);
            steer_in_first(u, m, n, &mut core);
            for k in 1..=k_max {
                let mut path = core.clone();
                path.extend(up_path(1, k));
                out.push(Witnessed {
                    point: SymbolicPoint { t_base: u, m, n, k },
                    path,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub pass: bool,
    pub eps: f64,
    pub k_cut: u32,
    pub net_size: usize,
    pub set_size: usize,
    pub uncovered_count: usize,
    /// Up to 20 uncovered net points.
    pub uncovered: Vec<XPoint>,
}

/// `max(8, ⌈-log_4 ε⌉ + 1)`: beyond this index every point is within ε of ∞.
pub fn default_k_cut(eps: f64) -> u32 {
    let t = (-(eps.ln()) / 4f64.ln()).ceil() as i64 + 1;
    t.max(8) as u32
}

/// An ε/2-net of `𝕏` restricted to indices `≤ k_cut`, plus `∞`.
pub fn space_net(eps: f64, k_cut: u32) -> Vec<XPoint> {
    let tol = Tolerance::default();
    let step = eps / 2.0;
    let count = (1.0 / step).ceil() as usize;
    let mut net: Vec<XPoint> = (0..=count)
        .filter_map(|i| pull_back((i as f64 * step).min(1.0), tol))
        .filter(|x| x.index().is_some_and(|k| k <= k_cut))
        .collect();
    for k in 1..=k_cut {
        net.push(XPoint::Finite { k, u: 0.0 });
        net.push(XPoint::Finite { k, u: 1.0 });
    }
    net.push(XPoint::Infinity);
    net.sort_by(|a, b| embed(*a).total_cmp(&embed(*b)));
    net.dedup_by(|a, b| embed(*a) == embed(*b));
    net
}

/// Reports net points of `𝕏` with no element of `set` within `eps`.
pub fn eps_dense_check(set: &[XPoint], eps: f64, k_cut: u32) -> Result<DensityReport, ImpressionError> {
    if !(eps > 0.0) {
        return Err(ImpressionError::BadEpsilon(eps));
    }
    let net = space_net(eps, k_cut);
    let mut values: Vec<f64> = set.iter().map(|x| embed(*x)).collect();
    values.sort_by(f64::total_cmp);
    let mut uncovered = Vec::new();
    let mut uncovered_count = 0;
    for x in &net {
        let v = embed(*x);
        let i = values.partition_point(|w| *w < v);
        let near = [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter_map(|j| values.get(j))
            .map(|w| (w - v).abs())
            .fold(f64::INFINITY, f64::min);
        if near > eps {
            uncovered_count += 1;
            if uncovered.len() < 20 {
                uncovered.push(*x);
            }
        }
    }
    Ok(DensityReport {
        pass: uncovered_count == 0,
        eps,
        k_cut,
        net_size: net.len(),
        set_size: set.len(),
        uncovered_count,
        uncovered,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Visit {
    pub element: usize,
    pub shift: usize,
    pub dist_window: f64,
    pub dist_forward: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitResult {
    pub pass: bool,
    pub eps: f64,
    pub window: usize,
    pub net_size: usize,
    pub covered: usize,
    pub orbit_length: usize,
    pub point: MPoint,
    pub visits: Vec<Visit>,
    #[serde(skip)]
    pub net: Vec<MPoint>,
}

/// Center index beyond which window points are within ε of the all-∞ point.
pub fn window_k_cut(eps: f64, cfg: WindowConfig) -> u32 {
    (((1.0 / eps).log2() + cfg.n as f64 + 2.0) / 2.0).ceil().max(1.0) as u32
}

/// Grid of window points: every admissible window around `x_0 ∈ I_k` for
/// `k ≤ window_k_cut`, at heights `(i + 1/2)/G` with `G = ⌈1/(2ε)⌉`, plus the
/// all-∞ point.
pub fn window_net(eps: f64, cfg: WindowConfig) -> Result<Vec<MPoint>, ImpressionError> {
    if !(eps > 0.0) {
        return Err(ImpressionError::BadEpsilon(eps));
    }
    let g = (1.0 / (2.0 * eps)).ceil() as usize;
    let mut net = Vec::new();
    for k in 1..=window_k_cut(eps, cfg) {
        let words = crate::itinerary::enumerate_two_sided(k, cfg.n, cfg.n, DEFAULT_NODE_CAP)
            .map_err(|_| ImpressionError::CapExceeded { cap: DEFAULT_NODE_CAP })?;
        for w in words {
            for i in 0..g {
                let u = (i as f64 + 0.5) / g as f64;
                net.push(MPoint::new(w.clone(), XPoint::Finite { k, u })?);
            }
        }
    }
    net.push(MPoint::AllInfinity);
    Ok(net)
}

struct OrbitTape {
    letters: Vec<Letter>,
    coords: Vec<XPoint>,
}

impl OrbitTape {
    fn push(&mut self, l: Letter) {
        let x = *self.coords.last().expect("started");
        self.coords.push(l.apply(x).expect("admissible tape"));
        self.letters.push(l);
    }

    fn current(&self) -> XPoint {
        *self.coords.last().expect("started")
    }

    /// The shifted orbit point `σ^s(p)` restricted to `[-n, n]`.
    fn window_at(&self, s: usize, n: usize) -> MPoint {
        let word = Word::new(self.letters[s - n..s + n].to_vec(), n).expect("admissible tape");
        MPoint::new(word, self.coords[s]).expect("consistent tape")
    }
}

/// Builds one orbit segment passing within `eps` of each element of `net`.
///
/// Each finite element is reached by descending to `I_1`, steering the height
/// with cube roots and square cycles to the element's coordinate `x_{-N}`,
/// climbing to its interval and copying its letters. The all-∞ element is
/// visited by climbing high enough and resting on identity letters.
pub fn orbit_through(net: &[MPoint], eps: f64, cfg: WindowConfig) -> Result<OrbitResult, ImpressionError> {
    if !(eps > 0.0) {
        return Err(ImpressionError::BadEpsilon(eps));
    }
    let n = cfg.n;
    let ni = n as i64;
    for (i, e) in net.iter().enumerate() {
        if !e.covers(n) {
            return Err(ImpressionError::ShortNetElement(i));
        }
    }
    let high = ((((2.0 / eps).log2() + 2.0) / 2.0).ceil() as u32).max(3);
    let mut tape: Option<OrbitTape> = None;
    let mut visits = Vec::with_capacity(net.len());

    for (idx, e) in net.iter().enumerate() {
        let center = match e {
            MPoint::AllInfinity => {
                let t = tape.get_or_insert_with(|| OrbitTape {
                    letters: Vec::new(),
                    coords: vec![XPoint::Finite { k: high, u: 0.5 }],
                });
                let k = t.current().index().expect("finite tape");
                if k < high {
                    for l in up_path(k, high) {
                        t.push(l);
                    }
                } else {
                    for l in down_path(k, high) {
                        t.push(l);
                    }
                }
                let start = t.letters.len();
                for _ in 0..2 * n {
                    t.push(Letter::f(high, 2));
                }
                start + n
            }
            MPoint::Finite { .. } => {
                let start = e.coords(-ni)?;
                let letters: Vec<Letter> = (-ni..ni).map(|i| e.word().and_then(|w| w.at(i)).expect("covered")).collect();
                match tape.as_mut() {
                    None => {
                        let mut t = OrbitTape {
                            letters: Vec::new(),
                            coords: vec![start],
                        };
                        for l in &letters {
                            t.push(*l);
                        }
                        tape = Some(t);
                        n
                    }
                    Some(t) => connect(t, e, start, &letters, eps, cfg)?,
                }
            }
        };
        let t = tape.as_ref().expect("started");
        let p = t.window_at(center, n);
        visits.push(Visit {
            element: idx,
            shift: center,
            dist_window: dist_window(&p, e, cfg)?,
            dist_forward: dist_forward(&p, e, cfg)?,
        });
    }

    let t = tape.unwrap_or(OrbitTape {
        letters: vec![Letter::f(3, 2); 2 * n],
        coords: vec![XPoint::Finite { k: 3, u: 0.5 }; 2 * n + 1],
    });
    let point = MPoint::new(Word::new(t.letters.clone(), 0).expect("admissible tape"), t.coords[0])?;
    let covered = visits
        .iter()
        .filter(|v| v.dist_window <= eps && v.dist_forward <= eps)
        .count();
    Ok(OrbitResult {
        pass: covered == net.len(),
        eps,
        window: n,
        net_size: net.len(),
        covered,
        orbit_length: t.letters.len(),
        point,
        visits,
        net: net.to_vec(),
    })
}

/// Appends a connecting path and the element's letters; returns the visit shift.
fn connect(
    t: &mut OrbitTape,
    e: &MPoint,
    start: XPoint,
    letters: &[Letter],
    eps: f64,
    cfg: WindowConfig,
) -> Result<usize, ImpressionError> {
    let from = t.current();
    let (XPoint::Finite { k: k_from, u: u_from }, XPoint::Finite { k: k_to, u: v }) = (from, start) else {
        return Err(ImpressionError::PathNotFound { from, to: start, bound: 0 });
    };
    let mut last_bound = 0;
    for bound in [64u32, 256, 1024] {
        last_bound = bound;
        let (m, n) = if u_from == v {
            (0, 0)
        } else if u_from <= 0.0 || u_from >= 1.0 || v <= 0.0 || v >= 1.0 {
            return Err(ImpressionError::PathNotFound { from, to: start, bound });
        } else {
            best_exponent(u_from, v, bound)
        };
        let mut path = down_path(k_from, 1);
        let landed = steer_in_first(u_from, m, n, &mut path);
        path.extend(up_path(1, k_to));
        path.extend_from_slice(letters);
        // simulate the window before committing
        let mut x = XPoint::Finite { k: k_to, u: landed };
        let mut window = vec![x];
        for l in letters {
            x = l.apply(x).expect("admissible element");
            window.push(x);
        }
        let ni = cfg.n as i64;
        let target = e.coord_range(-ni, ni)?;
        let err = window
            .iter()
            .zip(&target)
            .enumerate()
            .map(|(i, (a, b))| dist(*a, *b) * 0.5f64.powi((i as i64 - ni).unsigned_abs() as i32))
            .fold(0.0, f64::max);
        if err <= eps / 2.0 {
            for l in path {
                t.push(l);
            }
            return Ok(t.letters.len() - cfg.n);
        }
    }
    Err(ImpressionError::PathNotFound {
        from,
        to: start,
        bound: last_bound,
    })
}

/// `(m, n)` in `[0, bound]²` minimizing `|m ln 2 - n ln 3 - ln(ln v / ln u)|`.
pub fn best_exponent(u: f64, v: f64, bound: u32) -> (u32, u32) {
    let target = (v.ln() / u.ln()).ln();
    let (l2, l3) = (std::f64::consts::LN_2, 3f64.ln());
    let mut best = (0, 0, f64::INFINITY);
    for n in 0..=bound {
        // the best m for this n is one of the two integers around the real optimum
        let m_real = (target + n as f64 * l3) / l2;
        for m in [m_real.floor(), m_real.ceil()] {
            if m < 0.0 || m > bound as f64 {
                continue;
            }
            let err = (m * l2 - n as f64 * l3 - target).abs();
            if err < best.2 {
                best = (m as u32, n, err);
            }
        }
    }
    (best.0, best.1)
}

/// Builds the window net for `eps` and an orbit through all of it.
pub fn transitive_orbit_builder(eps: f64, cfg: WindowConfig) -> Result<OrbitResult, ImpressionError> {
    let net = window_net(eps, cfg)?;
    orbit_through(&net, eps, cfg)
}
