//! Finite-window points of the two-sided Mahavier product of `H`, the shift,
//! the windowed product metric, the product structure of `L_k`, and the model
//! map into `⋃ C_k × [0, 1/2^{2k-1}] ∪ {(1,0)}`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::itinerary::{address_in_ck, ck_prefix, CantorAddress, ItineraryError, Letter, Word};
use crate::xspace::{dist, interval_diam, Tolerance, XError, XPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MahavierError {
    #[error("coordinate {j} outside the known window [{lo}, {hi}]")]
    IndexError { j: i64, lo: i64, hi: i64 },
    #[error("no transition left to shift across")]
    WindowExhausted,
    #[error("height {t} outside [0, {max}]")]
    RangeError { t: f64, max: f64 },
    #[error("base point {t0} does not lie in I_{expected}")]
    BaseMismatch { t0: XPoint, expected: u32 },
    #[error("a finite point needs at least one letter")]
    EmptyWord,
    #[error("window half-width must be at least 1")]
    BadWindow,
    #[error(transparent)]
    Itinerary(#[from] ItineraryError),
    #[error(transparent)]
    Space(#[from] XError),
}

/// Half-width `N` of the coordinate window `[-N, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowConfig {
    pub n: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig { n: 8 }
    }
}

impl WindowConfig {
    pub fn new(n: usize) -> Result<Self, MahavierError> {
        if n == 0 {
            return Err(MahavierError::BadWindow);
        }
        Ok(WindowConfig { n })
    }

    /// Bound on the contribution of coordinates outside the window.
    pub fn truncation_error(&self) -> f64 {
        0.5f64.powi(self.n as i32 + 1)
    }
}

/// A point of the Mahavier product known on a finite window of coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MPointRecord", try_from = "MPointRecord")]
pub enum MPoint {
    Finite { word: Word, t0: XPoint },
    AllInfinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MPointRecord {
    Finite {
        word: Vec<Letter>,
        offset: usize,
        t0: XPoint,
    },
    Symbol(String),
}

impl From<MPoint> for MPointRecord {
    fn from(p: MPoint) -> Self {
        match p {
            MPoint::Finite { word, t0 } => MPointRecord::Finite {
                offset: word.offset(),
                word: word.letters().to_vec(),
                t0,
            },
            MPoint::AllInfinity => MPointRecord::Symbol("all_infinity".into()),
        }
    }
}

impl TryFrom<MPointRecord> for MPoint {
    type Error = String;

    fn try_from(r: MPointRecord) -> Result<Self, String> {
        match r {
            MPointRecord::Finite { word, offset, t0 } => {
                let w = Word::new(word, offset).map_err(|e| e.to_string())?;
                MPoint::new(w, t0).map_err(|e| e.to_string())
            }
            MPointRecord::Symbol(s) if s == "all_infinity" => Ok(MPoint::AllInfinity),
            MPointRecord::Symbol(s) => Err(format!("unknown point symbol {s:?}")),
        }
    }
}

impl MPoint {
    pub fn new(word: Word, t0: XPoint) -> Result<Self, MahavierError> {
        let k = word.domain_at_zero().ok_or(MahavierError::EmptyWord)?;
        if t0.index() != Some(k) {
            return Err(MahavierError::BaseMismatch { t0, expected: k });
        }
        Ok(MPoint::Finite { word, t0 })
    }

    /// The point of `M_k` at local height `u`, known on `[-n, n]`.
    pub fn identity(k: u32, u: f64, n: usize) -> Result<Self, MahavierError> {
        let letter = Letter::new(k, 2)?;
        if !letter.is_identity() {
            return Err(ItineraryError::BadLetter { ell: k, j: 2 }.into());
        }
        let word = Word::new(vec![letter; 2 * n], n)?;
        MPoint::new(word, XPoint::finite(k, u)?)
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            MPoint::Finite { word, .. } => Some(word),
            MPoint::AllInfinity => None,
        }
    }

    pub fn t0(&self) -> XPoint {
        match self {
            MPoint::Finite { t0, .. } => *t0,
            MPoint::AllInfinity => XPoint::Infinity,
        }
    }

    /// Interval index of `x_0`; `None` for the point at infinity.
    pub fn bundle(&self) -> Option<u32> {
        self.t0().index()
    }

    /// Range `[lo, hi]` of known coordinate indices.
    pub fn window(&self) -> (i64, i64) {
        match self {
            MPoint::Finite { word, .. } => (-(word.left_len() as i64), word.right_len() as i64),
            MPoint::AllInfinity => (i64::MIN, i64::MAX),
        }
    }

    pub fn covers(&self, n: usize) -> bool {
        let (lo, hi) = self.window();
        lo <= -(n as i64) && hi >= n as i64
    }

    /// Coordinate `x_j`.
    pub fn coords(&self, j: i64) -> Result<XPoint, MahavierError> {
        let MPoint::Finite { word, t0 } = self else {
            return Ok(XPoint::Infinity);
        };
        let (lo, hi) = self.window();
        if j < lo || j > hi {
            return Err(MahavierError::IndexError { j, lo, hi });
        }
        let mut x = *t0;
        if j >= 0 {
            for i in 0..j {
                x = word.at(i).expect("inside window").apply(x)?;
            }
        } else {
            for i in (j..0).rev() {
                x = word.at(i).expect("inside window").apply_inverse(x)?;
            }
        }
        Ok(x)
    }

    /// Coordinates `x_lo, …, x_hi`.
    pub fn coord_range(&self, lo: i64, hi: i64) -> Result<Vec<XPoint>, MahavierError> {
        let MPoint::Finite { word, t0 } = self else {
            return Ok(vec![XPoint::Infinity; (hi - lo + 1).max(0) as usize]);
        };
        let (wlo, whi) = self.window();
        for j in [lo, hi] {
            if j < wlo || j > whi {
                return Err(MahavierError::IndexError { j, lo: wlo, hi: whi });
            }
        }
        let mut back = Vec::new();
        let mut x = *t0;
        for i in (lo..0).rev() {
            x = word.at(i).expect("inside window").apply_inverse(x)?;
            back.push(x);
        }
        back.reverse();
        let mut out = back;
        let mut x = *t0;
        if lo <= 0 && hi >= 0 {
            out.push(x);
        }
        for i in 0..hi {
            x = word.at(i).expect("inside window").apply(x)?;
            if i + 1 >= lo {
                out.push(x);
            }
        }
        if hi < 0 {
            out.truncate((hi - lo + 1) as usize);
        }
        Ok(out)
    }

    /// `σ_H`: coordinate `x_1` becomes the new `x_0`.
    pub fn shift(&self) -> Result<MPoint, MahavierError> {
        match self {
            MPoint::AllInfinity => Ok(MPoint::AllInfinity),
            MPoint::Finite { word, t0 } => {
                let l = word.at(0).ok_or(MahavierError::WindowExhausted)?;
                let w = word.shifted().ok_or(MahavierError::WindowExhausted)?;
                Ok(MPoint::Finite {
                    word: w,
                    t0: l.apply(*t0)?,
                })
            }
        }
    }

    /// `σ_H^{-1}`.
    pub fn unshift(&self) -> Result<MPoint, MahavierError> {
        match self {
            MPoint::AllInfinity => Ok(MPoint::AllInfinity),
            MPoint::Finite { word, t0 } => {
                let l = word.at(-1).ok_or(MahavierError::WindowExhausted)?;
                let w = word.unshifted().ok_or(MahavierError::WindowExhausted)?;
                Ok(MPoint::Finite {
                    word: w,
                    t0: l.apply_inverse(*t0)?,
                })
            }
        }
    }

    /// Grows the known window by one letter.
    pub fn extend(&self, letter: Letter, side: crate::itinerary::Side) -> Result<MPoint, MahavierError> {
        match self {
            MPoint::AllInfinity => Ok(MPoint::AllInfinity),
            MPoint::Finite { word, t0 } => {
                let mut w = word.clone();
                match side {
                    crate::itinerary::Side::Left => w.push_left(letter)?,
                    crate::itinerary::Side::Right => w.push_right(letter)?,
                }
                Ok(MPoint::Finite { word: w, t0: *t0 })
            }
        }
    }

    /// Whether the point lies on the arc `M_k`: every known letter is `f_{k,2}`.
    pub fn in_m(&self, k: u32) -> bool {
        match self {
            MPoint::Finite { word, .. } => {
                k >= 3 && word.letters().iter().all(|l| l.ell() == k && l.j() == 2)
            }
            MPoint::AllInfinity => false,
        }
    }

    /// The index `k` with the point on `M_k`, if any.
    pub fn m_index(&self) -> Option<u32> {
        let k = self.bundle()?;
        self.in_m(k).then_some(k)
    }

    pub fn approx_eq(&self, other: &MPoint, tol: Tolerance) -> bool {
        match (self, other) {
            (MPoint::AllInfinity, MPoint::AllInfinity) => true,
            (MPoint::Finite { word: w1, t0: a }, MPoint::Finite { word: w2, t0: b }) => {
                w1 == w2 && a.approx_eq(b, tol)
            }
            _ => false,
        }
    }
}

/// `max_{|j| ≤ N} d(x_j, y_j) / 2^{|j|}`.
pub fn dist_window(p: &MPoint, q: &MPoint, cfg: WindowConfig) -> Result<f64, MahavierError> {
    let n = cfg.n as i64;
    let a = p.coord_range(-n, n)?;
    let b = q.coord_range(-n, n)?;
    Ok(weighted_max(&a, &b, -n))
}

/// One-sided variant over coordinates `0..=N`.
pub fn dist_forward(p: &MPoint, q: &MPoint, cfg: WindowConfig) -> Result<f64, MahavierError> {
    let n = cfg.n as i64;
    let a = p.coord_range(0, n)?;
    let b = q.coord_range(0, n)?;
    Ok(weighted_max(&a, &b, 0))
}

fn weighted_max(a: &[XPoint], b: &[XPoint], first: i64) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(i, (x, y))| {
            let j = first + i as i64;
            dist(*x, *y) * 0.5f64.powi(j.unsigned_abs() as i32)
        })
        .fold(0.0, f64::max)
}

/// Largest second coordinate in `K_k × [0, 1/2^{2k-1}]`.
pub fn height_bound(k: u32) -> f64 {
    interval_diam(k)
}

/// `(𝐡, t) ↦ 𝐱` with `x_0 = Finite(k, 2^{2k-1} t)`.
pub fn pack(word: &Word, t: f64) -> Result<MPoint, MahavierError> {
    let k = word.domain_at_zero().ok_or(MahavierError::EmptyWord)?;
    let max = height_bound(k);
    if !(0.0..=max).contains(&t) {
        return Err(MahavierError::RangeError { t, max });
    }
    // scaling by a power of two is exact
    let u = t / max;
    MPoint::new(word.clone(), XPoint::finite(k, u)?)
}

/// Inverse of [`pack`].
pub fn unpack(p: &MPoint) -> Option<(Word, f64)> {
    match p {
        MPoint::Finite { word, t0: XPoint::Finite { k, u } } => Some((word.clone(), u * height_bound(*k))),
        _ => None,
    }
}

/// First coordinate of the model: a Cantor-set point, or the limit point `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelC {
    Address(CantorAddress),
    One,
}

impl ModelC {
    pub fn value(&self) -> f64 {
        match self {
            ModelC::Address(a) => a.value(),
            ModelC::One => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub c: ModelC,
    pub tau: f64,
}

/// The model map `𝐱 ↦ (c, τ)`. `depth` limits how many letters feed the address.
pub fn model_map(p: &MPoint, depth: Option<usize>) -> ModelPoint {
    match p {
        MPoint::AllInfinity => ModelPoint { c: ModelC::One, tau: 0.0 },
        MPoint::Finite { word, .. } => {
            let (_, tau) = unpack(p).expect("finite point");
            let c = address_in_ck(word, depth).unwrap_or_else(|| ck_prefix(1));
            ModelPoint {
                c: ModelC::Address(c),
                tau,
            }
        }
    }
}

/// A random admissible window `[-n, n]` around `x_0 ∈ I_k`, with uniform height.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, k: u32, n: usize) -> MPoint {
    let word = random_word(rng, k, n, n);
    let u: f64 = rng.gen();
    MPoint::new(word, XPoint::Finite { k, u }).expect("consistent base")
}

/// A random admissible word with `left` letters before position 0 and `right` from it on.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, k: u32, left: usize, right: usize) -> Word {
    let mut letters = Vec::with_capacity(left + right);
    let mut d = k;
    for _ in 0..left {
        let opts = Letter::with_range(d);
        let l = opts[rng.gen_range(0..opts.len())];
        letters.push(l);
        d = l.domain();
    }
    letters.reverse();
    let mut d = k;
    for _ in 0..right {
        let opts = Letter::with_domain(d);
        let l = opts[rng.gen_range(0..opts.len())];
        letters.push(l);
        d = l.range();
    }
    Word::new(letters, left).expect("admissible by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itinerary::{enumerate_two_sided, Side, DEFAULT_ENUMERATION_CAP};
    use crate::relations::in_h;
    use crate::xspace::pow2_neg;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(ell: u32, j: u8) -> Letter {
        Letter::f(ell, j)
    }

    #[test]
    fn identity_coordinates() {
        let p = MPoint::identity(3, 0.4, 8).unwrap();
        for j in -8..=8 {
            assert_eq!(p.coords(j).unwrap(), XPoint::Finite { k: 3, u: 0.4 });
        }
        assert!(matches!(p.coords(9), Err(MahavierError::IndexError { .. })));
        assert!(MPoint::identity(2, 0.4, 8).is_err());
    }

    #[test]
    fn repeated_cube_root() {
        let w = Word::one_sided(vec![f(1, 2), f(1, 2)]).unwrap();
        let p = MPoint::new(w, XPoint::finite(1, 0.5f64.powi(27)).unwrap()).unwrap();
        let x1 = p.coords(1).unwrap().local().unwrap();
        let x2 = p.coords(2).unwrap().local().unwrap();
        assert!((x1 - 0.5f64.powi(9)).abs() < 1e-15);
        assert!((x2 - 0.125).abs() < 1e-15);
    }

    #[test]
    fn all_infinity() {
        let p = MPoint::AllInfinity;
        assert_eq!(p.coords(-100).unwrap(), XPoint::Infinity);
        assert_eq!(p.shift().unwrap(), MPoint::AllInfinity);
        assert_eq!(model_map(&p, None), ModelPoint { c: ModelC::One, tau: 0.0 });
    }

    #[test]
    fn coord_range_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(1..=6);
            let p = random_point(&mut rng, k, 5);
            for (lo, hi) in [(-5, 5), (-3, -1), (2, 4), (0, 0), (-2, 3)] {
                let r = p.coord_range(lo, hi).unwrap();
                let pointwise: Vec<XPoint> = (lo..=hi).map(|j| p.coords(j).unwrap()).collect();
                assert_eq!(r, pointwise, "{lo}..{hi}");
            }
        }
    }

    #[test]
    fn consecutive_pairs_lie_in_h() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tol = Tolerance::new(1e-9).unwrap();
        for _ in 0..10_000 {
            let k = rng.gen_range(1..=8);
            let p = random_point(&mut rng, k, 4);
            let xs = p.coord_range(-4, 4).unwrap();
            for w in xs.windows(2) {
                assert!(in_h(w[0], w[1], tol), "{} {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn shift_conjugates_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = Tolerance::new(1e-9).unwrap();
        for _ in 0..500 {
            let k = rng.gen_range(1..=6);
            let p = random_point(&mut rng, k, 6);
            let s = p.shift().unwrap();
            assert_eq!(s.window(), (-7, 5));
            for j in -7..=5 {
                assert!(s.coords(j).unwrap().approx_eq(&p.coords(j + 1).unwrap(), tol));
            }
            assert!(s.unshift().unwrap().approx_eq(&p, tol));
            assert!(p.unshift().unwrap().shift().unwrap().approx_eq(&p, tol));
        }
        let edge = MPoint::new(Word::new(vec![f(3, 2)], 1).unwrap(), XPoint::finite(3, 0.2).unwrap()).unwrap();
        assert_eq!(edge.shift(), Err(MahavierError::WindowExhausted));
    }

    #[test]
    fn shift_fixes_identity_coordinates() {
        let p = MPoint::identity(5, 0.7, 4).unwrap();
        let s = p.shift().unwrap();
        for j in -4..=3 {
            assert_eq!(s.coords(j).unwrap(), p.coords(j).unwrap());
        }
        assert!(s.in_m(5));
    }

    #[test]
    fn extend_grows_window() {
        let p = MPoint::identity(4, 0.5, 1).unwrap();
        let q = p.extend(f(4, 1), Side::Right).unwrap();
        assert_eq!(q.window(), (-1, 2));
        assert_eq!(q.coords(2).unwrap(), XPoint::Finite { k: 3, u: 0.5 });
        assert!(p.extend(f(2, 1), Side::Left).is_err());
    }

    #[test]
    fn dist_window_examples() {
        let cfg = WindowConfig::new(3).unwrap();
        let p = MPoint::identity(3, 0.25, 3).unwrap();
        assert_eq!(dist_window(&p, &p, cfg).unwrap(), 0.0);
        // x_0 at the two ends of I_1, identical letters elsewhere
        let w = Word::new(vec![f(1, 2); 6], 3).unwrap();
        let a = MPoint::new(w.clone(), XPoint::finite(1, 0.0).unwrap()).unwrap();
        let b = MPoint::new(w, XPoint::finite(1, 1.0).unwrap()).unwrap();
        assert_eq!(dist_window(&a, &b, cfg).unwrap(), 0.5);
        let short = MPoint::identity(3, 0.25, 2).unwrap();
        assert!(matches!(dist_window(&p, &short, cfg), Err(MahavierError::IndexError { .. })));
    }

    #[test]
    fn window_truncation_error_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let small = WindowConfig::new(4).unwrap();
        let big = WindowConfig::new(8).unwrap();
        for _ in 0..500 {
            let k = rng.gen_range(1..=4);
            let p = random_point(&mut rng, k, 8);
            let kq = rng.gen_range(1..=4);
            let q = random_point(&mut rng, kq, 8);
            let d4 = dist_window(&p, &q, small).unwrap();
            let d8 = dist_window(&p, &q, big).unwrap();
            assert!(d8 >= d4);
            assert!(d8 - d4 <= small.truncation_error());
        }
    }

    /// Within one slice the distance at coordinate j is bounded by the
    /// diameter of the union of intervals reachable in |j| steps.
    #[test]
    fn slice_distances_obey_reachable_diameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cfg = WindowConfig::default();
        for k in 1..=6u32 {
            for _ in 0..300 {
                let p = random_point(&mut rng, k, 8);
                let q = random_point(&mut rng, k, 8);
                let a = p.coord_range(-8, 8).unwrap();
                let b = q.coord_range(-8, 8).unwrap();
                for (i, (x, y)) in a.iter().zip(&b).enumerate() {
                    let j = i as i64 - 8;
                    let lo = (k as i64 - j.abs()).max(1) as u32;
                    let bound = crate::xspace::q(2 * (k + j.unsigned_abs() as u32) - 1)
                        - crate::xspace::q(2 * lo - 2);
                    assert!(dist(*x, *y) <= bound + 1e-15);
                }
                // coordinate 0 alone always respects the interval diameter
                assert!(dist(a[8], b[8]) <= interval_diam(k));
                assert!(dist_window(&p, &q, cfg).unwrap() <= 1.0);
            }
        }
    }

    #[test]
    fn pack_examples_and_round_trip() {
        let w = Word::one_sided(vec![f(1, 3), f(2, 2)]).unwrap();
        assert_eq!(pack(&w, 0.0).unwrap().t0(), XPoint::Finite { k: 1, u: 0.0 });
        assert_eq!(pack(&w, 0.5).unwrap().t0(), XPoint::Finite { k: 1, u: 1.0 });
        assert_eq!(pack(&w, 0.25).unwrap().t0(), XPoint::Finite { k: 1, u: 0.5 });
        assert!(matches!(pack(&w, 0.6), Err(MahavierError::RangeError { .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let k = rng.gen_range(1..=6);
            let word = random_word(&mut rng, k, 3, 3);
            let t = rng.gen_range(0.0..=height_bound(k));
            let (w2, t2) = unpack(&pack(&word, t).unwrap()).unwrap();
            assert_eq!(w2, word);
            assert_eq!(t2, t);
        }
    }

    #[test]
    fn endpoint_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let k = rng.gen_range(1..=6);
            let word = random_word(&mut rng, k, 5, 5);
            let even = pack(&word, 0.0).unwrap();
            let odd = pack(&word, pow2_neg(2 * k - 1)).unwrap();
            for j in -5..=5 {
                assert!(even.coords(j).unwrap().is_even_endpoint());
                assert!(odd.coords(j).unwrap().is_odd_endpoint());
            }
        }
    }

    #[test]
    fn arcs_are_disjoint() {
        let words = enumerate_two_sided(3, 1, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        let heights = [0.0, 0.005, 0.02, 0.03125];
        for (i, w1) in words.iter().enumerate() {
            for w2 in &words[i + 1..] {
                for &t in &heights {
                    for &s in &heights {
                        let a = pack(w1, t).unwrap().coord_range(-1, 2).unwrap();
                        let b = pack(w2, s).unwrap().coord_range(-1, 2).unwrap();
                        assert_ne!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn model_map_examples() {
        let w = Word::new(vec![f(2, 1), f(1, 3), f(2, 2), f(2, 3)], 2).unwrap();
        let p = pack(&w, 0.0).unwrap();
        let m = model_map(&p, None);
        assert_eq!(m.tau, 0.0);
        let (c2, d2) = crate::itinerary::ck_interval(2);
        assert!(m.c.value() >= c2 && m.c.value() <= d2);
        let words = enumerate_two_sided(3, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for w in &words {
            assert!(seen.insert(model_map(&pack(w, 0.01).unwrap(), None).c));
        }
    }

    #[test]
    fn serde_round_trip() {
        let w = Word::new(vec![f(2, 1), f(1, 3)], 1).unwrap();
        let p = MPoint::new(w, XPoint::finite(1, 0.5).unwrap()).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"word":[[2,1],[1,3]],"offset":1,"t0":{"k":1,"u":0.5}}"#);
        let back: MPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&MPoint::AllInfinity).unwrap(), r#""all_infinity""#);
        assert!(serde_json::from_str::<MPoint>(r#"{"word":[[2,1]],"offset":0,"t0":{"k":1,"u":0.5}}"#).is_err());
    }
}
