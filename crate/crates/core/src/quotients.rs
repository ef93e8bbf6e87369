//! Quotient machinery: the cone map `φ(c,t) = (c, c·t)` from `P = C × I` onto
//! `R`, lifting maps of `P` to `R`, the equivalence `∼_a` on the Mahavier
//! product, class maps, combinatorial fan models, and stars of fans.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::itinerary::{address_in_ck, enumerate_two_sided, CantorAddress, Letter, Word, DEFAULT_ENUMERATION_CAP};
use crate::mahavier::{model_map, MPoint, MahavierError};
use crate::xspace::{interval_diam, Tolerance, XPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuotientError {
    #[error("hypothesis violated: {clause} at {point:?} -> {image:?}")]
    HypothesisViolated {
        clause: &'static str,
        point: CPoint,
        image: CPoint,
    },
    #[error("class map not well defined: {x:?} and {y:?}")]
    WellDefinednessError { x: Box<MPoint>, y: Box<MPoint> },
    #[error("bundle {bundle} lies beyond the modeled parameter coordinates (limit {limit})")]
    TruncationError { bundle: u32, limit: u32 },
    #[error("invalid parameter: {0}")]
    BadParam(String),
    #[error(transparent)]
    Mahavier(#[from] MahavierError),
}

/// A point `(c, t)` with `c` a finite Cantor address.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CPoint {
    pub c: CantorAddress,
    pub t: f64,
}

impl CPoint {
    /// Trailing zero digits do not change the value and are dropped.
    pub fn new(c: CantorAddress, t: f64) -> Self {
        let mut d = c.digits().to_vec();
        while d.last() == Some(&0) {
            d.pop();
        }
        CPoint {
            c: CantorAddress::new(d).expect("digits already valid"),
            t,
        }
    }

    pub fn vertex() -> Self {
        CPoint::new(CantorAddress::default(), 0.0)
    }

    pub fn c_value(&self) -> f64 {
        self.c.value()
    }

    pub fn is_zero_fiber(&self) -> bool {
        self.c.is_zero()
    }

    /// Max-norm distance using the value of `c`.
    pub fn dist(&self, other: &CPoint) -> f64 {
        (self.c_value() - other.c_value()).abs().max((self.t - other.t).abs())
    }

    pub fn approx_eq(&self, other: &CPoint, tol: Tolerance) -> bool {
        self.c == other.c && tol.eq(self.t, other.t)
    }
}

/// `φ(c, t) = (c, value(c)·t)`.
pub fn phi(p: &CPoint) -> CPoint {
    CPoint::new(p.c.clone(), p.c_value() * p.t)
}

/// Inverse of `φ` off the zero fiber.
pub fn phi_inverse(r: &CPoint) -> Option<CPoint> {
    if r.is_zero_fiber() {
        return None;
    }
    Some(CPoint::new(r.c.clone(), r.t / r.c_value()))
}

/// A map of `P` evaluated on sample points; `None` outside its modeled domain.
pub trait PMap {
    fn apply(&self, p: &CPoint) -> Option<CPoint>;

    fn name(&self) -> String;
}

pub struct IdentityMap;

impl PMap for IdentityMap {
    fn apply(&self, p: &CPoint) -> Option<CPoint> {
        Some(p.clone())
    }

    fn name(&self) -> String {
        "identity".into()
    }
}

/// `(c, t) ↦ (g(c), t^γ)` where `g` permutes the first `depth` digits and
/// fixes the all-zero prefix.
#[derive(Debug, Clone)]
pub struct ProductMap {
    depth: usize,
    perm: BTreeMap<CantorAddress, CantorAddress>,
    gamma: f64,
}

fn all_prefixes(depth: usize) -> Vec<CantorAddress> {
    (0..1usize << depth)
        .map(|bits| {
            let d = (0..depth).map(|i| if bits >> (depth - 1 - i) & 1 == 1 { 2 } else { 0 }).collect();
            CantorAddress::new(d).expect("binary digits")
        })
        .collect()
}

impl ProductMap {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, depth: usize, gamma: f64) -> Self {
        let prefixes = all_prefixes(depth);
        let mut images = prefixes[1..].to_vec();
        images.shuffle(rng);
        let mut perm = BTreeMap::new();
        perm.insert(prefixes[0].clone(), prefixes[0].clone());
        for (p, q) in prefixes[1..].iter().zip(images) {
            perm.insert(p.clone(), q);
        }
        ProductMap { depth, perm, gamma }
    }

    pub fn from_perm(depth: usize, perm: BTreeMap<CantorAddress, CantorAddress>, gamma: f64) -> Self {
        ProductMap { depth, perm, gamma }
    }

    pub fn map_address(&self, c: &CantorAddress) -> Option<CantorAddress> {
        let mut digits = c.digits().to_vec();
        digits.resize(digits.len().max(self.depth), 0);
        let head = CantorAddress::new(digits[..self.depth].to_vec()).ok()?;
        let tail = CantorAddress::new(digits[self.depth..].to_vec()).ok()?;
        Some(self.perm.get(&head)?.concat(&tail))
    }
}

impl PMap for ProductMap {
    fn apply(&self, p: &CPoint) -> Option<CPoint> {
        Some(CPoint::new(self.map_address(&p.c)?, p.t.powf(self.gamma)))
    }

    fn name(&self) -> String {
        format!("product(depth={}, gamma={})", self.depth, self.gamma)
    }
}

/// Any closure, for counterexamples and ad hoc maps.
pub struct FnMap<F: Fn(&CPoint) -> Option<CPoint>> {
    pub label: String,
    pub f: F,
}

impl<F: Fn(&CPoint) -> Option<CPoint>> PMap for FnMap<F> {
    fn apply(&self, p: &CPoint) -> Option<CPoint> {
        (self.f)(p)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// The shift carried into `C × I` by the model map, on a shift-closed family
/// of periodic points whose letters leave heights unchanged.
#[derive(Debug, Clone)]
pub struct ModelShift {
    table: BTreeMap<CantorAddress, (CantorAddress, u32, u32)>,
}

impl ModelShift {
    /// Periodic patterns in bundles `1..=kmax`, windows of half-width `n ≥ 4`.
    pub fn new(kmax: u32, n: usize) -> Self {
        let n = n.max(4);
        let mut patterns: Vec<Vec<Letter>> = Vec::new();
        for k in 1..=kmax {
            patterns.push(vec![Letter::f(k, 3), Letter::f(k + 1, 1)]);
            patterns.push(vec![Letter::f(k, 3), Letter::f(k + 1, 3), Letter::f(k + 2, 1), Letter::f(k + 1, 1)]);
            if k >= 3 {
                patterns.push(vec![Letter::f(k, 2)]);
                patterns.push(vec![Letter::f(k, 2), Letter::f(k, 3), Letter::f(k + 1, 1)]);
            }
        }
        let mut table = BTreeMap::new();
        for pat in patterns {
            let p = pat.len();
            for r in 0..p {
                let here = periodic_word(&pat, r, n);
                let next = periodic_word(&pat, (r + 1) % p, n);
                let (k0, k1) = (here.domain_at_zero().expect("nonempty"), next.domain_at_zero().expect("nonempty"));
                let a = CPoint::new(address_in_ck(&here, None).expect("nonempty"), 0.0).c;
                let b = CPoint::new(address_in_ck(&next, None).expect("nonempty"), 0.0).c;
                table.insert(a, (b, k0, k1));
            }
        }
        ModelShift { table }
    }

    /// Sample points `(c, j/h · diam)` on every fiber of the family.
    pub fn samples(&self, heights: usize) -> Vec<CPoint> {
        let mut out = Vec::new();
        for (c, (_, k, _)) in &self.table {
            for j in 0..=heights {
                out.push(CPoint::new(c.clone(), j as f64 / heights as f64 * interval_diam(*k)));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

fn periodic_word(pat: &[Letter], rot: usize, n: usize) -> Word {
    let p = pat.len() as i64;
    let letters = (-(n as i64)..n as i64)
        .map(|i| pat[((i + rot as i64).rem_euclid(p)) as usize])
        .collect();
    Word::new(letters, n).expect("periodic patterns chain")
}

impl PMap for ModelShift {
    fn apply(&self, p: &CPoint) -> Option<CPoint> {
        let (c, k0, k1) = self.table.get(&p.c)?;
        if p.t > interval_diam(*k0) {
            return None;
        }
        // heights are multiples of powers of two, so the rescaling is exact
        Some(CPoint::new(c.clone(), p.t / interval_diam(*k0) * interval_diam(*k1)))
    }

    fn name(&self) -> String {
        format!("model shift ({} fibers)", self.table.len())
    }
}

/// `f_R = φ ∘ f ∘ φ^{-1}` off the vertex, `(0,0)` on the zero fiber.
pub struct LiftedMap<'a, F: PMap + ?Sized> {
    f: &'a F,
}

impl<F: PMap + ?Sized> LiftedMap<'_, F> {
    pub fn apply(&self, r: &CPoint) -> Option<CPoint> {
        match phi_inverse(r) {
            None => Some(CPoint::vertex()),
            Some(p) => Some(phi(&self.f.apply(&p)?)),
        }
    }
}

/// Checks both invariance hypotheses on `samples` and returns the lift.
pub fn lift_f_r<'a, F: PMap + ?Sized>(f: &'a F, samples: &[CPoint]) -> Result<LiftedMap<'a, F>, QuotientError> {
    for p in samples {
        let Some(image) = f.apply(p) else { continue };
        if p.is_zero_fiber() && !image.is_zero_fiber() {
            return Err(QuotientError::HypothesisViolated {
                clause: "zero fiber leaves the zero fiber",
                point: p.clone(),
                image,
            });
        }
        if !p.is_zero_fiber() && image.is_zero_fiber() {
            return Err(QuotientError::HypothesisViolated {
                clause: "nonzero fiber enters the zero fiber",
                point: p.clone(),
                image,
            });
        }
    }
    Ok(LiftedMap { f })
}

/// All addresses of `depth` binary digits crossed with `heights + 1` heights.
pub fn grid_samples(depth: usize, heights: usize) -> Vec<CPoint> {
    let mut out = Vec::new();
    for c in all_prefixes(depth) {
        for j in 0..=heights {
            out.push(CPoint::new(c.clone(), j as f64 / heights as f64));
        }
    }
    out
}

/// Points of `R` approaching the vertex: `c_n = 0…02` (n zeros), height `s·c_n`.
pub fn vertex_sequence(len: usize, s: f64) -> Vec<CPoint> {
    (1..=len)
        .map(|n| {
            let mut d = vec![0u8; n];
            d.push(2);
            phi(&CPoint::new(CantorAddress::new(d).expect("valid"), s))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HlavnaReport {
    pub map: String,
    pub pass: bool,
    pub samples: usize,
    pub hypotheses: bool,
    pub hypothesis_witness: Option<String>,
    pub injective: bool,
    pub injectivity_witness: Option<(CPoint, CPoint)>,
    pub surjective: bool,
    pub surjectivity_witness: Option<CPoint>,
    pub vertex_sequences: usize,
    pub vertex_continuous: bool,
    /// Norm of the last image along each vertex sequence.
    pub vertex_final_norms: Vec<f64>,
}

/// Sampled checks of the lift: hypotheses, injectivity, surjectivity onto the
/// sampled part of `R`, and continuity at the vertex along `sequences`.
pub fn check_hlavna<F: PMap + ?Sized>(f: &F, samples: &[CPoint], sequences: &[Vec<CPoint>], tol: Tolerance) -> HlavnaReport {
    let mut report = HlavnaReport {
        map: f.name(),
        pass: false,
        samples: samples.len(),
        hypotheses: true,
        hypothesis_witness: None,
        injective: false,
        injectivity_witness: None,
        surjective: false,
        surjectivity_witness: None,
        vertex_sequences: sequences.len(),
        vertex_continuous: false,
        vertex_final_norms: Vec::new(),
    };
    let lifted = match lift_f_r(f, samples) {
        Ok(l) => l,
        Err(e) => {
            report.hypotheses = false;
            report.hypothesis_witness = Some(e.to_string());
            return report;
        }
    };
    let r_samples: Vec<CPoint> = samples.iter().filter(|p| !p.is_zero_fiber()).map(phi).collect();
    let images: Vec<CPoint> = r_samples.iter().filter_map(|r| lifted.apply(r)).collect();

    // injectivity: sort images and compare neighbours
    let mut idx: Vec<usize> = (0..images.len()).collect();
    idx.sort_by(|&i, &j| images[i].c.cmp(&images[j].c).then(images[i].t.total_cmp(&images[j].t)));
    report.injective = true;
    for w in idx.windows(2) {
        let (a, b) = (&images[w[0]], &images[w[1]]);
        if a.approx_eq(b, tol) && !r_samples[w[0]].approx_eq(&r_samples[w[1]], tol) {
            report.injective = false;
            report.injectivity_witness = Some((r_samples[w[0]].clone(), r_samples[w[1]].clone()));
            break;
        }
    }

    // surjectivity onto the sampled points of R
    let mut by_fiber: HashMap<&CantorAddress, Vec<f64>> = HashMap::new();
    for im in &images {
        by_fiber.entry(&im.c).or_default().push(im.t);
    }
    for v in by_fiber.values_mut() {
        v.sort_by(f64::total_cmp);
    }
    report.surjective = true;
    for r in &r_samples {
        let hit = by_fiber.get(&r.c).is_some_and(|ts| {
            let i = ts.partition_point(|t| *t < r.t - tol.eps_eq);
            ts.get(i).is_some_and(|t| tol.eq(*t, r.t))
        });
        if !hit {
            report.surjective = false;
            report.surjectivity_witness = Some(r.clone());
            break;
        }
    }

    // vertex continuity
    report.vertex_continuous = true;
    for seq in sequences {
        let norms: Vec<f64> = seq
            .iter()
            .filter_map(|r| lifted.apply(r))
            .map(|im| im.c_value().max(im.t))
            .collect();
        let last = norms.last().copied().unwrap_or(0.0);
        let input_last = seq.last().map_or(0.0, |r| r.c_value().max(r.t));
        // images must shrink with the inputs
        let ok = norms.len() == seq.len() && last <= 1e-6_f64.max(input_last * 1e3);
        report.vertex_continuous &= ok;
        report.vertex_final_norms.push(last);
    }
    report.pass = report.hypotheses && report.injective && report.surjective && report.vertex_continuous;
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub eps_p: f64,
    pub eps_r: f64,
    pub pass: bool,
}

/// ε-density of an orbit in `P` against a net, and of its `φ`-image in `R`.
/// `φ` is 2-Lipschitz for the max norm, so `ε_R ≤ 2 ε_P` is expected.
pub fn density_transfer(orbit: &[CPoint], net: &[CPoint]) -> TransferReport {
    let cover = |pts: &[CPoint], targets: &[CPoint]| {
        targets
            .iter()
            .map(|q| pts.iter().map(|p| p.dist(q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    let eps_p = cover(orbit, net);
    let r_orbit: Vec<CPoint> = orbit.iter().map(phi).collect();
    let r_net: Vec<CPoint> = net.iter().map(phi).collect();
    let eps_r = cover(&r_orbit, &r_net);
    TransferReport {
        eps_p,
        eps_r,
        pass: eps_r <= 2.0 * eps_p + 1e-12,
    }
}

/// A truncated element of `{1,2} × {3,4} × {5,6} × ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AParam(Vec<u32>);

impl AParam {
    pub fn new(a: Vec<u32>) -> Result<Self, QuotientError> {
        for (i, &v) in a.iter().enumerate() {
            let k = i as u32 + 1;
            if v != 2 * k - 1 && v != 2 * k {
                return Err(QuotientError::BadParam(format!("a_{k} = {v} is not in {{{}, {}}}", 2 * k - 1, 2 * k)));
            }
        }
        Ok(AParam(a))
    }

    /// The parameter whose `k`-th coordinate is `2k` exactly when bit `k-1` is set.
    pub fn from_bits(bits: u64, kmax: u32) -> Self {
        AParam((1..=kmax).map(|k| 2 * k - 1 + ((bits >> (k - 1)) & 1) as u32).collect())
    }

    pub fn kmax(&self) -> u32 {
        self.0.len() as u32
    }

    /// `a_k` for `1 ≤ k ≤ kmax`.
    pub fn get(&self, k: u32) -> Option<u32> {
        self.0.get(k.checked_sub(1)? as usize).copied()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Largest bundle index the parameter involves, `kmax² + 2 + a_kmax`.
    pub fn max_bundle(&self) -> u32 {
        (1..=self.kmax()).map(|k| host_bundle(k) + self.get(k).unwrap_or(0)).max().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for AParam {
    type Error = QuotientError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        AParam::new(v)
    }
}

impl From<AParam> for Vec<u32> {
    fn from(a: AParam) -> Self {
        a.0
    }
}

impl FromStr for AParam {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return AParam::new(Vec::new());
        }
        let v = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| QuotientError::BadParam(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        AParam::new(v)
    }
}

impl fmt::Display for AParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Host bundle `k² + 2` for parameter coordinate `k`.
pub fn host_bundle(k: u32) -> u32 {
    k * k + 2
}

/// Role of arc `M_j` under `a`: `(k, 0)` for a host, `(k, i)` for guest `i`.
pub fn gluing_role(j: u32, a: &AParam) -> Result<Option<(u32, u32)>, QuotientError> {
    if j < 3 {
        return Ok(None);
    }
    let k = ((j - 2) as f64).sqrt().floor() as u32;
    let k = if host_bundle(k + 1) <= j { k + 1 } else { k };
    let limit = host_bundle(a.kmax() + 1);
    if k > a.kmax() {
        return Err(QuotientError::TruncationError { bundle: j, limit });
    }
    let i = j - host_bundle(k);
    let a_k = a.get(k).expect("k ≤ kmax");
    Ok(match i {
        0 => Some((k, 0)),
        i if i <= a_k => Some((k, i)),
        _ => None,
    })
}

/// Canonical label of a `∼_a` class.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKey {
    Top,
    Glued { host: u32, tau: f64 },
    Point(MPoint),
}

impl ClassKey {
    pub fn same(&self, other: &ClassKey, tol: Tolerance) -> bool {
        match (self, other) {
            (ClassKey::Top, ClassKey::Top) => true,
            (ClassKey::Glued { host: h1, tau: t1 }, ClassKey::Glued { host: h2, tau: t2 }) => h1 == h2 && tol.eq(*t1, *t2),
            (ClassKey::Point(p), ClassKey::Point(q)) => same_point(p, q, tol),
            _ => false,
        }
    }
}

/// Equal base coordinate and letters agreeing wherever both windows know them.
fn same_point(p: &MPoint, q: &MPoint, tol: Tolerance) -> bool {
    match (p, q) {
        (MPoint::AllInfinity, MPoint::AllInfinity) => true,
        (MPoint::Finite { word: w1, t0: a }, MPoint::Finite { word: w2, t0: b }) => {
            if !a.approx_eq(b, tol) {
                return false;
            }
            let lo = -(w1.left_len().min(w2.left_len()) as i64);
            let hi = w1.right_len().min(w2.right_len()) as i64;
            (lo..hi).all(|i| w1.at(i) == w2.at(i))
        }
        _ => false,
    }
}

/// The class of `x` under `∼_a`: the top (height 0 or the all-∞ point), a
/// glued arc height, or the point alone.
pub fn class_key(x: &MPoint, a: &AParam) -> Result<ClassKey, QuotientError> {
    if matches!(x, MPoint::AllInfinity) {
        return Ok(ClassKey::Top);
    }
    let tau = model_map(x, Some(0)).tau;
    if tau == 0.0 {
        return Ok(ClassKey::Top);
    }
    if let Some(j) = x.m_index() {
        if let Some((k, _)) = gluing_role(j, a)? {
            return Ok(ClassKey::Glued { host: host_bundle(k), tau });
        }
    }
    Ok(ClassKey::Point(x.clone()))
}

/// `x ∼_a y`.
pub fn sim_a(x: &MPoint, y: &MPoint, a: &AParam, tol: Tolerance) -> Result<bool, QuotientError> {
    Ok(class_key(x, a)?.same(&class_key(y, a)?, tol))
}

/// A map on classes recorded over sampled representatives.
#[derive(Debug, Clone, Serialize)]
pub struct ClassMap {
    pub pairs: Vec<(ClassKey, ClassKey)>,
}

impl ClassMap {
    pub fn apply(&self, class: &ClassKey, tol: Tolerance) -> Option<&ClassKey> {
        self.pairs.iter().find(|(c, _)| c.same(class, tol)).map(|(_, d)| d)
    }
}

/// Descends `f` to `∼_a` classes after checking `x ∼ y ⟺ f(x) ∼ f(y)` on all
/// sampled pairs.
pub fn descend<F>(f: F, a: &AParam, samples: &[MPoint], tol: Tolerance) -> Result<ClassMap, QuotientError>
where
    F: Fn(&MPoint) -> Result<MPoint, QuotientError>,
{
    let keys: Vec<ClassKey> = samples.iter().map(|x| class_key(x, a)).collect::<Result<_, _>>()?;
    let images: Vec<MPoint> = samples.iter().map(&f).collect::<Result<_, _>>()?;
    let image_keys: Vec<ClassKey> = images.iter().map(|x| class_key(x, a)).collect::<Result<_, _>>()?;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if keys[i].same(&keys[j], tol) != image_keys[i].same(&image_keys[j], tol) {
                return Err(QuotientError::WellDefinednessError {
                    x: Box::new(samples[i].clone()),
                    y: Box::new(samples[j].clone()),
                });
            }
        }
    }
    let mut pairs: Vec<(ClassKey, ClassKey)> = Vec::new();
    for (k, im) in keys.into_iter().zip(image_keys) {
        if !pairs.iter().any(|(c, _)| c.same(&k, tol)) {
            pairs.push((k, im));
        }
    }
    Ok(ClassMap { pairs })
}

/// One arc of a fan model: the cylinder of an itinerary in bundle `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub bundle: u32,
    pub address: CantorAddress,
    pub length: f64,
    #[serde(default)]
    pub copy: u32,
}

/// Guest leg glued isometrically onto the lower part of the host leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub host: usize,
    pub guest: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanModel {
    pub top: String,
    pub legs: Vec<Leg>,
    pub gluings: Vec<Gluing>,
}

impl FanModel {
    pub fn is_guest(&self, leg: usize) -> bool {
        self.gluings.iter().any(|g| g.guest == leg)
    }

    pub fn guests_of(&self, leg: usize) -> impl Iterator<Item = usize> + '_ {
        self.gluings.iter().filter(move |g| g.host == leg).map(|g| g.guest)
    }

    /// Every gluing puts a shorter leg onto a longer one.
    pub fn is_consistent(&self) -> bool {
        self.gluings.iter().all(|g| {
            g.host < self.legs.len() && g.guest < self.legs.len() && self.legs[g.guest].length <= self.legs[g.host].length
        })
    }
}

/// Interleaved depth split into letters before and from position 0.
pub fn depth_split(depth: usize) -> (usize, usize) {
    (depth / 2, depth - depth / 2)
}

/// Address of the arc `M_j` at the given depth.
pub fn identity_address(j: u32, depth: usize) -> CantorAddress {
    let (l, r) = depth_split(depth);
    let w = Word::new(vec![Letter::f(j, 2); l + r], l).expect("identity word");
    address_in_ck(&w, None).expect("nonempty")
}

/// Legs of bundles `1..=kmax_bundle` at the given depth, with the arcs
/// `M_{k²+2+i}` (`1 ≤ i ≤ a_k`) glued onto `M_{k²+2}`.
pub fn build_fan(a: &AParam, kmax_bundle: u32, depth: usize) -> Result<FanModel, QuotientError> {
    if depth == 0 {
        return Err(QuotientError::BadParam("depth must be at least 1".into()));
    }
    if a.max_bundle() > kmax_bundle {
        return Err(QuotientError::BadParam(format!(
            "bundle range {kmax_bundle} does not reach {} required by a = ({a})",
            a.max_bundle()
        )));
    }
    let (l, r) = depth_split(depth);
    let mut legs = Vec::new();
    let mut identity_leg: HashMap<u32, usize> = HashMap::new();
    for k in 1..=kmax_bundle {
        let words = enumerate_two_sided(k, l, r, DEFAULT_ENUMERATION_CAP).map_err(|e| QuotientError::BadParam(e.to_string()))?;
        let id = (k >= 3).then(|| identity_address(k, depth));
        for w in words {
            let address = address_in_ck(&w, None).expect("nonempty");
            if id.as_ref() == Some(&address) {
                identity_leg.insert(k, legs.len());
            }
            legs.push(Leg {
                bundle: k,
                address,
                length: interval_diam(k),
                copy: 0,
            });
        }
    }
    let mut gluings = Vec::new();
    for k in 1..=a.kmax() {
        let host = identity_leg[&host_bundle(k)];
        for i in 1..=a.get(k).expect("k ≤ kmax") {
            gluings.push(Gluing {
                host,
                guest: identity_leg[&(host_bundle(k) + i)],
            });
        }
    }
    Ok(FanModel {
        top: "o".into(),
        legs,
        gluings,
    })
}

/// Copies `1..=n` of `base` joined at the top, copy `i` scaled by `scale·2^{-i}`.
pub fn star_of(base: &FanModel, n_copies: u32, scale: f64) -> FanModel {
    let scales: Vec<f64> = (1..=n_copies).map(|i| scale * 0.5f64.powi(i as i32)).collect();
    star_with_scales(base, &scales)
}

pub fn star_with_scales(base: &FanModel, scales: &[f64]) -> FanModel {
    let n = scales.len() as u32;
    let mut legs = Vec::with_capacity(base.legs.len() * scales.len());
    let mut gluings = Vec::new();
    for (i, s) in scales.iter().enumerate() {
        let offset = legs.len();
        legs.extend(base.legs.iter().map(|leg| Leg {
            length: leg.length * s,
            copy: leg.copy * n + i as u32 + 1,
            ..leg.clone()
        }));
        gluings.extend(base.gluings.iter().map(|g| Gluing {
            host: g.host + offset,
            guest: g.guest + offset,
        }));
    }
    FanModel {
        top: base.top.clone(),
        legs,
        gluings,
    }
}

/// Sample of points on arcs `M_j` and elsewhere, for exercising `∼_a`.
pub fn sample_points<R: Rng + ?Sized>(rng: &mut R, a: &AParam, count: usize, n: usize) -> Vec<MPoint> {
    let mut out = Vec::with_capacity(count);
    let kmax = a.kmax().max(1);
    while out.len() < count {
        let k = rng.gen_range(1..=kmax);
        let host = host_bundle(k);
        let guest = host + rng.gen_range(1..=a.get(k).unwrap_or(1));
        // a height both arcs reach, on a dyadic grid so rescaling stays exact
        let tau = interval_diam(guest) * rng.gen_range(1..=8) as f64 / 8.0;
        let choice = rng.gen_range(0..5);
        let p = match choice {
            0 => MPoint::identity(host, tau / interval_diam(host), n),
            1 => MPoint::identity(guest, tau / interval_diam(guest), n),
            2 => {
                let b = rng.gen_range(1..=host + 1);
                let w = crate::mahavier::random_word(rng, b, n, n);
                MPoint::new(w, XPoint::Finite { k: b, u: 0.0 })
            }
            3 => {
                let b = rng.gen_range(1..=host);
                Ok(crate::mahavier::random_point(rng, b, n))
            }
            _ => Ok(MPoint::AllInfinity),
        };
        out.push(p.expect("valid sample"));
    }
    out
}
