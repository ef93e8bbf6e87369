//! End-points, JuMa heights and counts of fan models, profiles that separate
//! fans built from different parameters, a Hausdorff distance, and a brute
//! metric oracle for JuMa heights on a planar picture of the model.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::itinerary::ck_interval;
use crate::quotients::{build_fan, host_bundle, AParam, FanModel, Leg, QuotientError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("leg {0} is not an end-point of the fan")]
    NotAnEndpoint(usize),
    #[error("parameters agree on the modeled coordinates 1..={kmax}; raise kmax")]
    NotDistinguished { kmax: u32 },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// Legs whose tips stay end-points after gluing: every leg that is not a guest.
pub fn endpoints(fan: &FanModel) -> Vec<usize> {
    let guests: std::collections::HashSet<usize> = fan.gluings.iter().map(|g| g.guest).collect();
    (0..fan.legs.len()).filter(|i| !guests.contains(i)).collect()
}

/// Heights on a leg where end-points accumulate: its own tip and the tip of
/// every leg glued into it. Sorted in decreasing order.
pub fn juma_heights(fan: &FanModel, leg: usize) -> Vec<f64> {
    let mut h = vec![fan.legs[leg].length];
    h.extend(fan.guests_of(leg).map(|g| fan.legs[g].length));
    h.sort_by(|a, b| b.total_cmp(a));
    h
}

pub fn juma_count(fan: &FanModel, e: usize) -> Result<usize, InvariantError> {
    if e >= fan.legs.len() || fan.is_guest(e) {
        return Err(InvariantError::NotAnEndpoint(e));
    }
    Ok(juma_heights(fan, e).len())
}

/// Multiset of JuMa counts over all end-points, as count ↦ multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumaProfile {
    pub counts: BTreeMap<usize, usize>,
}

impl JumaProfile {
    pub fn distinct_values(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.counts.contains_key(&v)
    }
}

pub fn profile(fan: &FanModel) -> JumaProfile {
    let mut guests_per_host: HashMap<usize, usize> = HashMap::new();
    let mut is_guest = vec![false; fan.legs.len()];
    for g in &fan.gluings {
        *guests_per_host.entry(g.host).or_default() += 1;
        is_guest[g.guest] = true;
    }
    let mut counts = BTreeMap::new();
    for (i, guest) in is_guest.iter().enumerate() {
        if !guest {
            *counts.entry(1 + guests_per_host.get(&i).copied().unwrap_or(0)).or_default() += 1;
        }
    }
    JumaProfile { counts }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// Least coordinate where the parameters differ.
    pub k: u32,
    pub a_k: u32,
    pub b_k: u32,
    /// A count realized in one profile and absent from the other.
    pub value: usize,
    pub present_in: char,
    pub host_bundle: u32,
}

/// Bundles needed to model parameter coordinates `1..=kmax`.
pub fn bundles_for(kmax: u32) -> u32 {
    host_bundle(kmax) + 2 * kmax
}

/// Builds both truncated fans and finds a JuMa count separating them.
pub fn distinguish(a: &AParam, b: &AParam, kmax: u32, depth: usize) -> Result<Certificate, InvariantError> {
    let kmax = kmax.min(a.kmax()).min(b.kmax());
    let trunc = |p: &AParam| AParam::new(p.values()[..kmax as usize].to_vec());
    let (a, b) = (trunc(a)?, trunc(b)?);
    let Some(k) = (1..=kmax).find(|&k| a.get(k) != b.get(k)) else {
        return Err(InvariantError::NotDistinguished { kmax });
    };
    let bundles = bundles_for(kmax);
    let pa = profile(&build_fan(&a, bundles, depth)?);
    let pb = profile(&build_fan(&b, bundles, depth)?);
    let (a_k, b_k) = (a.get(k).expect("k ≤ kmax"), b.get(k).expect("k ≤ kmax"));
    let cert = |value: usize, present_in: char| Certificate {
        k,
        a_k,
        b_k,
        value,
        present_in,
        host_bundle: host_bundle(k),
    };
    let (va, vb) = (a_k as usize + 1, b_k as usize + 1);
    if pa.contains(va) && !pb.contains(va) {
        Ok(cert(va, 'a'))
    } else if pb.contains(vb) && !pa.contains(vb) {
        Ok(cert(vb, 'b'))
    } else {
        Err(InvariantError::NotDistinguished { kmax })
    }
}

/// `max(sup_a inf_b d, sup_b inf_a d)` for nonempty finite sets.
pub fn hausdorff_dist<P, D: Fn(&P, &P) -> f64>(a: &[P], b: &[P], d: D) -> f64 {
    let directed = |x: &[P], y: &[P]| {
        x.iter()
            .map(|p| y.iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Planar picture of a fan model: bundle `k` (copy `c`) occupies the slot
/// `[2(k-1), 2(k-1)+1]` shifted by the copy, the Cantor block `C_k` rescaled to
/// unit width; height `τ` is drawn at `y = 1/(1 + log₂(1/τ)/64)` so that the
/// tip heights of all modeled bundles stay well separated.
#[derive(Debug, Clone, Copy)]
pub struct PlanarEmbedding {
    pub copy_stride: f64,
}

impl PlanarEmbedding {
    pub fn for_fan(fan: &FanModel) -> Self {
        let kmax = fan.legs.iter().map(|l| l.bundle).max().unwrap_or(1);
        PlanarEmbedding {
            copy_stride: 2.0 * kmax as f64 + 2.0,
        }
    }

    pub fn x(&self, leg: &Leg) -> f64 {
        let (c, _) = ck_interval(leg.bundle);
        let slot = 2.0 * (leg.bundle - 1) as f64 + self.copy_stride * leg.copy as f64;
        slot + (leg.address.value() - c) * 3f64.powi(leg.bundle as i32)
    }

    /// Width of the leg's cylinder after rescaling.
    pub fn cylinder_width(&self, leg: &Leg) -> f64 {
        3f64.powi(-(leg.address.len() as i32 - leg.bundle as i32))
    }

    pub fn y(tau: f64) -> f64 {
        if tau <= 0.0 {
            return 0.0;
        }
        1.0 / (1.0 + (1.0 / tau).log2() / 64.0)
    }

    pub fn tau(y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        2f64.powf(-64.0 * (1.0 / y - 1.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Detection {
    pub leg: usize,
    pub tau: f64,
    pub y: f64,
}

/// Brute-force JuMa detection.
///
/// End-points are the tips of non-guest legs plus, for every leg cylinder, the
/// tip of a deeper sub-cylinder within `grid/2` of it (the itinerary sets have
/// no isolated points, so such neighbours always exist). Glued points are
/// identified at equal height. A grid point on a non-guest leg is reported
/// when some end-point other than the point itself lies within `grid`;
/// consecutive detections along a leg merge into one height.
pub fn juma_metric_oracle(fan: &FanModel, emb: PlanarEmbedding, grid: f64) -> Vec<Detection> {
    let delta = grid;
    // end-point x positions per (copy, bundle); all share the bundle tip height
    let mut tips: HashMap<(u32, u32), Vec<f64>> = HashMap::new();
    for (i, leg) in fan.legs.iter().enumerate() {
        let x = emb.x(leg);
        let w = emb.cylinder_width(leg);
        let mut r = 1;
        while 2.0 * 3f64.powi(-r) * w > delta / 2.0 {
            r += 1;
        }
        let entry = tips.entry((leg.copy, leg.bundle)).or_default();
        entry.push(x + 2.0 * 3f64.powi(-r) * w);
        if !fan.is_guest(i) {
            entry.push(x);
        }
    }
    for v in tips.values_mut() {
        v.sort_by(f64::total_cmp);
    }
    // horizontal distance to the closest end-point of a bundle; with
    // `skip_self`, an end-point exactly at `x` (the leg's own tip) is ignored
    let nearest = |key: (u32, u32), x: f64, skip_self: bool| -> f64 {
        let Some(v) = tips.get(&key) else { return f64::INFINITY };
        let i = v.partition_point(|t| *t < x);
        let mut best = f64::INFINITY;
        for j in i.saturating_sub(1)..(i + 2).min(v.len()) {
            let dx = (v[j] - x).abs();
            if !(skip_self && dx == 0.0) {
                best = best.min(dx);
            }
        }
        best
    };

    let mut out = Vec::new();
    for e in endpoints(fan) {
        let leg = &fan.legs[e];
        let x = emb.x(leg);
        let y_tip = PlanarEmbedding::y(leg.length);
        let guests: Vec<(f64, f64, (u32, u32))> = fan
            .guests_of(e)
            .map(|g| {
                let gl = &fan.legs[g];
                (emb.x(gl), PlanarEmbedding::y(gl.length), (gl.copy, gl.bundle))
            })
            .collect();
        let steps = (y_tip / delta).floor() as usize;
        let mut ys: Vec<f64> = (1..=steps).map(|i| i as f64 * delta).collect();
        if ys.last().is_none_or(|y| *y < y_tip) {
            ys.push(y_tip);
        }
        let mut run: Vec<f64> = Vec::new();
        let flush = |run: &mut Vec<f64>, out: &mut Vec<Detection>| {
            if !run.is_empty() {
                let y = (run[0] + run[run.len() - 1]) / 2.0;
                out.push(Detection {
                    leg: e,
                    tau: PlanarEmbedding::tau(y),
                    y,
                });
                run.clear();
            }
        };
        for &y in &ys {
            let mut d = f64::INFINITY;
            let dy = (y - y_tip).abs();
            if dy <= delta {
                d = d.min(nearest((leg.copy, leg.bundle), x, true).hypot(dy));
            }
            for &(xg, yg, key) in &guests {
                // walk along the host to the guest's height, cross the identification
                let y_on = y.min(yg);
                let climb = y - y_on;
                let dyg = (y_on - yg).abs();
                if climb + dyg <= delta {
                    d = d.min(climb + nearest(key, xg, false).hypot(dyg));
                }
            }
            if d <= delta {
                run.push(y);
            } else {
                flush(&mut run, &mut out);
            }
        }
        flush(&mut run, &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    pub agree: bool,
    pub legs_checked: usize,
    pub detections: usize,
    pub mismatch_leg: Option<usize>,
}

/// Compares `juma_heights` with the oracle on every end-point leg, matching
/// heights within one grid cell in the planar picture.
pub fn compare_with_oracle(fan: &FanModel, grid: f64) -> OracleComparison {
    let emb = PlanarEmbedding::for_fan(fan);
    let det = juma_metric_oracle(fan, emb, grid);
    let mut by_leg: HashMap<usize, Vec<f64>> = HashMap::new();
    for d in &det {
        by_leg.entry(d.leg).or_default().push(d.y);
    }
    let eps = endpoints(fan);
    for &e in &eps {
        let mut want: Vec<f64> = juma_heights(fan, e).iter().map(|t| PlanarEmbedding::y(*t)).collect();
        let mut got = by_leg.remove(&e).unwrap_or_default();
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        let ok = want.len() == got.len() && want.iter().zip(&got).all(|(w, g)| (w - g).abs() <= 1.5 * grid);
        if !ok {
            return OracleComparison {
                agree: false,
                legs_checked: eps.len(),
                detections: det.len(),
                mismatch_leg: Some(e),
            };
        }
    }
    OracleComparison {
        agree: by_leg.is_empty(),
        legs_checked: eps.len(),
        detections: det.len(),
        mismatch_leg: by_leg.keys().next().copied(),
    }
}
