//! Deterministic SVG drawings of the spaces, the relation and the fans.
//!
//! Every coordinate is written with six decimals so that output is stable
//! byte for byte.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::invariants::{bundles_for, PlanarEmbedding};
use crate::itinerary::{ck_prefix, CantorAddress};
use crate::quotients::{build_fan, phi, star_of, AParam, CPoint, FanModel, Leg, QuotientError};
use crate::relations::PieceMap;
use crate::xspace::{embed, interval_diam, XPoint};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("unknown figure {0:?}; expected one of fig1, fig2, fig3, fig4, fig5, fig6, glue")]
    UnknownFigure(String),
    #[error("depth must lie in 1..={max}, got {depth}")]
    BadDepth { depth: usize, max: usize },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    CantorFan,
    /// Decorative only: legs of varying length over a Cantor net.
    LelekFan,
    Star,
    SpacesPR,
    RelationH,
    ModelSpace,
    Glue,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::CantorFan,
        Figure::LelekFan,
        Figure::Star,
        Figure::SpacesPR,
        Figure::RelationH,
        Figure::ModelSpace,
        Figure::Glue,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Figure::CantorFan => "fig1",
            Figure::LelekFan => "fig2",
            Figure::Star => "fig3",
            Figure::SpacesPR => "fig4",
            Figure::RelationH => "fig5",
            Figure::ModelSpace => "fig6",
            Figure::Glue => "glue",
        }
    }
}

impl FromStr for Figure {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| RenderError::UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub depth: usize,
    /// Parameter for the gluing diagram.
    pub a: AParam,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            depth: 5,
            a: "1,4,5".parse().expect("valid"),
        }
    }
}

pub const MAX_DEPTH: usize = 10;

/// Six-decimal formatting with `-0` folded into `0`.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Maps a data box onto a fixed pixel canvas with `y` pointing up.
struct Canvas {
    body: String,
    width: f64,
    height: f64,
    margin: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Canvas {
    fn new(width: f64, height: f64, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) -> Self {
        Canvas {
            body: String::new(),
            width,
            height,
            margin: 20.0,
            x0,
            x1,
            y0,
            y1,
        }
    }

    fn px(&self, x: f64) -> String {
        fmt6(self.margin + (x - self.x0) / (self.x1 - self.x0) * (self.width - 2.0 * self.margin))
    }

    fn py(&self, y: f64) -> String {
        fmt6(self.height - self.margin - (y - self.y0) / (self.y1 - self.y0) * (self.height - 2.0 * self.margin))
    }

    fn open(&mut self, id: &str, stroke: &str) {
        let _ = writeln!(self.body, r#"<g id="{id}" stroke="{stroke}" fill="none" stroke-width="0.6">"#);
    }

    fn close(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            self.px(a.0),
            self.py(a.1),
            self.px(b.0),
            self.py(b.1)
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)]) {
        let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", self.px(p.0), self.py(p.1))).collect();
        let _ = writeln!(self.body, r#"<polyline points="{}"/>"#, coords.join(" "));
    }

    fn dot(&mut self, id: &str, p: (f64, f64), fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle id="{id}" cx="{}" cy="{}" r="3.000000" fill="{fill}"/>"#,
            self.px(p.0),
            self.py(p.1)
        );
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<title>{title}</title>\n{}</svg>\n",
            self.body,
            w = fmt6(self.width),
            h = fmt6(self.height),
        )
    }
}

/// Addresses of all `depth`-digit cylinders of the Cantor set.
pub fn cantor_net(depth: usize) -> Vec<CantorAddress> {
    (0..1usize << depth)
        .map(|bits| {
            let d = (0..depth).map(|i| if bits >> (depth - 1 - i) & 1 == 1 { 2 } else { 0 }).collect();
            CantorAddress::new(d).expect("binary digits")
        })
        .collect()
}

/// Both endpoints of every depth-`d` cylinder.
fn cantor_points(depth: usize) -> Vec<f64> {
    let mut v: Vec<f64> = cantor_net(depth)
        .iter()
        .flat_map(|c| [c.value(), c.value() + c.cylinder_width()])
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn render(fig: Figure, opts: &RenderOptions) -> Result<String, RenderError> {
    if opts.depth == 0 || opts.depth > MAX_DEPTH {
        return Err(RenderError::BadDepth {
            depth: opts.depth,
            max: MAX_DEPTH,
        });
    }
    Ok(match fig {
        Figure::CantorFan => cantor_fan(opts.depth),
        Figure::LelekFan => lelek_fan(opts.depth),
        Figure::Star => star(opts.depth),
        Figure::SpacesPR => spaces_pr(opts.depth),
        Figure::RelationH => relation_h(opts.depth),
        Figure::ModelSpace => model_space(opts.depth),
        Figure::Glue => glue(&opts.a, opts.depth)?,
    })
}

fn cantor_fan(depth: usize) -> String {
    let mut cv = Canvas::new(400.0, 400.0, (0.0, 1.0), (0.0, 1.0));
    cv.open("legs", "black");
    for c in cantor_points(depth) {
        cv.line((0.0, 0.0), (c, 1.0));
    }
    cv.close();
    cv.finish("Cantor fan")
}

fn lelek_fan(depth: usize) -> String {
    let mut cv = Canvas::new(400.0, 400.0, (0.0, 1.0), (0.0, 1.0));
    cv.open("legs", "black");
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    for (i, c) in cantor_points(depth + 2).into_iter().enumerate() {
        let h = 0.2 + 0.8 * ((i as f64 + 1.0) * golden).fract();
        cv.line((0.0, 0.0), (c * h, h));
    }
    cv.close();
    cv.finish("Lelek fan (decorative approximation)")
}

fn plain_cantor_model(depth: usize) -> FanModel {
    FanModel {
        top: "o".into(),
        legs: cantor_net(depth)
            .into_iter()
            .map(|address| Leg {
                bundle: 1,
                address,
                length: 1.0,
                copy: 0,
            })
            .collect(),
        gluings: Vec::new(),
    }
}

fn star(depth: usize) -> String {
    let copies = 6u32;
    let model = star_of(&plain_cantor_model(depth), copies, 2.0);
    let mut cv = Canvas::new(400.0, 400.0, (-1.0, 1.0), (-1.0, 1.0));
    let wedge = std::f64::consts::PI / copies as f64;
    for copy in 1..=copies {
        cv.open(&format!("copy{copy}"), "black");
        let axis = 2.0 * std::f64::consts::PI * (copy - 1) as f64 / copies as f64;
        for leg in model.legs.iter().filter(|l| l.copy == copy) {
            let theta = axis + (leg.address.value() - 0.5) * wedge;
            cv.line((0.0, 0.0), (leg.length * theta.cos(), leg.length * theta.sin()));
        }
        cv.close();
    }
    cv.dot("top", (0.0, 0.0), "black");
    cv.finish("Star of Cantor fans")
}

fn spaces_pr(depth: usize) -> String {
    let mut cv = Canvas::new(800.0, 400.0, (0.0, 2.3), (0.0, 1.0));
    let fibers = cantor_points(depth);
    cv.open("P", "black");
    for &c in &fibers {
        cv.line((c, 0.0), (c, 1.0));
    }
    cv.close();
    cv.open("R", "black");
    for addr in cantor_net(depth) {
        let right = CantorAddress::new(
            addr.digits()
                .iter()
                .copied()
                .chain(std::iter::repeat_n(2, 30))
                .collect(),
        )
        .expect("valid");
        for a in [addr, right] {
            let top = phi(&CPoint::new(a.clone(), 1.0));
            let c = CPoint::new(a, 0.0).c_value();
            cv.line((1.3 + c, 0.0), (1.3 + c, top.t));
        }
    }
    cv.close();
    cv.dot("vertex", (1.3, 0.0), "black");
    cv.finish("The spaces P and R")
}

fn graph(piece: PieceMap, steps: usize) -> Vec<(f64, f64)> {
    let k = piece.domain().expect("finite piece");
    (0..=steps)
        .map(|i| {
            let x = XPoint::Finite {
                k,
                u: i as f64 / steps as f64,
            };
            let y = piece.apply(x).expect("in domain");
            (embed(x), embed(y))
        })
        .collect()
}

fn relation_h(depth: usize) -> String {
    let kmax = depth as u32 + 3;
    let mut cv = Canvas::new(400.0, 400.0, (0.0, 1.0), (0.0, 1.0));
    cv.open("cube_root", "#1f77b4");
    cv.polyline(&graph(PieceMap::CubeRoot, 128));
    cv.close();
    cv.open("square", "#ff7f0e");
    cv.polyline(&graph(PieceMap::Square, 128));
    cv.close();
    let families: [(&str, &str, fn(u32) -> PieceMap, u32); 3] = [
        ("up", "#2ca02c", PieceMap::Up, 1),
        ("down", "#d62728", PieceMap::Down, 2),
        ("identity", "#9467bd", PieceMap::Id, 3),
    ];
    for (id, color, make, first) in families {
        cv.open(id, color);
        for k in first..=kmax {
            cv.polyline(&graph(make(k), 8));
        }
        cv.close();
    }
    cv.open("infinity", "black");
    cv.dot("infinity_dot", (embed(XPoint::Infinity), embed(XPoint::Infinity)), "black");
    cv.close();
    cv.finish("The relation H")
}

fn model_space(depth: usize) -> String {
    let kmax = depth as u32 + 1;
    let mut cv = Canvas::new(600.0, 300.0, (0.0, 1.0), (0.0, 0.5));
    for k in 1..=kmax {
        cv.open(&format!("bundle{k}"), "black");
        let prefix = ck_prefix(k);
        for tail in cantor_net(depth) {
            let c = prefix.concat(&tail).value();
            cv.line((c, 0.0), (c, interval_diam(k)));
        }
        cv.close();
    }
    cv.dot("point_1_0", (1.0, 0.0), "black");
    cv.finish("Model space")
}

fn glue(a: &AParam, depth: usize) -> Result<String, RenderError> {
    let depth = depth.min(3);
    let fan = build_fan(a, bundles_for(a.kmax()), depth)?;
    let emb = PlanarEmbedding::for_fan(&fan);
    let xs: Vec<f64> = fan.legs.iter().map(|l| emb.x(l)).collect();
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let mut cv = Canvas::new(900.0, 400.0, (lo - 0.5, hi + 0.5), (0.0, 1.0));
    cv.open("legs", "black");
    for (i, leg) in fan.legs.iter().enumerate() {
        if !fan.is_guest(i) {
            cv.line((xs[i], 0.0), (xs[i], PlanarEmbedding::y(leg.length)));
        }
    }
    cv.close();
    cv.open("guests", "#d62728");
    for g in &fan.gluings {
        let (x, h) = (xs[g.guest], PlanarEmbedding::y(fan.legs[g.guest].length));
        cv.line((x, 0.0), (x, h));
    }
    cv.close();
    cv.open("gluings", "#1f77b4");
    for g in &fan.gluings {
        let h = PlanarEmbedding::y(fan.legs[g.guest].length);
        let (xg, xh) = (xs[g.guest], xs[g.host]);
        cv.polyline(&[(xg, h), ((xg + xh) / 2.0, h + 0.05), (xh, h)]);
    }
    cv.close();
    Ok(cv.finish(&format!("Gluing diagram for a = ({a})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.id().parse::<Figure>().unwrap(), f);
        }
        assert!(matches!("fig9".parse::<Figure>(), Err(RenderError::UnknownFigure(_))));
    }

    #[test]
    fn numbers_have_six_decimals() {
        assert_eq!(fmt6(1.0 / 3.0), "0.333333");
        assert_eq!(fmt6(-1e-9), "0.000000");
    }

    #[test]
    fn cantor_fan_has_one_leg_per_net_point() {
        let s = render(Figure::CantorFan, &RenderOptions { depth: 3, ..Default::default() }).unwrap();
        assert_eq!(s.matches("<line").count(), 16);
    }

    #[test]
    fn relation_has_six_families_and_infinity_dot() {
        let s = render(Figure::RelationH, &RenderOptions::default()).unwrap();
        for id in ["cube_root", "square", "up", "down", "identity", "infinity"] {
            assert!(s.contains(&format!(r#"<g id="{id}""#)), "{id}");
        }
        // (1,1) lands in the top right corner of the canvas
        assert!(s.contains(r#"cx="380.000000" cy="20.000000""#));
    }

    #[test]
    fn model_space_marks_one_zero() {
        let s = render(Figure::ModelSpace, &RenderOptions { depth: 2, ..Default::default() }).unwrap();
        assert!(s.contains(r#"<circle id="point_1_0" cx="580.000000" cy="280.000000""#));
        assert_eq!(s.matches("<g id=\"bundle").count(), 3);
    }

    #[test]
    fn rendering_is_deterministic() {
        for f in Figure::ALL {
            let o = RenderOptions { depth: 3, ..Default::default() };
            assert_eq!(render(f, &o).unwrap(), render(f, &o).unwrap());
        }
    }

    #[test]
    fn depth_is_bounded() {
        let o = RenderOptions { depth: 0, ..Default::default() };
        assert!(matches!(render(Figure::CantorFan, &o), Err(RenderError::BadDepth { .. })));
    }
}
