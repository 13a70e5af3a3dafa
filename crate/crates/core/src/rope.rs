//! Smooth ropes from lattice knots.
//!
//! The lattice knot is scaled by two and every corner is replaced by a
//! quarter circle of radius 1, so all endpoints and arc centers stay on the
//! integer lattice. Thickness is measured, not assumed: the smallest
//! distance between points whose separation along the rope is at least `pi`
//! is found by branch and bound over sub-pieces.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::RopeError;
use crate::lattice::{canonicalize, LatticeKnot, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Seg { from: Point, to: Point },
    /// Quarter circle `center + cos(t) u + sin(t) v`, `t` in `[0, pi/2]`,
    /// where `u` and `v` are unit lattice vectors.
    Arc { center: Point, u: Point, v: Point },
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: Point, k: i64) -> Point {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn dot(a: Point, b: Point) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit_dir(a: Point, b: Point) -> Point {
    let d = sub(b, a);
    [d[0].signum(), d[1].signum(), d[2].signum()]
}

impl Piece {
    pub fn start(&self) -> Point {
        match *self {
            Piece::Seg { from, .. } => from,
            Piece::Arc { center, u, .. } => add(center, u),
        }
    }

    pub fn end(&self) -> Point {
        match *self {
            Piece::Seg { to, .. } => to,
            Piece::Arc { center, v, .. } => add(center, v),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Seg { from, to } => {
                let d = sub(to, from);
                (dot(d, d) as f64).sqrt()
            }
            Piece::Arc { .. } => FRAC_PI_2,
        }
    }

    /// Point at arclength `s` from the start.
    pub fn point_at(&self, s: f64) -> [f64; 3] {
        match *self {
            Piece::Seg { from, to } => {
                let len = self.length();
                let t = if len == 0.0 { 0.0 } else { s / len };
                std::array::from_fn(|i| from[i] as f64 + t * (to[i] - from[i]) as f64)
            }
            Piece::Arc { center, u, v } => {
                let (sn, cs) = s.sin_cos();
                std::array::from_fn(|i| center[i] as f64 + cs * u[i] as f64 + sn * v[i] as f64)
            }
        }
    }

    /// Unit tangent at the start and at the end, as lattice vectors.
    fn tangents(&self) -> Option<(Point, Point)> {
        match *self {
            Piece::Seg { from, to } if from == to => None,
            Piece::Seg { from, to } => {
                let d = unit_dir(from, to);
                Some((d, d))
            }
            Piece::Arc { u, v, .. } => Some((v, scale(u, -1))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothKnot {
    pub pieces: Vec<Piece>,
}

/// Rounds the doubled lattice knot: one arc per corner followed by the
/// straight remainder of the outgoing stick.
pub fn smooth(k: &LatticeKnot) -> Result<SmoothKnot, RopeError> {
    let corners = k.corners();
    if corners.windows(2).any(|w| w[0] == w[1]) || corners.first() == corners.last() {
        return Err(RopeError::DegenerateKnot);
    }
    let k = canonicalize(k).map_err(|_| RopeError::DegenerateKnot)?;
    let c = k.corners();
    let n = c.len();
    let mut pieces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let prev = c[(i + n - 1) % n];
        let here = c[i];
        let next = c[(i + 1) % n];
        let d_in = unit_dir(prev, here);
        let d_out = unit_dir(here, next);
        let p = scale(here, 2);
        let center = add(sub(p, d_in), d_out);
        pieces.push(Piece::Arc { center, u: scale(d_out, -1), v: d_in });
        pieces.push(Piece::Seg { from: add(p, d_out), to: sub(scale(next, 2), d_out) });
    }
    Ok(SmoothKnot { pieces })
}

/// Failure of the structural checks on a piece list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothViolation {
    OddPieceCount,
    NotAlternating { index: usize },
    Gap { index: usize },
    NotTangent { index: usize },
    BadArc { index: usize },
}

impl SmoothKnot {
    pub fn arc_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, Piece::Arc { .. })).count()
    }

    /// Closed-form length: straight lengths plus `pi/2` per arc.
    pub fn length(&self) -> f64 {
        let straight: f64 = self
            .pieces
            .iter()
            .filter(|p| matches!(p, Piece::Seg { .. }))
            .map(Piece::length)
            .sum();
        straight + FRAC_PI_2 * self.arc_count() as f64
    }

    /// Exact checks: alternation, closure, unit orthogonal arc frames and
    /// tangent continuity at every joint.
    pub fn violations(&self) -> Vec<SmoothViolation> {
        let n = self.pieces.len();
        let mut out = Vec::new();
        if n % 2 == 1 {
            out.push(SmoothViolation::OddPieceCount);
        }
        for i in 0..n {
            let p = &self.pieces[i];
            let q = &self.pieces[(i + 1) % n];
            let arc = matches!(p, Piece::Arc { .. });
            if arc == matches!(q, Piece::Arc { .. }) {
                out.push(SmoothViolation::NotAlternating { index: i });
            }
            if let Piece::Arc { u, v, .. } = *p {
                let unit = |w: Point| w.iter().map(|c| c.abs()).sum::<i64>() == 1;
                if !unit(u) || !unit(v) || dot(u, v) != 0 {
                    out.push(SmoothViolation::BadArc { index: i });
                }
            }
            if p.end() != q.start() {
                out.push(SmoothViolation::Gap { index: i });
                continue;
            }
            // a zero-length straight piece inherits the tangent of its
            // neighbours, so compare across it
            let Some((_, t_out)) = p.tangents() else { continue };
            let t_in = match q.tangents() {
                Some((t, _)) => t,
                None => match self.pieces[(i + 2) % n].tangents() {
                    Some((t, _)) => t,
                    None => continue,
                },
            };
            if t_out != t_in {
                out.push(SmoothViolation::NotTangent { index: i });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RopeMetrics {
    pub length: f64,
    pub corner_count: usize,
    pub min_curvature_radius: f64,
    /// Smallest distance between points at least `pi` apart along the rope.
    pub min_doubled_self_distance: f64,
    /// Certified lower bound for `min_doubled_self_distance`.
    pub distance_lower_bound: f64,
    /// Pieces realizing `min_doubled_self_distance`.
    pub closest_pieces: (usize, usize),
    pub thickness_radius: f64,
    pub ropelength: f64,
}

/// Absolute accuracy of the self-distance scan.
pub const DISTANCE_TOL: f64 = 1e-10;
/// Sub-pieces shorter than this are not split further.
const MIN_SPLIT: f64 = 1e-8;

#[derive(Clone, Copy)]
struct Span {
    piece: usize,
    s0: f64,
    s1: f64,
}

struct Scan<'a> {
    pieces: &'a [Piece],
    offsets: Vec<f64>,
    total: f64,
    best: f64,
    best_pair: (usize, usize),
    lower: f64,
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

/// Distance between segments `p0p1` and `q0q1`.
fn seg_seg(p0: [f64; 3], p1: [f64; 3], q0: [f64; 3], q1: [f64; 3]) -> f64 {
    let d1: [f64; 3] = std::array::from_fn(|i| p1[i] - p0[i]);
    let d2: [f64; 3] = std::array::from_fn(|i| q1[i] - q0[i]);
    let r: [f64; 3] = std::array::from_fn(|i| p0[i] - q0[i]);
    let fdot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let (a, e, f) = (fdot(d1, d1), fdot(d2, d2), fdot(d2, r));
    const EPS: f64 = 1e-300;
    let (s, t) = if a <= EPS && e <= EPS {
        (0.0, 0.0)
    } else if a <= EPS {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else {
        let c = fdot(d1, r);
        if e <= EPS {
            ((-c / a).clamp(0.0, 1.0), 0.0)
        } else {
            let b = fdot(d1, d2);
            let denom = a * e - b * b;
            let mut s = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
            (s, t)
        }
    };
    let p: [f64; 3] = std::array::from_fn(|i| p0[i] + s * d1[i]);
    let q: [f64; 3] = std::array::from_fn(|i| q0[i] + t * d2[i]);
    dist(p, q)
}

impl<'a> Scan<'a> {
    fn new(pieces: &'a [Piece]) -> Self {
        let mut offsets = Vec::with_capacity(pieces.len());
        let mut acc = 0.0;
        for p in pieces {
            offsets.push(acc);
            acc += p.length();
        }
        Scan { pieces, offsets, total: acc, best: f64::INFINITY, best_pair: (0, 0), lower: f64::INFINITY }
    }

    fn circ(&self, d: f64) -> f64 {
        let d = d.abs() % self.total;
        d.min(self.total - d)
    }

    /// Range of separations along the rope over two spans.
    fn separation(&self, a: &Span, b: &Span) -> (f64, f64) {
        let (a0, a1) = (self.offsets[a.piece] + a.s0, self.offsets[a.piece] + a.s1);
        let (b0, b1) = (self.offsets[b.piece] + b.s0, self.offsets[b.piece] + b.s1);
        let lo = (b0 - a1).max(a0 - b1).max(0.0);
        let hi = (a1 - b0).max(b1 - a0);
        let min = self.circ(lo).min(self.circ(hi));
        let half = self.total / 2.0;
        let max = if lo <= half && half <= hi { half } else { self.circ(lo).max(self.circ(hi)) };
        (min, max)
    }

    fn sagitta(&self, s: &Span) -> f64 {
        match self.pieces[s.piece] {
            Piece::Seg { .. } => 0.0,
            Piece::Arc { .. } => 1.0 - ((s.s1 - s.s0) / 2.0).cos(),
        }
    }

    fn lower_bound(&self, a: &Span, b: &Span) -> f64 {
        let pa = &self.pieces[a.piece];
        let pb = &self.pieces[b.piece];
        let (a0, a1, b0, b1) = (pa.point_at(a.s0), pa.point_at(a.s1), pb.point_at(b.s0), pb.point_at(b.s1));
        let d = seg_seg(a0, a1, b0, b1);
        let chord = d - self.sagitta(a) - self.sagitta(b);
        // every coordinate is monotone along a quarter circle, so the
        // endpoints of a sub-piece span its bounding box
        let gap: f64 = (0..3)
            .map(|i| {
                let g = (a0[i].min(a1[i]) - b0[i].max(b1[i])).max(b0[i].min(b1[i]) - a0[i].max(a1[i]));
                g.max(0.0).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        // slack for rounding
        chord.max(gap) - 1e-13 * (1.0 + d)
    }

    fn probe(&mut self, a: &Span, b: &Span) {
        let pa = &self.pieces[a.piece];
        let pb = &self.pieces[b.piece];
        for sa in [a.s0, (a.s0 + a.s1) / 2.0, a.s1] {
            for sb in [b.s0, (b.s0 + b.s1) / 2.0, b.s1] {
                let sep = self.circ(self.offsets[a.piece] + sa - self.offsets[b.piece] - sb);
                if sep < PI {
                    continue;
                }
                let d = dist(pa.point_at(sa), pb.point_at(sb));
                if d < self.best {
                    self.best = d;
                    self.best_pair = (a.piece, b.piece);
                }
            }
        }
    }

    fn run(&mut self) {
        let n = self.pieces.len();
        let whole = |i: usize| Span { piece: i, s0: 0.0, s1: self.pieces[i].length() };
        let mut stack: Vec<(Span, Span)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                stack.push((whole(i), whole(j)));
            }
        }
        for (a, b) in stack.clone() {
            if self.separation(&a, &b).1 >= PI {
                self.probe(&a, &b);
            }
        }
        while let Some((a, b)) = stack.pop() {
            let (min_sep, max_sep) = self.separation(&a, &b);
            if max_sep < PI {
                continue;
            }
            let lb = self.lower_bound(&a, &b);
            if lb >= self.best - DISTANCE_TOL {
                self.lower = self.lower.min(lb.max(self.best - DISTANCE_TOL));
                continue;
            }
            self.probe(&a, &b);
            let (la, lb_len) = (a.s1 - a.s0, b.s1 - b.s0);
            if la.max(lb_len) < MIN_SPLIT {
                if min_sep >= PI {
                    self.lower = self.lower.min(lb);
                } else {
                    // part of this box is closer than pi along the rope;
                    // the curvature bound keeps such points at least
                    // 2 sin(sep/2) apart, which the chord bound already
                    // approaches to within the box size
                    self.lower = self.lower.min(lb.max(2.0 * (min_sep / 2.0).sin()).min(self.best));
                }
                continue;
            }
            let halves = |s: Span| {
                let m = (s.s0 + s.s1) / 2.0;
                [Span { s1: m, ..s }, Span { s0: m, ..s }]
            };
            if la >= lb_len {
                for h in halves(a) {
                    stack.push((h, b));
                }
            } else {
                for h in halves(b) {
                    stack.push((a, h));
                }
            }
        }
        if self.lower == f64::INFINITY {
            self.lower = self.best;
        }
    }
}

/// Length, curvature radius and measured self-distance of a smooth rope.
pub fn rope_metrics(s: &SmoothKnot) -> RopeMetrics {
    let length = s.length();
    let corner_count = s.arc_count();
    let min_curvature_radius = if corner_count > 0 { 1.0 } else { f64::INFINITY };
    let mut scan = Scan::new(&s.pieces);
    scan.run();
    let d = scan.best;
    let thickness_radius = min_curvature_radius.min(d / 2.0);
    RopeMetrics {
        length,
        corner_count,
        min_curvature_radius,
        min_doubled_self_distance: d,
        distance_lower_bound: scan.lower,
        closest_pieces: scan.best_pair,
        thickness_radius,
        ropelength: length / thickness_radius,
    }
}

/// Rejects ropes whose unit tube is not embedded.
pub fn check_thickness(m: &RopeMetrics, tol: f64) -> Result<(), RopeError> {
    if m.distance_lower_bound < 2.0 - 2.0 * tol || m.min_curvature_radius < 1.0 - tol {
        return Err(RopeError::ThinTube {
            first: m.closest_pieces.0,
            second: m.closest_pieces.1,
            distance: m.min_doubled_self_distance,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryFormat {
    PolylineSampled,
    ArcExact,
}

/// Closed polyline through `density` samples per arc plus the start of
/// every non-degenerate straight piece.
pub fn sample_polyline(s: &SmoothKnot, density: usize) -> Result<Vec<[f64; 3]>, RopeError> {
    if density < 8 {
        return Err(RopeError::BadDensity(density));
    }
    let mut out = Vec::new();
    for p in &s.pieces {
        match p {
            Piece::Seg { from, to } => {
                if from != to {
                    out.push(from.map(|c| c as f64));
                }
            }
            Piece::Arc { .. } => {
                for k in 0..density {
                    out.push(p.point_at(FRAC_PI_2 * k as f64 / density as f64));
                }
            }
        }
    }
    Ok(out)
}

fn fmt_point(out: &mut String, p: Point) {
    let _ = write!(out, " {} {} {}", p[0], p[1], p[2]);
}

pub fn export_geometry(s: &SmoothKnot, format: GeometryFormat, density: usize) -> Result<String, RopeError> {
    let mut out = String::new();
    match format {
        GeometryFormat::PolylineSampled => {
            for v in sample_polyline(s, density)? {
                let _ = writeln!(out, "{} {} {}", v[0], v[1], v[2]);
            }
        }
        GeometryFormat::ArcExact => {
            for p in &s.pieces {
                match *p {
                    Piece::Seg { from, to } => {
                        out.push_str("SEG");
                        fmt_point(&mut out, from);
                        fmt_point(&mut out, to);
                    }
                    Piece::Arc { center, u, v } => {
                        out.push_str("ARC");
                        fmt_point(&mut out, center);
                        fmt_point(&mut out, u);
                        fmt_point(&mut out, v);
                    }
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn import_polyline(text: &str) -> Result<Vec<[f64; 3]>, RopeError> {
    content_lines(text)
        .map(|(no, line)| {
            let v: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| RopeError::Malformed(format!("line {no}: {e}")))?;
            <[f64; 3]>::try_from(v).map_err(|_| RopeError::Malformed(format!("line {no}: expected 3 coordinates")))
        })
        .collect()
}

pub fn import_arc_exact(text: &str) -> Result<SmoothKnot, RopeError> {
    let mut pieces = Vec::new();
    for (no, line) in content_lines(text) {
        let mut words = line.split_whitespace();
        let tag = words.next().unwrap_or("");
        let nums: Vec<i64> = words
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| RopeError::Malformed(format!("line {no}: {e}")))?;
        let pt = |k: usize| [nums[3 * k], nums[3 * k + 1], nums[3 * k + 2]];
        match (tag, nums.len()) {
            ("SEG", 6) => pieces.push(Piece::Seg { from: pt(0), to: pt(1) }),
            ("ARC", 9) => pieces.push(Piece::Arc { center: pt(0), u: pt(1), v: pt(2) }),
            _ => return Err(RopeError::Malformed(format!("line {no}: bad record `{line}`"))),
        }
    }
    let knot = SmoothKnot { pieces };
    if let Some(v) = knot.violations().first() {
        return Err(RopeError::Malformed(format!("{v:?}")));
    }
    Ok(knot)
}
