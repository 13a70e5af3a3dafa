//! Closed axis-parallel polygons in the cubic lattice.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::grid::{GridDiagram, ValidationReport};

pub type Point = [i64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Axis along which `a` and `b` differ, if they differ in exactly one
/// coordinate.
pub fn axis_between(a: Point, b: Point) -> Option<Axis> {
    let diff: Vec<usize> = (0..3).filter(|&i| a[i] != b[i]).collect();
    match diff.as_slice() {
        [i] => Some(Axis::ALL[*i]),
        _ => None,
    }
}

/// Maximal straight run between two corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stick {
    pub from: Point,
    pub to: Point,
    pub axis: Axis,
}

impl Stick {
    pub fn len(&self) -> i64 {
        let i = self.axis.index();
        (self.to[i] - self.from[i]).abs()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Cyclic list of corners; the last corner joins the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeKnot {
    corners: Vec<Point>,
}

impl LatticeKnot {
    pub fn from_corners(corners: Vec<Point>) -> Self {
        Self { corners }
    }

    pub fn corners(&self) -> &[Point] {
        &self.corners
    }

    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }

    /// Sticks in traversal order. Assumes axis-parallel consecutive corners.
    pub fn sticks(&self) -> Vec<Stick> {
        let n = self.corners.len();
        (0..n)
            .map(|i| {
                let from = self.corners[i];
                let to = self.corners[(i + 1) % n];
                let axis = axis_between(from, to).unwrap_or(Axis::X);
                Stick { from, to, axis }
            })
            .collect()
    }

    /// Every lattice point along the curve, one per unit step, starting at
    /// the first corner. The closing point is not repeated.
    pub fn unit_points(&self) -> Vec<Point> {
        let n = self.corners.len();
        let mut out = Vec::new();
        for i in 0..n {
            let a = self.corners[i];
            let b = self.corners[(i + 1) % n];
            let mut p = a;
            out.push(p);
            loop {
                let mut moved = false;
                for k in 0..3 {
                    if p[k] != b[k] {
                        p[k] += (b[k] - p[k]).signum();
                        moved = true;
                        break;
                    }
                }
                if !moved || p == b {
                    break;
                }
                out.push(p);
            }
        }
        out
    }

    /// Rebuilds corners from a closed unit-step point sequence.
    pub fn from_unit_points(points: &[Point]) -> Result<Self, LatticeError> {
        canonicalize(&Self { corners: points.to_vec() })
    }

    pub fn translated(&self, by: Point) -> Self {
        Self { corners: self.corners.iter().map(|p| [p[0] + by[0], p[1] + by[1], p[2] + by[2]]).collect() }
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for p in &self.corners {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Plain text: optional `#` header lines, then one `x y z` corner per line.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        for p in &self.corners {
            let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
        }
        out
    }

    /// Single-line array form `[[x,y,z],...]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.corners).expect("corner list serializes")
    }

    /// Reads either the text form or the array form. The result is not
    /// validated.
    pub fn parse(text: &str) -> Result<Self, LatticeError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            let corners: Vec<Point> =
                serde_json::from_str(trimmed).map_err(|e| LatticeError::Malformed(e.to_string()))?;
            return Ok(Self { corners });
        }
        let mut corners = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let vals = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| LatticeError::Malformed(format!("line {}: `{line}`", n + 1)))?;
            match vals.as_slice() {
                [x, y, z] => corners.push([*x, *y, *z]),
                _ => return Err(LatticeError::Malformed(format!("line {}: expected three integers", n + 1))),
            }
        }
        Ok(Self { corners })
    }
}

/// Merges same-direction consecutive sticks, drops zero-length sticks and
/// rotates the list to start at its lexicographically least corner.
pub fn canonicalize(k: &LatticeKnot) -> Result<LatticeKnot, LatticeError> {
    let mut pts: Vec<Point> = Vec::with_capacity(k.corners.len());
    for &p in &k.corners {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if n > 1 && axis_between(a, b).is_none() {
            return Err(LatticeError::NotAxisParallel { from: a, to: b });
        }
    }
    // drop corners where the curve continues straight on
    let n = pts.len();
    if n >= 3 {
        let keep: Vec<bool> = (0..n)
            .map(|i| direction(pts[(i + n - 1) % n], pts[i]) != direction(pts[i], pts[(i + 1) % n]))
            .collect();
        pts = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    }
    if pts.len() < 4 {
        return Err(LatticeError::DegenerateCurve { corners: pts.len() });
    }
    let start = (0..pts.len()).min_by_key(|&i| pts[i]).unwrap();
    pts.rotate_left(start);
    Ok(LatticeKnot { corners: pts })
}

fn direction(a: Point, b: Point) -> Point {
    [(b[0] - a[0]).signum(), (b[1] - a[1]).signum(), (b[2] - a[2]).signum()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeViolation {
    TooFewCorners { corners: usize },
    NotClosed,
    NotAxisParallel { index: usize },
    ZeroLengthStick { index: usize },
    StraightCorner { index: usize },
    SelfIntersection { point: Point },
}

/// Checks closure, axis-parallelism, corner form and self-avoidance.
pub fn validate_lattice(k: &LatticeKnot) -> ValidationReport<LatticeViolation> {
    let mut violations = Vec::new();
    let c = &k.corners;
    let n = c.len();
    if n < 4 {
        violations.push(LatticeViolation::TooFewCorners { corners: n });
        return ValidationReport { violations };
    }
    let mut parallel = true;
    for i in 0..n {
        let (a, b) = (c[i], c[(i + 1) % n]);
        if a == b {
            violations.push(LatticeViolation::ZeroLengthStick { index: i });
            parallel = false;
        } else if axis_between(a, b).is_none() {
            parallel = false;
            violations.push(if i + 1 == n {
                LatticeViolation::NotClosed
            } else {
                LatticeViolation::NotAxisParallel { index: i }
            });
        }
    }
    if !parallel {
        return ValidationReport { violations };
    }
    for i in 0..n {
        let a = axis_between(c[(i + n - 1) % n], c[i]);
        let b = axis_between(c[i], c[(i + 1) % n]);
        if a == b {
            violations.push(LatticeViolation::StraightCorner { index: i });
        }
    }
    let mut seen = HashSet::new();
    for p in k.unit_points() {
        if !seen.insert(p) {
            violations.push(LatticeViolation::SelfIntersection { point: p });
        }
    }
    ValidationReport { violations }
}

/// Places row strands as x-sticks on z-level 1 and column strands as
/// y-sticks on z-level 2, joined by unit z-edges at the marker cells.
pub fn settle(d: &GridDiagram) -> LatticeKnot {
    let order = d.row_order();
    let mut corners = Vec::with_capacity(4 * order.len());
    for (i, &r) in order.iter().enumerate() {
        let next = order[(i + 1) % order.len()] as i64;
        let (x, o, r) = (d.x_col(r) as i64, d.o_col(r) as i64, r as i64);
        corners.push([x, r, 1]);
        corners.push([o, r, 1]);
        corners.push([o, r, 2]);
        corners.push([o, next, 2]);
    }
    LatticeKnot { corners }
}
