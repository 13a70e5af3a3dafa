//! Horizontal and vertical folding of a settled lattice knot.
//!
//! A fold rotates everything strictly beyond a hinge line by 180 degrees
//! about that line. Sticks that pass through the hinge line double back on
//! themselves and the doubled edges are cancelled. Sticks that cross the
//! fold plane away from the hinge line are torn apart by the rotation and
//! are rejoined by a bridge just outside the fold plane.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{edge_census, AxisCounts, EdgeCensus, ParityCase};
use crate::error::LatticeError;
use crate::lattice::{axis_between, canonicalize, validate_lattice, Axis, LatticeKnot, Point};

/// Which half of the knot is rotated onto the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldSide {
    /// Points with coordinate greater than the hinge move.
    Upper,
    /// Points with coordinate less than the hinge move.
    Lower,
}

impl FoldSide {
    fn sign(self) -> i64 {
        match self {
            FoldSide::Upper => 1,
            FoldSide::Lower => -1,
        }
    }
}

/// Hinge line `{axis = hinge, z = hinge_z}` and the moving half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldLine {
    pub axis: Axis,
    pub hinge: i64,
    pub hinge_z: i64,
    pub side: FoldSide,
}

impl FoldLine {
    fn moves(&self, p: Point) -> bool {
        (p[self.axis.index()] - self.hinge) * self.side.sign() > 0
    }

    fn image(&self, p: Point) -> Point {
        let mut q = p;
        let i = self.axis.index();
        q[i] = 2 * self.hinge - p[i];
        q[2] = 2 * self.hinge_z - p[2];
        q
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldReport {
    pub line: FoldLine,
    pub parity: ParityCase,
    /// Doubled edges cancelled after the rotation (both copies counted).
    pub removed_overlap_edges: u64,
    pub broken_sticks_reconnected: u64,
    /// Edges added by bridges along the fold axis.
    pub added_y_edges: u64,
    /// Edges added by bridges along z.
    pub added_z_edges: u64,
    /// Hinge-level y-sticks moved from z-level 2 down to z-level 1.
    pub lowered_sticks: u64,
    /// Previously lowered y-sticks lifted back to z-level 2 before folding.
    pub restored_sticks: u64,
    /// All edges removed, per axis.
    pub removed: AxisCounts,
    /// All edges added, per axis.
    pub added: AxisCounts,
    pub pre: EdgeCensus,
    pub post: EdgeCensus,
}

/// Hinge coordinate for a fold of a size-`g` diagram.
pub fn hinge_for(g: usize, side: FoldSide) -> i64 {
    let g = g as i64;
    let upper = if g % 2 == 1 { (g + 1) / 2 } else { g / 2 + 1 };
    match side {
        FoldSide::Upper => upper,
        FoldSide::Lower => g + 1 - upper,
    }
}

#[derive(Debug, Default)]
struct Tally {
    removed: AxisCounts,
    added: AxisCounts,
    overlap: u64,
    broken: u64,
    bridge_axis: u64,
    bridge_z: u64,
}

/// Rotates the moving half and repairs the curve. `allow_bridges` permits
/// reconnecting sticks torn at the fold plane; `cancel_axis` is the only
/// axis on which doubled edges may be cancelled.
fn rotate_half(
    points: &[Point],
    line: &FoldLine,
    allow_bridges: bool,
    cancel_axis: Axis,
    tally: &mut Tally,
) -> Result<Vec<Point>, LatticeError> {
    let n = points.len();
    let a = line.axis.index();
    let step = line.side.sign();
    let mut out: Vec<Point> = Vec::with_capacity(n + 16);
    let mut bridge_points: HashSet<Point> = HashSet::new();
    for i in 0..n {
        let p = points[i];
        let q = points[(i + 1) % n];
        let pm = line.moves(p);
        out.push(if pm { line.image(p) } else { p });
        let qm = line.moves(q);
        if pm == qm {
            continue;
        }
        // the edge p-q crosses from the hinge plane into the moving half
        let (fixed, moving) = if pm { (q, p) } else { (p, q) };
        if fixed[2] == line.hinge_z {
            continue;
        }
        if !allow_bridges {
            return Err(LatticeError::UnexpectedInput(format!(
                "edge {p:?}-{q:?} crosses the fold plane off the hinge line"
            )));
        }
        let z0 = fixed[2];
        let z1 = 2 * line.hinge_z - z0;
        let mut outer = moving;
        outer[a] = line.hinge + step;
        let mut path = vec![outer];
        let dz = (z1 - z0).signum();
        let mut z = z0;
        while z != z1 {
            z += dz;
            let mut r = outer;
            r[2] = z;
            path.push(r);
        }
        let mut back = outer;
        back[a] = line.hinge;
        back[2] = z1;
        path.push(back);
        if pm {
            path.reverse();
        }
        bridge_points.extend(path.iter().copied());
        out.extend(path);
        tally.broken += 1;
        tally.bridge_axis += 2;
        tally.bridge_z += (z1 - z0).unsigned_abs();
        tally.added.0[a] += 2;
        tally.added.0[2] += (z1 - z0).unsigned_abs();
    }
    let reduced = cancel_backtracks(out, cancel_axis, tally)?;
    let mut seen = HashSet::new();
    for &p in &reduced {
        if !seen.insert(p) {
            if bridge_points.contains(&p) {
                return Err(LatticeError::ReconnectFailure { x: p[0], at: p });
            }
            return Err(LatticeError::FoldCollision { at: p, detail: "two strands meet after the fold".into() });
        }
    }
    Ok(reduced)
}

/// Cancels immediate reversals `p, q, p` of a closed path.
fn cancel_backtracks(path: Vec<Point>, axis: Axis, tally: &mut Tally) -> Result<Vec<Point>, LatticeError> {
    let mut cur = path;
    loop {
        let mut stack: Vec<Point> = Vec::with_capacity(cur.len());
        let mut changed = false;
        for p in cur {
            if stack.len() >= 2 && stack[stack.len() - 2] == p {
                let q = stack.pop().unwrap();
                record_cancel(p, q, axis, tally)?;
                changed = true;
                continue;
            }
            stack.push(p);
        }
        let n = stack.len();
        if n >= 3 && stack[n - 2] == stack[0] {
            // spike at the wrap-around point
            let q = stack[n - 1];
            record_cancel(stack[0], q, axis, tally)?;
            stack.pop();
            stack.pop();
            changed = true;
        } else if n >= 3 && stack[n - 1] == stack[1] {
            let q = stack[0];
            record_cancel(stack[1], q, axis, tally)?;
            stack.remove(0);
            stack.pop();
            changed = true;
        }
        cur = stack;
        if !changed {
            return Ok(cur);
        }
    }
}

fn record_cancel(p: Point, q: Point, axis: Axis, tally: &mut Tally) -> Result<(), LatticeError> {
    let along = axis_between(p, q);
    if along != Some(axis) {
        return Err(LatticeError::FoldCollision {
            at: q,
            detail: format!("overlapped {:?}-edge after folding", along.unwrap_or(Axis::X)),
        });
    }
    tally.removed.0[axis.index()] += 2;
    tally.overlap += 2;
    Ok(())
}

/// Start index and length of the run of points forming the y-stick on
/// `x = level`, `z = z`, spanning rows `lo..=hi`.
fn find_y_run(points: &[Point], level: i64, z: i64, lo: i64, hi: i64) -> Option<(usize, usize)> {
    let n = points.len();
    let on = |p: Point| p[0] == level && p[2] == z && p[1] >= lo && p[1] <= hi;
    for start in 0..n {
        if !on(points[start]) || on(points[(start + n - 1) % n]) {
            continue;
        }
        let mut len = 1;
        while len < n && on(points[(start + len) % n]) {
            len += 1;
        }
        let (a, b) = (points[start][1], points[(start + len - 1) % n][1]);
        if a.min(b) == lo && a.max(b) == hi && len as i64 == hi - lo + 1 {
            return Some((start, len));
        }
    }
    None
}

fn dedupe_cyclic(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

/// Moves a y-stick from `from_z` to `to_z` when both of its end edges are
/// unit z-edges reaching `to_z`; those two z-edges disappear.
fn lower_y_stick(points: &[Point], stick: (i64, i64, i64, i64), to_z: i64) -> Option<Vec<Point>> {
    let (level, from_z, lo, hi) = stick;
    let n = points.len();
    let (start, len) = find_y_run(points, level, from_z, lo, hi)?;
    let before = points[(start + n - 1) % n];
    let after = points[(start + len) % n];
    if before != [level, points[start][1], to_z] || after != [level, points[(start + len - 1) % n][1], to_z] {
        return None;
    }
    let mut out: Vec<Point> = (0..n).map(|k| points[(start + k) % n]).collect();
    for p in out.iter_mut().take(len) {
        p[2] = to_z;
    }
    Some(dedupe_cyclic(out))
}

/// Moves a y-stick from `from_z` to `to_z`, adding a z-run at each end.
fn lift_y_stick(points: &[Point], stick: (i64, i64, i64, i64), to_z: i64) -> Option<Vec<Point>> {
    let (level, from_z, lo, hi) = stick;
    if (to_z - from_z).abs() != 1 {
        return None;
    }
    let n = points.len();
    let (start, len) = find_y_run(points, level, from_z, lo, hi)?;
    let mut out = Vec::with_capacity(n + 2);
    out.push(points[start]);
    for k in 0..len {
        let p = points[(start + k) % n];
        out.push([p[0], p[1], to_z]);
    }
    for k in len - 1..n {
        out.push(points[(start + k) % n]);
    }
    Some(out)
}

/// y-sticks as `(x, z, y_min, y_max)` of a canonical knot.
fn y_sticks(k: &LatticeKnot) -> Vec<(i64, i64, i64, i64)> {
    k.sticks()
        .into_iter()
        .filter(|s| s.axis == Axis::Y)
        .map(|s| (s.from[0], s.from[2], s.from[1].min(s.to[1]), s.from[1].max(s.to[1])))
        .collect()
}

fn finish(points: &[Point]) -> Result<LatticeKnot, LatticeError> {
    let k = LatticeKnot::from_unit_points(points)?;
    if let Some(v) = validate_lattice(&k).violations.first() {
        return Err(LatticeError::FoldCollision { at: k.corners()[0], detail: format!("{v:?}") });
    }
    Ok(k)
}

fn check_z_range(k: &LatticeKnot, lo: i64, hi: i64, step: &str) -> Result<(), LatticeError> {
    let (min, max) = k.bounds();
    if min[2] < lo || max[2] > hi {
        return Err(LatticeError::UnexpectedInput(format!(
            "{step} expects z-levels {lo}..={hi}, found {}..={}",
            min[2], max[2]
        )));
    }
    Ok(())
}

/// Horizontal fold about `{x = hinge, z = 1}` on the given side.
pub fn fold_horizontal_side(k: &LatticeKnot, g: usize, side: FoldSide) -> Result<(LatticeKnot, FoldReport), LatticeError> {
    let k = canonicalize(k)?;
    check_z_range(&k, 1, 2, "horizontal fold")?;
    let pre = edge_census(&k);
    let line = FoldLine { axis: Axis::X, hinge: hinge_for(g, side), hinge_z: 1, side };
    let mut tally = Tally::default();
    let mut points = rotate_half(&k.unit_points(), &line, false, Axis::X, &mut tally)?;
    let mut folded = finish(&points)?;

    // the hinge level holds a single y-stick; the far level of the kept half
    // does too when no rotated stick landed there
    let outer = match side {
        FoldSide::Upper => 1,
        FoldSide::Lower => g as i64,
    };
    let mut lowered = 0;
    let mut levels = vec![line.hinge];
    if outer != line.hinge {
        levels.push(outer);
    }
    for level in levels {
        let here: Vec<_> = y_sticks(&folded).into_iter().filter(|s| s.0 == level).collect();
        if here.len() != 1 || here[0].1 != 2 {
            continue;
        }
        if let Some(candidate) = lower_y_stick(&points, here[0], 1) {
            if let Ok(next) = finish(&candidate) {
                points = candidate;
                folded = next;
                lowered += 1;
                tally.removed.0[2] += 2;
            }
        }
    }
    let post = edge_census(&folded);
    let report = FoldReport {
        line,
        parity: ParityCase::of(g),
        removed_overlap_edges: tally.overlap,
        broken_sticks_reconnected: tally.broken,
        added_y_edges: tally.bridge_axis,
        added_z_edges: tally.bridge_z,
        lowered_sticks: lowered,
        restored_sticks: 0,
        removed: tally.removed,
        added: tally.added,
        pre,
        post,
    };
    Ok((folded, report))
}

/// Vertical fold about `{y = hinge, z = 2}` on the given side.
pub fn fold_vertical_side(k: &LatticeKnot, g: usize, side: FoldSide) -> Result<(LatticeKnot, FoldReport), LatticeError> {
    let k = canonicalize(k)?;
    check_z_range(&k, 0, 2, "vertical fold")?;
    let pre = edge_census(&k);
    let line = FoldLine { axis: Axis::Y, hinge: hinge_for(g, side), hinge_z: 2, side };
    let mut tally = Tally::default();
    let mut points = k.unit_points();

    // lowered y-sticks that cross the fold plane go back up to the hinge
    // level so that the fold doubles them instead of tearing them
    let mut restored = 0;
    let crosses = |lo: i64, hi: i64| match side {
        FoldSide::Upper => lo <= line.hinge && hi > line.hinge,
        FoldSide::Lower => lo < line.hinge && hi >= line.hinge,
    };
    for stick @ (x, z, lo, hi) in y_sticks(&k) {
        if z != 1 || !crosses(lo, hi) {
            continue;
        }
        let lifted = lift_y_stick(&points, stick, 2).ok_or_else(|| {
            LatticeError::UnexpectedInput(format!("cannot lift y-stick at x={x}"))
        })?;
        points = lifted;
        restored += 1;
        tally.added.0[2] += 2;
    }

    let points = rotate_half(&points, &line, true, Axis::Y, &mut tally)?;
    let folded = finish(&points)?;
    let post = edge_census(&folded);
    let report = FoldReport {
        line,
        parity: ParityCase::of(g),
        removed_overlap_edges: tally.overlap,
        broken_sticks_reconnected: tally.broken,
        added_y_edges: tally.bridge_axis,
        added_z_edges: tally.bridge_z,
        lowered_sticks: 0,
        restored_sticks: restored,
        removed: tally.removed,
        added: tally.added,
        pre,
        post,
    };
    Ok((folded, report))
}

fn pick_best(
    results: Vec<Result<(LatticeKnot, FoldReport), LatticeError>>,
) -> Result<(LatticeKnot, FoldReport), LatticeError> {
    let mut first_err = None;
    let mut best: Option<(LatticeKnot, FoldReport)> = None;
    for r in results {
        match r {
            Ok(cand) => {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let (ct, bt) = (cand.1.post.total_edges(), b.1.post.total_edges());
                        ct < bt || (ct == bt && cand.0.corners() < b.0.corners())
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.expect("at least one fold attempted"))
}

/// Folds the settled knot along x, trying both halves and keeping the
/// shorter result.
pub fn fold_horizontal(k: &LatticeKnot, g: usize) -> Result<(LatticeKnot, FoldReport), LatticeError> {
    pick_best([FoldSide::Upper, FoldSide::Lower].map(|s| fold_horizontal_side(k, g, s)).into())
}

/// Both folds, with the two sides of each chosen jointly so that the final
/// knot is shortest (ties broken by the length after the first fold).
pub fn fold_both(
    k: &LatticeKnot,
    g: usize,
) -> Result<((LatticeKnot, FoldReport), (LatticeKnot, FoldReport)), LatticeError> {
    let mut first_err = None;
    let mut best: Option<((LatticeKnot, FoldReport), (LatticeKnot, FoldReport))> = None;
    for hs in [FoldSide::Upper, FoldSide::Lower] {
        let step2 = match fold_horizontal_side(k, g, hs) {
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                continue;
            }
        };
        let step3 = match fold_vertical(&step2.0, g) {
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                continue;
            }
        };
        let key = (step3.1.post.total_edges(), step2.1.post.total_edges());
        let better = match &best {
            None => true,
            Some((b2, b3)) => key < (b3.1.post.total_edges(), b2.1.post.total_edges()),
        };
        if better {
            best = Some((step2, step3));
        }
    }
    best.ok_or_else(|| first_err.expect("at least one fold attempted"))
}

/// Folds the horizontally folded knot along y, trying both halves and
/// keeping the shorter result.
pub fn fold_vertical(k: &LatticeKnot, g: usize) -> Result<(LatticeKnot, FoldReport), LatticeError> {
    pick_best([FoldSide::Upper, FoldSide::Lower].map(|s| fold_vertical_side(k, g, s)).into())
}
