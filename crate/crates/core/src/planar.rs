//! Combinatorial knot diagrams built from closed planar polylines.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::grid::GridDiagram;

/// A parameter along a segment, `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Param {
    pub num: i128,
    pub den: i128,
}

impl Param {
    pub fn new(num: i128, den: i128) -> Self {
        if den < 0 {
            Self { num: -num, den: -den }
        } else {
            Self { num, den }
        }
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Param {}

impl PartialOrd for Param {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Param {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Position on a polyline: segment index plus parameter in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurvePos {
    pub seg: usize,
    pub t: Param,
}

/// One transversal double point of a planar projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub under: CurvePos,
    pub over: CurvePos,
    /// `+1` or `-1`: sign of `cross(dir_over, dir_under)`.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// Edge labels counterclockwise starting from the incoming under edge.
    /// Edge `e` runs from passage `e` to passage `e + 1` along the curve.
    pub edges: [usize; 4],
    pub over_arc: usize,
    pub under_in_arc: usize,
    pub under_out_arc: usize,
    pub sign: i8,
}

impl Crossing {
    /// Over/under flag in the `edges` order: `true` marks an over edge.
    pub fn over_flags(&self) -> [bool; 4] {
        [false, true, false, true]
    }
}

/// Oriented single-component knot diagram. Arcs run between consecutive
/// undercrossings; there are as many arcs as crossings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    pub components: usize,
}

impl PlanarDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Assembles the diagram from the crossings of one closed curve.
    pub fn from_events(events: &[CrossingEvent]) -> Self {
        let n = events.len();
        if n == 0 {
            return Self { crossings: Vec::new(), components: 1 };
        }
        // every crossing is passed twice: (position, crossing index, is_under)
        let mut passages: Vec<(CurvePos, usize, bool)> = Vec::with_capacity(2 * n);
        for (i, e) in events.iter().enumerate() {
            passages.push((e.under, i, true));
            passages.push((e.over, i, false));
        }
        passages.sort_by(|a, b| a.0.cmp(&b.0));
        let m = 2 * n;
        let mut under_pass = vec![0; n];
        let mut over_pass = vec![0; n];
        // number of under passages at or before each passage index
        let mut unders_upto = vec![0; m];
        let mut count = 0;
        for (p, &(_, i, is_under)) in passages.iter().enumerate() {
            if is_under {
                under_pass[i] = p;
                count += 1;
            } else {
                over_pass[i] = p;
            }
            unders_upto[p] = count;
        }
        let arc_of = |p: usize| (unders_upto[p] + n - 1) % n;
        let crossings = events
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let pu = under_pass[i];
                let po = over_pass[i];
                let u_in = (pu + m - 1) % m;
                let o_in = (po + m - 1) % m;
                let edges = if e.sign > 0 { [u_in, po, pu, o_in] } else { [u_in, o_in, pu, po] };
                let out_arc = arc_of(pu);
                Crossing {
                    edges,
                    over_arc: arc_of(po),
                    under_in_arc: (out_arc + n - 1) % n,
                    under_out_arc: out_arc,
                    sign: e.sign,
                }
            })
            .collect();
        Self { crossings, components: 1 }
    }
}

/// Proper crossing of two integer segments: parameters strictly inside both.
/// Returns `None` for disjoint, touching, or collinear segments.
pub fn proper_crossing(p0: [i64; 2], p1: [i64; 2], q0: [i64; 2], q1: [i64; 2]) -> Option<(Param, Param)> {
    let r = [(p1[0] - p0[0]) as i128, (p1[1] - p0[1]) as i128];
    let s = [(q1[0] - q0[0]) as i128, (q1[1] - q0[1]) as i128];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom == 0 {
        return None;
    }
    let qp = [(q0[0] - p0[0]) as i128, (q0[1] - p0[1]) as i128];
    let t_num = qp[0] * s[1] - qp[1] * s[0];
    let u_num = qp[0] * r[1] - qp[1] * r[0];
    let t = Param::new(t_num, denom);
    let u = Param::new(u_num, denom);
    let inside = |p: Param| p.num > 0 && p.num < p.den;
    (inside(t) && inside(u)).then_some((t, u))
}

pub fn cross_sign(a: [i64; 2], b: [i64; 2]) -> i8 {
    match (a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128).cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Crossing diagram of a grid diagram: vertical strands pass over.
pub fn grid_to_planar(d: &GridDiagram) -> PlanarDiagram {
    let corners: Vec<[i64; 2]> = d.curve_corners().into_iter().map(|(c, r)| [c, r]).collect();
    let k = corners.len();
    let seg = |i: usize| (corners[i], corners[(i + 1) % k]);
    let dir = |i: usize| {
        let (a, b) = seg(i);
        [b[0] - a[0], b[1] - a[1]]
    };
    let mut events = Vec::new();
    // even segments are horizontal (X -> O), odd ones vertical (O -> X)
    for h in (0..k).step_by(2) {
        for v in (1..k).step_by(2) {
            let (h0, h1) = seg(h);
            let (v0, v1) = seg(v);
            if let Some((th, tv)) = proper_crossing(h0, h1, v0, v1) {
                events.push(CrossingEvent {
                    under: CurvePos { seg: h, t: th },
                    over: CurvePos { seg: v, t: tv },
                    sign: cross_sign(dir(v), dir(h)),
                });
            }
        }
    }
    PlanarDiagram::from_events(&events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{parse_grid, random_grid};

    /// Independent count: row r and column c cross iff c lies strictly
    /// inside the row span and r strictly inside the column span.
    fn span_crossings(d: &GridDiagram) -> usize {
        let g = d.size();
        let mut n = 0;
        for r in 1..=g {
            let (a, b) = (d.x_col(r).min(d.o_col(r)), d.x_col(r).max(d.o_col(r)));
            for c in 1..=g {
                let (r1, r2) = d.column_rows(c);
                if a < c && c < b && r1 < r && r < r2 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn unknot_rectangle_has_no_crossings() {
        let d = parse_grid("X: 1,2 / O: 2,1").unwrap();
        let pd = grid_to_planar(&d);
        assert_eq!(pd.crossing_count(), 0);
        assert_eq!(pd.components, 1);
    }

    #[test]
    fn trefoil_has_three_same_sign_crossings() {
        let d = parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap();
        let pd = grid_to_planar(&d);
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.writhe().abs(), 3);
    }

    #[test]
    fn crossing_count_matches_span_scan() {
        for g in 2..=8 {
            for seed in 0..40 {
                let d = random_grid(g, seed).unwrap();
                let pd = grid_to_planar(&d);
                assert_eq!(pd.crossing_count(), span_crossings(&d));
                assert!(pd.crossing_count() <= (g - 1) * (g - 1));
            }
        }
    }

    #[test]
    fn arcs_and_edges_are_consistent() {
        for seed in 0..50 {
            let d = random_grid(7, seed).unwrap();
            let pd = grid_to_planar(&d);
            let n = pd.crossing_count();
            let mut seen = vec![0; 2 * n];
            for c in &pd.crossings {
                for &e in &c.edges {
                    seen[e] += 1;
                }
                assert_eq!(c.under_out_arc, (c.under_in_arc + 1) % n.max(1));
            }
            assert!(seen.iter().all(|&s| s == 2));
        }
    }

    #[test]
    fn proper_crossing_excludes_touching() {
        assert!(proper_crossing([0, 0], [2, 0], [1, -1], [1, 1]).is_some());
        assert!(proper_crossing([0, 0], [2, 0], [2, -1], [2, 1]).is_none());
        assert!(proper_crossing([0, 0], [2, 0], [1, 0], [3, 0]).is_none());
    }
}
