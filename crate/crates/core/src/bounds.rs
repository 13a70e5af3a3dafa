//! Edge census of lattice knots and the closed-form length and ropelength
//! bounds they are certified against.
//!
//! Lattice-length bounds are exact rationals (denominators divide 8).
//! Ropelength bounds are affine in pi with rational coefficients and are
//! compared exactly where possible; the `c^(3/2)` comparators only have a
//! floating-point value, which is widened outward by `1e-12` relative.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::BoundError;
use crate::lattice::{Axis, LatticeKnot};

pub type Rational = Ratio<i64>;

/// Relative outward widening applied to floating-point evaluations.
pub const INTERVAL_TOL: f64 = 1e-12;

/// Per-axis counts `[x, y, z]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisCounts(pub [u64; 3]);

impl AxisCounts {
    pub fn get(&self, axis: Axis) -> u64 {
        self.0[axis.index()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCensus {
    pub x_edges: u64,
    pub y_edges: u64,
    pub z_edges: u64,
    pub x_sticks: u64,
    pub y_sticks: u64,
    pub z_sticks: u64,
    pub corners: u64,
}

impl EdgeCensus {
    pub fn total_edges(&self) -> u64 {
        self.x_edges + self.y_edges + self.z_edges
    }

    pub fn edges(&self) -> AxisCounts {
        AxisCounts([self.x_edges, self.y_edges, self.z_edges])
    }
}

/// Unit edges, sticks and corners per axis. Expects a canonical knot.
pub fn edge_census(k: &LatticeKnot) -> EdgeCensus {
    let mut c = EdgeCensus { corners: k.corner_count() as u64, ..Default::default() };
    for s in k.sticks() {
        let len = s.len() as u64;
        match s.axis {
            Axis::X => {
                c.x_edges += len;
                c.x_sticks += 1;
            }
            Axis::Y => {
                c.y_edges += len;
                c.y_sticks += 1;
            }
            Axis::Z => {
                c.z_edges += len;
                c.z_sticks += 1;
            }
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    Step1,
    Step2,
    Step3,
    ThmLenGeneralA,
    ThmLenGeneralB,
    ThmLenNapA,
    ThmLenNapB,
    RopStep1,
    RopStep2,
    RopStep3,
    ThmRopGeneralA,
    ThmRopGeneralB,
    ThmRopNapA,
    ThmRopNapB,
    ThmRopDecimalA,
    ThmRopDecimalB,
    DiaoLen,
    DiaoRop,
    CantarellaRop,
    PriorLen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityCase {
    #[serde(rename = "odd")]
    Odd,
    #[serde(rename = "4k")]
    FourK,
    #[serde(rename = "4k+2")]
    FourKPlus2,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl ParityCase {
    pub fn of(g: usize) -> Self {
        match g % 4 {
            1 | 3 => ParityCase::Odd,
            0 => ParityCase::FourK,
            _ => ParityCase::FourKPlus2,
        }
    }
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityCase::Odd => "odd",
            ParityCase::FourK => "4k",
            ParityCase::FourKPlus2 => "4k+2",
            ParityCase::NotApplicable => "n/a",
        })
    }
}

/// `constant + pi_coeff * pi`, or a floating-point value where the formula
/// involves square roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundExpr {
    PiAffine {
        #[serde(with = "ratio_serde")]
        constant: Rational,
        #[serde(with = "ratio_serde")]
        pi_coeff: Rational,
    },
    Real {
        value: f64,
    },
}

mod ratio_serde {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Bracket for pi used when deciding the sign of `r + s*pi`.
const PI_LO: Rational = Ratio::new_raw(314_159_265_358_979, 100_000_000_000_000);
const PI_HI: Rational = Ratio::new_raw(314_159_265_358_980, 100_000_000_000_000);

impl BoundExpr {
    pub fn rational(r: Rational) -> Self {
        BoundExpr::PiAffine { constant: r, pi_coeff: Rational::zero() }
    }

    pub fn pi_affine(constant: Rational, pi_coeff: Rational) -> Self {
        BoundExpr::PiAffine { constant, pi_coeff }
    }

    /// Exact rational value when the expression has no pi or root part.
    pub fn as_rational(&self) -> Option<Rational> {
        match *self {
            BoundExpr::PiAffine { constant, pi_coeff } if pi_coeff.is_zero() => Some(constant),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            BoundExpr::PiAffine { constant, pi_coeff } => {
                constant.to_f64().unwrap() + pi_coeff.to_f64().unwrap() * std::f64::consts::PI
            }
            BoundExpr::Real { value } => value,
        }
    }

    /// Outward-rounded enclosure of the value.
    pub fn interval(&self) -> (f64, f64) {
        if let Some(r) = self.as_rational() {
            let v = r.to_f64().unwrap();
            let w = v.abs().max(1.0) * f64::EPSILON;
            return (v - w, v + w);
        }
        let v = self.to_f64();
        let w = v.abs().max(1.0) * INTERVAL_TOL;
        (v - w, v + w)
    }

    /// Certified comparison. `None` when the enclosures overlap and no exact
    /// route decides the order.
    pub fn compare(&self, other: &BoundExpr) -> Option<Ordering> {
        if let (
            BoundExpr::PiAffine { constant: c1, pi_coeff: p1 },
            BoundExpr::PiAffine { constant: c2, pi_coeff: p2 },
        ) = (*self, *other)
        {
            // sign of (c1 - c2) + (p1 - p2) * pi
            let r = c1 - c2;
            let s = p1 - p2;
            if s.is_zero() {
                return Some(r.cmp(&Rational::zero()));
            }
            let q = -r / s;
            let sign_s = if s.is_positive() { Ordering::Greater } else { Ordering::Less };
            // r + s*pi has the sign of s when pi > q, the opposite when pi < q
            return if PI_LO > q {
                Some(sign_s)
            } else if PI_HI < q {
                Some(sign_s.reverse())
            } else {
                None
            };
        }
        let (a_lo, a_hi) = self.interval();
        let (b_lo, b_hi) = other.interval();
        if a_hi < b_lo {
            Some(Ordering::Less)
        } else if a_lo > b_hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// `self <= other`, certified.
    pub fn certainly_le(&self, other: &BoundExpr) -> bool {
        matches!(self.compare(other), Some(Ordering::Less | Ordering::Equal))
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundExpr::PiAffine { constant, pi_coeff } if pi_coeff.is_zero() => write!(f, "{constant}"),
            BoundExpr::PiAffine { constant, pi_coeff } => {
                write!(f, "{constant} + {pi_coeff}*pi (~{:.6})", self.to_f64())
            }
            BoundExpr::Real { value } => write!(f, "~{value:.6}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub formula_id: FormulaId,
    pub parity_case: ParityCase,
    pub value: BoundExpr,
}

impl BoundValue {
    fn new(formula_id: FormulaId, parity_case: ParityCase, value: BoundExpr) -> Self {
        Self { formula_id, parity_case, value }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Minimum of two forms together with both form values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremBound {
    pub min: BoundValue,
    pub forms: [BoundValue; 2],
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `a*x^2 + b*x + c` with rational coefficients.
fn quad(x: i64, a: Rational, b: Rational, c: Rational) -> Rational {
    let x = Rational::from_integer(x);
    a * x * x + b * x + c
}

/// Largest edge count of the construction after `step` (1, 2 or 3) for a
/// size-`g` grid diagram.
pub fn step_bound(step: u8, g: u32) -> Result<BoundValue, BoundError> {
    if g < 2 {
        return Err(BoundError::SizeTooSmall(g));
    }
    let parity = ParityCase::of(g as usize);
    let gi = g as i64;
    let (id, value) = match (step, parity) {
        (1, ParityCase::Odd) => (FormulaId::Step1, quad(gi, r(1, 1), r(2, 1), r(-1, 1))),
        (1, _) => (FormulaId::Step1, quad(gi, r(1, 1), r(2, 1), r(0, 1))),
        (2, ParityCase::Odd) => (FormulaId::Step2, quad(gi, r(3, 4), r(2, 1), r(-11, 4))),
        (2, ParityCase::FourK) => (FormulaId::Step2, quad(gi, r(3, 4), r(2, 1), r(-4, 1))),
        (2, _) => (FormulaId::Step2, quad(gi, r(3, 4), r(2, 1), r(-3, 1))),
        (3, ParityCase::Odd) => (FormulaId::Step3, quad(gi, r(5, 8), r(5, 1), r(-29, 8))),
        (3, ParityCase::FourK) => (FormulaId::Step3, quad(gi, r(5, 8), r(5, 1), r(-6, 1))),
        (3, _) => (FormulaId::Step3, quad(gi, r(5, 8), r(5, 1), r(-9, 2))),
        _ => panic!("step must be 1, 2 or 3"),
    };
    Ok(BoundValue::new(id, parity, BoundExpr::rational(value)))
}

/// Largest x-edge count after the horizontal fold.
pub fn step2_x_edge_bound(g: u32) -> Rational {
    let g2 = Rational::from_integer((g * g) as i64);
    match ParityCase::of(g as usize) {
        ParityCase::Odd => (g2 - 1) / 4,
        ParityCase::FourK => g2 / 4,
        _ => g2 / 4 + 1,
    }
}

/// Largest z-edge count after the vertical fold.
pub fn step3_z_edge_bound(g: u32) -> u64 {
    let g = g as u64;
    if g % 2 == 1 {
        4 * g - 2
    } else {
        4 * g - 4
    }
}

/// Ropelength of the rounded construction after `step`: twice the
/// edge bound less `2 - pi/2` per guaranteed corner.
pub fn rop_step_bound(step: u8, g: u32) -> Result<BoundValue, BoundError> {
    if g < 2 {
        return Err(BoundError::SizeTooSmall(g));
    }
    let gi = g as i64;
    let gr = Rational::from_integer(gi);
    let parity = ParityCase::of(g as usize);
    let (id, constant, pi_coeff) = match step {
        1 => (FormulaId::RopStep1, quad(gi, r(2, 1), r(-4, 1), r(0, 1)), gr * 2),
        2 => (FormulaId::RopStep2, quad(gi, r(3, 2), r(0, 1), r(-11, 2)), gr),
        3 => (FormulaId::RopStep3, quad(gi, r(5, 4), r(8, 1), r(-29, 4)), gr / 2),
        _ => panic!("step must be 1, 2 or 3"),
    };
    Ok(BoundValue::new(id, parity, BoundExpr::pi_affine(constant, pi_coeff)))
}

fn min_of(a: BoundValue, b: BoundValue) -> TheoremBound {
    let min = match a.value.compare(&b.value) {
        Some(Ordering::Greater) => b,
        _ => a,
    };
    TheoremBound { min, forms: [a, b] }
}

/// Lattice-length bound in terms of the crossing number.
pub fn theorem_len_bound(c: u32, nonalternating_prime: bool) -> Result<TheoremBound, BoundError> {
    if c < 3 {
        return Err(BoundError::CrossingTooSmall(c));
    }
    let ci = c as i64;
    let na = ParityCase::NotApplicable;
    let (a, b) = if nonalternating_prime {
        (
            BoundValue::new(FormulaId::ThmLenNapA, na, BoundExpr::rational(quad(ci, r(3, 4), r(2, 1), r(-11, 4)))),
            BoundValue::new(FormulaId::ThmLenNapB, na, BoundExpr::rational(quad(ci, r(5, 8), r(5, 1), r(-29, 8)))),
        )
    } else {
        (
            BoundValue::new(FormulaId::ThmLenGeneralA, na, BoundExpr::rational(quad(ci, r(3, 4), r(5, 1), r(17, 4)))),
            BoundValue::new(FormulaId::ThmLenGeneralB, na, BoundExpr::rational(quad(ci, r(5, 8), r(15, 2), r(71, 8)))),
        )
    };
    Ok(min_of(a, b))
}

/// Ropelength bound in terms of the crossing number (exact pi forms).
pub fn theorem_rop_bound(c: u32, nonalternating_prime: bool) -> Result<TheoremBound, BoundError> {
    if c < 3 {
        return Err(BoundError::CrossingTooSmall(c));
    }
    let ci = c as i64;
    let cr = Rational::from_integer(ci);
    let na = ParityCase::NotApplicable;
    let (a, b) = if nonalternating_prime {
        (
            BoundValue::new(FormulaId::ThmRopNapA, na, BoundExpr::pi_affine(quad(ci, r(3, 2), r(0, 1), r(-11, 2)), cr)),
            BoundValue::new(
                FormulaId::ThmRopNapB,
                na,
                BoundExpr::pi_affine(quad(ci, r(5, 4), r(8, 1), r(-29, 4)), cr / 2),
            ),
        )
    } else {
        (
            BoundValue::new(
                FormulaId::ThmRopGeneralA,
                na,
                BoundExpr::pi_affine(quad(ci, r(3, 2), r(6, 1), r(1, 2)), cr + 2),
            ),
            BoundValue::new(
                FormulaId::ThmRopGeneralB,
                na,
                BoundExpr::pi_affine(quad(ci, r(5, 4), r(13, 1), r(55, 4)), cr / 2 + 1),
            ),
        )
    };
    Ok(min_of(a, b))
}

/// Two-decimal forms of the general ropelength bound.
pub fn theorem_rop_decimal(c: u32) -> Result<TheoremBound, BoundError> {
    if c < 3 {
        return Err(BoundError::CrossingTooSmall(c));
    }
    let ci = c as i64;
    let na = ParityCase::NotApplicable;
    let a = BoundValue::new(
        FormulaId::ThmRopDecimalA,
        na,
        BoundExpr::rational(quad(ci, r(3, 2), r(915, 100), r(679, 100))),
    );
    let b = BoundValue::new(
        FormulaId::ThmRopDecimalB,
        na,
        BoundExpr::rational(quad(ci, r(5, 4), r(1458, 100), r(1690, 100))),
    );
    Ok(min_of(a, b))
}

/// Earlier published bounds evaluated at `c`: the `c^(3/2)` length and
/// ropelength bounds, the quadratic ropelength bound and the earlier
/// quadratic length bound.
pub fn comparator_bounds(c: u32) -> Result<Vec<BoundValue>, BoundError> {
    if c < 3 {
        return Err(BoundError::CrossingTooSmall(c));
    }
    let cf = c as f64;
    let ci = c as i64;
    let na = ParityCase::NotApplicable;
    let diao_len = 136.0 * cf.powf(1.5) + 84.0 * cf + 22.0 * cf.sqrt() + 11.0;
    let diao_rop = 272.0 * cf.powf(1.5) + 168.0 * cf + 44.0 * cf.sqrt() + 22.0;
    Ok(vec![
        BoundValue::new(FormulaId::DiaoLen, na, BoundExpr::Real { value: diao_len }),
        BoundValue::new(FormulaId::DiaoRop, na, BoundExpr::Real { value: diao_rop }),
        BoundValue::new(
            FormulaId::CantarellaRop,
            na,
            BoundExpr::rational(quad(ci, r(164, 100), r(769, 100), r(674, 100))),
        ),
        BoundValue::new(FormulaId::PriorLen, na, BoundExpr::rational(quad(ci, r(3, 2), r(2, 1), r(1, 2)))),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// observed <= bound
    Le,
    /// observed >= bound
    Ge,
    /// observed == bound
    Eq,
    /// A yes/no condition; observed is 1 when it holds.
    Holds,
}

/// One comparison of an observed quantity against a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub formula_id: Option<FormulaId>,
    pub parity_case: ParityCase,
    pub observed: BoundExpr,
    pub relation: Relation,
    pub bound: BoundExpr,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: BoundExpr, relation: Relation, bound: BoundExpr) -> Self {
        let ord = observed.compare(&bound);
        let pass = match relation {
            Relation::Le => matches!(ord, Some(Ordering::Less | Ordering::Equal)),
            Relation::Ge => matches!(ord, Some(Ordering::Greater | Ordering::Equal)),
            Relation::Eq | Relation::Holds => ord == Some(Ordering::Equal),
        };
        Check {
            name: name.into(),
            formula_id: None,
            parity_case: ParityCase::NotApplicable,
            observed,
            relation,
            bound,
            pass,
        }
    }

    pub fn against(name: impl Into<String>, observed: BoundExpr, relation: Relation, bound: &BoundValue) -> Self {
        Check { formula_id: Some(bound.formula_id), parity_case: bound.parity_case, ..Self::new(name, observed, relation, bound.value) }
    }

    pub fn count(name: impl Into<String>, observed: u64, relation: Relation, bound: u64) -> Self {
        Self::new(name, int(observed), relation, int(bound))
    }

    /// A yes/no condition recorded as `observed == 1`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::count(name, ok as u64, Relation::Holds, 1)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Holds => return write!(f, "{verdict} {}", self.name),
        };
        write!(f, "{verdict} {}: {} {rel} {}", self.name, self.observed, self.bound)
    }
}

pub fn int(v: u64) -> BoundExpr {
    BoundExpr::rational(Rational::from_integer(v as i64))
}

/// What a lattice knot is claimed to be: the step that produced it, the
/// grid size, and optionally the knot's crossing number and table facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub step: u8,
    pub g: u32,
    pub crossing_number: Option<u32>,
    pub nonalternating_prime: bool,
    /// Known minimum lattice length, when tabulated.
    pub known_minimum: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub provenance: Provenance,
    pub census: EdgeCensus,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Certificate {
    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Largest grid size the crossing-number theorems allow for a knot.
pub fn max_grid_size(c: u32, nonalternating_prime: bool) -> u32 {
    if nonalternating_prime {
        c
    } else {
        c + 2
    }
}

/// Census-level certificate for one pipeline output: step bound, per-axis
/// bounds, corner floor, the matching crossing-number form, and the known
/// minimum where one is tabulated.
pub fn certify(k: &LatticeKnot, provenance: Provenance) -> Certificate {
    let census = edge_census(k);
    let total = census.total_edges();
    let g = provenance.g;
    let mut cert = Certificate { provenance, census, checks: Vec::new(), pass: true };
    let step = provenance.step;
    match step_bound(step, g) {
        Ok(b) => cert.push(Check::against(format!("step {step} total edges"), int(total), Relation::Le, &b)),
        Err(e) => cert.push(Check { name: e.to_string(), ..Check::flag("step bound", false) }),
    }
    let g64 = g as u64;
    match step {
        1 => {
            cert.push(Check::count("step 1 z-edges", census.z_edges, Relation::Eq, 2 * g64));
            cert.push(Check::count("step 1 corners", census.corners, Relation::Eq, 4 * g64));
        }
        2 => {
            cert.push(Check::new(
                "step 2 x-edges",
                int(census.x_edges),
                Relation::Le,
                BoundExpr::rational(step2_x_edge_bound(g)),
            ));
            cert.push(Check::count("step 2 corners", census.corners, Relation::Ge, 2 * g64));
        }
        _ => {
            cert.push(Check::count("step 3 z-edges", census.z_edges, Relation::Le, step3_z_edge_bound(g)));
            cert.push(Check::count("step 3 corners", census.corners, Relation::Ge, g64));
        }
    }
    cert.push(Check::count("corners at least 4", census.corners, Relation::Ge, 4));
    cert.push(Check::count("edges at least corners", total, Relation::Ge, census.corners));
    if let Some(c) = provenance.crossing_number {
        let nap = provenance.nonalternating_prime;
        cert.push(Check::count("grid size within crossing-number range", g64, Relation::Le, max_grid_size(c, nap) as u64));
        if let (Ok(t), 2 | 3) = (theorem_len_bound(c, nap), step) {
            let form = &t.forms[(step - 2) as usize];
            cert.push(Check::against(format!("step {step} total edges vs crossing-number form"), int(total), Relation::Le, form));
        }
    }
    if let Some(min) = provenance.known_minimum {
        cert.push(Check::count("total edges at least the known minimum", total, Relation::Ge, min));
    }
    cert
}

/// The crossing-number statement itself: the shortest of the step outputs
/// is within `theorem_len_bound(c)`.
pub fn certify_theorem_len(totals: &[u64], c: u32, nonalternating_prime: bool) -> Result<Check, BoundError> {
    let t = theorem_len_bound(c, nonalternating_prime)?;
    let best = totals.iter().copied().min().unwrap_or(u64::MAX);
    Ok(Check::against(format!("shortest step output vs crossing-number bound (c={c})"), int(best), Relation::Le, &t.min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;
    use crate::lattice::settle;

    fn rat(b: &BoundValue) -> Rational {
        b.value.as_rational().unwrap()
    }

    #[test]
    fn census_of_rectangle() {
        let k = settle(&parse_grid("X: 1,2 / O: 2,1").unwrap());
        let c = edge_census(&k);
        assert_eq!((c.x_edges, c.y_edges, c.z_edges, c.corners), (2, 2, 4, 8));
        assert_eq!(c.total_edges(), 8);
    }

    #[test]
    fn census_of_trefoil_counts_2g_z_edges() {
        let k = settle(&parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap());
        assert_eq!(edge_census(&k).z_edges, 10);
    }

    #[test]
    fn census_permutes_under_rotation() {
        let k = settle(&parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap());
        // (x, y, z) -> (y, z, x) moves y-edges onto the x axis
        let rotated = LatticeKnot::from_corners(k.corners().iter().map(|p| [p[1], p[2], p[0]]).collect());
        let a = edge_census(&k);
        let b = edge_census(&rotated);
        assert_eq!((b.x_edges, b.y_edges, b.z_edges), (a.y_edges, a.z_edges, a.x_edges));
        assert_eq!((b.x_sticks, b.y_sticks, b.z_sticks), (a.y_sticks, a.z_sticks, a.x_sticks));
    }

    #[test]
    fn step_bounds_at_spot_values() {
        assert_eq!(rat(&step_bound(1, 5).unwrap()), r(34, 1));
        assert_eq!(rat(&step_bound(2, 5).unwrap()), r(26, 1));
        assert_eq!(rat(&step_bound(3, 5).unwrap()), r(37, 1));
        assert_eq!(rat(&step_bound(3, 8).unwrap()), r(74, 1));
        assert_eq!(step_bound(3, 8).unwrap().parity_case, ParityCase::FourK);
        assert_eq!(rat(&step_bound(2, 2).unwrap()), r(4, 1));
        assert_eq!(step_bound(1, 1), Err(BoundError::SizeTooSmall(1)));
    }

    #[test]
    fn theorem_len_spot_values() {
        assert_eq!(rat(&theorem_len_bound(3, false).unwrap().min), r(26, 1));
        assert_eq!(rat(&theorem_len_bound(3, false).unwrap().forms[1]), r(37, 1));
        assert_eq!(rat(&theorem_len_bound(10, false).unwrap().min), r(517, 4));
        assert_eq!(rat(&theorem_len_bound(10, true).unwrap().min), r(369, 4));
        assert_eq!(rat(&theorem_len_bound(4, false).unwrap().min), r(145, 4));
        assert_eq!(theorem_len_bound(2, false), Err(BoundError::CrossingTooSmall(2)));
    }

    #[test]
    fn theorem_len_min_switches_between_21_and_22() {
        // 3/4 c^2 + 5c + 17/4 = 5/8 c^2 + 15/2 c + 71/8 at c = 10 + sqrt(137)
        let root = 10.0 + 137f64.sqrt();
        assert!(root > 21.0 && root < 22.0);
        let t21 = theorem_len_bound(21, false).unwrap();
        let t22 = theorem_len_bound(22, false).unwrap();
        assert_eq!(t21.min.formula_id, FormulaId::ThmLenGeneralA);
        assert!(rat(&t21.forms[0]) < rat(&t21.forms[1]));
        assert_eq!(t22.min.formula_id, FormulaId::ThmLenGeneralB);
        assert!(rat(&t22.forms[1]) < rat(&t22.forms[0]));
    }

    #[test]
    fn rop_decimal_dominates_exact() {
        for c in 3..=100 {
            let exact = theorem_rop_bound(c, false).unwrap();
            let dec = theorem_rop_decimal(c).unwrap();
            for i in 0..2 {
                assert!(exact.forms[i].value.certainly_le(&dec.forms[i].value), "c={c} form {i}");
            }
        }
        let dec3 = theorem_rop_decimal(3).unwrap();
        assert_eq!(rat(&dec3.forms[0]), r(4774, 100));
        assert!((theorem_rop_bound(3, false).unwrap().forms[0].to_f64() - 47.708).abs() < 1e-3);
    }

    #[test]
    fn rop_nap_spot_value() {
        let t = theorem_rop_bound(4, true).unwrap();
        let pi = std::f64::consts::PI;
        assert!((t.forms[0].to_f64() - (24.0 + 4.0 * pi - 5.5)).abs() < 1e-12);
        assert!((t.forms[1].to_f64() - (20.0 + 2.0 * pi + 32.0 - 29.0 / 4.0)).abs() < 1e-12);
        assert_eq!(t.min.formula_id, FormulaId::ThmRopNapA);
    }

    #[test]
    fn comparators() {
        let c3 = comparator_bounds(3).unwrap();
        assert_eq!(rat(&c3[2]), r(4457, 100));
        assert_eq!(rat(&c3[3]), r(20, 1));
        let c100 = comparator_bounds(100).unwrap();
        let ours = theorem_rop_bound(100, false).unwrap().forms[0];
        assert!((ours.to_f64() - 15920.94).abs() < 0.01);
        assert!((c100[2].to_f64() - 17175.74).abs() < 1e-9);
        assert!(ours.value.certainly_le(&c100[2].value));
    }

    #[test]
    fn bounds_are_nonnegative() {
        for g in 2..=100 {
            for step in 1..=3 {
                assert!(rat(&step_bound(step, g).unwrap()) >= r(0, 1));
                assert!(rop_step_bound(step, g).unwrap().to_f64() >= 0.0);
            }
        }
    }

    #[test]
    fn len_bounds_have_denominator_dividing_8() {
        for g in 2..=40 {
            for step in 1..=3 {
                assert_eq!(8 % rat(&step_bound(step, g).unwrap()).denom(), 0);
            }
        }
        for c in 3..=40 {
            for nap in [false, true] {
                for f in theorem_len_bound(c, nap).unwrap().forms {
                    assert_eq!(8 % rat(&f).denom(), 0);
                }
            }
        }
    }

    #[test]
    fn later_steps_beat_step_one() {
        for g in 4..=40 {
            let s1 = rat(&step_bound(1, g).unwrap());
            assert!(rat(&step_bound(2, g).unwrap()) < s1);
            if g >= 24 {
                assert!(rat(&step_bound(3, g).unwrap()) <= rat(&step_bound(2, g).unwrap()));
            }
            if g >= 8 {
                assert!(rat(&step_bound(3, g).unwrap()) < s1);
            }
        }
    }

    #[test]
    fn trefoil_certificates() {
        let k = settle(&parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap());
        let prov = Provenance { step: 1, g: 5, crossing_number: Some(3), nonalternating_prime: false, known_minimum: Some(24) };
        let cert = certify(&k, prov);
        assert!(cert.pass, "{:?}", cert.failures().collect::<Vec<_>>());
        let thm = certify_theorem_len(&[34, 26, 30], 3, false).unwrap();
        assert!(thm.pass);
        assert_eq!(thm.bound.as_rational(), Some(r(26, 1)));
        assert!(!certify_theorem_len(&[34, 27], 3, false).unwrap().pass);
    }

    #[test]
    fn certificate_records_failures() {
        let k = settle(&parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap());
        // a 34-edge knot cannot be a step-2 output of size 5
        let prov = Provenance { step: 2, g: 5, crossing_number: None, nonalternating_prime: false, known_minimum: None };
        let cert = certify(&k, prov);
        assert!(!cert.pass);
        assert!(cert.failures().any(|c| c.formula_id == Some(FormulaId::Step2)));
        let text = cert.failures().next().unwrap().to_string();
        assert!(text.starts_with("FAIL"), "{text}");
    }

    #[test]
    fn check_relations() {
        assert!(Check::count("a", 3, Relation::Le, 3).pass);
        assert!(!Check::count("a", 4, Relation::Le, 3).pass);
        assert!(Check::count("a", 4, Relation::Ge, 3).pass);
        assert!(!Check::count("a", 4, Relation::Eq, 3).pass);
        assert!(Check::flag("ok", true).pass && !Check::flag("ok", false).pass);
    }

    #[test]
    fn exact_pi_comparison() {
        let a = BoundExpr::pi_affine(r(0, 1), r(1, 1));
        let b = BoundExpr::rational(r(314159, 100000));
        assert_eq!(a.compare(&b), Some(Ordering::Greater));
        assert_eq!(a.compare(&a), Some(Ordering::Equal));
        let c = BoundExpr::rational(r(22, 7));
        assert_eq!(a.compare(&c), Some(Ordering::Less));
    }
}
