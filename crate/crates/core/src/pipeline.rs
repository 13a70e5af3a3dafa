//! Settle, fold, fold, then certify each stage: edge bounds, knot type,
//! and the rounded rope's length and thickness.

use serde::{Deserialize, Serialize};

use crate::alexander::{alexander, determinant, same_knot_certificate, KnotConsistency};
use crate::bounds::{
    certify, certify_theorem_len, edge_census, int, rop_step_bound, theorem_rop_bound, BoundExpr, Certificate, Check,
    EdgeCensus, Provenance, Rational, Relation,
};
use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::fold::{fold_both, FoldReport};
use crate::grid::GridDiagram;
use crate::lattice::{settle, validate_lattice, LatticeKnot};
use crate::laurent::LaurentPoly;
use crate::planar::grid_to_planar;
use crate::project::{project, Shear};
use crate::rope::{rope_metrics, smooth, RopeMetrics, SmoothKnot};

/// Table facts about the knot a diagram represents, when known.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KnotInfo {
    pub name: String,
    pub crossing_number: Option<u32>,
    pub nonalternating_prime: bool,
    pub min_lattice_length: Option<u64>,
    pub published_alexander: Option<String>,
}

impl From<&CorpusEntry> for KnotInfo {
    fn from(e: &CorpusEntry) -> Self {
        KnotInfo {
            name: e.name.to_string(),
            crossing_number: Some(e.crossing_number),
            nonalternating_prime: e.nonalternating_prime,
            min_lattice_length: e.min_lattice_length,
            published_alexander: Some(e.alexander.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub step: u8,
    pub knot: LatticeKnot,
    pub census: EdgeCensus,
    pub fold: Option<FoldReport>,
    pub alexander: String,
    pub shear: Shear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineRun {
    pub grid: GridDiagram,
    pub grid_alexander: String,
    pub stages: Vec<Stage>,
}

impl PipelineRun {
    pub fn size(&self) -> usize {
        self.grid.size()
    }
}

fn stage(step: u8, knot: LatticeKnot, fold: Option<FoldReport>) -> Result<Stage> {
    let (pd, shear) = project(&knot)?;
    let poly = alexander(&pd)?;
    Ok(Stage { step, census: edge_census(&knot), knot, fold, alexander: poly.to_string(), shear })
}

/// Runs steps `1..=steps` of the construction.
pub fn run_pipeline(d: &GridDiagram, steps: u8) -> Result<PipelineRun> {
    let steps = steps.clamp(1, 3);
    let g = d.size();
    let grid_alexander = alexander(&grid_to_planar(d))?.to_string();
    let k1 = settle(d);
    let mut stages = vec![stage(1, k1.clone(), None)?];
    if steps >= 2 {
        let ((k2, r2), (k3, r3)) = fold_both(&k1, g)?;
        stages.push(stage(2, k2, Some(r2))?);
        if steps == 3 {
            stages.push(stage(3, k3, Some(r3))?);
        }
    }
    Ok(PipelineRun { grid: d.clone(), grid_alexander, stages })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageCertificate {
    pub step: u8,
    pub lattice: Certificate,
    /// Absent when the knot is invalid or no reference polynomial was given.
    pub knot_type: Option<KnotConsistency>,
    pub alexander: Option<String>,
    /// Absent when the knot is invalid.
    pub rope: Option<RopeMetrics>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl StageCertificate {
    pub fn all_checks(&self) -> impl Iterator<Item = &Check> {
        self.lattice.checks.iter().chain(&self.checks)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.all_checks().filter(|c| !c.pass).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunCertificate {
    pub info: KnotInfo,
    pub g: usize,
    pub stages: Vec<StageCertificate>,
    /// Crossing-number statements over the whole run.
    pub theorem_checks: Vec<Check>,
    pub pass: bool,
}

impl RunCertificate {
    pub fn failures(&self) -> Vec<&Check> {
        self.stages.iter().flat_map(|s| s.all_checks()).chain(&self.theorem_checks).filter(|c| !c.pass).collect()
    }
}

/// Exact rope length `2E - (2 - pi/2) C` when the measured thickness is
/// exactly 1, otherwise the measured ropelength.
fn ropelength_expr(census: &EdgeCensus, m: &RopeMetrics) -> BoundExpr {
    if m.thickness_radius == 1.0 {
        let e = census.total_edges() as i64;
        let c = census.corners as i64;
        BoundExpr::pi_affine(Rational::from_integer(2 * e - 2 * c), Rational::new(c, 2))
    } else {
        BoundExpr::Real { value: m.ropelength }
    }
}

/// Certifies one lattice knot claimed to be the output of `step` for a
/// size-`g` grid. `reference` is the Alexander polynomial of the source
/// diagram; `tol` is the thickness tolerance. Returns the certificate and
/// the rope's length over thickness when the knot is valid.
pub fn certify_knot(
    knot: &LatticeKnot,
    step: u8,
    g: u32,
    reference: Option<&LaurentPoly>,
    info: &KnotInfo,
    tol: f64,
) -> Result<(StageCertificate, Option<BoundExpr>)> {
    let provenance = Provenance {
        step,
        g,
        crossing_number: info.crossing_number,
        nonalternating_prime: info.nonalternating_prime,
        known_minimum: info.min_lattice_length,
    };
    let lattice = certify(knot, provenance);
    let report = validate_lattice(knot);
    let mut checks = vec![Check::flag("lattice knot is valid and self-avoiding", report.is_ok())];
    let mut cert = StageCertificate {
        step,
        lattice,
        knot_type: None,
        alexander: None,
        rope: None,
        checks: Vec::new(),
        pass: false,
    };
    if !report.is_ok() {
        checks[0].name = format!("lattice knot is valid and self-avoiding ({:?})", report.violations[0]);
        cert.checks = checks;
        return Ok((cert, None));
    }

    let poly = alexander(&project(knot)?.0)?;
    if let Some(reference) = reference {
        let verdict = same_knot_certificate(&poly, reference);
        checks.push(Check::flag("Alexander polynomial matches the grid diagram", verdict == KnotConsistency::Consistent));
        cert.knot_type = Some(verdict);
    }
    if let Some(published) = &info.published_alexander {
        let published: LaurentPoly = published.parse()?;
        checks.push(Check::flag("Alexander polynomial matches the published one", poly == published));
    }
    checks.push(Check::flag("knot determinant is odd", num_integer::Integer::is_odd(&determinant(&poly))));
    cert.alexander = Some(poly.to_string());

    let rope: SmoothKnot = smooth(knot)?;
    checks.push(Check::flag("smooth rope is tangent-continuous", rope.violations().is_empty()));
    let m = rope_metrics(&rope);
    let census = edge_census(knot);
    let closed_form = 2.0 * census.total_edges() as f64 - (2.0 - std::f64::consts::FRAC_PI_2) * census.corners as f64;
    checks.push(Check::flag(
        "rope length is 2E - (2 - pi/2)C",
        (m.length - closed_form).abs() <= 1e-12 * closed_form.max(1.0),
    ));
    checks.push(Check::new(
        "doubled self-distance",
        BoundExpr::Real { value: m.distance_lower_bound },
        Relation::Ge,
        BoundExpr::Real { value: 2.0 - 2.0 * tol },
    ));
    checks.push(Check::new(
        "thickness radius",
        BoundExpr::Real { value: m.thickness_radius },
        Relation::Ge,
        BoundExpr::Real { value: 1.0 - tol },
    ));
    let rop = ropelength_expr(&census, &m);
    checks.push(Check::new("ropelength at most twice the edge count", rop, Relation::Le, int(2 * census.total_edges())));
    let rb = rop_step_bound(step, g)?;
    checks.push(Check::against(format!("step {step} ropelength"), rop, Relation::Le, &rb));
    if let (Some(c), 2 | 3) = (info.crossing_number, step) {
        if let Ok(t) = theorem_rop_bound(c, info.nonalternating_prime) {
            let form = &t.forms[(step - 2) as usize];
            checks.push(Check::against(format!("step {step} ropelength vs crossing-number form"), rop, Relation::Le, form));
        }
    }
    cert.rope = Some(m);
    cert.checks = checks;
    cert.pass = cert.lattice.pass && cert.checks.iter().all(|c| c.pass);
    Ok((cert, Some(rop)))
}

/// Certifies every stage of a run. `tol` is the thickness tolerance.
pub fn certify_run(run: &PipelineRun, info: &KnotInfo, tol: f64) -> Result<RunCertificate> {
    let reference: LaurentPoly = run.grid_alexander.parse()?;
    let g = run.size() as u32;
    let mut stages = Vec::new();
    let mut ropes = Vec::new();
    for s in &run.stages {
        let (cert, rop) = certify_knot(&s.knot, s.step, g, Some(&reference), info, tol)?;
        stages.push(cert);
        ropes.extend(rop);
    }
    let mut theorem_checks = Vec::new();
    let folded = run.stages.iter().any(|s| s.step >= 2);
    if let (Some(c), true) = (info.crossing_number, folded) {
        let totals: Vec<u64> = run.stages.iter().map(|s| s.census.total_edges()).collect();
        if let Ok(check) = certify_theorem_len(&totals, c, info.nonalternating_prime) {
            theorem_checks.push(check);
        }
        let best = ropes.iter().copied().reduce(|a, b| if b.compare(&a) == Some(std::cmp::Ordering::Less) { b } else { a });
        if let (Ok(t), Some(best)) = (theorem_rop_bound(c, info.nonalternating_prime), best) {
            theorem_checks.push(Check::against(
                format!("shortest rope vs crossing-number bound (c={c})"),
                best,
                Relation::Le,
                &t.min,
            ));
        }
    }
    let pass = stages.iter().all(|s| s.pass) && theorem_checks.iter().all(|c| c.pass);
    Ok(RunCertificate { info: info.clone(), g: run.size(), stages, theorem_checks, pass })
}
