mod common;

use common::state_sum;
use latticeknot::alexander::{alexander, determinant};
use latticeknot::corpus::CORPUS;
use latticeknot::grid::random_grid;
use latticeknot::pipeline::run_pipeline;
use latticeknot::planar::grid_to_planar;
use latticeknot::project::project;
use num_traits::Signed;

fn alexander_det(pd: &latticeknot::planar::PlanarDiagram) -> u64 {
    let d = determinant(&alexander(pd).unwrap()).abs();
    u64::try_from(d).unwrap()
}

#[test]
fn bracket_of_unknot_and_trefoil() {
    let empty = latticeknot::planar::PlanarDiagram { crossings: vec![], components: 1 };
    assert_eq!(state_sum::determinant(&empty), 1);
    let pd = grid_to_planar(&CORPUS[0].diagram());
    assert_eq!(state_sum::determinant(&pd), 3);
}

#[test]
fn state_sum_agrees_on_corpus_grids() {
    for e in CORPUS {
        let pd = grid_to_planar(&e.diagram());
        if pd.crossing_count() > 14 {
            continue;
        }
        assert_eq!(state_sum::determinant(&pd), alexander_det(&pd), "{}", e.name);
    }
}

#[test]
fn state_sum_agrees_on_random_grids() {
    let mut checked = 0;
    for g in 3..=8 {
        for seed in 0..30 {
            let pd = grid_to_planar(&random_grid(g, seed).unwrap());
            if pd.crossing_count() > 12 {
                continue;
            }
            assert_eq!(state_sum::determinant(&pd), alexander_det(&pd), "g={g} seed={seed}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn state_sum_agrees_on_lattice_projections() {
    for e in CORPUS.iter().filter(|e| e.grid_size() <= 7) {
        let run = run_pipeline(&e.diagram(), 3).unwrap();
        let expected = alexander_det(&grid_to_planar(&e.diagram()));
        for stage in &run.stages {
            let (pd, _) = project(&stage.knot).unwrap();
            assert!(pd.crossing_count() <= 14);
            assert_eq!(state_sum::determinant(&pd), expected, "{} step {}", e.name, stage.step);
        }
    }
}

