//! Built-in grid diagrams with known crossing numbers and Alexander
//! polynomials.
//!
//! Torus knots `T(p, q)` have grid index `p + q` and a minimal grid with
//! X on the diagonal and O shifted by `p` columns. The figure-eight grid
//! was found by a seeded search over size-6 diagrams.

use crate::grid::GridDiagram;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub x_cols: &'static [usize],
    pub o_cols: &'static [usize],
    pub crossing_number: u32,
    pub nonalternating_prime: bool,
    pub alexander: &'static str,
    /// Minimum lattice length, where it is known.
    pub min_lattice_length: Option<u64>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> GridDiagram {
        GridDiagram::new(self.x_cols.to_vec(), self.o_cols.to_vec()).expect("corpus grids are valid")
    }

    pub fn grid_size(&self) -> usize {
        self.x_cols.len()
    }

    pub fn expected_alexander(&self) -> LaurentPoly {
        self.alexander.parse().expect("corpus polynomials parse")
    }
}

const ID5: &[usize] = &[1, 2, 3, 4, 5];
const ID7: &[usize] = &[1, 2, 3, 4, 5, 6, 7];
const ID8: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8];
const ID9: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9];
const ID10: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
const ID11: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];
const ID12: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "trefoil",
        aliases: &["3_1", "t2_3"],
        x_cols: ID5,
        o_cols: &[3, 4, 5, 1, 2],
        crossing_number: 3,
        nonalternating_prime: false,
        min_lattice_length: Some(24),
        alexander: "t^-1 - 1 + t",
    },
    CorpusEntry {
        name: "figure-eight",
        aliases: &["4_1"],
        x_cols: &[3, 4, 1, 2, 6, 5],
        o_cols: &[6, 2, 3, 5, 4, 1],
        crossing_number: 4,
        nonalternating_prime: false,
        min_lattice_length: Some(30),
        alexander: "-t^-1 + 3 - t",
    },
    CorpusEntry {
        name: "cinquefoil",
        aliases: &["5_1", "t2_5"],
        x_cols: ID7,
        o_cols: &[3, 4, 5, 6, 7, 1, 2],
        crossing_number: 5,
        nonalternating_prime: false,
        min_lattice_length: Some(34),
        alexander: "t^-2 - t^-1 + 1 - t + t^2",
    },
    CorpusEntry {
        name: "8_19",
        aliases: &["t3_4"],
        x_cols: ID7,
        o_cols: &[4, 5, 6, 7, 1, 2, 3],
        crossing_number: 8,
        nonalternating_prime: true,
        min_lattice_length: None,
        alexander: "t^-3 - t^-2 + 1 - t^2 + t^3",
    },
    CorpusEntry {
        name: "10_124",
        aliases: &["t3_5"],
        x_cols: ID8,
        o_cols: &[4, 5, 6, 7, 8, 1, 2, 3],
        crossing_number: 10,
        nonalternating_prime: true,
        min_lattice_length: None,
        alexander: "t^-4 - t^-3 + t^-1 - 1 + t - t^3 + t^4",
    },
    CorpusEntry {
        name: "7_1",
        aliases: &["t2_7"],
        x_cols: ID9,
        o_cols: &[3, 4, 5, 6, 7, 8, 9, 1, 2],
        crossing_number: 7,
        nonalternating_prime: false,
        min_lattice_length: None,
        alexander: "t^-3 - t^-2 + t^-1 - 1 + t - t^2 + t^3",
    },
    CorpusEntry {
        name: "t4_5",
        aliases: &[],
        x_cols: ID9,
        o_cols: &[5, 6, 7, 8, 9, 1, 2, 3, 4],
        crossing_number: 15,
        nonalternating_prime: true,
        min_lattice_length: None,
        alexander: "t^-6 - t^-5 + t^-2 - 1 + t^2 - t^5 + t^6",
    },
    CorpusEntry {
        name: "t3_7",
        aliases: &[],
        x_cols: ID10,
        o_cols: &[4, 5, 6, 7, 8, 9, 10, 1, 2, 3],
        crossing_number: 14,
        nonalternating_prime: true,
        min_lattice_length: None,
        alexander: "t^-6 - t^-5 + t^-3 - t^-2 + 1 - t^2 + t^3 - t^5 + t^6",
    },
    CorpusEntry {
        name: "9_1",
        aliases: &["t2_9"],
        x_cols: ID11,
        o_cols: &[3, 4, 5, 6, 7, 8, 9, 10, 11, 1, 2],
        crossing_number: 9,
        nonalternating_prime: false,
        min_lattice_length: None,
        alexander: "t^-4 - t^-3 + t^-2 - t^-1 + 1 - t + t^2 - t^3 + t^4",
    },
    CorpusEntry {
        name: "t5_7",
        aliases: &[],
        x_cols: ID12,
        o_cols: &[6, 7, 8, 9, 10, 11, 12, 1, 2, 3, 4, 5],
        crossing_number: 28,
        nonalternating_prime: true,
        min_lattice_length: None,
        alexander: "t^-12 - t^-11 + t^-7 - t^-6 + t^-5 - t^-4 + t^-2 - t^-1 + 1 - t + t^2 - t^4 + t^5 - t^6 + t^7 - t^11 + t^12",
    },
];

pub fn lookup(name: &str) -> Option<&'static CorpusEntry> {
    let key = name.trim().to_ascii_lowercase();
    CORPUS.iter().find(|e| e.name == key || e.aliases.contains(&key.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{alexander, determinant};
    use crate::planar::grid_to_planar;

    /// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, normalized.
    fn torus_alexander(p: i64, q: i64) -> LaurentPoly {
        let one = LaurentPoly::one();
        let m = |e: i64| &LaurentPoly::monomial(1, e) - &one;
        (m(p * q) * m(1)).div_exact(&(m(p) * m(q))).unwrap().normalized()
    }

    #[test]
    fn polynomials_match_diagrams() {
        for e in CORPUS {
            let got = alexander(&grid_to_planar(&e.diagram())).unwrap();
            assert_eq!(got, e.expected_alexander(), "{}", e.name);
        }
    }

    #[test]
    fn torus_entries_match_formula() {
        for (name, p, q) in [
            ("trefoil", 2, 3),
            ("cinquefoil", 2, 5),
            ("8_19", 3, 4),
            ("10_124", 3, 5),
            ("7_1", 2, 7),
            ("t4_5", 4, 5),
            ("t3_7", 3, 7),
            ("9_1", 2, 9),
            ("t5_7", 5, 7),
        ] {
            let e = lookup(name).unwrap();
            assert_eq!(e.expected_alexander(), torus_alexander(p, q), "{name}");
            assert_eq!(e.grid_size() as i64, p + q);
            assert_eq!(e.crossing_number as i64, (p * (q - 1)).min(q * (p - 1)));
            assert_eq!(e.nonalternating_prime, p > 2);
        }
    }

    #[test]
    fn figure_eight() {
        let e = lookup("4_1").unwrap();
        let pd = grid_to_planar(&e.diagram());
        assert_eq!(pd.crossing_count(), 4);
        assert_eq!(determinant(&alexander(&pd).unwrap()), 5.into());
    }

    #[test]
    fn lookup_by_alias() {
        assert_eq!(lookup("3_1").unwrap().name, "trefoil");
        assert_eq!(lookup(" Trefoil ").unwrap().name, "trefoil");
        assert!(lookup("6_1").is_none());
    }
}
