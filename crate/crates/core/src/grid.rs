//! Grid diagrams.
//!
//! Rows are numbered bottom-to-top `1..=g` and columns left-to-right `1..=g`.
//! Row `r` carries one X and one O marker; the horizontal strand of row `r`
//! runs from its X column to its O column, and the vertical strand of column
//! `c` joins the two rows holding a marker in column `c`. The curve is
//! oriented X -> O along rows and O -> X along columns. At every crossing the
//! vertical strand passes over the horizontal one.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GridError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDiagram {
    size: usize,
    /// `x_col[r - 1]` is the column of the X marker in row `r`.
    x_col: Vec<usize>,
    /// `o_col[r - 1]` is the column of the O marker in row `r`.
    o_col: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridViolation {
    SizeMismatch { x_len: usize, o_len: usize },
    NotAPermutation { which: char },
    SameCellXO { row: usize },
    MultiComponent { components: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Text layout used by [`GridDiagram::to_text`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    /// `X: c1,...,cg` / `O: c1,...,cg` lines.
    Permutations,
    /// `g` lines of `X`, `O` and `.`; the first line is the top row.
    Matrix,
}

impl GridDiagram {
    /// Builds a diagram and checks every invariant.
    pub fn new(x_col: Vec<usize>, o_col: Vec<usize>) -> Result<Self, GridError> {
        let d = Self::from_parts_unchecked(x_col, o_col);
        d.check()?;
        Ok(d)
    }

    /// Builds a diagram without validation. Use [`validate_grid`] to inspect it.
    pub fn from_parts_unchecked(x_col: Vec<usize>, o_col: Vec<usize>) -> Self {
        Self { size: x_col.len(), x_col, o_col }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn x_col(&self, row: usize) -> usize {
        self.x_col[row - 1]
    }

    pub fn o_col(&self, row: usize) -> usize {
        self.o_col[row - 1]
    }

    pub fn x_cols(&self) -> &[usize] {
        &self.x_col
    }

    pub fn o_cols(&self) -> &[usize] {
        &self.o_col
    }

    fn check(&self) -> Result<(), GridError> {
        let g = self.size;
        if self.o_col.len() != g {
            return Err(GridError::MalformedInput(format!(
                "X has {} entries but O has {}",
                g,
                self.o_col.len()
            )));
        }
        if !is_permutation(&self.x_col) {
            return Err(GridError::NotAPermutation { which: 'X', size: g });
        }
        if !is_permutation(&self.o_col) {
            return Err(GridError::NotAPermutation { which: 'O', size: g });
        }
        if let Some(r) = (0..g).find(|&r| self.x_col[r] == self.o_col[r]) {
            return Err(GridError::SameCellXO { row: r + 1 });
        }
        let components = self.component_count();
        if components != 1 {
            return Err(GridError::MultiComponent { components });
        }
        Ok(())
    }

    /// Row holding the X marker of each column (index `c - 1`).
    fn x_row_of_col(&self) -> Vec<usize> {
        let mut rows = vec![0; self.size];
        for (r, &c) in self.x_col.iter().enumerate() {
            rows[c - 1] = r + 1;
        }
        rows
    }

    /// Number of cycles of the X-O incidence graph. Requires both marker
    /// lists to be permutations.
    pub fn component_count(&self) -> usize {
        let x_row = self.x_row_of_col();
        let mut seen = vec![false; self.size];
        let mut cycles = 0;
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut r = start;
            while !seen[r] {
                seen[r] = true;
                r = x_row[self.o_col[r] - 1] - 1;
            }
        }
        cycles
    }

    /// Rows in traversal order starting from row 1.
    pub fn row_order(&self) -> Vec<usize> {
        let x_row = self.x_row_of_col();
        let mut order = Vec::with_capacity(self.size);
        let mut r = 1;
        loop {
            order.push(r);
            r = x_row[self.o_col(r) - 1];
            if r == 1 {
                break;
            }
        }
        order
    }

    /// Corners of the closed grid curve as `(column, row)` in traversal order:
    /// for each visited row its X corner followed by its O corner.
    pub fn curve_corners(&self) -> Vec<(i64, i64)> {
        self.row_order()
            .into_iter()
            .flat_map(|r| [(self.x_col(r) as i64, r as i64), (self.o_col(r) as i64, r as i64)])
            .collect()
    }

    /// The two rows holding a marker in column `c`, in increasing order.
    pub fn column_rows(&self, c: usize) -> (usize, usize) {
        let mut rows = (1..=self.size).filter(|&r| self.x_col(r) == c || self.o_col(r) == c);
        let a = rows.next().expect("column has two markers");
        let b = rows.next().expect("column has two markers");
        (a, b)
    }

    pub fn to_text(&self, format: GridFormat) -> String {
        match format {
            GridFormat::Permutations => {
                let join = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                format!("X: {}\nO: {}\n", join(&self.x_col), join(&self.o_col))
            }
            GridFormat::Matrix => {
                let mut out = String::new();
                for r in (1..=self.size).rev() {
                    for c in 1..=self.size {
                        out.push(if self.x_col(r) == c {
                            'X'
                        } else if self.o_col(r) == c {
                            'O'
                        } else {
                            '.'
                        });
                    }
                    out.push('\n');
                }
                out
            }
        }
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(GridFormat::Permutations))
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let n = v.len();
    let mut seen = vec![false; n];
    for &c in v {
        if c == 0 || c > n || seen[c - 1] {
            return false;
        }
        seen[c - 1] = true;
    }
    true
}

/// Lists every violated grid invariant; an empty report means the diagram is
/// a valid knot diagram.
pub fn validate_grid(d: &GridDiagram) -> ValidationReport<GridViolation> {
    let mut violations = Vec::new();
    if d.x_col.len() != d.o_col.len() {
        violations.push(GridViolation::SizeMismatch { x_len: d.x_col.len(), o_len: d.o_col.len() });
        return ValidationReport { violations };
    }
    let x_ok = is_permutation(&d.x_col);
    let o_ok = is_permutation(&d.o_col);
    if !x_ok {
        violations.push(GridViolation::NotAPermutation { which: 'X' });
    }
    if !o_ok {
        violations.push(GridViolation::NotAPermutation { which: 'O' });
    }
    for r in 0..d.size {
        if d.x_col[r] == d.o_col[r] {
            violations.push(GridViolation::SameCellXO { row: r + 1 });
        }
    }
    if x_ok && o_ok {
        let components = d.component_count();
        if components != 1 {
            violations.push(GridViolation::MultiComponent { components });
        }
    }
    ValidationReport { violations }
}

/// Parses either the `X:`/`O:` permutation form or the character matrix form.
pub fn parse_grid(text: &str) -> Result<GridDiagram, GridError> {
    let lines: Vec<&str> = text
        .lines()
        .flat_map(|l| l.split(['/', ';']))
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(GridError::MalformedInput("empty input".into()));
    }
    let labelled = lines.iter().any(|l| l.contains(':'));
    let (x_col, o_col) = if labelled { parse_permutations(&lines)? } else { parse_matrix(&lines)? };
    if x_col.len() != o_col.len() {
        return Err(GridError::MalformedInput(format!(
            "X has {} entries but O has {}",
            x_col.len(),
            o_col.len()
        )));
    }
    GridDiagram::new(x_col, o_col)
}

fn parse_permutations(lines: &[&str]) -> Result<(Vec<usize>, Vec<usize>), GridError> {
    let mut x = None;
    let mut o = None;
    for line in lines {
        let (label, body) = line
            .split_once(':')
            .ok_or_else(|| GridError::MalformedInput(format!("expected `X:` or `O:` line, got `{line}`")))?;
        let values = body
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| GridError::MalformedInput(format!("`{t}` is not a column index")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let slot = match label.trim() {
            "X" | "x" => &mut x,
            "O" | "o" => &mut o,
            other => return Err(GridError::MalformedInput(format!("unknown label `{other}`"))),
        };
        if slot.replace(values).is_some() {
            return Err(GridError::MalformedInput(format!("duplicate `{}` line", label.trim())));
        }
    }
    match (x, o) {
        (Some(x), Some(o)) => Ok((x, o)),
        _ => Err(GridError::MalformedInput("need both `X:` and `O:` lines".into())),
    }
}

fn parse_matrix(lines: &[&str]) -> Result<(Vec<usize>, Vec<usize>), GridError> {
    let rows: Vec<Vec<char>> = lines.iter().map(|l| l.chars().filter(|c| !c.is_whitespace()).collect()).collect();
    let g = rows.len();
    let mut x_col = vec![0; g];
    let mut o_col = vec![0; g];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != g {
            return Err(GridError::MalformedInput(format!(
                "matrix line {} has {} cells, expected {g}",
                i + 1,
                row.len()
            )));
        }
        // the first text line is the top row
        let r = g - 1 - i;
        for (c, ch) in row.iter().enumerate() {
            let slot = match ch {
                'X' | 'x' => &mut x_col[r],
                'O' | 'o' => &mut o_col[r],
                '.' => continue,
                other => return Err(GridError::MalformedInput(format!("unexpected character `{other}`"))),
            };
            if *slot != 0 {
                return Err(GridError::NotAPermutation { which: ch.to_ascii_uppercase(), size: g });
            }
            *slot = c + 1;
        }
        if x_col[r] == 0 && o_col[r] == 0 {
            return Err(GridError::MalformedInput(format!("matrix line {} has no markers", i + 1)));
        }
        if x_col[r] == 0 {
            return Err(GridError::NotAPermutation { which: 'X', size: g });
        }
        if o_col[r] == 0 {
            return Err(GridError::NotAPermutation { which: 'O', size: g });
        }
    }
    Ok((x_col, o_col))
}

/// Samples marker permutations uniformly and rejects until the result is a
/// valid single-component diagram. Deterministic for a fixed seed.
pub fn random_grid(g: usize, seed: u64) -> Result<GridDiagram, GridError> {
    if g < 2 {
        return Err(GridError::SizeTooSmall(g));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<usize> = (1..=g).collect();
    let mut o: Vec<usize> = (1..=g).collect();
    loop {
        x.shuffle(&mut rng);
        o.shuffle(&mut rng);
        let d = GridDiagram::from_parts_unchecked(x.clone(), o.clone());
        if validate_grid(&d).is_ok() {
            return Ok(d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap()
    }

    #[test]
    fn parses_both_forms() {
        let d = trefoil();
        assert_eq!(d.size(), 5);
        let m = d.to_text(GridFormat::Matrix);
        assert_eq!(parse_grid(&m).unwrap(), d);
        let p = d.to_text(GridFormat::Permutations);
        assert_eq!(parse_grid(&p).unwrap(), d);
    }

    #[test]
    fn comments_and_whitespace() {
        let d = parse_grid("# unknot\n X :  1 , 2 # first\n\nO:2,1\n").unwrap();
        assert_eq!(d.size(), 2);
        assert_eq!(d.curve_corners().len(), 4);
    }

    #[test]
    fn repeated_column_is_not_a_permutation() {
        assert_eq!(
            parse_grid("X: 1,1 / O: 2,2"),
            Err(GridError::NotAPermutation { which: 'X', size: 2 })
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_grid(""), Err(GridError::MalformedInput(_))));
        assert!(matches!(parse_grid("X: 1,a / O: 2,1"), Err(GridError::MalformedInput(_))));
        assert!(matches!(parse_grid("X: 1,2"), Err(GridError::MalformedInput(_))));
        assert!(matches!(parse_grid("X: 1,2,3 / O: 2,1"), Err(GridError::MalformedInput(_))));
        assert!(matches!(parse_grid("XO\n.Q\n"), Err(GridError::MalformedInput(_))));
    }

    #[test]
    fn g1_violates_same_cell() {
        let d = GridDiagram::from_parts_unchecked(vec![1], vec![1]);
        let report = validate_grid(&d);
        assert!(report.violations.contains(&GridViolation::SameCellXO { row: 1 }));
    }

    #[test]
    fn two_component_edit_is_flagged() {
        // X:1,2,3 / O:2,3,1 is a single cycle; swapping two O entries of a
        // 4x4 diagram into 2-cycles gives a link.
        let ok = GridDiagram::from_parts_unchecked(vec![1, 2, 3], vec![2, 3, 1]);
        assert!(validate_grid(&ok).is_ok());
        let link = GridDiagram::from_parts_unchecked(vec![1, 2, 3, 4], vec![2, 1, 4, 3]);
        assert_eq!(brute_force_cycles(&link), 2);
        assert_eq!(
            validate_grid(&link).violations,
            vec![GridViolation::MultiComponent { components: 2 }]
        );
        assert_eq!(parse_grid("X:1,2,3,4 / O:2,1,4,3"), Err(GridError::MultiComponent { components: 2 }));
    }

    /// Cycle count by walking the marker cells geometrically.
    fn brute_force_cycles(d: &GridDiagram) -> usize {
        let g = d.size();
        let mut cells: Vec<(usize, usize)> = Vec::new();
        for r in 1..=g {
            cells.push((d.x_col(r), r));
            cells.push((d.o_col(r), r));
        }
        let mut seen = vec![false; cells.len()];
        let mut cycles = 0;
        for s in 0..cells.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut i = s;
            let mut horizontal = true;
            while !seen[i] {
                seen[i] = true;
                let (c, r) = cells[i];
                i = (0..cells.len())
                    .find(|&j| j != i && if horizontal { cells[j].1 == r } else { cells[j].0 == c })
                    .unwrap();
                horizontal = !horizontal;
            }
        }
        cycles
    }

    #[test]
    fn random_grid_is_deterministic_and_valid() {
        assert_eq!(random_grid(6, 7).unwrap(), random_grid(6, 7).unwrap());
        for seed in 1..=500 {
            let d = random_grid(5, seed).unwrap();
            assert!(validate_grid(&d).is_ok());
            assert_eq!(brute_force_cycles(&d), 1);
        }
        assert_eq!(random_grid(1, 0), Err(GridError::SizeTooSmall(1)));
    }

    #[test]
    fn g2_is_a_rectangle() {
        for seed in 0..20 {
            let d = random_grid(2, seed).unwrap();
            assert_eq!(d.curve_corners().len(), 4);
            assert_ne!(d.x_col(1), d.o_col(1));
        }
    }

    #[test]
    fn thousand_samples_at_g4() {
        for seed in 0..1000 {
            let d = random_grid(4, seed).unwrap();
            assert_eq!(d.component_count(), 1);
        }
    }

    #[test]
    fn curve_follows_markers() {
        let d = trefoil();
        let corners = d.curve_corners();
        assert_eq!(corners.len(), 10);
        for w in corners.chunks(2) {
            assert_eq!(w[0].1, w[1].1);
        }
        for i in 0..corners.len() / 2 {
            let o = corners[2 * i + 1];
            let next_x = corners[(2 * i + 2) % corners.len()];
            assert_eq!(o.0, next_x.0);
        }
    }
}
