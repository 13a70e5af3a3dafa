//! Alexander polynomial from a crossing diagram.
//!
//! Each crossing contributes one row of the Alexander matrix over the arcs
//! of the diagram (Fox derivatives of the Wirtinger relation, abelianized).
//! Deleting one row and one column and taking the determinant gives the
//! polynomial up to a unit `±t^k`, which normalization removes.

use serde::{Deserialize, Serialize};

use crate::error::InvariantError;
use crate::laurent::LaurentPoly;
use crate::planar::PlanarDiagram;

pub fn alexander_matrix(pd: &PlanarDiagram) -> Vec<Vec<LaurentPoly>> {
    let n = pd.crossing_count();
    let t = LaurentPoly::monomial(1, 1);
    let one = LaurentPoly::one();
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    for (row, c) in pd.crossings.iter().enumerate() {
        let (a_in, a_out, a_over) = if c.sign > 0 {
            (t.clone(), -one.clone(), &one - &t)
        } else {
            (one.clone(), -t.clone(), &t - &one)
        };
        m[row][c.under_in_arc] = &m[row][c.under_in_arc] + &a_in;
        m[row][c.under_out_arc] = &m[row][c.under_out_arc] + &a_out;
        m[row][c.over_arc] = &m[row][c.over_arc] + &a_over;
    }
    m
}

/// Fraction-free (Bareiss) determinant over the Laurent ring.
pub fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let lead = m[i][k].clone();
            for j in k + 1..n {
                let mut v = &m[i][j] * &pivot;
                if !lead.is_zero() && !m[k][j].is_zero() {
                    v = &v - &(&lead * &m[k][j]);
                }
                m[i][j] = v.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Normalized Alexander polynomial of a single-component diagram.
pub fn alexander(pd: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    if pd.components != 1 {
        return Err(InvariantError::MultiComponent);
    }
    let n = pd.crossing_count();
    if n <= 1 {
        return Ok(LaurentPoly::one());
    }
    let minor: Vec<Vec<LaurentPoly>> = alexander_matrix(pd)
        .into_iter()
        .take(n - 1)
        .map(|row| row.into_iter().take(n - 1).collect())
        .collect();
    Ok(bareiss_det(minor).normalized())
}

/// Knot determinant `|Δ(-1)|`.
pub fn determinant(p: &LaurentPoly) -> num_bigint::BigInt {
    let v = p.eval(-1);
    num_traits::Signed::abs(v.numer())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnotConsistency {
    Consistent,
    Inconsistent,
}

/// Compares two normalized Alexander polynomials. Equality is necessary for
/// two diagrams to represent the same knot type, not sufficient: distinct
/// knots can share a polynomial.
pub fn same_knot_certificate(a: &LaurentPoly, b: &LaurentPoly) -> KnotConsistency {
    if a.normalized() == b.normalized() {
        KnotConsistency::Consistent
    } else {
        KnotConsistency::Inconsistent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{parse_grid, random_grid};
    use crate::planar::grid_to_planar;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Leibniz expansion over all permutations.
    fn leibniz_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
        fn rec(m: &[Vec<LaurentPoly>], row: usize, used: &mut Vec<bool>, sign: bool) -> LaurentPoly {
            let n = m.len();
            if row == n {
                return if sign { -LaurentPoly::one() } else { LaurentPoly::one() };
            }
            let mut acc = LaurentPoly::zero();
            let mut parity = sign;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                // sign flips with each earlier unused column skipped
                if !m[row][j].is_zero() {
                    used[j] = true;
                    let sub = rec(m, row + 1, used, parity);
                    used[j] = false;
                    acc = &acc + &(&m[row][j] * &sub);
                }
                parity = !parity;
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.len()], false)
    }

    #[test]
    fn bareiss_matches_leibniz() {
        for g in 4..=7 {
            for seed in 0..30 {
                let pd = grid_to_planar(&random_grid(g, seed).unwrap());
                let n = pd.crossing_count();
                if n < 2 || n > 8 {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> =
                    alexander_matrix(&pd).into_iter().take(n - 1).map(|r| r.into_iter().take(n - 1).collect()).collect();
                assert_eq!(bareiss_det(minor.clone()), leibniz_det(&minor));
            }
        }
    }

    #[test]
    fn unknot_is_one() {
        let pd = grid_to_planar(&parse_grid("X: 1,2 / O: 2,1").unwrap());
        assert_eq!(alexander(&pd).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn torus_knots() {
        let trefoil = grid_to_planar(&parse_grid("X: 1,2,3,4,5 / O: 3,4,5,1,2").unwrap());
        let a = alexander(&trefoil).unwrap();
        assert_eq!(a, poly("t^-1 - 1 + t"));
        assert_eq!(determinant(&a), 3.into());
        let cinquefoil = grid_to_planar(&parse_grid("X: 1,2,3,4,5,6,7 / O: 3,4,5,6,7,1,2").unwrap());
        assert_eq!(alexander(&cinquefoil).unwrap(), poly("t^-2 - t^-1 + 1 - t + t^2"));
    }

    #[test]
    fn certificate() {
        let tre = poly("t^-1 - 1 + t");
        let fig8 = poly("-t^-1 + 3 - t");
        let cinq = poly("t^-2 - t^-1 + 1 - t + t^2");
        assert_eq!(same_knot_certificate(&tre, &tre), KnotConsistency::Consistent);
        assert_eq!(same_knot_certificate(&tre, &LaurentPoly::one()), KnotConsistency::Inconsistent);
        assert_eq!(same_knot_certificate(&fig8, &cinq), KnotConsistency::Inconsistent);
        assert_eq!(same_knot_certificate(&tre.shift(3), &tre), KnotConsistency::Consistent);
    }

    #[test]
    fn random_diagrams_give_knot_polynomials() {
        for seed in 0..100 {
            let pd = grid_to_planar(&random_grid(8, seed).unwrap());
            let a = alexander(&pd).unwrap();
            assert_eq!(a.eval(1), num_rational::BigRational::from_integer(1.into()));
            assert!(a.is_symmetric());
            assert!(num_integer::Integer::is_odd(&determinant(&a)));
        }
    }

    #[test]
    fn rejects_links() {
        let pd = PlanarDiagram { crossings: Vec::new(), components: 2 };
        assert_eq!(alexander(&pd), Err(InvariantError::MultiComponent));
    }
}
