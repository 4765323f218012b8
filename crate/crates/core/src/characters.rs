//! Restriction to closed subsets, products with characters of thin
//! quotients, and the linear/nonlinear census.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::{CharacterTable, INTEGRALITY_TOL};
use crate::closed::ClosedSubset;
use crate::error::{Result, SchemeError};
use crate::linalg::least_squares;
use crate::quotient::{QuotientMap, Subscheme};
use crate::scheme::Scheme;

/// Decomposes `χ_T` into irreducible characters of `T`.
///
/// `sub` is the subscheme on `xT` and `sub_table` its character table; the
/// restricted values `χ(σ_t)`, `t ∈ T`, are expressed as a combination of the
/// rows of `sub_table`. Returns the constituents `(row of sub_table,
/// coefficient)` with nonzero coefficient.
pub fn restrict_and_decompose(
    table: &CharacterTable,
    row: usize,
    sub: &Subscheme,
    sub_table: &CharacterTable,
) -> Result<Vec<(usize, usize)>> {
    let t = sub.relations.len();
    let k = sub_table.len();
    let a = DMatrix::from_fn(t, k, |j, i| sub_table.row(i).values[j]);
    let b = DVector::from_iterator(t, sub.relations.iter().map(|&s| table.row(row).values[s]));
    let (x, residual) = least_squares(&a, &b);
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    if residual > INTEGRALITY_TOL * scale {
        return Err(SchemeError::NonIntegralDecomposition {
            row,
            detail: format!("residual {residual:e}"),
        });
    }
    let mut out = Vec::new();
    for (i, c) in x.iter().enumerate() {
        let rounded = c.re.round();
        if (c - Complex64::new(rounded, 0.0)).norm() > INTEGRALITY_TOL || rounded < 0.0 {
            return Err(SchemeError::NonIntegralDecomposition {
                row,
                detail: format!("coefficient of constituent {i} is {c}"),
            });
        }
        if rounded > 0.0 {
            out.push((i, rounded as usize));
        }
    }
    Ok(out)
}

/// `χζ(σ_s) = χ(σ_s) ζ(σ_{s^T})` for a strongly normal `T`, matched against
/// the rows of the table. Returns the product values and the matching row.
pub fn char_product(
    table: &CharacterTable,
    row: usize,
    quotient: &QuotientMap,
    quotient_table: &CharacterTable,
    zeta: usize,
) -> Result<(Vec<Complex64>, usize)> {
    if quotient.group_table.is_none() {
        let h: Vec<usize> = quotient.double_cosets[0].iter().copied().collect();
        return Err(SchemeError::NotStronglyNormal(h));
    }
    let chi = &table.row(row).values;
    let z = &quotient_table.row(zeta).values;
    let values: Vec<Complex64> = chi
        .iter()
        .enumerate()
        .map(|(s, v)| v * z[quotient.rel_map[s]])
        .collect();
    match table.find_row(&values, INTEGRALITY_TOL) {
        Some(i) => Ok((values, i)),
        None => {
            let deviation = table
                .rows()
                .iter()
                .map(|r| {
                    r.values
                        .iter()
                        .zip(&values)
                        .map(|(a, b)| (a - b).norm())
                        .fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            Err(SchemeError::NotARow { deviation })
        }
    }
}

/// Orbits of the action of `Irr(S//T)` on `Irr(S)` by character products.
pub fn product_orbits(
    table: &CharacterTable,
    quotient: &QuotientMap,
    quotient_table: &CharacterTable,
) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; table.len()];
    let mut orbits = Vec::new();
    for row in 0..table.len() {
        if seen[row] {
            continue;
        }
        let mut orbit = Vec::new();
        for zeta in 0..quotient_table.len() {
            let (_, image) = char_product(table, row, quotient, quotient_table, zeta)?;
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        orbit.sort_unstable();
        for &i in &orbit {
            seen[i] = true;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Split of `Irr(S)` into linear (`m_χ = 1`) and nonlinear characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub linear: Vec<usize>,
    pub nonlinear: Vec<usize>,
}

/// Census of a table. Asserts that the number of linear characters is
/// `|S:S′|` and, for commutative schemes, that the linear characters are
/// exactly those equal to `n_s` on the thin residue.
pub fn nonlinear_census(
    scheme: &Scheme,
    table: &CharacterTable,
    derived: &ClosedSubset,
    thin_residue: &ClosedSubset,
) -> Result<Census> {
    let (linear, nonlinear): (Vec<usize>, Vec<usize>) =
        (0..table.len()).partition(|&i| table.row(i).is_linear());
    let index = scheme.n() / derived.order;
    if index * derived.order != scheme.n() || linear.len() != index {
        return Err(SchemeError::Invariant(format!(
            "{} linear characters but |S:S′| = {}/{}",
            linear.len(),
            scheme.n(),
            derived.order
        )));
    }
    if scheme.is_commutative() {
        for i in 0..table.len() {
            let lifted = thin_residue.members.iter().all(|&s| {
                (table.row(i).values[s] - Complex64::new(scheme.valency(s) as f64, 0.0)).norm()
                    <= INTEGRALITY_TOL
            });
            if lifted != table.row(i).is_linear() {
                return Err(SchemeError::Invariant(format!(
                    "character {i}: linear = {}, trivial on O(S) = {lifted}",
                    table.row(i).is_linear()
                )));
            }
        }
    }
    Ok(Census { linear, nonlinear })
}
