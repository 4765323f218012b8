//! Irreducible characters of the adjacency algebra.
//!
//! Two independent routes are implemented. The commutative route
//! diagonalises a random combination of the left-regular matrices of the
//! `σ_s` and reads each character off a common eigenvector. The general
//! route splits the centre of the algebra into primitive central idempotents
//! `e_i` and recovers degrees, multiplicities and values from traces:
//!
//! * `χ_i(1)² = tr(e_i)` on the regular module,
//! * `m_i χ_i(1) = tr Γ_S(e_i) = n · (e_i)_0`,
//! * `m_i χ_i(σ_s) = tr Γ_S(e_i σ_s) = n · n_s · (e_i)_{s*}`.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SchemeError};
use crate::linalg::{nullspace, relative_min_gap, smallest_singular_vector, to_complex};
use crate::scheme::Scheme;

/// Equality tolerance for eigenvalues and idempotents.
pub const EIGEN_TOL: f64 = 1e-8;
/// Tolerance for structural (integrality, vanishing, equality) assertions.
pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 0x5eed_0021;
/// Number of reseeds after the first attempt.
pub const RESEED_BUDGET: u64 = 8;

/// One irreducible character: its values on the `σ_s`, its degree `χ(1)`
/// and its multiplicity `m_χ` in the standard character.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRow {
    pub values: Vec<Complex64>,
    pub degree: usize,
    pub multiplicity: usize,
}

impl CharacterRow {
    pub fn is_linear(&self) -> bool {
        self.multiplicity == 1
    }

    /// Largest `|χ(σ_s)|` over the given relations.
    pub fn max_abs_on(&self, relations: impl IntoIterator<Item = usize>) -> f64 {
        relations
            .into_iter()
            .map(|s| self.values[s].norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    rows: Vec<CharacterRow>,
    principal_index: usize,
}

fn value_key(v: &Complex64) -> (i64, i64) {
    let q = |x: f64| (x / INTEGRALITY_TOL).round() as i64;
    (q(v.re), q(v.im))
}

fn compare_values(a: &[Complex64], b: &[Complex64]) -> Ordering {
    a.iter().map(value_key).cmp(b.iter().map(value_key))
}

pub(crate) fn values_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

impl CharacterTable {
    /// Orders the rows canonically and checks the table invariants against
    /// the scheme: principal row first, then by degree, multiplicity and
    /// values.
    pub fn from_rows(scheme: &Scheme, mut rows: Vec<CharacterRow>) -> Result<CharacterTable> {
        let valencies: Vec<Complex64> = scheme
            .valencies()
            .iter()
            .map(|&v| Complex64::new(v as f64, 0.0))
            .collect();
        let principal: Vec<usize> = (0..rows.len())
            .filter(|&i| values_close(&rows[i].values, &valencies, INTEGRALITY_TOL))
            .collect();
        if principal.len() != 1 {
            return Err(SchemeError::Invariant(format!(
                "expected one principal character, found {}",
                principal.len()
            )));
        }
        let p = rows.remove(principal[0]);
        rows.sort_by(|a, b| {
            (a.degree, a.multiplicity)
                .cmp(&(b.degree, b.multiplicity))
                .then_with(|| compare_values(&a.values, &b.values))
        });
        rows.insert(0, p);
        let table = CharacterTable {
            rows,
            principal_index: 0,
        };
        table.check_invariants(scheme)?;
        Ok(table)
    }

    fn check_invariants(&self, scheme: &Scheme) -> Result<()> {
        let principal = &self.rows[self.principal_index];
        if principal.multiplicity != 1 || principal.degree != 1 {
            return Err(SchemeError::Invariant(
                "principal character must have degree and multiplicity 1".into(),
            ));
        }
        let standard: usize = self.rows.iter().map(|r| r.multiplicity * r.degree).sum();
        if standard != scheme.n() {
            return Err(SchemeError::Invariant(format!(
                "Σ m_χ χ(1) = {standard}, expected |X| = {}",
                scheme.n()
            )));
        }
        let dim: usize = self.rows.iter().map(|r| r.degree * r.degree).sum();
        if dim != scheme.rank() {
            return Err(SchemeError::Invariant(format!(
                "Σ χ(1)² = {dim}, expected rank {}",
                scheme.rank()
            )));
        }
        for s in 1..scheme.rank() {
            let trace: Complex64 = self
                .rows
                .iter()
                .map(|r| r.values[s] * r.multiplicity as f64)
                .sum();
            if trace.norm() > INTEGRALITY_TOL {
                return Err(SchemeError::Invariant(format!(
                    "Σ m_χ χ(σ_{s}) = {trace}, expected 0"
                )));
            }
        }
        for row in &self.rows {
            let d = row.values[0] - Complex64::new(row.degree as f64, 0.0);
            if d.norm() > INTEGRALITY_TOL {
                return Err(SchemeError::Invariant(format!(
                    "χ(σ_0) = {} differs from the degree {}",
                    row.values[0], row.degree
                )));
            }
        }
        if scheme.is_commutative() {
            if self.rows.len() != scheme.rank() {
                return Err(SchemeError::Invariant(format!(
                    "commutative scheme of rank {} has {} characters",
                    scheme.rank(),
                    self.rows.len()
                )));
            }
            let r = scheme.rank();
            let m = DMatrix::from_fn(r, r, |i, j| self.rows[i].values[j]);
            let sv = m.singular_values();
            let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
            if smallest <= EIGEN_TOL {
                return Err(SchemeError::Invariant(
                    "character matrix of a commutative scheme is singular".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[CharacterRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &CharacterRow {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn principal_index(&self) -> usize {
        self.principal_index
    }

    /// Index of the row whose values agree with `values` within `tol`.
    pub fn find_row(&self, values: &[Complex64], tol: f64) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| values_close(&r.values, values, tol))
    }

    /// Whether both tables contain the same (values, degree, multiplicity)
    /// rows, irrespective of order.
    pub fn same_rows(&self, other: &CharacterTable, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        self.rows.iter().all(|a| {
            let hit = other.rows.iter().enumerate().position(|(j, b)| {
                !used[j]
                    && a.degree == b.degree
                    && a.multiplicity == b.multiplicity
                    && values_close(&a.values, &b.values, tol)
            });
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

fn round_positive(value: f64, index: usize) -> Result<usize> {
    let rounded = value.round();
    if (value - rounded).abs() > INTEGRALITY_TOL || rounded < 1.0 {
        return Err(SchemeError::NonIntegralMultiplicity { index, value });
    }
    Ok(rounded as usize)
}

fn random_coefficients(rank: usize, attempt: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED.wrapping_add(attempt));
    (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Character table by whichever route fits the scheme.
pub fn character_table(scheme: &Scheme) -> Result<CharacterTable> {
    if scheme.is_commutative() {
        character_table_commutative(scheme)
    } else {
        character_table_general(scheme)
    }
}

/// Simultaneous diagonalisation of the commuting left-regular matrices.
pub fn character_table_commutative(scheme: &Scheme) -> Result<CharacterTable> {
    if !scheme.is_commutative() {
        return Err(SchemeError::NotCommutative);
    }
    let r = scheme.rank();
    let tensor = scheme.intersection_numbers();
    let regular: Vec<DMatrix<f64>> = (0..r).map(|g| tensor.left_regular(g)).collect();
    let regular_c: Vec<DMatrix<Complex64>> = regular.iter().map(to_complex).collect();
    let mut last_failure = String::new();
    for attempt in 0..=RESEED_BUDGET {
        let coeffs = random_coefficients(r, attempt);
        let mut combo = DMatrix::<f64>::zeros(r, r);
        for (g, c) in coeffs.iter().enumerate() {
            combo += &regular[g] * (c / scheme.valency(g) as f64);
        }
        let eigenvalues: Vec<Complex64> = combo.complex_eigenvalues().iter().copied().collect();
        let gap = relative_min_gap(&eigenvalues);
        if gap <= EIGEN_TOL {
            last_failure = format!("eigenvalue collision (relative gap {gap:e})");
            continue;
        }
        let combo_c = to_complex(&combo);
        let mut rows = Vec::with_capacity(r);
        for (index, theta) in eigenvalues.iter().enumerate() {
            let shifted = &combo_c - DMatrix::<Complex64>::identity(r, r) * *theta;
            let (v, _) = smallest_singular_vector(&shifted);
            let norm2 = v.dotc(&v);
            let values: Vec<Complex64> = regular_c
                .iter()
                .map(|l| v.dotc(&(l * &v)) / norm2)
                .collect();
            let weight: f64 = values
                .iter()
                .enumerate()
                .map(|(s, x)| x.norm_sqr() / scheme.valency(s) as f64)
                .sum();
            let multiplicity = round_positive(scheme.n() as f64 / weight, index)?;
            rows.push(CharacterRow {
                values,
                degree: 1,
                multiplicity,
            });
        }
        return CharacterTable::from_rows(scheme, rows);
    }
    Err(SchemeError::NumericalDegeneracy(format!(
        "simultaneous diagonalisation failed after {} attempts: {last_failure}",
        RESEED_BUDGET + 1
    )))
}

/// Primitive central idempotents of the adjacency algebra, as coefficient
/// vectors in the basis `σ_s`.
pub fn central_idempotents(scheme: &Scheme) -> Result<Vec<Vec<Complex64>>> {
    let r = scheme.rank();
    let tensor = scheme.intersection_numbers();

    // Centre: Σ_s a_s (λ(g, s, k) − λ(s, g, k)) = 0 for all g, k.
    let constraints = DMatrix::from_fn(r * r, r, |row, s| {
        let (g, k) = (row / r, row % r);
        tensor.get(g, s, k) as f64 - tensor.get(s, g, k) as f64
    });
    let centre = nullspace(&constraints, EIGEN_TOL);
    let d = centre.ncols();
    let regular: Vec<DMatrix<f64>> = (0..r).map(|g| tensor.left_regular(g)).collect();
    let unit = {
        let mut u = vec![Complex64::new(0.0, 0.0); r];
        u[0] = Complex64::new(1.0, 0.0);
        u
    };
    let mut last_failure = String::new();
    for attempt in 0..=RESEED_BUDGET {
        let coeffs = random_coefficients(d, attempt);
        let z: DVector<f64> = &centre * DVector::from_vec(coeffs);
        let mut left_z = DMatrix::<f64>::zeros(r, r);
        for (s, l) in regular.iter().enumerate() {
            left_z += l * z[s];
        }
        // Action of z on the centre in the orthonormal basis.
        let action = centre.transpose() * &left_z * &centre;
        let theta: Vec<Complex64> = action.complex_eigenvalues().iter().copied().collect();
        let gap = relative_min_gap(&theta);
        if gap <= EIGEN_TOL {
            last_failure = format!("eigenvalue collision in the centre (relative gap {gap:e})");
            continue;
        }
        let left_zc = to_complex(&left_z);
        let mut idempotents = Vec::with_capacity(d);
        for i in 0..d {
            let mut e = DVector::from_vec(unit.clone());
            for j in 0..d {
                if j != i {
                    e = (&left_zc * &e - &e * theta[j]) / (theta[i] - theta[j]);
                }
            }
            let mut e: Vec<Complex64> = e.iter().copied().collect();
            for _ in 0..2 {
                let e2 = tensor.multiply(&e, &e);
                let e3 = tensor.multiply(&e2, &e);
                e = e2.iter().zip(&e3).map(|(a, b)| a * 3.0 - b * 2.0).collect();
            }
            idempotents.push(e);
        }
        match check_idempotents(scheme, &idempotents) {
            Ok(()) => return Ok(idempotents),
            Err(msg) => last_failure = msg,
        }
    }
    Err(SchemeError::NumericalDegeneracy(format!(
        "central idempotent splitting failed after {} attempts: {last_failure}",
        RESEED_BUDGET + 1
    )))
}

fn check_idempotents(
    scheme: &Scheme,
    idempotents: &[Vec<Complex64>],
) -> std::result::Result<(), String> {
    let tensor = scheme.intersection_numbers();
    let r = scheme.rank();
    let zero = Complex64::new(0.0, 0.0);
    let mut sum = vec![zero; r];
    for (i, ei) in idempotents.iter().enumerate() {
        for (acc, x) in sum.iter_mut().zip(ei) {
            *acc += x;
        }
        for (j, ej) in idempotents.iter().enumerate() {
            let p = tensor.multiply(ei, ej);
            let expected: &[Complex64] = if i == j { ei } else { &vec![zero; r] };
            let err = p
                .iter()
                .zip(expected)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if err > INTEGRALITY_TOL {
                return Err(format!("e_{i} e_{j} deviates by {err:e}"));
            }
        }
    }
    let err = sum
        .iter()
        .enumerate()
        .map(|(s, x)| (x - Complex64::new(f64::from(u8::from(s == 0)), 0.0)).norm())
        .fold(0.0, f64::max);
    if err > INTEGRALITY_TOL {
        return Err(format!("Σ e_i deviates from the identity by {err:e}"));
    }
    Ok(())
}

/// Character table from the primitive central idempotents; works for any scheme.
pub fn character_table_general(scheme: &Scheme) -> Result<CharacterTable> {
    let r = scheme.rank();
    let n = scheme.n() as f64;
    let tensor = scheme.intersection_numbers();
    let regular_traces: Vec<f64> = (0..r)
        .map(|s| (0..r).map(|k| tensor.get(s, k, k) as f64).sum())
        .collect();
    let idempotents = central_idempotents(scheme)?;
    let mut rows = Vec::with_capacity(idempotents.len());
    for (index, e) in idempotents.iter().enumerate() {
        let trace: Complex64 = e.iter().zip(&regular_traces).map(|(x, t)| x * *t).sum();
        if trace.im.abs() > INTEGRALITY_TOL {
            return Err(SchemeError::NumericalDegeneracy(format!(
                "regular trace of e_{index} is not real: {trace}"
            )));
        }
        let degree_f = trace.re.max(0.0).sqrt();
        let degree = degree_f.round();
        if (degree_f - degree).abs() > INTEGRALITY_TOL || degree < 1.0 {
            return Err(SchemeError::NumericalDegeneracy(format!(
                "degree of e_{index} is not integral: {degree_f}"
            )));
        }
        let standard = e[0] * n;
        if standard.im.abs() > INTEGRALITY_TOL {
            return Err(SchemeError::NonIntegralMultiplicity {
                index,
                value: standard.im,
            });
        }
        let multiplicity = round_positive(standard.re / degree, index)?;
        let values = (0..r)
            .map(|s| e[scheme.star(s)] * (n * scheme.valency(s) as f64 / multiplicity as f64))
            .collect();
        rows.push(CharacterRow {
            values,
            degree: degree as usize,
            multiplicity,
        });
    }
    CharacterTable::from_rows(scheme, rows)
}
