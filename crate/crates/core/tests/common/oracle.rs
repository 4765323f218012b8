//! Brute-force group characters from the regular representation of ℂG.
//!
//! The class sums `K_i` act on ℂG by left multiplication and commute. A
//! random Hermitian combination of them has the isotypic components of ℂG as
//! eigenspaces; a component of dimension `d` belongs to a character of degree
//! `√d`, and `K_i` acts on it as the scalar `ω_χ(K_i) = χ(g_i)|C_i|/χ(1)`.
//! Complex eigenproblems are solved through the real embedding.

use ascheme::group::GroupSpec;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One irreducible character of the group seen through the class algebra.
#[derive(Debug, Clone)]
pub struct OracleCharacter {
    pub degree: usize,
    /// `ω_χ(K_c)` indexed by class (classes in [`OracleTable::classes`] order).
    pub central: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct OracleTable {
    pub classes: Vec<Vec<usize>>,
    pub characters: Vec<OracleCharacter>,
}

impl OracleTable {
    pub fn nonlinear(&self) -> usize {
        self.characters.iter().filter(|c| c.degree > 1).count()
    }
}

fn brute_classes(g: &GroupSpec) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|y| g.mul(g.mul(y, x), g.inv(y))).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class);
    }
    classes
}

fn realify(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let m = a.nrows();
    DMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let z = a[(i % m, j % m)];
        match (i < m, j < m) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

pub fn group_characters(g: &GroupSpec) -> OracleTable {
    let n = g.order();
    let classes = brute_classes(g);
    // (K_c)_{y, x} = 1 iff y = c' x for some c' in class c.
    let sums: Vec<DMatrix<Complex64>> = classes
        .iter()
        .map(|class| {
            let mut k = DMatrix::zeros(n, n);
            for x in 0..n {
                for &c in class {
                    k[(g.mul(c, x), x)] += Complex64::new(1.0, 0.0);
                }
            }
            k
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00a1_1ce0);
    let i = Complex64::new(0.0, 1.0);
    let mut hermitian = DMatrix::<Complex64>::zeros(n, n);
    for k in &sums {
        let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let adj = k.adjoint();
        hermitian += (k + &adj) * Complex64::new(a, 0.0) + (k - &adj) * (i * b);
    }
    let eigen = realify(&hermitian).symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));

    let mut characters = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let lambda = eigen.eigenvalues[order[start]];
        let mut end = start + 1;
        while end < order.len() && (eigen.eigenvalues[order[end]] - lambda).abs() < 1e-6 {
            end += 1;
        }
        // Real cluster dimension is twice the complex one.
        let dim = (end - start) / 2;
        let degree = (dim as f64).sqrt().round() as usize;
        assert_eq!(degree * degree, dim, "isotypic component of non-square dimension {dim}");
        let col = eigen.eigenvectors.column(order[start]);
        let v = DVector::from_fn(n, |r, _| Complex64::new(col[r], col[r + n]));
        let norm = v.dotc(&v);
        let central = sums.iter().map(|k| v.dotc(&(k * &v)) / norm).collect();
        characters.push(OracleCharacter { degree, central });
        start = end;
    }
    let total: usize = characters.iter().map(|c| c.degree * c.degree).sum();
    assert_eq!(total, n, "degrees squared must sum to |G|");
    assert_eq!(characters.len(), classes.len(), "one character per class");
    OracleTable { classes, characters }
}

fn identity(g: &GroupSpec) -> usize {
    (0..g.order()).find(|&e| g.mul(e, e) == e).expect("a group has an identity")
}

/// Compares the character table of the group scheme with the oracle.
/// Every oracle character must match a distinct row whose value on the
/// relation of each class is `ω_χ(K_c)` and whose multiplicity is `χ(1)²`.
pub fn compare_group_scheme(g: &GroupSpec, tol: f64) -> Result<(), String> {
    let scheme = ascheme::group::group_scheme(g).map_err(|e| e.to_string())?;
    let table = ascheme::chartable::character_table(&scheme).map_err(|e| e.to_string())?;
    let oracle = group_characters(g);
    let e = identity(g);
    if table.len() != oracle.characters.len() {
        return Err(format!("{} rows vs {} oracle characters", table.len(), oracle.characters.len()));
    }
    let rel_of_class: Vec<usize> = oracle.classes.iter().map(|c| scheme.relation(c[0], e)).collect();
    let mut used = vec![false; table.len()];
    for (k, chi) in oracle.characters.iter().enumerate() {
        let found = (0..table.len()).find(|&r| {
            !used[r]
                && rel_of_class
                    .iter()
                    .zip(&chi.central)
                    .all(|(&s, w)| (table.row(r).values[s] - w).norm() <= tol)
        });
        let Some(r) = found else {
            return Err(format!("oracle character {k} (degree {}) has no matching row", chi.degree));
        };
        used[r] = true;
        let row = table.row(r);
        if row.multiplicity != chi.degree * chi.degree {
            return Err(format!(
                "row {r}: multiplicity {} but chi(1)^2 = {}",
                row.multiplicity,
                chi.degree * chi.degree
            ));
        }
    }
    Ok(())
}
