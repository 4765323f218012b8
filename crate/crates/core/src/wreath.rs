//! Wreath products `S ≀ F` and their recognition.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::{CharacterRow, CharacterTable, INTEGRALITY_TOL};
use crate::closed::closed_subset;
use crate::error::{Result, SchemeError};
use crate::linalg::least_squares;
use crate::quotient::quotient_scheme;
use crate::scheme::{RelSet, Scheme};

/// `S ≀ F` on `X × Y`. Point `(x, y)` has index `y·|X| + x`. Relation `s̄`
/// keeps index `s`; `f̄` for `f ≠ 0` gets index `rank(S) + f − 1`.
pub fn wreath_product(inner: &Scheme, outer: &Scheme) -> Scheme {
    let (nx, ny) = (inner.n(), outer.n());
    let n = nx * ny;
    let offset = inner.rank() - 1;
    let rel = (0..n * n)
        .map(|i| {
            let (p, q) = (i / n, i % n);
            let (x1, y1) = (p % nx, p / nx);
            let (x2, y2) = (q % nx, q / nx);
            if y1 == y2 {
                inner.relation(x1, x2)
            } else {
                offset + outer.relation(y1, y2)
            }
        })
        .collect();
    let product = Scheme::from_flat(n, rel).expect("wreath product of schemes is a scheme");
    debug_assert_eq!(product.rank(), inner.rank() + outer.rank() - 1);
    product
}

/// Three equivalent conditions for a wreath decomposition over `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathRecognition {
    /// Relations outside `H` are unions of full block products `xH × yH`.
    pub block_structure: bool,
    /// `|S| = |H| + |S//H| − 1`.
    pub rank_count: bool,
    /// `σ_s σ_h = σ_h σ_s = n_h σ_s` for `h ∈ H`, `s ∉ H`.
    pub absorption: bool,
}

impl WreathRecognition {
    pub fn holds(&self) -> bool {
        self.rank_count
    }
}

/// Decides whether a commutative scheme is the wreath product of its
/// subscheme on `xH` and the quotient over `H`. All three equivalent
/// conditions are evaluated and must agree. When they hold and `H` is
/// strongly normal, every `s ∉ H` must have valency `n_H`.
pub fn wreath_recognition(scheme: &Scheme, h: &RelSet) -> Result<WreathRecognition> {
    if !scheme.is_commutative() {
        return Err(SchemeError::NotCommutative);
    }
    let closed = closed_subset(scheme, h)?;
    let q = quotient_scheme(scheme, h)?;
    let rank_count = scheme.rank() == h.len() + q.quotient.rank() - 1;

    let outside: Vec<usize> = (0..scheme.rank()).filter(|s| !h.contains(s)).collect();
    let absorption = h.iter().all(|&a| {
        outside.iter().all(|&s| {
            (0..scheme.rank()).all(|k| {
                let expected = if k == s { scheme.valency(a) as u64 } else { 0 };
                scheme.lambda(s, a, k) == expected && scheme.lambda(a, s, k) == expected
            })
        })
    });

    let nb = q.blocks.len();
    let mut block_relation = vec![None; nb * nb];
    let mut block_structure = true;
    'outer: for x in 0..scheme.n() {
        for y in 0..scheme.n() {
            let (bx, by) = (q.point_block[x], q.point_block[y]);
            if bx == by {
                continue;
            }
            let s = scheme.relation(x, y);
            match block_relation[bx * nb + by] {
                None => block_relation[bx * nb + by] = Some(s),
                Some(t) if t != s => {
                    block_structure = false;
                    break 'outer;
                }
                Some(_) => {}
            }
        }
    }

    let verdict = WreathRecognition {
        block_structure,
        rank_count,
        absorption,
    };
    if !(block_structure == rank_count && rank_count == absorption) {
        return Err(SchemeError::Invariant(format!(
            "wreath recognition conditions disagree for H = {h:?}: {verdict:?}"
        )));
    }
    if rank_count && closed.strongly_normal {
        if let Some(&s) = outside.iter().find(|&&s| scheme.valency(s) != closed.order) {
            return Err(SchemeError::Invariant(format!(
                "wreath over strongly normal {h:?}: n_{s} = {} but n_H = {}",
                scheme.valency(s),
                closed.order
            )));
        }
    }
    Ok(verdict)
}

/// Character table of `S ≀ F` assembled from the factor tables:
///
/// * `χ̃(σ_s̄) = χ(σ_s)`, `χ̃(σ_f̄) = 0` for non-principal `χ ∈ Irr(S)`,
/// * `ψ̃(σ_s̄) = n_s ψ(1)`, `ψ̃(σ_f̄) = n_S ψ(σ_f)` for `ψ ∈ Irr(F)`.
///
/// Multiplicities solve `Σ m χ̃ = γ` where `γ(σ_0) = |X × Y|` and `γ` vanishes
/// on every other relation. `product` is the constructed wreath scheme the
/// rows are ordered against.
pub fn wreath_character_table(
    table_inner: &CharacterTable,
    valencies_inner: &[usize],
    order_inner: usize,
    table_outer: &CharacterTable,
    product: &Scheme,
) -> Result<CharacterTable> {
    let rs = valencies_inner.len();
    let rank = product.rank();
    let zero = Complex64::new(0.0, 0.0);
    let mut rows: Vec<(Vec<Complex64>, usize)> = Vec::new();
    for (i, chi) in table_inner.rows().iter().enumerate() {
        if i == table_inner.principal_index() {
            continue;
        }
        let mut values = chi.values.clone();
        values.resize(rank, zero);
        rows.push((values, chi.degree));
    }
    for psi in table_outer.rows() {
        let mut values: Vec<Complex64> = valencies_inner
            .iter()
            .map(|&v| psi.values[0] * v as f64)
            .collect();
        values.extend(psi.values[1..].iter().map(|v| v * order_inner as f64));
        rows.push((values, psi.degree));
    }
    if rows.iter().any(|(v, _)| v.len() != rank) || rs + table_outer.rows()[0].values.len() - 1 != rank {
        return Err(SchemeError::Invariant(
            "factor tables do not match the product rank".into(),
        ));
    }
    let k = rows.len();
    let a = DMatrix::from_fn(rank, k, |s, i| rows[i].0[s]);
    let mut gamma = DVector::from_element(rank, zero);
    gamma[0] = Complex64::new(product.n() as f64, 0.0);
    let (m, residual) = least_squares(&a, &gamma);
    if residual > INTEGRALITY_TOL * product.n() as f64 {
        return Err(SchemeError::Invariant(format!(
            "standard character is not a combination of the wreath rows (residual {residual:e})"
        )));
    }
    let mut out = Vec::with_capacity(k);
    for (i, (values, degree)) in rows.into_iter().enumerate() {
        let value = m[i].re;
        let rounded = value.round();
        if (m[i] - Complex64::new(rounded, 0.0)).norm() > INTEGRALITY_TOL || rounded < 1.0 {
            return Err(SchemeError::NonIntegralMultiplicity { index: i, value });
        }
        out.push(CharacterRow {
            values,
            degree,
            multiplicity: rounded as usize,
        });
    }
    CharacterTable::from_rows(product, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;

    #[test]
    fn wreath_with_one_point() {
        let s = Scheme::complete(3);
        assert_eq!(wreath_product(&s, &Scheme::trivial()), s);
        assert_eq!(wreath_product(&Scheme::trivial(), &s), s);
    }

    #[test]
    fn order_four_wreath() {
        let k2 = Scheme::complete(2);
        let w = wreath_product(&k2, &k2);
        assert_eq!((w.n(), w.rank()), (4, 3));
        assert_eq!(w.valencies(), &[1, 1, 2]);
        let expected = vec![
            vec![0, 1, 2, 2],
            vec![1, 0, 2, 2],
            vec![2, 2, 0, 1],
            vec![2, 2, 1, 0],
        ];
        assert_eq!(w.relation_matrix(), expected);
        let t = wreath_character_table(
            &character_table(&k2).unwrap(),
            k2.valencies(),
            k2.n(),
            &character_table(&k2).unwrap(),
            &w,
        )
        .unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.same_rows(&character_table(&w).unwrap(), 1e-9));
    }

    #[test]
    fn recognition_of_trivial_subset() {
        let s = Scheme::complete(5);
        let r = wreath_recognition(&s, &RelSet::from([0])).unwrap();
        assert!(r.holds() && r.block_structure && r.absorption);
    }

    #[test]
    fn recognition_of_constructed_wreath() {
        let w = wreath_product(&Scheme::complete(3), &Scheme::complete(2));
        assert!(wreath_recognition(&w, &RelSet::from([0, 1])).unwrap().holds());
    }
}
