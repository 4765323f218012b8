//! The `~` relation on relations, the group-like test and fusion `S ↦ S̃`.
//!
//! `s ~ t` when `χ(σ_s)/n_s = χ(σ_t)/n_t` for every irreducible `χ`. A scheme
//! is group-like when the number of `~` classes equals the dimension of the
//! centre of its adjacency algebra, i.e. the number of irreducible characters.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::{character_table, values_close, CharacterRow, CharacterTable, INTEGRALITY_TOL};
use crate::error::{Result, SchemeError};
use crate::scheme::{RelSet, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionPartition {
    /// Classes ordered by smallest member; class 0 is `{0}`.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl FusionPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Number of classes meeting the given relation set (`|H̃|`).
    pub fn classes_meeting(&self, set: &RelSet) -> usize {
        let mut hit: Vec<usize> = set.iter().map(|&s| self.class_of[s]).collect();
        hit.sort_unstable();
        hit.dedup();
        hit.len()
    }

    /// Image of a relation set in the fused scheme.
    pub fn image(&self, set: &RelSet) -> RelSet {
        set.iter().map(|&s| self.class_of[s]).collect()
    }
}

fn ratio_vector(table: &CharacterTable, scheme: &Scheme, s: usize) -> Vec<Complex64> {
    table
        .rows()
        .iter()
        .map(|r| r.values[s] / scheme.valency(s) as f64)
        .collect()
}

pub fn fusion_partition(scheme: &Scheme, table: &CharacterTable) -> FusionPartition {
    let ratios: Vec<Vec<Complex64>> = (0..scheme.rank())
        .map(|s| ratio_vector(table, scheme, s))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; scheme.rank()];
    for s in 0..scheme.rank() {
        match classes
            .iter()
            .position(|c| values_close(&ratios[c[0]], &ratios[s], INTEGRALITY_TOL))
        {
            Some(i) => {
                classes[i].push(s);
                class_of[s] = i;
            }
            None => {
                class_of[s] = classes.len();
                classes.push(vec![s]);
            }
        }
    }
    FusionPartition { classes, class_of }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLikeWitness {
    /// `|S̃|`
    pub fusion_classes: usize,
    /// `|Irr(S)| = dim Z(ℂS)`
    pub characters: usize,
    /// Verdict of the independent commutator criterion on character products.
    pub product_criterion: bool,
}

/// Whether every product `χψ` satisfies `χψ(σ_s σ_h) = χψ(σ_h σ_s)`, where
/// `χψ(σ_k) = χ(σ_k) ψ(σ_k) / n_k` extended linearly.
pub fn product_criterion(scheme: &Scheme, table: &CharacterTable) -> bool {
    let r = scheme.rank();
    let rows = table.rows();
    for a in rows {
        for b in rows {
            let prod: Vec<Complex64> = (0..r)
                .map(|k| a.values[k] * b.values[k] / scheme.valency(k) as f64)
                .collect();
            let scale = prod.iter().fold(1.0f64, |m, v| m.max(v.norm()));
            for s in 0..r {
                for h in s + 1..r {
                    let diff: Complex64 = (0..r)
                        .map(|k| {
                            let d = scheme.lambda(s, h, k) as f64 - scheme.lambda(h, s, k) as f64;
                            prod[k] * d
                        })
                        .sum();
                    if diff.norm() > INTEGRALITY_TOL * scale * scheme.n() as f64 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Group-like verdict from `dim Z(ℂS) = |S̃|`, cross-checked against the
/// character-product criterion.
pub fn is_group_like(scheme: &Scheme, table: &CharacterTable) -> Result<(bool, GroupLikeWitness)> {
    let partition = fusion_partition(scheme, table);
    let verdict = partition.len() == table.len();
    let witness = GroupLikeWitness {
        fusion_classes: partition.len(),
        characters: table.len(),
        product_criterion: product_criterion(scheme, table),
    };
    if witness.product_criterion != verdict {
        return Err(SchemeError::Invariant(format!(
            "group-like tests disagree: |S̃| = {}, |Irr| = {}, product criterion {}",
            witness.fusion_classes, witness.characters, witness.product_criterion
        )));
    }
    Ok((verdict, witness))
}

/// The fused scheme `(X, S̃)` with its character table.
#[derive(Debug, Clone)]
pub struct Fused {
    pub scheme: Scheme,
    pub table: CharacterTable,
    pub partition: FusionPartition,
}

/// Merges the relations of each `~` class. The fused table must consist of
/// the rows `χ̃ = χ/χ(1)` summed over classes, with `m_χ̃ = χ(1) m_χ`.
pub fn fuse(scheme: &Scheme, table: &CharacterTable, partition: &FusionPartition) -> Result<Fused> {
    if partition.len() != table.len() {
        return Err(SchemeError::NotGroupLike {
            fusion_classes: partition.len(),
            characters: table.len(),
        });
    }
    let matrix: Vec<Vec<usize>> = scheme
        .relation_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|s| partition.class_of[s]).collect())
        .collect();
    let fused = Scheme::validate(&matrix).map_err(|e| SchemeError::FusionNotAScheme(Box::new(e)))?;
    let fused_table = character_table(&fused)?;
    let expected: Vec<CharacterRow> = table
        .rows()
        .iter()
        .map(|row| {
            let d = row.degree as f64;
            CharacterRow {
                values: partition
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|&s| row.values[s]).sum::<Complex64>() / d)
                    .collect(),
                degree: 1,
                multiplicity: row.degree * row.multiplicity,
            }
        })
        .collect();
    let expected = CharacterTable::from_rows(&fused, expected)?;
    if !expected.same_rows(&fused_table, INTEGRALITY_TOL) {
        return Err(SchemeError::Invariant(
            "fused character table does not match χ/χ(1) with multiplicities χ(1)·m_χ".into(),
        ));
    }
    Ok(Fused {
        scheme: fused,
        table: fused_table,
        partition: partition.clone(),
    })
}
