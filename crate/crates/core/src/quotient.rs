//! Quotient schemes `S//H` and subschemes `(X, S)_{xH}`.

use std::collections::BTreeMap;

use crate::closed::{complex_product, is_closed};
use crate::error::{Result, SchemeError};
use crate::scheme::{RelSet, Scheme};

/// The quotient of a scheme over a closed subset `H`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    /// The blocks `xH`, ordered by their smallest point.
    pub blocks: Vec<Vec<usize>>,
    /// Block index of every point.
    pub point_block: Vec<usize>,
    /// `s ↦ s^H` as quotient relation indices.
    pub rel_map: Vec<usize>,
    /// Double coset `HsH` represented by each quotient relation.
    pub double_cosets: Vec<RelSet>,
    pub quotient: Scheme,
    /// Multiplication table of the quotient when it is thin.
    pub group_table: Option<Vec<Vec<usize>>>,
}

impl QuotientMap {
    /// `|S:H|` read off as the number of blocks.
    pub fn index(&self) -> usize {
        self.blocks.len()
    }
}

fn check_closed(scheme: &Scheme, h: &RelSet) -> Result<()> {
    scheme.check_relations(h)?;
    if !h.contains(&0) || !is_closed(scheme, h) {
        return Err(SchemeError::NotClosed(h.iter().copied().collect()));
    }
    Ok(())
}

/// `xH`: all points reached from `x` through a relation of `H`, sorted.
pub fn block_of(scheme: &Scheme, x: usize, h: &RelSet) -> Vec<usize> {
    (0..scheme.n())
        .filter(|&y| h.contains(&scheme.relation(x, y)))
        .collect()
}

/// Builds `S//H` point by point: `(xH, yH)` carries the quotient relation of
/// `s` exactly when `y ∈ xHsH`, i.e. when `s` occurs between the two blocks.
pub fn quotient_scheme(scheme: &Scheme, h: &RelSet) -> Result<QuotientMap> {
    check_closed(scheme, h)?;
    let n = scheme.n();
    let mut point_block = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if point_block[x] != usize::MAX {
            continue;
        }
        let block = block_of(scheme, x, h);
        for &y in &block {
            if point_block[y] != usize::MAX {
                return Err(SchemeError::Invariant(format!(
                    "blocks of {h:?} overlap at point {y}"
                )));
            }
            point_block[y] = blocks.len();
        }
        blocks.push(block);
    }

    // Relation sets occurring between each pair of blocks.
    let nb = blocks.len();
    let mut labels: BTreeMap<RelSet, usize> = BTreeMap::new();
    let mut between = vec![RelSet::new(); nb * nb];
    for x in 0..n {
        for y in 0..n {
            between[point_block[x] * nb + point_block[y]].insert(scheme.relation(x, y));
        }
    }
    // Label double cosets by their smallest relation so that H itself is 0.
    let mut cosets: Vec<RelSet> = between.clone();
    cosets.sort_by_key(|c| *c.iter().next().expect("nonempty"));
    cosets.dedup();
    let mut rel_map = vec![usize::MAX; scheme.rank()];
    for (label, coset) in cosets.iter().enumerate() {
        labels.insert(coset.clone(), label);
        for &s in coset {
            if rel_map[s] != usize::MAX {
                return Err(SchemeError::Invariant(format!(
                    "relation {s} lies in two double cosets of {h:?}"
                )));
            }
            rel_map[s] = label;
        }
    }
    if rel_map.contains(&usize::MAX) {
        return Err(SchemeError::Invariant("double cosets do not cover S".into()));
    }
    // Cross-check against the complex-product route HsH.
    for (s, &label) in rel_map.iter().enumerate() {
        let hs = complex_product(scheme, h, &RelSet::from([s]))?;
        let hsh = complex_product(scheme, &hs, h)?;
        if hsh != cosets[label] {
            return Err(SchemeError::Invariant(format!(
                "HsH for s = {s} is {hsh:?} by products but {:?} pointwise",
                cosets[label]
            )));
        }
    }

    let rel: Vec<usize> = between.iter().map(|set| labels[set]).collect();
    let quotient = Scheme::from_flat(nb, rel)?;
    let group_table = quotient.thin_group_table();
    Ok(QuotientMap {
        blocks,
        point_block,
        rel_map,
        double_cosets: cosets,
        quotient,
        group_table,
    })
}

/// The subscheme on `xH`.
#[derive(Debug, Clone)]
pub struct Subscheme {
    /// The points of `xH` in increasing order.
    pub points: Vec<usize>,
    /// Parent relation of each subscheme relation (the members of `H` in order).
    pub relations: Vec<usize>,
    pub scheme: Scheme,
}

impl Subscheme {
    /// Subscheme relation index of a parent relation in `H`.
    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.relations.iter().position(|&s| s == parent)
    }
}

/// `(X, S)_{xH}` with relations `s ∩ (xH × xH)` for `s ∈ H`.
pub fn subscheme(scheme: &Scheme, x: usize, h: &RelSet) -> Result<Subscheme> {
    check_closed(scheme, h)?;
    if x >= scheme.n() {
        return Err(SchemeError::PointOutOfRange {
            point: x,
            n: scheme.n(),
        });
    }
    let points = block_of(scheme, x, h);
    let relations: Vec<usize> = h.iter().copied().collect();
    let mut local = vec![usize::MAX; scheme.rank()];
    for (i, &s) in relations.iter().enumerate() {
        local[s] = i;
    }
    let m = points.len();
    let rel: Vec<usize> = (0..m * m)
        .map(|i| local[scheme.relation(points[i / m], points[i % m])])
        .collect();
    let sub = Scheme::from_flat(m, rel)?;
    if sub.rank() != relations.len() {
        return Err(SchemeError::Invariant(format!(
            "subscheme on {m} points has rank {}, expected {}",
            sub.rank(),
            relations.len()
        )));
    }
    Ok(Subscheme {
        points,
        relations,
        scheme: sub,
    })
}
