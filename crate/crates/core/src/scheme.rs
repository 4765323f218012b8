//! Concrete association schemes.
//!
//! A [`Scheme`] stores the relation-index matrix of a partition of `X × X`
//! together with the data derived from it during validation: the transpose
//! map `s ↦ s*`, the valencies and the full tensor of intersection numbers.
//! Relation `0` is always the diagonal.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Result, SchemeError};

/// A set of relation indices, kept sorted for deterministic output.
pub type RelSet = BTreeSet<usize>;

/// All structure constants `λ(g, h, k)` of a scheme.
///
/// `λ(g, h, k)` counts the points `z` with `(x, z) ∈ g` and `(z, y) ∈ h` for
/// any fixed `(x, y) ∈ k`, so that `σ_g σ_h = Σ_k λ(g, h, k) σ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    data: Vec<u64>,
}

impl IntersectionTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize, k: usize) -> u64 {
        self.data[(g * self.rank + h) * self.rank + k]
    }

    /// The left-regular matrix of `σ_g`: entry `(k, h)` is `λ(g, h, k)`.
    pub fn left_regular(&self, g: usize) -> DMatrix<f64> {
        let r = self.rank;
        DMatrix::from_fn(r, r, |k, h| self.get(g, h, k) as f64)
    }

    /// Product of two elements of the adjacency algebra given in the basis `σ_s`.
    pub fn multiply<T>(&self, a: &[T], b: &[T]) -> Vec<T>
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + From<f64>,
    {
        let r = self.rank;
        let mut out = vec![T::default(); r];
        for g in 0..r {
            for h in 0..r {
                let ab = a[g] * b[h];
                for (k, slot) in out.iter_mut().enumerate() {
                    let l = self.get(g, h, k);
                    if l != 0 {
                        *slot = *slot + ab * T::from(l as f64);
                    }
                }
            }
        }
        out
    }
}

/// A validated association scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    n: usize,
    rank: usize,
    rel: Vec<usize>,
    star: Vec<usize>,
    valencies: Vec<usize>,
    tensor: IntersectionTensor,
}

impl Scheme {
    /// Validates a relation-index matrix against the scheme axioms.
    ///
    /// The matrix must already use `0` for the diagonal. Labels are the
    /// integers `0..rank` where `rank - 1` is the largest entry, and every
    /// label must occur.
    pub fn validate(matrix: &[Vec<usize>]) -> Result<Scheme> {
        let n = matrix.len();
        if n == 0 {
            return Err(SchemeError::NotAPartition("empty point set".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(SchemeError::NotAPartition(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let rel: Vec<usize> = matrix.iter().flatten().copied().collect();
        Self::from_flat(n, rel)
    }

    pub(crate) fn from_flat(n: usize, rel: Vec<usize>) -> Result<Scheme> {
        debug_assert_eq!(rel.len(), n * n);
        let rank = rel.iter().copied().max().unwrap_or(0) + 1;
        let at = |x: usize, y: usize| rel[x * n + y];

        // Diagonal is exactly relation 0.
        for x in 0..n {
            for y in 0..n {
                let r = at(x, y);
                if (x == y) != (r == 0) {
                    return Err(SchemeError::NotAPartition(if x == y {
                        format!("diagonal entry ({x}, {x}) carries relation {r}, expected 0")
                    } else {
                        format!("off-diagonal pair ({x}, {y}) carries the diagonal relation 0")
                    }));
                }
            }
        }
        let mut used = vec![false; rank];
        for &r in &rel {
            used[r] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(SchemeError::NotAPartition(format!(
                "relation {missing} is never used (labels must be 0..{rank})"
            )));
        }

        // Transposes.
        let mut star = vec![usize::MAX; rank];
        let mut first_seen = vec![(0, 0); rank];
        for x in 0..n {
            for y in 0..n {
                let s = at(x, y);
                let t = at(y, x);
                if star[s] == usize::MAX {
                    star[s] = t;
                    first_seen[s] = (x, y);
                } else if star[s] != t {
                    return Err(SchemeError::NoTranspose {
                        relation: s,
                        x,
                        y,
                        expected: star[s],
                        found: t,
                    });
                }
            }
        }
        for s in 0..rank {
            if star[star[s]] != s {
                let (x, y) = first_seen[s];
                return Err(SchemeError::NoTranspose {
                    relation: s,
                    x,
                    y,
                    expected: s,
                    found: star[star[s]],
                });
            }
        }

        // Intersection numbers: for every pair (x, y) count the relation pairs
        // (rel(x, z), rel(z, y)) over z and compare against the first pair seen
        // in the same relation.
        let r2 = rank * rank;
        let mut data = vec![0u64; r2 * rank];
        let mut witness: Vec<Option<(usize, usize)>> = vec![None; rank];
        let mut hist = vec![0u64; r2];
        for x in 0..n {
            for y in 0..n {
                hist.iter_mut().for_each(|c| *c = 0);
                for z in 0..n {
                    hist[at(x, z) * rank + at(z, y)] += 1;
                }
                let k = at(x, y);
                match witness[k] {
                    None => {
                        witness[k] = Some((x, y));
                        for (gh, &c) in hist.iter().enumerate() {
                            data[gh * rank + k] = c;
                        }
                    }
                    Some(first_pair) => {
                        for (gh, &c) in hist.iter().enumerate() {
                            let expected = data[gh * rank + k];
                            if expected != c {
                                return Err(SchemeError::IrregularIntersection {
                                    g: gh / rank,
                                    h: gh % rank,
                                    k,
                                    first_pair,
                                    first: expected,
                                    second_pair: (x, y),
                                    second: c,
                                });
                            }
                        }
                    }
                }
            }
        }
        let tensor = IntersectionTensor { rank, data };
        let valencies: Vec<usize> = (0..rank)
            .map(|s| tensor.get(s, star[s], 0) as usize)
            .collect();

        // Row regularity of every indicator matrix, checked directly.
        for x in 0..n {
            let mut counts = vec![0usize; rank];
            for y in 0..n {
                counts[at(x, y)] += 1;
            }
            if let Some(s) = (0..rank).find(|&s| counts[s] != valencies[s]) {
                return Err(SchemeError::Invariant(format!(
                    "row {x} has {} entries of relation {s}, valency is {}",
                    counts[s], valencies[s]
                )));
            }
        }

        Ok(Scheme {
            n,
            rank,
            rel,
            star,
            valencies,
            tensor,
        })
    }

    /// The one-point scheme.
    pub fn trivial() -> Scheme {
        Self::from_flat(1, vec![0]).expect("one-point scheme is valid")
    }

    /// The rank-2 scheme on `n ≥ 2` points (complete graph).
    pub fn complete(n: usize) -> Scheme {
        assert!(n >= 2, "complete scheme needs at least two points");
        let rel = (0..n * n).map(|i| usize::from(i / n != i % n)).collect();
        Self::from_flat(n, rel).expect("complete scheme is valid")
    }

    /// Number of points `|X|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of relations `|S|`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.rel[x * self.n + y]
    }

    pub fn relation_matrix(&self) -> Vec<Vec<usize>> {
        self.rel.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn star(&self, s: usize) -> usize {
        self.star[s]
    }

    pub fn stars(&self) -> &[usize] {
        &self.star
    }

    pub fn valency(&self, s: usize) -> usize {
        self.valencies[s]
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    /// `n_H`, the sum of valencies over a relation set.
    pub fn order_of(&self, set: &RelSet) -> usize {
        set.iter().map(|&s| self.valencies[s]).sum()
    }

    pub fn intersection_numbers(&self) -> &IntersectionTensor {
        &self.tensor
    }

    pub fn lambda(&self, g: usize, h: usize, k: usize) -> u64 {
        self.tensor.get(g, h, k)
    }

    /// The 0/1 adjacency matrix `σ_s`.
    pub fn adjacency(&self, s: usize) -> DMatrix<i64> {
        DMatrix::from_fn(self.n, self.n, |x, y| i64::from(self.relation(x, y) == s))
    }

    pub fn all_relations(&self) -> RelSet {
        (0..self.rank).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank;
        (0..r).all(|g| (0..r).all(|h| (0..r).all(|k| self.lambda(g, h, k) == self.lambda(h, g, k))))
    }

    /// True when every relation of the set is its own transpose.
    pub fn is_symmetric_set(&self, set: &RelSet) -> bool {
        set.iter().all(|&s| self.star[s] == s)
    }

    pub fn is_thin(&self) -> bool {
        self.valencies.iter().all(|&v| v == 1)
    }

    pub(crate) fn check_relations(&self, set: &RelSet) -> Result<()> {
        match set.iter().find(|&&s| s >= self.rank) {
            Some(&index) => Err(SchemeError::RelationOutOfRange {
                index,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// Multiplication table of a thin scheme, viewed as a group under the
    /// relational product. Returns `None` when the scheme is not thin.
    pub fn thin_group_table(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_thin() {
            return None;
        }
        let r = self.rank;
        let table = (0..r)
            .map(|g| {
                (0..r)
                    .map(|h| {
                        (0..r)
                            .find(|&k| self.lambda(g, h, k) != 0)
                            .expect("product of thin relations is a relation")
                    })
                    .collect()
            })
            .collect();
        Some(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_nontrivial_scheme() {
        let s = Scheme::validate(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!((s.n(), s.rank()), (2, 2));
        assert_eq!(s.valency(1), 1);
        assert_eq!(s.lambda(1, 1, 0), 1);
        assert_eq!(s.lambda(1, 1, 1), 0);
    }

    #[test]
    fn rank_two_order_three() {
        let m: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| usize::from(i != j)).collect())
            .collect();
        let s = Scheme::validate(&m).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.valency(1), 2);
        // σ_s = J − I, so σ_s² = 2I + σ_s.
        assert_eq!(s.lambda(1, 1, 1), 1);
        assert_eq!(s.lambda(1, 1, 0), 2);
        assert!(s.is_commutative());
        assert!(s.is_symmetric_set(&s.all_relations()));
    }

    #[test]
    fn identity_relation_is_neutral() {
        let s = Scheme::complete(5);
        for h in 0..2 {
            for k in 0..2 {
                assert_eq!(s.lambda(0, h, k), u64::from(h == k));
            }
        }
    }

    #[test]
    fn mismatched_labels_fail_regularity() {
        // 1* = 2 is consistent, but each row holds one of the two labels only.
        let err = Scheme::validate(&[vec![0, 1], vec![2, 0]]).unwrap_err();
        assert!(
            matches!(err, SchemeError::IrregularIntersection { k: 0, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn transposes_must_be_relations() {
        let err =
            Scheme::validate(&[vec![0, 1, 1], vec![2, 0, 1], vec![1, 1, 0]]).unwrap_err();
        assert!(matches!(err, SchemeError::NoTranspose { relation: 1, .. }), "{err:?}");
    }

    #[test]
    fn broken_diagonal() {
        let err = Scheme::validate(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, SchemeError::NotAPartition(_)));
    }

    #[test]
    fn unused_label() {
        let err = Scheme::validate(&[vec![0, 2], vec![2, 0]]).unwrap_err();
        assert!(matches!(err, SchemeError::NotAPartition(_)));
    }

    #[test]
    fn one_point_scheme() {
        let s = Scheme::trivial();
        assert_eq!((s.n(), s.rank()), (1, 1));
        assert!(s.is_thin());
        assert_eq!(s.thin_group_table(), Some(vec![vec![0]]));
    }

    #[test]
    fn tensor_reproduces_matrix_products() {
        let s = Scheme::complete(4);
        for g in 0..2 {
            for h in 0..2 {
                let prod = s.adjacency(g) * s.adjacency(h);
                let mut sum = DMatrix::<i64>::zeros(4, 4);
                for k in 0..2 {
                    sum += s.adjacency(k) * s.lambda(g, h, k) as i64;
                }
                assert_eq!(prod, sum);
            }
        }
    }
}
