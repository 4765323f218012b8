//! Complex products, closed subsets and the thin residue.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SchemeError};
use crate::group::derived_subgroup;
use crate::quotient::quotient_scheme;
use crate::scheme::{RelSet, Scheme};

/// Enumeration of closed subsets is brute force over bitsets.
pub const MAX_ENUMERATION_RANK: usize = 24;

/// A closed subset `H` of relations (`HH ⊆ H`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSubset {
    pub members: RelSet,
    /// `n_H`, the sum of member valencies.
    pub order: usize,
    pub strongly_normal: bool,
    pub thin: bool,
}

impl ClosedSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(&s)
    }

    pub fn is_subset(&self, other: &ClosedSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.members.len(), self.members.iter().copied().collect())
    }
}

/// `HK = { t : λ(h, k, t) ≠ 0 for some h ∈ H, k ∈ K }`.
pub fn complex_product(scheme: &Scheme, h: &RelSet, k: &RelSet) -> Result<RelSet> {
    if h.is_empty() || k.is_empty() {
        return Err(SchemeError::EmptyInput);
    }
    scheme.check_relations(h)?;
    scheme.check_relations(k)?;
    Ok(product_unchecked(scheme, h, k))
}

fn product_unchecked(scheme: &Scheme, h: &RelSet, k: &RelSet) -> RelSet {
    let mut out = RelSet::new();
    for &a in h {
        for &b in k {
            out.extend((0..scheme.rank()).filter(|&t| scheme.lambda(a, b, t) != 0));
        }
    }
    out
}

fn single(s: usize) -> RelSet {
    RelSet::from([s])
}

pub fn is_closed(scheme: &Scheme, set: &RelSet) -> bool {
    !set.is_empty() && product_unchecked(scheme, set, set).is_subset(set)
}

/// The smallest closed subset containing `T ∪ {0}`.
pub fn closure(scheme: &Scheme, generators: &RelSet) -> Result<ClosedSubset> {
    scheme.check_relations(generators)?;
    let mut current: RelSet = generators.clone();
    current.insert(0);
    loop {
        let mut next = product_unchecked(scheme, &current, &current);
        next.extend(current.iter().copied());
        next.extend(current.iter().map(|&s| scheme.star(s)));
        if next == current {
            break;
        }
        current = next;
    }
    Ok(make_closed(scheme, current))
}

fn make_closed(scheme: &Scheme, members: RelSet) -> ClosedSubset {
    let strongly_normal = strongly_normal_by_conjugation(scheme, &members);
    ClosedSubset {
        order: scheme.order_of(&members),
        thin: members.iter().all(|&s| scheme.valency(s) == 1),
        strongly_normal,
        members,
    }
}

/// Builds a [`ClosedSubset`] from a relation set, checking closure and
/// cross-checking the two strong-normality tests.
pub fn closed_subset(scheme: &Scheme, members: &RelSet) -> Result<ClosedSubset> {
    scheme.check_relations(members)?;
    if !members.contains(&0) || !is_closed(scheme, members) {
        return Err(SchemeError::NotClosed(members.iter().copied().collect()));
    }
    let h = make_closed(scheme, members.clone());
    let by_products = is_normal(scheme, members) && contains_all_ss_star(scheme, members);
    if by_products != h.strongly_normal {
        return Err(SchemeError::Invariant(format!(
            "strong normality of {members:?}: sHs* test gives {}, normal with ss* ⊆ H gives {by_products}",
            h.strongly_normal
        )));
    }
    Ok(h)
}

fn contains_all_ss_star(scheme: &Scheme, h: &RelSet) -> bool {
    (0..scheme.rank()).all(|s| product_unchecked(scheme, &single(s), &single(scheme.star(s))).is_subset(h))
}

/// `sH = Hs` for every relation `s`.
pub fn is_normal(scheme: &Scheme, h: &RelSet) -> bool {
    (0..scheme.rank()).all(|s| {
        product_unchecked(scheme, &single(s), h) == product_unchecked(scheme, h, &single(s))
    })
}

fn strongly_normal_by_conjugation(scheme: &Scheme, h: &RelSet) -> bool {
    (0..scheme.rank()).all(|s| {
        let sh = product_unchecked(scheme, &single(s), h);
        product_unchecked(scheme, &sh, &single(scheme.star(s))) == *h
    })
}

/// Strong normality of a closed subset: `sHs* = H` for every relation `s`.
/// The equivalent test "`H` normal and `ss* ⊆ H` for every `s`" is evaluated
/// as well and must agree.
pub fn is_strongly_normal(scheme: &Scheme, h: &RelSet) -> Result<bool> {
    Ok(closed_subset(scheme, h)?.strongly_normal)
}

/// All closed subsets, sorted by size and then lexicographically.
pub fn enumerate_closed_subsets(scheme: &Scheme) -> Result<Vec<ClosedSubset>> {
    let rank = scheme.rank();
    if rank > MAX_ENUMERATION_RANK {
        return Err(SchemeError::RankTooLarge {
            rank,
            limit: MAX_ENUMERATION_RANK,
        });
    }
    // prod[a][b] = bitmask of {a}{b}
    let prod: Vec<Vec<u32>> = (0..rank)
        .map(|a| {
            (0..rank)
                .map(|b| {
                    (0..rank)
                        .filter(|&t| scheme.lambda(a, b, t) != 0)
                        .fold(0u32, |m, t| m | (1 << t))
                })
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut members = Vec::with_capacity(rank);
    for upper in 0u32..(1u32 << (rank - 1)) {
        let mask = (upper << 1) | 1;
        members.clear();
        members.extend((0..rank).filter(|&s| mask & (1 << s) != 0));
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| prod[a][b] & !mask == 0));
        if closed {
            found.push(closed_subset(scheme, &members.iter().copied().collect())?);
        }
    }
    found.sort_by_key(ClosedSubset::sort_key);
    Ok(found)
}

/// The thin residue `O(S)`, generated by all products `ss*`.
pub fn thin_residue(scheme: &Scheme) -> ClosedSubset {
    let generators: RelSet = (0..scheme.rank())
        .flat_map(|s| product_unchecked(scheme, &single(s), &single(scheme.star(s))))
        .collect();
    closure(scheme, &generators).expect("generators are valid relations")
}

/// `S′`, the preimage of the derived subgroup of the group `S//O(S)`.
pub fn derived_closed_subset(scheme: &Scheme) -> Result<ClosedSubset> {
    let residue = thin_residue(scheme);
    let q = quotient_scheme(scheme, &residue.members)?;
    let table = q.group_table.as_ref().ok_or_else(|| {
        SchemeError::Invariant("quotient over the thin residue is not thin".into())
    })?;
    let derived = derived_subgroup(table);
    let members: RelSet = (0..scheme.rank())
        .filter(|&s| derived[q.rel_map[s]])
        .collect();
    let h = closed_subset(scheme, &members)?;
    if !h.strongly_normal {
        return Err(SchemeError::Invariant(format!(
            "derived closed subset {members:?} is not strongly normal"
        )));
    }
    let abelian = quotient_scheme(scheme, &h.members)?;
    let abelian_table = abelian.group_table.as_ref().ok_or_else(|| {
        SchemeError::Invariant("quotient over the derived closed subset is not thin".into())
    })?;
    let r = abelian_table.len();
    if !(0..r).all(|a| (0..r).all(|b| abelian_table[a][b] == abelian_table[b][a])) {
        return Err(SchemeError::Invariant(
            "quotient over the derived closed subset is not abelian".into(),
        ));
    }
    Ok(h)
}
