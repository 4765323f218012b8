//! Finite groups given by Cayley tables, their group association schemes
//! and the Con-Cos test.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SchemeError};
use crate::scheme::Scheme;

/// A finite group as a Cayley table; element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupSpec {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupSpec> {
        let order = table.len();
        if order == 0 {
            return Err(SchemeError::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(SchemeError::NotAGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(SchemeError::NotAGroup(format!(
                    "row {a} contains out-of-range element {bad}"
                )));
            }
        }
        for a in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for b in 0..order {
                seen_row[table[a][b]] = true;
                seen_col[table[b][a]] = true;
            }
            if seen_row.contains(&false) {
                return Err(SchemeError::NotAGroup(format!("row {a} is not a permutation")));
            }
            if seen_col.contains(&false) {
                return Err(SchemeError::NotAGroup(format!("column {a} is not a permutation")));
            }
        }
        for a in 0..order {
            if table[0][a] != a || table[a][0] != a {
                return Err(SchemeError::NotAGroup(format!(
                    "element 0 is not an identity for {a}"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SchemeError::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a][b] == 0).expect("rows are permutations"))
            .collect();
        Ok(GroupSpec { table, inverse })
    }

    /// Builds a group from a multiplication closure on `0..order`.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<GroupSpec> {
        Self::new((0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect())
    }

    pub fn cyclic(n: usize) -> GroupSpec {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// `A × B` with element `(a, b)` at index `a + |A|·b`.
    pub fn direct_product(a: &GroupSpec, b: &GroupSpec) -> GroupSpec {
        let (na, nb) = (a.order(), b.order());
        Self::from_fn(na * nb, |x, y| {
            a.mul(x % na, y % na) + na * b.mul(x / na, y / na)
        })
        .expect("direct product of groups")
    }

    /// `N ⋊ C_m` where the generator of `C_m` acts on `N` by the automorphism
    /// `alpha` (a permutation of the elements of `N` with `alpha^m = id`).
    /// Element `(x, j)` sits at index `x + |N|·j`.
    pub fn semidirect_cyclic(normal: &GroupSpec, m: usize, alpha: &[usize]) -> Result<GroupSpec> {
        let nn = normal.order();
        let mut powers = vec![(0..nn).collect::<Vec<_>>()];
        for j in 1..m {
            powers.push(powers[j - 1].iter().map(|&x| alpha[x]).collect());
        }
        Self::from_fn(nn * m, |p, q| {
            let (x1, j1) = (p % nn, p / nn);
            let (x2, j2) = (q % nn, q / nn);
            normal.mul(x1, powers[j1][x2]) + nn * ((j1 + j2) % m)
        })
    }

    /// `C_n ⋊ C_m` with the generator acting by `x ↦ x^r`.
    pub fn metacyclic(n: usize, m: usize, r: usize) -> Result<GroupSpec> {
        let alpha: Vec<usize> = (0..n).map(|x| (x * r) % n).collect();
        Self::semidirect_cyclic(&Self::cyclic(n), m, &alpha)
    }

    /// The dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> GroupSpec {
        Self::metacyclic(n, 2, n - 1).expect("dihedral group")
    }

    /// The dicyclic group of order `4n`: `a^{2n} = 1, x² = a^n, xax⁻¹ = a⁻¹`.
    /// Element `a^i x^j` sits at index `i + 2n·j`.
    pub fn dicyclic(n: usize) -> GroupSpec {
        let m = 2 * n;
        Self::from_fn(2 * m, |p, q| {
            let (i, j) = (p % m, p / m);
            let (k, l) = (q % m, q / m);
            let twisted = if j == 1 { (m - k) % m } else { k };
            let mut e = (i + twisted) % m;
            if j + l == 2 {
                e = (e + n) % m;
            }
            e + m * ((j + l) % 2)
        })
        .expect("dicyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, the identity class first and the rest ordered by
    /// their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inv(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Membership mask of the derived subgroup `G′`.
    pub fn derived_subgroup(&self) -> Vec<bool> {
        derived_subgroup(&self.table)
    }
}

/// Derived subgroup of the group with the given Cayley table (identity `0`):
/// the closure of all commutators under multiplication.
pub fn derived_subgroup(table: &[Vec<usize>]) -> Vec<bool> {
    let n = table.len();
    let inverse: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group table"))
        .collect();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elements = vec![0];
    for a in 0..n {
        for b in 0..n {
            let c = table[table[table[a][b]][inverse[a]]][inverse[b]];
            if !member[c] {
                member[c] = true;
                elements.push(c);
            }
        }
    }
    // Close under multiplication; finiteness makes this a subgroup.
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        let mut j = 0;
        while j < elements.len() {
            let y = elements[j];
            for p in [table[x][y], table[y][x]] {
                if !member[p] {
                    member[p] = true;
                    elements.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    member
}

/// The group association scheme: `(x, y) ∈ R_i` iff `xy⁻¹ ∈ C_i`.
pub fn group_scheme(group: &GroupSpec) -> Result<Scheme> {
    let classes = group.conjugacy_classes();
    let n = group.order();
    let mut class_of = vec![0; n];
    for (i, class) in classes.iter().enumerate() {
        for &c in class {
            class_of[c] = i;
        }
    }
    let rel = (0..n * n)
        .map(|i| class_of[group.mul(i / n, group.inv(i % n))])
        .collect();
    let scheme = Scheme::from_flat(n, rel)?;
    for (i, class) in classes.iter().enumerate() {
        if scheme.valency(i) != class.len() {
            return Err(SchemeError::Invariant(format!(
                "relation {i} has valency {} but class size {}",
                scheme.valency(i),
                class.len()
            )));
        }
    }
    if !scheme.is_commutative() {
        return Err(SchemeError::Invariant("group scheme is not commutative".into()));
    }
    Ok(scheme)
}

/// The thin scheme of a group: relation of `(x, y)` is the element `xy⁻¹`.
pub fn thin_scheme(group: &GroupSpec) -> Scheme {
    let n = group.order();
    let rel = (0..n * n).map(|i| group.mul(i / n, group.inv(i % n))).collect();
    Scheme::from_flat(n, rel).expect("thin scheme of a group is valid")
}

/// Outcome of the Con-Cos test with the data it was decided on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConCosWitness {
    pub derived_order: usize,
    pub classes_in_derived: usize,
    /// An element `g ∉ G′` whose coset `gG′` is not its conjugacy class.
    pub failing_coset: Option<usize>,
}

/// `G′` has exactly two conjugacy classes and every coset `gG′` with
/// `g ∉ G′` is a single conjugacy class.
pub fn concos_check(group: &GroupSpec) -> (bool, ConCosWitness) {
    let derived = group.derived_subgroup();
    let classes = group.conjugacy_classes();
    let classes_in_derived = classes.iter().filter(|c| derived[c[0]]).count();
    let n = group.order();
    let failing_coset = (0..n).filter(|&g| !derived[g]).find(|&g| {
        let mut coset: Vec<usize> = (0..n).filter(|&d| derived[d]).map(|d| group.mul(g, d)).collect();
        coset.sort_unstable();
        let class = classes.iter().find(|c| c.contains(&g)).expect("g lies in a class");
        coset != *class
    });
    let witness = ConCosWitness {
        derived_order: derived.iter().filter(|&&d| d).count(),
        classes_in_derived,
        failing_coset,
    };
    (classes_in_derived == 2 && failing_coset.is_none(), witness)
}
