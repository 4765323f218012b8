#![allow(dead_code)]

pub mod oracle;

use ascheme::Scheme;

pub fn scheme(rows: &[&[usize]]) -> Scheme {
    let m: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    Scheme::validate(&m).expect("valid scheme")
}

pub fn set(items: &[usize]) -> ascheme::RelSet {
    items.iter().copied().collect()
}

use ascheme::corpus::small_groups;
use ascheme::group::{group_scheme, thin_scheme, GroupSpec};
use ascheme::wreath::wreath_product;

pub fn group(name: &str) -> GroupSpec {
    small_groups(16)
        .into_iter()
        .find(|g| g.name == name)
        .unwrap_or_else(|| panic!("no corpus group named {name}"))
        .group
}

pub fn identity(g: &GroupSpec) -> usize {
    (0..g.order()).find(|&e| g.mul(e, e) == e).unwrap()
}

/// Relation of the group scheme containing the pair `(x, e)`.
pub fn class_relation(s: &Scheme, g: &GroupSpec, x: usize) -> usize {
    s.relation(x, identity(g))
}

/// Elements of the commutator subgroup, by closing the set of commutators.
pub fn brute_derived(g: &GroupSpec) -> Vec<usize> {
    let n = g.order();
    let mut set: Vec<usize> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    loop {
        let mut grew = false;
        for i in 0..set.len() {
            for j in 0..set.len() {
                let c = g.mul(set[i], set[j]);
                if !set.contains(&c) {
                    set.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    set.sort_unstable();
    set
}

/// Small schemes used as proptest inputs: group schemes, thin schemes,
/// complete schemes and wreath products of pairs of them.
pub fn sample_schemes() -> &'static [Scheme] {
    static SAMPLES: std::sync::OnceLock<Vec<Scheme>> = std::sync::OnceLock::new();
    SAMPLES.get_or_init(build_samples)
}

fn build_samples() -> Vec<Scheme> {
    let mut base: Vec<Scheme> = vec![Scheme::trivial()];
    for n in 2..=5 {
        base.push(Scheme::complete(n));
    }
    for g in small_groups(8) {
        base.push(group_scheme(&g.group).unwrap());
        if !g.group.is_abelian() {
            base.push(thin_scheme(&g.group));
        }
    }
    let mut out = base.clone();
    for a in &base {
        for b in &base {
            if a.n() * b.n() <= 24 && a.n() > 1 && b.n() > 1 {
                out.push(wreath_product(a, b));
            }
        }
    }
    out
}
