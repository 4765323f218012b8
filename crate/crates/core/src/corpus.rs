//! The test corpus: all groups of order at most 16, their group schemes,
//! the order-21 flag scheme and wreath products up to a given order.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartable::INTEGRALITY_TOL;
use crate::classify::{classify_group, classify_profile, ClassificationReport, Profile};
use crate::error::Result;
use crate::group::{group_scheme, thin_scheme, GroupSpec};
use crate::scheme::Scheme;
use crate::wreath::{wreath_product, wreath_recognition};

/// Largest group order for which the corpus lists every group.
pub const MAX_LISTED_GROUP_ORDER: usize = 16;

#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub name: String,
    pub group: GroupSpec,
}

fn named(name: &str, group: GroupSpec) -> CorpusGroup {
    CorpusGroup {
        name: name.to_string(),
        group,
    }
}

fn cyclic(n: usize) -> CorpusGroup {
    named(&format!("C{n}"), GroupSpec::cyclic(n))
}

fn product(name: &str, factors: &[GroupSpec]) -> CorpusGroup {
    let group = factors[1..]
        .iter()
        .fold(factors[0].clone(), |acc, f| GroupSpec::direct_product(&acc, f));
    named(name, group)
}

/// `(C4 × C2) ⋊ C2` with the generator acting on `a^i b^j` (index `i + 4j`)
/// by the given map of exponents.
fn extension_of_c4xc2(name: &str, act: impl Fn(usize, usize) -> (usize, usize)) -> CorpusGroup {
    let normal = GroupSpec::direct_product(&GroupSpec::cyclic(4), &GroupSpec::cyclic(2));
    let alpha: Vec<usize> = (0..8)
        .map(|x| {
            let (i, j) = act(x % 4, x / 4);
            i % 4 + 4 * (j % 2)
        })
        .collect();
    named(name, GroupSpec::semidirect_cyclic(&normal, 2, &alpha).expect("valid extension"))
}

/// Every group of order at most `max_order` (capped at 16), one per
/// isomorphism class, ordered by order and then by construction.
pub fn small_groups(max_order: usize) -> Vec<CorpusGroup> {
    let c = GroupSpec::cyclic;
    let mut groups = vec![
        cyclic(1),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        product("C2xC2", &[c(2), c(2)]),
        cyclic(5),
        cyclic(6),
        named("S3", GroupSpec::dihedral(3)),
        cyclic(7),
        cyclic(8),
        product("C4xC2", &[c(4), c(2)]),
        product("C2xC2xC2", &[c(2), c(2), c(2)]),
        named("D8", GroupSpec::dihedral(4)),
        named("Q8", GroupSpec::dicyclic(2)),
        cyclic(9),
        product("C3xC3", &[c(3), c(3)]),
        cyclic(10),
        named("D10", GroupSpec::dihedral(5)),
        cyclic(11),
        cyclic(12),
        product("C6xC2", &[c(6), c(2)]),
        named("D12", GroupSpec::dihedral(6)),
        named(
            "A4",
            GroupSpec::semidirect_cyclic(
                &GroupSpec::direct_product(&c(2), &c(2)),
                3,
                &[0, 2, 3, 1],
            )
            .expect("A4"),
        ),
        named("Dic12", GroupSpec::dicyclic(3)),
        cyclic(13),
        cyclic(14),
        named("D14", GroupSpec::dihedral(7)),
        cyclic(15),
        cyclic(16),
        product("C4xC4", &[c(4), c(4)]),
        extension_of_c4xc2("(C4xC2):C2", |i, j| (i, i + j)),
        named("C4:C4", GroupSpec::metacyclic(4, 4, 3).expect("C4:C4")),
        product("C8xC2", &[c(8), c(2)]),
        named("M16", GroupSpec::metacyclic(8, 2, 5).expect("M16")),
        named("D16", GroupSpec::dihedral(8)),
        named("SD16", GroupSpec::metacyclic(8, 2, 3).expect("SD16")),
        named("Q16", GroupSpec::dicyclic(4)),
        product("C4xC2xC2", &[c(4), c(2), c(2)]),
        product("C2xD8", &[c(2), GroupSpec::dihedral(4)]),
        product("C2xQ8", &[c(2), GroupSpec::dicyclic(2)]),
        extension_of_c4xc2("C4oD8", |i, j| (i + 2 * j, j)),
        product("C2^4", &[c(2), c(2), c(2), c(2)]),
    ];
    groups.retain(|g| g.group.order() <= max_order);
    groups
}

/// Isomorphism invariant: class count, derived order, the multiset of
/// `(element order, number of square roots)` and the element orders of the
/// centre.
pub fn group_fingerprint(group: &GroupSpec) -> (usize, usize, Vec<(usize, usize)>, Vec<usize>) {
    let n = group.order();
    let mut roots = vec![0; n];
    for x in 0..n {
        roots[group.mul(x, x)] += 1;
    }
    let mut profile: Vec<(usize, usize)> = (0..n).map(|g| (group.element_order(g), roots[g])).collect();
    profile.sort_unstable();
    let classes = group.conjugacy_classes();
    let mut centre: Vec<usize> = classes
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| group.element_order(c[0]))
        .collect();
    centre.sort_unstable();
    let derived = group.derived_subgroup().iter().filter(|&&d| d).count();
    (classes.len(), derived, profile, centre)
}

/// The flag scheme of the Fano plane: 21 flags `(p, L)` with lines
/// `{i, i+1, i+3} mod 7`, listed line by line with increasing points.
pub fn fano_flag_scheme() -> Scheme {
    let lines: Vec<[usize; 3]> = (0..7)
        .map(|i| {
            let mut l = [i, (i + 1) % 7, (i + 3) % 7];
            l.sort_unstable();
            l
        })
        .collect();
    let flags: Vec<(usize, usize)> = (0..7)
        .flat_map(|l| lines[l].iter().map(move |&p| (p, l)))
        .collect();
    let on = |p: usize, l: usize| lines[l].contains(&p);
    let matrix: Vec<Vec<usize>> = flags
        .iter()
        .map(|&(p, l)| {
            flags
                .iter()
                .map(|&(q, m)| match () {
                    _ if (p, l) == (q, m) => 0,
                    _ if p == q => 1,
                    _ if l == m => 2,
                    _ if on(q, l) && !on(p, m) => 3,
                    _ if on(p, m) && !on(q, l) => 4,
                    _ => 5,
                })
                .collect()
        })
        .collect();
    Scheme::validate(&matrix).expect("flag scheme is a scheme")
}

#[derive(Debug, Clone)]
pub struct CorpusScheme {
    pub name: String,
    pub scheme: Scheme,
    pub group: Option<GroupSpec>,
}

fn scheme_entry(name: String, scheme: Scheme) -> CorpusScheme {
    CorpusScheme {
        name,
        scheme,
        group: None,
    }
}

/// Group schemes of all groups up to `max_group_order`, thin schemes of the
/// nonabelian ones, complete schemes, the order-21 flag scheme, and the
/// closure of all these under wreath products of total order at most
/// `max_order`. Wreath products equal to an earlier entry are dropped.
pub fn corpus_schemes(max_group_order: usize, max_order: usize) -> Result<Vec<CorpusScheme>> {
    let mut base = Vec::new();
    for g in small_groups(max_group_order) {
        base.push(CorpusScheme {
            name: g.name.clone(),
            scheme: group_scheme(&g.group)?,
            group: Some(g.group.clone()),
        });
        if !g.group.is_abelian() {
            base.push(scheme_entry(format!("thin({})", g.name), thin_scheme(&g.group)));
        }
    }
    for n in 3..=6 {
        base.push(scheme_entry(format!("K{n}"), Scheme::complete(n)));
    }
    base.push(scheme_entry("AS21".into(), fano_flag_scheme()));

    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut all: Vec<CorpusScheme> = Vec::new();
    for entry in base {
        seen.insert(entry.scheme.relation_matrix());
        all.push(entry);
    }
    let mut seen_factors = BTreeSet::new();
    let factors: Vec<(String, Scheme)> = all
        .iter()
        .filter(|e| e.scheme.n() > 1 && e.scheme.n() <= max_order / 2)
        .filter(|e| seen_factors.insert(e.scheme.relation_matrix()))
        .map(|e| (e.name.clone(), e.scheme.clone()))
        .collect();
    let mut frontier: Vec<(String, Scheme)> = factors.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (na, a) in &frontier {
            for (nb, b) in &factors {
                for (name, inner, outer) in [
                    (format!("{na} wr {nb}"), a, b),
                    (format!("{nb} wr {na}"), b, a),
                ] {
                    if inner.n() * outer.n() > max_order {
                        continue;
                    }
                    let w = wreath_product(inner, outer);
                    if seen.insert(w.relation_matrix()) {
                        next.push((name.clone(), w.clone()));
                        all.push(scheme_entry(name, w));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// Outcome of the structural checks on one scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> StructuralCheck {
    StructuralCheck {
        name: name.into(),
        passed,
        detail,
    }
}

/// Valency law, trace-zero law, degree sum, thin residue minimality and the
/// valency law of every recognised wreath decomposition.
pub fn structural_checks(p: &Profile) -> Vec<StructuralCheck> {
    let s = &p.scheme;
    let r = s.rank();
    let mut out = Vec::new();

    let mut bad = None;
    'valency: for g in 0..r {
        for h in 0..r {
            let sum: u64 = (0..r).map(|k| s.lambda(g, h, k) * s.valency(k) as u64).sum();
            if sum != (s.valency(g) * s.valency(h)) as u64 {
                bad = Some((g, h, sum));
                break 'valency;
            }
        }
    }
    out.push(check("valency-product", bad.is_none(), format!("{bad:?}")));

    let worst = (1..r)
        .map(|k| {
            p.table
                .rows()
                .iter()
                .map(|row| row.values[k] * row.multiplicity as f64)
                .sum::<num_complex::Complex64>()
                .norm()
        })
        .fold(0.0, f64::max);
    out.push(check("trace-zero", worst < INTEGRALITY_TOL, format!("max |Σ m χ(σ_s)| = {worst:e}")));

    let total: usize = p.table.rows().iter().map(|row| row.multiplicity * row.degree).sum();
    out.push(check("degree-sum", total == s.n(), format!("Σ m χ(1) = {total}, n = {}", s.n())));

    match p.closed_subsets() {
        Ok(subsets) => {
            out.push(check("thin-residue-minimal", true, format!("{} closed subsets", subsets.len())));
            if p.commutative {
                let mut recognised = 0;
                let mut failure = None;
                for h in subsets.iter().filter(|h| h.strongly_normal) {
                    match wreath_recognition(s, &h.members) {
                        Ok(w) if w.holds() => recognised += 1,
                        Ok(_) => {}
                        Err(e) => failure = Some(e.to_string()),
                    }
                }
                out.push(check(
                    "wreath-valency-law",
                    failure.is_none(),
                    failure.unwrap_or_else(|| format!("{recognised} wreath decompositions")),
                ));
            }
        }
        Err(crate::SchemeError::RankTooLarge { .. }) => {}
        Err(e) => out.push(check("thin-residue-minimal", false, e.to_string())),
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub n: usize,
    pub rank: usize,
    pub report: std::result::Result<ClassificationReport, String>,
    pub structural: Vec<StructuralCheck>,
}

impl CorpusEntry {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_ok_and(ClassificationReport::all_hold)
            && self.structural.iter().all(|c| c.passed)
    }
}

fn evaluate(entry: &CorpusScheme) -> CorpusEntry {
    let (report, structural) = match Profile::new(entry.scheme.clone()) {
        Ok(p) => {
            let report = match &entry.group {
                Some(g) => classify_group(g).map_err(|e| e.to_string()),
                None => Ok(classify_profile(&p)),
            };
            (report, structural_checks(&p))
        }
        Err(e) => (Err(e.to_string()), Vec::new()),
    };
    CorpusEntry {
        name: entry.name.clone(),
        n: entry.scheme.n(),
        rank: entry.scheme.rank(),
        report,
        structural,
    }
}

/// Classifies every corpus scheme in parallel; entries keep corpus order.
pub fn run_corpus(max_group_order: usize, max_order: usize) -> Result<Vec<CorpusEntry>> {
    let schemes = corpus_schemes(max_group_order, max_order)?;
    Ok(schemes.par_iter().map(evaluate).collect())
}
