//! Executable characterisations of schemes with at most two nonlinear
//! irreducible characters.
//!
//! Every verifier computes both sides of its biconditional independently and
//! reports whether they agree. A verdict that is applicable but does not hold
//! is a failure of the characterisation on that input.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::characters::{char_product, nonlinear_census, restrict_and_decompose, Census};
use crate::chartable::{character_table, CharacterTable, INTEGRALITY_TOL};
use crate::closed::{derived_closed_subset, enumerate_closed_subsets, thin_residue, ClosedSubset};
use crate::error::{Result, SchemeError};
use crate::fusion::{fuse, fusion_partition, is_group_like, Fused, FusionPartition, GroupLikeWitness};
use crate::group::{concos_check, group_scheme, ConCosWitness, GroupSpec};
use crate::quotient::{quotient_scheme, subscheme};
use crate::scheme::{RelSet, Scheme};
use crate::wreath::{wreath_recognition, WreathRecognition};

/// Everything the verifiers need about one scheme, computed once.
#[derive(Debug)]
pub struct Profile {
    pub scheme: Scheme,
    pub table: CharacterTable,
    pub commutative: bool,
    pub thin_residue: ClosedSubset,
    pub derived: ClosedSubset,
    pub census: Census,
    pub partition: FusionPartition,
    pub group_like: bool,
    pub group_like_witness: GroupLikeWitness,
    closed_subsets: OnceLock<Result<Vec<ClosedSubset>>>,
    fused: OnceLock<Result<Option<Box<Profile>>>>,
}

impl Profile {
    pub fn new(scheme: Scheme) -> Result<Profile> {
        let table = character_table(&scheme)?;
        let commutative = scheme.is_commutative();
        let residue = thin_residue(&scheme);
        let derived = derived_closed_subset(&scheme)?;
        let census = nonlinear_census(&scheme, &table, &derived, &residue)?;
        let partition = fusion_partition(&scheme, &table);
        let (group_like, group_like_witness) = is_group_like(&scheme, &table)?;
        Ok(Profile {
            scheme,
            table,
            commutative,
            thin_residue: residue,
            derived,
            census,
            partition,
            group_like,
            group_like_witness,
            closed_subsets: OnceLock::new(),
            fused: OnceLock::new(),
        })
    }

    pub fn nonlinear_count(&self) -> usize {
        self.census.nonlinear.len()
    }

    /// All closed subsets; also checks that the thin residue is the
    /// smallest strongly normal one.
    pub fn closed_subsets(&self) -> Result<&[ClosedSubset]> {
        self.closed_subsets
            .get_or_init(|| {
                let all = enumerate_closed_subsets(&self.scheme)?;
                let mut meet = self.scheme.all_relations();
                for h in all.iter().filter(|h| h.strongly_normal) {
                    if !self.thin_residue.members.is_subset(&h.members) {
                        return Err(SchemeError::Invariant(format!(
                            "thin residue {:?} is not inside strongly normal {:?}",
                            self.thin_residue.members, h.members
                        )));
                    }
                    meet = meet.intersection(&h.members).copied().collect();
                }
                if meet != self.thin_residue.members {
                    return Err(SchemeError::Invariant(format!(
                        "intersection of strongly normal subsets {meet:?} differs from the thin residue {:?}",
                        self.thin_residue.members
                    )));
                }
                Ok(all)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Strongly normal closed subsets; falls back to the known ones when the
    /// rank is too large to enumerate.
    pub fn strongly_normal_subsets(&self) -> Result<Vec<ClosedSubset>> {
        match self.closed_subsets() {
            Ok(all) => Ok(all.iter().filter(|h| h.strongly_normal).cloned().collect()),
            Err(SchemeError::RankTooLarge { .. }) => {
                let mut known = vec![self.thin_residue.clone(), self.derived.clone()];
                let full = crate::closed::closure(&self.scheme, &self.scheme.all_relations())?;
                known.push(full);
                known.dedup_by(|a, b| a.members == b.members);
                Ok(known)
            }
            Err(e) => Err(e),
        }
    }

    /// Profile of the fused scheme `(X, S̃)`, or `None` when not group-like.
    pub fn fused(&self) -> Result<Option<&Profile>> {
        self.fused
            .get_or_init(|| {
                if !self.group_like {
                    return Ok(None);
                }
                let Fused { scheme, .. } = fuse(&self.scheme, &self.table, &self.partition)?;
                Ok(Some(Box::new(Profile::new(scheme)?)))
            })
            .as_ref()
            .map(|p| p.as_deref())
            .map_err(Clone::clone)
    }

    fn nonlinear_max_off(&self, h: &RelSet) -> f64 {
        let outside: Vec<usize> = (0..self.scheme.rank()).filter(|s| !h.contains(s)).collect();
        self.census
            .nonlinear
            .iter()
            .map(|&i| self.table.row(i).max_abs_on(outside.iter().copied()))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Commutative: one nonlinear character iff `|O(S)| = 2` and wreath over `O(S)`.
    OneNonlinearCommutative,
    /// Any scheme: one nonlinear character iff group-like and the fused scheme
    /// satisfies the commutative criterion.
    OneNonlinearGeneral,
    /// Commutative, `|S| > 3`: two nonlinear characters iff a wreath over a
    /// thin residue of size 3, or an index-2 overgroup of size 4 carrying
    /// both nonlinear characters.
    TwoNonlinearCommutative,
    /// `|Irr(S)| > 3`, `S′` symmetric: two nonlinear characters iff
    /// group-like with one of the two shapes on the fused scheme.
    TwoNonlinearSymmetricDerived,
    /// Restriction to a strongly normal subset and the prime-index dichotomy.
    CliffordPrimeIndex,
    /// Groups: Con-Cos iff exactly one nonlinear irreducible character.
    ConCos,
    /// Groups: two nonlinear irreducibles iff one of the two group shapes.
    TwoNonlinearGroup,
}

/// Which shape certified two nonlinear characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoNonlinearCase {
    /// Thin residue (or fused derived subset) of size 3 with a wreath decomposition.
    WreathOverResidue,
    /// Size-2 residue and a strongly normal `H` of size 4 and index 2 off
    /// which both nonlinear characters vanish.
    IndexTwoSupport,
}

/// Outcome of the prime-index dichotomy for one character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeIndexCase {
    /// `χ_T` irreducible and the products `χζ` are pairwise distinct.
    IrreducibleRestriction,
    /// `χ` vanishes off `T` and `χ_T` is a sum of distinct irreducibles.
    VanishesOffSubset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    NotApplicable {
        reason: String,
    },
    OneNonlinear {
        nonlinear: usize,
        group_like: bool,
        /// Thin residue of the scheme the criterion was evaluated on.
        residue: Vec<usize>,
        wreath: Option<WreathRecognition>,
    },
    TwoNonlinear {
        nonlinear: usize,
        group_like: bool,
        residue: Vec<usize>,
        wreath: Option<WreathRecognition>,
        case: Option<TwoNonlinearCase>,
        support: Option<Vec<usize>>,
        /// Largest `|φ(σ_s)|` over nonlinear `φ` and `s` outside `support`.
        max_off_support: Option<f64>,
    },
    Clifford {
        subset: Vec<usize>,
        index: usize,
        /// Constituents `(character of T, coefficient)` for each row.
        constituents: Vec<Vec<(usize, usize)>>,
        prime_cases: Option<Vec<PrimeIndexCase>>,
    },
    ConCos {
        concos: bool,
        nonlinear: usize,
        detail: ConCosWitness,
    },
    TwoNonlinearGroup {
        nonlinear: usize,
        derived_classes: usize,
        case: Option<TwoNonlinearCase>,
        normal_subgroup: Option<Vec<usize>>,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub applicable: bool,
    pub holds: bool,
    pub witness: Witness,
}

impl Verdict {
    fn new(theorem: TheoremId, lhs: bool, rhs: bool, witness: Witness) -> Verdict {
        Verdict {
            theorem,
            applicable: true,
            holds: lhs == rhs,
            witness,
        }
    }

    fn not_applicable(theorem: TheoremId, reason: impl Into<String>) -> Verdict {
        Verdict {
            theorem,
            applicable: false,
            holds: true,
            witness: Witness::NotApplicable {
                reason: reason.into(),
            },
        }
    }

    fn failed(theorem: TheoremId, error: &SchemeError) -> Verdict {
        Verdict {
            theorem,
            applicable: true,
            holds: false,
            witness: Witness::Error {
                message: error.to_string(),
            },
        }
    }

    pub fn failed_verdict(&self) -> bool {
        self.applicable && !self.holds
    }
}

fn members(h: &RelSet) -> Vec<usize> {
    h.iter().copied().collect()
}

/// Commutative schemes: exactly one nonlinear character iff `|O(S)| = 2` and
/// `S` is the wreath product over `O(S)`.
pub fn verify_one_nonlinear_commutative(p: &Profile) -> Result<Verdict> {
    if !p.commutative {
        return Err(SchemeError::NotCommutative);
    }
    let lhs = p.nonlinear_count() == 1;
    let residue = &p.thin_residue.members;
    let wreath = wreath_recognition(&p.scheme, residue)?;
    let rhs = residue.len() == 2 && wreath.holds();
    Ok(Verdict::new(
        TheoremId::OneNonlinearCommutative,
        lhs,
        rhs,
        Witness::OneNonlinear {
            nonlinear: p.nonlinear_count(),
            group_like: p.group_like,
            residue: members(residue),
            wreath: Some(wreath),
        },
    ))
}

/// Any scheme: exactly one nonlinear character iff group-like, `|O(S̃)| = 2`
/// and `S̃` is the wreath product over `O(S̃)`.
pub fn verify_one_nonlinear_general(p: &Profile) -> Result<Verdict> {
    let lhs = p.nonlinear_count() == 1;
    let (rhs, residue, wreath) = match p.fused()? {
        Some(f) => {
            let residue = &f.thin_residue.members;
            let wreath = wreath_recognition(&f.scheme, residue)?;
            (residue.len() == 2 && wreath.holds(), members(residue), Some(wreath))
        }
        None => (false, members(&p.thin_residue.members), None),
    };
    Ok(Verdict::new(
        TheoremId::OneNonlinearGeneral,
        lhs,
        rhs,
        Witness::OneNonlinear {
            nonlinear: p.nonlinear_count(),
            group_like: p.group_like,
            residue,
            wreath,
        },
    ))
}

/// Index `|H:K|` computed as `n_H / n_K` and as the number of blocks of the
/// subscheme on `0H` over `K`; both must agree.
fn relative_index(scheme: &Scheme, h: &ClosedSubset, k: &ClosedSubset) -> Result<usize> {
    let by_order = h.order / k.order;
    let sub = subscheme(scheme, 0, &h.members)?;
    let local: RelSet = k
        .members
        .iter()
        .map(|&s| sub.local_index(s).expect("K ⊆ H"))
        .collect();
    let by_blocks = quotient_scheme(&sub.scheme, &local)?.index();
    if by_order * k.order != h.order || by_blocks != by_order {
        return Err(SchemeError::Invariant(format!(
            "|H:K| for H = {:?}, K = {:?}: n_H/n_K = {}/{}, blocks = {by_blocks}",
            h.members, k.members, h.order, k.order
        )));
    }
    Ok(by_order)
}

/// Commutative schemes with `|S| > 3`: exactly two nonlinear characters iff
/// (i) `|O(S)| = 3` and wreath over `O(S)`, or (ii) `|O(S)| = 2` and some
/// strongly normal `H` with `|H| = 4`, `|H:O(S)| = 2` carries every nonlinear
/// character (they vanish off `H`).
pub fn verify_two_nonlinear_commutative(p: &Profile) -> Result<Verdict> {
    if !p.commutative {
        return Err(SchemeError::NotCommutative);
    }
    if p.scheme.rank() <= 3 {
        return Err(SchemeError::RankTooSmall {
            rank: p.scheme.rank(),
            min: 4,
        });
    }
    let lhs = p.nonlinear_count() == 2;
    let residue = &p.thin_residue;
    let wreath = wreath_recognition(&p.scheme, &residue.members)?;
    let mut case = None;
    let mut support = None;
    let mut max_off_support = None;
    if residue.len() == 3 && wreath.holds() {
        case = Some(TwoNonlinearCase::WreathOverResidue);
    } else if residue.len() == 2 {
        for h in p.closed_subsets()? {
            if !h.strongly_normal || h.len() != 4 || !residue.is_subset(h) {
                continue;
            }
            if relative_index(&p.scheme, h, residue)? != 2 {
                continue;
            }
            let off = p.nonlinear_max_off(&h.members);
            if off < INTEGRALITY_TOL {
                case = Some(TwoNonlinearCase::IndexTwoSupport);
                support = Some(members(&h.members));
                max_off_support = Some(off);
                break;
            }
        }
    }
    Ok(Verdict::new(
        TheoremId::TwoNonlinearCommutative,
        lhs,
        case.is_some(),
        Witness::TwoNonlinear {
            nonlinear: p.nonlinear_count(),
            group_like: p.group_like,
            residue: members(&residue.members),
            wreath: Some(wreath),
            case,
            support,
            max_off_support,
        },
    ))
}

/// Schemes with `|Irr(S)| > 3` and symmetric `S′`: exactly two nonlinear
/// characters iff group-like and either (i) `|S̃′| = 3` with `S̃` a wreath
/// product over it, or (ii) `|S̃′| = 2` and some strongly normal `H ⊇ S′` with
/// `|H:S′| = 2` and `|H̃| = 4` carries both nonlinear characters.
pub fn verify_two_nonlinear_symmetric_derived(p: &Profile) -> Result<Verdict> {
    let theorem = TheoremId::TwoNonlinearSymmetricDerived;
    if p.table.len() <= 3 {
        return Ok(Verdict::not_applicable(
            theorem,
            format!("|Irr(S)| = {} is not greater than 3", p.table.len()),
        ));
    }
    if !p.scheme.is_symmetric_set(&p.derived.members) {
        return Ok(Verdict::not_applicable(
            theorem,
            format!("S′ = {:?} is not symmetric", p.derived.members),
        ));
    }
    let lhs = p.nonlinear_count() == 2;
    let Some(fused) = p.fused()? else {
        return Ok(Verdict::new(
            theorem,
            lhs,
            false,
            Witness::TwoNonlinear {
                nonlinear: p.nonlinear_count(),
                group_like: false,
                residue: members(&p.derived.members),
                wreath: None,
                case: None,
                support: None,
                max_off_support: None,
            },
        ));
    };
    // The image of S′ in S̃ must be the derived closed subset of S̃.
    let image = p.partition.image(&p.derived.members);
    if image != fused.derived.members {
        return Err(SchemeError::Invariant(format!(
            "image of S′ {image:?} differs from the derived subset {:?} of the fused scheme",
            fused.derived.members
        )));
    }
    let wreath = wreath_recognition(&fused.scheme, &image)?;
    let mut case = None;
    let mut support = None;
    let mut max_off_support = None;
    if image.len() == 3 && wreath.holds() {
        case = Some(TwoNonlinearCase::WreathOverResidue);
    } else if image.len() == 2 {
        for h in p.closed_subsets()? {
            if !h.strongly_normal
                || !p.derived.is_subset(h)
                || h.order != 2 * p.derived.order
                || p.partition.classes_meeting(&h.members) != 4
            {
                continue;
            }
            let off = p.nonlinear_max_off(&h.members);
            if off < INTEGRALITY_TOL {
                case = Some(TwoNonlinearCase::IndexTwoSupport);
                support = Some(members(&h.members));
                max_off_support = Some(off);
                break;
            }
        }
    }
    Ok(Verdict::new(
        theorem,
        lhs,
        case.is_some(),
        Witness::TwoNonlinear {
            nonlinear: p.nonlinear_count(),
            group_like: true,
            residue: members(&image),
            wreath: Some(wreath),
            case,
            support,
            max_off_support,
        },
    ))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// For a strongly normal `T`: every restriction `χ_T` is `e` times a sum of
/// distinct irreducibles of `T`. When `|S:T|` is a prime `p`, exactly one of
/// the two prime-index cases must hold for every `χ`.
pub fn verify_clifford_and_prime_index(p: &Profile, t: &ClosedSubset) -> Result<Verdict> {
    if !t.strongly_normal {
        return Err(SchemeError::NotStronglyNormal(members(&t.members)));
    }
    let scheme = &p.scheme;
    let sub = subscheme(scheme, 0, &t.members)?;
    let sub_table = character_table(&sub.scheme)?;
    let quotient = quotient_scheme(scheme, &t.members)?;
    let index = quotient.index();
    let mut constituents = Vec::with_capacity(p.table.len());
    let mut equal = true;
    for row in 0..p.table.len() {
        let parts = restrict_and_decompose(&p.table, row, &sub, &sub_table)?;
        equal &= parts.windows(2).all(|w| w[0].1 == w[1].1);
        constituents.push(parts);
    }

    let prime_cases = if is_prime(index) {
        let quotient_table = character_table(&quotient.quotient)?;
        let outside: Vec<usize> = (0..scheme.rank()).filter(|s| !t.contains(*s)).collect();
        let mut cases = Vec::with_capacity(p.table.len());
        for (row, parts) in constituents.iter().enumerate() {
            let mut images = Vec::with_capacity(index);
            for zeta in 0..quotient_table.len() {
                images.push(char_product(&p.table, row, &quotient, &quotient_table, zeta)?.1);
            }
            images.sort_unstable();
            images.dedup();
            let irreducible = parts.len() == 1
                && parts[0].1 == 1
                && images.len() == index;
            let vanishing = p.table.row(row).max_abs_on(outside.iter().copied()) < INTEGRALITY_TOL
                && parts.iter().all(|&(_, c)| c == 1)
                && parts.len() <= index;
            match (irreducible, vanishing) {
                (true, false) => cases.push(PrimeIndexCase::IrreducibleRestriction),
                (false, true) => cases.push(PrimeIndexCase::VanishesOffSubset),
                (a, b) => {
                    return Err(SchemeError::NeitherCaseHolds {
                        row,
                        detail: format!(
                            "T = {:?}, p = {index}, irreducible case {a}, vanishing case {b}",
                            t.members
                        ),
                    })
                }
            }
        }
        Some(cases)
    } else {
        None
    };
    Ok(Verdict {
        theorem: TheoremId::CliffordPrimeIndex,
        applicable: true,
        holds: equal,
        witness: Witness::Clifford {
            subset: members(&t.members),
            index,
            constituents,
            prime_cases,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub rank: usize,
    pub commutative: bool,
    pub characters: usize,
    pub linear_count: usize,
    pub nonlinear_count: usize,
    pub group_like: bool,
    pub fusion_classes: usize,
    pub thin_residue: Vec<usize>,
    pub derived: Vec<usize>,
    pub verdicts: Vec<Verdict>,
}

impl ClassificationReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| !v.failed_verdict())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.failed_verdict())
    }
}

fn record(verdicts: &mut Vec<Verdict>, theorem: TheoremId, outcome: Result<Verdict>) {
    verdicts.push(match outcome {
        Ok(v) => v,
        Err(SchemeError::NotCommutative) => Verdict::not_applicable(theorem, "scheme is not commutative"),
        Err(SchemeError::RankTooSmall { rank, .. }) => {
            Verdict::not_applicable(theorem, format!("|S| = {rank} is not greater than 3"))
        }
        Err(SchemeError::RankTooLarge { rank, limit }) => Verdict::not_applicable(
            theorem,
            format!("rank {rank} exceeds the enumeration limit {limit}"),
        ),
        Err(e) => Verdict::failed(theorem, &e),
    });
}

/// Runs the census and every applicable verifier.
pub fn classify_profile(p: &Profile) -> ClassificationReport {
    let mut verdicts = Vec::new();
    record(&mut verdicts, TheoremId::OneNonlinearCommutative, verify_one_nonlinear_commutative(p));
    record(&mut verdicts, TheoremId::OneNonlinearGeneral, verify_one_nonlinear_general(p));
    record(&mut verdicts, TheoremId::TwoNonlinearCommutative, verify_two_nonlinear_commutative(p));
    record(
        &mut verdicts,
        TheoremId::TwoNonlinearSymmetricDerived,
        verify_two_nonlinear_symmetric_derived(p),
    );
    match p.strongly_normal_subsets() {
        Ok(subsets) => {
            for t in &subsets {
                record(&mut verdicts, TheoremId::CliffordPrimeIndex, verify_clifford_and_prime_index(p, t));
            }
        }
        Err(e) => record(&mut verdicts, TheoremId::CliffordPrimeIndex, Err(e)),
    }
    ClassificationReport {
        n: p.scheme.n(),
        rank: p.scheme.rank(),
        commutative: p.commutative,
        characters: p.table.len(),
        linear_count: p.census.linear.len(),
        nonlinear_count: p.nonlinear_count(),
        group_like: p.group_like,
        fusion_classes: p.partition.len(),
        thin_residue: members(&p.thin_residue.members),
        derived: members(&p.derived.members),
        verdicts,
    }
}

pub fn classify(scheme: &Scheme) -> Result<ClassificationReport> {
    Ok(classify_profile(&Profile::new(scheme.clone())?))
}

/// Group-theoretic shape for two nonlinear irreducibles: (i) `G′` holds three
/// classes and every coset `gG′` outside `G′` is a class, or (ii) `G′` holds
/// two classes and a normal `H ⊇ G′` with four classes and `|H:G′| = 2`
/// carries every nonlinear character.
fn two_nonlinear_group_shape(
    group: &GroupSpec,
    p: &Profile,
) -> Result<(Option<TwoNonlinearCase>, Option<Vec<usize>>, usize)> {
    let classes = group.conjugacy_classes();
    let derived = group.derived_subgroup();
    let derived_classes = classes.iter().filter(|c| derived[c[0]]).count();
    let derived_order = derived.iter().filter(|&&d| d).count();
    let n = group.order();
    let cosets_are_classes = (0..n).filter(|&g| !derived[g]).all(|g| {
        let mut coset: Vec<usize> = (0..n).filter(|&d| derived[d]).map(|d| group.mul(g, d)).collect();
        coset.sort_unstable();
        classes.contains(&coset)
    });
    if derived_classes == 3 && cosets_are_classes {
        return Ok((Some(TwoNonlinearCase::WreathOverResidue), None, derived_classes));
    }
    if derived_classes == 2 {
        // Normal subgroups are the closed subsets of the group scheme.
        for h in p.closed_subsets()? {
            let order: usize = h.members.iter().map(|&i| classes[i].len()).sum();
            let contains_derived = classes
                .iter()
                .enumerate()
                .filter(|(_, c)| derived[c[0]])
                .all(|(i, _)| h.contains(i));
            if h.len() == 4
                && contains_derived
                && order == 2 * derived_order
                && p.nonlinear_max_off(&h.members) < INTEGRALITY_TOL
            {
                return Ok((
                    Some(TwoNonlinearCase::IndexTwoSupport),
                    Some(members(&h.members)),
                    derived_classes,
                ));
            }
        }
    }
    Ok((None, None, derived_classes))
}

/// Classification of a group scheme, with the group-level verdicts added.
pub fn classify_group(group: &GroupSpec) -> Result<ClassificationReport> {
    let p = Profile::new(group_scheme(group)?)?;
    let mut report = classify_profile(&p);
    let (concos, detail) = concos_check(group);
    let one = p.nonlinear_count() == 1;
    report.verdicts.push(if p.table.len() >= 2 {
        Verdict::new(
            TheoremId::ConCos,
            concos,
            one,
            Witness::ConCos {
                concos,
                nonlinear: p.nonlinear_count(),
                detail,
            },
        )
    } else {
        Verdict::not_applicable(TheoremId::ConCos, "trivial group")
    });
    let verdict = if p.table.len() >= 3 {
        match two_nonlinear_group_shape(group, &p) {
            Ok((case, normal_subgroup, derived_classes)) => Verdict::new(
                TheoremId::TwoNonlinearGroup,
                p.nonlinear_count() == 2,
                case.is_some(),
                Witness::TwoNonlinearGroup {
                    nonlinear: p.nonlinear_count(),
                    derived_classes,
                    case,
                    normal_subgroup,
                },
            ),
            Err(SchemeError::RankTooLarge { rank, limit }) => Verdict::not_applicable(
                TheoremId::TwoNonlinearGroup,
                format!("rank {rank} exceeds the enumeration limit {limit}"),
            ),
            Err(e) => Verdict::failed(TheoremId::TwoNonlinearGroup, &e),
        }
    } else {
        Verdict::not_applicable(TheoremId::TwoNonlinearGroup, "fewer than three conjugacy classes")
    };
    report.verdicts.push(verdict);
    Ok(report)
}
