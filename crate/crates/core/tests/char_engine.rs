mod common;

use ascheme::characters::{char_product, nonlinear_census, product_orbits, restrict_and_decompose};
use ascheme::chartable::{
    central_idempotents, character_table, character_table_commutative, character_table_general, CharacterTable,
};
use ascheme::closed::{closure, derived_closed_subset, thin_residue};
use ascheme::corpus::{corpus_schemes, fano_flag_scheme, small_groups};
use ascheme::fusion::{fuse, fusion_partition, is_group_like};
use ascheme::group::{group_scheme, thin_scheme};
use ascheme::quotient::{quotient_scheme, subscheme};
use ascheme::wreath::wreath_product;
use ascheme::Scheme;
use common::oracle::{compare_group_scheme, group_characters};
use common::{group, sample_schemes, set};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-6;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn assert_row(table: &CharacterTable, i: usize, values: &[f64], multiplicity: usize) {
    let row = table.row(i);
    assert_eq!(row.multiplicity, multiplicity, "row {i}");
    assert_eq!(row.values.len(), values.len());
    for (v, &w) in row.values.iter().zip(values) {
        assert!((v - c(w)).norm() < TOL, "row {i}: {:?} vs {values:?}", row.values);
    }
}

fn as42() -> Scheme {
    wreath_product(&fano_flag_scheme(), &Scheme::complete(2))
}

#[test]
fn rank_two_tables() {
    for n in 2..8 {
        let t = character_table(&Scheme::complete(n)).unwrap();
        assert_eq!(t.len(), 2);
        assert_row(&t, 0, &[1.0, (n - 1) as f64], 1);
        assert_row(&t, 1, &[1.0, -1.0], n - 1);
    }
}

#[test]
fn order_21_table() {
    let t = character_table(&fano_flag_scheme()).unwrap();
    assert_eq!(t.len(), 3);
    assert_row(&t, 0, &[1.0, 2.0, 2.0, 4.0, 4.0, 8.0], 1);
    assert_row(&t, 1, &[1.0, -1.0, -1.0, 1.0, 1.0, -1.0], 8);
    assert_row(&t, 2, &[2.0, 1.0, 1.0, -2.0, -2.0, 0.0], 6);
}

#[test]
fn order_42_table() {
    let t = character_table(&as42()).unwrap();
    assert_eq!(t.len(), 4);
    let column6: Vec<f64> = t.rows().iter().map(|r| r.values[6].re).collect();
    let mults: Vec<usize> = t.rows().iter().map(|r| r.multiplicity).collect();
    let mut pairs: Vec<(usize, i64)> = mults.iter().zip(&column6).map(|(&m, &v)| (m, v.round() as i64)).collect();
    pairs.sort_unstable();
    assert_eq!(pairs, vec![(1, -21), (1, 21), (12, 0), (16, 0)]);
}

#[test]
fn central_idempotents_are_orthogonal_and_sum_to_one() {
    for s in [fano_flag_scheme(), thin_scheme(&group("S3")), thin_scheme(&group("Q8"))] {
        let es = central_idempotents(&s).unwrap();
        let tensor = s.intersection_numbers();
        let scale = s.n() as f64;
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let p = tensor.multiply(a, b);
                for k in 0..s.rank() {
                    let expected = if i == j { a[k] } else { c(0.0) };
                    assert!((p[k] - expected).norm() < TOL * scale, "e_{i} e_{j}");
                }
            }
        }
        for k in 0..s.rank() {
            let sum: Complex64 = es.iter().map(|e| e[k]).sum();
            let expected = if k == 0 { c(1.0) } else { c(0.0) };
            assert!((sum - expected).norm() < TOL);
        }
    }
}

#[test]
fn commutative_and_general_paths_agree() {
    let mut checked = 0;
    for entry in corpus_schemes(8, 24).unwrap() {
        if !entry.scheme.is_commutative() {
            continue;
        }
        let a = character_table_commutative(&entry.scheme).unwrap();
        let b = character_table_general(&entry.scheme).unwrap();
        assert!(a.same_rows(&b, TOL), "{}", entry.name);
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn group_schemes_match_the_character_oracle() {
    let groups = small_groups(16);
    assert_eq!(groups.len(), 42);
    for g in groups {
        compare_group_scheme(&g.group, TOL).unwrap_or_else(|e| panic!("{}: {e}", g.name));
    }
}

#[test]
fn oracle_degrees_for_known_groups() {
    let degrees = |name: &str| {
        let mut d: Vec<usize> = group_characters(&group(name)).characters.iter().map(|c| c.degree).collect();
        d.sort_unstable();
        d
    };
    assert_eq!(degrees("S3"), vec![1, 1, 2]);
    assert_eq!(degrees("Q8"), vec![1, 1, 1, 1, 2]);
    assert_eq!(degrees("A4"), vec![1, 1, 1, 3]);
    assert_eq!(degrees("D10"), vec![1, 1, 2, 2]);
}

#[test]
fn restriction_of_principal_and_to_the_diagonal() {
    let s = fano_flag_scheme();
    let t = character_table(&s).unwrap();
    let residue = thin_residue(&s);
    let sub = subscheme(&s, 0, &residue.members).unwrap();
    let sub_table = character_table(&sub.scheme).unwrap();
    let p = t.principal_index();
    assert_eq!(
        restrict_and_decompose(&t, p, &sub, &sub_table).unwrap(),
        vec![(sub_table.principal_index(), 1)]
    );

    let point = subscheme(&s, 0, &set(&[0])).unwrap();
    let point_table = character_table(&point.scheme).unwrap();
    for i in 0..t.len() {
        assert_eq!(
            restrict_and_decompose(&t, i, &point, &point_table).unwrap(),
            vec![(0, t.row(i).degree)]
        );
    }
}

#[test]
fn order_21_degree_two_character_restricts_with_equal_coefficients() {
    let s = fano_flag_scheme();
    let t = character_table(&s).unwrap();
    let residue = thin_residue(&s);
    let sub = subscheme(&s, 0, &residue.members).unwrap();
    let sub_table = character_table(&sub.scheme).unwrap();
    let row = (0..t.len()).find(|&i| t.row(i).degree == 2).unwrap();
    let parts = restrict_and_decompose(&t, row, &sub, &sub_table).unwrap();
    assert!(!parts.is_empty());
    assert!(parts.iter().all(|&(_, e)| e == parts[0].1), "{parts:?}");
    // Recombine and compare with the restricted values.
    for (j, &parent) in sub.relations.iter().enumerate() {
        let sum: Complex64 = parts.iter().map(|&(k, e)| sub_table.row(k).values[j] * e as f64).sum();
        assert!((sum - t.row(row).values[parent]).norm() < TOL);
    }
}

#[test]
fn character_product_examples() {
    let s = group_scheme(&group("C2")).unwrap();
    let t = character_table(&s).unwrap();
    let q = quotient_scheme(&s, &set(&[0])).unwrap();
    let qt = character_table(&q.quotient).unwrap();
    let nonprincipal = 1 - t.principal_index();
    let zeta = 1 - qt.principal_index();
    let (_, image) = char_product(&t, nonprincipal, &q, &qt, zeta).unwrap();
    assert_eq!(image, t.principal_index());

    let s = fano_flag_scheme();
    let t = character_table(&s).unwrap();
    let residue = thin_residue(&s);
    let q = quotient_scheme(&s, &residue.members).unwrap();
    let qt = character_table(&q.quotient).unwrap();
    for i in 0..t.len() {
        assert_eq!(char_product(&t, i, &q, &qt, qt.principal_index()).unwrap().1, i);
    }
}

#[test]
fn fixed_row_under_products_with_the_derived_quotient() {
    let s = as42();
    let t = character_table(&s).unwrap();
    let derived = derived_closed_subset(&s).unwrap();
    let q = quotient_scheme(&s, &derived.members).unwrap();
    let qt = character_table(&q.quotient).unwrap();
    let orbits = product_orbits(&t, &q, &qt).unwrap();
    let big = (0..t.len()).find(|&i| t.row(i).multiplicity == 16).unwrap();
    assert!(orbits.contains(&vec![big]), "{orbits:?}");
}

#[test]
fn orbit_sizes_divide_the_quotient_order() {
    for s in sample_schemes() {
        let t = character_table(s).unwrap();
        let derived = derived_closed_subset(s).unwrap();
        let q = quotient_scheme(s, &derived.members).unwrap();
        assert!(q.quotient.is_thin() && q.quotient.is_commutative());
        let qt = character_table(&q.quotient).unwrap();
        let orbits = product_orbits(&t, &q, &qt).unwrap();
        let covered: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(covered, t.len());
        for o in &orbits {
            assert_eq!(q.quotient.n() % o.len(), 0, "{orbits:?}");
        }
    }
}

#[test]
fn group_likeness_examples() {
    for s in [Scheme::complete(4), group_scheme(&group("D8")).unwrap()] {
        let t = character_table(&s).unwrap();
        assert!(is_group_like(&s, &t).unwrap().0);
        let p = fusion_partition(&s, &t);
        assert!(p.is_discrete());
        assert_eq!(fuse(&s, &t, &p).unwrap().scheme, s);
    }

    let s = fano_flag_scheme();
    let t = character_table(&s).unwrap();
    let (like, witness) = is_group_like(&s, &t).unwrap();
    assert!(!like);
    assert_eq!((witness.fusion_classes, witness.characters), (4, 3));
    let p = fusion_partition(&s, &t);
    assert_eq!(p.classes, vec![vec![0], vec![1, 2], vec![3, 4], vec![5]]);

    let s = as42();
    let t = character_table(&s).unwrap();
    assert!(!is_group_like(&s, &t).unwrap().0);
}

#[test]
fn fusing_a_thin_scheme_gives_the_group_scheme() {
    for name in ["S3", "D8", "Q8", "A4"] {
        let g = group(name);
        let thin = thin_scheme(&g);
        let t = character_table(&thin).unwrap();
        assert!(!thin.is_commutative());
        assert!(is_group_like(&thin, &t).unwrap().0);
        let fused = fuse(&thin, &t, &fusion_partition(&thin, &t)).unwrap();
        assert!(fused.scheme.is_commutative());
        assert_eq!(fused.scheme.rank(), t.len());
        let gs = group_scheme(&g).unwrap();
        // Same partition of pairs up to relabelling.
        let n = g.order();
        let mut label = vec![usize::MAX; fused.scheme.rank()];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (fused.scheme.relation(x, y), gs.relation(x, y));
                if label[a] == usize::MAX {
                    label[a] = b;
                }
                assert_eq!(label[a], b, "{name}");
            }
        }
    }
}

#[test]
fn census_examples() {
    let census = |s: &Scheme| {
        let t = character_table(s).unwrap();
        let c = nonlinear_census(s, &t, &derived_closed_subset(s).unwrap(), &thin_residue(s)).unwrap();
        let mut m: Vec<usize> = c.nonlinear.iter().map(|&i| t.row(i).multiplicity).collect();
        m.sort_unstable();
        (c.linear.len(), m)
    };
    assert_eq!(census(&fano_flag_scheme()), (1, vec![6, 8]));
    assert_eq!(census(&as42()), (2, vec![12, 16]));
    for n in 3..7 {
        assert_eq!(census(&Scheme::complete(n)), (1, vec![n - 1]));
    }
}

#[test]
fn closure_of_fano_residue_generators() {
    let s = fano_flag_scheme();
    let residue = thin_residue(&s);
    assert_eq!(closure(&s, &residue.members).unwrap(), residue);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_and_degree_laws(i in 0..sample_schemes().len()) {
        let s = &sample_schemes()[i];
        let t = character_table(s).unwrap();
        for k in 1..s.rank() {
            let trace: Complex64 = t.rows().iter().map(|r| r.values[k] * r.multiplicity as f64).sum();
            prop_assert!(trace.norm() < TOL);
        }
        let total: usize = t.rows().iter().map(|r| r.multiplicity * r.degree).sum();
        prop_assert_eq!(total, s.n());
        let dim: usize = t.rows().iter().map(|r| r.degree * r.degree).sum();
        prop_assert_eq!(dim, s.rank());
    }
}
