//! Exhaustive oracles on small finite gyrogroups, computed directly from
//! the Cayley table without going through the library's derived operations.

use std::collections::BTreeSet;

use gyrokit::prenorm::micro_assoc_check;
use gyrokit::{
    check_axioms, check_homogeneity, check_identities, check_partition, homogeneity_translate, is_l_subgyrogroup,
    is_subgyrogroup, left_cosets, transport_element, ElemSet, FiniteTable, GyroError, Gyrogroup, Law, SampleSpec,
};

fn load(name: &str) -> FiniteTable {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    FiniteTable::table_load(&std::fs::read(path).unwrap()).unwrap()
}

fn rows(t: &FiniteTable) -> Vec<Vec<usize>> {
    (0..t.order()).map(|i| t.row(i).to_vec()).collect()
}

/// ⊖a by search: the b with b ⊕ a = 0.
fn oracle_inv(r: &[Vec<usize>], a: usize) -> usize {
    (0..r.len()).find(|&b| r[b][a] == 0).unwrap()
}

/// gyr[a, b](z) solved from gyroassociativity: the unique w with
/// (a ⊕ b) ⊕ w = a ⊕ (b ⊕ z).
fn oracle_gyr(r: &[Vec<usize>], a: usize, b: usize, z: usize) -> usize {
    let target = r[a][r[b][z]];
    let ab = r[a][b];
    let ws: Vec<usize> = (0..r.len()).filter(|&w| r[ab][w] == target).collect();
    assert_eq!(ws.len(), 1, "left translation by {ab} is not a bijection");
    ws[0]
}

fn subsets_with_zero(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << (n - 1)).map(move |mask| {
        std::iter::once(0).chain((1..n).filter(|i| mask & (1 << (i - 1)) != 0)).collect()
    })
}

fn oracle_is_subgyrogroup(r: &[Vec<usize>], h: &[usize]) -> bool {
    h.iter().all(|&a| h.iter().all(|&b| h.contains(&r[a][b])) && h.contains(&oracle_inv(r, a)))
}

fn oracle_is_l(r: &[Vec<usize>], h: &[usize]) -> bool {
    oracle_is_subgyrogroup(r, h)
        && (0..r.len()).all(|a| h.iter().all(|&k| h.iter().all(|&x| h.contains(&oracle_gyr(r, a, k, x)))))
}

#[test]
fn g8_is_a_gyrogroup_but_not_a_group() {
    let g8 = load("g8.json");
    assert!(!g8.is_associative());
    assert!(check_axioms(&g8, SampleSpec::default()).passed());
    assert!(check_identities(&g8, SampleSpec::default()).passed());
    let swap = vec![0, 1, 2, 3, 5, 4, 7, 6];
    assert_eq!(g8.gyrations(), vec![(0..8).collect::<Vec<_>>(), swap]);
}

#[test]
fn formula_gyration_matches_gyroassociativity_solution() {
    for name in ["g8.json", "z4.json", "klein4.json"] {
        let t = load(name);
        let r = rows(&t);
        for a in 0..t.order() {
            for b in 0..t.order() {
                for z in 0..t.order() {
                    assert_eq!(t.gyr(&a, &b, &z), oracle_gyr(&r, a, b, z), "{name} {a} {b} {z}");
                }
            }
        }
    }
}

#[test]
fn subgyrogroup_verdicts_match_brute_force() {
    for name in ["g8.json", "z4.json", "klein4.json"] {
        let t = load(name);
        let r = rows(&t);
        for h in subsets_with_zero(t.order()) {
            let set = ElemSet::from_indices(t.order(), h.iter().copied()).unwrap();
            let sub = is_subgyrogroup(&t, &set, SampleSpec::default()).unwrap().passed();
            assert_eq!(sub, oracle_is_subgyrogroup(&r, &h), "{name} {h:?}");
            let l = match is_l_subgyrogroup(&t, &set, SampleSpec::default()) {
                Ok(line) => line.passed(),
                Err(_) => false,
            };
            assert_eq!(l, oracle_is_l(&r, &h), "{name} {h:?}");
        }
    }
}

#[test]
fn g8_has_subgyrogroups_that_are_not_l_subgyrogroups() {
    let t = load("g8.json");
    let r = rows(&t);
    let non_l: Vec<Vec<usize>> = subsets_with_zero(8)
        .filter(|h| oracle_is_subgyrogroup(&r, h) && !oracle_is_l(&r, h))
        .collect();
    assert!(!non_l.is_empty());
    for h in non_l {
        let set = ElemSet::from_indices(8, h.iter().copied()).unwrap();
        assert!(left_cosets(&t, &set).is_err(), "{h:?}");
    }
}

#[test]
fn cosets_match_brute_force_partition() {
    for name in ["g8.json", "z4.json", "klein4.json"] {
        let t = load(name);
        let r = rows(&t);
        for h in subsets_with_zero(t.order()).filter(|h| oracle_is_l(&r, h)) {
            let set = ElemSet::from_indices(t.order(), h.iter().copied()).unwrap();
            let p = left_cosets(&t, &set).unwrap();
            let expected: BTreeSet<Vec<usize>> = (0..t.order())
                .map(|a| {
                    let mut c: Vec<usize> = h.iter().map(|&k| r[a][k]).collect();
                    c.sort();
                    c
                })
                .collect();
            let got: BTreeSet<Vec<usize>> = p.cosets().iter().map(ElemSet::to_vec).collect();
            assert_eq!(got, expected, "{name} {h:?}");
            assert_eq!(p.len() * h.len(), t.order());
            for (id, c) in p.cosets().iter().enumerate() {
                assert_eq!(p.representative(id).unwrap(), c.min().unwrap());
            }
            assert!(check_partition(&t, &p).iter().all(|l| l.passed()));
            assert!(check_homogeneity(&t, &p).iter().all(|l| l.passed()));
            for (a, row) in r.iter().enumerate() {
                for &k in &h {
                    assert_eq!(p.coset_of(row[k]).unwrap(), p.coset_of(a).unwrap());
                }
            }
        }
    }
}

#[test]
fn transport_element_moves_cosets() {
    let t = load("g8.json");
    let h = ElemSet::from_indices(8, [0, 1]).unwrap();
    let p = left_cosets(&t, &h).unwrap();
    for x in 0..8 {
        for y in 0..8 {
            let a = transport_element(&t, &x, &y);
            let moved = homogeneity_translate(&t, &p, a, p.coset_of(x).unwrap()).unwrap();
            assert_eq!(moved, p.coset_of(y).unwrap());
        }
    }
}

#[test]
fn inverse_of_sum_needs_reversed_order() {
    // ⊖(x ⊕ y) = gyr[x, y](⊖y ⊖ x) holds; the variant with (y ⊖ x) does not,
    // already in ℤ₄ at x = y = 1
    let z4 = FiniteTable::cyclic(4);
    let (x, y) = (1, 1);
    let lhs = z4.inv(&z4.op(&x, &y));
    let reversed = z4.gyr(&x, &y, &z4.op(&z4.inv(&y), &z4.inv(&x)));
    let variant = z4.gyr(&x, &y, &z4.op(&y, &z4.inv(&x)));
    assert_eq!(lhs, reversed);
    assert_ne!(lhs, variant);
}

#[test]
fn corrupted_table_fails_with_witness() {
    let mut r = rows(&FiniteTable::cyclic(4));
    r[1][1] = 3;
    let labels = (0..4).map(|i| i.to_string()).collect();
    let t = FiniteTable::unvalidated(labels, r.clone()).unwrap();
    let report = check_axioms(&t, SampleSpec::default());
    let g2 = report.get(Law::Inverse).unwrap();
    let g3 = report.get(Law::Gyroassociativity).unwrap();
    assert!(!g2.passed() || !g3.passed());
    let failing = if g3.passed() { g2 } else { g3 };
    assert!(!failing.witnesses.is_empty());
    let labels = (0..4).map(|i| i.to_string()).collect();
    assert!(matches!(FiniteTable::from_rows(labels, r), Err(GyroError::Axiom(_))));
    assert!(FiniteTable::table_load(&std::fs::read(format!("{}/../../data/broken.json", env!("CARGO_MANIFEST_DIR"))).unwrap()).is_err());
}

#[test]
fn micro_associativity_in_g8() {
    let t = load("g8.json");
    // gyration-invariant V: exact equality
    for v in [vec![0, 1], vec![0, 4, 5], vec![0, 1, 2, 3], vec![0, 6, 7]] {
        let v = ElemSet::from_indices(8, v).unwrap();
        assert!(micro_assoc_check(&t, &v, &v).unwrap().passed(), "{v:?}");
    }
    assert!(micro_assoc_check(&t, &ElemSet::full(8), &ElemSet::full(8)).unwrap().passed());
    // {0, 2, 4} is moved by gyr[2, 4] = (4 5)(6 7)
    let v = ElemSet::from_indices(8, [0, 2, 4]).unwrap();
    let w = ElemSet::from_indices(8, [2, 4]).unwrap();
    let line = micro_assoc_check(&t, &w, &v).unwrap();
    assert!(!line.passed());
    assert_eq!(line.witnesses[0]["a"], 2);
    assert_eq!(line.witnesses[0]["b"], 4);
    assert!(micro_assoc_check(&t, &ElemSet::full(8), &v).is_err());
}
