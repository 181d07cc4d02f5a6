//! Prenorm and metric oracles: a direct recursive dyadic family, a radial
//! law on a discretized circle, and property sweeps over generated chains.

use gyrokit::prenorm::{
    admissible_hull, admissible_intersection, build_set_family, check_prenorm_laws, check_rho_indiscernibles,
    check_rho_metric, check_sandwich, coset_invariant_n_check, validate_radial_chain, validate_set_chain, Flavor,
    FinitePrenorm, Prenorm, RadialChain, RadialPrenorm, SetChain,
};
use gyrokit::{
    left_cosets, EinsteinLaw, Einstein3, ElemSet, FiniteTable, Gyrogroup, MobiusModel, NormedGyrogroup, RadialLaw,
    SampleSpec,
};
use proptest::prelude::*;

fn load(name: &str) -> FiniteTable {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    FiniteTable::table_load(&std::fs::read(path).unwrap()).unwrap()
}

/// Integer radii with closed balls: the radial law of `ℤ_n` under the
/// circular norm `|k| = min(k, n − k)`.
#[derive(Clone, Copy, Debug)]
struct IntegerLaw;

impl RadialLaw for IntegerLaw {
    fn compose(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    fn bound(&self) -> f64 {
        1e9
    }
    fn inside(&self, norm: f64, radius: f64) -> bool {
        norm <= radius
    }
    fn half(&self, radius: f64) -> f64 {
        (radius / 2.0).floor()
    }
    fn third(&self, radius: f64) -> f64 {
        (radius / 3.0).floor()
    }
}

fn circ(n: usize, k: usize) -> usize {
    k.min(n - k)
}

#[test]
fn radial_prenorm_matches_exhaustive_on_discretized_circle() {
    let n = 97;
    let t = FiniteTable::cyclic(n);
    let a = [40usize, 19, 9, 4, 2, 1, 0];
    let sets: Vec<Vec<usize>> = a.iter().map(|&r| (0..n).filter(|&k| circ(n, k) <= r).collect()).collect();
    let chain = SetChain::from_indices(&t, Flavor::Weak, &sets).unwrap();
    assert!(validate_set_chain(&t, &chain).passed());
    let finite = FinitePrenorm::new(&t, &chain, 10).unwrap();
    assert!(finite.is_exact());

    let mut radii: Vec<f64> = a.iter().map(|&r| r as f64).collect();
    radii.resize(11, 0.0);
    let rc = RadialChain::new(IntegerLaw, Flavor::Weak, radii).unwrap();
    assert!(validate_radial_chain(&rc, 0.0).passed());
    let radial = RadialPrenorm::new(&rc, 10, 0.5).unwrap();
    for k in 0..n {
        assert_eq!(finite.value(k), radial.at_norm(circ(n, k) as f64), "k = {k}");
        assert_eq!(finite.level(k), finite.value(k), "k = {k}");
    }
    assert!(check_prenorm_laws(&t, &finite, SampleSpec::default()).iter().all(|l| l.passed()));
}

/// `V(m/2ⁿ)` straight from the recursive definition.
fn oracle_v(t: &FiniteTable, chain: &SetChain, m: usize, n: u32) -> ElemSet {
    let all = ElemSet::full(t.order());
    if m == 0 {
        return ElemSet::singleton(t.order(), 0);
    }
    if m > 1 << n {
        return all;
    }
    if m.is_multiple_of(2) {
        return oracle_v(t, chain, m / 2, n - 1);
    }
    let rest = if n == 0 { ElemSet::singleton(t.order(), 0) } else { oracle_v(t, chain, m / 2, n - 1) };
    ElemSet::product(t, chain.get(n as usize), &rest)
}

#[test]
fn dyadic_family_matches_recursive_definition() {
    let g8 = load("g8.json");
    let (chain, _) = admissible_hull(&g8, &ElemSet::from_indices(8, [0, 1, 4, 5, 6, 7]).unwrap()).unwrap();
    let weak = chain.clone().with_flavor(Flavor::Weak);
    for c in [chain, weak] {
        let fam = build_set_family(&g8, &c, 5).unwrap();
        for n in 0..=5u32 {
            for m in 0..=(1usize << n) + 2 {
                assert_eq!(fam.value(m, n).unwrap(), oracle_v(&g8, &c, m, n), "{m}/2^{n}");
            }
        }
    }
}

#[test]
fn exact_level_is_the_deep_limit() {
    // the level function at depth D ≥ K − 1 is within 2^{-D} of the exact value
    let t = FiniteTable::cyclic(16);
    let chain = SetChain::from_indices(
        &t,
        Flavor::Weak,
        &[(0..16).collect(), vec![0, 4, 8, 12, 2, 6, 10, 14], vec![0, 4, 8, 12], vec![0, 8], vec![0, 8]],
    )
    .unwrap();
    let exact = FinitePrenorm::new(&t, &chain, 12).unwrap();
    for d in 3..=9u32 {
        let fam = build_set_family(&t, &chain, d).unwrap();
        for x in 0..16 {
            let trunc = (0..=1usize << d)
                .find(|&k| fam.at(k).contains(x))
                .map_or(1.0, |k| k as f64 / (1u64 << d) as f64);
            let f = exact.level(x);
            assert!(f <= trunc && trunc <= f + 1.0 / (1u64 << d) as f64, "x={x} d={d} {f} {trunc}");
        }
    }
}

/// The permutation group generated by `gens`, identity first.
fn permutation_group(gens: &[Vec<usize>]) -> FiniteTable {
    let k = gens[0].len();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..k).map(|i| p[q[i]]).collect() };
    let mut elems: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let e = compose(&elems[i], g);
            if !elems.contains(&e) {
                elems.push(e);
            }
        }
        i += 1;
    }
    let index = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap();
    let rows = elems.iter().map(|a| elems.iter().map(|b| index(&compose(a, b))).collect()).collect();
    let labels = (0..elems.len()).map(|i| format!("p{i}")).collect();
    FiniteTable::from_rows(labels, rows).unwrap()
}

fn s3() -> FiniteTable {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

fn d4() -> FiniteTable {
    permutation_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

fn finite_models() -> Vec<FiniteTable> {
    vec![load("g8.json"), FiniteTable::cyclic(12), FiniteTable::klein_four(), FiniteTable::cyclic(8), s3(), d4()]
}

fn check_finite_chain(t: &FiniteTable, chain: &SetChain, depth: u32) {
    assert!(validate_set_chain(t, chain).passed(), "{chain:?}");
    let p = FinitePrenorm::new(t, chain, depth).unwrap();
    let spec = SampleSpec::default();
    for line in check_prenorm_laws(t, &p, spec).into_iter().chain(check_rho_metric(t, &p, spec)) {
        assert!(line.passed(), "{line:?}");
    }
    let all: Vec<usize> = (0..t.order()).collect();
    let sd = if p.is_exact() { 6 } else { depth };
    let sandwich = check_sandwich(t, &p, &all, sd, |n, x| chain.get(n).contains(*x));
    assert!(sandwich.passed(), "{sandwich:?}");
    if p.is_exact() {
        assert!(check_rho_indiscernibles(t, &p).passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_chains_induce_prenorms(model in 0usize..6, mask in any::<u16>(), depth in 0u32..8) {
        let t = &finite_models()[model];
        let n = t.order();
        let u = ElemSet::from_indices(n, (0..n).filter(|&i| i == 0 || mask & (1 << (i % 16)) != 0)).unwrap();
        let (chain, h) = admissible_hull(t, &u).unwrap();
        check_finite_chain(t, &chain, depth);
        let p = FinitePrenorm::new(t, &chain, depth.max(chain.len() as u32)).unwrap();
        prop_assert!(coset_invariant_n_check(t, &p, &h, SampleSpec::default()).passed());
        prop_assert!(left_cosets(t, &h).is_ok());
    }

    #[test]
    fn diagonal_intersections_are_admissible(model in 0usize..6, masks in prop::collection::vec(any::<u16>(), 1..=5)) {
        let t = &finite_models()[model];
        let n = t.order();
        let hulls: Vec<(SetChain, ElemSet)> = masks
            .iter()
            .map(|m| {
                let u = ElemSet::from_indices(n, (0..n).filter(|&i| i == 0 || m & (1 << (i % 16)) != 0)).unwrap();
                admissible_hull(t, &u).unwrap()
            })
            .collect();
        let chains: Vec<SetChain> = hulls.iter().map(|(c, _)| c.clone()).collect();
        let (diag, tail) = admissible_intersection(&chains).unwrap();
        let expected = hulls.iter().fold(ElemSet::full(n), |acc, (_, h)| acc.intersection(h));
        prop_assert_eq!(&tail, &expected);
        check_finite_chain(t, &diag, 6);
    }
}

#[test]
fn sup_construction_repairs_subadditivity() {
    // on non-abelian groups the bare dyadic infimum can fail subadditivity
    let mut repaired = 0;
    for t in [s3(), d4()] {
        let n = t.order();
        for mask in 0u32..1 << (n - 1) {
            let u = ElemSet::from_indices(n, (0..n).filter(|&i| i == 0 || mask & (1 << (i - 1)) != 0)).unwrap();
            let (chain, _) = admissible_hull(&t, &u).unwrap();
            let weak = chain.with_flavor(Flavor::Weak);
            let p = FinitePrenorm::new(&t, &weak, 8).unwrap();
            let f_sub = (0..n).all(|x| (0..n).all(|y| p.level(t.op(&x, &y)) <= p.level(x) + p.level(y)));
            if !f_sub {
                repaired += 1;
                assert!(!p.level_is_prenorm());
            }
            check_finite_chain(&t, &weak, 8);
        }
    }
    assert!(repaired > 0);
}

fn rapidity_chain(c: f64, r0: f64, len: usize) -> RadialChain<EinsteinLaw> {
    let law = EinsteinLaw::new(c);
    let mut radii = vec![r0];
    while radii.len() < len {
        radii.push(law.half(*radii.last().unwrap()));
    }
    RadialChain::new(law, Flavor::Weak, radii).unwrap()
}

#[test]
fn radial_prenorm_laws_on_ball_models() {
    let spec = SampleSpec::new(4000, 11);
    let chain = rapidity_chain(1.0, 0.8, 11);
    assert!(validate_radial_chain(&chain, 0.0).passed());
    let p = RadialPrenorm::new(&chain, 10, 1e-9).unwrap();
    let e = Einstein3::default();
    for line in check_prenorm_laws(&e, &p, spec).into_iter().chain(check_rho_metric(&e, &p, spec)) {
        assert!(line.passed(), "{line:?}");
    }
    let mb = MobiusModel::default();
    for line in check_prenorm_laws(&mb, &p, spec).into_iter().chain(check_rho_metric(&mb, &p, spec)) {
        assert!(line.passed(), "{line:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn radial_prenorm_is_monotone_in_the_norm(r1 in 0.0f64..0.999, r2 in 0.0f64..0.999) {
        let chain = rapidity_chain(1.0, 0.9, 9);
        let p = RadialPrenorm::new(&chain, 8, 1e-12).unwrap();
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        prop_assert!(p.at_norm(lo) <= p.at_norm(hi));
        prop_assert!(p.at_norm(hi) <= 1.0);
    }

    #[test]
    fn radial_prenorm_is_gyration_invariant(
        a in prop::array::uniform3(-0.57f64..0.57),
        b in prop::array::uniform3(-0.57f64..0.57),
        z in prop::array::uniform3(-0.57f64..0.57),
    ) {
        let m = Einstein3::default();
        let chain = rapidity_chain(1.0, 0.8, 11);
        let p = RadialPrenorm::new(&chain, 10, 1e-9).unwrap();
        let (a, b, z) = (m.element(a).unwrap(), m.element(b).unwrap(), m.element(z).unwrap());
        let g = m.gyr(&a, &b, &z);
        prop_assert!((m.norm(&g) - m.norm(&z)).abs() < 1e-12);
        prop_assert!((p.eval(&m, &g) - p.eval(&m, &z)).abs() <= Prenorm::<Einstein3>::tolerance(&p));
    }
}
