//! Shrinking neighborhoods, admissible hulls and diagonal intersections.
//!
//! On finite carriers every neighborhood is kept a union of orbits of the
//! relation generated by `x ~ ⊖x` and `x ~ gyr[a, b](x)`, which makes it
//! symmetric and invariant under all gyrations.

use serde_json::json;

use crate::coset::{is_l_subgyrogroup, left_cosets};
use crate::error::PrenormError;
use crate::gyro::Gyrogroup;
use crate::models::{FiniteTable, RadialLaw};
use crate::prenorm::chain::{pair_outside, Flavor, RadialChain, SetChain};
use crate::report::CheckOutcome;
use crate::sample::SampleSpec;
use crate::set::ElemSet;

/// Classes of the carrier under inversion and all gyrations.
#[derive(Clone, Debug)]
pub struct Orbits {
    id: Vec<usize>,
    sets: Vec<ElemSet>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

impl Orbits {
    pub fn new(m: &FiniteTable) -> Self {
        let n = m.order();
        let mut parent: Vec<usize> = (0..n).collect();
        for x in 0..n {
            union(&mut parent, x, m.inv(&x));
        }
        for g in m.gyrations() {
            for (x, &gx) in g.iter().enumerate() {
                union(&mut parent, x, gx);
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut sets: Vec<ElemSet> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            if id[r] == usize::MAX {
                id[r] = sets.len();
                sets.push(ElemSet::empty(n));
            }
            id[x] = id[r];
            sets[id[x]].insert(x);
        }
        Self { id, sets }
    }

    pub fn orbit_of(&self, x: usize) -> &ElemSet {
        &self.sets[self.id[x]]
    }

    pub fn orbits(&self) -> &[ElemSet] {
        &self.sets
    }

    /// The union of the orbits contained in `u`.
    pub fn core(&self, u: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(u.universe());
        for o in &self.sets {
            if o.is_subset(u) {
                out = out.union(o);
            }
        }
        out
    }
}

/// Largest symmetric, gyration-invariant subset of `u`.
pub fn symmetric_core(m: &FiniteTable, u: &ElemSet) -> ElemSet {
    Orbits::new(m).core(u)
}

fn violators(m: &FiniteTable, v: &ElemSet, u: &ElemSet, flavor: Flavor) -> Option<usize> {
    // the largest element involved in any violation
    let mut worst: Option<usize> = None;
    let mut note = |xs: &[usize]| {
        let hi = *xs.iter().max().expect("nonempty");
        worst = Some(worst.map_or(hi, |w| w.max(hi)));
    };
    match flavor {
        Flavor::Weak => {
            for a in v.iter() {
                let row = m.row(a);
                for b in v.iter() {
                    if !u.contains(row[b]) {
                        note(&[a, b]);
                    }
                }
            }
        }
        Flavor::Admissible => {
            let vv: Vec<usize> = v.to_vec();
            for &b in &vv {
                for &c in &vv {
                    let bc = m.op(&b, &c);
                    for &a in &vv {
                        if !u.contains(m.op(&a, &bc)) {
                            note(&[a, b, c]);
                        }
                    }
                }
            }
        }
    }
    worst
}

/// A symmetric, gyration-invariant `V ∋ 0` inside `u` with `V ⊕ V ⊆ u`
/// (weak) or `V ⊕ (V ⊕ V) ⊆ u` (admissible). Greedy: starting from the
/// core of `u`, repeatedly drop the orbit of the largest element taking
/// part in a violation.
pub fn shrink(m: &FiniteTable, u: &ElemSet, flavor: Flavor) -> Result<ElemSet, PrenormError> {
    if !u.contains(0) {
        return Err(PrenormError::MissingIdentity);
    }
    let orbits = Orbits::new(m);
    let mut v = orbits.core(u);
    while let Some(x) = violators(m, &v, u, flavor) {
        // 0 ⊕ 0 = 0 ∈ u, so some nonzero element is involved
        debug_assert!(x != 0);
        v = v.difference(orbits.orbit_of(x));
    }
    Ok(v)
}

/// Radial shrink: the largest radius whose weak or admissible composite
/// stays within `radius`.
pub fn shrink_radius<L: RadialLaw>(law: &L, radius: f64, flavor: Flavor) -> f64 {
    match flavor {
        Flavor::Weak => law.half(radius),
        Flavor::Admissible => law.third(radius),
    }
}

/// `U₀ = core(u)`, `U_{n+1} = shrink(U_n)` until it stabilizes. Returns the
/// admissible chain and its tail `H`.
pub fn admissible_hull(m: &FiniteTable, u: &ElemSet) -> Result<(SetChain, ElemSet), PrenormError> {
    if !u.contains(0) {
        return Err(PrenormError::MissingIdentity);
    }
    let mut sets = vec![symmetric_core(m, u)];
    loop {
        let last = sets.last().expect("nonempty");
        let next = shrink(m, last, Flavor::Admissible)?;
        if next == *last {
            break;
        }
        sets.push(next);
    }
    let tail = sets.last().expect("nonempty").clone();
    Ok((SetChain::new(Flavor::Admissible, sets)?, tail))
}

/// Radii `r₀ = radius`, `r_{n+1} = third(r_n)` for `n < depth`.
pub fn admissible_hull_radial<L: RadialLaw + Clone>(
    law: &L,
    radius: f64,
    depth: u32,
) -> Result<RadialChain<L>, PrenormError> {
    let mut radii = vec![radius];
    for _ in 0..depth {
        let r = *radii.last().expect("nonempty");
        radii.push(law.third(r));
    }
    RadialChain::new(law.clone(), Flavor::Admissible, radii)
}

/// Diagonal chain `V_n = ∩_{i ≤ min(n, k−1)} U_{i,n}`, carried until every
/// input has reached its tail. Returns the chain and `∩ᵢ Hᵢ`.
pub fn admissible_intersection(chains: &[SetChain]) -> Result<(SetChain, ElemSet), PrenormError> {
    let first = chains.first().ok_or(PrenormError::EmptyChain)?;
    let k = chains.len();
    let last = chains.iter().map(SetChain::len).max().expect("nonempty").max(k) - 1;
    let mut sets = Vec::with_capacity(last + 1);
    for n in 0..=last {
        let mut v = first.get(n).clone();
        for c in &chains[1..=n.min(k - 1)] {
            if c.universe() != v.universe() {
                return Err(PrenormError::Universe { index: n, expected: v.universe(), got: c.universe() });
            }
            v = v.intersection(c.get(n));
        }
        sets.push(v);
    }
    let tail = sets.last().expect("nonempty").clone();
    Ok((SetChain::new(Flavor::Admissible, sets)?, tail))
}

/// Radial diagonal chain `r_n = min_{i ≤ min(n, k−1)} r_{i,n}`, as long as
/// the shortest input.
pub fn admissible_intersection_radial<L: RadialLaw + Clone>(
    chains: &[RadialChain<L>],
) -> Result<RadialChain<L>, PrenormError> {
    let first = chains.first().ok_or(PrenormError::EmptyChain)?;
    let len = chains.iter().map(RadialChain::len).min().expect("nonempty");
    let radii = (0..len)
        .map(|n| {
            chains[..=n.min(chains.len() - 1)]
                .iter()
                .map(|c| c.radius(n).expect("within shortest"))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    RadialChain::new(first.law().clone(), Flavor::Admissible, radii)
}

/// `U_{n+1} ⊕ H ⊆ U_{n+1} ⊕ U_{n+1} ⊆ U_n` and
/// `π⁻¹(π(U_{n+1})) = U_{n+1} ⊕ H` for every index, plus the tail being an
/// L-subgyrogroup.
pub fn admissible_quotient_inclusion_check(m: &FiniteTable, chain: &SetChain, h: &ElemSet) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let l = match is_l_subgyrogroup(m, h, SampleSpec::default()) {
        Ok(l) => l,
        Err(e) => CheckOutcome::new("l-subgyrogroup", false).with_witness(json!(e.to_string())).with_residual(1.0),
    };
    let part = left_cosets(m, h).ok();
    let mut l = l;
    l.check = "inclusion:tail-l-subgyrogroup".into();
    out.push(l);

    let mut translate = CheckOutcome::new("inclusion:tail-translate", true);
    let mut square = CheckOutcome::new("inclusion:square", true);
    let mut preimage = CheckOutcome::new("inclusion:preimage", part.is_some());
    for n in 0..chain.len() {
        let (big, small) = (chain.get(n), chain.get(n + 1));
        let sh = ElemSet::product(m, small, h);
        let ss = ElemSet::product(m, small, small);
        if translate.passed() {
            if let Some(x) = sh.first_outside(&ss) {
                translate = CheckOutcome::new("inclusion:tail-translate", false)
                    .with_depth(n as u32)
                    .with_witness(json!({"x": x}))
                    .with_residual(1.0);
            }
        }
        if square.passed() {
            if let Some((a, b, r)) = pair_outside(m, small, big) {
                square = CheckOutcome::new("inclusion:square", false)
                    .with_depth(n as u32)
                    .with_witness(json!({"a": a, "b": b, "result": r}))
                    .with_residual(1.0);
            }
        }
        if let (Some(p), true) = (&part, preimage.passed()) {
            let mut pre = ElemSet::empty(m.order());
            for x in small.iter() {
                let c = p.coset_of(x).expect("in carrier");
                pre = pre.union(p.coset(c).expect("known coset"));
            }
            if pre != sh {
                preimage = CheckOutcome::new("inclusion:preimage", false)
                    .with_depth(n as u32)
                    .with_witness(json!({"preimage": pre, "translate": sh}))
                    .with_residual(1.0);
            }
        }
    }
    if part.is_none() {
        preimage = preimage.with_witness(json!("tail has no coset partition")).with_residual(1.0);
    }
    out.extend([translate, square, preimage]);
    out
}

/// Radial form with `H = {0}`: `r_{n+1} ⊕₁ 0 ≤ r_{n+1} ⊕₁ r_{n+1} ≤ r_n`.
pub fn radial_inclusion_check<L: RadialLaw>(chain: &RadialChain<L>, tol: f64) -> Vec<CheckOutcome> {
    let law = chain.law();
    let mut translate = CheckOutcome::new("inclusion:tail-translate", true);
    let mut square = CheckOutcome::new("inclusion:square", true);
    let r = chain.radii();
    for n in 0..r.len().saturating_sub(1) {
        let (t, s) = (law.compose(r[n + 1], 0.0), law.compose(r[n + 1], r[n + 1]));
        if translate.passed() && t > s + tol {
            translate = CheckOutcome::new("inclusion:tail-translate", false)
                .with_depth(n as u32)
                .with_residual(t - s);
        }
        if square.passed() && s > r[n] + tol {
            square = CheckOutcome::new("inclusion:square", false)
                .with_depth(n as u32)
                .with_residual(s - r[n]);
        }
    }
    vec![translate, square]
}
