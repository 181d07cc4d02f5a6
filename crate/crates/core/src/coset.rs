//! Subgyrogroups, L-subgyrogroups, left cosets and the homogeneity maps of
//! the coset space.
//!
//! Cosets are materialized only for finite carriers. On ball models a subset
//! is a membership predicate and coset membership is the test `⊖a ⊕ b ∈ H`.

use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::CosetError;
use crate::gyro::{Gyrogroup, NormedGyrogroup, Sampled};
use crate::models::FiniteTable;
use crate::report::CheckOutcome;
use crate::sample::SampleSpec;
use crate::set::ElemSet;

/// A subset of a carrier, given extensionally or by a predicate.
pub trait Subset<G: Gyrogroup> {
    fn contains(&self, m: &G, x: &G::Elem) -> bool;

    /// Every member, when the subset is finite.
    fn members(&self, m: &G) -> Option<Vec<G::Elem>>;

    fn sample<R: Rng + ?Sized>(&self, m: &G, rng: &mut R) -> G::Elem;
}

impl Subset<FiniteTable> for ElemSet {
    fn contains(&self, _m: &FiniteTable, x: &usize) -> bool {
        *x < self.universe() && ElemSet::contains(self, *x)
    }

    fn members(&self, _m: &FiniteTable) -> Option<Vec<usize>> {
        Some(self.to_vec())
    }

    fn sample<R: Rng + ?Sized>(&self, _m: &FiniteTable, rng: &mut R) -> usize {
        let all = self.to_vec();
        all[rng.random_range(0..all.len())]
    }
}

/// Predicate subsets of ball models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// The carrier intersected with one coordinate axis.
    Axis(usize),
    /// The open norm ball of the given radius.
    Ball(f64),
}

impl<G: NormedGyrogroup> Subset<G> for Region {
    fn contains(&self, m: &G, x: &G::Elem) -> bool {
        let tol = m.tolerance();
        match *self {
            Region::Axis(i) => {
                m.contains(x)
                    && m.coordinates(x).iter().enumerate().all(|(j, v)| j == i || v.abs() <= tol)
            }
            Region::Ball(r) => m.norm(x) < r + tol,
        }
    }

    fn members(&self, _m: &G) -> Option<Vec<G::Elem>> {
        None
    }

    fn sample<R: Rng + ?Sized>(&self, m: &G, rng: &mut R) -> G::Elem {
        match *self {
            Region::Axis(i) => {
                let mut coords = vec![0.0; m.dimension()];
                let c = m.bound();
                coords[i] = rng.random_range(-c..c) * (1.0 - 1e-12);
                m.from_coordinates(&coords).expect("axis point lies in the carrier")
            }
            Region::Ball(r) => m.random_in_ball(rng, r),
        }
    }
}

/// A `--subset` argument: `0,2`, `axis:x` or `ball:0.5`.
#[derive(Clone, Debug, PartialEq)]
pub enum SubsetSpec {
    Indices(Vec<usize>),
    Region(Region),
}

impl FromStr for SubsetSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(axis) = s.strip_prefix("axis:") {
            let i = match axis {
                "x" => 0,
                "y" => 1,
                "z" => 2,
                other => other.parse().map_err(|_| format!("unknown axis {other:?}"))?,
            };
            return Ok(SubsetSpec::Region(Region::Axis(i)));
        }
        if let Some(r) = s.strip_prefix("ball:") {
            let r: f64 = r.parse().map_err(|_| format!("bad ball radius {r:?}"))?;
            if !(r.is_finite() && r > 0.0) {
                return Err(format!("ball radius must be positive, got {r}"));
            }
            return Ok(SubsetSpec::Region(Region::Ball(r)));
        }
        if s.is_empty() {
            return Err("empty subset".into());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad element index {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(SubsetSpec::Indices)
    }
}

impl SubsetSpec {
    pub fn to_set(&self, m: &FiniteTable) -> Result<ElemSet, CosetError> {
        match self {
            SubsetSpec::Indices(ix) => {
                let s = ElemSet::from_indices(m.order(), ix.iter().copied())?;
                if s.is_empty() {
                    return Err(CosetError::EmptySubset);
                }
                Ok(s)
            }
            SubsetSpec::Region(r) => {
                Err(CosetError::NotSubgyrogroup(format!("{r:?} needs a ball model")))
            }
        }
    }
}

fn nonempty_members<G: Gyrogroup, S: Subset<G>>(m: &G, h: &S) -> Result<Option<Vec<G::Elem>>, CosetError> {
    match h.members(m) {
        Some(v) if v.is_empty() => Err(CosetError::EmptySubset),
        other => Ok(other),
    }
}

/// Closure under `⊕` and `⊖`. Exhaustive over finite subsets, sampled
/// otherwise. A failing verdict carries the violating pair.
pub fn is_subgyrogroup<G, S>(m: &G, h: &S, spec: SampleSpec) -> Result<CheckOutcome, CosetError>
where
    G: Sampled,
    S: Subset<G>,
{
    let fail = |w: serde_json::Value| Ok(CheckOutcome::new("subgyrogroup", false).with_witness(w).with_residual(1.0));
    match nonempty_members(m, h)? {
        Some(all) => {
            for a in &all {
                for b in &all {
                    let ab = m.op(a, b);
                    if !h.contains(m, &ab) {
                        return fail(json!({"op": [a, b], "result": ab}));
                    }
                }
            }
            for a in &all {
                let na = m.inv(a);
                if !h.contains(m, &na) {
                    return fail(json!({"inv": a, "result": na}));
                }
            }
            Ok(CheckOutcome::new("subgyrogroup", true).with_samples(all.len() * all.len()))
        }
        None => {
            let mut rng = spec.rng();
            for _ in 0..spec.samples {
                let a = h.sample(m, &mut rng);
                let b = h.sample(m, &mut rng);
                let ab = m.op(&a, &b);
                if !h.contains(m, &ab) {
                    return fail(json!({"op": [a, b], "result": ab}));
                }
                let na = m.inv(&a);
                if !h.contains(m, &na) {
                    return fail(json!({"inv": a, "result": na}));
                }
            }
            Ok(CheckOutcome::new("subgyrogroup", true).with_samples(spec.samples))
        }
    }
}

/// `gyr[a, h](H) = H` for all `a ∈ G`, `h ∈ H`. On finite carriers
/// `gyr[a, h](H) ⊆ H` suffices since gyrations are injective; sampled
/// carriers also test the inverse gyration `gyr[h, a]`.
pub fn is_l_subgyrogroup<G, S>(m: &G, h: &S, spec: SampleSpec) -> Result<CheckOutcome, CosetError>
where
    G: Sampled,
    S: Subset<G>,
{
    let sub = is_subgyrogroup(m, h, spec)?;
    if !sub.passed() {
        return Err(CosetError::NotSubgyrogroup(serde_json::to_string(&sub.witnesses).unwrap_or_default()));
    }
    let fail = |w: serde_json::Value| Ok(CheckOutcome::new("l-subgyrogroup", false).with_witness(w).with_residual(1.0));
    if let (Some(all), Some(hs)) = (m.elements(), h.members(m)) {
        for a in &all {
            for k in &hs {
                for x in &hs {
                    let img = m.gyr(a, k, x);
                    if !h.contains(m, &img) {
                        return fail(json!({"a": a, "h": k, "x": x, "image": img}));
                    }
                }
            }
        }
        return Ok(CheckOutcome::new("l-subgyrogroup", true).with_samples(all.len() * hs.len() * hs.len()));
    }
    let mut rng = spec.rng();
    for _ in 0..spec.samples {
        let a = m.random_element(&mut rng);
        let k = h.sample(m, &mut rng);
        let x = h.sample(m, &mut rng);
        for img in [m.gyr(&a, &k, &x), m.gyr(&k, &a, &x)] {
            if !h.contains(m, &img) {
                return fail(json!({"a": a, "h": k, "x": x, "image": img}));
            }
        }
    }
    Ok(CheckOutcome::new("l-subgyrogroup", true).with_samples(spec.samples))
}

/// `π(a) = π(b)` by the membership test `⊖a ⊕ b ∈ H`.
pub fn same_coset<G: Gyrogroup, S: Subset<G>>(m: &G, h: &S, a: &G::Elem, b: &G::Elem) -> bool {
    h.contains(m, &m.op(&m.inv(a), b))
}

/// The left cosets `a ⊕ H` of an L-subgyrogroup of a finite carrier.
#[derive(Clone, Debug, Serialize)]
pub struct CosetPartition {
    subgroup: ElemSet,
    cosets: Vec<ElemSet>,
    representatives: Vec<usize>,
    #[serde(skip)]
    index: Vec<usize>,
}

impl CosetPartition {
    pub fn subgroup(&self) -> &ElemSet {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[ElemSet] {
        &self.cosets
    }

    pub fn coset(&self, id: usize) -> Result<&ElemSet, CosetError> {
        self.cosets.get(id).ok_or(CosetError::UnknownCoset(id))
    }

    /// Minimum element index of the coset.
    pub fn representative(&self, id: usize) -> Result<usize, CosetError> {
        self.representatives.get(id).copied().ok_or(CosetError::UnknownCoset(id))
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// The quotient map `π`.
    pub fn coset_of(&self, x: usize) -> Result<usize, CosetError> {
        self.index.get(x).copied().ok_or(CosetError::OutOfRange(x))
    }
}

/// Partition a finite carrier into left cosets of `h`. Refuses unless `h` is
/// an L-subgyrogroup, then verifies disjointness and `(a ⊕ k) ⊕ H = a ⊕ H`.
pub fn left_cosets(m: &FiniteTable, h: &ElemSet) -> Result<CosetPartition, CosetError> {
    if h.universe() != m.order() {
        return Err(CosetError::OutOfRange(h.universe()));
    }
    let l = is_l_subgyrogroup(m, h, SampleSpec::default())?;
    if !l.passed() {
        return Err(CosetError::NotLSubgyrogroup(serde_json::to_string(&l.witnesses).unwrap_or_default()));
    }
    partition_unchecked(m, h)
}

/// Partition without the L-subgyrogroup precondition; overlaps and
/// representative dependence are still detected.
pub fn partition_unchecked(m: &FiniteTable, h: &ElemSet) -> Result<CosetPartition, CosetError> {
    let n = m.order();
    let mut index = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for a in 0..n {
        if index[a] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let c = ElemSet::left_translate(m, a, h);
        for x in c.iter() {
            if index[x] != usize::MAX {
                return Err(CosetError::Overlap { a: index[x], b: id, shared: x });
            }
            index[x] = id;
        }
        cosets.push(c);
        representatives.push(a);
    }
    for a in 0..n {
        let base = &cosets[index[a]];
        for k in h.iter() {
            let ak = m.op(&a, &k);
            if ElemSet::left_translate(m, ak, h) != *base {
                return Err(CosetError::RepresentativeDependence(format!(
                    "({a} ⊕ {k}) ⊕ H differs from {a} ⊕ H"
                )));
            }
        }
    }
    Ok(CosetPartition { subgroup: h.clone(), cosets, representatives, index })
}

/// Disjoint cover, equal sizes, and representative independence.
pub fn check_partition(m: &FiniteTable, p: &CosetPartition) -> Vec<CheckOutcome> {
    let h = p.subgroup();
    let total: usize = p.cosets().iter().map(ElemSet::len).sum();
    let mut union = ElemSet::empty(m.order());
    for c in p.cosets() {
        union = union.union(c);
    }
    let cover = total == m.order() && union.len() == m.order();
    let mut out = vec![CheckOutcome::new("coset:partition", cover)
        .with_value(json!({"cosets": p.len(), "covered": union.len(), "sum": total}))];
    let sizes: Vec<usize> = p.cosets().iter().map(ElemSet::len).collect();
    let equal = sizes.iter().all(|&s| s == h.len());
    let mut line = CheckOutcome::new("coset:equal-size", equal).with_value(json!({"size": h.len()}));
    if !equal {
        line = line.with_witness(json!({"sizes": sizes}));
    }
    out.push(line);
    let mut line = CheckOutcome::new("coset:representative-independence", true).with_samples(m.order() * h.len());
    'outer: for a in 0..m.order() {
        let base = ElemSet::left_translate(m, a, h);
        for k in h.iter() {
            let ak = m.op(&a, &k);
            if ElemSet::left_translate(m, ak, h) != base {
                line = CheckOutcome::new("coset:representative-independence", false)
                    .with_witness(json!({"a": a, "h": k}))
                    .with_residual(1.0);
                break 'outer;
            }
        }
    }
    out.push(line);
    out
}

/// `a = y ⊕ gyr[y, x](⊖x)`, which carries `x ⊕ H` to `y ⊕ H`.
pub fn transport_element<G: Gyrogroup>(m: &G, x: &G::Elem, y: &G::Elem) -> G::Elem {
    m.op(y, &m.gyr(y, x, &m.inv(x)))
}

/// `h_a(x ⊕ H) = (a ⊕ x) ⊕ H`, evaluated at every representative of the
/// coset.
pub fn homogeneity_translate(m: &FiniteTable, p: &CosetPartition, a: usize, coset: usize) -> Result<usize, CosetError> {
    m.check_carrier(&a).map_err(|_| CosetError::OutOfRange(a))?;
    let c = p.coset(coset)?;
    let mut image = None;
    for x in c.iter() {
        let id = p.coset_of(m.op(&a, &x))?;
        match image {
            None => image = Some(id),
            Some(prev) if prev != id => {
                return Err(CosetError::RepresentativeDependence(format!(
                    "h_{a} sends coset {coset} to both {prev} and {id}"
                )))
            }
            _ => {}
        }
    }
    Ok(image.expect("cosets are nonempty"))
}

/// Every `h_a` is a well-defined bijection of `G/H`, and the transport
/// element realizes every pair of cosets.
pub fn check_homogeneity(m: &FiniteTable, p: &CosetPartition) -> Vec<CheckOutcome> {
    let mut bij = CheckOutcome::new("homogeneity:bijective", true).with_samples(m.order());
    'outer: for a in 0..m.order() {
        let mut hit = vec![false; p.len()];
        for id in 0..p.len() {
            match homogeneity_translate(m, p, a, id) {
                Ok(j) if !hit[j] => hit[j] = true,
                Ok(j) => {
                    bij = CheckOutcome::new("homogeneity:bijective", false)
                        .with_witness(json!({"a": a, "coset": id, "collides": j}))
                        .with_residual(1.0);
                    break 'outer;
                }
                Err(e) => {
                    bij = CheckOutcome::new("homogeneity:bijective", false)
                        .with_witness(json!({"a": a, "coset": id, "error": e.to_string()}))
                        .with_residual(1.0);
                    break 'outer;
                }
            }
        }
    }
    let mut tr = CheckOutcome::new("homogeneity:transitive", true).with_samples(m.order() * m.order());
    'outer2: for x in 0..m.order() {
        for y in 0..m.order() {
            let a = transport_element(m, &x, &y);
            let ok = matches!(
                (homogeneity_translate(m, p, a, p.index[x]), p.coset_of(y)),
                (Ok(i), Ok(j)) if i == j
            );
            if !ok {
                tr = CheckOutcome::new("homogeneity:transitive", false)
                    .with_witness(json!({"x": x, "y": y, "a": a}))
                    .with_residual(1.0);
                break 'outer2;
            }
        }
    }
    vec![bij, tr]
}
