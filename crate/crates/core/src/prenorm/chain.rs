//! Nested neighborhood chains `U₀ ⊇ U₁ ⊇ …` and their laws.
//!
//! Weak chains satisfy `U_{n+1} ⊕ U_{n+1} ⊆ U_n`; admissible chains satisfy
//! `U_{n+1} ⊕ (U_{n+1} ⊕ U_{n+1}) ⊆ U_n`. Finite chains are eventually
//! constant and are extended past their last set by repeating it.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{ChainViolation, PrenormError};
use crate::gyro::Gyrogroup;
use crate::models::{FiniteTable, RadialLaw};
use crate::report::{CheckOutcome, Report};
use crate::set::ElemSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Weak,
    Admissible,
}

impl Flavor {
    pub fn law_name(self) -> &'static str {
        match self {
            Flavor::Weak => "chain:weak-law",
            Flavor::Admissible => "chain:admissible-law",
        }
    }
}

/// A chain of subsets of a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetChain {
    flavor: Flavor,
    sets: Vec<ElemSet>,
}

impl SetChain {
    pub fn new(flavor: Flavor, sets: Vec<ElemSet>) -> Result<Self, PrenormError> {
        let first = sets.first().ok_or(PrenormError::EmptyChain)?;
        let n = first.universe();
        for (index, s) in sets.iter().enumerate() {
            if s.universe() != n {
                return Err(PrenormError::Universe { index, expected: n, got: s.universe() });
            }
        }
        Ok(Self { flavor, sets })
    }

    pub fn from_indices(m: &FiniteTable, flavor: Flavor, sets: &[Vec<usize>]) -> Result<Self, PrenormError> {
        let sets = sets
            .iter()
            .map(|s| {
                ElemSet::from_indices(m.order(), s.iter().copied()).map_err(|e| match e {
                    crate::error::CosetError::OutOfRange(x) => PrenormError::OutOfRange(x),
                    other => PrenormError::Coset(other),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(flavor, sets)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn universe(&self) -> usize {
        self.sets[0].universe()
    }

    /// The sets as given, without tail extension.
    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `U_n`, repeating the last set past the end.
    pub fn get(&self, n: usize) -> &ElemSet {
        &self.sets[n.min(self.sets.len() - 1)]
    }

    /// `H = ∩ U_n`, the eventual value of the chain.
    pub fn tail(&self) -> &ElemSet {
        self.sets.last().expect("chains are nonempty")
    }

    /// Least `K` with `U_n = H` for every `n ≥ K`.
    pub fn stable_index(&self) -> usize {
        let tail = self.tail();
        let mut k = self.sets.len() - 1;
        while k > 0 && self.sets[k - 1] == *tail {
            k -= 1;
        }
        k
    }
}

/// A chain of ball radii under a radial law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialChain<L> {
    #[serde(skip)]
    law: L,
    flavor: Flavor,
    radii: Vec<f64>,
}

impl<L: RadialLaw> RadialChain<L> {
    pub fn new(law: L, flavor: Flavor, radii: Vec<f64>) -> Result<Self, PrenormError> {
        if radii.is_empty() {
            return Err(PrenormError::EmptyChain);
        }
        let bound = law.bound();
        for (index, &value) in radii.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0 && value < bound) {
                return Err(PrenormError::Radius { index, value, bound });
            }
        }
        Ok(Self { law, flavor, radii })
    }

    pub fn law(&self) -> &L {
        &self.law
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn radius(&self, n: usize) -> Option<f64> {
        self.radii.get(n).copied()
    }

    /// `r_{n+1} ⊕₁ r_{n+1}` (weak) or `r_{n+1} ⊕₁ (r_{n+1} ⊕₁ r_{n+1})`.
    pub fn law_value(&self, r: f64) -> f64 {
        match self.flavor {
            Flavor::Weak => self.law.compose(r, r),
            Flavor::Admissible => self.law.compose(r, self.law.compose(r, r)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsFile {
    flavor: Flavor,
    sets: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadiiFile {
    flavor: Flavor,
    radii: Vec<f64>,
}

/// A parsed chain file, before it is bound to a model.
#[derive(Clone, Debug, PartialEq)]
pub enum ChainFile {
    Sets { flavor: Flavor, sets: Vec<Vec<usize>> },
    Radii { flavor: Flavor, radii: Vec<f64> },
}

impl ChainFile {
    pub fn parse(bytes: &[u8]) -> Result<Self, PrenormError> {
        let v: Value = serde_json::from_slice(bytes)?;
        let obj = v.as_object().ok_or_else(|| PrenormError::Format("expected a JSON object".into()))?;
        match (obj.contains_key("sets"), obj.contains_key("radii")) {
            (true, false) => {
                let f: SetsFile = serde_json::from_value(v)?;
                Ok(ChainFile::Sets { flavor: f.flavor, sets: f.sets })
            }
            (false, true) => {
                let f: RadiiFile = serde_json::from_value(v)?;
                Ok(ChainFile::Radii { flavor: f.flavor, radii: f.radii })
            }
            _ => Err(PrenormError::Format("exactly one of \"sets\" or \"radii\" is required".into())),
        }
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            ChainFile::Sets { flavor, .. } | ChainFile::Radii { flavor, .. } => *flavor,
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            ChainFile::Sets { flavor, sets } => json!({"flavor": flavor, "sets": sets}),
            ChainFile::Radii { flavor, radii } => json!({"flavor": flavor, "radii": radii}),
        }
        .to_string()
    }

    pub fn into_set_chain(self, m: &FiniteTable) -> Result<SetChain, PrenormError> {
        match self {
            ChainFile::Sets { flavor, sets } => SetChain::from_indices(m, flavor, &sets),
            ChainFile::Radii { .. } => Err(PrenormError::Format("radial chain given for a finite model".into())),
        }
    }

    pub fn into_radial_chain<L: RadialLaw>(self, law: L) -> Result<RadialChain<L>, PrenormError> {
        match self {
            ChainFile::Radii { flavor, radii } => RadialChain::new(law, flavor, radii),
            ChainFile::Sets { .. } => Err(PrenormError::Format("set chain given for a ball model".into())),
        }
    }
}

impl From<&SetChain> for ChainFile {
    fn from(c: &SetChain) -> Self {
        ChainFile::Sets { flavor: c.flavor, sets: c.sets.iter().map(ElemSet::to_vec).collect() }
    }
}

impl<L: RadialLaw> From<&RadialChain<L>> for ChainFile {
    fn from(c: &RadialChain<L>) -> Self {
        ChainFile::Radii { flavor: c.flavor, radii: c.radii.clone() }
    }
}

fn violation(check: &str, index: usize, witness: Value) -> CheckOutcome {
    CheckOutcome::new(check, false).with_witness(witness).with_depth(index as u32).with_residual(1.0)
}

/// A witness `(a, b)` with `a ⊕ b ∉ target`, for `a, b ∈ s`.
pub(crate) fn pair_outside(m: &FiniteTable, s: &ElemSet, target: &ElemSet) -> Option<(usize, usize, usize)> {
    for a in s.iter() {
        for b in s.iter() {
            let ab = m.op(&a, &b);
            if !target.contains(ab) {
                return Some((a, b, ab));
            }
        }
    }
    None
}

/// A witness `(a, b, c)` with `a ⊕ (b ⊕ c) ∉ target`, for `a, b, c ∈ s`.
pub(crate) fn triple_outside(m: &FiniteTable, s: &ElemSet, target: &ElemSet) -> Option<(usize, usize, usize, usize)> {
    let ss = ElemSet::product(m, s, s);
    if ElemSet::product(m, s, &ss).is_subset(target) {
        return None;
    }
    for a in s.iter() {
        for b in s.iter() {
            for c in s.iter() {
                let r = m.op(&a, &m.op(&b, &c));
                if !target.contains(r) {
                    return Some((a, b, c, r));
                }
            }
        }
    }
    None
}

/// Identity membership, symmetry, gyration invariance and the flavor's
/// containment law at every index, including one step into the tail.
pub fn validate_set_chain(m: &FiniteTable, chain: &SetChain) -> Report {
    let mut report = Report::new();
    let sets = chain.sets();

    let mut line = CheckOutcome::new("chain:contains-zero", true);
    if let Some(i) = sets.iter().position(|s| !s.contains(0)) {
        line = violation("chain:contains-zero", i, json!({"set": i}));
    }
    report.push(line);

    let mut line = CheckOutcome::new("chain:symmetric", true);
    'sym: for (i, s) in sets.iter().enumerate() {
        for x in s.iter() {
            let nx = m.inv(&x);
            if !s.contains(nx) {
                line = violation("chain:symmetric", i, json!({"x": x, "inv": nx}));
                break 'sym;
            }
        }
    }
    report.push(line);

    let gyrations = m.gyrations();
    let mut line = CheckOutcome::new("chain:gyr-invariant", true);
    'gyr: for (i, s) in sets.iter().enumerate() {
        for g in &gyrations {
            if let Some(x) = s.iter().find(|&x| !s.contains(g[x])) {
                line = violation("chain:gyr-invariant", i, json!({"x": x, "image": g[x], "gyration": g}));
                break 'gyr;
            }
        }
    }
    report.push(line);

    let name = chain.flavor().law_name();
    let mut line = CheckOutcome::new(name, true).with_depth(sets.len() as u32);
    for n in 0..sets.len() {
        let (big, small) = (chain.get(n), chain.get(n + 1));
        let w = match chain.flavor() {
            Flavor::Weak => pair_outside(m, small, big).map(|(a, b, r)| json!({"a": a, "b": b, "result": r})),
            Flavor::Admissible => {
                triple_outside(m, small, big).map(|(a, b, c, r)| json!({"a": a, "b": b, "c": c, "result": r}))
            }
        };
        if let Some(w) = w {
            line = violation(name, n, w);
            break;
        }
    }
    report.push(line);
    report
}

/// Identity membership and the flavor's radial law
/// `law_value(r_{n+1}) ≤ r_n + tol`.
pub fn validate_radial_chain<L: RadialLaw>(chain: &RadialChain<L>, tol: f64) -> Report {
    let mut report = Report::new();
    let radii = chain.radii();
    let mut line = CheckOutcome::new("chain:contains-zero", true);
    if let Some(i) = radii.iter().position(|&r| !chain.law().inside(0.0, r)) {
        line = violation("chain:contains-zero", i, json!({"radius": radii[i]}));
    }
    report.push(line);

    let name = chain.flavor().law_name();
    let mut line = CheckOutcome::new(name, true).with_depth(radii.len() as u32);
    let mut worst: f64 = 0.0;
    for n in 0..radii.len().saturating_sub(1) {
        let v = chain.law_value(radii[n + 1]);
        worst = worst.max(v - radii[n]);
        if v > radii[n] + tol {
            line = violation(name, n, json!({"r_next": radii[n + 1], "composed": v, "r": radii[n]}))
                .with_residual(v - radii[n]);
            break;
        }
    }
    if line.passed() {
        line = line.with_residual(worst.max(0.0));
    }
    report.push(line);
    report
}

/// The first failing line of a validation report.
pub fn first_violation(report: &Report) -> Option<ChainViolation> {
    report.failures().next().map(|l| ChainViolation {
        law: l.check.clone(),
        index: l.depth.unwrap_or(0) as usize,
        witness: l.witnesses.first().cloned().unwrap_or(Value::Null),
    })
}

pub fn ensure_valid(report: &Report) -> Result<(), PrenormError> {
    match first_violation(report) {
        Some(v) => Err(PrenormError::Violation(v)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::EinsteinLaw;

    #[test]
    fn z4_weak_chain_is_valid() {
        let z4 = FiniteTable::cyclic(4);
        let c = SetChain::from_indices(&z4, Flavor::Weak, &[vec![0, 1, 2, 3], vec![0, 2], vec![0]]).unwrap();
        assert!(validate_set_chain(&z4, &c).passed());
        assert_eq!(c.stable_index(), 2);
        assert_eq!(c.get(7).to_vec(), vec![0]);
    }

    #[test]
    fn asymmetric_set_is_reported() {
        let z4 = FiniteTable::cyclic(4);
        let c = SetChain::from_indices(&z4, Flavor::Weak, &[vec![0, 1, 2, 3], vec![0, 1]]).unwrap();
        let r = validate_set_chain(&z4, &c);
        let sym = r.lines().iter().find(|l| l.check == "chain:symmetric").unwrap();
        assert!(!sym.passed());
        assert_eq!(sym.depth, Some(1));
        assert_eq!(sym.witnesses[0], json!({"x": 1, "inv": 3}));
        assert!(matches!(ensure_valid(&r), Err(PrenormError::Violation(_))));
    }

    #[test]
    fn radial_chain_law() {
        let law = EinsteinLaw::new(1.0);
        let ok = RadialChain::new(law, Flavor::Weak, vec![0.8, 0.5, 0.25, 0.125]).unwrap();
        assert!(validate_radial_chain(&ok, 1e-12).passed());
        // 0.5 ⊕₁ 0.5 = 0.8 > 0.7
        let bad = RadialChain::new(law, Flavor::Weak, vec![0.7, 0.5]).unwrap();
        let v = first_violation(&validate_radial_chain(&bad, 1e-12)).unwrap();
        assert_eq!(v.index, 0);
        assert!(RadialChain::new(law, Flavor::Weak, vec![1.0]).is_err());
        assert!(RadialChain::new(law, Flavor::Weak, vec![]).is_err());
    }

    #[test]
    fn chain_files() {
        let f = ChainFile::parse(br#"{"flavor": "weak", "sets": [[0,1,2,3],[0,2],[0]]}"#).unwrap();
        assert_eq!(f.flavor(), Flavor::Weak);
        assert_eq!(ChainFile::parse(f.to_json().as_bytes()).unwrap(), f);
        let r = ChainFile::parse(br#"{"flavor": "admissible", "radii": [0.8, 0.2]}"#).unwrap();
        assert!(matches!(r, ChainFile::Radii { .. }));
        for bad in [
            r#"{"flavor": "weak"}"#,
            r#"{"flavor": "strong", "sets": [[0]]}"#,
            r#"{"flavor": "weak", "sets": [[0]], "radii": [0.1]}"#,
            r#"{"flavor": "weak", "sets": [[0]], "extra": 1}"#,
            r#"[1, 2]"#,
        ] {
            assert!(ChainFile::parse(bad.as_bytes()).is_err(), "{bad}");
        }
        let z4 = FiniteTable::cyclic(4);
        let oob = ChainFile::parse(br#"{"flavor": "weak", "sets": [[0,4]]}"#).unwrap();
        assert!(matches!(oob.into_set_chain(&z4), Err(PrenormError::OutOfRange(4))));
    }
}
