//! The dyadic family `V(m/2ⁿ)`.
//!
//! `V(1/2ⁿ) = Uₙ`, `V((2m+1)/2ⁿ) = Uₙ ⊕ V(m/2^{n−1})`, `V(m/2ⁿ) = G` for
//! `m > 2ⁿ`. With `V(0) = {0}` every entry at depth `D` is reached by
//! `V(k/2^D) = Uₙ ⊕ V((k − 2^{D−n})/2^D)` where `n = D − tz(k)`.

use serde::Serialize;
use serde_json::json;

use crate::error::PrenormError;
use crate::models::{FiniteTable, RadialLaw};
use crate::prenorm::chain::{RadialChain, SetChain};
use crate::report::CheckOutcome;
use crate::set::ElemSet;

/// Deepest supported family; `2^D + 1` entries are materialized.
pub const MAX_DEPTH: u32 = 20;

fn check_depth(depth: u32) -> Result<(), PrenormError> {
    if depth > MAX_DEPTH {
        return Err(PrenormError::DepthTooLarge { depth, max: MAX_DEPTH });
    }
    Ok(())
}

/// Level `n` of the digit that `k/2^D` ends in.
fn level(k: usize, depth: u32) -> usize {
    depth as usize - k.trailing_zeros() as usize
}

/// Numerator of `num/2^exp` rescaled to depth `depth`, or `None` when `exp`
/// is deeper than the family.
fn rescale(num: usize, exp: u32, depth: u32) -> Option<usize> {
    (exp <= depth).then(|| num << (depth - exp))
}

#[derive(Clone, Debug, Serialize)]
pub struct SetFamily {
    depth: u32,
    sets: Vec<ElemSet>,
}

impl SetFamily {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `V(k/2^depth)` for `0 ≤ k ≤ 2^depth`.
    pub fn at(&self, k: usize) -> &ElemSet {
        &self.sets[k]
    }

    pub fn entries(&self) -> &[ElemSet] {
        &self.sets
    }

    /// `V(num/2^exp)`; `G` past 1, `None` below the family's resolution.
    pub fn value(&self, num: usize, exp: u32) -> Option<ElemSet> {
        let k = rescale(num, exp, self.depth)?;
        if k >= self.sets.len() {
            Some(ElemSet::full(self.sets[0].universe()))
        } else {
            Some(self.sets[k].clone())
        }
    }
}

pub fn build_set_family(m: &FiniteTable, chain: &SetChain, depth: u32) -> Result<SetFamily, PrenormError> {
    check_depth(depth)?;
    let top = 1usize << depth;
    let mut sets = Vec::with_capacity(top + 1);
    sets.push(ElemSet::singleton(m.order(), 0));
    for k in 1..=top {
        let n = level(k, depth);
        let prev = k - (1usize << (depth as usize - n));
        sets.push(ElemSet::product(m, chain.get(n), &sets[prev]));
    }
    Ok(SetFamily { depth, sets })
}

/// `V(1) = U₀`, `V(1/2ⁿ) = Uₙ`, doubling consistency and monotonicity.
pub fn check_set_family(fam: &SetFamily, chain: &SetChain) -> Vec<CheckOutcome> {
    let d = fam.depth();
    let mut levels = CheckOutcome::new("family:levels", true).with_depth(d);
    for n in 0..=d {
        if fam.value(1, n).as_ref() != Some(chain.get(n as usize)) {
            levels = CheckOutcome::new("family:levels", false).with_depth(d).with_witness(json!({"n": n}));
            break;
        }
    }
    let mut doubling = CheckOutcome::new("family:doubling", true).with_depth(d);
    'dbl: for n in 1..=d {
        for m in 1..=(1usize << (n - 1)) {
            if fam.value(2 * m, n) != fam.value(m, n - 1) {
                doubling = CheckOutcome::new("family:doubling", false)
                    .with_depth(d)
                    .with_witness(json!({"m": 2 * m, "n": n}));
                break 'dbl;
            }
        }
    }
    let mut mono = CheckOutcome::new("family:monotone", true).with_depth(d);
    for k in 1..fam.entries().len() {
        if !fam.at(k - 1).is_subset(fam.at(k)) {
            mono = CheckOutcome::new("family:monotone", false).with_depth(d).with_witness(json!({"k": k}));
            break;
        }
    }
    vec![levels, doubling, mono]
}

/// Radii of the balls `V(k/2^D)`; entry 0 stands for `{0}`.
#[derive(Clone, Debug, Serialize)]
pub struct RadialFamily {
    depth: u32,
    radii: Vec<f64>,
}

impl RadialFamily {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn at(&self, k: usize) -> f64 {
        self.radii[k]
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Radius of `V(num/2^exp)`; `∞` (the whole carrier) past 1.
    pub fn value(&self, num: usize, exp: u32) -> Option<f64> {
        let k = rescale(num, exp, self.depth)?;
        Some(self.radii.get(k).copied().unwrap_or(f64::INFINITY))
    }
}

pub fn build_radial_family<L: RadialLaw>(chain: &RadialChain<L>, depth: u32) -> Result<RadialFamily, PrenormError> {
    check_depth(depth)?;
    if chain.len() <= depth as usize {
        return Err(PrenormError::TooShort { depth, len: chain.len() });
    }
    let top = 1usize << depth;
    let mut radii = Vec::with_capacity(top + 1);
    radii.push(0.0);
    for k in 1..=top {
        let n = level(k, depth);
        let prev = k - (1usize << (depth as usize - n));
        let r = chain.radius(n).expect("length checked");
        radii.push(if prev == 0 { r } else { chain.law().compose(r, radii[prev]) });
    }
    Ok(RadialFamily { depth, radii })
}
