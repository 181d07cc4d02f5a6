//! Prenorms from dyadic families.
//!
//! The level function is `f(x) = inf{m/2ⁿ : x ∈ V(m/2ⁿ)}`, capped at 1.
//! On ball models `f` is already a prenorm and `N = f`. On finite carriers
//! `f` can fail subadditivity, so `N(x) = max_y |f(x ⊕ y) − f(y)|`; this
//! agrees with `f` whenever `f` is a prenorm.

use serde::Serialize;

use crate::error::PrenormError;
use crate::gyro::{Gyrogroup, NormedGyrogroup};
use crate::models::{FiniteTable, RadialLaw};
use crate::prenorm::chain::{RadialChain, SetChain};
use crate::prenorm::family::{build_radial_family, build_set_family, RadialFamily, SetFamily};
use crate::set::ElemSet;

/// A real function on a carrier with a stated evaluation tolerance.
pub trait Prenorm<G: Gyrogroup> {
    fn eval(&self, m: &G, x: &G::Elem) -> f64;

    /// Absolute error budget on a single value.
    fn tolerance(&self) -> f64;
}

/// Exact dyadic prenorm on a finite carrier.
///
/// When the requested depth reaches `K − 1`, with `K` the index where the
/// chain becomes constant, the level function is the exact infinite-depth
/// infimum: every deeper digit contributes the tail `H`, so
/// `f(x) = min{k/2^{K−1} : x ∈ H ⊕ V(k/2^{K−1})}`. Shallower depths give the
/// truncated infimum.
#[derive(Clone, Debug, Serialize)]
pub struct FinitePrenorm {
    depth: u32,
    exact: bool,
    tail: ElemSet,
    level: Vec<f64>,
    values: Vec<f64>,
    #[serde(skip)]
    family: SetFamily,
}

impl FinitePrenorm {
    pub fn new(m: &FiniteTable, chain: &SetChain, depth: u32) -> Result<Self, PrenormError> {
        if chain.universe() != m.order() {
            return Err(PrenormError::Universe { index: 0, expected: m.order(), got: chain.universe() });
        }
        let settle = chain.stable_index().saturating_sub(1) as u32;
        let exact = depth >= settle;
        let d = if exact { settle } else { depth };
        let family = build_set_family(m, chain, d)?;
        let top = 1usize << d;
        let tail = chain.tail().clone();
        let denom = top as f64;
        let mut level = vec![1.0; m.order()];
        if exact {
            for k in 0..top {
                let s = ElemSet::product(m, &tail, family.at(k));
                for x in s.iter() {
                    level[x] = f64::min(level[x], k as f64 / denom);
                }
            }
        } else {
            for k in 0..=top {
                for x in family.at(k).iter() {
                    level[x] = f64::min(level[x], k as f64 / denom);
                }
            }
        }
        let n = m.order();
        let values = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (level[m.op(&x, &y)] - level[y]).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        Ok(Self { depth: d, exact, tail, level, values, family })
    }

    /// Depth of the family actually built.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn tail(&self) -> &ElemSet {
        &self.tail
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// The dyadic infimum `f(x)`.
    pub fn level(&self, x: usize) -> f64 {
        self.level[x]
    }

    pub fn levels(&self) -> &[f64] {
        &self.level
    }

    pub fn value(&self, x: usize) -> f64 {
        self.values[x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Whether `f` itself is already a prenorm, so that `N = f`.
    pub fn level_is_prenorm(&self) -> bool {
        self.level == self.values
    }
}

impl Prenorm<FiniteTable> for FinitePrenorm {
    fn eval(&self, _m: &FiniteTable, x: &usize) -> f64 {
        self.values[*x]
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// `N(x) = f(‖x‖)` on a ball model, with `f` read off a radial family.
#[derive(Clone, Debug, Serialize)]
pub struct RadialPrenorm<L> {
    #[serde(skip)]
    law: L,
    family: RadialFamily,
    /// Running maximum of the family radii, for binary search.
    #[serde(skip)]
    envelope: Vec<f64>,
    zero_tol: f64,
}

impl<L: RadialLaw + Clone> RadialPrenorm<L> {
    /// Norms at most `zero_tol` count as the identity.
    pub fn new(chain: &RadialChain<L>, depth: u32, zero_tol: f64) -> Result<Self, PrenormError> {
        let family = build_radial_family(chain, depth)?;
        let mut envelope = Vec::with_capacity(family.radii().len());
        let mut hi = f64::NEG_INFINITY;
        for &r in family.radii() {
            hi = hi.max(r);
            envelope.push(hi);
        }
        Ok(Self { law: chain.law().clone(), family, envelope, zero_tol })
    }
}

impl<L: RadialLaw> RadialPrenorm<L> {
    pub fn family(&self) -> &RadialFamily {
        &self.family
    }

    pub fn depth(&self) -> u32 {
        self.family.depth()
    }

    /// `f` as a function of the norm.
    pub fn at_norm(&self, r: f64) -> f64 {
        if r <= self.zero_tol {
            return 0.0;
        }
        let k = self.envelope.partition_point(|&radius| !self.law.inside(r, radius));
        let top = (self.envelope.len() - 1) as f64;
        (k as f64 / top).min(1.0)
    }
}

impl<L: RadialLaw, G: NormedGyrogroup> Prenorm<G> for RadialPrenorm<L> {
    fn eval(&self, m: &G, x: &G::Elem) -> f64 {
        self.at_norm(m.norm(x))
    }

    fn tolerance(&self) -> f64 {
        1.0 / (1u64 << self.family.depth()) as f64
    }
}
