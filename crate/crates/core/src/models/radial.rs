//! One-dimensional arithmetic on ball radii.
//!
//! For ball models `B(r₁) ⊕ B(r₂) = B(r₁ ⊕₁ r₂)` where `⊕₁` is the collinear
//! restriction of the model's addition. That identity lets set arithmetic on
//! norm balls be carried out on radii alone.

use serde::Serialize;

use crate::error::GyroError;

/// How ball radii compose and how membership is decided.
pub trait RadialLaw {
    fn compose(&self, a: f64, b: f64) -> f64;

    /// Supremum of admissible radii.
    fn bound(&self) -> f64;

    /// Whether a point of norm `norm` lies in the ball of radius `radius`.
    fn inside(&self, norm: f64, radius: f64) -> bool;

    /// Largest `r` with `r ⊕₁ r ≤ radius`.
    fn half(&self, radius: f64) -> f64;

    /// Largest `r` with `r ⊕₁ (r ⊕₁ r) ≤ radius`.
    fn third(&self, radius: f64) -> f64;
}

/// Einstein/Möbius collinear addition `(a + b)/(1 + ab/c²)` on open balls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EinsteinLaw {
    pub c: f64,
}

impl EinsteinLaw {
    pub fn new(c: f64) -> Self {
        Self { c }
    }

    fn rapidity(&self, r: f64) -> f64 {
        (r / self.c).atanh()
    }

    fn radius_at(&self, phi: f64) -> f64 {
        self.c * phi.tanh()
    }

    /// Step down until the composed value fits under `target`.
    fn fit<F: Fn(f64) -> f64>(&self, mut r: f64, target: f64, composed: F) -> f64 {
        while r > 0.0 && composed(r) > target {
            r = r.next_down();
        }
        r.max(0.0)
    }
}

impl RadialLaw for EinsteinLaw {
    fn compose(&self, a: f64, b: f64) -> f64 {
        (a + b) / (1.0 + a * b / (self.c * self.c))
    }

    fn bound(&self) -> f64 {
        self.c
    }

    fn inside(&self, norm: f64, radius: f64) -> bool {
        norm < radius
    }

    fn half(&self, radius: f64) -> f64 {
        let r = self.radius_at(self.rapidity(radius) / 2.0);
        self.fit(r, radius, |r| self.compose(r, r))
    }

    fn third(&self, radius: f64) -> f64 {
        let r = self.radius_at(self.rapidity(radius) / 3.0);
        self.fit(r, radius, |r| self.compose(r, self.compose(r, r)))
    }
}

/// A ball radius `0 ≤ r < c`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct RadialScalar(f64);

impl RadialScalar {
    pub fn new(r: f64, c: f64) -> Result<Self, GyroError> {
        if r.is_finite() && (0.0..c).contains(&r) {
            Ok(Self(r))
        } else {
            Err(GyroError::RadialDomain { value: r, bound: c })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `(r₁ + r₂)/(1 + r₁r₂/c²)`.
pub fn radial_add(c: f64, r1: RadialScalar, r2: RadialScalar) -> Result<RadialScalar, GyroError> {
    RadialScalar::new(r1.0, c)?;
    RadialScalar::new(r2.0, c)?;
    RadialScalar::new(EinsteinLaw::new(c).compose(r1.0, r2.0), c)
}
