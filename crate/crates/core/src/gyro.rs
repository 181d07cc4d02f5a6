//! The abstract gyrogroup interface.
//!
//! A model supplies the carrier, `⊕`, `⊖` and `0`. Gyrations default to the
//! closed formula `gyr[a, b](z) = ⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ z))`; a model may
//! override [`Gyrogroup::gyr`] with a closed form, in which case
//! [`gyr_by_formula`] stays available as the oracle.

use std::fmt::Debug;

use rand::Rng;
use serde::Serialize;

use crate::error::GyroError;

pub trait Gyrogroup {
    type Elem: Clone + PartialEq + Debug + Serialize;

    fn identity(&self) -> Self::Elem;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn gyr(&self, a: &Self::Elem, b: &Self::Elem, z: &Self::Elem) -> Self::Elem {
        gyr_by_formula(self, a, b, z)
    }

    /// Whether `a` satisfies the carrier constraint.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// Residual between two elements: componentwise max-abs for continuous
    /// models, 0 or 1 for finite ones.
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;

    /// Equality tolerance ε. Zero for finite models.
    fn tolerance(&self) -> f64;

    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.distance(a, b) <= self.tolerance()
    }

    fn try_op(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GyroError> {
        self.check_carrier(a)?;
        self.check_carrier(b)?;
        Ok(self.op(a, b))
    }

    fn try_inv(&self, a: &Self::Elem) -> Result<Self::Elem, GyroError> {
        self.check_carrier(a)?;
        Ok(self.inv(a))
    }

    fn try_gyr(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        z: &Self::Elem,
    ) -> Result<Self::Elem, GyroError> {
        self.check_carrier(a)?;
        self.check_carrier(b)?;
        self.check_carrier(z)?;
        Ok(self.gyr(a, b, z))
    }

    fn check_carrier(&self, a: &Self::Elem) -> Result<(), GyroError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GyroError::Carrier(format!("{a:?}")))
        }
    }
}

/// `⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ z))`, independent of any model override.
pub fn gyr_by_formula<G: Gyrogroup + ?Sized>(
    model: &G,
    a: &G::Elem,
    b: &G::Elem,
    z: &G::Elem,
) -> G::Elem {
    let ab = model.op(a, b);
    let abz = model.op(a, &model.op(b, z));
    model.op(&model.inv(&ab), &abz)
}

/// Models whose carrier can be listed or sampled.
pub trait Sampled: Gyrogroup {
    /// Every element, for finite carriers.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Deterministic points near the edge of the carrier.
    fn stress_elements(&self) -> Vec<Self::Elem> {
        Vec::new()
    }
}

/// Ball models: the carrier is an open ball `‖v‖ < c` in a real vector space
/// and every gyration is an isometry.
pub trait NormedGyrogroup: Sampled {
    fn norm(&self, a: &Self::Elem) -> f64;

    /// The speed bound `c` (1 for the disk).
    fn bound(&self) -> f64;

    /// Ambient dimension over ℝ.
    fn dimension(&self) -> usize;

    /// Ambient-space scalar multiple `t·a` (not gyro scalar multiplication).
    fn scale(&self, a: &Self::Elem, t: f64) -> Self::Elem;

    fn random_direction<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `count` deterministic unit vectors spread over the sphere.
    fn directions(&self, count: usize) -> Vec<Self::Elem>;

    /// Real coordinates in the ambient space.
    fn coordinates(&self, a: &Self::Elem) -> Vec<f64>;

    /// Inverse of [`NormedGyrogroup::coordinates`]; checks the carrier.
    #[allow(clippy::wrong_self_convention)]
    fn from_coordinates(&self, coords: &[f64]) -> Result<Self::Elem, GyroError>;

    /// Uniform sample from the open ball of the given radius.
    fn random_in_ball<R: Rng + ?Sized>(&self, rng: &mut R, radius: f64) -> Self::Elem {
        let dir = self.random_direction(rng);
        let u: f64 = rng.random();
        self.scale(&dir, radius * u.powf(1.0 / self.dimension() as f64))
    }
}
