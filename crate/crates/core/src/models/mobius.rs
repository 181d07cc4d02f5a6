use num_complex::Complex64;
use rand::Rng;

use crate::error::GyroError;
use crate::gyro::{Gyrogroup, NormedGyrogroup, Sampled};
use crate::models::radial::EinsteinLaw;

/// The open unit disk under `a ⊕ b = (a + b)/(1 + āb)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusModel {
    eps: f64,
}

impl Default for MobiusModel {
    fn default() -> Self {
        Self { eps: 1e-9 }
    }
}

impl MobiusModel {
    pub fn new(eps: f64) -> Result<Self, GyroError> {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(GyroError::Carrier(format!("tolerance must be nonnegative, got {eps}")));
        }
        Ok(Self { eps })
    }

    pub fn law(&self) -> EinsteinLaw {
        EinsteinLaw::new(1.0)
    }

    pub fn element(&self, re: f64, im: f64) -> Result<Complex64, GyroError> {
        let z = Complex64::new(re, im);
        self.check_carrier(&z)?;
        Ok(z)
    }

    pub fn mobius_add(&self, a: &Complex64, b: &Complex64) -> Result<Complex64, GyroError> {
        self.try_op(a, b)
    }
}

impl Gyrogroup for MobiusModel {
    type Elem = Complex64;

    fn identity(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn op(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        (a + b) / (1.0 + a.conj() * b)
    }

    fn inv(&self, a: &Complex64) -> Complex64 {
        -a
    }

    /// Closed form `gyr[a, b](z) = (1 + a b̄)/(1 + ā b) · z`.
    fn gyr(&self, a: &Complex64, b: &Complex64, z: &Complex64) -> Complex64 {
        (1.0 + a * b.conj()) / (1.0 + a.conj() * b) * z
    }

    fn contains(&self, a: &Complex64) -> bool {
        a.is_finite() && a.norm() < 1.0
    }

    fn distance(&self, a: &Complex64, b: &Complex64) -> f64 {
        let d = a - b;
        d.re.abs().max(d.im.abs())
    }

    fn tolerance(&self) -> f64 {
        self.eps
    }
}

impl Sampled for MobiusModel {
    fn elements(&self) -> Option<Vec<Complex64>> {
        None
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        self.random_in_ball(rng, 1.0)
    }

    fn stress_elements(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for r in [0.9, 0.99] {
            for k in 0..8 {
                out.push(Complex64::from_polar(r, std::f64::consts::FRAC_PI_4 * k as f64));
            }
        }
        out
    }
}

impl NormedGyrogroup for MobiusModel {
    fn coordinates(&self, a: &Complex64) -> Vec<f64> {
        vec![a.re, a.im]
    }

    fn from_coordinates(&self, coords: &[f64]) -> Result<Complex64, GyroError> {
        match coords {
            [re, im] => self.element(*re, *im),
            _ => Err(GyroError::Carrier(format!("expected 2 coordinates, got {}", coords.len()))),
        }
    }

    fn norm(&self, a: &Complex64) -> f64 {
        a.norm()
    }

    fn bound(&self) -> f64 {
        1.0
    }

    fn dimension(&self) -> usize {
        2
    }

    fn scale(&self, a: &Complex64, t: f64) -> Complex64 {
        a * t
    }

    fn random_direction<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
    }

    fn directions(&self, count: usize) -> Vec<Complex64> {
        (0..count)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64))
            .collect()
    }
}
