use nalgebra::SVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::GyroError;
use crate::gyro::{Gyrogroup, NormedGyrogroup, Sampled};
use crate::models::radial::EinsteinLaw;

pub type Velocity<const D: usize> = SVector<f64, D>;

/// Relativistic velocities `‖v‖ < c` under Einstein addition.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinModel<const D: usize> {
    c: f64,
    eps: f64,
}

pub type Einstein2 = EinsteinModel<2>;
pub type Einstein3 = EinsteinModel<3>;

impl<const D: usize> Default for EinsteinModel<D> {
    fn default() -> Self {
        Self { c: 1.0, eps: 1e-9 }
    }
}

impl<const D: usize> EinsteinModel<D> {
    pub fn new(c: f64, eps: f64) -> Result<Self, GyroError> {
        if !(c.is_finite() && c > 0.0) {
            return Err(GyroError::Carrier(format!("speed bound must be positive, got {c}")));
        }
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(GyroError::Carrier(format!("tolerance must be nonnegative, got {eps}")));
        }
        Ok(Self { c, eps })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn law(&self) -> EinsteinLaw {
        EinsteinLaw::new(self.c)
    }

    pub fn element(&self, coords: [f64; D]) -> Result<Velocity<D>, GyroError> {
        let v = Velocity::<D>::from(coords);
        self.check_carrier(&v)?;
        Ok(v)
    }

    pub fn element_from_slice(&self, coords: &[f64]) -> Result<Velocity<D>, GyroError> {
        if coords.len() != D {
            return Err(GyroError::Carrier(format!(
                "expected {D} coordinates, got {}",
                coords.len()
            )));
        }
        let v = Velocity::<D>::from_column_slice(coords);
        self.check_carrier(&v)?;
        Ok(v)
    }

    /// `γ_u = 1/√(1 − ‖u‖²/c²)`.
    pub fn lorentz_gamma(&self, u: &Velocity<D>) -> Result<f64, GyroError> {
        self.check_carrier(u)?;
        Ok(self.gamma(u))
    }

    fn gamma(&self, u: &Velocity<D>) -> f64 {
        1.0 / (1.0 - u.norm_squared() / (self.c * self.c)).sqrt()
    }

    pub fn einstein_add(&self, u: &Velocity<D>, v: &Velocity<D>) -> Result<Velocity<D>, GyroError> {
        self.try_op(u, v)
    }
}

impl<const D: usize> Gyrogroup for EinsteinModel<D> {
    type Elem = Velocity<D>;

    fn identity(&self) -> Velocity<D> {
        Velocity::<D>::zeros()
    }

    fn op(&self, u: &Velocity<D>, v: &Velocity<D>) -> Velocity<D> {
        let c2 = self.c * self.c;
        let uv = u.dot(v);
        let gamma = self.gamma(u);
        let denom = 1.0 + uv / c2;
        // |⟨u,v⟩| < c² on the carrier, so denom > 0
        debug_assert!(denom > 0.0, "1 + ⟨u,v⟩/c² vanished");
        (u + v / gamma + u * (gamma / (1.0 + gamma) * uv / c2)) / denom
    }

    fn inv(&self, a: &Velocity<D>) -> Velocity<D> {
        -a
    }

    /// Closed form `w + (A u + B v)/D` with `D = γ_{u⊕v} + 1`; avoids the
    /// cancellation in `⊖(u⊕v) ⊕ (u ⊕ (v ⊕ w))` near the boundary.
    fn gyr(&self, u: &Velocity<D>, v: &Velocity<D>, w: &Velocity<D>) -> Velocity<D> {
        let c2 = self.c * self.c;
        let (gu, gv) = (self.gamma(u), self.gamma(v));
        let (uv, uw, vw) = (u.dot(v) / c2, u.dot(w) / c2, v.dot(w) / c2);
        let a = -gu * gu / (gu + 1.0) * (gv - 1.0) * uw
            + gu * gv * vw
            + 2.0 * gu * gu * gv * gv / ((gu + 1.0) * (gv + 1.0)) * uv * vw;
        let b = -gv / (gv + 1.0) * (gu * (gv + 1.0) * uw + (gu - 1.0) * gv * vw);
        let d = gu * gv * (1.0 + uv) + 1.0;
        w + (u * a + v * b) / d
    }

    fn contains(&self, a: &Velocity<D>) -> bool {
        a.iter().all(|x| x.is_finite()) && a.norm() < self.c
    }

    fn distance(&self, a: &Velocity<D>, b: &Velocity<D>) -> f64 {
        (a - b).amax()
    }

    fn tolerance(&self) -> f64 {
        self.eps
    }
}

impl<const D: usize> Sampled for EinsteinModel<D> {
    fn elements(&self) -> Option<Vec<Velocity<D>>> {
        None
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Velocity<D> {
        self.random_in_ball(rng, self.c)
    }

    fn stress_elements(&self) -> Vec<Velocity<D>> {
        let mut dirs: Vec<Velocity<D>> = Vec::new();
        for i in 0..D {
            let mut e = Velocity::<D>::zeros();
            e[i] = 1.0;
            dirs.push(e);
            dirs.push(-e);
        }
        dirs.push(Velocity::<D>::repeat(1.0).normalize());
        let mut out = Vec::new();
        for frac in [0.9, 0.99] {
            for d in &dirs {
                out.push(d * (frac * self.c));
            }
        }
        out
    }
}

impl<const D: usize> NormedGyrogroup for EinsteinModel<D> {
    fn coordinates(&self, a: &Velocity<D>) -> Vec<f64> {
        a.iter().copied().collect()
    }

    fn from_coordinates(&self, coords: &[f64]) -> Result<Velocity<D>, GyroError> {
        self.element_from_slice(coords)
    }

    fn norm(&self, a: &Velocity<D>) -> f64 {
        a.norm()
    }

    fn bound(&self) -> f64 {
        self.c
    }

    fn dimension(&self) -> usize {
        D
    }

    fn scale(&self, a: &Velocity<D>, t: f64) -> Velocity<D> {
        a * t
    }

    fn random_direction<R: Rng + ?Sized>(&self, rng: &mut R) -> Velocity<D> {
        loop {
            let v = Velocity::<D>::from_fn(|_, _| rng.sample(StandardNormal));
            let n = v.norm();
            if n > 1e-12 {
                return v / n;
            }
        }
    }

    fn directions(&self, count: usize) -> Vec<Velocity<D>> {
        match D {
            1 => (0..count)
                .map(|k| Velocity::<D>::repeat(if k % 2 == 0 { 1.0 } else { -1.0 }))
                .collect(),
            2 => (0..count)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / count as f64;
                    Velocity::<D>::from_fn(|i, _| if i == 0 { t.cos() } else { t.sin() })
                })
                .collect(),
            3 => {
                // Fibonacci lattice
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                (0..count)
                    .map(|k| {
                        let y = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                        let r = (1.0 - y * y).sqrt();
                        let t = golden * k as f64;
                        let xyz = [r * t.cos(), y, r * t.sin()];
                        Velocity::<D>::from_fn(|i, _| xyz[i])
                    })
                    .collect()
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(count as u64);
                (0..count).map(|_| self.random_direction(&mut rng)).collect()
            }
        }
    }
}
