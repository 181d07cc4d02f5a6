//! Micro-associativity: `a ⊕ (b ⊕ V) = (a ⊕ b) ⊕ V` for `a, b ∈ W`.

use serde_json::json;

use crate::error::PrenormError;
use crate::gyro::{Gyrogroup, NormedGyrogroup};
use crate::models::FiniteTable;
use crate::report::CheckOutcome;
use crate::sample::SampleSpec;
use crate::set::ElemSet;

/// Boundary-residual tolerance for ball models.
pub const MICRO_ASSOC_TOL: f64 = 1e-6;

/// Boundary directions sampled per pair on ball models.
pub const MICRO_ASSOC_DIRECTIONS: usize = 256;

/// Exact set comparison over every `a, b ∈ W`. The witness is a point of
/// the symmetric difference.
pub fn micro_assoc_check(m: &FiniteTable, w: &ElemSet, v: &ElemSet) -> Result<CheckOutcome, PrenormError> {
    if let Some(x) = w.first_outside(v) {
        return Err(PrenormError::NotContained(x.to_string()));
    }
    for a in w.iter() {
        for b in w.iter() {
            let lhs = ElemSet::left_translate(m, a, &ElemSet::left_translate(m, b, v));
            let rhs = ElemSet::left_translate(m, m.op(&a, &b), v);
            if lhs != rhs {
                let x = lhs.first_outside(&rhs).or_else(|| rhs.first_outside(&lhs)).expect("sets differ");
                return Ok(CheckOutcome::new("micro-assoc", false)
                    .with_witness(json!({"a": a, "b": b, "point": x, "lhs": lhs, "rhs": rhs}))
                    .with_residual(1.0));
            }
        }
    }
    Ok(CheckOutcome::new("micro-assoc", true).with_samples(w.len() * w.len()))
}

/// Norm balls `W = B(w)` and `V = B(v)`. For sampled `a, b ∈ W` and each
/// boundary point `r·u` of `V`, the image of `r·u` under one side must land
/// on the boundary of the other side:
/// `‖⊖b ⊕ (⊖a ⊕ ((a ⊕ b) ⊕ r·u))‖ = r` and `‖⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ r·u))‖ = r`.
/// Since both sides are images of `V` under boundary-preserving bijections,
/// this bounds the Hausdorff distance between the boundaries.
pub fn micro_assoc_radial<G: NormedGyrogroup>(
    m: &G,
    w: f64,
    v: f64,
    spec: SampleSpec,
    directions: usize,
) -> Result<CheckOutcome, PrenormError> {
    if !(w >= 0.0 && w <= v) {
        return Err(PrenormError::NotContained(format!("radius {w} > {v}")));
    }
    if v.is_nan() || v >= m.bound() {
        return Err(PrenormError::Radius { index: 0, value: v, bound: m.bound() });
    }
    let dirs = m.directions(directions);
    let mut rng = spec.rng();
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for _ in 0..spec.samples {
        let a = m.random_in_ball(&mut rng, w);
        let b = m.random_in_ball(&mut rng, w);
        let ab = m.op(&a, &b);
        let (na, nb, nab) = (m.inv(&a), m.inv(&b), m.inv(&ab));
        for u in &dirs {
            let p = m.scale(u, v);
            let back = m.op(&nb, &m.op(&na, &m.op(&ab, &p)));
            let fwd = m.op(&nab, &m.op(&a, &m.op(&b, &p)));
            let e = (m.norm(&back) - v).abs().max((m.norm(&fwd) - v).abs());
            if e > worst || e.is_nan() {
                worst = if e.is_nan() { f64::INFINITY } else { e };
                if e.is_nan() || e > MICRO_ASSOC_TOL {
                    witness = Some(json!({"a": a, "b": b, "direction": u}));
                }
            }
        }
    }
    let mut line = CheckOutcome::new("micro-assoc", witness.is_none())
        .with_residual(worst)
        .with_samples(spec.samples * dirs.len());
    if let Some(wt) = witness {
        line = line.with_witness(wt);
    }
    Ok(line)
}
