//! Metrics induced by a prenorm.
//!
//! * `ρ_N(x, y) = N(⊖x ⊕ y) + N(⊖y ⊕ x)` on `G`;
//! * `d(x, y) = |N(x) − N(y)|`, a pseudometric on `G`;
//! * `ϱ(πx, πy) = d(⊖x ⊕ y, 0) + d(⊖y ⊕ x, 0)` on `G/H`.

use std::collections::BTreeSet;

use serde_json::json;

use crate::coset::{CosetPartition, Subset};
use crate::error::{CosetError, PrenormError};
use crate::gyro::{Gyrogroup, Sampled};
use crate::models::FiniteTable;
use crate::prenorm::norm::{FinitePrenorm, Prenorm};
use crate::report::CheckOutcome;
use crate::sample::{for_each_tuple, SampleSpec};
use crate::set::ElemSet;

pub fn rho_n<G: Gyrogroup, P: Prenorm<G>>(m: &G, p: &P, x: &G::Elem, y: &G::Elem) -> f64 {
    p.eval(m, &m.op(&m.inv(x), y)) + p.eval(m, &m.op(&m.inv(y), x))
}

pub fn pseudo_distance<G: Gyrogroup, P: Prenorm<G>>(m: &G, p: &P, x: &G::Elem, y: &G::Elem) -> f64 {
    (p.eval(m, x) - p.eval(m, y)).abs()
}

/// `ϱ` evaluated at the representatives `x`, `y`.
pub fn varrho_at<G: Gyrogroup, P: Prenorm<G>>(m: &G, p: &P, x: &G::Elem, y: &G::Elem) -> f64 {
    let zero = m.identity();
    pseudo_distance(m, p, &m.op(&m.inv(x), y), &zero) + pseudo_distance(m, p, &m.op(&m.inv(y), x), &zero)
}

/// Worst-case accumulator for a sampled inequality.
struct Worst {
    name: &'static str,
    tol: f64,
    residual: f64,
    witness: Option<serde_json::Value>,
}

impl Worst {
    fn new(name: &'static str, tol: f64) -> Self {
        Self { name, tol, residual: 0.0, witness: None }
    }

    /// `excess ≤ tol` is a pass.
    fn record(&mut self, excess: f64, w: impl FnOnce() -> serde_json::Value) {
        // NaN counts as a violation
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        let bad = !(excess <= self.tol);
        if excess > self.residual || excess.is_nan() {
            self.residual = if excess.is_nan() { f64::INFINITY } else { excess };
        }
        if bad && self.witness.is_none() {
            self.witness = Some(w());
        }
    }

    fn finish(self, samples: usize) -> CheckOutcome {
        let mut line = CheckOutcome::new(self.name, self.witness.is_none())
            .with_residual(self.residual)
            .with_samples(samples);
        if let Some(w) = self.witness {
            line = line.with_witness(w);
        }
        line
    }
}

/// `N(0) = 0`, `N(⊖x) = N(x)`, `N(x ⊕ y) ≤ N(x) + N(y)` and
/// `N(gyr[a, b](z)) = N(z)`, within the prenorm's tolerance.
pub fn check_prenorm_laws<G: Sampled, P: Prenorm<G>>(m: &G, p: &P, spec: SampleSpec) -> Vec<CheckOutcome> {
    let tol = p.tolerance();
    let n0 = p.eval(m, &m.identity());
    let mut zero = CheckOutcome::new("prenorm:zero", n0 == 0.0).with_residual(n0.abs());
    if n0 != 0.0 {
        zero = zero.with_witness(json!({"value": n0}));
    }

    let mut sym = Worst::new("prenorm:symmetric", tol);
    let c1 = for_each_tuple(m, spec, 1, |a| {
        let e = (p.eval(m, &m.inv(&a[0])) - p.eval(m, &a[0])).abs();
        sym.record(e, || json!({"x": a[0]}));
    });

    let mut sub = Worst::new("prenorm:subadditive", tol);
    let c2 = for_each_tuple(m, spec, 2, |a| {
        let e = p.eval(m, &m.op(&a[0], &a[1])) - p.eval(m, &a[0]) - p.eval(m, &a[1]);
        sub.record(e, || json!({"x": a[0], "y": a[1]}));
    });

    let mut gyr = Worst::new("prenorm:gyr-invariant", tol);
    let c3 = for_each_tuple(m, spec, 3, |a| {
        let e = (p.eval(m, &m.gyr(&a[0], &a[1], &a[2])) - p.eval(m, &a[2])).abs();
        gyr.record(e, || json!({"a": a[0], "b": a[1], "z": a[2]}));
    });

    vec![zero, sym.finish(c1), sub.finish(c2), gyr.finish(c3)]
}

/// `{x : N(x) < 1/2ⁿ} ⊆ Uₙ ⊆ {x : N(x) ≤ 2/2ⁿ}` for `n ≤ depth`, over the
/// given points. `member(n, x)` decides `x ∈ Uₙ`.
pub fn check_sandwich<G, P, F>(m: &G, p: &P, points: &[G::Elem], depth: u32, member: F) -> CheckOutcome
where
    G: Gyrogroup,
    P: Prenorm<G>,
    F: Fn(usize, &G::Elem) -> bool,
{
    let tol = p.tolerance();
    let mut worst = Worst::new("prenorm:sandwich", tol);
    for n in 0..=depth {
        let step = 1.0 / (1u64 << n) as f64;
        for x in points {
            let v = p.eval(m, x);
            let inside = member(n as usize, x);
            if v < step - tol && !inside {
                worst.record(step - v, || json!({"n": n, "x": x, "N": v, "side": "lower"}));
            }
            if inside {
                worst.record(v - 2.0 * step, || json!({"n": n, "x": x, "N": v, "side": "upper"}));
            }
        }
    }
    worst.finish(points.len()).with_depth(depth)
}

/// Symmetry, zero diagonal and the triangle inequality of `ρ_N`; the
/// triangle tolerance is twice the prenorm's.
pub fn check_rho_metric<G: Sampled, P: Prenorm<G>>(m: &G, p: &P, spec: SampleSpec) -> Vec<CheckOutcome> {
    let tol = 2.0 * p.tolerance();
    let mut diag = Worst::new("rho:zero-diagonal", 0.0);
    let c1 = for_each_tuple(m, spec, 1, |a| {
        diag.record(rho_n(m, p, &a[0], &a[0]), || json!({"x": a[0]}));
    });
    let mut sym = Worst::new("rho:symmetric", 0.0);
    let c2 = for_each_tuple(m, spec, 2, |a| {
        let e = (rho_n(m, p, &a[0], &a[1]) - rho_n(m, p, &a[1], &a[0])).abs();
        sym.record(e, || json!({"x": a[0], "y": a[1]}));
    });
    let mut tri = Worst::new("rho:triangle", tol);
    let c3 = for_each_tuple(m, spec, 3, |a| {
        let (x, y, z) = (&a[0], &a[1], &a[2]);
        let e = rho_n(m, p, x, y) - rho_n(m, p, x, z) - rho_n(m, p, z, y);
        tri.record(e, || json!({"x": x, "y": y, "z": z}));
    });
    vec![diag.finish(c1), sym.finish(c2), tri.finish(c3)]
}

/// `ρ_N(x, y) = 0 ⟺ ⊖x ⊕ y ∈ H and ⊖y ⊕ x ∈ H`, exhaustively.
pub fn check_rho_indiscernibles(m: &FiniteTable, p: &FinitePrenorm) -> CheckOutcome {
    let h = p.tail();
    let n = m.order();
    for x in 0..n {
        for y in 0..n {
            let zero = rho_n(m, p, &x, &y) == 0.0;
            let in_tail = h.contains(m.op(&m.inv(&x), &y)) && h.contains(m.op(&m.inv(&y), &x));
            if zero != in_tail {
                return CheckOutcome::new("rho:indiscernibles", false)
                    .with_witness(json!({"x": x, "y": y, "rho": rho_n(m, p, &x, &y), "in_tail": in_tail}))
                    .with_residual(1.0);
            }
        }
    }
    CheckOutcome::new("rho:indiscernibles", true).with_samples(n * n).with_value(json!({"tail": h}))
}

/// `d` is a pseudometric: zero diagonal, symmetric, triangle inequality.
pub fn check_d_pseudometric<G: Sampled, P: Prenorm<G>>(m: &G, p: &P, spec: SampleSpec) -> CheckOutcome {
    let mut w = Worst::new("d:pseudometric", 0.0);
    let c = for_each_tuple(m, spec, 3, |a| {
        let (x, y, z) = (&a[0], &a[1], &a[2]);
        let d = |u: &G::Elem, v: &G::Elem| pseudo_distance(m, p, u, v);
        let e = d(x, x).max((d(x, y) - d(y, x)).abs()).max(d(x, y) - d(x, z) - d(z, y));
        w.record(e, || json!({"x": x, "y": y, "z": z}));
    });
    w.finish(c)
}

/// `N(x ⊕ h) = N(x)` for `x ∈ G`, `h ∈ H`: exhaustive when both are
/// finite, sampled otherwise.
pub fn coset_invariant_n_check<G, P, S>(m: &G, p: &P, h: &S, spec: SampleSpec) -> CheckOutcome
where
    G: Sampled,
    P: Prenorm<G>,
    S: Subset<G>,
{
    let mut w = Worst::new("prenorm:coset-invariant", p.tolerance());
    let mut count = 0;
    if let (Some(all), Some(hs)) = (m.elements(), h.members(m)) {
        for x in &all {
            for k in &hs {
                let e = (p.eval(m, &m.op(x, k)) - p.eval(m, x)).abs();
                w.record(e, || json!({"x": x, "h": k}));
                count += 1;
            }
        }
    } else {
        let mut rng = spec.rng();
        for _ in 0..spec.samples {
            let x = m.random_element(&mut rng);
            let k = h.sample(m, &mut rng);
            let e = (p.eval(m, &m.op(&x, &k)) - p.eval(m, &x)).abs();
            w.record(e, || json!({"x": x, "h": k}));
            count += 1;
        }
    }
    w.finish(count)
}

/// `ϱ(cx, cy)`, confirmed equal at every pair of representatives.
pub fn quotient_metric(
    m: &FiniteTable,
    p: &FinitePrenorm,
    part: &CosetPartition,
    cx: usize,
    cy: usize,
) -> Result<f64, PrenormError> {
    let (a, b) = (part.coset(cx)?, part.coset(cy)?);
    let x0 = part.representative(cx)?;
    let y0 = part.representative(cy)?;
    let v = varrho_at(m, p, &x0, &y0);
    for x in a.iter() {
        for y in b.iter() {
            let w = varrho_at(m, p, &x, &y);
            if w != v {
                return Err(CosetError::RepresentativeDependence(format!(
                    "ϱ from ({x0}, {y0}) is {v}, from ({x}, {y}) is {w}"
                ))
                .into());
            }
        }
    }
    Ok(v)
}

/// The matrix `ϱ(i, j)` over coset ids.
pub fn quotient_table(m: &FiniteTable, p: &FinitePrenorm, part: &CosetPartition) -> Result<Vec<Vec<f64>>, PrenormError> {
    (0..part.len())
        .map(|i| (0..part.len()).map(|j| quotient_metric(m, p, part, i, j)).collect())
        .collect()
}

/// `B(x, ε) = {x′ : d(x′, x) < ε}`.
pub fn d_ball(m: &FiniteTable, p: &FinitePrenorm, x: usize, eps: f64) -> ElemSet {
    let mut s = ElemSet::empty(m.order());
    for y in 0..m.order() {
        if pseudo_distance(m, p, &y, &x) < eps {
            s.insert(y);
        }
    }
    s
}

/// `B_ρ(x, ε) = {x′ : ρ_N(x, x′) < ε}`.
pub fn rho_ball(m: &FiniteTable, p: &FinitePrenorm, x: usize, eps: f64) -> ElemSet {
    let mut s = ElemSet::empty(m.order());
    for y in 0..m.order() {
        if rho_n(m, p, &x, &y) < eps {
            s.insert(y);
        }
    }
    s
}

/// `π⁻¹(B*(πx, ε))` for the quotient ball `B*(c, ε) = {c′ : ϱ(c, c′) < ε}`.
pub fn quotient_ball_preimage(
    m: &FiniteTable,
    p: &FinitePrenorm,
    part: &CosetPartition,
    x: usize,
    eps: f64,
) -> Result<ElemSet, PrenormError> {
    let cx = part.coset_of(x)?;
    let mut s = ElemSet::empty(m.order());
    for c in 0..part.len() {
        if quotient_metric(m, p, part, cx, c)? < eps {
            s = s.union(part.coset(c)?);
        }
    }
    Ok(s)
}

/// Radii at which balls can change: every attained distance and a point
/// just above it.
fn radius_grid(m: &FiniteTable, p: &FinitePrenorm) -> Vec<f64> {
    let n = m.order();
    let mut vals = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            vals.insert(rho_n(m, p, &x, &y).to_bits());
            vals.insert(pseudo_distance(m, p, &x, &y).to_bits());
        }
    }
    let bump = 1.0 / (1u64 << (p.depth() + 2)) as f64;
    let mut out: Vec<f64> = vals.into_iter().map(f64::from_bits).flat_map(|v| [v, v + bump]).collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Well-definedness, metric axioms, and the ball laws of `ϱ`.
///
/// The `ρ`-ball law `π⁻¹(B*(πx, ε)) = B_ρ(x, ε)` is a pass/fail check. The
/// `d`-ball law `π⁻¹(B*(πx, ε)) = B(x, ε)` does not hold in general; it is
/// reported as an info line with a counterexample when one exists.
pub fn check_quotient_metric(
    m: &FiniteTable,
    p: &FinitePrenorm,
    part: &CosetPartition,
) -> Result<Vec<CheckOutcome>, PrenormError> {
    let mut out = Vec::new();
    let same = part.subgroup() == p.tail();
    let mut line = CheckOutcome::new("quotient:subgroup-is-tail", same);
    if !same {
        line = line.with_witness(json!({"subgroup": part.subgroup(), "tail": p.tail()}));
    }
    out.push(line);

    let table = match quotient_table(m, p, part) {
        Ok(t) => {
            out.push(CheckOutcome::new("quotient:well-defined", true).with_samples(m.order() * m.order()));
            t
        }
        Err(e) => {
            out.push(
                CheckOutcome::new("quotient:well-defined", false)
                    .with_witness(json!(e.to_string()))
                    .with_residual(1.0),
            );
            return Ok(out);
        }
    };

    let k = part.len();
    let mut metric = CheckOutcome::new("quotient:metric", true).with_samples(k * k * k);
    'axioms: for i in 0..k {
        for j in 0..k {
            let bad = (i == j) != (table[i][j] == 0.0) || table[i][j] != table[j][i];
            if bad {
                metric = CheckOutcome::new("quotient:metric", false)
                    .with_witness(json!({"cosets": [i, j], "value": table[i][j]}))
                    .with_residual(1.0);
                break 'axioms;
            }
            for l in 0..k {
                let e = table[i][j] - table[i][l] - table[l][j];
                if e > 0.0 {
                    metric = CheckOutcome::new("quotient:metric", false)
                        .with_witness(json!({"cosets": [i, j, l]}))
                        .with_residual(e);
                    break 'axioms;
                }
            }
        }
    }
    out.push(metric);

    let grid = radius_grid(m, p);
    let mut rho_law = CheckOutcome::new("quotient:ball-preimage-rho", true).with_samples(m.order() * grid.len());
    let mut d_law: Option<serde_json::Value> = None;
    'balls: for x in 0..m.order() {
        for &eps in &grid {
            let pre = quotient_ball_preimage(m, p, part, x, eps)?;
            let rb = rho_ball(m, p, x, eps);
            if pre != rb {
                rho_law = CheckOutcome::new("quotient:ball-preimage-rho", false)
                    .with_witness(json!({"x": x, "eps": eps, "preimage": pre, "rho_ball": rb}))
                    .with_residual(1.0);
                break 'balls;
            }
            if d_law.is_none() {
                let db = d_ball(m, p, x, eps);
                if pre != db {
                    d_law = Some(json!({"x": x, "eps": eps, "preimage": pre, "d_ball": db}));
                }
            }
        }
    }
    out.push(rho_law);
    out.push(CheckOutcome::info(
        "quotient:ball-preimage-d",
        json!({"holds": d_law.is_none(), "counterexample": d_law}),
    ));
    Ok(out)
}
