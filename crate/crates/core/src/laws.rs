//! Axiom and identity verification.
//!
//! Every law is a residual function over a tuple of elements. A sweep
//! evaluates it on every tuple (finite carriers) or on seeded samples
//! (continuous carriers), keeps the worst residual, and stores the first few
//! offending tuples as witnesses. Replaying a witness through
//! [`Law::residual`] reproduces the violation.

use serde::Serialize;
use serde_json::json;

use crate::gyro::{gyr_by_formula, NormedGyrogroup, Sampled};
use crate::report::{CheckOutcome, Verdict};
use crate::sample::{for_each_tuple, SampleSpec};

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Law {
    /// `0 ⊕ a = a = a ⊕ 0`
    Identity,
    /// `⊖a ⊕ a = 0 = a ⊕ ⊖a`
    Inverse,
    /// `x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ gyr[x, y](z)`
    Gyroassociativity,
    /// `gyr[a ⊕ b, b] = gyr[a, b]`
    LoopProperty,
    /// `gyr[a, b](x ⊕ y) = gyr[a, b](x) ⊕ gyr[a, b](y)`
    GyrAutomorphism,
    /// `z ↦ gyr[a, b](z)` is a permutation (finite carriers only)
    GyrBijection,
    /// `(⊖x) ⊕ (x ⊕ y) = y`
    LeftCancellation,
    /// `(x ⊕ (⊖y)) ⊕ gyr[x, ⊖y](y) = x`
    RightCancellationInverse,
    /// `(x ⊕ gyr[x, y](⊖y)) ⊕ y = x`
    RightCancellationGyr,
    /// model gyration agrees with `⊖(x ⊕ y) ⊕ (x ⊕ (y ⊕ z))`
    GyrFormula,
    /// `(⊖x ⊕ y) ⊕ gyr[⊖x, y](⊖y ⊕ z) = ⊖x ⊕ z`
    LeftGyroTranslation,
    /// `⊖(x ⊕ y) = gyr[x, y](⊖y ⊖ x)`
    InverseOfSum,
}

impl Law {
    pub const AXIOMS: [Law; 5] = [
        Law::Identity,
        Law::Inverse,
        Law::Gyroassociativity,
        Law::LoopProperty,
        Law::GyrAutomorphism,
    ];

    pub const IDENTITIES: [Law; 6] = [
        Law::LeftCancellation,
        Law::RightCancellationInverse,
        Law::RightCancellationGyr,
        Law::GyrFormula,
        Law::LeftGyroTranslation,
        Law::InverseOfSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Identity => "G1:identity",
            Law::Inverse => "G2:inverse",
            Law::Gyroassociativity => "G3:gyroassociativity",
            Law::LoopProperty => "G4:loop-property",
            Law::GyrAutomorphism => "gyr:automorphism",
            Law::GyrBijection => "gyr:bijection",
            Law::LeftCancellation => "identity-1:left-cancellation",
            Law::RightCancellationInverse => "identity-2:right-cancellation",
            Law::RightCancellationGyr => "identity-3:right-cancellation-gyr",
            Law::GyrFormula => "identity-4:gyr-formula",
            Law::LeftGyroTranslation => "identity-5:left-gyrotranslation",
            Law::InverseOfSum => "identity-6:inverse-of-sum",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Law::Identity | Law::Inverse => 1,
            Law::GyrBijection
            | Law::LeftCancellation
            | Law::RightCancellationInverse
            | Law::RightCancellationGyr
            | Law::InverseOfSum => 2,
            Law::Gyroassociativity
            | Law::LoopProperty
            | Law::GyrFormula
            | Law::LeftGyroTranslation => 3,
            Law::GyrAutomorphism => 4,
        }
    }

    /// Residual of the law at `args` (length [`Law::arity`]).
    pub fn residual<G: Sampled>(self, m: &G, args: &[G::Elem]) -> f64 {
        assert_eq!(args.len(), self.arity(), "{} takes {} arguments", self.name(), self.arity());
        let zero = m.identity();
        match self {
            Law::Identity => {
                let a = &args[0];
                m.distance(&m.op(&zero, a), a).max(m.distance(&m.op(a, &zero), a))
            }
            Law::Inverse => {
                let a = &args[0];
                let na = m.inv(a);
                m.distance(&m.op(&na, a), &zero).max(m.distance(&m.op(a, &na), &zero))
            }
            Law::Gyroassociativity => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                let lhs = m.op(x, &m.op(y, z));
                let rhs = m.op(&m.op(x, y), &m.gyr(x, y, z));
                m.distance(&lhs, &rhs)
            }
            Law::LoopProperty => {
                let (a, b, z) = (&args[0], &args[1], &args[2]);
                m.distance(&m.gyr(&m.op(a, b), b, z), &m.gyr(a, b, z))
            }
            Law::GyrAutomorphism => {
                let (a, b, x, y) = (&args[0], &args[1], &args[2], &args[3]);
                let lhs = m.gyr(a, b, &m.op(x, y));
                let rhs = m.op(&m.gyr(a, b, x), &m.gyr(a, b, y));
                m.distance(&lhs, &rhs)
            }
            Law::GyrBijection => {
                let Some(all) = m.elements() else { return 0.0 };
                let image: Vec<_> = all.iter().map(|z| m.gyr(&args[0], &args[1], z)).collect();
                let onto = all.iter().all(|e| image.contains(e));
                if onto {
                    0.0
                } else {
                    1.0
                }
            }
            Law::LeftCancellation => {
                let (x, y) = (&args[0], &args[1]);
                m.distance(&m.op(&m.inv(x), &m.op(x, y)), y)
            }
            Law::RightCancellationInverse => {
                let (x, y) = (&args[0], &args[1]);
                let ny = m.inv(y);
                let lhs = m.op(&m.op(x, &ny), &m.gyr(x, &ny, y));
                m.distance(&lhs, x)
            }
            Law::RightCancellationGyr => {
                let (x, y) = (&args[0], &args[1]);
                let lhs = m.op(&m.op(x, &m.gyr(x, y, &m.inv(y))), y);
                m.distance(&lhs, x)
            }
            Law::GyrFormula => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                m.distance(&m.gyr(x, y, z), &gyr_by_formula(m, x, y, z))
            }
            Law::LeftGyroTranslation => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                let nx = m.inv(x);
                let lhs = m.op(&m.op(&nx, y), &m.gyr(&nx, y, &m.op(&m.inv(y), z)));
                m.distance(&lhs, &m.op(&nx, z))
            }
            Law::InverseOfSum => {
                let (x, y) = (&args[0], &args[1]);
                let lhs = m.inv(&m.op(x, y));
                let rhs = m.gyr(x, y, &m.op(&m.inv(y), &m.inv(x)));
                m.distance(&lhs, &rhs)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness<E> {
    pub elements: Vec<E>,
    pub residual: f64,
}

/// Result of sweeping one law.
#[derive(Clone, Debug)]
pub struct LawOutcome<E> {
    pub law: Law,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub samples: usize,
    pub witnesses: Vec<Witness<E>>,
}

impl<E: Serialize> LawOutcome<E> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_outcome(&self) -> CheckOutcome {
        let mut line = CheckOutcome::new(self.law.name(), self.passed())
            .with_residual(self.max_residual)
            .with_samples(self.samples);
        for w in &self.witnesses {
            line = line.with_witness(json!({"elements": w.elements, "residual": w.residual}));
        }
        line
    }
}

/// Per-law verdicts of a sweep.
#[derive(Clone, Debug)]
pub struct AxiomReport<E> {
    pub outcomes: Vec<LawOutcome<E>>,
}

impl<E: Serialize> AxiomReport<E> {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }

    pub fn get(&self, law: Law) -> Option<&LawOutcome<E>> {
        self.outcomes.iter().find(|o| o.law == law)
    }

    pub fn max_residual(&self) -> f64 {
        self.outcomes.iter().map(|o| o.max_residual).fold(0.0, f64::max)
    }

    pub fn first_failure(&self) -> Option<&LawOutcome<E>> {
        self.outcomes.iter().find(|o| !o.passed())
    }

    pub fn to_outcomes(&self) -> Vec<CheckOutcome> {
        self.outcomes.iter().map(LawOutcome::to_outcome).collect()
    }
}

struct Tally<E> {
    law: Law,
    tol: f64,
    max: f64,
    witnesses: Vec<Witness<E>>,
    failed: bool,
}

impl<E: Clone> Tally<E> {
    fn new(law: Law, tol: f64) -> Self {
        Self { law, tol, max: 0.0, witnesses: Vec::new(), failed: false }
    }

    fn record(&mut self, args: &[E], r: f64) {
        // NaN never passes
        let ok = r <= self.tol;
        if r > self.max || r.is_nan() {
            self.max = if r.is_nan() { f64::INFINITY } else { r };
        }
        if !ok {
            self.failed = true;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness { elements: args.to_vec(), residual: r });
            }
        }
    }

    fn finish(self, samples: usize) -> LawOutcome<E> {
        LawOutcome {
            law: self.law,
            verdict: Verdict::from_pass(!self.failed),
            max_residual: self.max,
            samples,
            witnesses: self.witnesses,
        }
    }
}

/// Sweep a single law.
pub fn check_law<G: Sampled>(model: &G, spec: SampleSpec, law: Law) -> LawOutcome<G::Elem> {
    let mut tally = Tally::new(law, model.tolerance());
    if law == Law::GyrAutomorphism {
        if let Some(all) = model.elements() {
            return finite_automorphism_sweep(model, &all, tally);
        }
    }
    let n = for_each_tuple(model, spec, law.arity(), |args| {
        tally.record(args, law.residual(model, args));
    });
    tally.finish(n)
}

/// The exhaustive automorphism sweep is quartic; pairs whose gyration is
/// the identity map are trivially automorphisms and are skipped.
fn finite_automorphism_sweep<G: Sampled>(
    m: &G,
    all: &[G::Elem],
    mut tally: Tally<G::Elem>,
) -> LawOutcome<G::Elem> {
    let mut count = 0;
    for a in all {
        for b in all {
            let image: Vec<_> = all.iter().map(|z| m.gyr(a, b, z)).collect();
            if image.as_slice() == all {
                count += all.len() * all.len();
                continue;
            }
            for x in all {
                for y in all {
                    let args = [a.clone(), b.clone(), x.clone(), y.clone()];
                    tally.record(&args, Law::GyrAutomorphism.residual(m, &args));
                    count += 1;
                }
            }
        }
    }
    tally.finish(count)
}

/// G1–G4 plus the automorphism property of gyrations; finite carriers also
/// get the bijection check.
pub fn check_axioms<G: Sampled>(model: &G, spec: SampleSpec) -> AxiomReport<G::Elem> {
    let mut laws: Vec<Law> = Law::AXIOMS.to_vec();
    if model.elements().is_some() {
        laws.push(Law::GyrBijection);
    }
    AxiomReport { outcomes: laws.into_iter().map(|l| check_law(model, spec, l)).collect() }
}

/// Identities (1)–(6) of the standard gyrogroup toolkit. Identity (5) uses
/// `gyr[⊖x, y]`; the duplicated seventh item of the usual list is omitted.
pub fn check_identities<G: Sampled>(model: &G, spec: SampleSpec) -> AxiomReport<G::Elem> {
    AxiomReport {
        outcomes: Law::IDENTITIES.iter().map(|&l| check_law(model, spec, l)).collect(),
    }
}

/// `‖gyr[a, b](z)‖ = ‖z‖` on ball models: gyrations preserve every norm ball.
pub fn check_gyration_isometry<G: NormedGyrogroup>(model: &G, spec: SampleSpec) -> CheckOutcome {
    let mut tally = Tally::new(Law::GyrFormula, model.tolerance());
    let n = for_each_tuple(model, spec, 3, |args| {
        tally.record(args, isometry_residual(model, &args[0], &args[1], &args[2]));
    });
    let mut line = tally.finish(n).to_outcome();
    line.check = "gyr:isometry".into();
    line
}

pub fn isometry_residual<G: NormedGyrogroup>(m: &G, a: &G::Elem, b: &G::Elem, z: &G::Elem) -> f64 {
    (m.norm(&m.gyr(a, b, z)) - m.norm(z)).abs()
}

/// Gyrotriangle bound `‖u ⊕ v‖ ≤ ‖u‖ ⊕₁ ‖v‖`; returns the worst excess.
pub fn gyrotriangle_excess<G: NormedGyrogroup>(m: &G, spec: SampleSpec) -> f64 {
    let c2 = m.bound() * m.bound();
    let mut worst = f64::NEG_INFINITY;
    for_each_tuple(m, spec, 2, |args| {
        let (a, b) = (m.norm(&args[0]), m.norm(&args[1]));
        let bound = (a + b) / (1.0 + a * b / c2);
        worst = worst.max(m.norm(&m.op(&args[0], &args[1])) - bound);
    });
    worst
}
