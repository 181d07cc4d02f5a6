//! Commands on ball models: sampled checks, radial chains and sets.

use anyhow::{bail, Context};
use gyrokit::laws::check_gyration_isometry;
use gyrokit::prenorm::{
    admissible_hull_radial, admissible_intersection_radial, check_d_pseudometric, check_prenorm_laws,
    check_rho_metric, coset_invariant_n_check, ensure_valid, micro_assoc_radial, pseudo_distance,
    radial_inclusion_check, rho_n, validate_radial_chain, ChainFile, RadialChain, RadialPrenorm,
    MICRO_ASSOC_DIRECTIONS,
};
use gyrokit::{
    check_axioms, check_identities, is_l_subgyrogroup, is_subgyrogroup, CheckOutcome, EinsteinLaw,
    NormedGyrogroup, Region, Report, SubsetSpec,
};
use serde_json::json;

use crate::input::{admissible_file, ball_pairs, required, single_chain};
use crate::{Command, Opts};

pub fn run<G: NormedGyrogroup>(m: &G, law: EinsteinLaw, cmd: Command, opts: &Opts) -> anyhow::Result<Report> {
    let spec = opts.spec();
    let mut report = Report::new();
    match cmd {
        Command::Check => {
            report.extend(check_axioms(m, spec).to_outcomes());
            report.extend(check_identities(m, spec).to_outcomes());
            report.push(check_gyration_isometry(m, spec));
        }
        Command::Identities => report.extend(check_identities(m, spec).to_outcomes()),
        Command::Cosets => {
            let h = region(&required(&opts.subset, "--subset")?)?;
            let sub = is_subgyrogroup(m, &h, spec)?;
            let ok = sub.passed();
            report.push(sub);
            if ok {
                report.push(is_l_subgyrogroup(m, &h, spec)?);
            }
        }
        Command::Metric => {
            if opts.quotient {
                bail!("--quotient needs a finite model");
            }
            let chain = valid_chain(law, single_chain(&opts.chain)?, opts.eps)?;
            let p = RadialPrenorm::new(&chain, opts.depth, opts.eps)?;
            report.push(CheckOutcome::info(
                "prenorm:chain",
                json!({"flavor": chain.flavor(), "radii": chain.radii(), "depth": p.depth()}),
            ));
            report.extend(check_prenorm_laws(m, &p, spec));
            report.extend(check_rho_metric(m, &p, spec));
            report.push(check_d_pseudometric(m, &p, spec));
            if let Some(pairs) = &opts.pairs {
                let rows: Vec<_> = ball_pairs(m, pairs)?
                    .iter()
                    .map(|(x, y)| {
                        json!({
                            "x": m.coordinates(x),
                            "y": m.coordinates(y),
                            "rho": rho_n(m, &p, x, y),
                            "d": pseudo_distance(m, &p, x, y),
                        })
                    })
                    .collect();
                report.push(CheckOutcome::info("metric:pairs", rows.into()));
            }
            if let Some(s) = &opts.subset {
                report.push(coset_invariant_n_check(m, &p, &region(s)?, spec));
            }
        }
        Command::Microassoc => {
            let v = radius(&required(&opts.subset, "--subset")?)?;
            let w = match &opts.within {
                Some(s) => radius(s)?,
                None => v,
            };
            report.push(micro_assoc_radial(m, w, v, spec, MICRO_ASSOC_DIRECTIONS)?);
        }
        Command::Hull => {
            let r = radius(&required(&opts.subset, "--subset")?)?;
            let chain = admissible_hull_radial(&law, r, opts.depth)?;
            report.push(chain_line("hull:chain", &chain));
            report.extend(validate_radial_chain(&chain, opts.eps).lines().iter().cloned());
            report.extend(radial_inclusion_check(&chain, opts.eps));
        }
        Command::Intersect => {
            if opts.chain.is_empty() {
                bail!("--chain is required");
            }
            let chains = opts
                .chain
                .iter()
                .map(|p| {
                    let file = admissible_file(p)?;
                    valid_chain(law, file, opts.eps).with_context(|| format!("chain {}", p.display()))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let chain = admissible_intersection_radial(&chains)?;
            report.push(chain_line("intersect:chain", &chain));
            report.extend(validate_radial_chain(&chain, opts.eps).lines().iter().cloned());
            report.extend(radial_inclusion_check(&chain, opts.eps));
        }
    }
    Ok(report)
}

fn valid_chain(law: EinsteinLaw, file: ChainFile, tol: f64) -> anyhow::Result<RadialChain<EinsteinLaw>> {
    let chain = file.into_radial_chain(law)?;
    ensure_valid(&validate_radial_chain(&chain, tol))?;
    Ok(chain)
}

fn chain_line(check: &str, chain: &RadialChain<EinsteinLaw>) -> CheckOutcome {
    CheckOutcome::info(check, json!({"flavor": chain.flavor(), "radii": chain.radii()}))
}

fn region(s: &SubsetSpec) -> anyhow::Result<Region> {
    match s {
        SubsetSpec::Region(r) => Ok(*r),
        SubsetSpec::Indices(_) => bail!("index subsets need a finite model; use axis:<i> or ball:<r>"),
    }
}

fn radius(s: &SubsetSpec) -> anyhow::Result<f64> {
    match region(s)? {
        Region::Ball(r) => Ok(r),
        Region::Axis(_) => bail!("expected a ball:<r> neighborhood"),
    }
}
