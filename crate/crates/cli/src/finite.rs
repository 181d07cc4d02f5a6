//! Commands on finite tables. Every check is exhaustive.

use anyhow::{bail, Context};
use gyrokit::prenorm::{
    admissible_hull, admissible_intersection, admissible_quotient_inclusion_check, check_d_pseudometric,
    check_prenorm_laws, check_quotient_metric, check_rho_indiscernibles, check_rho_metric, check_set_family,
    coset_invariant_n_check, ensure_valid, micro_assoc_check, pseudo_distance, quotient_table, rho_n,
    validate_set_chain, ChainFile, FinitePrenorm, SetChain,
};
use gyrokit::{
    check_axioms, check_homogeneity, check_identities, check_partition, is_l_subgyrogroup, is_subgyrogroup,
    left_cosets, CheckOutcome, ElemSet, FiniteTable, Report,
};
use serde_json::json;

use crate::input::{admissible_file, required, single_chain, table_pairs};
use crate::{Command, Opts};

pub fn run(m: &FiniteTable, cmd: Command, opts: &Opts) -> anyhow::Result<Report> {
    let spec = opts.spec();
    let mut report = Report::new();
    match cmd {
        Command::Check => {
            report.extend(check_axioms(m, spec).to_outcomes());
            report.extend(check_identities(m, spec).to_outcomes());
        }
        Command::Identities => report.extend(check_identities(m, spec).to_outcomes()),
        Command::Cosets => cosets(m, opts, &mut report)?,
        Command::Metric => metric(m, opts, &mut report)?,
        Command::Microassoc => {
            let v = required(&opts.subset, "--subset")?.to_set(m)?;
            let w = match &opts.within {
                Some(s) => s.to_set(m)?,
                None => v.clone(),
            };
            report.push(micro_assoc_check(m, &w, &v)?);
        }
        Command::Hull => {
            let u = required(&opts.subset, "--subset")?.to_set(m)?;
            let (chain, tail) = admissible_hull(m, &u)?;
            report.push(chain_line("hull:chain", &chain));
            chain_checks(m, &chain, &tail, opts, &mut report)?;
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
                    valid_chain(m, file).with_context(|| format!("chain {}", p.display()))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let (chain, tail) = admissible_intersection(&chains)?;
            report.push(chain_line("intersect:chain", &chain));
            chain_checks(m, &chain, &tail, opts, &mut report)?;
        }
    }
    Ok(report)
}

fn valid_chain(m: &FiniteTable, file: ChainFile) -> anyhow::Result<SetChain> {
    let chain = file.into_set_chain(m)?;
    ensure_valid(&validate_set_chain(m, &chain))?;
    Ok(chain)
}

fn chain_line(check: &str, chain: &SetChain) -> CheckOutcome {
    CheckOutcome::info(check, json!({"flavor": chain.flavor(), "sets": chain.sets(), "tail": chain.tail()}))
}

/// Chain validity, quotient inclusions, and the prenorm laws of a derived chain.
fn chain_checks(
    m: &FiniteTable,
    chain: &SetChain,
    tail: &ElemSet,
    opts: &Opts,
    report: &mut Report,
) -> anyhow::Result<()> {
    report.extend(validate_set_chain(m, chain).lines().iter().cloned());
    report.extend(admissible_quotient_inclusion_check(m, chain, tail));
    let p = FinitePrenorm::new(m, chain, opts.depth)?;
    report.extend(check_prenorm_laws(m, &p, opts.spec()));
    Ok(())
}

fn cosets(m: &FiniteTable, opts: &Opts, report: &mut Report) -> anyhow::Result<()> {
    let spec = opts.spec();
    let h = required(&opts.subset, "--subset")?.to_set(m)?;
    let sub = is_subgyrogroup(m, &h, spec)?;
    let ok = sub.passed();
    report.push(sub);
    if !ok {
        return Ok(());
    }
    let l = is_l_subgyrogroup(m, &h, spec)?;
    let ok = l.passed();
    report.push(l);
    if !ok {
        return Ok(());
    }
    let part = left_cosets(m, &h)?;
    report.push(CheckOutcome::info(
        "coset:list",
        json!({"cosets": part.cosets(), "representatives": part.representatives()}),
    ));
    report.extend(check_partition(m, &part));
    report.extend(check_homogeneity(m, &part));
    Ok(())
}

fn metric(m: &FiniteTable, opts: &Opts, report: &mut Report) -> anyhow::Result<()> {
    let spec = opts.spec();
    let chain = valid_chain(m, single_chain(&opts.chain)?)?;
    let p = FinitePrenorm::new(m, &chain, opts.depth)?;
    report.push(CheckOutcome::info(
        "prenorm:values",
        json!({
            "n": p.values(),
            "level": p.levels(),
            "depth": p.depth(),
            "exact": p.is_exact(),
            "tail": chain.tail(),
        }),
    ));
    report.extend(check_set_family(p.family(), &chain));
    report.extend(check_prenorm_laws(m, &p, spec));
    report.extend(check_rho_metric(m, &p, spec));
    report.push(check_rho_indiscernibles(m, &p));
    report.push(check_d_pseudometric(m, &p, spec));
    if let Some(pairs) = &opts.pairs {
        let rows: Vec<_> = table_pairs(pairs, m.order())?
            .into_iter()
            .map(|(x, y)| json!({"x": x, "y": y, "rho": rho_n(m, &p, &x, &y), "d": pseudo_distance(m, &p, &x, &y)}))
            .collect();
        report.push(CheckOutcome::info("metric:pairs", rows.into()));
    }
    let h = opts.subset.as_ref().map(|s| s.to_set(m)).transpose()?;
    if let Some(h) = &h {
        report.push(coset_invariant_n_check(m, &p, h, spec));
    }
    if opts.quotient {
        let h = h.unwrap_or_else(|| chain.tail().clone());
        let part = left_cosets(m, &h)?;
        // a representative-dependent ϱ is reported by quotient:well-defined
        if let Ok(varrho) = quotient_table(m, &p, &part) {
            report.push(CheckOutcome::info(
                "quotient:table",
                json!({"cosets": part.cosets(), "representatives": part.representatives(), "varrho": varrho}),
            ));
        }
        report.extend(check_quotient_metric(m, &p, &part)?);
    }
    Ok(())
}
