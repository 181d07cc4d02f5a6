//! Chain files and `--pairs` parsing.

use std::path::Path;

use anyhow::{bail, Context};
use gyrokit::prenorm::{ChainFile, Flavor};
use gyrokit::{NormedGyrogroup, SubsetSpec};

pub fn read_chain(path: &Path) -> anyhow::Result<ChainFile> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    ChainFile::parse(&bytes).with_context(|| format!("parsing {}", path.display()))
}

/// Diagonal intersections are only guaranteed admissible for admissible inputs.
pub fn admissible_file(path: &Path) -> anyhow::Result<ChainFile> {
    let file = read_chain(path)?;
    if file.flavor() != Flavor::Admissible {
        bail!("{} is not an admissible chain; intersect needs admissible chains", path.display());
    }
    Ok(file)
}

pub fn single_chain(paths: &[std::path::PathBuf]) -> anyhow::Result<ChainFile> {
    match paths {
        [one] => read_chain(one),
        [] => bail!("--chain is required"),
        _ => bail!("expected one --chain, got {}", paths.len()),
    }
}

pub fn required(subset: &Option<SubsetSpec>, flag: &str) -> anyhow::Result<SubsetSpec> {
    subset.clone().with_context(|| format!("{flag} is required"))
}

/// Splits `x:y` items. Tables accept `;` or `,` between pairs; ball models
/// use `,` inside coordinates, so only `;` separates pairs there.
fn split_pairs(s: &str, commas_separate: bool) -> anyhow::Result<Vec<(&str, &str)>> {
    let seps: &[char] = if commas_separate { &[';', ','] } else { &[';'] };
    s.split(seps)
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.split_once(':').with_context(|| format!("pair {p:?} is not of the form x:y")))
        .collect()
}

pub fn table_pairs(s: &str, order: usize) -> anyhow::Result<Vec<(usize, usize)>> {
    let elem = |t: &str| -> anyhow::Result<usize> {
        let i: usize = t.trim().parse().with_context(|| format!("bad element index {t:?}"))?;
        if i >= order {
            bail!("element {i} is outside a carrier of order {order}");
        }
        Ok(i)
    };
    split_pairs(s, true)?.into_iter().map(|(x, y)| Ok((elem(x)?, elem(y)?))).collect()
}

/// `0` is the identity; otherwise comma-separated coordinates.
pub fn ball_element<G: NormedGyrogroup>(m: &G, t: &str) -> anyhow::Result<G::Elem> {
    let t = t.trim();
    if t == "0" {
        return Ok(m.identity());
    }
    let coords = t
        .split(',')
        .map(|c| c.trim().parse::<f64>().with_context(|| format!("bad coordinate {c:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(m.from_coordinates(&coords)?)
}

pub fn ball_pairs<G: NormedGyrogroup>(m: &G, s: &str) -> anyhow::Result<Vec<(G::Elem, G::Elem)>> {
    split_pairs(s, false)?
        .into_iter()
        .map(|(x, y)| Ok((ball_element(m, x)?, ball_element(m, y)?)))
        .collect()
}
