//! Optional on-disk memo of congruence lattices.
//!
//! With `CONGRLAB_CACHE=DIR`, Con(A) is stored as `DIR/<content hash>.json`,
//! a JSON array of partitions (each a block-index vector). Entries are
//! re-verified against the algebra on load; a bad entry is reported on
//! stderr and recomputed.

use std::path::PathBuf;

use congrlab_core::conlattice::{all_congruences_with, con_from_partitions_checked};
use congrlab_core::lifting::Analysis;
use congrlab_core::{Config, FiniteAlgebra, Partition};

use crate::CliError;

pub const ENV: &str = "CONGRLAB_CACHE";

fn entry(alg: &FiniteAlgebra) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV).filter(|d| !d.is_empty())?;
    Some(PathBuf::from(dir).join(format!("{}.json", alg.content_hash())))
}

fn read(path: &PathBuf, alg: &FiniteAlgebra, cfg: &Config) -> Option<Analysis> {
    let text = std::fs::read_to_string(path).ok()?;
    let loaded = serde_json::from_str::<Vec<Partition>>(&text)
        .map_err(|e| e.to_string())
        .and_then(|parts| {
            con_from_partitions_checked(alg, parts, cfg).map_err(|e| e.to_string())
        })
        .and_then(|con| Analysis::from_con(alg, con, cfg).map_err(|e| e.to_string()));
    match loaded {
        Ok(an) => Some(an),
        Err(e) => {
            eprintln!("warning: ignoring cache entry {}: {e}", path.display());
            None
        }
    }
}

fn write(path: &PathBuf, an: &Analysis) {
    let parts: Vec<&Partition> = an.con.elements().iter().map(|c| c.partition()).collect();
    let text = serde_json::to_string(&parts).expect("partitions serialise");
    let result = path
        .parent()
        .map_or(Ok(()), std::fs::create_dir_all)
        .and_then(|()| std::fs::write(path, text));
    if let Err(e) = result {
        eprintln!("warning: could not write cache entry {}: {e}", path.display());
    }
}

/// Analysis of `alg`, going through the cache when one is configured.
pub fn analyze(alg: &FiniteAlgebra, cfg: &Config) -> Result<Analysis, CliError> {
    let Some(path) = entry(alg) else {
        return Ok(Analysis::with_config(alg, cfg)?);
    };
    if let Some(an) = read(&path, alg, cfg) {
        return Ok(an);
    }
    let con = all_congruences_with(alg, cfg)?;
    let an = Analysis::from_con(alg, con, cfg)?;
    write(&path, &an);
    Ok(an)
}
