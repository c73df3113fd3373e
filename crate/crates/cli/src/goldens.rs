//! Golden files: for every fixture, `NAME.report.txt`, `NAME.report.json`
//! and `NAME.dot` (the Hasse diagram of Con).

use std::path::Path;

use congrlab_core::fixtures::fixture_names;
use congrlab_core::lifting::Analysis;
use congrlab_core::report::{con_dot, fixture_report_for};
use congrlab_core::{fixture, par, Config};

use crate::CliError;

pub const DEFAULT_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

/// `(file name, contents)` for one fixture.
fn files(name: &str, cfg: &Config) -> Result<Vec<(String, String)>, CliError> {
    let an = Analysis::with_config(&fixture(name)?, cfg)?;
    let report = fixture_report_for(name, &an)?;
    Ok(vec![
        (format!("{name}.report.txt"), report.to_text()),
        (format!("{name}.report.json"), report.to_json()),
        (format!("{name}.dot"), con_dot(&an)),
    ])
}

/// Recomputes every golden into `dir`; returns the number of files written.
/// Fixtures are analysed in parallel; contents do not depend on scheduling.
pub fn regen(dir: &Path, cfg: &Config) -> Result<usize, CliError> {
    std::fs::create_dir_all(dir)?;
    let names = fixture_names();
    let all = par::map(cfg, &names, |n| files(n, cfg));
    let mut written = 0;
    for result in all {
        for (file, text) in result? {
            std::fs::write(dir.join(file), text)?;
            written += 1;
        }
    }
    Ok(written)
}
