//! Artifact files. Floats use `{:.16e}`, i.e. 17 significant digits, so a
//! value survives a round trip through text unchanged.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::RunError;
use crate::scenario::Outcome;

pub const REPORT: &str = "report.txt";
pub const SPECTRUM: &str = "spectrum.csv";
pub const DENSITY: &str = "density.csv";
pub const COMPARISON: &str = "comparison.csv";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<(), RunError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let err = |source| RunError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|e| RunError::io(path, e))
}

/// Write every artifact into `dir`, creating it if needed. Returns the paths written.
pub fn write_outcome(outcome: &Outcome, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    let mut written = Vec::new();

    let report = dir.join(REPORT);
    fs::write(&report, outcome.report.render()).map_err(|e| RunError::io(&report, e))?;
    written.push(report);

    let path = dir.join(SPECTRUM);
    write_csv(
        &path,
        &[
            "k_index",
            "kx",
            "ky",
            "kz",
            "abs_c_plus",
            "abs_c_minus",
            "energy_density",
            "photon_density",
        ],
        outcome.spectrum.iter().map(|s| {
            vec![
                s.k_index.to_string(),
                num(s.k[0]),
                num(s.k[1]),
                num(s.k[2]),
                num(s.abs_c_plus),
                num(s.abs_c_minus),
                num(s.energy_density),
                num(s.photon_density),
            ]
        }),
    )?;
    written.push(path);

    let path = dir.join(DENSITY);
    write_csv(
        &path,
        &["ix", "iy", "iz", "x", "y", "z", "rho", "u", "jx", "jy", "jz"],
        outcome.density.iter().map(|d| {
            vec![
                d.index[0].to_string(),
                d.index[1].to_string(),
                d.index[2].to_string(),
                num(d.r[0]),
                num(d.r[1]),
                num(d.r[2]),
                num(d.rho),
                num(d.u),
                num(d.j[0]),
                num(d.j[1]),
                num(d.j[2]),
            ]
        }),
    )?;
    written.push(path);

    let path = dir.join(COMPARISON);
    match &outcome.comparison {
        Some(rows) => {
            write_csv(
                &path,
                &[
                    "x",
                    "y",
                    "z",
                    "rho_photon",
                    "u_over_hbar_omega_bar",
                    "relative_deviation",
                ],
                rows.iter().map(|c| {
                    vec![
                        num(c.r[0]),
                        num(c.r[1]),
                        num(c.r[2]),
                        num(c.rho_photon),
                        num(c.u_over_hbar_omega_bar),
                        num(c.relative_deviation),
                    ]
                }),
            )?;
            written.push(path);
        }
        // a stale file from an earlier classical run would be misleading
        None => match fs::remove_file(&path) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(RunError::io(&path, e)),
        },
    }
    Ok(written)
}
