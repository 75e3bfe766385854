//! One ready-to-run configuration per scenario, each on a 16³ grid.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::RunError;

/// `dr = 2π/16` makes `dk = 1`, so wavevector components below are in units of `dk`.
pub const PRESETS: [(&str, &str); 5] = [
    (
        "monochromatic.toml",
        r#"# Three plane waves on the |k| = 5 shell carrying one photon's energy.
scenario = "monochromatic"
seed = 0
output_dir = "out/monochromatic"
grid.n = [16, 16, 16]
grid.dr = 0.39269908169872414
constants = "natural"
sample.t = 0.0
monochromatic.k = [[3, 4, 0], [0, 0, 5], [-4, 0, 3]]
monochromatic.helicity_mix = [[1, 0], [0, 0]]
monochromatic.energy = 5.0
"#,
    ),
    (
        "gaussian_pulse.toml",
        r#"# Gaussian packet around k = 4 x-hat with a mixed helicity content.
scenario = "gaussian_pulse"
seed = 0
output_dir = "out/gaussian_pulse"
grid.n = [16, 16, 16]
grid.dr = 0.39269908169872414
constants = "natural"
sample.t = 0.5
pulse.k_center = [4, 0, 0]
pulse.bandwidth = 0.25
pulse.helicity_mix = [[1, 0], [0, 0.5]]
pulse.energy = 4.0
"#,
    ),
    (
        "bichromatic.toml",
        r#"# Two lines with omega_2 = 2 omega_1 and equal energies: N = 1.5.
scenario = "bichromatic"
seed = 0
output_dir = "out/bichromatic"
grid.n = [16, 16, 16]
grid.dr = 0.39269908169872414
constants = "natural"
sample.t = 0.0
bichromatic.k1 = [1, 0, 0]
bichromatic.e1 = 1.0
bichromatic.helicity1 = "plus"
bichromatic.k2 = [2, 0, 0]
bichromatic.e2 = 1.0
bichromatic.helicity2 = "minus"
"#,
    ),
    (
        "fock_demo.toml",
        r#"# |2, 0, 1> over three modes, counted in half the box and through a plane.
scenario = "fock_demo"
seed = 0
output_dir = "out/fock_demo"
grid.n = [16, 16, 16]
grid.dr = 0.39269908169872414
constants = "natural"
sample.t = 0.0
fock.k = [[2, 0, 0], [2, 0, 0], [0, 3, 0]]
fock.helicity = ["plus", "minus", "plus"]
fock.max_occupation = 3
fock.preparation = [0, 0, 2]
fock.volume_lo = [0, 0, 0]
fock.volume_hi = [8, 16, 16]
fock.surface_axis = 0
fock.surface_index = 8
fock.surface_window = [0.0, 6.283185307179586]
"#,
    ),
    (
        "invariant_suite.toml",
        r#"# Every invariant check on seeded random fields.
scenario = "invariant_suite"
seed = 20261018
output_dir = "out/invariant_suite"
grid.n = [16, 16, 16]
grid.dr = 1.0
constants = "natural"
sample.t = 0.0
"#,
    ),
];

pub fn write_presets(dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    PRESETS
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| RunError::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
