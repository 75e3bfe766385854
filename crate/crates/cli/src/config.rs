//! Scenario configuration: a TOML file restricted to flat dotted keys.
//!
//! Parsing happens in two passes. `toml` + serde reject syntax errors and
//! unknown keys; the second pass checks that every group the scenario needs
//! is present and physically sensible, naming the offending dotted key and
//! its line.

use std::fmt;
use std::path::{Path, PathBuf};

use photonwave_core::helicity::Helicity;
use photonwave_core::lattice::PhysicalConstants;
use photonwave_core::vec3::{rnorm, RVec3};
use photonwave_core::{Grid3D, C64};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: Option<PathBuf>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at_key(src: &str, key: &str, message: impl Into<String>) -> Self {
        ConfigError {
            path: None,
            line: key_line(src, key),
            column: None,
            key: Some(key.to_string()),
            message: message.into(),
        }
    }

    fn missing(key: &str, scenario: Option<Scenario>) -> Self {
        let message = match scenario {
            Some(s) => format!("missing, required by scenario `{}`", s.name()),
            None => "missing".to_string(),
        };
        ConfigError {
            path: None,
            line: None,
            column: None,
            key: Some(key.to_string()),
            message,
        }
    }

    pub fn with_path(mut self, path: &Path) -> Self {
        self.path = Some(path.to_path_buf());
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.path {
            write!(f, "{}:", p.display())?;
        }
        if let Some(l) = self.line {
            write!(f, "{l}:")?;
            if let Some(c) = self.column {
                write!(f, "{c}:")?;
            }
        }
        if self.path.is_some() || self.line.is_some() {
            f.write_str(" ")?;
        }
        if let Some(k) = &self.key {
            write!(f, "`{k}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Monochromatic,
    GaussianPulse,
    Bichromatic,
    FockDemo,
    InvariantSuite,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Monochromatic,
        Scenario::GaussianPulse,
        Scenario::Bichromatic,
        Scenario::FockDemo,
        Scenario::InvariantSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Monochromatic => "monochromatic",
            Scenario::GaussianPulse => "gaussian_pulse",
            Scenario::Bichromatic => "bichromatic",
            Scenario::FockDemo => "fock_demo",
            Scenario::InvariantSuite => "invariant_suite",
        }
    }
}

// ---- raw, as written in the file ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Option<Scenario>,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    grid: Option<RawGrid>,
    constants: Option<RawConstants>,
    sample: Option<RawSample>,
    monochromatic: Option<RawMono>,
    pulse: Option<RawPulse>,
    bichromatic: Option<RawBichromatic>,
    fock: Option<RawFock>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    n: Option<Vec<i64>>,
    dr: Option<OneOrThree>,
    origin: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum OneOrThree {
    One(f64),
    Three([f64; 3]),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawConstants {
    Named(String),
    Explicit(ExplicitConstants),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitConstants {
    hbar: f64,
    c: f64,
    eps0: f64,
    mu0: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSample {
    t: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One([f64; 3]),
    Many(Vec<[f64; 3]>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMono {
    k: Option<OneOrMany>,
    helicity_mix: Option<[[f64; 2]; 2]>,
    energy: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPulse {
    k_center: Option<[f64; 3]>,
    bandwidth: Option<f64>,
    helicity_mix: Option<[[f64; 2]; 2]>,
    energy: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBichromatic {
    k1: Option<[f64; 3]>,
    e1: Option<f64>,
    helicity1: Option<String>,
    k2: Option<[f64; 3]>,
    e2: Option<f64>,
    helicity2: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFock {
    k: Option<Vec<[f64; 3]>>,
    helicity: Option<Vec<String>>,
    max_occupation: Option<u32>,
    preparation: Option<Vec<usize>>,
    volume_lo: Option<[usize; 3]>,
    volume_hi: Option<[usize; 3]>,
    surface_axis: Option<usize>,
    surface_index: Option<usize>,
    surface_window: Option<[f64; 2]>,
}

// ---- validated ----

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub scenario: Scenario,
    pub seed: u64,
    /// As written; relative paths are resolved by the caller.
    pub output_dir: Option<PathBuf>,
    pub grid: Grid3D,
    pub constants: PhysicalConstants,
    pub constants_label: String,
    pub sample_t: f64,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Monochromatic(Monochromatic),
    GaussianPulse(GaussianPulse),
    Bichromatic([Line; 2]),
    Fock(FockParams),
    InvariantSuite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Monochromatic {
    /// All on one `|k|` shell and on the grid.
    pub k: Vec<RVec3>,
    pub mix: (C64, C64),
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPulse {
    pub k_center: RVec3,
    /// Gaussian width as a fraction of `|k_center|`.
    pub bandwidth: f64,
    pub mix: (C64, C64),
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub k: RVec3,
    pub energy: f64,
    pub helicity: Helicity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockParams {
    pub modes: Vec<(RVec3, Helicity)>,
    pub max_occupation: u32,
    pub preparation: Vec<usize>,
    pub volume: ([usize; 3], [usize; 3]),
    pub surface_axis: usize,
    pub surface_index: usize,
    pub surface_window: (f64, f64),
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let src = std::fs::read_to_string(path).map_err(|e| ConfigError {
            path: Some(path.to_path_buf()),
            line: None,
            column: None,
            key: None,
            message: format!("cannot read: {e}"),
        })?;
        Config::parse(&src).map_err(|e| e.with_path(path))
    }

    pub fn parse(src: &str) -> Result<Config, ConfigError> {
        let raw: RawConfig = toml::from_str(src).map_err(|e| {
            let (line, column) = match e.span() {
                Some(span) => {
                    let (l, c) = line_col(src, span.start);
                    (Some(l), Some(c))
                }
                None => (None, None),
            };
            ConfigError {
                path: None,
                line,
                column,
                key: None,
                message: e.message().to_string(),
            }
        })?;
        validate(src, raw)
    }

    /// Human-readable grid and mode summary for `check`.
    pub fn summary(&self) -> String {
        let g = &self.grid;
        let n = g.dims();
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<16}{v}\n"));
        line("scenario", self.scenario.name().to_string());
        line("seed", self.seed.to_string());
        line("grid", format!("{} x {} x {} = {} points", n[0], n[1], n[2], g.len()));
        line("dr", fmt3(g.spacing()));
        line("origin", fmt3(g.origin()));
        line("box", fmt3(g.box_len()));
        line("dk", fmt3(g.dk()));
        let nyq: Vec<f64> = (0..3).map(|a| g.dk()[a] * (n[a] / 2) as f64).collect();
        line("k_nyquist", fmt3([nyq[0], nyq[1], nyq[2]]));
        line("constants", self.constants_label.clone());
        line("sample.t", format!("{}", self.sample_t));
        let c = &self.constants;
        let mode = |k: &RVec3| {
            let idx = g
                .index_of_wavevector(k)
                .map(|i| format!("index {i}"))
                .unwrap_or_else(|| "off-grid".to_string());
            format!(
                "k = {}  ({idx}, omega = {}, hbar omega = {})",
                fmt3(*k),
                c.omega(k),
                c.photon_energy(k)
            )
        };
        match &self.params {
            Params::Monochromatic(m) => {
                for k in &m.k {
                    line("mode", mode(k));
                }
                line("energy", format!("{}", m.energy));
            }
            Params::GaussianPulse(p) => {
                line("k_center", mode(&p.k_center));
                line("sigma_k", format!("{}", p.bandwidth * rnorm(&p.k_center)));
                line("energy", format!("{}", p.energy));
            }
            Params::Bichromatic(lines) => {
                for l in lines {
                    line(
                        "mode",
                        format!("{}  {:?}, energy = {}", mode(&l.k), l.helicity, l.energy),
                    );
                }
            }
            Params::Fock(f) => {
                for (i, (k, h)) in f.modes.iter().enumerate() {
                    line(&format!("mode {i}"), format!("{}  {h:?}", mode(k)));
                }
                line("max_occupation", f.max_occupation.to_string());
                line("preparation", format!("{:?}", f.preparation));
            }
            Params::InvariantSuite => {}
        }
        s
    }
}

fn fmt3(v: [f64; 3]) -> String {
    format!("[{}, {}, {}]", v[0], v[1], v[2])
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, col)
}

/// 1-based line on which `dotted` is assigned, following `[table]` headers.
fn key_line(src: &str, dotted: &str) -> Option<usize> {
    let mut table = String::new();
    for (i, raw) in src.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if let Some(h) = l.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            table = h.trim().to_string();
            continue;
        }
        let Some((k, _)) = l.split_once('=') else { continue };
        let k: String = k.split('.').map(str::trim).collect::<Vec<_>>().join(".");
        let full = if table.is_empty() { k } else { format!("{table}.{k}") };
        if full == dotted || dotted.starts_with(&format!("{full}.")) {
            return Some(i + 1);
        }
    }
    None
}

fn parse_helicity(src: &str, key: &str, s: &str) -> Result<Helicity, ConfigError> {
    match s {
        "plus" | "+" => Ok(Helicity::Plus),
        "minus" | "-" => Ok(Helicity::Minus),
        other => Err(ConfigError::at_key(
            src,
            key,
            format!("expected \"plus\" or \"minus\", got {other:?}"),
        )),
    }
}

fn parse_mix(src: &str, key: &str, m: [[f64; 2]; 2]) -> Result<(C64, C64), ConfigError> {
    let mix = (C64::new(m[0][0], m[0][1]), C64::new(m[1][0], m[1][1]));
    if !m.iter().flatten().all(|x| x.is_finite()) {
        return Err(ConfigError::at_key(src, key, "entries must be finite"));
    }
    if mix.0.norm_sqr() + mix.1.norm_sqr() == 0.0 {
        return Err(ConfigError::at_key(
            src,
            key,
            "helicity_mix must not be zero in both components",
        ));
    }
    Ok(mix)
}

fn positive(src: &str, key: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::at_key(
            src,
            key,
            format!("must be finite and > 0, got {x}"),
        ))
    }
}

fn finite3(src: &str, key: &str, v: [f64; 3]) -> Result<RVec3, ConfigError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(v)
    } else {
        Err(ConfigError::at_key(src, key, "entries must be finite"))
    }
}

fn on_grid(src: &str, key: &str, grid: &Grid3D, k: RVec3) -> Result<RVec3, ConfigError> {
    let k = finite3(src, key, k)?;
    if rnorm(&k) == 0.0 {
        return Err(ConfigError::at_key(src, key, "wavevector must be nonzero"));
    }
    if grid.index_of_wavevector(&k).is_none() {
        return Err(ConfigError::at_key(
            src,
            key,
            format!("k = {} is not a grid wavevector (dk = {})", fmt3(k), fmt3(grid.dk())),
        ));
    }
    Ok(k)
}

fn validate(src: &str, raw: RawConfig) -> Result<Config, ConfigError> {
    let scenario = raw.scenario.ok_or_else(|| ConfigError::missing("scenario", None))?;
    let need = |key: &str| ConfigError::missing(key, Some(scenario));

    let rg = raw.grid.ok_or_else(|| need("grid.n"))?;
    let n = rg.n.ok_or_else(|| need("grid.n"))?;
    if n.len() != 3 {
        return Err(ConfigError::at_key(
            src,
            "grid.n",
            format!("expected 3 entries, got {}", n.len()),
        ));
    }
    let mut dims = [0usize; 3];
    for a in 0..3 {
        if n[a] < 4 || !(n[a] as u64).is_power_of_two() {
            return Err(ConfigError::at_key(
                src,
                "grid.n",
                format!("each entry must be a power of two >= 4, got {}", n[a]),
            ));
        }
        dims[a] = n[a] as usize;
    }
    let dr = match rg.dr.ok_or_else(|| need("grid.dr"))? {
        OneOrThree::One(x) => [x; 3],
        OneOrThree::Three(v) => v,
    };
    for x in dr {
        positive(src, "grid.dr", x)?;
    }
    let grid = match rg.origin {
        Some(o) => Grid3D::new(dims, dr, finite3(src, "grid.origin", o)?),
        None => Grid3D::centered(dims, dr),
    }
    .map_err(|e| ConfigError::at_key(src, "grid", e.to_string()))?;

    let (constants, constants_label) = match raw.constants {
        None => (PhysicalConstants::natural(), "natural".to_string()),
        Some(RawConstants::Named(s)) => match s.as_str() {
            "natural" => (PhysicalConstants::natural(), "natural".to_string()),
            "si" | "SI" => (PhysicalConstants::si(), "si".to_string()),
            other => {
                return Err(ConfigError::at_key(
                    src,
                    "constants",
                    format!("expected \"natural\", \"si\" or explicit constants.hbar/c/eps0/mu0, got {other:?}"),
                ))
            }
        },
        Some(RawConstants::Explicit(e)) => (
            PhysicalConstants::new(e.hbar, e.c, e.eps0, e.mu0)
                .map_err(|err| ConfigError::at_key(src, "constants", err.to_string()))?,
            "explicit".to_string(),
        ),
    };
    let c = &constants;
    let constants_label = format!(
        "{constants_label} (hbar = {}, c = {}, eps0 = {}, mu0 = {})",
        c.hbar(),
        c.c(),
        c.eps0(),
        c.mu0()
    );

    let sample_t = raw.sample.and_then(|s| s.t).unwrap_or(0.0);
    if !sample_t.is_finite() {
        return Err(ConfigError::at_key(src, "sample.t", "must be finite"));
    }

    let params = match scenario {
        Scenario::Monochromatic => {
            let m = raw.monochromatic.ok_or_else(|| need("monochromatic.k"))?;
            let ks = match m.k.ok_or_else(|| need("monochromatic.k"))? {
                OneOrMany::One(k) => vec![k],
                OneOrMany::Many(v) => v,
            };
            if ks.is_empty() {
                return Err(ConfigError::at_key(
                    src,
                    "monochromatic.k",
                    "needs at least one wavevector",
                ));
            }
            let ks = ks
                .into_iter()
                .map(|k| on_grid(src, "monochromatic.k", &grid, k))
                .collect::<Result<Vec<_>, _>>()?;
            let k0 = rnorm(&ks[0]);
            if ks.iter().any(|k| (rnorm(k) - k0).abs() > 1e-9 * k0) {
                return Err(ConfigError::at_key(
                    src,
                    "monochromatic.k",
                    "all wavevectors must share one |k|",
                ));
            }
            let mix = match m.helicity_mix {
                Some(x) => parse_mix(src, "monochromatic.helicity_mix", x)?,
                None => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            };
            let energy = match m.energy {
                Some(e) => positive(src, "monochromatic.energy", e)?,
                None => constants.photon_energy(&ks[0]),
            };
            Params::Monochromatic(Monochromatic { k: ks, mix, energy })
        }
        Scenario::GaussianPulse => {
            let p = raw.pulse.ok_or_else(|| need("pulse.k_center"))?;
            let k_center = finite3(src, "pulse.k_center", p.k_center.ok_or_else(|| need("pulse.k_center"))?)?;
            if rnorm(&k_center) == 0.0 {
                return Err(ConfigError::at_key(src, "pulse.k_center", "must be nonzero"));
            }
            let bandwidth = positive(
                src,
                "pulse.bandwidth",
                p.bandwidth.ok_or_else(|| need("pulse.bandwidth"))?,
            )?;
            let nyq = grid.dk()[0] * (dims[0] / 2) as f64;
            let nyq = (0..3).map(|a| grid.dk()[a] * (dims[a] / 2) as f64).fold(nyq, f64::min);
            if k_center.iter().any(|x| x.abs() >= nyq) {
                return Err(ConfigError::at_key(
                    src,
                    "pulse.k_center",
                    format!("components must lie inside the Nyquist limit {nyq}"),
                ));
            }
            let mix = parse_mix(
                src,
                "pulse.helicity_mix",
                p.helicity_mix.ok_or_else(|| need("pulse.helicity_mix"))?,
            )?;
            let energy = match p.energy {
                Some(e) => positive(src, "pulse.energy", e)?,
                None => constants.photon_energy(&k_center),
            };
            Params::GaussianPulse(GaussianPulse {
                k_center,
                bandwidth,
                mix,
                energy,
            })
        }
        Scenario::Bichromatic => {
            let b = raw.bichromatic.ok_or_else(|| need("bichromatic.k1"))?;
            let k1 = on_grid(
                src,
                "bichromatic.k1",
                &grid,
                b.k1.ok_or_else(|| need("bichromatic.k1"))?,
            )?;
            let k2 = on_grid(
                src,
                "bichromatic.k2",
                &grid,
                b.k2.ok_or_else(|| need("bichromatic.k2"))?,
            )?;
            let e1 = positive(src, "bichromatic.e1", b.e1.ok_or_else(|| need("bichromatic.e1"))?)?;
            let e2 = positive(src, "bichromatic.e2", b.e2.ok_or_else(|| need("bichromatic.e2"))?)?;
            let h1 = parse_helicity(src, "bichromatic.helicity1", b.helicity1.as_deref().unwrap_or("plus"))?;
            let h2 = parse_helicity(src, "bichromatic.helicity2", b.helicity2.as_deref().unwrap_or("plus"))?;
            if k1 == k2 && h1 == h2 {
                return Err(ConfigError::at_key(
                    src,
                    "bichromatic.k2",
                    "the two lines must be distinct modes",
                ));
            }
            Params::Bichromatic([
                Line {
                    k: k1,
                    energy: e1,
                    helicity: h1,
                },
                Line {
                    k: k2,
                    energy: e2,
                    helicity: h2,
                },
            ])
        }
        Scenario::FockDemo => Params::Fock(validate_fock(src, raw.fock, &grid, &constants, scenario)?),
        Scenario::InvariantSuite => Params::InvariantSuite,
    };

    Ok(Config {
        scenario,
        seed: raw.seed.unwrap_or(0),
        output_dir: raw.output_dir,
        grid,
        constants,
        constants_label,
        sample_t,
        params,
    })
}

fn validate_fock(
    src: &str,
    raw: Option<RawFock>,
    grid: &Grid3D,
    consts: &PhysicalConstants,
    scenario: Scenario,
) -> Result<FockParams, ConfigError> {
    let need = |key: &str| ConfigError::missing(key, Some(scenario));
    let f = raw.ok_or_else(|| need("fock.k"))?;
    let ks = f.k.ok_or_else(|| need("fock.k"))?;
    let hs = f.helicity.ok_or_else(|| need("fock.helicity"))?;
    if ks.is_empty() || ks.len() > 8 {
        return Err(ConfigError::at_key(src, "fock.k", "needs between 1 and 8 modes"));
    }
    if hs.len() != ks.len() {
        return Err(ConfigError::at_key(
            src,
            "fock.helicity",
            format!("expected {} entries to match fock.k, got {}", ks.len(), hs.len()),
        ));
    }
    let mut modes = Vec::with_capacity(ks.len());
    for (k, h) in ks.into_iter().zip(&hs) {
        let k = on_grid(src, "fock.k", grid, k)?;
        let h = parse_helicity(src, "fock.helicity", h)?;
        if modes.contains(&(k, h)) {
            return Err(ConfigError::at_key(
                src,
                "fock.k",
                format!("duplicate mode {} {h:?}", fmt3(k)),
            ));
        }
        modes.push((k, h));
    }
    let max_occupation = f.max_occupation.ok_or_else(|| need("fock.max_occupation"))?;
    if max_occupation == 0 || max_occupation > 16 {
        return Err(ConfigError::at_key(
            src,
            "fock.max_occupation",
            "must be between 1 and 16",
        ));
    }
    let preparation = f.preparation.unwrap_or_default();
    if let Some(bad) = preparation.iter().find(|&&m| m >= modes.len()) {
        return Err(ConfigError::at_key(
            src,
            "fock.preparation",
            format!("mode index {bad} out of range (have {} modes)", modes.len()),
        ));
    }
    let n = grid.dims();
    let lo = f.volume_lo.unwrap_or([0; 3]);
    let hi = f.volume_hi.unwrap_or([n[0] / 2, n[1], n[2]]);
    for a in 0..3 {
        if lo[a] >= hi[a] || hi[a] > n[a] {
            return Err(ConfigError::at_key(
                src,
                "fock.volume_hi",
                format!(
                    "need volume_lo < volume_hi <= grid.n on every axis (axis {a}: {}..{})",
                    lo[a], hi[a]
                ),
            ));
        }
    }
    let surface_axis = f.surface_axis.unwrap_or(0);
    if surface_axis > 2 {
        return Err(ConfigError::at_key(src, "fock.surface_axis", "must be 0, 1 or 2"));
    }
    let surface_index = f.surface_index.unwrap_or(n[surface_axis] / 2);
    if surface_index >= n[surface_axis] {
        return Err(ConfigError::at_key(src, "fock.surface_index", "outside the grid"));
    }
    let window = f
        .surface_window
        .unwrap_or([0.0, grid.box_len()[surface_axis] / consts.c()]);
    if !(window[0].is_finite() && window[1].is_finite() && window[1] >= window[0]) {
        return Err(ConfigError::at_key(
            src,
            "fock.surface_window",
            "need finite [t1, t2] with t2 >= t1",
        ));
    }
    Ok(FockParams {
        modes,
        max_occupation,
        preparation,
        volume: (lo, hi),
        surface_axis,
        surface_index,
        surface_window: (window[0], window[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "scenario = \"invariant_suite\"\ngrid.n = [8, 8, 8]\ngrid.dr = 1.0\n";

    #[test]
    fn minimal_suite_parses() {
        let c = Config::parse(BASE).unwrap();
        assert_eq!(c.scenario, Scenario::InvariantSuite);
        assert_eq!(c.grid.dims(), [8; 3]);
        assert_eq!(c.seed, 0);
    }

    #[test]
    fn table_headers_and_dotted_keys_agree() {
        let a = Config::parse(BASE).unwrap();
        let b = Config::parse("scenario = \"invariant_suite\"\n[grid]\nn = [8, 8, 8]\ndr = 1.0\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_key_reports_line() {
        let e = Config::parse(&format!("{BASE}grid.spacing = 2\n")).unwrap_err();
        assert_eq!(e.line, Some(4));
        assert!(e.message.contains("spacing"), "{e}");
    }

    #[test]
    fn non_power_of_two_names_grid_n() {
        let e = Config::parse("scenario = \"invariant_suite\"\n\ngrid.n = [8, 12, 8]\ngrid.dr = 1.0\n").unwrap_err();
        assert_eq!(e.key.as_deref(), Some("grid.n"));
        assert_eq!(e.line, Some(3));
    }

    #[test]
    fn pulse_without_k_center() {
        let src = "scenario = \"gaussian_pulse\"\ngrid.n = [8, 8, 8]\ngrid.dr = 1.0\n\
                   pulse.bandwidth = 0.1\npulse.helicity_mix = [[1, 0], [0, 0]]\n";
        let e = Config::parse(src).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("pulse.k_center"));
        assert!(e.to_string().contains("pulse.k_center"));
    }

    #[test]
    fn zero_helicity_mix_rejected() {
        let src = "scenario = \"gaussian_pulse\"\ngrid.n = [8, 8, 8]\ngrid.dr = 1.0\n\
                   pulse.k_center = [1, 0, 0]\npulse.bandwidth = 0.1\npulse.helicity_mix = [[0, 0], [0, 0]]\n";
        let e = Config::parse(src).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("pulse.helicity_mix"));
        assert_eq!(e.line, Some(6));
    }

    #[test]
    fn off_grid_mode_rejected() {
        let src = "scenario = \"monochromatic\"\ngrid.n = [8, 8, 8]\ngrid.dr = 1.0\nmonochromatic.k = [0.3, 0, 0]\n";
        let e = Config::parse(src).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("monochromatic.k"));
    }

    #[test]
    fn explicit_constants() {
        let src = format!("{BASE}constants.hbar = 2.0\nconstants.c = 2.0\nconstants.eps0 = 0.5\nconstants.mu0 = 0.5\n");
        let c = Config::parse(&src).unwrap();
        assert_eq!(c.constants.hbar(), 2.0);
        let bad = format!("{BASE}constants.hbar = 2.0\nconstants.c = 2.0\nconstants.eps0 = 1.0\nconstants.mu0 = 1.0\n");
        assert_eq!(Config::parse(&bad).unwrap_err().key.as_deref(), Some("constants"));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = Config::parse("scenario = \ngrid.n = [8, 8, 8]\n").unwrap_err();
        assert_eq!(e.line, Some(1));
        assert!(e.column.is_some());
    }
}
