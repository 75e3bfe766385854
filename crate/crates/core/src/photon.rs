//! Single-photon wavefunction from a classical field.
//!
//! Each helicity coefficient of the classical field is divided by the
//! square root of its photon energy `ħc|k|`; the squared norm of the result
//! is the photon number of the field, and the stored wavefunction is that
//! scaled field renormalized to one.
//!
//! Stored coefficients use the convention `Φ(k) = (c₊ψ₊ + c₋ψ₋)/√2`, the
//! lattice counterpart of the `[2(2π)³]^{-1/2}` prefactor: with `ψ†ψ = 2`,
//! `Φ†Φ = |c₊|² + |c₋|²` and `Σ (|c₊|² + |c₋|²) Δ³k = 1`.

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::helicity::{self, project, synthesize, SpectralCoefficients};
use crate::lattice::{to_spatial, FieldState, Grid3D, PhysicalConstants, SpectralField};
use crate::maxwell::{self, cross_current, evolve, spin_current};
use crate::vec3::{self, RVec3};
use crate::C64;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

/// Relative projection residual above which a photon wavefunction carries a warning.
pub const FORWARD_RESIDUAL_WARN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhotonWarning {
    /// The classical field had content outside the forward helicity subspace;
    /// it was dropped. Value is the projection residual relative to `max |Φ|`.
    NonForwardContent(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonWavefunction {
    coeffs: SpectralCoefficients,
    photon_number: f64,
    norm_check: f64,
    consts: PhysicalConstants,
    dc_discarded: f64,
    warning: Option<PhotonWarning>,
}

impl PhotonWavefunction {
    /// Build directly from coefficients in the photon convention; they are normalized here.
    pub fn from_coefficients(coeffs: SpectralCoefficients, consts: PhysicalConstants) -> Result<Self> {
        let n = coeffs.total_norm_sqr();
        if n == 0.0 {
            return Err(Error::Domain("photon wavefunction from zero coefficients".into()));
        }
        let coeffs = coeffs.scaled(C64::new(n.sqrt().recip(), 0.0));
        let norm_check = (coeffs.total_norm_sqr() - 1.0).abs();
        Ok(PhotonWavefunction {
            coeffs,
            photon_number: n,
            norm_check,
            consts,
            dc_discarded: 0.0,
            warning: None,
        })
    }

    pub fn coeffs(&self) -> &SpectralCoefficients {
        &self.coeffs
    }
    pub fn grid(&self) -> &Grid3D {
        self.coeffs.grid()
    }
    pub fn consts(&self) -> &PhysicalConstants {
        &self.consts
    }
    /// Squared norm before normalization: the photon number of the source field.
    pub fn photon_number(&self) -> f64 {
        self.photon_number
    }
    /// `|Σ (|c₊|² + |c₋|²) Δ³k − 1|` after normalization.
    pub fn norm_check(&self) -> f64 {
        self.norm_check
    }
    pub fn dc_discarded(&self) -> f64 {
        self.dc_discarded
    }
    pub fn warning(&self) -> Option<PhotonWarning> {
        self.warning
    }

    /// `Φ(k, t)`
    pub fn spectral_field(&self, t: f64) -> SpectralField {
        let evolved = evolve(&self.coeffs, t - self.coeffs.time(), &self.consts);
        synthesize(&evolved).scaled(C64::new(1.0 / SQRT_2, 0.0))
    }

    /// `Ψ(r, t)`
    pub fn position_field(&self, t: f64) -> Result<FieldState> {
        to_spatial(&self.spectral_field(t))
    }

    /// Coefficients evolved to time `t`, in the convention used by [`maxwell`] diagnostics.
    pub fn coefficients_at(&self, t: f64) -> SpectralCoefficients {
        evolve(&self.coeffs, t - self.coeffs.time(), &self.consts)
    }
}

/// Divide each spectral component by `√(ħc|k|)` and normalize.
pub fn scale_to_photon(g: &SpectralField, consts: &PhysicalConstants) -> Result<PhotonWavefunction> {
    let mut g = g.clone();
    let dc_discarded = g.strip_dc();
    let scale = g.max_norm();
    if scale == 0.0 {
        return Err(Error::Domain("cannot build a photon from a zero field".into()));
    }
    let (coeffs, residual) = project(&g);
    let scaled = coeffs.map_k(|_, k| C64::new(SQRT_2 / consts.photon_energy(&k).sqrt(), 0.0));
    let mut p = PhotonWavefunction::from_coefficients(scaled, *consts)?;
    p.dc_discarded = dc_discarded;
    let rel = residual / scale;
    if rel > FORWARD_RESIDUAL_WARN {
        p.warning = Some(PhotonWarning::NonForwardContent(rel));
    }
    Ok(p)
}

/// Photon probability density and current on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDensities {
    pub grid: Grid3D,
    pub time: f64,
    /// `Ψ†Ψ`
    pub rho: Vec<f64>,
    /// real part of `icΨ†S(JΨ)`
    pub jprob: Vec<RVec3>,
}

impl PhotonDensities {
    /// `Σ rho Δ³r`
    pub fn total(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.grid.cell_volume()
    }

    /// Circular mean position along `axis`, unaffected by the periodic wrap.
    pub fn circular_centroid(&self, axis: usize) -> f64 {
        let l = self.grid.box_len()[axis];
        let mut acc = C64::new(0.0, 0.0);
        for (i, r) in self.rho.iter().enumerate() {
            let x = self.grid.position(i)[axis];
            acc += C64::from_polar(*r, 2.0 * core::f64::consts::PI * x / l);
        }
        acc.arg() * l / (2.0 * core::f64::consts::PI)
    }
}

pub fn synthesize_position(p: &PhotonWavefunction, t: f64) -> Result<(PhotonDensities, FieldState)> {
    let psi = p.position_field(t)?;
    let c = p.consts.c();
    let rho = psi.values().iter().map(|v| vec3::norm_sqr(v)).collect();
    let jprob = psi.values().iter().map(|v| spin_current(v, c).map(|x| x.re)).collect();
    let d = PhotonDensities {
        grid: psi.grid().clone(),
        time: t,
        rho,
        jprob,
    };
    Ok((d, psi))
}

/// Maximum pointwise `|j_spin − j_cross|` relative to the largest `|j_cross|`.
pub fn probability_current_consistency(p: &PhotonWavefunction, t: f64) -> Result<f64> {
    let psi = p.position_field(t)?;
    let c = p.consts.c();
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for v in psi.values() {
        let s = spin_current(v, c);
        let x = cross_current(v, c);
        diff = diff.max(vec3::norm(&vec3::sub(&s, &x)));
        scale = scale.max(vec3::norm(&x));
    }
    Ok(if scale > 0.0 { diff / scale } else { diff })
}

/// `n(k) = Φ†Φ / (ħc|k|)` and `N = Σ n Δ³k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonNumberSpectrum {
    pub n: Vec<f64>,
    pub total: f64,
}

pub fn photon_number_spectrum(g: &SpectralField, consts: &PhysicalConstants) -> PhotonNumberSpectrum {
    let grid = g.grid();
    let n: Vec<f64> = g
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == grid.dc_index() {
                0.0
            } else {
                vec3::norm_sqr(v) / consts.photon_energy(&grid.wavevector(i))
            }
        })
        .collect();
    let total = n.iter().sum::<f64>() * grid.k_cell_volume();
    PhotonNumberSpectrum { n, total }
}

/// Photon number density against energy density over a mean photon energy.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityComparison {
    /// All occupied k-points lie on one `|k|` shell.
    pub monochromatic: bool,
    /// Energy-weighted mean frequency `Σ u(k)ω / Σ u(k)`.
    pub omega_bar: f64,
    /// `max |u(k) / (ħω n(k)) − 1|` over occupied k; zero up to rounding.
    pub spectral_ratio_deviation: f64,
    /// `max_r |rho(r) − u(r)/(ħω̄)| / max_r rho(r)`.
    pub max_ratio_deviation: f64,
    /// Photon number density in position space; integrates to the photon number.
    pub rho_photon: Vec<f64>,
    /// `u(r) / (ħω̄)`
    pub u_over_hbar_omega_bar: Vec<f64>,
    /// `|rho − u/(ħω̄)| / max rho`, per point.
    pub relative_deviation: Vec<f64>,
}

/// Occupied means `n(k) > OCCUPIED_REL · max n`.
const OCCUPIED_REL: f64 = 1e-12;

pub fn density_comparison(g: &SpectralField, consts: &PhysicalConstants) -> Result<DensityComparison> {
    let mut g = g.clone();
    g.strip_dc();
    let grid = g.grid().clone();
    let spectrum = photon_number_spectrum(&g, consts);
    let nmax = spectrum.n.iter().cloned().fold(0.0, f64::max);
    if nmax == 0.0 {
        let zeros = alloc::vec![0.0; grid.len()];
        return Ok(DensityComparison {
            monochromatic: false,
            omega_bar: 0.0,
            spectral_ratio_deviation: 0.0,
            max_ratio_deviation: 0.0,
            rho_photon: zeros.clone(),
            u_over_hbar_omega_bar: zeros.clone(),
            relative_deviation: zeros,
        });
    }
    let mut shell: Option<(f64, f64)> = None;
    let mut uw = 0.0;
    let mut uo = 0.0;
    let mut spectral_dev = 0.0f64;
    for (i, v) in g.values().iter().enumerate() {
        if spectrum.n[i] <= OCCUPIED_REL * nmax {
            continue;
        }
        let k = grid.wavevector(i);
        let km = vec3::rnorm(&k);
        shell = Some(match shell {
            None => (km, km),
            Some((lo, hi)) => (lo.min(km), hi.max(km)),
        });
        let u = vec3::norm_sqr(v);
        let omega = consts.omega(&k);
        uw += u;
        uo += u * omega;
        spectral_dev = spectral_dev.max((u / (consts.hbar() * omega * spectrum.n[i]) - 1.0).abs());
    }
    let (lo, hi) = shell.unwrap_or((0.0, 0.0));
    let monochromatic = hi - lo <= 1e-9 * hi;
    let omega_bar = uo / uw;

    let scaled = SpectralField::from_fn(grid.clone(), g.time(), |i| {
        if i == grid.dc_index() {
            return vec3::ZERO6;
        }
        let s = consts.photon_energy(&grid.wavevector(i)).sqrt().recip();
        vec3::scale(C64::new(s, 0.0), &g.values()[i])
    })?;
    let photon = to_spatial(&scaled)?;
    let classical = to_spatial(&g)?;
    let rho_photon: Vec<f64> = photon.values().iter().map(|v| vec3::norm_sqr(v)).collect();
    let e_bar = consts.hbar() * omega_bar;
    let u_over: Vec<f64> = classical.values().iter().map(|v| vec3::norm_sqr(v) / e_bar).collect();
    let rmax = rho_photon.iter().cloned().fold(0.0, f64::max);
    let relative_deviation: Vec<f64> = rho_photon
        .iter()
        .zip(&u_over)
        .map(|(a, b)| (a - b).abs() / rmax)
        .collect();
    let max_ratio_deviation = relative_deviation.iter().cloned().fold(0.0, f64::max);
    Ok(DensityComparison {
        monochromatic,
        omega_bar,
        spectral_ratio_deviation: spectral_dev,
        max_ratio_deviation,
        rho_photon,
        u_over_hbar_omega_bar: u_over,
        relative_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMomentum {
    pub orbital: f64,
    pub spin: f64,
}

impl AngularMomentum {
    pub fn total(&self) -> f64 {
        self.orbital + self.spin
    }
}

/// `⟨J_z⟩ = Σ Ψ†[(r × (ħ/i)∇)_z + ħS_z]Ψ Δ³r`, with positions taken from the grid
/// coordinates and `∇` spectral.
pub fn angular_momentum_z(p: &PhotonWavefunction, t: f64) -> Result<AngularMomentum> {
    let psi = p.position_field(t)?;
    let grid = psi.grid();
    let hbar = p.consts.hbar();
    let positions = grid.positions();
    let mut orbital = 0.0;
    for comp in 0..6 {
        let f: Vec<C64> = psi.values().iter().map(|v| v[comp]).collect();
        let [dx, dy, _] = maxwell::gradient(grid, &f);
        for i in 0..grid.len() {
            let r = positions[i];
            // (ħ/i)(x∂y − y∂x)
            let lz = (dy[i] * r[0] - dx[i] * r[1]) * C64::new(0.0, -hbar);
            orbital += (f[i].conj() * lz).re;
        }
    }
    let spin: f64 = psi
        .values()
        .iter()
        .map(|v| vec3::cdot(v, &helicity::blockwise(v, |w| helicity::apply_spin(2, w))).re)
        .sum();
    let dv = grid.cell_volume();
    Ok(AngularMomentum {
        orbital: orbital * dv,
        spin: spin * hbar * dv,
    })
}
