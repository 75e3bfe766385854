//! Classical dynamics and observables.
//!
//! Evolution acts on helicity coefficients only, so every field it produces
//! is a positive-frequency, forward solution: `c±(k, t + dt) = c±(k, t) e^{-iω dt}`
//! with `ω = c|k|`. Spatial derivatives are spectral, time derivatives in
//! the diagnostics are central differences.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::helicity::{self, apply_j, blockwise, s_dot, synthesize, SpectralCoefficients};
use crate::lattice::{to_spatial, FieldState, Grid3D, PhysicalConstants, SpectralField};
use crate::vec3::{self, CVec3, RVec3};
use crate::{Six, C64};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

/// Exact per-mode phase evolution by `dt`.
pub fn evolve(coeffs: &SpectralCoefficients, dt: f64, consts: &PhysicalConstants) -> SpectralCoefficients {
    let t = coeffs.time() + dt;
    coeffs
        .map_k(|_, k| {
            let ph = -consts.omega(&k) * dt;
            C64::new(ph.cos(), ph.sin())
        })
        .with_time(t)
}

/// `iħc (S·k)(JΦ)` at every k-point, the S·k action taken on each half separately.
pub fn apply_hamiltonian(g: &SpectralField, consts: &PhysicalConstants) -> SpectralField {
    let grid = g.grid().clone();
    let pref = C64::new(0.0, consts.hbar() * consts.c());
    let values = g
        .values()
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let k = grid.wavevector(i);
            let jphi = apply_j(phi);
            vec3::scale(pref, &blockwise(&jphi, |v| s_dot(&k, v)))
        })
        .collect();
    SpectralField::from_parts(grid, values, g.time())
}

/// Spin form of the current, `i c Ψ†S(JΨ)`, one complex entry per axis.
pub fn spin_current(v: &Six, c: f64) -> CVec3 {
    let jv = apply_j(v);
    core::array::from_fn(|a| {
        let sj = blockwise(&jv, |w| helicity::apply_spin(a, w));
        vec3::cdot(v, &sj) * C64::new(0.0, c)
    })
}

/// Cross-product form of the current, `c(E*×H − H*×E)`.
pub fn cross_current(v: &Six, c: f64) -> CVec3 {
    let e = vec3::upper(v);
    let h = vec3::lower(v);
    let a = vec3::cross(&vec3::conj(&e), &h);
    let b = vec3::cross(&vec3::conj(&h), &e);
    vec3::sub(&a, &b).map(|x| x * c)
}

/// Energy density and Poynting flux sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxField {
    pub grid: Grid3D,
    /// `Ψ†Ψ`
    pub u: Vec<f64>,
    /// real part of `c(E*×H − H*×E)`
    pub j: Vec<RVec3>,
    /// largest `|Im j| / max |j|`; zero up to rounding
    pub j_imag_ratio: f64,
}

impl FluxField {
    /// `U = Σ u Δ³r`
    pub fn total_energy(&self) -> f64 {
        self.u.iter().sum::<f64>() * self.grid.cell_volume()
    }
}

pub fn observables(f: &FieldState, consts: &PhysicalConstants) -> FluxField {
    let mut u = Vec::with_capacity(f.values().len());
    let mut j = Vec::with_capacity(f.values().len());
    let mut max_re = 0.0f64;
    let mut max_im = 0.0f64;
    for v in f.values() {
        u.push(vec3::norm_sqr(v));
        let cj = cross_current(v, consts.c());
        let re = cj.map(|x| x.re);
        max_re = max_re.max(vec3::rnorm(&re));
        max_im = max_im.max(vec3::rnorm(&cj.map(|x| x.im)));
        j.push(re);
    }
    let j_imag_ratio = if max_re > 0.0 { max_im / max_re } else { max_im };
    FluxField {
        grid: f.grid().clone(),
        u,
        j,
        j_imag_ratio,
    }
}

/// Spectral divergence of a real vector field.
///
/// Exact for fields whose spectrum lies inside the grid band; the Nyquist
/// plane drops out because only the real part is kept.
pub fn divergence(grid: &Grid3D, j: &[RVec3]) -> Vec<f64> {
    let n = grid.len();
    let mut acc = vec![C64::new(0.0, 0.0); n];
    let mut buf = vec![C64::new(0.0, 0.0); n];
    for a in 0..3 {
        for (b, v) in buf.iter_mut().zip(j) {
            *b = C64::new(v[a], 0.0);
        }
        grid.forward_scalar(&mut buf);
        for (i, (s, b)) in acc.iter_mut().zip(&buf).enumerate() {
            *s += b * C64::new(0.0, grid.wavevector(i)[a]);
        }
    }
    grid.inverse_scalar(&mut acc);
    acc.into_iter().map(|x| x.re).collect()
}

/// Spectral gradient of a complex scalar field, returned per axis.
pub fn gradient(grid: &Grid3D, f: &[C64]) -> [Vec<C64>; 3] {
    let mut spec = f.to_vec();
    grid.forward_scalar(&mut spec);
    core::array::from_fn(|a| {
        let mut d: Vec<C64> = spec
            .iter()
            .enumerate()
            .map(|(i, s)| s * C64::new(0.0, grid.wavevector(i)[a]))
            .collect();
        grid.inverse_scalar(&mut d);
        d
    })
}

/// Time for light to cross the longest box edge.
pub fn box_crossing_time(grid: &Grid3D, consts: &PhysicalConstants) -> f64 {
    grid.box_len().iter().cloned().fold(0.0, f64::max) / consts.c()
}

/// Position-space field for a set of helicity coefficients.
pub fn field_at(coeffs: &SpectralCoefficients) -> Result<FieldState> {
    to_spatial(&synthesize(coeffs))
}

/// Residual of `∂u/∂t + ∇·j = 0` at the coefficients' time.
///
/// `∂u/∂t` is a central difference over `±dt_probe`, `∇·j` is spectral.
/// The maximum pointwise residual is divided by `max u / T`, `T` being the
/// box-crossing time.
pub fn continuity_residual(coeffs: &SpectralCoefficients, dt_probe: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !(dt_probe.is_finite() && dt_probe > 0.0) {
        return Err(Error::Domain(alloc::format!("dt_probe must be > 0, got {dt_probe}")));
    }
    let grid = coeffs.grid();
    let before = observables(&field_at(&evolve(coeffs, -dt_probe, consts))?, consts);
    let now = observables(&field_at(coeffs)?, consts);
    let after = observables(&field_at(&evolve(coeffs, dt_probe, consts))?, consts);
    let div = divergence(grid, &now.j);
    let max_u = now.u.iter().cloned().fold(0.0, f64::max);
    if max_u == 0.0 {
        return Ok(0.0);
    }
    let worst = (0..grid.len())
        .map(|i| ((after.u[i] - before.u[i]) / (2.0 * dt_probe) + div[i]).abs())
        .fold(0.0, f64::max);
    Ok(worst * box_crossing_time(grid, consts) / max_u)
}

/// `max_k (|k·Φ_E| + |k·Φ_H|) / |k|`, divided by the largest `|Φ(k)|`.
pub fn transversality_residual(g: &SpectralField) -> f64 {
    let scale = g.max_norm();
    if scale == 0.0 {
        return 0.0;
    }
    let grid = g.grid();
    let worst = g
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != grid.dc_index())
        .map(|(i, v)| {
            let k = grid.wavevector(i);
            (vec3::rdot(&k, &vec3::upper(v)).norm() + vec3::rdot(&k, &vec3::lower(v)).norm()) / vec3::rnorm(&k)
        })
        .fold(0.0, f64::max);
    worst / scale
}
