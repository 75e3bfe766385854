//! Physical constants, the periodic 3D grid, field containers and the
//! discrete Fourier pair.
//!
//! The discrete transform is normalized so the continuum pair
//! `Φ(k) = (2π)^{-3/2} ∫ Ψ(r) e^{-ik·r} dr` and its inverse hold verbatim on
//! the lattice:
//!
//! ```text
//! Φ[m] = (2π)^{-3/2} Δ³r Σ_n Ψ[n] e^{-i k_m·r_n}
//! Ψ[n] = (2π)^{-3/2} Δ³k Σ_m Φ[m] e^{+i k_m·r_n}
//! ```
//!
//! With `Δ³r Δ³k = (2π)³ / N` this pair is exactly inverse and satisfies
//! `Σ|Ψ|²Δ³r = Σ|Φ|²Δ³k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fft::Fft3;
use crate::vec3::{is_finite, RVec3, ZERO6};
use crate::{Six, C64};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

/// `ħ`, `c`, `ε₀`, `μ₀`. Natural units (all ones) by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    eps0: f64,
    mu0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

impl PhysicalConstants {
    pub const fn natural() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            c: 1.0,
            eps0: 1.0,
            mu0: 1.0,
        }
    }

    /// SI values; `ε₀` is derived from `μ₀` and `c` so the vacuum relation is exact.
    pub fn si() -> Self {
        let c = 299_792_458.0;
        let mu0 = 1.256_637_062_12e-6;
        PhysicalConstants {
            hbar: 1.054_571_817e-34,
            c,
            eps0: 1.0 / (mu0 * c * c),
            mu0,
        }
    }

    /// Explicit values. All must be positive and satisfy `ε₀μ₀c² = 1` to 1e-12.
    pub fn new(hbar: f64, c: f64, eps0: f64, mu0: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("c", c), ("eps0", eps0), ("mu0", mu0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        let rel = (eps0 * mu0 * c * c - 1.0).abs();
        if rel > 1e-12 {
            return Err(Error::Config(format!(
                "eps0 * mu0 * c^2 must equal 1 (relative deviation {rel:e})"
            )));
        }
        Ok(PhysicalConstants { hbar, c, eps0, mu0 })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn eps0(&self) -> f64 {
        self.eps0
    }
    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    /// `ω = c|k|`
    pub fn omega(&self, k: &RVec3) -> f64 {
        self.c * crate::vec3::rnorm(k)
    }

    /// Photon energy `ħc|k|`.
    pub fn photon_energy(&self, k: &RVec3) -> f64 {
        self.hbar * self.omega(k)
    }
}

/// Uniform periodic grid. Points per axis are powers of two, at least 4.
///
/// Samples are stored row-major with `z` fastest: `(ix * ny + iy) * nz + iz`.
/// Wavevectors follow the standard DFT layout `0, dk, …, (n/2)dk, -(n/2-1)dk, …, -dk`
/// with the Nyquist sample taken as positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid3D {
    n: [usize; 3],
    dr: [f64; 3],
    origin: [f64; 3],
}

impl Grid3D {
    pub fn new(n: [usize; 3], dr: [f64; 3], origin: [f64; 3]) -> Result<Self> {
        for a in 0..3 {
            if n[a] < 4 || !n[a].is_power_of_two() {
                return Err(Error::Config(format!(
                    "grid.n[{a}] = {} must be a power of two >= 4",
                    n[a]
                )));
            }
            if !(dr[a].is_finite() && dr[a] > 0.0) {
                return Err(Error::Config(format!("grid.dr[{a}] = {} must be > 0", dr[a])));
            }
            if !origin[a].is_finite() {
                return Err(Error::Config(format!("grid.origin[{a}] is not finite")));
            }
        }
        Ok(Grid3D { n, dr, origin })
    }

    /// Grid centred on the origin: positions span `[-L/2, L/2)` per axis.
    pub fn centered(n: [usize; 3], dr: [f64; 3]) -> Result<Self> {
        let origin = [0, 1, 2].map(|a| -0.5 * n[a] as f64 * dr[a]);
        Self::new(n, dr, origin)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.n
    }
    pub fn spacing(&self) -> [f64; 3] {
        self.dr
    }
    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn box_len(&self) -> [f64; 3] {
        [0, 1, 2].map(|a| self.n[a] as f64 * self.dr[a])
    }

    pub fn dk(&self) -> [f64; 3] {
        self.box_len().map(|l| 2.0 * PI / l)
    }

    pub fn box_volume(&self) -> f64 {
        self.box_len().iter().product()
    }

    /// `Δ³r`
    pub fn cell_volume(&self) -> f64 {
        self.dr.iter().product()
    }

    /// `Δ³k`
    pub fn k_cell_volume(&self) -> f64 {
        self.dk().iter().product()
    }

    #[inline]
    pub fn flat(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.n[1] + idx[1]) * self.n[2] + idx[2]
    }

    #[inline]
    pub fn unflat(&self, i: usize) -> [usize; 3] {
        let iz = i % self.n[2];
        let iy = (i / self.n[2]) % self.n[1];
        let ix = i / (self.n[1] * self.n[2]);
        [ix, iy, iz]
    }

    #[inline]
    pub fn position(&self, i: usize) -> RVec3 {
        let idx = self.unflat(i);
        [0, 1, 2].map(|a| self.origin[a] + idx[a] as f64 * self.dr[a])
    }

    /// Signed integer frequency of DFT index `m` along `axis`.
    #[inline]
    pub fn signed_freq(&self, axis: usize, m: usize) -> i64 {
        let n = self.n[axis];
        if m <= n / 2 {
            m as i64
        } else {
            m as i64 - n as i64
        }
    }

    #[inline]
    pub fn wavevector(&self, i: usize) -> RVec3 {
        let idx = self.unflat(i);
        let dk = self.dk();
        [0, 1, 2].map(|a| self.signed_freq(a, idx[a]) as f64 * dk[a])
    }

    /// Flat index of the DC sample.
    pub fn dc_index(&self) -> usize {
        0
    }

    /// Flat index of an on-grid wavevector, if `k` lies on the lattice to 1e-9 of a cell.
    pub fn index_of_wavevector(&self, k: &RVec3) -> Option<usize> {
        let dk = self.dk();
        let mut idx = [0usize; 3];
        for a in 0..3 {
            let q = k[a] / dk[a];
            let m = q.round();
            if (q - m).abs() > 1e-9 {
                return None;
            }
            let n = self.n[a] as i64;
            let m = m as i64;
            if m > n / 2 || m <= -n / 2 {
                return None;
            }
            idx[a] = m.rem_euclid(n) as usize;
        }
        Some(self.flat(idx))
    }

    pub fn wavevectors(&self) -> Vec<RVec3> {
        (0..self.len()).map(|i| self.wavevector(i)).collect()
    }

    pub fn positions(&self) -> Vec<RVec3> {
        (0..self.len()).map(|i| self.position(i)).collect()
    }

    pub(crate) fn plan(&self) -> Fft3 {
        Fft3::new(self.n)
    }

    /// Continuum-normalized forward transform of one scalar component, in place.
    pub fn forward_scalar(&self, data: &mut [C64]) {
        let plan = self.plan();
        self.forward_with(&plan, data);
    }

    /// Continuum-normalized inverse transform of one scalar component, in place.
    pub fn inverse_scalar(&self, data: &mut [C64]) {
        let plan = self.plan();
        self.inverse_with(&plan, data);
    }

    fn forward_with(&self, plan: &Fft3, data: &mut [C64]) {
        plan.forward(data);
        let pref = self.cell_volume() * (2.0 * PI).powf(-1.5);
        for (i, v) in data.iter_mut().enumerate() {
            *v *= self.origin_phase(i, -1.0) * pref;
        }
    }

    fn inverse_with(&self, plan: &Fft3, data: &mut [C64]) {
        let pref = self.k_cell_volume() * (2.0 * PI).powf(-1.5);
        for (i, v) in data.iter_mut().enumerate() {
            *v *= self.origin_phase(i, 1.0) * pref;
        }
        plan.inverse(data);
    }

    /// `exp(sign · i k·origin)`; the DFT itself measures positions from the origin.
    #[inline]
    fn origin_phase(&self, i: usize, sign: f64) -> C64 {
        let k = self.wavevector(i);
        let ph = sign * (k[0] * self.origin[0] + k[1] * self.origin[1] + k[2] * self.origin[2]);
        C64::new(ph.cos(), ph.sin())
    }
}

/// Position-space field `Ψ_em(r) = (√ε₀E, √μ₀H)` on a grid at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    grid: Grid3D,
    values: Vec<Six>,
    time: f64,
}

/// Spectral image `Φ_em(k)` on the conjugate k-grid.
///
/// The DC sample is carried as given so the transform pair stays exact;
/// operations that need a DC-free field call [`SpectralField::strip_dc`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid3D,
    values: Vec<Six>,
    time: f64,
}

macro_rules! six_field_common {
    ($ty:ident, $what:literal) => {
        impl $ty {
            pub fn new(grid: Grid3D, values: Vec<Six>, time: f64) -> Result<Self> {
                if values.len() != grid.len() {
                    return Err(Error::Shape {
                        expected: grid.len(),
                        found: values.len(),
                    });
                }
                if !time.is_finite() || !values.iter().all(|v| is_finite(v)) {
                    return Err(Error::NonFinite($what));
                }
                Ok($ty { grid, values, time })
            }

            pub fn zeros(grid: Grid3D, time: f64) -> Self {
                let values = vec![ZERO6; grid.len()];
                $ty { grid, values, time }
            }

            /// Build sample-by-sample from a closure over the flat index.
            pub fn from_fn(grid: Grid3D, time: f64, f: impl FnMut(usize) -> Six) -> Result<Self> {
                let values = (0..grid.len()).map(f).collect();
                Self::new(grid, values, time)
            }

            pub fn grid(&self) -> &Grid3D {
                &self.grid
            }
            pub fn values(&self) -> &[Six] {
                &self.values
            }
            pub fn time(&self) -> f64 {
                self.time
            }
            pub fn into_values(self) -> Vec<Six> {
                self.values
            }

            pub(crate) fn from_parts(grid: Grid3D, values: Vec<Six>, time: f64) -> Self {
                $ty { grid, values, time }
            }

            /// Largest 6-vector norm over all samples.
            pub fn max_norm(&self) -> f64 {
                self.values
                    .iter()
                    .map(|v| crate::vec3::norm(v))
                    .fold(0.0, f64::max)
            }
        }
    };
}

six_field_common!(FieldState, "field state");
six_field_common!(SpectralField, "spectral field");

impl FieldState {
    /// `Σ Ψ†Ψ Δ³r`
    pub fn total_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| crate::vec3::norm_sqr(v)).sum::<f64>() * self.grid.cell_volume()
    }
}

impl SpectralField {
    /// `Σ Φ†Φ Δ³k`
    pub fn total_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| crate::vec3::norm_sqr(v)).sum::<f64>() * self.grid.k_cell_volume()
    }

    pub fn dc_magnitude(&self) -> f64 {
        crate::vec3::norm(&self.values[self.grid.dc_index()])
    }

    /// Zero the k = 0 sample and return the magnitude that was discarded.
    pub fn strip_dc(&mut self) -> f64 {
        let dc = self.grid.dc_index();
        let m = crate::vec3::norm(&self.values[dc]);
        self.values[dc] = ZERO6;
        m
    }

    pub fn scaled(&self, s: C64) -> Self {
        let values = self.values.iter().map(|v| crate::vec3::scale(s, v)).collect();
        SpectralField {
            grid: self.grid.clone(),
            values,
            time: self.time,
        }
    }
}

fn transform(grid: &Grid3D, values: &[Six], forward: bool) -> Vec<Six> {
    let plan = grid.plan();
    let mut out = vec![ZERO6; grid.len()];
    let mut buf = vec![C64::new(0.0, 0.0); grid.len()];
    for comp in 0..6 {
        for (b, v) in buf.iter_mut().zip(values) {
            *b = v[comp];
        }
        if forward {
            grid.forward_with(&plan, &mut buf);
        } else {
            grid.inverse_with(&plan, &mut buf);
        }
        for (o, b) in out.iter_mut().zip(&buf) {
            o[comp] = *b;
        }
    }
    out
}

/// Continuum-normalized forward transform, component by component. Time is carried through.
pub fn to_spectral(f: &FieldState) -> Result<SpectralField> {
    let values = transform(&f.grid, &f.values, true);
    if !values.iter().all(|v| is_finite(v)) {
        return Err(Error::NonFinite("forward transform output"));
    }
    Ok(SpectralField::from_parts(f.grid.clone(), values, f.time))
}

/// Inverse of [`to_spectral`].
pub fn to_spatial(g: &SpectralField) -> Result<FieldState> {
    let values = transform(&g.grid, &g.values, false);
    if !values.iter().all(|v| is_finite(v)) {
        return Err(Error::NonFinite("inverse transform output"));
    }
    Ok(FieldState::from_parts(g.grid.clone(), values, g.time))
}
