#![allow(dead_code)]

use std::f64::consts::PI;

use photonwave_core::fock::{annihilate, FockState, ModeSet};
use photonwave_core::helicity::{transverse_basis, Helicity, SpectralCoefficients};
use photonwave_core::vec3::{self, RVec3};
use photonwave_core::{FieldState, Grid3D, SpectralField, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn crandn(r: &mut ChaCha8Rng) -> C64 {
    C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

/// Grid with dk = 1 on every axis.
pub fn unit_dk_grid(n: [usize; 3]) -> Grid3D {
    Grid3D::centered(n, n.map(|m| 2.0 * PI / m as f64)).unwrap()
}

pub fn random_field(grid: &Grid3D, seed: u64) -> FieldState {
    let mut r = rng(seed);
    FieldState::from_fn(grid.clone(), 0.0, |_| std::array::from_fn(|_| crandn(&mut r))).unwrap()
}

/// Random forward coefficients restricted to the inner half of the band.
pub fn random_coeffs(grid: &Grid3D, seed: u64) -> SpectralCoefficients {
    let mut r = rng(seed);
    let kmax = grid.dk().map(|d| d * grid.dims()[0] as f64 / 4.0);
    SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
        let a = crandn(&mut r);
        let b = crandn(&mut r);
        if (0..3).all(|i| k[i].abs() < kmax[i]) {
            (a, b)
        } else {
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        }
    })
    .unwrap()
}

/// Gaussian envelope of width `sigma` around `k0`, helicity mix `(a, b)`.
pub fn gaussian_coeffs(grid: &Grid3D, k0: RVec3, sigma: f64, mix: (C64, C64)) -> SpectralCoefficients {
    SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
        let d2: f64 = (0..3).map(|a| (k[a] - k0[a]).powi(2)).sum();
        let g = (-d2 / (2.0 * sigma * sigma)).exp();
        (mix.0 * g, mix.1 * g)
    })
    .unwrap()
}

/// Helicity-projected, uniformly circularly polarized Gaussian around `k0 ẑ`.
pub fn circular_packet(grid: &Grid3D, k0: f64, sigma: f64, h: Helicity) -> SpectralCoefficients {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e = [C64::new(-s, 0.0), C64::new(0.0, -h.sign() * s), C64::new(0.0, 0.0)];
    SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
        let d2 = k[0] * k[0] + k[1] * k[1] + (k[2] - k0).powi(2);
        let g = (-d2 / (2.0 * sigma * sigma)).exp();
        if g < 1e-300 {
            return (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        }
        let b = transverse_basis(k).unwrap();
        let c = vec3::cdot(b.f(h), &e) * g;
        match h {
            Helicity::Plus => (c, C64::new(0.0, 0.0)),
            Helicity::Minus => (C64::new(0.0, 0.0), c),
        }
    })
    .unwrap()
}

/// Classical spectral field with a single occupied mode of energy `energy`.
pub fn mode_field(grid: &Grid3D, k: RVec3, h: Helicity, energy: f64) -> SpectralField {
    let idx = grid.index_of_wavevector(&k).expect("on-grid k");
    let b = transverse_basis(k).unwrap();
    let a = (energy / (2.0 * grid.k_cell_volume())).sqrt();
    let mut vals = vec![vec3::ZERO6; grid.len()];
    vals[idx] = vec3::scale(C64::new(a, 0.0), b.psi(h));
    SpectralField::new(grid.clone(), vals, 0.0).unwrap()
}

pub fn add_fields(a: &SpectralField, b: &SpectralField) -> SpectralField {
    let vals = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| vec3::add(x, y))
        .collect();
    SpectralField::new(a.grid().clone(), vals, a.time()).unwrap()
}

/// Direct evaluation of `(2π)^{-3/2} Δ³r Σ_n Ψ[n] e^{-ik·r_n}` for one component and one k.
pub fn direct_dft(f: &FieldState, comp: usize, k: RVec3) -> C64 {
    let grid = f.grid();
    let sum: C64 = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let r = grid.position(i);
            let ph = -(k[0] * r[0] + k[1] * r[1] + k[2] * r[2]);
            v[comp] * C64::new(ph.cos(), ph.sin())
        })
        .sum();
    sum * grid.cell_volume() * (2.0 * PI).powf(-1.5)
}

/// Dense-matrix oracle for a truncated Fock space.
pub struct DenseFock {
    pub basis: Vec<Vec<u32>>,
    /// annihilators[m][row][col]
    pub annihilators: Vec<Vec<Vec<C64>>>,
}

impl DenseFock {
    pub fn new(ms: &ModeSet) -> Self {
        let basis = ms.basis();
        let dim = basis.len();
        let index = |occ: &Vec<u32>| basis.iter().position(|b| b == occ);
        let annihilators = (0..ms.len())
            .map(|m| {
                let mut a = vec![vec![C64::new(0.0, 0.0); dim]; dim];
                for (col, occ) in basis.iter().enumerate() {
                    if occ[m] == 0 {
                        continue;
                    }
                    let mut lower = occ.clone();
                    lower[m] -= 1;
                    let row = index(&lower).unwrap();
                    a[row][col] = C64::new((occ[m] as f64).sqrt(), 0.0);
                }
                a
            })
            .collect();
        DenseFock { basis, annihilators }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dagger(m: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let n = m.len();
        (0..n).map(|r| (0..n).map(|c| m[c][r].conj()).collect()).collect()
    }

    pub fn matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let n = a.len();
        (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|t| a[r][t] * b[t][c]).sum()).collect())
            .collect()
    }

    pub fn number_op(&self, m: usize) -> Vec<Vec<C64>> {
        Self::matmul(&Self::dagger(&self.annihilators[m]), &self.annihilators[m])
    }

    pub fn vector(&self, s: &FockState) -> Vec<C64> {
        self.basis.iter().map(|occ| s.amplitude(occ)).collect()
    }

    pub fn expectation(op: &[Vec<C64>], v: &[C64]) -> C64 {
        let n = v.len();
        (0..n)
            .map(|r| v[r].conj() * (0..n).map(|c| op[r][c] * v[c]).sum::<C64>())
            .sum()
    }
}

pub fn random_fock_state(ms: &std::sync::Arc<ModeSet>, seed: u64) -> FockState {
    let mut r = rng(seed);
    let amps: Vec<(Vec<u32>, C64)> = ms.basis().into_iter().map(|occ| (occ, crandn(&mut r))).collect();
    FockState::from_amplitudes(ms.clone(), amps)
        .unwrap()
        .normalized()
        .unwrap()
}

pub fn basis_state(ms: &std::sync::Arc<ModeSet>, occ: Vec<u32>) -> FockState {
    FockState::from_amplitudes(ms.clone(), [(occ, C64::new(1.0, 0.0))]).unwrap()
}

pub fn lower(s: &FockState, m: usize) -> FockState {
    annihilate(s, m).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

pub fn helicities() -> [Helicity; 2] {
    [Helicity::Plus, Helicity::Minus]
}
