//! Photon wavefunctions built from propagating, generally complex,
//! electromagnetic fields sampled on a periodic spectral grid.
//!
//! The crate is `no_std` with `alloc`. Everything here is a pure function of
//! its inputs; IO, configuration and file formats live in the companion CLI
//! crate.
//!
//! Module map:
//!
//! * [`lattice`]: physical constants, the 3D grid, field containers and the
//!   discrete Fourier pair with continuum normalization.
//! * [`helicity`]: spin-1 matrices, the block matrix `J`, and the circular
//!   helicity basis `f±(k)`, `ψ±(k)`.
//! * [`maxwell`]: exact spectral evolution, the Hamiltonian action, energy
//!   density, Poynting flux and conservation diagnostics.
//! * [`photon`]: scaling of a classical field into a normalized single-photon
//!   wavefunction and the observables built on it.
//! * [`fock`]: truncated bosonic Fock space over declared `(k, helicity)`
//!   modes and the coarse-grained number/flux counters.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fft;
pub mod fock;
pub mod helicity;
pub mod lattice;
pub mod maxwell;
pub mod photon;
pub mod vec3;

pub use error::{Error, Result};
pub use lattice::{FieldState, Grid3D, PhysicalConstants, SpectralField};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Complex 6-vector `(√ε₀E, √μ₀H)`: upper three entries electric, lower three magnetic.
pub type Six = [C64; 6];
