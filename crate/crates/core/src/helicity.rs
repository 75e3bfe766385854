//! Spin-1 matrices, the block matrix `J`, and the circular helicity basis.
//!
//! For `k` off the z-axis
//!
//! ```text
//! f±(k) = (−kx kz ± i ky|k|, −ky kz ∓ i kx|k|, kx² + ky²) / √(2|k|²(kx² + ky²))
//! ψ±(k) = (f±, ∓i f±)
//! ```
//!
//! The quotient is 0/0 on the axis. There the basis is fixed to the limit
//! along `kx → 0⁺, ky = 0`: `f± = (−1, ∓i, 0)/√2` for `kz > 0` and
//! `f± = (1, ∓i, 0)/√2` for `kz < 0`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::lattice::{Grid3D, SpectralField};
use crate::vec3::{self, CVec3, RVec3, ZERO6};
use crate::{Six, C64};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

/// Below this value of `(kx² + ky²)/|k|²` the on-axis basis is used.
///
/// The switch costs at most `√AXIS_EPS / √2 ≈ 7.1e-13` in transversality.
pub const AXIS_EPS: f64 = 1e-24;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// Spin-1 matrix `S_axis` as a dense 3×3 array, `(S_a)_{bc} = −i ε_{abc}`.
pub fn spin_matrix(axis: usize) -> [[C64; 3]; 3] {
    let z = C64::new(0.0, 0.0);
    match axis {
        0 => [[z, z, z], [z, z, -I], [z, I, z]],
        1 => [[z, z, I], [z, z, z], [-I, z, z]],
        2 => [[z, -I, z], [I, z, z], [z, z, z]],
        _ => panic!("spin axis {axis} out of range"),
    }
}

pub fn mat_vec(m: &[[C64; 3]; 3], v: &CVec3) -> CVec3 {
    core::array::from_fn(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
}

/// `S_axis v` without forming the matrix.
#[inline]
pub fn apply_spin(axis: usize, v: &CVec3) -> CVec3 {
    let e = match axis {
        0 => [1.0, 0.0, 0.0],
        1 => [0.0, 1.0, 0.0],
        _ => [0.0, 0.0, 1.0],
    };
    s_dot(&e, v)
}

/// `(S·a) v = i a × v`.
#[inline]
pub fn s_dot(a: &RVec3, v: &CVec3) -> CVec3 {
    vec3::rcross(a, v).map(|x| x * I)
}

/// `J` acting on a 6-vector: upper ← lower, lower ← −upper.
#[inline]
pub fn apply_j(v: &Six) -> Six {
    [v[3], v[4], v[5], -v[0], -v[1], -v[2]]
}

/// A 3×3 operator applied separately to the upper and lower halves.
#[inline]
pub fn blockwise(v: &Six, op: impl Fn(&CVec3) -> CVec3) -> Six {
    vec3::stack(op(&vec3::upper(v)), op(&vec3::lower(v)))
}

/// The helicity basis evaluated at one wavevector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityVectors {
    pub k: RVec3,
    pub f_plus: CVec3,
    pub f_minus: CVec3,
    pub psi_plus: Six,
    pub psi_minus: Six,
}

impl HelicityVectors {
    pub fn f(&self, h: Helicity) -> &CVec3 {
        match h {
            Helicity::Plus => &self.f_plus,
            Helicity::Minus => &self.f_minus,
        }
    }

    pub fn psi(&self, h: Helicity) -> &Six {
        match h {
            Helicity::Plus => &self.psi_plus,
            Helicity::Minus => &self.psi_minus,
        }
    }
}

/// `ψ± = (f±, ∓i f±)`
pub fn psi_from_f(f: &CVec3, h: Helicity) -> Six {
    let lower = f.map(|x| x * C64::new(0.0, -h.sign()));
    vec3::stack(*f, lower)
}

pub fn transverse_basis(k: RVec3) -> Result<HelicityVectors> {
    let kn = vec3::rnorm(&k);
    if !kn.is_finite() {
        return Err(Error::NonFinite("wavevector"));
    }
    if kn == 0.0 {
        return Err(Error::Domain("helicity basis undefined at k = 0".into()));
    }
    let kperp = k[0].hypot(k[1]);
    let (f_plus, f_minus) = if kperp * kperp < AXIS_EPS * kn * kn {
        let s = if k[2] > 0.0 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
        let r = C64::new(s, 0.0);
        let i = C64::new(0.0, FRAC_1_SQRT_2);
        ([r, -i, C64::new(0.0, 0.0)], [r, i, C64::new(0.0, 0.0)])
    } else {
        // divide each term separately to stay clear of under/overflow
        let denom = FRAC_1_SQRT_2 / (kn * kperp);
        let (kx, ky, kz) = (k[0], k[1], k[2]);
        let third = C64::new(FRAC_1_SQRT_2 * kperp / kn, 0.0);
        let fp = [
            C64::new(-kx * kz, ky * kn) * denom,
            C64::new(-ky * kz, -kx * kn) * denom,
            third,
        ];
        let fm = [
            C64::new(-kx * kz, -ky * kn) * denom,
            C64::new(-ky * kz, kx * kn) * denom,
            third,
        ];
        (fp, fm)
    };
    Ok(HelicityVectors {
        k,
        f_plus,
        f_minus,
        psi_plus: psi_from_f(&f_plus, Helicity::Plus),
        psi_minus: psi_from_f(&f_minus, Helicity::Minus),
    })
}

/// `|(S·k̂) f± ∓ f±|` for `(+, −)`.
pub fn helicity_eigencheck(k: &RVec3, h: &HelicityVectors) -> (f64, f64) {
    let kn = vec3::rnorm(k);
    let khat = k.map(|x| x / kn);
    let res = |f: &CVec3, s: f64| {
        let sf = s_dot(&khat, f);
        vec3::norm(&vec3::sub(&sf, &f.map(|x| x * s)))
    };
    (res(&h.f_plus, 1.0), res(&h.f_minus, -1.0))
}

/// Largest violation among the basis identities at `k`: unit norm,
/// transversality, `(S·k̂)f± = ±f±`, `±if± = −k̂×f±`, `f₊†f₋ = 0`, `ψ±†ψ± = 2`.
pub fn basis_residual(k: &RVec3, h: &HelicityVectors) -> f64 {
    let kn = vec3::rnorm(k);
    let khat = k.map(|x| x / kn);
    let (rp, rm) = helicity_eigencheck(k, h);
    let mut worst = rp.max(rm);
    for (f, s) in [(&h.f_plus, 1.0), (&h.f_minus, -1.0)] {
        worst = worst.max((vec3::norm(f) - 1.0).abs());
        worst = worst.max(vec3::rdot(&khat, f).norm());
        let lhs = f.map(|x| x * C64::new(0.0, s));
        let rhs = vec3::rcross(&khat, f).map(|x| -x);
        worst = worst.max(vec3::norm(&vec3::sub(&lhs, &rhs)));
    }
    worst = worst.max(vec3::cdot(&h.f_plus, &h.f_minus).norm());
    worst = worst.max((vec3::norm_sqr(&h.psi_plus) - 2.0).abs());
    worst.max((vec3::norm_sqr(&h.psi_minus) - 2.0).abs())
}

/// Helicity coefficients `c±(k)` on a grid. The DC entries are always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    grid: Grid3D,
    c_plus: Vec<C64>,
    c_minus: Vec<C64>,
    time: f64,
}

impl SpectralCoefficients {
    /// Validates shape and finiteness; a nonzero DC entry is zeroed.
    pub fn new(grid: Grid3D, mut c_plus: Vec<C64>, mut c_minus: Vec<C64>, time: f64) -> Result<Self> {
        for v in [&c_plus, &c_minus] {
            if v.len() != grid.len() {
                return Err(Error::Shape {
                    expected: grid.len(),
                    found: v.len(),
                });
            }
            if !vec3::is_finite(v) {
                return Err(Error::NonFinite("helicity coefficients"));
            }
        }
        if !time.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        let dc = grid.dc_index();
        c_plus[dc] = C64::new(0.0, 0.0);
        c_minus[dc] = C64::new(0.0, 0.0);
        Ok(SpectralCoefficients {
            grid,
            c_plus,
            c_minus,
            time,
        })
    }

    pub fn zeros(grid: Grid3D, time: f64) -> Self {
        let n = grid.len();
        SpectralCoefficients {
            grid,
            c_plus: vec![C64::new(0.0, 0.0); n],
            c_minus: vec![C64::new(0.0, 0.0); n],
            time,
        }
    }

    /// Fill from a closure `(k) -> (c₊, c₋)`; the closure is not called at DC.
    pub fn from_fn(grid: Grid3D, time: f64, mut f: impl FnMut(RVec3) -> (C64, C64)) -> Result<Self> {
        let n = grid.len();
        let mut cp = vec![C64::new(0.0, 0.0); n];
        let mut cm = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            if i == grid.dc_index() {
                continue;
            }
            let (a, b) = f(grid.wavevector(i));
            cp[i] = a;
            cm[i] = b;
        }
        Self::new(grid, cp, cm, time)
    }

    pub fn grid(&self) -> &Grid3D {
        &self.grid
    }
    pub fn c_plus(&self) -> &[C64] {
        &self.c_plus
    }
    pub fn c_minus(&self) -> &[C64] {
        &self.c_minus
    }
    pub fn coeff(&self, h: Helicity) -> &[C64] {
        match h {
            Helicity::Plus => &self.c_plus,
            Helicity::Minus => &self.c_minus,
        }
    }
    pub fn time(&self) -> f64 {
        self.time
    }

    /// `Σ (|c₊|² + |c₋|²) Δ³k`
    pub fn total_norm_sqr(&self) -> f64 {
        let s: f64 = self
            .c_plus
            .iter()
            .zip(&self.c_minus)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .sum();
        s * self.grid.k_cell_volume()
    }

    /// Multiply every coefficient by a per-k factor.
    pub fn map_k(&self, mut f: impl FnMut(usize, RVec3) -> C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.grid.len() {
            if i == self.grid.dc_index() {
                continue;
            }
            let s = f(i, self.grid.wavevector(i));
            out.c_plus[i] *= s;
            out.c_minus[i] *= s;
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Self {
        self.map_k(|_, _| s)
    }

    pub(crate) fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }
}

/// Basis vectors for every non-DC grid point (`None` at DC).
pub fn basis_table(grid: &Grid3D) -> Vec<Option<HelicityVectors>> {
    (0..grid.len())
        .map(|i| {
            if i == grid.dc_index() {
                None
            } else {
                transverse_basis(grid.wavevector(i)).ok()
            }
        })
        .collect()
}

/// Project onto helicity coefficients, `c± = ψ±†Φ / 2`, returning also the
/// largest leftover `|Φ − c₊ψ₊ − c₋ψ₋|`. The DC sample is dropped.
pub fn project(g: &SpectralField) -> (SpectralCoefficients, f64) {
    let grid = g.grid().clone();
    let n = grid.len();
    let mut cp = vec![C64::new(0.0, 0.0); n];
    let mut cm = vec![C64::new(0.0, 0.0); n];
    let mut residual = 0.0f64;
    for (i, b) in basis_table(&grid).into_iter().enumerate() {
        let Some(b) = b else { continue };
        let phi = &g.values()[i];
        let a = vec3::cdot(&b.psi_plus, phi) * 0.5;
        let m = vec3::cdot(&b.psi_minus, phi) * 0.5;
        let rebuilt = vec3::add(&vec3::scale(a, &b.psi_plus), &vec3::scale(m, &b.psi_minus));
        residual = residual.max(vec3::norm(&vec3::sub(phi, &rebuilt)));
        cp[i] = a;
        cm[i] = m;
    }
    let coeffs = SpectralCoefficients {
        grid,
        c_plus: cp,
        c_minus: cm,
        time: g.time(),
    };
    (coeffs, residual)
}

/// `Φ(k) = c₊ψ₊(k) + c₋ψ₋(k)`
pub fn synthesize(coeffs: &SpectralCoefficients) -> SpectralField {
    let grid = coeffs.grid().clone();
    let mut values = vec![ZERO6; grid.len()];
    for (i, b) in basis_table(&grid).into_iter().enumerate() {
        let Some(b) = b else { continue };
        values[i] = vec3::add(
            &vec3::scale(coeffs.c_plus[i], &b.psi_plus),
            &vec3::scale(coeffs.c_minus[i], &b.psi_minus),
        );
    }
    SpectralField::from_parts(grid, values, coeffs.time())
}
