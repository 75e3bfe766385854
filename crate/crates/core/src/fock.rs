//! Truncated bosonic Fock space over a declared set of `(k, helicity)` modes.
//!
//! States are sparse maps from occupation vectors to amplitudes. Operators
//! act branch by branch; a creation that would exceed `max_occupation`
//! drops the branch and adds its weight to the state's truncation loss.
//!
//! The coarse-grained counters use box-normalized mode functions
//! `φ_m(r, t) = ψ_m e^{i(k·r − ωt)} / √(2V)`, so `∫_box φ_m†φ_m' = δ_mm'` for
//! distinct on-grid modes, and evaluate
//!
//! ```text
//! ⟨N_V⟩ = Σ_{m,m'} ⟨a_m† a_m'⟩ ∫_V φ_m†φ_m' dr                    (t = 0)
//! ⟨N_Σ⟩ = Σ_{m,m'} ⟨a_m† a_m'⟩ ∫_{t1}^{t2} dt ∫_Σ dA n̂·φ_m†(icSJ)φ_m'
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::helicity::{apply_j, apply_spin, blockwise, transverse_basis, Helicity};
use crate::lattice::{Grid3D, PhysicalConstants};
use crate::vec3::{self, RVec3};
use crate::{Six, C64};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: RVec3,
    pub helicity: Helicity,
}

impl Mode {
    pub fn new(k: RVec3, helicity: Helicity) -> Self {
        Mode { k, helicity }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    modes: Vec<Mode>,
    max_occupation: u32,
}

impl ModeSet {
    pub fn new(modes: Vec<Mode>, max_occupation: u32) -> Result<Self> {
        if max_occupation < 1 {
            return Err(Error::Config("max_occupation must be >= 1".into()));
        }
        for (i, m) in modes.iter().enumerate() {
            let kn = vec3::rnorm(&m.k);
            if !kn.is_finite() || kn == 0.0 {
                return Err(Error::Config(format!("mode {i}: |k| must be finite and > 0")));
            }
            if modes[..i].iter().any(|o| o == m) {
                return Err(Error::Config(format!(
                    "mode {i} duplicates an earlier (k, helicity) pair"
                )));
            }
        }
        Ok(ModeSet { modes, max_occupation })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }
    pub fn max_occupation(&self) -> u32 {
        self.max_occupation
    }

    pub fn mode(&self, index: usize) -> Result<&Mode> {
        self.modes.get(index).ok_or(Error::InvalidMode {
            index,
            len: self.modes.len(),
        })
    }

    /// Every occupation vector of the truncated space, in lexicographic order.
    pub fn basis(&self) -> Vec<Occupation> {
        let m = self.len();
        let base = self.max_occupation + 1;
        let total = (base as usize).pow(m as u32);
        (0..total)
            .map(|mut idx| {
                let mut occ = vec![0u32; m];
                for slot in occ.iter_mut().rev() {
                    *slot = (idx % base as usize) as u32;
                    idx /= base as usize;
                }
                occ
            })
            .collect()
    }
}

/// One occupation number per mode.
pub type Occupation = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    modeset: Arc<ModeSet>,
    amplitudes: BTreeMap<Occupation, C64>,
    truncation_loss: f64,
}

impl FockState {
    pub fn vacuum(modeset: Arc<ModeSet>) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(vec![0; modeset.len()], C64::new(1.0, 0.0));
        FockState {
            modeset,
            amplitudes,
            truncation_loss: 0.0,
        }
    }

    pub fn zero(modeset: Arc<ModeSet>) -> Self {
        FockState {
            modeset,
            amplitudes: BTreeMap::new(),
            truncation_loss: 0.0,
        }
    }

    pub fn from_amplitudes(modeset: Arc<ModeSet>, amps: impl IntoIterator<Item = (Occupation, C64)>) -> Result<Self> {
        let mut out = Self::zero(modeset);
        for (occ, a) in amps {
            if occ.len() != out.modeset.len() {
                return Err(Error::Shape {
                    expected: out.modeset.len(),
                    found: occ.len(),
                });
            }
            if occ.iter().any(|&n| n > out.modeset.max_occupation) {
                return Err(Error::Config(format!(
                    "occupation {occ:?} exceeds max_occupation {}",
                    out.modeset.max_occupation
                )));
            }
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::NonFinite("Fock amplitude"));
            }
            *out.amplitudes.entry(occ).or_insert(C64::new(0.0, 0.0)) += a;
        }
        out.prune();
        Ok(out)
    }

    pub fn modeset(&self) -> &Arc<ModeSet> {
        &self.modeset
    }
    pub fn amplitudes(&self) -> &BTreeMap<Occupation, C64> {
        &self.amplitudes
    }
    pub fn amplitude(&self, occ: &[u32]) -> C64 {
        self.amplitudes.get(occ).copied().unwrap_or(C64::new(0.0, 0.0))
    }
    /// Weight dropped by creations past `max_occupation`, accumulated over the state's history.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// True for the zero vector, e.g. `a|0⟩`.
    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero state".into()));
        }
        Ok(self.scaled(C64::new(n.sqrt().recip(), 0.0)))
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        out.amplitudes.values_mut().for_each(|a| *a *= s);
        out.prune();
        out
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &FockState) -> C64 {
        self.amplitudes
            .iter()
            .map(|(occ, a)| a.conj() * other.amplitude(occ))
            .sum()
    }

    /// `self + other`; both must share a mode set.
    pub fn plus(&self, other: &FockState) -> Self {
        let mut out = self.clone();
        for (occ, a) in &other.amplitudes {
            *out.amplitudes.entry(occ.clone()).or_insert(C64::new(0.0, 0.0)) += a;
        }
        out.truncation_loss += other.truncation_loss;
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm_sqr() != 0.0);
    }
}

/// `a†_mode`, amplitude `√(n+1)`.
pub fn create(state: &FockState, mode: usize) -> Result<FockState> {
    state.modeset.mode(mode)?;
    let cap = state.modeset.max_occupation;
    let mut out = FockState::zero(state.modeset.clone());
    out.truncation_loss = state.truncation_loss;
    for (occ, a) in &state.amplitudes {
        let n = occ[mode];
        let w = ((n + 1) as f64).sqrt();
        if n >= cap {
            out.truncation_loss += a.norm_sqr() * w * w;
            continue;
        }
        let mut next = occ.clone();
        next[mode] += 1;
        out.amplitudes.insert(next, a * w);
    }
    Ok(out)
}

/// `a_mode`, amplitude `√n`; branches with `n = 0` vanish.
pub fn annihilate(state: &FockState, mode: usize) -> Result<FockState> {
    state.modeset.mode(mode)?;
    let mut out = FockState::zero(state.modeset.clone());
    out.truncation_loss = state.truncation_loss;
    for (occ, a) in &state.amplitudes {
        let n = occ[mode];
        if n == 0 {
            continue;
        }
        let mut next = occ.clone();
        next[mode] -= 1;
        out.amplitudes.insert(next, a * (n as f64).sqrt());
    }
    Ok(out)
}

/// `⟨a†a⟩` for one mode.
pub fn number_expectation(state: &FockState, mode: usize) -> Result<f64> {
    state.modeset.mode(mode)?;
    Ok(state
        .amplitudes
        .iter()
        .map(|(occ, a)| a.norm_sqr() * occ[mode] as f64)
        .sum())
}

/// `⟨Σ ħc|k| a†a⟩`. No zero-point term: the vacuum gives exactly zero.
pub fn hamiltonian_expectation(state: &FockState, consts: &PhysicalConstants) -> f64 {
    let energies: Vec<f64> = state.modeset.modes.iter().map(|m| consts.photon_energy(&m.k)).collect();
    state
        .amplitudes
        .iter()
        .map(|(occ, a)| {
            let e: f64 = occ.iter().zip(&energies).map(|(&n, e)| n as f64 * e).sum();
            a.norm_sqr() * e
        })
        .sum()
}

/// `ρ[m][m'] = ⟨a_m† a_m'⟩`
pub fn one_body_matrix(state: &FockState) -> Vec<Vec<C64>> {
    let lowered: Vec<FockState> = (0..state.modeset.len())
        .map(|m| annihilate(state, m).expect("index in range"))
        .collect();
    lowered
        .iter()
        .map(|am| lowered.iter().map(|an| am.inner(an)).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionSpec {
    /// Grid cells `lo[a] <= i[a] < hi[a]` on every axis.
    Volume { lo: [usize; 3], hi: [usize; 3] },
    /// The grid plane `i[axis] = index`, normal `+axis`, integrated over `[t1, t2]`.
    Surface {
        axis: usize,
        index: usize,
        t1: f64,
        t2: f64,
    },
}

struct ModeFn {
    k: RVec3,
    omega: f64,
    psi: Six,
}

fn mode_functions(state: &FockState, grid: &Grid3D, consts: &PhysicalConstants) -> Result<Vec<ModeFn>> {
    state
        .modeset
        .modes
        .iter()
        .enumerate()
        .map(|(i, m)| {
            if grid.index_of_wavevector(&m.k).is_none() {
                return Err(Error::Domain(format!(
                    "mode {i} wavevector {:?} is not on the grid",
                    m.k
                )));
            }
            let b = transverse_basis(m.k)?;
            Ok(ModeFn {
                k: m.k,
                omega: consts.omega(&m.k),
                psi: *b.psi(m.helicity),
            })
        })
        .collect()
}

/// `Σ_{i=lo}^{hi-1} e^{iq x_i} dr` along one axis.
fn axis_sum(grid: &Grid3D, axis: usize, lo: usize, hi: usize, q: f64) -> C64 {
    let x0 = grid.origin()[axis];
    let dr = grid.spacing()[axis];
    (lo..hi).map(|i| C64::from_polar(dr, q * (x0 + i as f64 * dr))).sum()
}

/// `⟨N_V⟩` at `t = 0`.
pub fn coarse_number_in_volume(state: &FockState, region: &RegionSpec, grid: &Grid3D) -> Result<f64> {
    let RegionSpec::Volume { lo, hi } = *region else {
        return Err(Error::Region("expected a volume region".into()));
    };
    let n = grid.dims();
    for a in 0..3 {
        if lo[a] >= hi[a] || hi[a] > n[a] {
            return Err(Error::Region(format!(
                "axis {a}: need lo < hi <= {} (got {}..{})",
                n[a], lo[a], hi[a]
            )));
        }
    }
    // ω only enters through time phases, which vanish at t = 0
    let fns = mode_functions(state, grid, &PhysicalConstants::natural())?;
    let rho = one_body_matrix(state);
    let norm = 2.0 * grid.box_volume();
    let mut total = C64::new(0.0, 0.0);
    for (m, fm) in fns.iter().enumerate() {
        for (mp, fmp) in fns.iter().enumerate() {
            if rho[m][mp] == C64::new(0.0, 0.0) {
                continue;
            }
            let spin = vec3::cdot(&fm.psi, &fmp.psi);
            let mut overlap = C64::new(1.0, 0.0);
            for a in 0..3 {
                overlap *= axis_sum(grid, a, lo[a], hi[a], fmp.k[a] - fm.k[a]);
            }
            total += rho[m][mp] * spin * overlap / norm;
        }
    }
    Ok(total.re)
}

/// `∫ e^{-iΔω t} dt` over `[t1, t2]`.
fn time_integral(d_omega: f64, t1: f64, t2: f64) -> C64 {
    if d_omega.abs() * (t2 - t1).max(t1.abs()).max(t2.abs()) < 1e-12 {
        return C64::new(t2 - t1, 0.0);
    }
    let e = |t: f64| C64::from_polar(1.0, -d_omega * t);
    (e(t2) - e(t1)) / C64::new(0.0, -d_omega)
}

/// `⟨N_Σ⟩` through an axis-aligned grid plane.
pub fn coarse_flux_through_surface(
    state: &FockState,
    region: &RegionSpec,
    grid: &Grid3D,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let RegionSpec::Surface { axis, index, t1, t2 } = *region else {
        return Err(Error::Region("expected a surface region".into()));
    };
    if axis > 2 || index >= grid.dims()[axis] {
        return Err(Error::Region(format!(
            "plane axis {axis} index {index} outside the grid"
        )));
    }
    if !(t1.is_finite() && t2.is_finite()) || t2 < t1 {
        return Err(Error::Region(format!("time window needs t2 >= t1 (got {t1}..{t2})")));
    }
    if t2 == t1 {
        return Ok(0.0);
    }
    let fns = mode_functions(state, grid, consts)?;
    let rho = one_body_matrix(state);
    let norm = 2.0 * grid.box_volume();
    let n = grid.dims();
    let mut total = C64::new(0.0, 0.0);
    for (m, fm) in fns.iter().enumerate() {
        for (mp, fmp) in fns.iter().enumerate() {
            if rho[m][mp] == C64::new(0.0, 0.0) {
                continue;
            }
            // n̂·(icψ_m†S(Jψ_m'))
            let sj = blockwise(&apply_j(&fmp.psi), |w| apply_spin(axis, w));
            let current = vec3::cdot(&fm.psi, &sj) * C64::new(0.0, consts.c());
            let mut area = C64::new(1.0, 0.0);
            for a in 0..3 {
                let q = fmp.k[a] - fm.k[a];
                area *= if a == axis {
                    let x = grid.origin()[a] + index as f64 * grid.spacing()[a];
                    C64::from_polar(1.0, q * x)
                } else {
                    axis_sum(grid, a, 0, n[a], q)
                };
            }
            let time = time_integral(fmp.omega - fm.omega, t1, t2);
            total += rho[m][mp] * current * area * time / norm;
        }
    }
    Ok(total.re)
}

/// Expectation densities of a Fock state on the grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensities {
    pub grid: Grid3D,
    pub time: f64,
    /// photon number density, `Σ ρ_mm' φ_m†φ_m'`
    pub rho: Vec<f64>,
    /// energy density, as `rho` with each mode weighted by `√(ħω)`
    pub u: Vec<f64>,
    /// energy flux, `Σ ρ_mm' √(ħω_m ħω_m') φ_m†(icSJ)φ_m'`
    pub j: Vec<RVec3>,
}

impl FockDensities {
    pub fn total_number(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn total_energy(&self) -> f64 {
        self.u.iter().sum::<f64>() * self.grid.cell_volume()
    }
}

pub fn expected_densities(
    state: &FockState,
    grid: &Grid3D,
    consts: &PhysicalConstants,
    t: f64,
) -> Result<FockDensities> {
    let fns = mode_functions(state, grid, consts)?;
    let rho_m = one_body_matrix(state);
    let inv_norm = 1.0 / (2.0 * grid.box_volume());
    let weights: Vec<f64> = fns.iter().map(|f| (consts.hbar() * f.omega).sqrt()).collect();
    // per pair: spin overlap and current, both constant in space
    let mut pairs = Vec::new();
    for (m, fm) in fns.iter().enumerate() {
        for (mp, fmp) in fns.iter().enumerate() {
            let r = rho_m[m][mp];
            if r == C64::new(0.0, 0.0) {
                continue;
            }
            let sj = apply_j(&fmp.psi);
            let current: [C64; 3] = core::array::from_fn(|a| {
                vec3::cdot(&fm.psi, &blockwise(&sj, |w| apply_spin(a, w))) * C64::new(0.0, consts.c())
            });
            pairs.push((m, mp, r * inv_norm, vec3::cdot(&fm.psi, &fmp.psi), current));
        }
    }
    let n = grid.len();
    let mut rho = vec![0.0; n];
    let mut u = vec![0.0; n];
    let mut j = vec![[0.0; 3]; n];
    for i in 0..n {
        let x = grid.position(i);
        for &(m, mp, r, overlap, current) in &pairs {
            let (fm, fmp) = (&fns[m], &fns[mp]);
            let dk: f64 = (0..3).map(|a| (fmp.k[a] - fm.k[a]) * x[a]).sum();
            let phase = C64::from_polar(1.0, dk - (fmp.omega - fm.omega) * t) * r;
            let w = weights[m] * weights[mp];
            rho[i] += (phase * overlap).re;
            u[i] += w * (phase * overlap).re;
            for a in 0..3 {
                j[i][a] += w * (phase * current[a]).re;
            }
        }
    }
    Ok(FockDensities {
        grid: grid.clone(),
        time: t,
        rho,
        u,
        j,
    })
}
