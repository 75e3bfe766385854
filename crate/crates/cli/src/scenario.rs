//! Builds the configured field or Fock state and measures everything the
//! report and CSV files need.

use std::sync::Arc;

use photonwave_core::fock::{
    annihilate, coarse_flux_through_surface, coarse_number_in_volume, create, expected_densities,
    hamiltonian_expectation, number_expectation, FockState, Mode, ModeSet, RegionSpec,
};
use photonwave_core::helicity::{
    basis_residual, project, synthesize, transverse_basis, Helicity, SpectralCoefficients,
};
use photonwave_core::lattice::{to_spatial, to_spectral};
use photonwave_core::maxwell::{
    apply_hamiltonian, box_crossing_time, continuity_residual, evolve, field_at, observables, transversality_residual,
};
use photonwave_core::photon::{
    density_comparison, photon_number_spectrum, probability_current_consistency, scale_to_photon, synthesize_position,
    PhotonWarning, PhotonWavefunction,
};
use photonwave_core::vec3::{self, RVec3};
use photonwave_core::{FieldState, Grid3D, PhysicalConstants, SpectralField, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::{Config, FockParams, Params};
use crate::error::RunError;
use crate::report::{Bound, Report};

/// Probe step for continuity checks, in box-crossing times.
pub const CONTINUITY_DT: f64 = 1e-3;

const TOL_ROUNDTRIP: f64 = 1e-12;
const TOL_PARSEVAL: f64 = 1e-10;
const TOL_EXACT: f64 = 1e-12;
const TOL_NORM: f64 = 1e-10;
const TOL_CONTINUITY: f64 = 1e-6;
const TOL_SINGLE_PHOTON: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub k_index: usize,
    pub k: RVec3,
    pub abs_c_plus: f64,
    pub abs_c_minus: f64,
    pub energy_density: f64,
    pub photon_density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub index: [usize; 3],
    pub r: RVec3,
    pub rho: f64,
    pub u: f64,
    pub j: RVec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub r: RVec3,
    pub rho_photon: f64,
    pub u_over_hbar_omega_bar: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub spectrum: Vec<SpectrumRow>,
    pub density: Vec<DensityRow>,
    pub comparison: Option<Vec<ComparisonRow>>,
}

pub fn run(cfg: &Config) -> Result<Outcome, RunError> {
    let mut report = Report::default();
    header(cfg, &mut report);
    let grid = &cfg.grid;
    let consts = &cfg.constants;
    let outcome = match &cfg.params {
        Params::Monochromatic(m) => {
            let co = scaled_to_energy(
                SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
                    if m.k.iter().any(|q| grid_eq(q, &k, grid)) {
                        m.mix
                    } else {
                        (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
                    }
                })?,
                m.energy,
            )?;
            let e_photon = consts.photon_energy(&m.k[0]);
            let mut out = classical(cfg, &co, report)?;
            let r = &mut out.report;
            let n = r.get("photon_number").unwrap_or(f64::NAN);
            r.value("expected_photon_number", m.energy / e_photon);
            r.check(
                "photon_number_vs_energy_over_hbar_omega",
                (n - m.energy / e_photon).abs(),
                Bound::AtMost(TOL_SINGLE_PHOTON),
            );
            let dev = r.get("comparison_max_relative_deviation").unwrap_or(f64::NAN);
            r.check("monochromatic_density_deviation", dev, Bound::AtMost(TOL_NORM));
            out
        }
        Params::GaussianPulse(p) => {
            let sigma = p.bandwidth * vec3::rnorm(&p.k_center);
            let co = SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
                let d2: f64 = (0..3).map(|a| (k[a] - p.k_center[a]).powi(2)).sum();
                let g = (-d2 / (2.0 * sigma * sigma)).exp();
                (p.mix.0 * g, p.mix.1 * g)
            })?;
            let co = scaled_to_energy(co, p.energy)?;
            classical(cfg, &co, report)?
        }
        Params::Bichromatic(lines) => {
            let dk3 = grid.k_cell_volume();
            let co = SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
                let mut c = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                for l in lines {
                    if grid_eq(&l.k, &k, grid) {
                        let a = C64::new((l.energy / (2.0 * dk3)).sqrt(), 0.0);
                        match l.helicity {
                            Helicity::Plus => c.0 += a,
                            Helicity::Minus => c.1 += a,
                        }
                    }
                }
                c
            })?;
            let expected: f64 = lines.iter().map(|l| l.energy / consts.photon_energy(&l.k)).sum();
            let mut out = classical(cfg, &co, report)?;
            let r = &mut out.report;
            let n = r.get("photon_number").unwrap_or(f64::NAN);
            r.value("expected_photon_number", expected);
            r.check(
                "photon_number_vs_sum_energy_over_hbar_omega",
                (n - expected).abs(),
                Bound::AtMost(TOL_NORM),
            );
            let dev = r.get("comparison_max_relative_deviation").unwrap_or(f64::NAN);
            r.check("bichromatic_density_deviation", dev, Bound::AtLeast(0.1));
            out
        }
        Params::Fock(f) => fock(cfg, f, report)?,
        Params::InvariantSuite => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let co = random_coeffs(grid, &mut rng)?;
            let mut out = classical(cfg, &co, report)?;
            suite(cfg, &mut rng, &mut out.report)?;
            out
        }
    };
    Ok(outcome)
}

fn header(cfg: &Config, r: &mut Report) {
    let g = &cfg.grid;
    let n = g.dims();
    r.header("scenario", cfg.scenario.name());
    r.header("seed", format!("{} (ChaCha8Rng::seed_from_u64)", cfg.seed));
    r.header("grid", format!("{} x {} x {}", n[0], n[1], n[2]));
    r.header("dr", format!("{:?}", g.spacing()));
    r.header("origin", format!("{:?}", g.origin()));
    r.header("dk", format!("{:?}", g.dk()));
    r.header("constants", cfg.constants_label.clone());
    r.header("sample.t", format!("{:?}", cfg.sample_t));
    r.header("crossing_time", format!("{:?}", box_crossing_time(g, &cfg.constants)));
}

fn grid_eq(a: &RVec3, b: &RVec3, grid: &Grid3D) -> bool {
    let dk = grid.dk();
    (0..3).all(|i| (a[i] - b[i]).abs() <= 1e-9 * dk[i])
}

/// `E = Σ |Φ|² Δ³k`, with `|Φ|² = 2(|c₊|² + |c₋|²)`.
fn spectral_energy(co: &SpectralCoefficients) -> f64 {
    let s: f64 = co.c_plus().iter().chain(co.c_minus()).map(|c| c.norm_sqr()).sum();
    2.0 * s * co.grid().k_cell_volume()
}

fn scaled_to_energy(co: SpectralCoefficients, energy: f64) -> Result<SpectralCoefficients, RunError> {
    let e0 = spectral_energy(&co);
    if e0.is_nan() || e0 <= 0.0 {
        return Err(photonwave_core::Error::Domain("configured field has no energy on this grid".into()).into());
    }
    Ok(co.scaled(C64::new((energy / e0).sqrt(), 0.0)))
}

/// Gaussian coefficients in the inner half of the band on every axis.
fn random_coeffs(grid: &Grid3D, rng: &mut ChaCha8Rng) -> Result<SpectralCoefficients, RunError> {
    let dk = grid.dk();
    let n = grid.dims();
    let mut normal = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    Ok(SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
        let a = normal();
        let b = normal();
        if (0..3).all(|i| k[i].abs() < dk[i] * (n[i] / 4).max(1) as f64) {
            (a, b)
        } else {
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        }
    })?)
}

fn max_diff(a: &[photonwave_core::Six], b: &[photonwave_core::Six]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| vec3::norm(&vec3::sub(x, y)))
        .fold(0.0, f64::max)
}

fn flux_bound_excess(f: &FieldState, consts: &PhysicalConstants) -> f64 {
    let obs = observables(f, consts);
    let umax = obs.u.iter().cloned().fold(0.0, f64::max);
    if umax == 0.0 {
        return 0.0;
    }
    let worst = obs
        .u
        .iter()
        .zip(&obs.j)
        .map(|(u, j)| vec3::rnorm(j) - consts.c() * u)
        .fold(f64::NEG_INFINITY, f64::max);
    worst.max(0.0) / (consts.c() * umax)
}

/// Analysis shared by every classical-field scenario.
fn classical(cfg: &Config, co: &SpectralCoefficients, mut r: Report) -> Result<Outcome, RunError> {
    let grid = &cfg.grid;
    let consts = &cfg.constants;
    let t_cross = box_crossing_time(grid, consts);

    let g = synthesize(co);
    let f = to_spatial(&g)?;
    let obs = observables(&f, consts);
    let e_spec = g.total_norm_sqr();
    let e_pos = obs.total_energy();
    r.value("energy_spectral", e_spec);
    r.value("energy_position", e_pos);

    let back = to_spectral(&f)?;
    r.check(
        "fourier_round_trip",
        max_diff(back.values(), g.values()) / g.max_norm(),
        Bound::AtMost(TOL_ROUNDTRIP),
    );
    r.check(
        "parseval_relative",
        (e_pos - e_spec).abs() / e_spec,
        Bound::AtMost(TOL_PARSEVAL),
    );
    r.check("transversality", transversality_residual(&g), Bound::AtMost(TOL_EXACT));

    let later = observables(&field_at(&evolve(co, t_cross, consts))?, consts).total_energy();
    r.value("energy_after_one_crossing", later);
    r.check(
        "energy_conservation_relative",
        (later - e_pos).abs() / e_pos,
        Bound::AtMost(TOL_NORM),
    );
    r.check("flux_imaginary_part", obs.j_imag_ratio, Bound::AtMost(TOL_EXACT));
    r.check(
        "flux_bound_excess",
        flux_bound_excess(&f, consts),
        Bound::AtMost(TOL_EXACT),
    );

    let dt = CONTINUITY_DT * t_cross;
    let c1 = continuity_residual(co, dt, consts)?;
    let c2 = continuity_residual(co, 0.5 * dt, consts)?;
    r.value("continuity_residual", c1);
    r.value("continuity_residual_half_step", c2);
    r.value("continuity_convergence_factor", c1 / c2);

    let p = scale_to_photon(&g, consts)?;
    if let Some(PhotonWarning::NonForwardContent(x)) = p.warning() {
        r.note(format!(
            "photon: field has non-forward content, relative projection residual {x:e}"
        ));
    }
    r.value("photon_number", p.photon_number());
    let spectrum = photon_number_spectrum(&g, consts);
    r.value("photon_number_spectral_sum", spectrum.total);
    r.value("mean_photon_energy", e_spec / p.photon_number());
    for (name, t) in [
        ("photon_norm_t0", 0.0),
        ("photon_norm_t1", t_cross / 3.0),
        ("photon_norm_t2", 2.0 * t_cross / 3.0),
    ] {
        let (d, _) = synthesize_position(&p, t)?;
        r.check(name, (d.total() - 1.0).abs(), Bound::AtMost(TOL_NORM));
    }
    r.check(
        "current_forms_agree",
        probability_current_consistency(&p, 0.0)?,
        Bound::AtMost(TOL_EXACT),
    );
    let pc = p.coefficients_at(0.0);
    let pc1 = continuity_residual(&pc, dt, consts)?;
    let pc2 = continuity_residual(&pc, 0.5 * dt, consts)?;
    r.value("photon_continuity_residual", pc1);
    r.value("photon_continuity_convergence_factor", pc1 / pc2);

    // samples at the configured time
    let t = cfg.sample_t;
    let co_t = evolve(co, t, consts);
    let obs_t = observables(&field_at(&co_t)?, consts);
    let (dens_t, _) = synthesize_position(&p, t)?;
    let n_ph = p.photon_number();
    let density = (0..grid.len())
        .map(|i| DensityRow {
            index: grid.unflat(i),
            r: grid.position(i),
            rho: n_ph * dens_t.rho[i],
            u: obs_t.u[i],
            j: obs_t.j[i],
        })
        .collect();

    let spectrum_rows = (0..grid.len())
        .map(|i| SpectrumRow {
            k_index: i,
            k: grid.wavevector(i),
            abs_c_plus: co.c_plus()[i].norm(),
            abs_c_minus: co.c_minus()[i].norm(),
            energy_density: vec3::norm_sqr(&g.values()[i]),
            photon_density: spectrum.n[i],
        })
        .collect();

    let cmp = density_comparison(&synthesize(&co_t), consts)?;
    r.value("omega_bar", cmp.omega_bar);
    r.value("comparison_max_relative_deviation", cmp.max_ratio_deviation);
    r.value("comparison_monochromatic", if cmp.monochromatic { 1.0 } else { 0.0 });
    r.check(
        "spectral_number_energy_identity",
        cmp.spectral_ratio_deviation,
        Bound::AtMost(TOL_EXACT),
    );
    let comparison = (0..grid.len())
        .map(|i| ComparisonRow {
            r: grid.position(i),
            rho_photon: cmp.rho_photon[i],
            u_over_hbar_omega_bar: cmp.u_over_hbar_omega_bar[i],
            relative_deviation: cmp.relative_deviation[i],
        })
        .collect();

    Ok(Outcome {
        report: r,
        spectrum: spectrum_rows,
        density,
        comparison: Some(comparison),
    })
}

fn fock(cfg: &Config, fp: &FockParams, mut r: Report) -> Result<Outcome, RunError> {
    let grid = &cfg.grid;
    let consts = &cfg.constants;
    let modes = fp.modes.iter().map(|&(k, h)| Mode::new(k, h)).collect();
    let ms = Arc::new(ModeSet::new(modes, fp.max_occupation)?);

    let vacuum = FockState::vacuum(ms.clone());
    r.check(
        "vacuum_energy",
        hamiltonian_expectation(&vacuum, consts).abs(),
        Bound::AtMost(0.0),
    );

    let mut raw = vacuum;
    for &m in &fp.preparation {
        raw = create(&raw, m)?;
    }
    r.value("truncation_loss", raw.truncation_loss());
    r.value("prepared_norm_sqr", raw.norm_sqr());
    let state = raw.normalized()?;

    let mut total = 0.0;
    let mut expected_h = 0.0;
    let occupations: Vec<f64> = (0..ms.len())
        .map(|m| number_expectation(&state, m))
        .collect::<Result<_, _>>()?;
    for (m, n) in occupations.iter().enumerate() {
        r.value(&format!("occupation_mode_{m}"), *n);
        total += n;
        expected_h += n * consts.photon_energy(&ms.modes()[m].k);
    }
    r.value("photon_number", total);
    let h = hamiltonian_expectation(&state, consts);
    r.value("energy", h);
    r.check(
        "energy_vs_sum_hbar_omega_n",
        (h - expected_h).abs() / expected_h.max(f64::MIN_POSITIVE),
        Bound::AtMost(TOL_EXACT),
    );

    let n = grid.dims();
    let whole = RegionSpec::Volume { lo: [0; 3], hi: n };
    let nv_whole = coarse_number_in_volume(&state, &whole, grid)?;
    r.value("number_in_whole_box", nv_whole);
    r.check(
        "whole_box_count_vs_occupation",
        (nv_whole - total).abs(),
        Bound::AtMost(TOL_NORM),
    );
    let (lo, hi) = fp.volume;
    let nv = coarse_number_in_volume(&state, &RegionSpec::Volume { lo, hi }, grid)?;
    r.value("number_in_volume", nv);
    r.note(format!("volume cells {lo:?} .. {hi:?} (half-open)"));
    let (t1, t2) = fp.surface_window;
    let surface = RegionSpec::Surface {
        axis: fp.surface_axis,
        index: fp.surface_index,
        t1,
        t2,
    };
    let ns = coarse_flux_through_surface(&state, &surface, grid, consts)?;
    r.value("number_through_surface", ns);
    r.note(format!(
        "surface axis {} index {} over t in [{t1}, {t2}]",
        fp.surface_axis, fp.surface_index
    ));

    let d = expected_densities(&state, grid, consts, cfg.sample_t)?;
    r.check(
        "density_integral_vs_occupation",
        (d.total_number() - total).abs(),
        Bound::AtMost(TOL_NORM),
    );
    r.check(
        "energy_density_integral_vs_energy",
        (d.total_energy() - h).abs() / h.max(f64::MIN_POSITIVE),
        Bound::AtMost(TOL_NORM),
    );
    r.note("comparison.csv is only written for classical-field scenarios");

    let dk3 = grid.k_cell_volume();
    let mut spectrum: Vec<SpectrumRow> = (0..grid.len())
        .map(|i| SpectrumRow {
            k_index: i,
            k: grid.wavevector(i),
            abs_c_plus: 0.0,
            abs_c_minus: 0.0,
            energy_density: 0.0,
            photon_density: 0.0,
        })
        .collect();
    for (m, mode) in ms.modes().iter().enumerate() {
        let i = grid.index_of_wavevector(&mode.k).expect("validated on-grid");
        let e = consts.photon_energy(&mode.k);
        let row = &mut spectrum[i];
        let amp = (occupations[m] * e / (2.0 * dk3)).sqrt();
        match mode.helicity {
            Helicity::Plus => row.abs_c_plus = amp,
            Helicity::Minus => row.abs_c_minus = amp,
        }
        row.energy_density += occupations[m] * e / dk3;
        row.photon_density += occupations[m] / dk3;
    }
    let density = (0..grid.len())
        .map(|i| DensityRow {
            index: grid.unflat(i),
            r: grid.position(i),
            rho: d.rho[i],
            u: d.u[i],
            j: d.j[i],
        })
        .collect();
    Ok(Outcome {
        report: r,
        spectrum,
        density,
        comparison: None,
    })
}

fn random_k(rng: &mut ChaCha8Rng) -> RVec3 {
    if rng.random_bool(0.8) {
        loop {
            let k: RVec3 = core::array::from_fn(|_| rng.random_range(-10.0..10.0));
            if vec3::rnorm(&k) > 1e-3 {
                return k;
            }
        }
    }
    let eps = 10f64.powi(-rng.random_range(0..16));
    let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let m = rng.random_range(0.1..50.0);
    [
        rng.random_range(-1.0..1.0) * eps * m,
        rng.random_range(-1.0..1.0) * eps * m,
        s * m,
    ]
}

/// Checks run only by `invariant_suite`, on top of the classical ones.
fn suite(cfg: &Config, rng: &mut ChaCha8Rng, r: &mut Report) -> Result<(), RunError> {
    let grid = &cfg.grid;
    let consts = &cfg.constants;
    let t_cross = box_crossing_time(grid, consts);

    // basis identities, including the axis and its neighbourhood
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let k = if i < 2 {
            [0.0, 0.0, if i == 0 { 3.0 } else { -3.0 }]
        } else {
            random_k(rng)
        };
        worst = worst.max(basis_residual(&k, &transverse_basis(k)?));
    }
    r.check("helicity_basis_1000_k", worst, Bound::AtMost(TOL_EXACT));

    // ψ± on every grid mode at once: H acts pointwise in k
    let mut worst = 0.0f64;
    for h in [Helicity::Plus, Helicity::Minus] {
        let field = SpectralField::from_fn(grid.clone(), 0.0, |i| {
            if i == grid.dc_index() {
                vec3::ZERO6
            } else {
                *transverse_basis(grid.wavevector(i)).expect("nonzero k").psi(h)
            }
        })?;
        let hf = apply_hamiltonian(&field, consts);
        for i in (0..grid.len()).filter(|&i| i != grid.dc_index()) {
            let e = consts.photon_energy(&grid.wavevector(i));
            let want = vec3::scale(C64::new(e, 0.0), &field.values()[i]);
            worst = worst.max(vec3::norm(&vec3::sub(&hf.values()[i], &want)) / (e * 2f64.sqrt()));
        }
    }
    r.check("hamiltonian_eigenvalue_all_modes", worst, Bound::AtMost(TOL_EXACT));

    // round trip from the position side, on an arbitrary (non-transversal) field
    let values = (0..grid.len())
        .map(|_| core::array::from_fn(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))))
        .collect();
    let f = FieldState::new(grid.clone(), values, 0.0)?;
    let back = to_spatial(&to_spectral(&f)?)?;
    r.check(
        "fourier_round_trip_position_side",
        max_diff(back.values(), f.values()) / f.max_norm(),
        Bound::AtMost(TOL_ROUNDTRIP),
    );

    // projection recovers the synthesized coefficients
    let co = random_coeffs(grid, rng)?;
    let (again, residual) = project(&synthesize(&co));
    let diff = again
        .c_plus()
        .iter()
        .zip(co.c_plus())
        .chain(again.c_minus().iter().zip(co.c_minus()))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    r.check(
        "project_synthesize_round_trip",
        diff.max(residual),
        Bound::AtMost(TOL_ROUNDTRIP),
    );

    // continuity on a narrow-band packet, convergence on a localized one
    let dk = grid.dk();
    let k0 = dk[0] * (grid.dims()[0] / 4).max(1) as f64;
    let packet = |sigma: f64| {
        SpectralCoefficients::from_fn(grid.clone(), 0.0, |k| {
            let d2 = (k[0] - k0).powi(2) + k[1] * k[1] + k[2] * k[2];
            (C64::new((-d2 / (2.0 * sigma * sigma)).exp(), 0.0), C64::new(0.0, 0.0))
        })
    };
    let dt = CONTINUITY_DT * t_cross;
    let narrow = packet(0.05 * k0)?;
    r.check(
        "continuity_narrow_band",
        continuity_residual(&narrow, dt, consts)?,
        Bound::AtMost(TOL_CONTINUITY),
    );
    let p = PhotonWavefunction::from_coefficients(narrow, *consts)?;
    r.check(
        "photon_continuity_narrow_band",
        continuity_residual(&p.coefficients_at(0.0), dt, consts)?,
        Bound::AtMost(TOL_CONTINUITY),
    );
    let local = packet(dk[0])?;
    let factor = continuity_residual(&local, dt, consts)? / continuity_residual(&local, 0.5 * dt, consts)?;
    r.check(
        "continuity_convergence_factor",
        factor,
        Bound::Within { lo: 3.5, hi: 4.5 },
    );

    fock_suite(grid, consts, rng, r)
}

fn fock_suite(grid: &Grid3D, consts: &PhysicalConstants, rng: &mut ChaCha8Rng, r: &mut Report) -> Result<(), RunError> {
    let dk = grid.dk();
    let kx = dk[0] * (grid.dims()[0] / 4).max(1) as f64;
    let ms = Arc::new(ModeSet::new(
        vec![
            Mode::new([kx, 0.0, 0.0], Helicity::Plus),
            Mode::new([kx, 0.0, 0.0], Helicity::Minus),
            Mode::new([0.0, dk[1], 0.0], Helicity::Plus),
        ],
        3,
    )?);
    let basis = ms.basis();
    let amps: Vec<_> = basis
        .iter()
        .map(|occ| {
            (
                occ.clone(),
                C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
            )
        })
        .collect();
    let state = FockState::from_amplitudes(ms.clone(), amps)?.normalized()?;

    let occupation: f64 = (0..ms.len())
        .map(|m| number_expectation(&state, m))
        .sum::<Result<f64, _>>()?;
    let whole = RegionSpec::Volume {
        lo: [0; 3],
        hi: grid.dims(),
    };
    r.check(
        "fock_whole_box_count",
        (coarse_number_in_volume(&state, &whole, grid)? - occupation).abs(),
        Bound::AtMost(TOL_NORM),
    );

    // [a, a†] = 1 on the part of the state with headroom under the cap
    let headroom: Vec<_> = state
        .amplitudes()
        .iter()
        .filter(|(occ, _)| occ.iter().all(|&n| n < ms.max_occupation()))
        .map(|(o, a)| (o.clone(), *a))
        .collect();
    let low = FockState::from_amplitudes(ms.clone(), headroom)?;
    let mut worst = 0.0f64;
    for m in 0..ms.len() {
        let a_ad = annihilate(&create(&low, m)?, m)?;
        let ad_a = create(&annihilate(&low, m)?, m)?;
        let comm = a_ad.plus(&ad_a.scaled(C64::new(-1.0, 0.0)));
        for occ in &basis {
            worst = worst.max((comm.amplitude(occ) - low.amplitude(occ)).norm());
        }
    }
    r.check("fock_commutator", worst, Bound::AtMost(TOL_EXACT));

    let one = FockState::from_amplitudes(ms.clone(), [(vec![0, 0, 1], C64::new(1.0, 0.0))])?;
    let n = grid.dims();
    let half = RegionSpec::Volume {
        lo: [0; 3],
        hi: [n[0], n[1] / 2, n[2]],
    };
    r.check(
        "fock_half_box_plane_wave",
        (coarse_number_in_volume(&one, &half, grid)? - 0.5).abs(),
        Bound::AtMost(TOL_NORM),
    );

    let along_x = FockState::from_amplitudes(ms, [(vec![1, 0, 0], C64::new(1.0, 0.0))])?;
    let crossing = RegionSpec::Surface {
        axis: 0,
        index: n[0] / 2,
        t1: 0.0,
        t2: grid.box_len()[0] / consts.c(),
    };
    r.check(
        "fock_one_crossing_flux",
        (coarse_flux_through_surface(&along_x, &crossing, grid, consts)? - 1.0).abs(),
        Bound::AtMost(0.02),
    );
    Ok(())
}
