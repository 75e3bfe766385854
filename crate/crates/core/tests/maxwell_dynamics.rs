mod common;

use common::*;
use photonwave_core::helicity::{synthesize, transverse_basis, SpectralCoefficients};
use photonwave_core::maxwell::{
    apply_hamiltonian, box_crossing_time, continuity_residual, cross_current, evolve, field_at, observables,
    spin_current,
};
use photonwave_core::vec3;
use photonwave_core::{Grid3D, PhysicalConstants, SpectralField, C64};

fn odd_units() -> PhysicalConstants {
    // c = 2, ε₀μ₀ = 1/4
    PhysicalConstants::new(0.7, 2.0, 0.5, 0.5).unwrap()
}

#[test]
fn energy_is_conserved_by_evolution() {
    let grid = Grid3D::centered([16, 16, 16], [0.5; 3]).unwrap();
    let consts = odd_units();
    let co = random_coeffs(&grid, 9);
    let u0 = observables(&field_at(&co).unwrap(), &consts).total_energy();
    for dt in [0.1, 3.7, -12.0] {
        let u = observables(&field_at(&evolve(&co, dt, &consts)).unwrap(), &consts).total_energy();
        assert!(rel_close(u, u0, 1e-12), "dt={dt}: {u} vs {u0}");
    }
}

#[test]
fn hamiltonian_eigenvalue_on_every_grid_mode() {
    let grid = Grid3D::centered([16, 16, 16], [0.3; 3]).unwrap();
    let consts = odd_units();
    for h in helicities() {
        let g = SpectralField::from_fn(grid.clone(), 0.0, |i| {
            if i == grid.dc_index() {
                return vec3::ZERO6;
            }
            *transverse_basis(grid.wavevector(i)).unwrap().psi(h)
        })
        .unwrap();
        let hg = apply_hamiltonian(&g, &consts);
        for i in 1..grid.len() {
            let e = consts.photon_energy(&grid.wavevector(i));
            let expect = vec3::scale(C64::new(e, 0.0), &g.values()[i]);
            let res = vec3::norm(&vec3::sub(&hg.values()[i], &expect));
            assert!(res <= 1e-12 * e, "{h:?} k={:?}: {res}", grid.wavevector(i));
        }
    }
}

#[test]
fn flux_is_real_and_bounded() {
    let grid = Grid3D::centered([16, 16, 16], [0.5; 3]).unwrap();
    let consts = odd_units();
    let f = field_at(&random_coeffs(&grid, 21)).unwrap();
    let o = observables(&f, &consts);
    assert!(o.j_imag_ratio <= 1e-12);
    let jmax = o.j.iter().map(vec3::rnorm).fold(0.0, f64::max);
    for (i, v) in f.values().iter().enumerate() {
        assert!(vec3::rnorm(&o.j[i]) <= consts.c() * o.u[i] * (1.0 + 1e-12));
        // j = 2c Re(E*×H)
        let e = vec3::upper(v);
        let hh = vec3::lower(v);
        let ex = vec3::cross(&vec3::conj(&e), &hh).map(|x| 2.0 * consts.c() * x.re);
        for a in 0..3 {
            assert!((ex[a] - o.j[i][a]).abs() <= 1e-12 * jmax);
        }
        let s = spin_current(v, consts.c());
        let x = cross_current(v, consts.c());
        assert!(vec3::norm(&vec3::sub(&s, &x)) <= 1e-12 * jmax);
    }
}

#[test]
fn single_helicity_plane_wave_saturates_flux_bound() {
    let grid = unit_dk_grid([8, 8, 8]);
    let consts = PhysicalConstants::natural();
    let idx = grid.index_of_wavevector(&[1.0, 0.0, 0.0]).unwrap();
    let mut cp = vec![C64::new(0.0, 0.0); grid.len()];
    cp[idx] = C64::new(1.0, 0.0);
    let co = SpectralCoefficients::new(grid.clone(), cp, vec![C64::new(0.0, 0.0); grid.len()], 0.0).unwrap();
    let o = observables(&field_at(&co).unwrap(), &consts);
    let u0 = o.u[0];
    for i in 0..grid.len() {
        assert!((o.u[i] - u0).abs() < 1e-12 * u0);
        assert!((o.j[i][0] - consts.c() * o.u[i]).abs() < 1e-12 * u0);
        assert!(o.j[i][1].abs() < 1e-12 * u0 && o.j[i][2].abs() < 1e-12 * u0);
    }
}

#[test]
fn parseval_between_position_and_spectrum() {
    let grid = Grid3D::centered([32, 16, 16], [0.25; 3]).unwrap();
    let co = random_coeffs(&grid, 4);
    let g = synthesize(&co);
    let u = observables(&field_at(&co).unwrap(), &PhysicalConstants::natural()).total_energy();
    assert!(rel_close(u, g.total_norm_sqr(), 1e-10));
}

#[test]
fn continuity_converges_at_second_order_on_localized_packet() {
    let grid = Grid3D::centered([32; 3], [1.0; 3]).unwrap();
    let dk = grid.dk()[0];
    let consts = PhysicalConstants::natural();
    let co = gaussian_coeffs(
        &grid,
        [8.0 * dk, 0.0, 0.0],
        dk,
        (C64::new(1.0, 0.0), C64::new(0.0, 0.3)),
    );
    let t = box_crossing_time(&grid, &consts);
    let r1 = continuity_residual(&co, 1e-3 * t, &consts).unwrap();
    let r2 = continuity_residual(&co, 0.5e-3 * t, &consts).unwrap();
    let factor = r1 / r2;
    assert!((3.5..=4.5).contains(&factor), "factor {factor}");
}

#[test]
fn continuity_bound_on_narrow_band_packet() {
    let grid = Grid3D::centered([16; 3], [1.0; 3]).unwrap();
    let dk = grid.dk()[0];
    let consts = PhysicalConstants::natural();
    let k0 = 4.0 * dk;
    let co = gaussian_coeffs(
        &grid,
        [k0, 0.0, 0.0],
        0.05 * k0,
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
    );
    let t = box_crossing_time(&grid, &consts);
    assert!(continuity_residual(&co, 1e-3 * t, &consts).unwrap() <= 1e-6);
}

#[test]
fn two_mode_beat_matches_truncation_error_oracle() {
    // u = A + B cos(Δk x − Δω t): a central difference misses dt²/6 · B Δω³
    let grid = Grid3D::centered([16; 3], [1.0; 3]).unwrap();
    let dk = grid.dk()[0];
    let consts = PhysicalConstants::natural();
    let (a, b) = (C64::new(1.0, 0.0), C64::new(0.5, 0.2));
    let mut cp = vec![C64::new(0.0, 0.0); grid.len()];
    cp[grid.index_of_wavevector(&[4.0 * dk, 0.0, 0.0]).unwrap()] = a;
    cp[grid.index_of_wavevector(&[5.0 * dk, 0.0, 0.0]).unwrap()] = b;
    let co = SpectralCoefficients::new(grid.clone(), cp, vec![C64::new(0.0, 0.0); grid.len()], 0.0).unwrap();
    let t = box_crossing_time(&grid, &consts);
    let dt = 1e-3 * t;
    // |ψ₊|² = 2 for both modes (same direction, same f₊)
    let big_a = 2.0 * (a.norm_sqr() + b.norm_sqr());
    let big_b = 4.0 * a.norm() * b.norm();
    let d_omega = consts.c() * dk;
    let predicted = dt * dt / 6.0 * big_b * d_omega.powi(3) * t / (big_a + big_b);
    let r = continuity_residual(&co, dt, &consts).unwrap();
    assert!((r / predicted - 1.0).abs() < 0.02, "{r} vs {predicted}");
    let r_half = continuity_residual(&co, dt / 2.0, &consts).unwrap();
    assert!((3.5..=4.5).contains(&(r / r_half)));
}
