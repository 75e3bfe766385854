mod common;

use common::*;
use photonwave_core::helicity::{synthesize, Helicity, SpectralCoefficients};
use photonwave_core::maxwell::{box_crossing_time, continuity_residual};
use photonwave_core::photon::{
    angular_momentum_z, density_comparison, photon_number_spectrum, probability_current_consistency, scale_to_photon,
    synthesize_position, PhotonWavefunction,
};
use photonwave_core::{Grid3D, PhysicalConstants, C64};

#[test]
fn normalization_survives_evolution() {
    let grid = Grid3D::centered([16; 3], [0.5; 3]).unwrap();
    let consts = PhysicalConstants::new(1.3, 2.0, 0.5, 0.5).unwrap();
    let g = synthesize(&random_coeffs(&grid, 3));
    let p = scale_to_photon(&g, &consts).unwrap();
    assert!(p.norm_check() <= 1e-12);
    let (d0, _) = synthesize_position(&p, 0.0).unwrap();
    for t in [0.0, 0.8, 25.0] {
        let (d, _) = synthesize_position(&p, t).unwrap();
        assert!((d.total() - 1.0).abs() <= 1e-10);
        assert!((d.total() - d0.total()).abs() <= 1e-12);
    }
}

#[test]
fn photon_number_in_si_units() {
    let consts = PhysicalConstants::si();
    // optical wavelength scale box
    let grid = Grid3D::centered([8; 3], [1e-7; 3]).unwrap();
    let k = [2.0 * grid.dk()[0], 0.0, 0.0];
    let e = consts.photon_energy(&k);
    let g = mode_field(&grid, k, Helicity::Plus, 7.0 * e);
    assert!(rel_close(
        scale_to_photon(&g, &consts).unwrap().photon_number(),
        7.0,
        1e-10
    ));
    assert!(rel_close(photon_number_spectrum(&g, &consts).total, 7.0, 1e-10));
}

#[test]
fn bichromatic_photon_count_differs_from_energy_over_mean_frequency() {
    let grid = unit_dk_grid([8, 8, 8]);
    let consts = PhysicalConstants::natural();
    let g = add_fields(
        &mode_field(&grid, [1.0, 0.0, 0.0], Helicity::Plus, 1.0),
        &mode_field(&grid, [2.0, 0.0, 0.0], Helicity::Plus, 1.0),
    );
    let n = photon_number_spectrum(&g, &consts).total;
    assert!((n - 1.5).abs() < 1e-12);
    let omega_bar: f64 = (1.0 * 1.0 + 1.0 * 2.0) / 2.0;
    let u_over = 2.0 / omega_bar;
    assert!((u_over - 4.0 / 3.0).abs() < 1e-15);
    assert!((n - u_over).abs() > 0.1);
    let cmp = density_comparison(&g, &consts).unwrap();
    assert!(!cmp.monochromatic);
    assert!(cmp.max_ratio_deviation > 0.05);
}

#[test]
fn monochromatic_shell_packet_densities_are_proportional() {
    // lattice points with |m|² = 25 lie on one shell
    let grid = unit_dk_grid([16; 3]);
    let consts = PhysicalConstants::natural();
    let shell = [
        [5.0, 0.0, 0.0],
        [4.0, 3.0, 0.0],
        [3.0, 4.0, 0.0],
        [4.0, 0.0, 3.0],
        [3.0, 0.0, -4.0],
        [0.0, 5.0, 0.0],
    ];
    let mut g = mode_field(&grid, shell[0], Helicity::Plus, 1.0);
    for (i, k) in shell.iter().enumerate().skip(1) {
        let h = if i % 2 == 0 { Helicity::Plus } else { Helicity::Minus };
        g = add_fields(&g, &mode_field(&grid, *k, h, (-(i as f64) / 3.0).exp()));
    }
    let cmp = density_comparison(&g, &consts).unwrap();
    assert!(cmp.monochromatic);
    assert!(cmp.max_ratio_deviation <= 1e-10, "{}", cmp.max_ratio_deviation);
    assert!((cmp.omega_bar - 5.0).abs() < 1e-12);
}

#[test]
fn packet_centroid_moves_at_c() {
    let grid = Grid3D::centered([64, 32, 32], [1.0; 3]).unwrap();
    let dk = grid.dk();
    let consts = PhysicalConstants::natural();
    let k0 = 16.0 * dk[0];
    let co = gaussian_coeffs(
        &grid,
        [k0, 0.0, 0.0],
        0.05 * k0,
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
    );
    let p = PhotonWavefunction::from_coefficients(co, consts).unwrap();
    let dt = 0.1 * grid.box_len()[0] / consts.c();
    let (d0, _) = synthesize_position(&p, 0.0).unwrap();
    let (d1, _) = synthesize_position(&p, dt).unwrap();
    let moved = d1.circular_centroid(0) - d0.circular_centroid(0);
    assert!((moved / (consts.c() * dt) - 1.0).abs() < 0.01, "moved {moved}");
    // transverse centroid stays put
    assert!((d1.circular_centroid(1) - d0.circular_centroid(1)).abs() < 1e-6);
}

#[test]
fn photon_continuity_matches_classical_contract() {
    let grid = Grid3D::centered([16; 3], [1.0; 3]).unwrap();
    let dk = grid.dk()[0];
    let consts = PhysicalConstants::natural();
    let g = synthesize(&gaussian_coeffs(
        &grid,
        [4.0 * dk, 0.0, 0.0],
        0.2 * dk,
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
    ));
    let p = scale_to_photon(&g, &consts).unwrap();
    let t = box_crossing_time(&grid, &consts);
    let r1 = continuity_residual(&p.coefficients_at(0.0), 1e-3 * t, &consts).unwrap();
    let r2 = continuity_residual(&p.coefficients_at(0.0), 0.5e-3 * t, &consts).unwrap();
    assert!(r1 <= 1e-6);
    assert!((3.5..=4.5).contains(&(r1 / r2)));
}

#[test]
fn current_forms_agree() {
    let grid = Grid3D::centered([16; 3], [0.5; 3]).unwrap();
    let consts = PhysicalConstants::natural();
    let single = mode_field(&grid, [grid.dk()[0], 0.0, 0.0], Helicity::Minus, 1.0);
    let p = scale_to_photon(&single, &consts).unwrap();
    assert!(probability_current_consistency(&p, 0.0).unwrap() <= 1e-13);

    let dk = grid.dk()[0];
    let mut g = mode_field(&grid, [dk, 0.0, 0.0], Helicity::Plus, 1.0);
    g = add_fields(&g, &mode_field(&grid, [0.0, 2.0 * dk, dk], Helicity::Minus, 0.4));
    g = add_fields(&g, &mode_field(&grid, [-dk, dk, -3.0 * dk], Helicity::Plus, 2.0));
    let p = scale_to_photon(&g, &consts).unwrap();
    assert!(probability_current_consistency(&p, 1.3).unwrap() <= 1e-12);
}

fn axial_grid() -> Grid3D {
    Grid3D::centered([32, 32, 128], [1.0; 3]).unwrap()
}

#[test]
fn angular_momentum_of_circular_packets() {
    let grid = axial_grid();
    let consts = PhysicalConstants::natural();
    let k0 = 50.0 * grid.dk()[2];
    let sigma = 0.03 * k0;
    let plus =
        PhotonWavefunction::from_coefficients(circular_packet(&grid, k0, sigma, Helicity::Plus), consts).unwrap();
    let jp = angular_momentum_z(&plus, 0.0).unwrap();
    assert!((jp.total() - 1.0).abs() < 1e-3, "{jp:?}");
    assert!(jp.orbital.abs() <= 1e-3);
    let minus =
        PhotonWavefunction::from_coefficients(circular_packet(&grid, k0, sigma, Helicity::Minus), consts).unwrap();
    let jm = angular_momentum_z(&minus, 0.0).unwrap();
    assert!((jm.total() + 1.0).abs() < 1e-3, "{jm:?}");
    assert!((jm.total() + jp.total()).abs() < 1e-10);

    let a = circular_packet(&grid, k0, sigma, Helicity::Plus);
    let b = circular_packet(&grid, k0, sigma, Helicity::Minus);
    let mix = SpectralCoefficients::new(grid.clone(), a.c_plus().to_vec(), b.c_minus().to_vec(), 0.0).unwrap();
    let pm = PhotonWavefunction::from_coefficients(mix, consts).unwrap();
    assert!(angular_momentum_z(&pm, 0.0).unwrap().total().abs() <= 1e-10);
}

#[test]
fn angular_momentum_scales_with_hbar() {
    let grid = axial_grid();
    let consts = PhysicalConstants::new(0.25, 1.0, 1.0, 1.0).unwrap();
    let k0 = 50.0 * grid.dk()[2];
    let p =
        PhotonWavefunction::from_coefficients(circular_packet(&grid, k0, 0.03 * k0, Helicity::Plus), consts).unwrap();
    let j = angular_momentum_z(&p, 2.0).unwrap();
    assert!((j.total() / 0.25 - 1.0).abs() < 1e-3);
}
