mod common;

use std::f64::consts::PI;

use common::*;
use photonwave_core::lattice::{to_spatial, to_spectral};
use photonwave_core::vec3;
use photonwave_core::{FieldState, Grid3D, C64};

#[test]
fn plane_wave_concentrates_on_its_k() {
    let grid = Grid3D::new([8, 8, 8], [0.5, 0.5, 0.5], [0.25, -1.0, 0.0]).unwrap();
    let k0_idx = grid.flat([2, 7, 3]);
    let k0 = grid.wavevector(k0_idx);
    let v: [C64; 6] = std::array::from_fn(|c| C64::new(c as f64 - 2.0, 0.5 * c as f64));
    let f = FieldState::from_fn(grid.clone(), 0.0, |i| {
        let r = grid.position(i);
        let ph = k0[0] * r[0] + k0[1] * r[1] + k0[2] * r[2];
        vec3::scale(C64::new(ph.cos(), ph.sin()), &v)
    })
    .unwrap();
    let g = to_spectral(&f).unwrap();
    let pref = (2.0 * PI).powf(-1.5) * grid.cell_volume() * grid.len() as f64;
    for (i, phi) in g.values().iter().enumerate() {
        let expect = if i == k0_idx {
            vec3::scale(C64::new(pref, 0.0), &v)
        } else {
            vec3::ZERO6
        };
        assert!(vec3::norm(&vec3::sub(phi, &expect)) < 1e-12, "k index {i}");
    }
}

#[test]
fn forward_transform_matches_direct_summation() {
    let grid = Grid3D::new([4, 8, 4], [0.3, 0.7, 1.1], [1.0, -0.5, 2.0]).unwrap();
    let f = random_field(&grid, 11);
    let g = to_spectral(&f).unwrap();
    for i in (0..grid.len()).step_by(7) {
        let k = grid.wavevector(i);
        for comp in 0..6 {
            let direct = direct_dft(&f, comp, k);
            assert!((g.values()[i][comp] - direct).norm() < 1e-12);
        }
    }
}

#[test]
fn parseval_on_gaussian_envelope() {
    let grid = Grid3D::centered([16, 16, 16], [0.4; 3]).unwrap();
    let f = FieldState::from_fn(grid.clone(), 0.0, |i| {
        let r = grid.position(i);
        let env = (-(r[0] * r[0] + 2.0 * r[1] * r[1] + r[2] * r[2]) / 2.0).exp();
        let ph = 3.0 * r[0];
        let w = C64::new(ph.cos(), ph.sin()) * env;
        [w, w * 0.5, C64::new(0.0, 0.0), -w, w * C64::new(0.0, 1.0), w * 0.1]
    })
    .unwrap();
    let direct: f64 = f.values().iter().map(|v| vec3::norm_sqr(v)).sum::<f64>() * grid.cell_volume();
    let spec = to_spectral(&f).unwrap().total_norm_sqr();
    assert!(rel_close(spec, direct, 1e-10), "{spec} vs {direct}");
}

#[test]
fn round_trip_random_fields() {
    for (seed, n) in [(1u64, [16, 16, 16]), (2, [32, 16, 8]), (3, [4, 4, 64])] {
        let grid = Grid3D::new(n, [0.3, 0.2, 0.1], [-1.0, 0.0, 3.0]).unwrap();
        let f = random_field(&grid, seed);
        let back = to_spatial(&to_spectral(&f).unwrap()).unwrap();
        let scale = f.max_norm();
        for (a, b) in back.values().iter().zip(f.values()) {
            assert!(vec3::norm(&vec3::sub(a, b)) <= 1e-12 * scale);
        }
    }
}
