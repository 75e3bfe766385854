//! In-place radix-2 FFT and its 3D extension over a row-major grid.
//!
//! Transforms are unnormalized: `forward` computes `Σ x[n] e^{-2πi mn/N}`,
//! `inverse` computes `Σ X[m] e^{+2πi mn/N}`. Continuum normalization is
//! applied by [`crate::lattice`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::C64;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

/// Precomputed twiddles and bit-reversal table for one power-of-two length.
#[derive(Debug, Clone)]
pub struct Radix2 {
    n: usize,
    twiddles: Vec<C64>,
    rev: Vec<usize>,
}

impl Radix2 {
    /// `n` must be a power of two (checked by the grid constructor).
    pub fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let bits = n.trailing_zeros();
        let rev = (0..n)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        // e^{-2πi j/n}, j < n/2, each evaluated directly to avoid drift.
        let twiddles = (0..n / 2)
            .map(|j| {
                let theta = -2.0 * PI * j as f64 / n as f64;
                C64::new(theta.cos(), theta.sin())
            })
            .collect();
        Radix2 { n, twiddles, rev }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&self, data: &mut [C64]) {
        self.run(data, false);
    }

    pub fn inverse(&self, data: &mut [C64]) {
        self.run(data, true);
    }

    fn run(&self, data: &mut [C64], inverse: bool) {
        let n = self.n;
        assert_eq!(data.len(), n);
        for i in 0..n {
            let j = self.rev[i];
            if i < j {
                data.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for j in 0..half {
                    let mut w = self.twiddles[j * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let a = data[start + j];
                    let b = data[start + j + half] * w;
                    data[start + j] = a + b;
                    data[start + j + half] = a - b;
                }
            }
            len <<= 1;
        }
    }
}

/// Separable 3D transform on arrays laid out as `(ix * ny + iy) * nz + iz`.
#[derive(Debug, Clone)]
pub struct Fft3 {
    dims: [usize; 3],
    axes: [Radix2; 3],
}

impl Fft3 {
    pub fn new(dims: [usize; 3]) -> Self {
        Fft3 {
            dims,
            axes: [Radix2::new(dims[0]), Radix2::new(dims[1]), Radix2::new(dims[2])],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn forward(&self, data: &mut [C64]) {
        self.run(data, false);
    }

    pub fn inverse(&self, data: &mut [C64]) {
        self.run(data, true);
    }

    fn run(&self, data: &mut [C64], inverse: bool) {
        let [nx, ny, nz] = self.dims;
        assert_eq!(data.len(), nx * ny * nz);
        let strides = [ny * nz, nz, 1];
        let mut line = Vec::with_capacity(nx.max(ny).max(nz));
        for axis in 0..3 {
            let n = self.dims[axis];
            let stride = strides[axis];
            let plan = &self.axes[axis];
            // every index with a zero coordinate along `axis` starts one line
            for base in 0..data.len() {
                if (base / stride) % n != 0 {
                    continue;
                }
                line.clear();
                line.extend((0..n).map(|i| data[base + i * stride]));
                if inverse {
                    plan.inverse(&mut line);
                } else {
                    plan.forward(&mut line);
                }
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn naive_dft(x: &[C64], sign: f64) -> Vec<C64> {
        let n = x.len();
        (0..n)
            .map(|m| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let th = sign * 2.0 * PI * (m * j) as f64 / n as f64;
                        v * C64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn radix2_matches_direct_sum() {
        for n in [1usize, 2, 4, 8, 16, 32] {
            let x: Vec<C64> = (0..n)
                .map(|i| C64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let expect = naive_dft(&x, -1.0);
            let mut got = x.clone();
            Radix2::new(n).forward(&mut got);
            for (a, b) in got.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-12, "n={n}");
            }
            let expect_inv = naive_dft(&x, 1.0);
            let mut got = x.clone();
            Radix2::new(n).inverse(&mut got);
            for (a, b) in got.iter().zip(&expect_inv) {
                assert!((a - b).norm() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn fft3_delta_is_flat() {
        let dims = [4, 8, 2];
        let mut data = vec![C64::new(0.0, 0.0); 64];
        data[0] = C64::new(1.0, 0.0);
        Fft3::new(dims).forward(&mut data);
        assert!(data.iter().all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn fft3_round_trip() {
        let dims = [8, 4, 16];
        let len = 8 * 4 * 16;
        let orig: Vec<C64> = (0..len)
            .map(|i| C64::new((i as f64).sin(), (0.3 * i as f64).cos()))
            .collect();
        let plan = Fft3::new(dims);
        let mut data = orig.clone();
        plan.forward(&mut data);
        plan.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a / len as f64 - b).norm() < 1e-13);
        }
    }
}
