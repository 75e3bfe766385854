//! Small helpers for real and complex 3-vectors and 6-vectors.

use crate::{Six, C64};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

pub type CVec3 = [C64; 3];
pub type RVec3 = [f64; 3];

pub const ZERO3: CVec3 = [C64::new(0.0, 0.0); 3];
pub const ZERO6: Six = [C64::new(0.0, 0.0); 6];

#[inline]
pub fn upper(v: &Six) -> CVec3 {
    [v[0], v[1], v[2]]
}

#[inline]
pub fn lower(v: &Six) -> CVec3 {
    [v[3], v[4], v[5]]
}

#[inline]
pub fn stack(upper: CVec3, lower: CVec3) -> Six {
    [upper[0], upper[1], upper[2], lower[0], lower[1], lower[2]]
}

/// `a†b`
#[inline]
pub fn cdot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `a·b` without conjugation, `a` real.
#[inline]
pub fn rdot(a: &RVec3, b: &CVec3) -> C64 {
    b[0] * a[0] + b[1] * a[1] + b[2] * a[2]
}

#[inline]
pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

#[inline]
pub fn norm(a: &[C64]) -> f64 {
    norm_sqr(a).sqrt()
}

#[inline]
pub fn cross(a: &CVec3, b: &CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Real vector crossed into a complex one.
#[inline]
pub fn rcross(a: &RVec3, b: &CVec3) -> CVec3 {
    [
        b[2] * a[1] - b[1] * a[2],
        b[0] * a[2] - b[2] * a[0],
        b[1] * a[0] - b[0] * a[1],
    ]
}

#[inline]
pub fn rnorm(a: &RVec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

#[inline]
pub fn scale<const N: usize>(s: C64, v: &[C64; N]) -> [C64; N] {
    let mut out = *v;
    out.iter_mut().for_each(|x| *x *= s);
    out
}

#[inline]
pub fn add<const N: usize>(a: &[C64; N], b: &[C64; N]) -> [C64; N] {
    let mut out = *a;
    out.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    out
}

#[inline]
pub fn sub<const N: usize>(a: &[C64; N], b: &[C64; N]) -> [C64; N] {
    let mut out = *a;
    out.iter_mut().zip(b).for_each(|(x, y)| *x -= y);
    out
}

#[inline]
pub fn conj<const N: usize>(a: &[C64; N]) -> [C64; N] {
    a.map(|x| x.conj())
}

#[inline]
pub fn is_finite(a: &[C64]) -> bool {
    a.iter().all(|x| x.re.is_finite() && x.im.is_finite())
}
