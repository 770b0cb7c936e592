//! Exact fallbacks for the planar predicates.
//!
//! Every finite `f64` is `m * 2^e` with an integer mantissa. Scaling all
//! inputs of one predicate to their smallest exponent turns the determinant
//! into an integer polynomial, which is evaluated without rounding.

use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn decompose(v: f64) -> (i64, i32) {
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1i64 };
    let exponent = ((bits >> 52) & 0x7ff) as i32;
    let fraction = (bits & 0x000f_ffff_ffff_ffff) as i64;
    let (mantissa, exp) = if exponent == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1i64 << 52), exponent - 1075)
    };
    (sign * mantissa, exp)
}

/// Converts the inputs to integers sharing one binary exponent.
fn to_integers(values: &[f64]) -> Vec<BigInt> {
    let parts: Vec<(i64, i32)> = values.iter().map(|&v| decompose(v)).collect();
    let min_exp = parts
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    parts
        .into_iter()
        .map(|(m, e)| {
            if m == 0 {
                BigInt::zero()
            } else {
                BigInt::from(m) << ((e - min_exp) as usize)
            }
        })
        .collect()
}

fn sign_of(v: &BigInt) -> Ordering {
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sign of `(ax-cx)(by-cy) - (ay-cy)(bx-cx)`.
pub(crate) fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Ordering {
    let v = to_integers(&[a[0], a[1], b[0], b[1], c[0], c[1]]);
    let acx = &v[0] - &v[4];
    let acy = &v[1] - &v[5];
    let bcx = &v[2] - &v[4];
    let bcy = &v[3] - &v[5];
    sign_of(&(acx * bcy - acy * bcx))
}

/// Sign of the lifted 3x3 in-circle determinant, positive when `d` is inside
/// the circle through the counterclockwise triangle `abc`.
pub(crate) fn incircle(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Ordering {
    let v = to_integers(&[a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]]);
    let adx = &v[0] - &v[6];
    let ady = &v[1] - &v[7];
    let bdx = &v[2] - &v[6];
    let bdy = &v[3] - &v[7];
    let cdx = &v[4] - &v[6];
    let cdy = &v[5] - &v[7];
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady);
    sign_of(&det)
}

/// Sign of `(u-w)·(v-w)`.
pub(crate) fn dot(w: [f64; 2], u: [f64; 2], v: [f64; 2]) -> Ordering {
    let n = to_integers(&[w[0], w[1], u[0], u[1], v[0], v[1]]);
    let ux = &n[2] - &n[0];
    let uy = &n[3] - &n[1];
    let vx = &n[4] - &n[0];
    let vy = &n[5] - &n[1];
    sign_of(&(ux * vx + uy * vy))
}
