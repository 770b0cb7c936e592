//! Closed forms for the moments of critical Poisson–Delaunay cells in the
//! plane, their boundary and half-emptiness variants, and the constants
//! derived from them.
//!
//! With intensity `ϱ`, radius cutoff `r0` and `x = ϱπr0²`, the critical
//! edges (`k = 1`, interval constant 2) and acute triangles (`k = 2`,
//! constant 1) with center in a unit-area region satisfy
//!
//! ```text
//! E[N] = C ϱ / Γ(k) · γ(k, x)
//! E[F] = C ϱ / (Γ(k) √(ϱπ)) · γ(k + 1/2, x)
//! E[S] = C ϱ / (Γ(k) ϱπ) · γ(k + 1, x)
//! ```

use crate::math::{abs, exp, ln, sqrt};
use thiserror::Error;

const PI: f64 = core::f64::consts::PI;
const SQRT_PI: f64 = 1.772_453_850_905_516;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("incomplete gamma is only provided for k in {{1/2, 1, ..., 3}}, got {0}")]
    UnsupportedOrder(f64),
    #[error("no interval constant for (ell, k) = ({0}, {1})")]
    UnsupportedInterval(u8, u8),
    #[error("power must be 0, 1 or 2, got {0}")]
    UnsupportedPower(u8),
    #[error("argument out of range: {0}")]
    Domain(&'static str),
}

/// `Γ(k)` for the supported half-integer orders.
pub fn gamma_half_integer(k: f64) -> Result<f64, AnalyticsError> {
    let twice = 2.0 * k;
    if twice != (twice as i64) as f64 || !(1.0..=6.0).contains(&twice) {
        return Err(AnalyticsError::UnsupportedOrder(k));
    }
    Ok(match twice as i64 {
        1 => SQRT_PI,
        2 => 1.0,
        3 => 0.5 * SQRT_PI,
        4 => 1.0,
        5 => 0.75 * SQRT_PI,
        _ => 2.0,
    })
}

/// `γ(k, x) = ∫₀ˣ t^(k-1) e^(-t) dt` by power series below `x = k + 1`
/// and a continued fraction for the complement above.
pub fn lower_incomplete_gamma(k: f64, x: f64) -> Result<f64, AnalyticsError> {
    let full = gamma_half_integer(k)?;
    if x.is_nan() || x < 0.0 {
        return Err(AnalyticsError::Domain("x must be nonnegative"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(full);
    }
    let prefactor = exp(k * ln(x) - x);
    if x < k + 1.0 {
        let mut term = 1.0 / k;
        let mut sum = term;
        let mut a = k;
        for _ in 0..500 {
            a += 1.0;
            term *= x / a;
            sum += term;
            if abs(term) < abs(sum) * 1e-17 {
                break;
            }
        }
        Ok(prefactor * sum)
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - k;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - k);
            b += 2.0;
            d = an * d + b;
            if abs(d) < tiny {
                d = tiny;
            }
            c = b + an / c;
            if abs(c) < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if abs(delta - 1.0) < 1e-16 {
                break;
            }
        }
        Ok(full - prefactor * h)
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = WG[3] * fc;
    let mut kron = WGK[7] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, abs((kron - gauss) * h))
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = kronrod(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, 0.5 * tol, depth - 1) + adaptive(f, m, b, 0.5 * tol, depth - 1)
}

/// `∫ₐᵇ f` by adaptive 7/15-point Gauss–Kronrod bisection to absolute
/// tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adaptive(&f, a, b, tol, 40)
}

/// `γ(k, x)` by quadrature after substituting `t = u²`, which removes the
/// endpoint singularity at `k = 1/2`.
pub fn lower_incomplete_gamma_quad(k: f64, x: f64) -> Result<f64, AnalyticsError> {
    let full = gamma_half_integer(k)?;
    if x.is_nan() || x < 0.0 {
        return Err(AnalyticsError::Domain("x must be nonnegative"));
    }
    if x == f64::INFINITY {
        return Ok(full);
    }
    let p = (2.0 * k - 1.0) as i32;
    Ok(integrate(
        |u| 2.0 * pow_int(u, p) * exp(-u * u),
        0.0,
        sqrt(x),
        1e-12,
    ))
}

fn pow_int(u: f64, p: i32) -> f64 {
    (0..p).fold(1.0, |acc, _| acc * u)
}

/// One of the six moment sums of the critical cells of type `(ell, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentFormula {
    pub ell: u8,
    pub k: u8,
    /// 0 counts, 1 sums radii, 2 sums squared radii.
    pub power: u8,
    /// Points per unit area.
    pub intensity: f64,
}

impl MomentFormula {
    pub fn edges(power: u8, intensity: f64) -> Self {
        MomentFormula { ell: 1, k: 1, power, intensity }
    }

    pub fn triangles(power: u8, intensity: f64) -> Self {
        MomentFormula { ell: 2, k: 2, power, intensity }
    }

    fn interval_constant(&self) -> Result<f64, AnalyticsError> {
        match (self.ell, self.k) {
            (1, 1) => Ok(2.0),
            (2, 2) => Ok(1.0),
            (l, k) => Err(AnalyticsError::UnsupportedInterval(l, k)),
        }
    }

    fn x(&self, r0: f64) -> f64 {
        if r0 == f64::INFINITY {
            f64::INFINITY
        } else {
            self.intensity * PI * r0 * r0
        }
    }
}

/// Moment for cells empty with probability `eta`, i.e. intensity scaled by
/// `eta` inside the circles: `η^-(k+p/2) · C ϱ … γ(k + p/2, ηx)`.
pub fn eta_moment(f: MomentFormula, eta: f64, r0: f64) -> Result<f64, AnalyticsError> {
    let c = f.interval_constant()?;
    if f.power > 2 {
        return Err(AnalyticsError::UnsupportedPower(f.power));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(AnalyticsError::Domain("eta must lie in (0, 1]"));
    }
    if !(f.intensity > 0.0) || r0.is_nan() || r0 < 0.0 {
        return Err(AnalyticsError::Domain("intensity > 0 and r0 >= 0 required"));
    }
    let k = f.k as f64;
    let order = k + 0.5 * f.power as f64;
    let rho = f.intensity;
    let x = f.x(r0);
    let gx = if x == f64::INFINITY { x } else { eta * x };
    let g = lower_incomplete_gamma(order, gx)?;
    let scale = match f.power {
        0 => 1.0,
        1 => 1.0 / sqrt(rho * PI),
        _ => 1.0 / (rho * PI),
    };
    let eta_factor = if eta == 1.0 { 1.0 } else { exp(-order * ln(eta)) };
    Ok(eta_factor * c * rho / gamma_half_integer(k)? * scale * g)
}

pub fn expected_moment(f: MomentFormula, r0: f64) -> Result<f64, AnalyticsError> {
    eta_moment(f, 1.0, r0)
}

/// Bounds on the expected moments of critical cells crossing the boundary
/// of the unit square, plain and for half-empty circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryBounds {
    pub n1: f64,
    pub f1: f64,
    pub n2: f64,
    pub f2: f64,
    pub n1_half: f64,
    pub f1_half: f64,
    pub n2_half: f64,
    pub f2_half: f64,
}

/// Each bound is 8 times the moment one power higher: a cell of radius `r`
/// crosses the boundary only if its center lies in a strip of width `2r`
/// along one of the four sides.
pub fn boundary_bounds(n: f64) -> Result<BoundaryBounds, AnalyticsError> {
    if !(n > 0.0) {
        return Err(AnalyticsError::Domain("intensity must be positive"));
    }
    let inf = f64::INFINITY;
    let e = |f: MomentFormula, eta: f64| eta_moment(f, eta, inf).map(|v| 8.0 * v);
    Ok(BoundaryBounds {
        n1: e(MomentFormula::edges(1, n), 1.0)?,
        f1: e(MomentFormula::edges(2, n), 1.0)?,
        n2: e(MomentFormula::triangles(1, n), 1.0)?,
        f2: e(MomentFormula::triangles(2, n), 1.0)?,
        n1_half: e(MomentFormula::edges(1, n), 0.5)?,
        f1_half: e(MomentFormula::edges(2, n), 0.5)?,
        n2_half: e(MomentFormula::triangles(1, n), 0.5)?,
        f2_half: e(MomentFormula::triangles(2, n), 0.5)?,
    })
}

/// Numbers behind the lower bound on the EMST constant, all per `n` or
/// per `√n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundPipeline {
    /// Cutoff `x = nπr0²` of the envelope estimate, `ln 2`.
    pub envelope_x: f64,
    /// Expected critical edges up to the envelope cutoff, per `n`.
    pub envelope_count_coeff: f64,
    /// Their summed radii per `√n`.
    pub envelope_length_coeff: f64,
    /// Cutoff of the surplus argument, `x = 1`.
    pub x: f64,
    /// `E[N1] - E[N2]` per `n`.
    pub surplus_count_coeff: f64,
    /// `E[F1] - E[F2]` per `√n`.
    pub surplus_length_coeff: f64,
    /// Twice the surplus length: lengths are twice the radii.
    pub lower_bound: f64,
}

/// Evaluates the incomplete gamma integrals by quadrature.
pub fn lower_bound_pipeline() -> LowerBoundPipeline {
    let g = |k: f64, x: f64| lower_incomplete_gamma_quad(k, x).unwrap_or(f64::NAN);
    let ln2 = core::f64::consts::LN_2;
    let envelope_count_coeff = 2.0 * g(1.0, ln2);
    let envelope_length_coeff = 2.0 / SQRT_PI * g(1.5, ln2);
    let x = 1.0;
    let surplus_count_coeff = 2.0 * g(1.0, x) - g(2.0, x);
    let surplus_length_coeff = 2.0 / SQRT_PI * g(1.5, x) - g(2.5, x) / SQRT_PI;
    LowerBoundPipeline {
        envelope_x: ln2,
        envelope_count_coeff,
        envelope_length_coeff,
        x,
        surplus_count_coeff,
        surplus_length_coeff,
        lower_bound: 2.0 * surplus_length_coeff,
    }
}

/// Bounds on `cL` from bounds on `c`: `((√2-1) c_lo, √2 c_hi - 1/2)`.
pub fn cl_bounds(c_lower: f64, c_upper: f64) -> Result<(f64, f64), AnalyticsError> {
    if !(c_lower > 0.0 && c_lower <= c_upper) {
        return Err(AnalyticsError::Domain("need 0 < c_lower <= c_upper"));
    }
    let s = core::f64::consts::SQRT_2;
    Ok(((s - 1.0) * c_lower, s * c_upper - 0.5))
}
