//! The equation family f(z) = z + e^z and its link back to x^x = a.
//!
//! Taking logarithms twice turns x^x = a into ln x + ln ln x = ln ln a, and the
//! substitution z = ln ln x, b = ln ln a gives z + e^z = b. The transformed
//! parameter is written `a` everywhere else in this crate; the original x^x
//! parameter is called `a_orig` where it matters.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MonoError, Result};

/// Largest real part for which `exp` stays finite in binary64.
pub const MAX_EXP_RE: f64 = 709.782_712_893_384;

/// Default bound on |n| accepted by [`critical_point`].
pub const MAX_CRITICAL_INDEX: i64 = 1_000_000;

/// An analytic one-parameter equation family f(z) = a.
///
/// Only [`ExpAffine`] ships; root finding and tracking are written against
/// this trait so another entire function can be dropped in.
pub trait Family {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    fn deriv(&self, z: Complex64) -> Result<Complex64>;
    fn deriv2(&self, z: Complex64) -> Result<Complex64>;
    /// Critical value closest to `a`, with its index.
    fn nearest_critical_value(&self, a: Complex64) -> (i64, Complex64);
}

/// f(z) = z + e^z.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpAffine;

pub(crate) fn checked_exp(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(MonoError::NonFinite(z));
    }
    if z.re > MAX_EXP_RE {
        return Err(MonoError::Overflow { z });
    }
    let e = z.exp();
    if !e.re.is_finite() || !e.im.is_finite() {
        return Err(MonoError::Overflow { z });
    }
    Ok(e)
}

impl Family for ExpAffine {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = z + checked_exp(z)?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(MonoError::Overflow { z });
        }
        Ok(v)
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 + checked_exp(z)?)
    }

    fn deriv2(&self, z: Complex64) -> Result<Complex64> {
        checked_exp(z)
    }

    fn nearest_critical_value(&self, a: Complex64) -> (i64, Complex64) {
        // a_n = -1 + (2n+1)πi; solve (2n+1)π ≈ im(a)
        let n = ((a.im / PI - 1.0) / 2.0).round();
        let n = n.clamp(-(MAX_CRITICAL_INDEX as f64), MAX_CRITICAL_INDEX as f64) as i64;
        (n, critical_value(n))
    }
}

pub fn eval(z: Complex64) -> Result<Complex64> {
    ExpAffine.eval(z)
}

pub fn deriv(z: Complex64) -> Result<Complex64> {
    ExpAffine.deriv(z)
}

pub fn deriv2(z: Complex64) -> Result<Complex64> {
    ExpAffine.deriv2(z)
}

/// A zero of f'(z) = 1 + e^z together with its critical value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub n: i64,
    pub z: Complex64,
    pub a: Complex64,
    pub order: u32,
}

impl CriticalPoint {
    /// Imaginary coordinate y_n = (2n+1)π shared by z_n and a_n.
    pub fn height(&self) -> f64 {
        self.z.im
    }
}

/// (2n+1)π.
pub fn critical_height(n: i64) -> f64 {
    (2 * n + 1) as f64 * PI
}

fn critical_value(n: i64) -> Complex64 {
    Complex64::new(-1.0, critical_height(n))
}

/// The n-th critical point z_n = (2n+1)πi with a_n = z_n - 1.
pub fn critical_point(n: i64) -> Result<CriticalPoint> {
    critical_point_bounded(n, MAX_CRITICAL_INDEX)
}

pub fn critical_point_bounded(n: i64, max_index: i64) -> Result<CriticalPoint> {
    if n.checked_abs().is_none_or(|m| m > max_index) {
        return Err(MonoError::OutOfRange {
            what: "critical index",
            detail: format!("|{n}| > {max_index}"),
        });
    }
    let y = critical_height(n);
    let z = Complex64::new(0.0, y);
    // first order: f'' = e^z has modulus 1 at every z_n
    let curvature = deriv2(z)?;
    debug_assert!((curvature.norm() - 1.0).abs() < 1e-12);
    if curvature.norm() == 0.0 {
        return Err(MonoError::OutOfRange {
            what: "critical order",
            detail: format!("f''(z_{n}) vanished"),
        });
    }
    Ok(CriticalPoint {
        n,
        z,
        a: Complex64::new(-1.0, y),
        order: 1,
    })
}

static REAL_ROOT: OnceLock<f64> = OnceLock::new();

/// The unique real solution of x + e^x = 0.
///
/// f is strictly increasing on the real line (f' = 1 + e^x > 0), so the sign
/// change on [-1, 0] brackets the only real root.
pub fn real_root() -> Complex64 {
    Complex64::new(*REAL_ROOT.get_or_init(compute_real_root), 0.0)
}

fn compute_real_root() -> f64 {
    let g = |x: f64| x + x.exp();
    let (mut lo, mut hi) = (-1.0_f64, 0.0_f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let step = g(x) / (1.0 + x.exp());
        x -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    x
}

fn double_log(w: Complex64) -> Result<Complex64> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(MonoError::NonFinite(w));
    }
    if w == Complex64::new(0.0, 0.0) || w == Complex64::new(1.0, 0.0) {
        return Err(MonoError::SingularLog(w));
    }
    Ok(w.ln().ln())
}

/// z = ln ln x, principal branch for both logarithms.
pub fn to_z(x: Complex64) -> Result<Complex64> {
    double_log(x)
}

/// x = e^{e^z}; a left inverse of [`to_z`] wherever the principal branches agree.
pub fn to_x(z: Complex64) -> Result<Complex64> {
    let inner = checked_exp(z)?;
    checked_exp(inner)
}

/// Transformed parameter b = ln ln a_orig (principal branches).
pub fn to_b(a_orig: Complex64) -> Result<Complex64> {
    double_log(a_orig)
}
