//! Multi-branch Lambert W and the closed-form root generator built on it.
//!
//! z + e^z = a is equivalent to (a - z) e^{a - z} = e^a, so the roots are
//! exactly z = a - W_k(e^a) over all branches k. This module deliberately
//! shares no iteration code with the argument-principle root finder so the two
//! can check each other.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equation::{checked_exp, eval};
use crate::error::{MonoError, Result};
use crate::roots::LabeledRootSet;

pub const MAX_BRANCH: i64 = 64;
const MAX_ITERATIONS: usize = 100;
const RESIDUAL_TOL: f64 = 1e-12;
/// Oracle roots must satisfy |f(z) - a| below this.
pub const ORACLE_ROOT_TOL: f64 = 1e-10;

/// Branch index k of W_k, |k| ≤ [`MAX_BRANCH`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchIndex(i64);

impl BranchIndex {
    pub fn new(k: i64) -> Result<Self> {
        if k.checked_abs().is_none_or(|m| m > MAX_BRANCH) {
            return Err(MonoError::OutOfRange {
                what: "Lambert W branch",
                detail: format!("|{k}| > {MAX_BRANCH}"),
            });
        }
        Ok(Self(k))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Series about the branch point -1/e in p = ±sqrt(2(e w + 1)).
fn branch_point_series(w: Complex64, sign: f64) -> Complex64 {
    let p = sign * (2.0 * (E * w + 1.0)).sqrt();
    -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
}

fn initial_guess(k: i64, w: Complex64) -> Complex64 {
    let near_branch_point = (w + 1.0 / E).norm() < 0.3;
    match k {
        0 if near_branch_point => branch_point_series(w, 1.0),
        0 if w.re > -1.0 && w.re < 1.5 && w.im.abs() < 1.0 && -2.5 * w.im.abs() - 0.2 < w.re => {
            // (3, 2) Padé approximant about 0
            w * horner(&[12.851_063_829_787_234, 12.340_425_531_914_894, 1.0], w)
                / horner(&[32.531_914_893_617_02, 14.340_425_531_914_894, 1.0], w)
        }
        -1 if near_branch_point && w.im >= 0.0 => branch_point_series(w, -1.0),
        1 if near_branch_point && w.im < 0.0 => branch_point_series(w, -1.0),
        _ => {
            let l1 = w.ln() + Complex64::new(0.0, 2.0 * PI * k as f64);
            l1 - l1.ln()
        }
    }
}

/// W_k(w): the solution of W e^W = w on branch k.
///
/// Branches follow the usual convention: the cut of W_0 is (-∞, -1/e], the
/// cut of every other branch is (-∞, 0), values on a cut are continuous from
/// above, and far from the origin im W_k lies near ((2k-1)π, (2k+1)π].
pub fn lambert_w(k: BranchIndex, w: Complex64) -> Result<Complex64> {
    let k = k.get();
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(MonoError::NonFinite(w));
    }
    if w.norm() == 0.0 {
        if k == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(MonoError::OutOfRange {
            what: "Lambert W argument",
            detail: format!("W_{k} is singular at 0"),
        });
    }

    let scale = w.norm().max(1.0);
    let mut x = initial_guess(k, w);
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let ex = x.exp();
        let f = x * ex - w;
        residual = f.norm();
        let x1 = x + 1.0;
        let denom = ex * x1 - (x + 2.0) * f / (2.0 * x1);
        if denom.norm() == 0.0 || !denom.re.is_finite() || !denom.im.is_finite() {
            break;
        }
        let step = f / denom;
        x -= step;
        if step.norm() <= 1e-15 * x.norm().max(1.0) {
            residual = (x * x.exp() - w).norm();
            break;
        }
    }
    if residual <= RESIDUAL_TOL * scale && x.re.is_finite() && x.im.is_finite() {
        Ok(x)
    } else {
        Err(MonoError::NonConvergence {
            k,
            last: x,
            residual,
        })
    }
}

/// Roots a - W_k(e^a) for k in `ks`, paired with their branch index.
pub fn oracle_roots_by_branch(
    a: Complex64,
    ks: impl IntoIterator<Item = i64>,
) -> Result<Vec<(i64, Complex64)>> {
    let w = checked_exp(a)?;
    ks.into_iter()
        .map(|k| {
            let big_w = lambert_w(BranchIndex::new(k)?, w)?;
            let z = a - big_w;
            let residual = (eval(z)? - a).norm();
            if residual >= ORACLE_ROOT_TOL {
                return Err(MonoError::OracleResidual { k, residual });
            }
            Ok((k, z))
        })
        .collect()
}

/// Canonically labeled oracle roots of z + e^z = a for branches `ks`.
pub fn oracle_roots(a: Complex64, ks: impl IntoIterator<Item = i64>) -> Result<LabeledRootSet> {
    let zs = oracle_roots_by_branch(a, ks)?
        .into_iter()
        .map(|(_, z)| z)
        .collect();
    Ok(LabeledRootSet::canonical(a, zs))
}
