use num_complex::Complex64;

use crate::equation::Family;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOutcome {
    pub z: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Newton on f(z) - a from `z0`.
///
/// Converged means the residual reached `tol` and the last step was below
/// 1e-13 (relative); stops early on a zero derivative.
pub fn solve<F: Family>(
    family: &F,
    a: Complex64,
    z0: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<NewtonOutcome> {
    let mut z = z0;
    let mut residual = (family.eval(z)? - a).norm();
    for it in 0..max_iter {
        let d = family.deriv(z)?;
        if d.norm() == 0.0 {
            break;
        }
        let step = (family.eval(z)? - a) / d;
        z -= step;
        residual = (family.eval(z)? - a).norm();
        if residual < tol && step.norm() <= 1e-13 * z.norm().max(1.0) {
            return Ok(NewtonOutcome {
                z,
                residual,
                iterations: it + 1,
                converged: true,
            });
        }
    }
    Ok(NewtonOutcome {
        z,
        residual,
        iterations: max_iter,
        converged: residual < tol,
    })
}
