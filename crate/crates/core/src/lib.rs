//! Numerical monodromy of the roots of z + e^z = a.
//!
//! The critical values of f(z) = z + e^z are a_n = -1 + (2n+1)πi. Carrying
//! the roots of f(z) = a around a loop that encloses one a_n swaps exactly
//! two of them, and loops around a_{-1}, ..., a_{N-2} swap the real root with
//! every other root of a window in turn, generating the full symmetric group.
//!
//! Modules, bottom up: [`equation`] and [`lambert`] (closed-form oracle),
//! [`window`] (argument-principle root finding), [`path`] (parameter-plane
//! loops), [`tracker`] (predictor-corrector continuation), [`monodromy`]
//! (permutations and the groups they generate), and [`commands`] /
//! [`config`] / [`figures`] behind the `mono` binary.

pub mod commands;
pub mod config;
pub mod equation;
pub mod error;
pub mod figures;
pub mod lambert;
pub mod monodromy;
mod newton;
pub mod path;
pub mod roots;
mod svg;
pub mod tracker;
pub mod window;
