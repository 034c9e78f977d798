//! Transport of a labeled root bundle along a parameter path.
//!
//! Each step predicts with dz = da / f'(z) and corrects with Newton on
//! f(z) - a. Step size is bounded so that every predicted displacement stays
//! below a fixed fraction of both the bundle's minimum pairwise distance and
//! the root's own basin estimate |f'| / |f''| (half the distance to the
//! partner root near a first-order critical point, whether or not the partner
//! is tracked).

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equation::{ExpAffine, Family};
use crate::error::{MonoError, Result};
use crate::path::ParamPath;
use crate::roots::{LabeledRoot, LabeledRootSet, SEPARATION_FLOOR};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrackConfig {
    pub corrector_tol: f64,
    /// Largest step |Δa| in the parameter plane.
    pub max_step: f64,
    pub min_step: f64,
    pub collision_fraction: f64,
    pub near_critical_radius: f64,
    pub max_corrector_iterations: usize,
    pub record_trajectory: bool,
}

impl Default for TrackConfig {
    fn default() -> Self {
        Self {
            corrector_tol: 1e-12,
            max_step: 0.05,
            min_step: 1e-9,
            collision_fraction: 1.0 / 3.0,
            near_critical_radius: 1e-3,
            max_corrector_iterations: 8,
            record_trajectory: false,
        }
    }
}

impl TrackConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| {
            Err(MonoError::OutOfRange {
                what: "track config",
                detail,
            })
        };
        if self.corrector_tol.is_nan() || self.corrector_tol <= 0.0 {
            return bad(format!("corrector_tol = {}", self.corrector_tol));
        }
        if !(self.min_step > 0.0 && self.min_step < self.max_step) || !self.max_step.is_finite() {
            return bad(format!(
                "need 0 < min_step < max_step, got {} and {}",
                self.min_step, self.max_step
            ));
        }
        if !(self.collision_fraction > 0.0 && self.collision_fraction < 0.5) {
            return bad(format!("collision_fraction = {}", self.collision_fraction));
        }
        if self.near_critical_radius.is_nan() || self.near_critical_radius < 0.0 {
            return bad(format!(
                "near_critical_radius = {}",
                self.near_critical_radius
            ));
        }
        if self.max_corrector_iterations == 0 {
            return bad("max_corrector_iterations = 0".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub arc_param: f64,
    pub label: usize,
    pub z: Complex64,
    pub a: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub arc_param: f64,
    /// Parameter value the step started from.
    pub a: Complex64,
    pub step: f64,
    pub min_pairwise_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrackReport {
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    /// Largest |f(z) - a| over every root after every accepted step.
    pub max_residual: f64,
    pub min_pairwise_distance: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trajectory: Vec<TrajectorySample>,
}

impl TrackReport {
    /// CSV dump: arc_param,label,re_z,im_z,re_a,im_a,residual.
    pub fn write_trajectory_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "arc_param,label,re_z,im_z,re_a,im_a,residual")?;
        for s in &self.trajectory {
            writeln!(
                out,
                "{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                s.arc_param, s.label, s.z.re, s.z.im, s.a.re, s.a.im, s.residual
            )?;
        }
        Ok(())
    }
}

/// First-order (Davidenko) predictor: dz = da / f'(z).
pub fn predict<F: Family>(family: &F, z: Complex64, da: Complex64) -> Result<Complex64> {
    Ok(z + da / family.deriv(z)?)
}

fn min_pairwise(zs: &[Complex64]) -> (f64, usize, usize) {
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let d = (zs[i] - zs[j]).norm();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

/// How far each root may move in one step.
fn displacement_limits<F: Family>(
    family: &F,
    zs: &[Complex64],
    cfg: &TrackConfig,
) -> Result<Vec<f64>> {
    let (d_min, _, _) = min_pairwise(zs);
    zs.iter()
        .map(|&z| {
            let d1 = family.deriv(z)?.norm();
            let d2 = family.deriv2(z)?.norm();
            let basin = if d2 > 0.0 { d1 / d2 } else { f64::INFINITY };
            Ok(cfg.collision_fraction * d_min.min(basin))
        })
        .collect()
}

enum Attempt {
    Accepted(Vec<Complex64>, f64),
    /// Predicted displacement too large; retry with the suggested |Δa|.
    Shrink(f64),
    /// Corrector failed or wandered; halve.
    Halve,
}

fn attempt<F: Family>(
    family: &F,
    zs: &[Complex64],
    a_new: Complex64,
    da: Complex64,
    cfg: &TrackConfig,
) -> Result<Attempt> {
    let limits = displacement_limits(family, zs, cfg)?;
    let mut predicted = Vec::with_capacity(zs.len());
    let mut worst_ratio: f64 = 0.0;
    for (&z, &limit) in zs.iter().zip(&limits) {
        let p = predict(family, z, da)?;
        worst_ratio = worst_ratio.max((p - z).norm() / limit);
        predicted.push(p);
    }
    if worst_ratio > 1.0 {
        return Ok(Attempt::Shrink(0.9 * da.norm() / worst_ratio));
    }
    let mut corrected = Vec::with_capacity(zs.len());
    let mut worst_residual: f64 = 0.0;
    for ((&p, &z), &limit) in predicted.iter().zip(zs).zip(&limits) {
        let mut w = p;
        let mut residual = (family.eval(w)? - a_new).norm();
        let mut iterations = 0;
        while residual >= cfg.corrector_tol && iterations < cfg.max_corrector_iterations {
            let d = family.deriv(w)?;
            if d.norm() == 0.0 {
                break;
            }
            w -= (family.eval(w)? - a_new) / d;
            residual = (family.eval(w)? - a_new).norm();
            iterations += 1;
        }
        // must stay in the basin the predictor was allowed to reach
        if residual >= cfg.corrector_tol || (w - z).norm() > 1.5 * limit {
            return Ok(Attempt::Halve);
        }
        worst_residual = worst_residual.max(residual);
        corrected.push(w);
    }
    Ok(Attempt::Accepted(corrected, worst_residual))
}

/// Accepted step along a straight parameter direction.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub step: f64,
    pub roots: Vec<Complex64>,
    pub rejected: usize,
}

/// Finds an acceptable step from `a` in the direction of `da_proposed`:
/// at most `max_step` and `|da_proposed|`, shrunk until every predicted
/// displacement respects the collision guard and the corrector converges.
pub fn step_control<F: Family>(
    family: &F,
    roots: &[Complex64],
    a: Complex64,
    da_proposed: Complex64,
    cfg: &TrackConfig,
) -> Result<StepOutcome> {
    cfg.validate()?;
    let (d_min, i, j) = min_pairwise(roots);
    if d_min <= SEPARATION_FLOOR {
        return Err(MonoError::NearMerge {
            first: i + 1,
            second: j + 1,
            distance: d_min,
        });
    }
    let len = da_proposed.norm();
    if len == 0.0 {
        return Ok(StepOutcome {
            step: 0.0,
            roots: roots.to_vec(),
            rejected: 0,
        });
    }
    let dir = da_proposed / len;
    let mut h = len.min(cfg.max_step);
    let mut rejected = 0;
    loop {
        if h < cfg.min_step {
            return Err(MonoError::StepUnderflow {
                arc_param: 0.0,
                a,
                nearest_n: family.nearest_critical_value(a).0,
            });
        }
        let da = dir * h;
        match attempt(family, roots, a + da, da, cfg)? {
            Attempt::Accepted(zs, _) => {
                return Ok(StepOutcome {
                    step: h,
                    roots: zs,
                    rejected,
                })
            }
            Attempt::Shrink(next) => h = next,
            Attempt::Halve => h *= 0.5,
        }
        rejected += 1;
    }
}

pub fn track_bundle(
    start: &LabeledRootSet,
    path: &ParamPath,
    cfg: &TrackConfig,
) -> Result<(LabeledRootSet, TrackReport)> {
    track_bundle_with(&ExpAffine, start, path, cfg)
}

/// Carries every root of `start` along `path`; labels follow continuity.
pub fn track_bundle_with<F: Family>(
    family: &F,
    start: &LabeledRootSet,
    path: &ParamPath,
    cfg: &TrackConfig,
) -> Result<(LabeledRootSet, TrackReport)> {
    cfg.validate()?;
    let gap = (path.start() - start.a).norm();
    if gap > 1e-12 * start.a.norm().max(1.0) {
        return Err(MonoError::BadStart(format!(
            "path starts at {} but roots solve a = {}",
            path.start(),
            start.a
        )));
    }
    let labels: Vec<usize> = start.roots.iter().map(|r| r.label).collect();
    let mut zs: Vec<Complex64> = start.positions();
    for (&z, &label) in zs.iter().zip(&labels) {
        let residual = (family.eval(z)? - start.a).norm();
        if residual >= 10.0 * cfg.corrector_tol {
            return Err(MonoError::BadStart(format!(
                "root {label} has residual {residual:e}"
            )));
        }
    }
    check_separation(&zs, &labels, cfg.near_critical_radius)?;

    let mut report = TrackReport {
        min_pairwise_distance: min_pairwise(&zs).0,
        ..Default::default()
    };
    let mut a_cur = path.start();
    let record =
        |report: &mut TrackReport, tau: f64, zs: &[Complex64], a: Complex64| -> Result<()> {
            for (&z, &label) in zs.iter().zip(&labels) {
                report.trajectory.push(TrajectorySample {
                    arc_param: tau,
                    label,
                    z,
                    a,
                    residual: (family.eval(z)? - a).norm(),
                });
            }
            Ok(())
        };
    if cfg.record_trajectory {
        record(&mut report, 0.0, &zs, a_cur)?;
    }

    let mut h = cfg.max_step;
    for (index, seg) in path.segments.iter().enumerate() {
        let length = seg.length_bound();
        if length == 0.0 {
            continue;
        }
        let mut u = 0.0_f64;
        while u < 1.0 {
            let speed = seg.derivative(u).norm().max(1e-6 * length);
            let mut du = (h / speed).min(1.0 - u);
            let (a_new, da) = loop {
                let a_new = if u + du >= 1.0 {
                    seg.end()
                } else {
                    seg.eval(u + du)
                };
                let da = a_new - a_cur;
                if da.norm() > cfg.max_step * 1.0001 {
                    du *= 0.95 * cfg.max_step / da.norm();
                    continue;
                }
                break (a_new, da);
            };
            let arc_param = index as f64 + u;
            if da.norm() < cfg.min_step && u + du < 1.0 {
                return Err(MonoError::StepUnderflow {
                    arc_param,
                    a: a_cur,
                    nearest_n: family.nearest_critical_value(a_cur).0,
                });
            }
            match attempt(family, &zs, a_new, da, cfg)? {
                Attempt::Accepted(next, residual) => {
                    let (d_min, i, j) = min_pairwise(&next);
                    if d_min <= SEPARATION_FLOOR {
                        return Err(MonoError::CollisionAmbiguity {
                            first: labels[i],
                            second: labels[j],
                            arc_param,
                            distance: d_min,
                        });
                    }
                    if cfg.record_trajectory {
                        report.steps.push(StepRecord {
                            arc_param,
                            a: a_cur,
                            step: da.norm(),
                            min_pairwise_distance: min_pairwise(&zs).0,
                        });
                    }
                    zs = next;
                    a_cur = a_new;
                    u = if u + du >= 1.0 { 1.0 } else { u + du };
                    report.steps_accepted += 1;
                    report.max_residual = report.max_residual.max(residual);
                    report.min_pairwise_distance = report.min_pairwise_distance.min(d_min);
                    if cfg.record_trajectory {
                        record(&mut report, index as f64 + u, &zs, a_cur)?;
                    }
                    h = (1.5 * h.max(da.norm())).min(cfg.max_step);
                }
                Attempt::Shrink(next) => {
                    report.steps_rejected += 1;
                    h = next;
                    if h < cfg.min_step {
                        return Err(MonoError::StepUnderflow {
                            arc_param,
                            a: a_cur,
                            nearest_n: family.nearest_critical_value(a_cur).0,
                        });
                    }
                }
                Attempt::Halve => {
                    report.steps_rejected += 1;
                    h = 0.5 * da.norm();
                    if h < cfg.min_step {
                        return Err(MonoError::StepUnderflow {
                            arc_param,
                            a: a_cur,
                            nearest_n: family.nearest_critical_value(a_cur).0,
                        });
                    }
                }
            }
        }
    }

    check_separation(&zs, &labels, cfg.near_critical_radius)?;
    let end = LabeledRootSet {
        a: path.end(),
        roots: zs
            .into_iter()
            .zip(labels)
            .map(|(z, label)| LabeledRoot { label, z })
            .collect(),
    };
    Ok((end, report))
}

fn check_separation(zs: &[Complex64], labels: &[usize], radius: f64) -> Result<()> {
    let (d, i, j) = min_pairwise(zs);
    if d <= radius {
        return Err(MonoError::NearMerge {
            first: labels[i],
            second: labels[j],
            distance: d,
        });
    }
    Ok(())
}
