//! Root localization in a rectangle: argument-principle counting, quadtree
//! subdivision down to single-root cells, then Newton polishing.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equation::{ExpAffine, Family};
use crate::error::{MonoError, Result};
use crate::newton;
use crate::roots::{LabeledRootSet, SEPARATION_FLOOR};

/// Roots closer than this are reported as a near-merge.
pub const NEAR_MERGE_DISTANCE: f64 = 1e-4;
/// Polished roots satisfy |f(z) - a| below this.
pub const POLISH_TOL: f64 = 1e-12;

const WINDING_RESIDUAL_MAX: f64 = 0.25;
/// Target absolute error of the winding integral, in winding units.
const INTEGRAL_TOL: f64 = 1e-4;
const MAX_PANEL_DEPTH: usize = 48;
const PANELS_PER_UNIT: f64 = 8.0;
/// Boundary samples whose Newton distance to a root is below this fraction of
/// the window's larger side count as "on the boundary".
const CLEARANCE_FRACTION: f64 = 1e-6;
const JITTER_STEP: f64 = 1e-3;
const JITTER_TRIES: usize = 10;
/// Cells holding two roots below this size are solved from the quadratic model.
const CLUSTER_CELL: f64 = 1e-3;
const MAX_DEPTH: usize = 64;
const SPLIT_OFFSETS: [f64; 6] = [0.0, 0.0131, -0.0217, 0.0347, -0.0521, 0.0789];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let finite = [re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(MonoError::OutOfRange {
                what: "window",
                detail: format!("[{re_min}, {re_max}] x [{im_min}, {im_max}]"),
            });
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    fn contains_with_margin(&self, z: Complex64, margin: f64) -> bool {
        z.re > self.re_min - margin
            && z.re < self.re_max + margin
            && z.im > self.im_min - margin
            && z.im < self.im_max + margin
    }

    pub fn expanded(&self, by: f64) -> Self {
        Self {
            re_min: self.re_min - by,
            re_max: self.re_max + by,
            im_min: self.im_min - by,
            im_max: self.im_max + by,
        }
    }

    /// Counterclockwise corners starting bottom-left.
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    /// Splits into two halves at `re = cut` (vertical line).
    pub fn split_re(&self, cut: f64) -> Option<(Self, Self)> {
        if cut <= self.re_min || cut >= self.re_max {
            return None;
        }
        Some((
            Self {
                re_max: cut,
                ..*self
            },
            Self {
                re_min: cut,
                ..*self
            },
        ))
    }

    /// Splits into two halves at `im = cut` (horizontal line).
    pub fn split_im(&self, cut: f64) -> Option<(Self, Self)> {
        if cut <= self.im_min || cut >= self.im_max {
            return None;
        }
        Some((
            Self {
                im_max: cut,
                ..*self
            },
            Self {
                im_min: cut,
                ..*self
            },
        ))
    }
}

struct Sample {
    g: Complex64,
    dist: f64,
}

fn sample<F: Family>(family: &F, a: Complex64, z: Complex64, clearance: f64) -> Result<Sample> {
    let g = family.eval(z)? - a;
    let d = family.deriv(z)?;
    let dist = if d.norm() > 0.0 {
        g.norm() / d.norm()
    } else {
        g.norm()
    };
    if dist <= clearance {
        return Err(MonoError::BoundaryTooClose { near: z, clearance });
    }
    // scale first: the textbook quotient squares |g|, which overflows long
    // before f itself does
    let s = g.norm();
    let v = (d / s) / (g / s);
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(MonoError::NonFinite(z));
    }
    Ok(Sample { g: v, dist })
}

struct Quadrature<'f, F> {
    family: &'f F,
    a: Complex64,
    clearance: f64,
    /// Allowed |trapezoid - refined trapezoid| per unit boundary length.
    tol_per_len: f64,
}

impl<F: Family> Quadrature<'_, F> {
    /// Trapezoid on [z0, z1], halved until the two-level estimates agree and
    /// no root is closer to the panel than its length.
    fn panel(
        &self,
        z0: Complex64,
        s0: &Sample,
        z1: Complex64,
        s1: &Sample,
        depth: usize,
    ) -> Result<Complex64> {
        let h = z1 - z0;
        let zm = z0 + 0.5 * h;
        let sm = sample(self.family, self.a, zm, self.clearance)?;
        let coarse = (s0.g + s1.g) * 0.5 * h;
        let fine = (s0.g + 2.0 * sm.g + s1.g) * 0.25 * h;
        let near_root = s0.dist.min(sm.dist).min(s1.dist) < 2.0 * h.norm();
        let settled = (fine - coarse).norm() <= self.tol_per_len * h.norm();
        if (near_root || !settled) && depth < MAX_PANEL_DEPTH {
            Ok(self.panel(z0, s0, zm, &sm, depth + 1)? + self.panel(zm, &sm, z1, s1, depth + 1)?)
        } else {
            Ok(fine)
        }
    }

    fn edge(&self, from: Complex64, to: Complex64) -> Result<Complex64> {
        let panels = ((to - from).norm() * PANELS_PER_UNIT).ceil().max(8.0) as usize;
        let delta = to - from;
        let mut total = Complex64::new(0.0, 0.0);
        let mut z0 = from;
        let mut s0 = sample(self.family, self.a, z0, self.clearance)?;
        for j in 1..=panels {
            let z1 = from + delta * (j as f64 / panels as f64);
            let s1 = sample(self.family, self.a, z1, self.clearance)?;
            total += self.panel(z0, &s0, z1, &s1, 0)?;
            z0 = z1;
            s0 = s1;
        }
        Ok(total)
    }
}

/// (1/2πi) ∮ f'/(f - a) dz over ∂w, before rounding.
fn winding_integral<F: Family>(family: &F, a: Complex64, w: &Window) -> Result<Complex64> {
    let perimeter = 2.0 * (w.width() + w.height());
    let quad = Quadrature {
        family,
        a,
        clearance: CLEARANCE_FRACTION * w.width().max(w.height()),
        tol_per_len: 2.0 * PI * INTEGRAL_TOL / perimeter,
    };
    let corners = w.corners();
    let mut integral = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        integral += quad.edge(corners[i], corners[(i + 1) % 4])?;
    }
    Ok(integral / Complex64::new(0.0, 2.0 * PI))
}

/// Winding count of f - a around ∂w without any window adjustment.
fn winding<F: Family>(family: &F, a: Complex64, w: &Window) -> Result<usize> {
    let value = winding_integral(family, a, w)?;
    let nearest = value.re.round();
    let residual = (value - Complex64::new(nearest, 0.0)).norm();
    if residual >= WINDING_RESIDUAL_MAX || nearest < 0.0 {
        return Err(MonoError::ResidualTooLarge {
            value: value.re,
            residual,
        });
    }
    Ok(nearest as usize)
}

fn winding_jittered<F: Family>(family: &F, a: Complex64, w: &Window) -> Result<(usize, Window)> {
    let mut last = None;
    for attempt in 0..=JITTER_TRIES {
        let trial = w.expanded(JITTER_STEP * attempt as f64);
        match winding(family, a, &trial) {
            Ok(n) => return Ok((n, trial)),
            Err(e @ (MonoError::BoundaryTooClose { .. } | MonoError::ResidualTooLarge { .. })) => {
                last = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Number of roots of f(z) = a inside `w`, counted with multiplicity.
///
/// If the boundary passes too close to a root the window is expanded in steps
/// of 1e-3, at most ten times; [`find_roots`] reports the window it settled on.
pub fn count_roots(a: Complex64, w: &Window) -> Result<usize> {
    count_roots_with(&ExpAffine, a, w)
}

pub fn count_roots_with<F: Family>(family: &F, a: Complex64, w: &Window) -> Result<usize> {
    winding_jittered(family, a, w).map(|(n, _)| n)
}

/// Two (or more) roots closer than [`NEAR_MERGE_DISTANCE`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearMerge {
    pub labels: Vec<usize>,
    pub separation: f64,
    /// One entry stands for a double root (the pair could not be separated).
    pub merged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSearch {
    pub roots: LabeledRootSet,
    /// Window actually integrated over (after any boundary jitter).
    pub window: Window,
    /// Roots counted with multiplicity.
    pub count: usize,
    pub near_merges: Vec<NearMerge>,
}

struct Found {
    z: Complex64,
    multiplicity: usize,
}

pub fn find_roots(a: Complex64, w: &Window) -> Result<RootSearch> {
    find_roots_with(&ExpAffine, a, w)
}

pub fn find_roots_with<F: Family>(family: &F, a: Complex64, w: &Window) -> Result<RootSearch> {
    let (count, used) = winding_jittered(family, a, w)?;
    let mut found = Vec::new();
    let mut stack = vec![(used, count, 0usize)];
    while let Some((cell, n, depth)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            let out = newton::solve(family, a, cell.center(), POLISH_TOL, 60)?;
            if out.converged && cell.contains_with_margin(out.z, 1e-12) {
                found.push(Found {
                    z: out.z,
                    multiplicity: 1,
                });
                continue;
            }
        }
        if n >= 2 && cell.width().max(cell.height()) <= CLUSTER_CELL {
            if let Ok(cluster) = resolve_cluster(family, a, &cell, n) {
                found.extend(cluster);
                continue;
            }
        }
        if depth >= MAX_DEPTH {
            return Err(MonoError::DepthExceeded {
                near: cell.center(),
                count: n,
                width: cell.width(),
            });
        }
        for (child, m) in subdivide(family, a, &cell, n)? {
            stack.push((child, m, depth + 1));
        }
    }

    let total: usize = found.iter().map(|f| f.multiplicity).sum();
    if total != count {
        return Err(MonoError::DepthExceeded {
            near: used.center(),
            count,
            width: used.width(),
        });
    }

    let merged_points: Vec<Complex64> = found
        .iter()
        .filter(|f| f.multiplicity > 1)
        .map(|f| f.z)
        .collect();
    let roots = LabeledRootSet::canonical(a, found.iter().map(|f| f.z).collect());
    let mut near_merges = Vec::new();
    for z in merged_points {
        let label = roots
            .roots
            .iter()
            .find(|r| r.z == z)
            .map(|r| r.label)
            .expect("merged root is in the set");
        near_merges.push(NearMerge {
            labels: vec![label],
            separation: 0.0,
            merged: true,
        });
    }
    for (i, p) in roots.roots.iter().enumerate() {
        for q in &roots.roots[i + 1..] {
            let d = (p.z - q.z).norm();
            if d <= SEPARATION_FLOOR {
                return Err(MonoError::DepthExceeded {
                    near: p.z,
                    count: 2,
                    width: d,
                });
            }
            if d < NEAR_MERGE_DISTANCE {
                near_merges.push(NearMerge {
                    labels: vec![p.label.min(q.label), p.label.max(q.label)],
                    separation: d,
                    merged: false,
                });
            }
        }
    }
    Ok(RootSearch {
        roots,
        window: used,
        count,
        near_merges,
    })
}

/// Quarters `cell`, shifting the cut lines off any root that sits on them.
fn subdivide<F: Family>(
    family: &F,
    a: Complex64,
    cell: &Window,
    n: usize,
) -> Result<Vec<(Window, usize)>> {
    let mut last_err = None;
    for (i, &dx) in SPLIT_OFFSETS.iter().enumerate() {
        let dy = SPLIT_OFFSETS[(i + 3) % SPLIT_OFFSETS.len()];
        let c = cell.center();
        let cut_re = c.re + dx * cell.width();
        let cut_im = c.im + dy * cell.height();
        let (left, right) = cell.split_re(cut_re).expect("cut inside cell");
        let quads = [
            left.split_im(cut_im).expect("cut inside cell"),
            right.split_im(cut_im).expect("cut inside cell"),
        ];
        let children = [quads[0].0, quads[0].1, quads[1].0, quads[1].1];
        let counts: Result<Vec<usize>> = children.iter().map(|q| winding(family, a, q)).collect();
        match counts {
            Ok(counts) if counts.iter().sum::<usize>() == n => {
                return Ok(children.into_iter().zip(counts).collect());
            }
            Ok(counts) => {
                last_err = Some(MonoError::ResidualTooLarge {
                    value: counts.iter().sum::<usize>() as f64,
                    residual: (counts.iter().sum::<usize>() as f64 - n as f64).abs(),
                })
            }
            Err(e @ (MonoError::BoundaryTooClose { .. } | MonoError::ResidualTooLarge { .. })) => {
                last_err = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one split attempted"))
}

/// Roots in a cell too small to split further: seeds from the quadratic model
/// about the nearby critical point, then Newton.
fn resolve_cluster<F: Family>(
    family: &F,
    a: Complex64,
    cell: &Window,
    n: usize,
) -> Result<Vec<Found>> {
    let fail = || MonoError::DepthExceeded {
        near: cell.center(),
        count: n,
        width: cell.width(),
    };
    if n != 2 {
        return Err(fail());
    }
    // critical point: Newton on f'
    let mut c = cell.center();
    for _ in 0..50 {
        let d2 = family.deriv2(c)?;
        if d2.norm() == 0.0 {
            return Err(fail());
        }
        let step = family.deriv(c)? / d2;
        c -= step;
        if step.norm() < 1e-16 * c.norm().max(1.0) {
            break;
        }
    }
    let offset = (2.0 * (a - family.eval(c)?) / family.deriv2(c)?).sqrt();
    let mut zs = Vec::with_capacity(2);
    for seed in [c + offset, c - offset] {
        let out = newton::solve(family, a, seed, POLISH_TOL, 60)?;
        let z = if out.residual < POLISH_TOL {
            out.z
        } else {
            seed
        };
        if (family.eval(z)? - a).norm() >= POLISH_TOL || !cell.contains_with_margin(z, 1e-9) {
            return Err(fail());
        }
        zs.push(z);
    }
    if (zs[0] - zs[1]).norm() <= SEPARATION_FLOOR {
        Ok(vec![Found {
            z: c,
            multiplicity: 2,
        }])
    } else {
        Ok(zs
            .into_iter()
            .map(|z| Found { z, multiplicity: 1 })
            .collect())
    }
}
