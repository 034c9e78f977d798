//! Parameter-plane paths.
//!
//! A [`ParamPath`] is a chain of pieces, each mapping u ∈ [0, 1] into the
//! a-plane. Besides lines and circular arcs there are two closed-form traces:
//! the image of the vertical root path z = x + it, and the image of the
//! horizontal root path z = s + iy_n, which is s - e^s + iy_n because
//! e^{iy_n} = -1.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equation::{critical_height, critical_point, real_root};
use crate::error::{MonoError, Result};

/// Consecutive pieces must meet, and closed paths must close, within this.
pub const JOIN_TOL: f64 = 1e-12;
/// Loop radii accepted by [`loop_around`]: critical values are 2π apart.
pub const MIN_LOOP_RADIUS: f64 = 0.1;
pub const DEFAULT_RHO: f64 = 0.5;
/// Real part of the keyhole corridor, one unit left of the critical line
/// (pushed further left for loops wider than 0.5, see [`keyhole_corridor`]).
pub const KEYHOLE_CORRIDOR_RE: f64 = -2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// center + radius·e^{iθ}, θ from `theta0` to `theta1` (counterclockwise
    /// when `theta1 > theta0`).
    Arc {
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    /// x(1 - cos t) + i(t - x sin t) for t from `t0` to `t1`, where x is the
    /// real root; the image of z = x + it.
    VerticalTrace {
        x: f64,
        t0: f64,
        t1: f64,
    },
    /// s - e^s + iy for s from `s0` to `s1`; the image of z = s + iy when
    /// e^{iy} = -1.
    HorizontalTrace {
        y: f64,
        s0: f64,
        s1: f64,
    },
}

impl Segment {
    pub fn eval(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * u,
            Segment::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let theta = theta0 + (theta1 - theta0) * u;
                center + Complex64::from_polar(radius, theta)
            }
            Segment::VerticalTrace { x, t0, t1 } => {
                let t = t0 + (t1 - t0) * u;
                Complex64::new(x * (1.0 - t.cos()), t - x * t.sin())
            }
            Segment::HorizontalTrace { y, s0, s1 } => {
                let s = s0 + (s1 - s0) * u;
                Complex64::new(s - s.exp(), y)
            }
        }
    }

    /// da/du.
    pub fn derivative(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => {
                let theta = theta0 + (theta1 - theta0) * u;
                Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, theta) * (theta1 - theta0)
            }
            Segment::VerticalTrace { x, t0, t1 } => {
                let t = t0 + (t1 - t0) * u;
                Complex64::new(x * t.sin(), 1.0 - x * t.cos()) * (t1 - t0)
            }
            Segment::HorizontalTrace { s0, s1, .. } => {
                let s = s0 + (s1 - s0) * u;
                Complex64::new((1.0 - s.exp()) * (s1 - s0), 0.0)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.eval(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.eval(1.0)
    }

    /// Upper bound on the length of the piece.
    pub fn length_bound(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => radius * (theta1 - theta0).abs(),
            // |da/dt| = |1 + e^{x+it}| ≤ 1 + e^x
            Segment::VerticalTrace { x, t0, t1 } => (1.0 + x.exp()) * (t1 - t0).abs(),
            Segment::HorizontalTrace { s0, s1, .. } => (1.0 + s0.max(s1).exp()) * (s1 - s0).abs(),
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => Segment::Arc {
                center,
                radius,
                theta0: theta1,
                theta1: theta0,
            },
            Segment::VerticalTrace { x, t0, t1 } => Segment::VerticalTrace { x, t0: t1, t1: t0 },
            Segment::HorizontalTrace { y, s0, s1 } => {
                Segment::HorizontalTrace { y, s0: s1, s1: s0 }
            }
        }
    }

    /// Mirror image across the real axis.
    pub fn conjugated(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line {
                from: from.conj(),
                to: to.conj(),
            },
            Segment::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => Segment::Arc {
                center: center.conj(),
                radius,
                theta0: -theta0,
                theta1: -theta1,
            },
            // conj a(t) = a(-t)
            Segment::VerticalTrace { x, t0, t1 } => Segment::VerticalTrace {
                x,
                t0: -t0,
                t1: -t1,
            },
            Segment::HorizontalTrace { y, s0, s1 } => Segment::HorizontalTrace { y: -y, s0, s1 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamPath {
    pub segments: Vec<Segment>,
    pub closed: bool,
}

impl ParamPath {
    /// Builds a path, checking the pieces join; `closed` is derived.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(MonoError::OutOfRange {
                what: "path",
                detail: "no segments".into(),
            });
        }
        for pair in segments.windows(2) {
            let gap = (pair[0].end() - pair[1].start()).norm();
            if gap > JOIN_TOL {
                return Err(MonoError::PathMismatch { gap });
            }
        }
        let closed = (segments[segments.len() - 1].end() - segments[0].start()).norm() <= JOIN_TOL;
        Ok(Self { segments, closed })
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments[self.segments.len() - 1].end()
    }

    /// Evaluates at global parameter τ ∈ [0, number of segments].
    pub fn eval(&self, tau: f64) -> Complex64 {
        let n = self.segments.len();
        let tau = tau.clamp(0.0, n as f64);
        let i = (tau.floor() as usize).min(n - 1);
        self.segments[i].eval(tau - i as f64)
    }

    pub fn length_bound(&self) -> f64 {
        self.segments.iter().map(Segment::length_bound).sum()
    }

    pub fn reverse(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            closed: self.closed,
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            segments: self.segments.iter().map(Segment::conjugated).collect(),
            closed: self.closed,
        }
    }

    /// `self` followed by `other`; the end of `self` must be the start of `other`.
    pub fn concat(&self, other: &ParamPath) -> Result<Self> {
        let gap = (self.end() - other.start()).norm();
        if gap > JOIN_TOL {
            return Err(MonoError::PathMismatch { gap });
        }
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Self::new(segments)
    }

    /// Points along the path, consecutive spacing ≤ `max_step`, every segment
    /// endpoint included once.
    pub fn sample(&self, max_step: f64) -> Result<Vec<Complex64>> {
        if max_step.is_nan() || max_step <= 0.0 {
            return Err(MonoError::OutOfRange {
                what: "max_step",
                detail: format!("{max_step}"),
            });
        }
        let mut out = vec![self.start()];
        for seg in &self.segments {
            let pieces = (seg.length_bound() / max_step).ceil().max(1.0) as usize;
            for j in 1..=pieces {
                out.push(seg.eval(j as f64 / pieces as f64));
            }
        }
        if self.closed {
            let first = out[0];
            *out.last_mut().expect("non-empty") = first;
        }
        Ok(out)
    }

    /// Discrete winding number about `p` from the sampled polyline.
    pub fn winding_about(&self, p: Complex64, max_step: f64) -> Result<i64> {
        let pts = self.sample(max_step)?;
        let mut total = 0.0;
        for w in pts.windows(2) {
            total += ((w[1] - p) / (w[0] - p)).arg();
        }
        Ok((total / (2.0 * PI)).round() as i64)
    }

    pub fn min_distance_to(&self, p: Complex64, max_step: f64) -> Result<f64> {
        Ok(self
            .sample(max_step)?
            .into_iter()
            .map(|z| (z - p).norm())
            .fold(f64::INFINITY, f64::min))
    }

    /// For every critical value whose height lies within the path's vertical
    /// extent (plus one lattice spacing): index, closest approach, winding.
    pub fn critical_clearance(&self, max_step: f64) -> Result<Vec<CriticalClearance>> {
        let pts = self.sample(max_step)?;
        let (lo, hi) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), z| {
                (l.min(z.im), h.max(z.im))
            });
        let n_lo = ((lo / PI - 1.0) / 2.0).floor() as i64 - 1;
        let n_hi = ((hi / PI - 1.0) / 2.0).ceil() as i64 + 1;
        let mut out = Vec::new();
        for n in n_lo..=n_hi {
            let a_n = critical_point(n)?.a;
            let distance = pts
                .iter()
                .map(|z| (z - a_n).norm())
                .fold(f64::INFINITY, f64::min);
            let winding = if self.closed {
                self.winding_about(a_n, max_step)?
            } else {
                0
            };
            out.push(CriticalClearance {
                n,
                distance,
                winding,
            });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalClearance {
    pub n: i64,
    pub distance: f64,
    pub winding: i64,
}

fn require_upper(n: i64) -> Result<()> {
    if n < 0 {
        return Err(MonoError::OutOfRange {
            what: "critical index",
            detail: format!("{n} < 0; use the conjugate path"),
        });
    }
    Ok(())
}

fn require_rho(rho: f64) -> Result<()> {
    if !(MIN_LOOP_RADIUS..PI).contains(&rho) {
        return Err(MonoError::OutOfRange {
            what: "loop radius",
            detail: format!("{rho} not in [{MIN_LOOP_RADIUS}, π)"),
        });
    }
    Ok(())
}

/// Image of z(t) = x + it, t ∈ [0, y_n]: from 0 to 2x + iy_n.
pub fn vertical_image(n: i64) -> Result<ParamPath> {
    require_upper(n)?;
    ParamPath::new(vec![Segment::VerticalTrace {
        x: real_root().re,
        t0: 0.0,
        t1: critical_height(n),
    }])
}

/// Image of z(s) = s + iy_n for s from `s_start` to `s_end` (both ≤ 0).
///
/// At s = x (the real root) this starts exactly where [`vertical_image`] ends.
pub fn horizontal_image(n: i64, s_start: f64, s_end: f64) -> Result<ParamPath> {
    critical_point(n)?;
    for s in [s_start, s_end] {
        if s.is_nan() || s > 0.0 {
            return Err(MonoError::OutOfRange {
                what: "horizontal parameter",
                detail: format!("s = {s} must be ≤ 0"),
            });
        }
    }
    ParamPath::new(vec![Segment::HorizontalTrace {
        y: critical_height(n),
        s0: s_start,
        s1: s_end,
    }])
}

/// The s < 0 with s - e^s = -1 - rho: where the horizontal trace meets the
/// circle of radius rho around a_n.
pub fn loop_entry_parameter(rho: f64) -> f64 {
    let target = -1.0 - rho;
    let g = |s: f64| s - s.exp() - target;
    let (mut lo, mut hi) = (target - 1.0, 0.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * lo.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `turns` circles of radius `rho` around a_n, counterclockwise for positive
/// turns, starting and ending at a_n - rho.
pub fn loop_around(n: i64, rho: f64, turns: i64) -> Result<ParamPath> {
    require_rho(rho)?;
    let center = critical_point(n)?.a;
    let mut path = ParamPath::new(vec![Segment::Arc {
        center,
        radius: rho,
        theta0: PI,
        theta1: PI + 2.0 * PI * turns as f64,
    }])?;
    path.closed = true;
    Ok(path)
}

fn composite_upper(n: i64, rho: f64, turns: i64) -> Result<ParamPath> {
    let x = real_root().re;
    let up = vertical_image(n)?;
    let across = horizontal_image(n, x, loop_entry_parameter(rho))?;
    let approach = up.concat(&across)?;
    approach
        .concat(&loop_around(n, rho, turns)?)?
        .concat(&approach.reverse())
}

/// The path a follows as the real root climbs to z_n and swaps with its
/// partner: vertical trace, horizontal trace, one loop around a_n, then back.
///
/// For n < 0 the mirror image of the construction for -n-1 is used, with
/// the loop orientation flipped so it is still counterclockwise.
pub fn composite_path(n: i64, rho: f64) -> Result<ParamPath> {
    require_rho(rho)?;
    if n >= 0 {
        composite_upper(n, rho, 1)
    } else {
        Ok(composite_upper(-n - 1, rho, -1)?.conjugate())
    }
}

/// Outbound half of a keyhole: 0 → corridor → height y_n → circle of radius
/// `rho` around a_n. Returns the path and the angle at which it meets the
/// circle.
pub fn keyhole_approach_with_corridor(
    n: i64,
    rho: f64,
    corridor_re: f64,
) -> Result<(ParamPath, f64)> {
    require_rho(rho)?;
    if (corridor_re + 1.0).abs() <= rho || !corridor_re.is_finite() {
        return Err(MonoError::OutOfRange {
            what: "keyhole corridor",
            detail: format!("re = {corridor_re} is inside the loop of radius {rho}"),
        });
    }
    let cp = critical_point(n)?;
    let origin = Complex64::new(0.0, 0.0);
    let foot = Complex64::new(corridor_re, 0.0);
    let top = Complex64::new(corridor_re, cp.height());
    let (entry, theta) = if corridor_re < -1.0 {
        (cp.a - rho, PI)
    } else {
        (cp.a + rho, 0.0)
    };
    let mut segments = Vec::new();
    if corridor_re != 0.0 {
        segments.push(Segment::Line {
            from: origin,
            to: foot,
        });
    }
    segments.push(Segment::Line {
        from: foot,
        to: top,
    });
    segments.push(Segment::Line {
        from: top,
        to: entry,
    });
    Ok((ParamPath::new(segments)?, theta))
}

/// Corridor used by [`keyhole_loop`]: re = -2, or half a unit outside the
/// circle when the loop is wider than that.
pub fn keyhole_corridor(rho: f64) -> f64 {
    KEYHOLE_CORRIDOR_RE.min(-1.5 - rho)
}

pub fn keyhole_approach(n: i64, rho: f64) -> Result<ParamPath> {
    Ok(keyhole_approach_with_corridor(n, rho, keyhole_corridor(rho))?.0)
}

/// A simple loop around a_n based at 0: corridor out, `turns` circles, corridor back.
pub fn keyhole_loop_with_corridor(
    n: i64,
    rho: f64,
    turns: i64,
    corridor_re: f64,
) -> Result<ParamPath> {
    let (approach, theta) = keyhole_approach_with_corridor(n, rho, corridor_re)?;
    let circle = ParamPath::new(vec![Segment::Arc {
        center: critical_point(n)?.a,
        radius: rho,
        theta0: theta,
        theta1: theta + 2.0 * PI * turns as f64,
    }])?;
    approach.concat(&circle)?.concat(&approach.reverse())
}

/// Keyhole loop around a_n whose corridor runs left of the critical line, so every other
/// critical value a_k between the basepoint and a_n is passed on its left,
/// the same side as [`composite_path`].
pub fn keyhole_loop(n: i64, rho: f64) -> Result<ParamPath> {
    keyhole_loop_with_corridor(n, rho, 1, keyhole_corridor(rho))
}

/// Circle of radius `rho` around an arbitrary center, starting at center - rho.
pub fn circle(center: Complex64, rho: f64, turns: i64) -> Result<ParamPath> {
    let mut path = ParamPath::new(vec![Segment::Arc {
        center,
        radius: rho,
        theta0: PI,
        theta1: PI + 2.0 * PI * turns as f64,
    }])?;
    path.closed = true;
    Ok(path)
}

/// Straight segment; with [`circle`] and [`ParamPath::concat`] this builds
/// ad-hoc loops based at 0.
pub fn line(from: Complex64, to: Complex64) -> Result<ParamPath> {
    ParamPath::new(vec![Segment::Line { from, to }])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vertical_image_examples() {
        let x = real_root().re;
        let p0 = vertical_image(0).unwrap();
        assert_eq!(p0.start(), c(0.0, 0.0));
        assert!((p0.end() - c(2.0 * x, PI)).norm() < 1e-14);
        assert!((p0.end().re - -1.134_286_580_819_567_6).abs() < 1e-14);
        // t = 3π on the n = 2 trace: left of a_1
        let p2 = vertical_image(2).unwrap();
        let mid = p2.segments[0].eval(3.0 / 5.0);
        assert!((mid - c(2.0 * x, 3.0 * PI)).norm() < 1e-14);
        assert!(mid.re < -1.0);
        assert!(vertical_image(-1).is_err());
    }

    #[test]
    fn vertical_trace_is_the_image_of_the_root_path() {
        let x = real_root();
        let seg = vertical_image(1).unwrap().segments[0];
        for j in 0..=20 {
            let u = j as f64 / 20.0;
            let t = 3.0 * PI * u;
            let a = crate::equation::eval(x + c(0.0, t)).unwrap();
            assert!((seg.eval(u) - a).norm() < 1e-14);
        }
    }

    #[test]
    fn horizontal_image_examples() {
        let h = horizontal_image(1, -1.0, 0.0).unwrap();
        assert!((h.start() - c(-1.0 - (-1.0_f64).exp(), 3.0 * PI)).norm() < 1e-15);
        assert!((h.start().re - -1.367_879_441_171_442_3).abs() < 1e-15);
        assert!((h.end() - critical_point(1).unwrap().a).norm() < 1e-15);
        assert!(horizontal_image(1, 0.5, 0.0).is_err());
        // joins the vertical trace when started at the real root
        let x = real_root().re;
        let v = vertical_image(1).unwrap();
        assert!((v.end() - horizontal_image(1, x, -0.1).unwrap().start()).norm() < 1e-14);
        for j in 0..10 {
            let d = h.segments[0].derivative(j as f64 / 10.0);
            assert!(d.re > 0.0 && d.im == 0.0);
        }
    }

    #[test]
    fn loop_entry_solves_the_circle_condition() {
        for rho in [0.1, 0.3, 0.5, 1.0, 3.0] {
            let s = loop_entry_parameter(rho);
            assert!(s < 0.0);
            assert!((s - s.exp() + 1.0 + rho).abs() < 1e-14);
        }
    }

    #[test]
    fn loop_around_examples() {
        let l = loop_around(0, 0.5, 1).unwrap();
        assert!(l.closed);
        assert!((l.start() - c(-1.5, PI)).norm() < 1e-15);
        assert_eq!(l.winding_about(c(-1.0, PI), 0.01).unwrap(), 1);
        assert!(l.min_distance_to(c(-1.0, 3.0 * PI), 0.01).unwrap() > PI);
        assert!(l.min_distance_to(c(-1.0, -PI), 0.01).unwrap() > PI);
        let twice = loop_around(0, 0.5, 2).unwrap();
        assert_eq!(twice.winding_about(c(-1.0, PI), 0.01).unwrap(), 2);
        let none = loop_around(0, 0.5, 0).unwrap();
        assert_eq!(none.winding_about(c(-1.0, PI), 0.01).unwrap(), 0);
        assert!(loop_around(0, 0.05, 1).is_err());
        assert!(loop_around(0, PI, 1).is_err());
    }

    #[test]
    fn sample_examples() {
        let l = line(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let pts = l.sample(0.25).unwrap();
        assert!(pts.len() >= 5);
        assert_eq!(pts[0], c(0.0, 0.0));
        assert_eq!(*pts.last().unwrap(), c(1.0, 0.0));
        let circ = circle(c(0.0, 0.0), 0.5, 1).unwrap();
        let pts = circ.sample(0.01).unwrap();
        assert_eq!(pts[0], *pts.last().unwrap());
        assert!(pts.len() >= 315);
        for w in pts.windows(2) {
            assert!((w[1] - w[0]).norm() <= 0.01 + 1e-15);
        }
        assert!(l.sample(0.0).is_err());
    }

    #[test]
    fn path_algebra() {
        let p = keyhole_loop(1, 0.5).unwrap();
        let rr = p.reverse().reverse();
        assert_eq!(rr, p);
        let q = loop_around(0, 0.5, 1).unwrap().conjugate();
        let expected_center = critical_point(-1).unwrap().a;
        assert!((q.start() - (expected_center - 0.5)).norm() < 1e-15);
        // orientation flips under reflection
        assert_eq!(q.winding_about(expected_center, 0.01).unwrap(), -1);
        let a = line(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let b = line(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(matches!(a.concat(&b), Err(MonoError::PathMismatch { .. })));
        let back = a.concat(&a.reverse()).unwrap();
        assert!(back.closed);
    }

    #[test]
    fn composite_and_keyhole_close_and_wind_once() {
        for n in 0..=3 {
            for rho in [0.3, 0.5, 1.0] {
                for path in [
                    composite_path(n, rho).unwrap(),
                    keyhole_loop(n, rho).unwrap(),
                ] {
                    assert!(path.closed);
                    assert!((path.end() - path.start()).norm() < JOIN_TOL);
                    assert_eq!(path.start(), c(0.0, 0.0));
                    for cc in path.critical_clearance(0.01).unwrap() {
                        let expected = i64::from(cc.n == n);
                        assert_eq!(cc.winding, expected, "n={n} rho={rho} about a_{}", cc.n);
                        assert!(cc.distance >= 0.1);
                    }
                }
            }
        }
    }

    #[test]
    fn negative_index_paths_are_mirrored() {
        let p = composite_path(-1, 0.5).unwrap();
        let k = keyhole_loop(-2, 0.5).unwrap();
        for (path, n) in [(p, -1), (k, -2)] {
            assert!(path.closed);
            for cc in path.critical_clearance(0.01).unwrap() {
                assert_eq!(cc.winding, i64::from(cc.n == n));
            }
        }
    }

    #[test]
    fn vertical_trace_passes_left_of_lower_critical_values() {
        let x = real_root().re;
        let v = vertical_image(3).unwrap();
        for k in 0..3 {
            let u = critical_height(k) / critical_height(3);
            let a = v.segments[0].eval(u);
            assert!((a.re - 2.0 * x).abs() < 1e-13);
            assert!(a.re < -1.0);
        }
    }

    #[test]
    fn keyhole_corridor_clearance() {
        let k = keyhole_approach(2, 0.5).unwrap();
        for n in -3..=3 {
            let a_n = critical_point(n).unwrap().a;
            let d = k.min_distance_to(a_n, 0.01).unwrap();
            assert!(d >= 0.5 - 1e-12, "a_{n}: {d}");
        }
        // the corridor itself sits one unit from the critical line
        let leg = k.segments[1];
        assert_eq!(leg.start().re, -2.0);
        assert_eq!(leg.end().re, -2.0);
        // the right-hand corridor at re = 0 is also clearance 1
        let (right, theta) = keyhole_approach_with_corridor(2, 0.5, 0.0).unwrap();
        assert_eq!(theta, 0.0);
        assert_eq!(right.segments[0].start(), c(0.0, 0.0));
        assert!(keyhole_approach_with_corridor(0, 0.5, -1.2).is_err());
    }

    #[test]
    fn json_shape() {
        let p = loop_around(0, 0.5, 1).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["closed"], true);
        assert_eq!(v["segments"][0]["kind"], "arc");
        let back: ParamPath = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
