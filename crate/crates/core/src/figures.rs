//! The four figures, rebuilt from computed data.
//!
//! 1. graph of y = x + e^x over the reals
//! 2. z-plane trajectory of the real root along the composite path, n = 2
//! 3. the composite path itself in the a-plane, critical values marked
//! 4. the keyhole loop around a_2 with its winding numbers

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::commands::Artifact;
use crate::equation::{critical_point, eval, real_root};
use crate::error::Result;
use crate::path::{composite_path, keyhole_loop, ParamPath};
use crate::roots::{LabeledRoot, LabeledRootSet};
use crate::svg::Plot;
use crate::tracker::{track_bundle, TrackConfig};

/// The loop index drawn in figures 2 to 4.
pub const FIGURE_N: i64 = 2;
const MARKED: std::ops::RangeInclusive<i64> = -1..=3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub label: String,
    pub point: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winding {
    pub n: i64,
    pub winding: i64,
}

/// Data a figure was drawn from; the SVG itself is never read back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureInfo {
    pub id: u8,
    pub title: String,
    pub file: String,
    pub markers: Vec<Marker>,
    pub windings: Vec<Winding>,
    pub annotation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiguresReport {
    pub figures: Vec<FigureInfo>,
}

fn marker(label: impl Into<String>, point: Complex64) -> Marker {
    Marker {
        label: label.into(),
        point,
    }
}

fn bounds(pts: &[Complex64], pad: f64) -> ((f64, f64), (f64, f64)) {
    let fold = |f: fn(&Complex64) -> f64| {
        pts.iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (x0, x1) = fold(|p| p.re);
    let (y0, y1) = fold(|p| p.im);
    ((x0 - pad, x1 + pad), (y0 - pad, y1 + pad))
}

fn critical_markers() -> Result<Vec<Marker>> {
    MARKED
        .map(|k| Ok(marker(format!("a_{k}"), critical_point(k)?.a)))
        .collect()
}

fn windings(path: &ParamPath) -> Result<Vec<Winding>> {
    MARKED
        .map(|n| {
            Ok(Winding {
                n,
                winding: path.winding_about(critical_point(n)?.a, 0.01)?,
            })
        })
        .collect()
}

fn graph() -> Result<(FigureInfo, String)> {
    let xs = (0..=450).map(|i| -3.0 + i as f64 * 0.01);
    let curve: Vec<Complex64> = xs.map(|x| Complex64::new(x, x + x.exp())).collect();
    let root = real_root().re;
    let at_zero = eval(Complex64::new(0.0, 0.0))?.re;
    let markers = vec![
        marker("root", Complex64::new(root, 0.0)),
        marker("(0, 1)", Complex64::new(0.0, at_zero)),
    ];

    let title = "y = x + e^x";
    let mut plot = Plot::new(title, (-3.0, 1.5), (-3.0, 6.0));
    plot.axes();
    plot.polyline(&curve, "curve", "#1f4e9c");
    for m in &markers {
        plot.marker(
            m.point,
            "anchor",
            "#c0392b",
            &format!("{} {:.6}", m.label, m.point.re),
        );
    }
    plot.note(&format!("real root x = {root:.16}"));
    Ok((info(1, title, markers, vec![], None), plot.render()))
}

fn trajectory(rho: f64) -> Result<(FigureInfo, String)> {
    let x = real_root();
    let start = LabeledRootSet {
        a: Complex64::new(0.0, 0.0),
        roots: vec![LabeledRoot { label: 1, z: x }],
    };
    let cfg = TrackConfig {
        record_trajectory: true,
        ..TrackConfig::default()
    };
    let path = composite_path(FIGURE_N, rho)?;
    let (end, report) = track_bundle(&start, &path, &cfg)?;
    let zs: Vec<Complex64> = std::iter::once(x)
        .chain(report.trajectory.iter().map(|s| s.z))
        .collect();

    let mut markers = vec![marker("start", x), marker("end", end.roots[0].z)];
    for k in 0..=FIGURE_N {
        markers.push(marker(format!("z_{k}"), critical_point(k)?.z));
    }

    let title = "The path of the real root";
    let (xr, yr) = bounds(&zs, 1.0);
    let mut plot = Plot::new(title, xr, yr);
    plot.axes();
    plot.polyline(&zs, "trajectory", "#1f4e9c");
    for m in &markers {
        let color = if m.label.starts_with("z_") {
            "#888"
        } else {
            "#c0392b"
        };
        plot.marker(m.point, "anchor", color, &m.label);
    }
    Ok((info(2, title, markers, vec![], None), plot.render()))
}

fn a_path(path: &ParamPath, id: u8, title: &str, annotate: bool) -> Result<(FigureInfo, String)> {
    let pts = path.sample(0.02)?;
    let markers = critical_markers()?;
    let windings = windings(path)?;
    let annotation = annotate.then(|| {
        windings
            .iter()
            .map(|w| format!("wind(a_{}) = {}", w.n, w.winding))
            .collect::<Vec<_>>()
            .join(", ")
    });

    let mut all = pts.clone();
    all.extend(markers.iter().map(|m| m.point));
    let (xr, yr) = bounds(&all, 1.0);
    let mut plot = Plot::new(title, xr, yr);
    plot.axes();
    plot.polyline(&pts, "path", "#1f4e9c");
    for m in &markers {
        plot.marker(m.point, "critical-value", "#c0392b", &m.label);
    }
    if let Some(a) = &annotation {
        plot.note(a);
    }
    Ok((
        info(id, title, markers, windings, annotation),
        plot.render(),
    ))
}

fn info(
    id: u8,
    title: &str,
    markers: Vec<Marker>,
    windings: Vec<Winding>,
    annotation: Option<String>,
) -> FigureInfo {
    FigureInfo {
        id,
        title: title.to_owned(),
        file: format!("figure{id}.svg"),
        markers,
        windings,
        annotation,
    }
}

/// Builds the requested figures (ids 1 to 4) and their SVG files.
pub fn cmd_figures(which: &[u8], rho: f64) -> Result<(FiguresReport, Vec<Artifact>)> {
    let mut figures = Vec::new();
    let mut files = Vec::new();
    for &id in which {
        let (fig, svg) = match id {
            1 => graph()?,
            2 => trajectory(rho)?,
            3 => a_path(
                &composite_path(FIGURE_N, rho)?,
                3,
                "The path followed by a",
                false,
            )?,
            _ => a_path(
                &keyhole_loop(FIGURE_N, rho)?,
                4,
                "Homotopically equivalent loop",
                true,
            )?,
        };
        files.push(Artifact {
            name: fig.file.clone(),
            contents: svg,
        });
        figures.push(fig);
    }
    Ok((FiguresReport { figures }, files))
}
