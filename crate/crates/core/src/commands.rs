//! The `mono` subcommands as library functions.
//!
//! Each `cmd_*` returns a typed, serializable report. [`run`] dispatches by
//! name and wraps the report in a [`CommandOutput`], which knows how to print
//! itself and how to persist its artifacts.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Format, PathKind, RunConfig};
use crate::equation::{critical_height, critical_point, CriticalPoint};
use crate::error::{MonoError, Result};
use crate::figures::{cmd_figures, FiguresReport};
use crate::lambert::oracle_roots_by_branch;
use crate::monodromy::{
    extract_permutation, group_order, loop_monodromy, transitivity_check, GeneratorSet, GroupOrder,
    LoopMonodromy, Permutation,
};
use crate::path::{
    circle, composite_path, keyhole_corridor, keyhole_loop_with_corridor, line, vertical_image,
    ParamPath,
};
use crate::roots::LabeledRootSet;
use crate::tracker::{track_bundle, TrackReport};
use crate::window::{find_roots, RootSearch, Window};

/// Longest index range `critical` will tabulate in one call.
pub const MAX_CRITICAL_ROWS: i64 = 1_000_000;

pub const COMMANDS: [&str; 8] = [
    "critical",
    "roots",
    "oracle",
    "track",
    "loop",
    "homotopy-check",
    "group",
    "figures",
];

fn default_roots_window() -> Window {
    Window::new(-4.0, 4.0, -8.0, 8.0).expect("valid window")
}

/// Window around a = 0 holding the real root and, for each loop index n,
/// the partner root that meets it at z_n, and nothing else.
pub fn loop_window(ns: &[i64]) -> Result<Window> {
    let ys = ns.iter().map(|&n| critical_height(n));
    let lo = ys.clone().fold(0.0_f64, f64::min) - 3.0;
    let hi = ys.fold(0.0_f64, f64::max) + 3.0;
    // partner roots sit near ln|y| + iy; leave two units of room on the right
    let re_max = (lo.abs().max(hi.abs()).ln() + 2.0).max(5.0);
    Window::new(-4.0, re_max, lo, hi)
}

// ---------------------------------------------------------------- critical

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalTable {
    pub n_range: [i64; 2],
    pub rows: Vec<CriticalPoint>,
}

pub fn cmd_critical(n_range: [i64; 2]) -> Result<CriticalTable> {
    let [from, to] = n_range;
    if from <= to && to.saturating_sub(from) >= MAX_CRITICAL_ROWS {
        return Err(MonoError::OutOfRange {
            what: "critical index range",
            detail: format!("{from}..={to} has more than {MAX_CRITICAL_ROWS} rows"),
        });
    }
    let rows = (from..=to).map(critical_point).collect::<Result<_>>()?;
    Ok(CriticalTable { n_range, rows })
}

// ---------------------------------------------------------------- roots / oracle

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootsReport {
    pub a: Complex64,
    pub requested_window: Window,
    pub search: RootSearch,
}

pub fn cmd_roots(a: Complex64, window: &Window) -> Result<RootsReport> {
    Ok(RootsReport {
        a,
        requested_window: *window,
        search: find_roots(a, window)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchRoot {
    pub k: i64,
    pub z: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub a: Complex64,
    pub k_range: [i64; 2],
    pub branches: Vec<BranchRoot>,
    /// Relabeled set, restricted to `window` when one was given.
    pub window: Option<Window>,
    pub roots: LabeledRootSet,
}

pub fn cmd_oracle(
    a: Complex64,
    k_range: [i64; 2],
    window: Option<&Window>,
) -> Result<OracleReport> {
    let branches: Vec<BranchRoot> = oracle_roots_by_branch(a, k_range[0]..=k_range[1])?
        .into_iter()
        .map(|(k, z)| BranchRoot { k, z })
        .collect();
    let zs = branches
        .iter()
        .map(|b| b.z)
        .filter(|&z| window.is_none_or(|w| w.contains(z)))
        .collect();
    Ok(OracleReport {
        a,
        k_range,
        branches,
        window: window.copied(),
        roots: LabeledRootSet::canonical(a, zs),
    })
}

// ---------------------------------------------------------------- loops

/// Everything about one transport except the per-step log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopSummary {
    pub description: String,
    pub path: ParamPath,
    pub permutation: Permutation,
    pub cycles: String,
    pub transposition: Option<(usize, usize)>,
    pub end: LabeledRootSet,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    pub max_residual: f64,
    pub min_pairwise_distance: f64,
}

impl LoopSummary {
    fn new(description: String, path: ParamPath, m: LoopMonodromy) -> Self {
        Self {
            description,
            path,
            cycles: m.permutation.to_string(),
            transposition: m.permutation.is_transposition(),
            permutation: m.permutation,
            end: m.end,
            steps_accepted: m.report.steps_accepted,
            steps_rejected: m.report.steps_rejected,
            max_residual: m.report.max_residual,
            min_pairwise_distance: m.report.min_pairwise_distance,
        }
    }
}

/// Out along the real axis, once around `center`, and back.
pub fn regular_loop(center: Complex64, rho: f64, turns: i64) -> Result<ParamPath> {
    let entry = center - rho;
    let origin = Complex64::new(0.0, 0.0);
    line(origin, entry)?
        .concat(&circle(center, rho, turns)?)?
        .concat(&line(entry, origin)?)
}

fn keyhole(cfg: &RunConfig, n: i64, turns: i64) -> Result<(String, ParamPath)> {
    let corridor = cfg.corridor_re.unwrap_or_else(|| keyhole_corridor(cfg.rho));
    let path = keyhole_loop_with_corridor(n, cfg.rho, turns, corridor)?;
    Ok((
        format!(
            "keyhole n={n} rho={} turns={turns} corridor_re={corridor}",
            cfg.rho
        ),
        path,
    ))
}

fn selected_path(cfg: &RunConfig) -> Result<(String, ParamPath)> {
    match cfg.path {
        PathKind::Keyhole => keyhole(cfg, cfg.n, cfg.turns),
        PathKind::Composite => Ok((
            format!("composite n={} rho={}", cfg.n, cfg.rho),
            composite_path(cfg.n, cfg.rho)?,
        )),
        PathKind::Vertical => Ok((format!("vertical n={}", cfg.n), vertical_image(cfg.n)?)),
        PathKind::Circle => {
            let c = cfg
                .center()
                .ok_or_else(|| MonoError::Config("path = circle needs a center".into()))?;
            Ok((
                format!("circle center={c} rho={} turns={}", cfg.rho, cfg.turns),
                regular_loop(c, cfg.rho, cfg.turns)?,
            ))
        }
    }
}

fn base_roots(a: Complex64, window: &Window) -> Result<LabeledRootSet> {
    let search = find_roots(a, window)?;
    if let Some(m) = search.near_merges.first() {
        return Err(MonoError::NearMerge {
            first: m.labels[0],
            second: *m.labels.get(1).unwrap_or(&m.labels[0]),
            distance: m.separation,
        });
    }
    Ok(search.roots)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackResult {
    pub description: String,
    pub path: ParamPath,
    pub window: Window,
    pub start: LabeledRootSet,
    pub end: LabeledRootSet,
    /// Present when the path is closed.
    pub permutation: Option<Permutation>,
    pub report: TrackReport,
}

pub fn cmd_track(cfg: &RunConfig) -> Result<TrackResult> {
    let (description, path) = selected_path(cfg)?;
    let window = cfg.window_or(loop_window(&[cfg.n])?)?;
    let start = base_roots(path.start(), &window)?;
    let mut tc = cfg.track;
    tc.record_trajectory |= cfg.wants(Format::Csv);
    let (end, report) = track_bundle(&start, &path, &tc)?;
    let permutation = if path.closed {
        Some(extract_permutation(&start, &end)?)
    } else {
        None
    };
    Ok(TrackResult {
        description,
        path,
        window,
        start,
        end,
        permutation,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopReport {
    pub window: Window,
    pub base: LabeledRootSet,
    #[serde(rename = "loop")]
    pub summary: LoopSummary,
}

/// Keyhole around a_n, or a loop around the regular value `center` if set.
pub fn cmd_loop(cfg: &RunConfig) -> Result<LoopReport> {
    let (description, path) = match cfg.center() {
        Some(c) => (
            format!("circle center={c} rho={} turns={}", cfg.rho, cfg.turns),
            regular_loop(c, cfg.rho, cfg.turns)?,
        ),
        None => keyhole(cfg, cfg.n, cfg.turns)?,
    };
    let window = cfg.window_or(loop_window(&[cfg.n])?)?;
    let base = base_roots(path.start(), &window)?;
    let m = loop_monodromy(&base, &path, &cfg.track)?;
    Ok(LoopReport {
        window,
        base,
        summary: LoopSummary::new(description, path, m),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub n: i64,
    pub rho: f64,
    pub window: Window,
    pub base: LabeledRootSet,
    pub composite: LoopSummary,
    pub keyhole: LoopSummary,
    pub equal: bool,
}

/// Composite path against keyhole on one bundle. `cfg.turns` and
/// `cfg.corridor_re` shape the keyhole, so a bad keyhole can be requested
/// on purpose.
pub fn cmd_homotopy_check(cfg: &RunConfig) -> Result<HomotopyReport> {
    let n = cfg.n;
    let window = cfg.window_or(loop_window(&[n])?)?;
    let base = base_roots(Complex64::new(0.0, 0.0), &window)?;

    let comp_path = composite_path(n, cfg.rho)?;
    let comp = loop_monodromy(&base, &comp_path, &cfg.track)?;
    let (kdesc, key_path) = keyhole(cfg, n, cfg.turns)?;
    let key = loop_monodromy(&base, &key_path, &cfg.track)?;

    let equal = comp.permutation == key.permutation;
    Ok(HomotopyReport {
        n,
        rho: cfg.rho,
        window,
        base,
        composite: LoopSummary::new(format!("composite n={n} rho={}", cfg.rho), comp_path, comp),
        keyhole: LoopSummary::new(kdesc, key_path, key),
        equal,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub window: Window,
    pub base: LabeledRootSet,
    pub loops: Vec<LoopSummary>,
    pub generators: GeneratorSet,
    pub order: GroupOrder,
    pub transitive: bool,
    /// Order equals N!, i.e. the full symmetric group.
    pub symmetric: bool,
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Keyhole generators for every index in `cfg.n_list`, tracked in parallel.
pub fn cmd_group(cfg: &RunConfig) -> Result<GroupReport> {
    let window = cfg.window_or(loop_window(&cfg.n_list)?)?;
    let base = base_roots(Complex64::new(0.0, 0.0), &window)?;

    let paths = cfg
        .n_list
        .iter()
        .map(|&n| keyhole(cfg, n, 1))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<LoopMonodromy>> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|(_, p)| s.spawn(|| loop_monodromy(&base, p, &cfg.track)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("tracking thread panicked"))
            .collect()
    });

    let mut generators = GeneratorSet::new(base.len());
    let mut loops = Vec::with_capacity(paths.len());
    for ((desc, path), m) in paths.into_iter().zip(results) {
        let m = m?;
        generators.push(m.permutation.clone(), desc.clone())?;
        loops.push(LoopSummary::new(desc, path, m));
    }
    let order = group_order(&generators, cfg.group_cap);
    let symmetric = match (order.exact(), factorial(base.len())) {
        (Some(o), Some(f)) => o == f,
        _ => false,
    };
    Ok(GroupReport {
        window,
        transitive: transitivity_check(&generators),
        base,
        loops,
        generators,
        order,
        symmetric,
    })
}

// ---------------------------------------------------------------- dispatch

/// A file to write next to the JSON report.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub command: String,
    pub result: Value,
    /// Set for a completed run whose answer is a warning or a negative
    /// verdict; the process exits with 1.
    pub warning: Option<String>,
    pub artifacts: Vec<Artifact>,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if self.warning.is_some() {
            1
        } else {
            0
        }
    }

    /// Canonical JSON: sorted keys, shortest round-trip floats. Parsing
    /// and re-emitting this text reproduces it byte for byte.
    pub fn to_json(&self, cfg: &RunConfig) -> Result<String> {
        let v = serde_json::json!({
            "command": self.command,
            "config": cfg,
            "result": self.result,
            "warning": self.warning,
        });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }

    /// Writes `<command>.json` and any artifacts into `dir`, each atomically.
    pub fn persist(&self, cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = vec![write_atomic(
            dir,
            &format!("{}.json", self.command),
            &self.to_json(cfg)?,
        )?];
        for a in &self.artifacts {
            written.push(write_atomic(dir, &a.name, &a.contents)?);
        }
        Ok(written)
    }
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, &target)?;
    Ok(target)
}

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

pub fn run(command: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let mut warning = None;
    let mut artifacts = Vec::new();
    let result = match command {
        "critical" => to_value(&cmd_critical(cfg.n_range)?)?,
        "roots" => {
            let r = cmd_roots(cfg.a(), &cfg.window_or(default_roots_window())?)?;
            if !r.search.near_merges.is_empty() {
                warning = Some(format!(
                    "{} near-merged root pair(s); a is close to a critical value",
                    r.search.near_merges.len()
                ));
            }
            to_value(&r)?
        }
        "oracle" => {
            let w = cfg
                .window
                .map(|_| cfg.window_or(default_roots_window()))
                .transpose()?;
            to_value(&cmd_oracle(cfg.a(), cfg.k_range, w.as_ref())?)?
        }
        "track" => {
            let mut r = cmd_track(cfg)?;
            if cfg.wants(Format::Csv) {
                let mut buf = Vec::new();
                r.report.write_trajectory_csv(&mut buf)?;
                artifacts.push(Artifact {
                    name: "trajectory.csv".into(),
                    contents: String::from_utf8(buf).expect("csv is ascii"),
                });
                r.report.trajectory.clear();
            }
            to_value(&r)?
        }
        "loop" => to_value(&cmd_loop(cfg)?)?,
        "homotopy-check" => {
            let r = cmd_homotopy_check(cfg)?;
            if !r.equal {
                warning = Some(format!(
                    "composite gives {} but keyhole gives {}",
                    r.composite.cycles, r.keyhole.cycles
                ));
            }
            to_value(&r)?
        }
        "group" => to_value(&cmd_group(cfg)?)?,
        "figures" => {
            let (report, svgs): (FiguresReport, Vec<Artifact>) =
                cmd_figures(&cfg.figures, cfg.rho)?;
            artifacts.extend(svgs);
            artifacts.push(Artifact {
                name: "figures-manifest.json".into(),
                contents: serde_json::to_string_pretty(&to_value(&report)?)? + "\n",
            });
            to_value(&report)?
        }
        other => {
            return Err(MonoError::Config(format!(
                "unknown command {other:?}; expected one of {}",
                COMMANDS.join(", ")
            )))
        }
    };
    Ok(CommandOutput {
        command: command.to_owned(),
        result,
        warning,
        artifacts,
    })
}
