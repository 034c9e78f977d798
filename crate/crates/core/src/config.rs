//! Run configuration shared by every `mono` subcommand.
//!
//! A config file is TOML; every key is optional and falls back to the
//! defaults below. Command-line flags are applied on top of the file.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MonoError, Result};
use crate::path::DEFAULT_RHO;
use crate::tracker::TrackConfig;
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Which closed (or open) path `mono track` follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Keyhole,
    Composite,
    Vertical,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Parameter value for `roots` and `oracle`, as [re, im].
    pub a: [f64; 2],
    /// [re_min, re_max, im_min, im_max]; when absent, loop commands pick a
    /// window holding the real root and the partners of every loop index.
    pub window: Option<[f64; 4]>,
    /// Inclusive index range for `critical`.
    pub n_range: [i64; 2],
    /// Inclusive Lambert branch range for `oracle`.
    pub k_range: [i64; 2],
    pub n: i64,
    pub n_list: Vec<i64>,
    pub rho: f64,
    pub turns: i64,
    /// Real part of the keyhole corridor; defaults to the left corridor.
    pub corridor_re: Option<f64>,
    /// Center of a loop around a regular value, for `loop` and `track`.
    pub center: Option<[f64; 2]>,
    pub path: PathKind,
    pub group_cap: usize,
    pub figures: Vec<u8>,
    pub out_dir: Option<PathBuf>,
    pub formats: Vec<Format>,
    /// Recorded in every report. No command currently draws random numbers.
    pub seed: u64,
    pub track: TrackConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: [0.0, 0.0],
            window: None,
            n_range: [-1, 1],
            k_range: [-1, 1],
            n: 0,
            n_list: vec![-1, 0, 1, 2],
            rho: DEFAULT_RHO,
            turns: 1,
            corridor_re: None,
            center: None,
            path: PathKind::Keyhole,
            group_cap: 100_000,
            figures: vec![1, 2, 3, 4],
            out_dir: None,
            formats: vec![Format::Json],
            seed: 0,
            track: TrackConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| MonoError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.track.validate()?;
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(MonoError::Config(format!(
                "rho must be positive, got {}",
                self.rho
            )));
        }
        if self.a.iter().any(|v| !v.is_finite()) {
            return Err(MonoError::Config("a must be finite".into()));
        }
        if let Some(w) = self.window {
            self.window_from(w)?;
        }
        if self.group_cap == 0 {
            return Err(MonoError::Config("group_cap must be positive".into()));
        }
        if let Some(&bad) = self.figures.iter().find(|&&f| !(1..=4).contains(&f)) {
            return Err(MonoError::Config(format!(
                "figure {bad} does not exist (1-4)"
            )));
        }
        Ok(())
    }

    fn window_from(&self, w: [f64; 4]) -> Result<Window> {
        Window::new(w[0], w[1], w[2], w[3])
    }

    pub fn a(&self) -> Complex64 {
        Complex64::new(self.a[0], self.a[1])
    }

    pub fn center(&self) -> Option<Complex64> {
        self.center.map(|[re, im]| Complex64::new(re, im))
    }

    /// The configured window, or `fallback` when none is set.
    pub fn window_or(&self, fallback: Window) -> Result<Window> {
        match self.window {
            Some(w) => self.window_from(w),
            None => Ok(fallback),
        }
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_default() {
        let cfg: RunConfig = toml::from_str("").unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn partial_file_overrides() {
        let cfg: RunConfig = toml::from_str(
            "n = 2\nrho = 0.25\nformats = [\"json\", \"csv\"]\n[track]\nmax_step = 0.01\n",
        )
        .unwrap();
        assert_eq!(cfg.n, 2);
        assert_eq!(cfg.track.max_step, 0.01);
        assert_eq!(cfg.track.corrector_tol, 1e-12);
        assert!(cfg.wants(Format::Csv));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        assert!(toml::from_str::<RunConfig>("formats = [\"png\"]").is_err());
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
        let cfg: RunConfig = toml::from_str("[track]\ncorrector_tol = -1.0").unwrap();
        assert!(cfg.validate().is_err());
        let cfg: RunConfig = toml::from_str("window = [1.0, -1.0, 0.0, 1.0]").unwrap();
        assert!(cfg.validate().is_err());
    }
}
