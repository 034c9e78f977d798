use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use xx_mono::commands::run;
use xx_mono::config::{Format, PathKind, RunConfig};
use xx_mono::error::MonoError;

/// Monodromy of the roots of z + e^z = a.
#[derive(Parser)]
#[command(name = "mono", version)]
struct Cli {
    /// TOML run configuration; flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for the JSON report and artifacts.
    #[arg(long, global = true, env = "MONO_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_delimiter = ',')]
    format: Vec<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical points z_n and critical values a_n.
    Critical {
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
    /// Roots in a window by argument-principle counting.
    Roots(Common),
    /// Roots from Lambert W branches.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k_range: Option<Vec<i64>>,
    },
    /// Track the root bundle along a path.
    Track {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: Option<PathKind>,
    },
    /// Permutation induced by one loop.
    Loop(Common),
    /// Compare the composite path against the keyhole loop.
    HomotopyCheck(Common),
    /// Group generated by keyhole loops.
    Group {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        n_list: Option<Vec<i64>>,
    },
    /// Write the four SVG figures.
    Figures {
        #[arg(long, value_delimiter = ',')]
        which: Option<Vec<u8>>,
        #[arg(long)]
        rho: Option<f64>,
    },
}

#[derive(Args)]
struct Common {
    /// re,im
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    /// re_min,re_max,im_min,im_max
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    turns: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    corridor_re: Option<f64>,
    /// re,im of a regular value to loop around
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<f64>>,
}

fn fixed<const N: usize>(v: Vec<f64>, what: &str) -> Result<[f64; N], MonoError> {
    v.try_into().map_err(|v: Vec<f64>| {
        MonoError::Config(format!("{what} takes {N} numbers, got {}", v.len()))
    })
}

impl Common {
    fn apply(self, cfg: &mut RunConfig) -> Result<(), MonoError> {
        if let Some(a) = self.a {
            cfg.a = fixed(a, "--a")?;
        }
        if let Some(w) = self.window {
            cfg.window = Some(fixed(w, "--window")?);
        }
        if let Some(c) = self.center {
            cfg.center = Some(fixed(c, "--center")?);
        }
        cfg.n = self.n.unwrap_or(cfg.n);
        cfg.rho = self.rho.unwrap_or(cfg.rho);
        cfg.turns = self.turns.unwrap_or(cfg.turns);
        cfg.corridor_re = self.corridor_re.or(cfg.corridor_re);
        Ok(())
    }
}

fn configure(cli: Cli) -> Result<(&'static str, RunConfig), MonoError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if cli.out.is_some() {
        cfg.out_dir = cli.out;
    }
    if !cli.format.is_empty() {
        cfg.formats = cli.format;
    }
    let name = match cli.command {
        Command::Critical { from, to } => {
            cfg.n_range = [from.unwrap_or(cfg.n_range[0]), to.unwrap_or(cfg.n_range[1])];
            "critical"
        }
        Command::Roots(c) => {
            c.apply(&mut cfg)?;
            "roots"
        }
        Command::Oracle { common, k_range } => {
            common.apply(&mut cfg)?;
            if let Some(k) = k_range {
                let k: [i64; 2] = k
                    .try_into()
                    .map_err(|_| MonoError::Config("--k-range takes two integers".into()))?;
                cfg.k_range = k;
            }
            "oracle"
        }
        Command::Track { common, path } => {
            common.apply(&mut cfg)?;
            cfg.path = path.unwrap_or(cfg.path);
            "track"
        }
        Command::Loop(c) => {
            c.apply(&mut cfg)?;
            "loop"
        }
        Command::HomotopyCheck(c) => {
            c.apply(&mut cfg)?;
            "homotopy-check"
        }
        Command::Group { common, n_list } => {
            common.apply(&mut cfg)?;
            cfg.n_list = n_list.unwrap_or(cfg.n_list);
            "group"
        }
        Command::Figures { which, rho } => {
            cfg.figures = which.unwrap_or(cfg.figures);
            cfg.rho = rho.unwrap_or(cfg.rho);
            cfg.out_dir
                .get_or_insert_with(|| PathBuf::from("mono-figures"));
            "figures"
        }
    };
    Ok((name, cfg))
}

fn execute(cli: Cli) -> Result<i32, MonoError> {
    let (name, cfg) = configure(cli)?;
    let out = run(name, &cfg)?;
    print!("{}", out.to_json(&cfg)?);
    if let Some(dir) = &cfg.out_dir {
        for f in out.persist(&cfg, dir)? {
            eprintln!("wrote {}", f.display());
        }
    }
    if let Some(w) = &out.warning {
        eprintln!("warning: {w}");
    }
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let payload = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&payload).unwrap_or_default()
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
