//! Writes the four SVG figures plus a JSON manifest of their anchor data.
//!
//! `cargo run --example figures -- out/`

use std::path::PathBuf;

use xx_mono::figures::cmd_figures;
use xx_mono::path::DEFAULT_RHO;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "mono-figures".into()),
    );
    std::fs::create_dir_all(&dir)?;
    let (report, files) = cmd_figures(&[1, 2, 3, 4], DEFAULT_RHO)?;
    for f in &files {
        std::fs::write(dir.join(&f.name), &f.contents)?;
        println!("wrote {}", dir.join(&f.name).display());
    }
    std::fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&report)?,
    )?;
    for fig in &report.figures {
        println!("figure {}: {}  {:?}", fig.id, fig.title, fig.annotation);
    }
    Ok(())
}
