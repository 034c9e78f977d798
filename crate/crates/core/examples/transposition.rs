//! A keyhole loop around a_n swaps the real root with exactly one partner.

use num_complex::Complex64;
use xx_mono::monodromy::loop_monodromy;
use xx_mono::path::keyhole_loop;
use xx_mono::tracker::TrackConfig;
use xx_mono::window::{find_roots, Window};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Window::new(-4.0, 4.0, -8.0, 20.0)?;
    let base = find_roots(Complex64::new(0.0, 0.0), &w)?.roots;
    for r in &base.roots {
        println!("label {}: {:.6}", r.label, r.z);
    }
    for n in -1..=2 {
        let m = loop_monodromy(&base, &keyhole_loop(n, 0.5)?, &TrackConfig::default())?;
        println!(
            "keyhole around a_{n:<2}: {}  ({} steps, max residual {:.1e})",
            m.permutation, m.report.steps_accepted, m.report.max_residual
        );
    }
    Ok(())
}
