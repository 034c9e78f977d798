//! Argument-principle root finding in a rectangle, checked against the oracle.

use num_complex::Complex64;
use xx_mono::lambert::oracle_roots;
use xx_mono::window::{count_roots, find_roots, Window};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Complex64::new(0.0, 0.0);
    let w = Window::new(-4.0, 4.0, -8.0, 8.0)?;
    println!("count in {w:?}: {}", count_roots(a, &w)?);

    let search = find_roots(a, &w)?;
    let oracle = oracle_roots(a, -2..=2)?;
    for r in &search.roots.roots {
        let nearest = oracle
            .positions()
            .into_iter()
            .map(|z| (z - r.z).norm())
            .fold(f64::INFINITY, f64::min);
        println!(
            "root {}: {:.15}  (oracle distance {nearest:.1e})",
            r.label, r.z
        );
    }

    // right next to a_0 the two roots near πi nearly coincide
    let close = Complex64::new(-1.0 + 1e-9, std::f64::consts::PI);
    for m in find_roots(close, &w)?.near_merges {
        println!(
            "near merge at a_0 + 1e-9: labels {:?}, separation {:.2e}",
            m.labels, m.separation
        );
    }
    Ok(())
}
