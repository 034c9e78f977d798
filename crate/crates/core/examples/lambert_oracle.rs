//! Closed-form roots z = a - W_k(e^a), one per Lambert W branch.
//!
//! `cargo run --example lambert_oracle -- 0.5 2.0` solves z + e^z = 0.5 + 2i.

use num_complex::Complex64;
use xx_mono::equation::eval;
use xx_mono::lambert::oracle_roots_by_branch;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let a = Complex64::new(
        v.first().copied().unwrap_or(0.0),
        v.get(1).copied().unwrap_or(0.0),
    );
    for (k, z) in oracle_roots_by_branch(a, -4..=4)? {
        let r = (eval(z)? - a).norm();
        println!("k = {k:>2}  z = {z:.14}  |f(z) - a| = {r:.1e}");
    }
    Ok(())
}
