//! The composite path (vertical trace, horizontal trace, loop) and the
//! keyhole loop, with their winding numbers about nearby critical values.
//!
//! `cargo run --example composite_and_keyhole -- 2`

use xx_mono::equation::critical_point;
use xx_mono::path::{composite_path, keyhole_loop, DEFAULT_RHO};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(2);
    let composite = composite_path(n, DEFAULT_RHO)?;
    let keyhole = keyhole_loop(n, DEFAULT_RHO)?;
    for (name, p) in [("composite", &composite), ("keyhole", &keyhole)] {
        println!(
            "{name}: {} pieces, closed = {}, length <= {:.2}",
            p.segments.len(),
            p.closed,
            p.length_bound()
        );
        for k in n - 2..=n + 1 {
            let a_k = critical_point(k)?.a;
            println!(
                "  a_{k:<3} winding {:>2}  distance {:.3}",
                p.winding_about(a_k, 0.01)?,
                p.min_distance_to(a_k, 0.01)?
            );
        }
    }
    println!("{}", serde_json::to_string(&keyhole.segments[0])?);
    Ok(())
}
