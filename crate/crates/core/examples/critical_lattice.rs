//! Critical points z_n = (2n+1)πi and critical values a_n = z_n - 1.
//!
//! `cargo run --example critical_lattice -- -3 3`

use xx_mono::equation::critical_point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let (from, to) = match args[..] {
        [a, b] => (a, b),
        _ => (-2, 2),
    };
    println!("{:>4}  {:>24}  {:>24}", "n", "z_n", "a_n");
    for n in from..=to {
        let cp = critical_point(n)?;
        println!(
            "{n:>4}  {:>24}  {:>24}",
            format!("{:.12}", cp.z),
            format!("{:.12}", cp.a)
        );
    }
    Ok(())
}
