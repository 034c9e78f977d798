//! The composite path and the keyhole loop induce the same permutation;
//! a keyhole with zero turns does not.

use xx_mono::commands::cmd_homotopy_check;
use xx_mono::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, turns) in [(0, 1), (2, 1), (2, 0)] {
        let cfg = RunConfig {
            n,
            turns,
            ..RunConfig::default()
        };
        let r = cmd_homotopy_check(&cfg)?;
        println!(
            "n = {n}, keyhole turns = {turns}: composite {} keyhole {} -> {}",
            r.composite.cycles,
            r.keyhole.cycles,
            if r.equal { "equal" } else { "unequal" }
        );
    }
    Ok(())
}
