//! Keyhole generators around a_{-1}, ..., a_2 act on five roots as star
//! transpositions, which generate all of S_5.

use xx_mono::commands::cmd_group;
use xx_mono::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for ns in [
        vec![0],
        vec![-1, 0],
        vec![-1, 0, 1, 2],
        vec![-2, -1, 0, 1, 2],
    ] {
        let cfg = RunConfig {
            n_list: ns.clone(),
            ..RunConfig::default()
        };
        let g = cmd_group(&cfg)?;
        let gens: Vec<String> = g.loops.iter().map(|l| l.cycles.clone()).collect();
        println!(
            "loops {ns:?}: N = {}, generators {}, order {:?}, transitive {}, full symmetric {}",
            g.base.len(),
            gens.join(" "),
            g.order,
            g.transitive,
            g.symmetric
        );
    }
    Ok(())
}
