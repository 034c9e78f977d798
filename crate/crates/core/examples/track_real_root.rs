//! Continues the real root up the vertical trace: as a runs over
//! x(1 - cos t) + i(t - x sin t), the root should be exactly x + it.
//! Prints the trajectory as CSV.

use num_complex::Complex64;
use xx_mono::equation::real_root;
use xx_mono::path::vertical_image;
use xx_mono::roots::{LabeledRoot, LabeledRootSet};
use xx_mono::tracker::{track_bundle, TrackConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = real_root();
    let start = LabeledRootSet {
        a: Complex64::new(0.0, 0.0),
        roots: vec![LabeledRoot { label: 1, z: x }],
    };
    let cfg = TrackConfig {
        record_trajectory: true,
        ..TrackConfig::default()
    };
    let (end, report) = track_bundle(&start, &vertical_image(1)?, &cfg)?;

    let worst = report
        .trajectory
        .iter()
        .map(|s| (s.z - Complex64::new(x.re, s.z.im)).norm())
        .fold(0.0, f64::max);
    eprintln!(
        "{} steps, end z = {:.12}, max |re z - x| = {worst:.1e}",
        report.steps_accepted, end.roots[0].z
    );
    report.write_trajectory_csv(std::io::stdout().lock())?;
    Ok(())
}
