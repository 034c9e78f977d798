//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xx_mono::commands::{cmd_group, regular_loop};
use xx_mono::config::RunConfig;
use xx_mono::equation::{critical_point, eval, real_root, ExpAffine, Family};
use xx_mono::figures::cmd_figures;
use xx_mono::lambert::oracle_roots_by_branch;
use xx_mono::monodromy::{compose, extract_permutation, loop_monodromy, Permutation};
use xx_mono::path::{
    composite_path, keyhole_approach_with_corridor, keyhole_corridor, keyhole_loop, ParamPath,
};
use xx_mono::roots::LabeledRootSet;
use xx_mono::tracker::{track_bundle, TrackConfig};
use xx_mono::window::{find_roots, Window};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn base(w: [f64; 4]) -> Result<LabeledRootSet, String> {
    let w = Window::new(w[0], w[1], w[2], w[3]).map_err(err)?;
    Ok(find_roots(c(0.0, 0.0), &w).map_err(err)?.roots)
}

const FIVE: [f64; 4] = [-4.0, 4.0, -8.0, 20.0];
const THREE: [f64; 4] = [-4.0, 4.0, -8.0, 8.0];
/// Real root plus the partners for n = -1, 0, 1.
const FOUR: [f64; 4] = [-4.0, 5.0, -6.5, 12.5];

fn monodromy(b: &LabeledRootSet, path: &ParamPath) -> Result<Permutation, String> {
    Ok(loop_monodromy(b, path, &TrackConfig::default())
        .map_err(err)?
        .permutation)
}

fn critical_lattice() -> Outcome {
    let mut worst = 0.0_f64;
    for n in -50..=50 {
        let cp = critical_point(n).map_err(err)?;
        let expected = c(-1.0, (2 * n + 1) as f64 * PI);
        worst = worst.max((cp.a - expected).norm());
        let next = critical_point(n + 1).map_err(err)?;
        let gap = next.a - cp.a;
        ensure!(
            (gap - c(0.0, 2.0 * PI)).norm() < 1e-12,
            "spacing a_{} - a_{n} = {gap}",
            n + 1
        );
        ensure!(
            (eval(cp.z).map_err(err)? - expected).norm() < 1e-12,
            "f(z_{n}) misses a_{n}"
        );
    }
    ensure!(worst < 1e-12, "max |a_n - expected| = {worst:e}");
    Ok(format!("n in [-50, 50], max error {worst:.1e}"))
}

fn real_root_bounds() -> Outcome {
    let x = real_root();
    ensure!(x.im == 0.0, "root is not real: {x}");
    let x = x.re;
    let r = (x + x.exp()).abs();
    ensure!(r < 1e-14, "|x + e^x| = {r:e}");
    ensure!(
        -0.5672 < x && x < -0.5671,
        "x = {x} outside (-0.5672, -0.5671)"
    );
    ensure!(2.0 * x < -1.0, "2x = {} is not < -1", 2.0 * x);
    Ok(format!("x = {x:.16}, residual {r:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let requested = Window::new(-5.0, 5.0, -12.0, 12.0).map_err(err)?;
    let mut tested = 0;
    let mut worst = 0.0_f64;
    let mut roots_seen = 0;
    while tested < 50 {
        let a = c(rng.gen_range(-3.0..3.0), rng.gen_range(-10.0..10.0));
        let (_, a_n) = ExpAffine.nearest_critical_value(a);
        if (a - a_n).norm() < 0.05 {
            continue;
        }
        tested += 1;

        let search = find_roots(a, &requested).map_err(err)?;
        let used = search.window;
        let oracle: Vec<Complex64> = oracle_roots_by_branch(a, -8..=8)
            .map_err(err)?
            .into_iter()
            .map(|(_, z)| z)
            .filter(|&z| used.contains(z))
            .collect();
        ensure!(
            search.count == oracle.len() && search.roots.len() == oracle.len(),
            "a = {a}: window finds {} roots, oracle {}",
            search.count,
            oracle.len()
        );
        // one-to-one: every window root has its own oracle root within 1e-9
        let mut taken = vec![false; oracle.len()];
        for r in &search.roots.roots {
            let (j, d) = oracle
                .iter()
                .enumerate()
                .filter(|(j, _)| !taken[*j])
                .map(|(j, &z)| (j, (z - r.z).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .ok_or_else(|| format!("a = {a}: oracle exhausted"))?;
            ensure!(
                d < 1e-9,
                "a = {a}: root {} is {d:e} from the oracle",
                r.label
            );
            taken[j] = true;
            worst = worst.max(d);
        }
        roots_seen += oracle.len();
    }
    Ok(format!(
        "50 parameters, {roots_seen} roots matched, max distance {worst:.1e}"
    ))
}

fn transpositions() -> Outcome {
    let b = base(FIVE)?;
    ensure!(b.len() == 5, "5-root window holds {} roots", b.len());
    let cfg = TrackConfig::default();
    let mut found = Vec::new();
    for n in -1..=2_i64 {
        let p = monodromy(&b, &keyhole_loop(n, 0.5).map_err(err)?)?;
        let (i, j) = p
            .is_transposition()
            .ok_or_else(|| format!("n = {n}: {p} is not a transposition"))?;

        // shrink to rho = 0.1 and look at who is closest to z_n at the circle
        let rho = 0.1;
        let (approach, _) =
            keyhole_approach_with_corridor(n, rho, keyhole_corridor(rho)).map_err(err)?;
        let (near, _) = track_bundle(&b, &approach, &cfg).map_err(err)?;
        let z_n = critical_point(n).map_err(err)?.z;
        let mut by_distance: Vec<(usize, f64)> = near
            .roots
            .iter()
            .map(|r| (r.label, (r.z - z_n).norm()))
            .collect();
        by_distance.sort_by(|x, y| x.1.total_cmp(&y.1));
        let mut closest = [by_distance[0].0, by_distance[1].0];
        closest.sort();
        ensure!(
            closest == [i, j],
            "n = {n}: swaps ({i} {j}) but roots {closest:?} approach z_n"
        );
        ensure!(
            by_distance[1].1 < 1.0 && by_distance[2].1 > 2.0,
            "n = {n}: distances to z_n {:?} do not single out a pair",
            by_distance
        );
        let small = monodromy(&b, &keyhole_loop(n, rho).map_err(err)?)?;
        ensure!(
            small == p,
            "n = {n}: rho 0.1 gives {small}, rho 0.5 gives {p}"
        );
        found.push(format!("n={n}:{p}"));
    }
    Ok(found.join(" "))
}

fn homotopy() -> Outcome {
    let b = base(FIVE)?;
    let mut out = Vec::new();
    for n in [0, 2] {
        let t = Instant::now();
        let comp = monodromy(&b, &composite_path(n, 0.5).map_err(err)?)?;
        let key = monodromy(&b, &keyhole_loop(n, 0.5).map_err(err)?)?;
        let secs = t.elapsed().as_secs_f64();
        ensure!(comp == key, "n = {n}: composite {comp} vs keyhole {key}");
        ensure!(secs < 120.0, "n = {n} took {secs:.1}s");
        out.push(format!("n={n}:{comp} ({secs:.2}s)"));
    }
    Ok(out.join(" "))
}

fn symmetric_group() -> Outcome {
    let mut out = Vec::new();
    for (w, ns, expect) in [(FIVE, vec![-1, 0, 1, 2], 120), (THREE, vec![-1, 0], 6)] {
        let cfg = RunConfig {
            window: Some(w),
            n_list: ns.clone(),
            ..RunConfig::default()
        };
        let g = cmd_group(&cfg).map_err(err)?;
        let order = g.order.exact();
        ensure!(
            order == Some(expect) && g.transitive,
            "N = {}: order {:?}, transitive {}",
            g.base.len(),
            g.order,
            g.transitive
        );
        out.push(format!("N={} order {expect}", g.base.len()));
    }
    Ok(out.join(", ") + ", transitive")
}

fn group_laws() -> Outcome {
    let b = base(FOUR)?;
    ensure!(b.len() == 4, "window holds {} roots", b.len());
    let letters: Vec<(ParamPath, Permutation)> = [-1, 0, 1]
        .into_iter()
        .map(|n| {
            let p = keyhole_loop(n, 0.5).map_err(err)?;
            let m = monodromy(&b, &p)?;
            Ok((p, m))
        })
        .collect::<Result<_, String>>()?;
    let id = Permutation::identity(b.len());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..20 {
        let len = rng.gen_range(1..=4);
        let mut path: Option<ParamPath> = None;
        let mut expected = id.clone();
        let mut word = String::new();
        for _ in 0..len {
            let i = rng.gen_range(0..letters.len());
            let inv = rng.gen_bool(0.5);
            let (p, m) = if inv {
                (letters[i].0.reverse(), letters[i].1.inverse())
            } else {
                letters[i].clone()
            };
            word.push_str(&format!("{}{} ", i as i64 - 1, if inv { "'" } else { "" }));
            expected = compose(&expected, &m).map_err(err)?;
            path = Some(match path {
                None => p,
                Some(q) => q.concat(&p).map_err(err)?,
            });
        }
        let path = path.expect("non-empty word");
        let got = monodromy(&b, &path)?;
        ensure!(
            got == expected,
            "word {word}(trial {trial}): {got} vs {expected}"
        );
        let back = monodromy(&b, &path.reverse())?;
        ensure!(
            back == got.inverse(),
            "word {word}: reverse gives {back}, inverse is {}",
            got.inverse()
        );
    }
    for center in [c(3.0, 0.0), c(-3.0, 0.0), c(1.5, 2.0), c(-0.5, -6.0)] {
        let p = monodromy(&b, &regular_loop(center, 0.5, 1).map_err(err)?)?;
        ensure!(p.is_identity(), "regular loop at {center} gives {p}");
    }
    Ok("20 words, composition and inverse laws exact, 4 regular loops trivial".into())
}

fn tracking_soundness() -> Outcome {
    let b = base(FIVE)?;
    let cfg = TrackConfig::default();
    let mut worst_residual = 0.0_f64;
    let mut worst_return = 0.0_f64;
    let mut paths = Vec::new();
    for n in -1..=2 {
        paths.push(keyhole_loop(n, 0.5).map_err(err)?);
    }
    paths.push(composite_path(2, 0.5).map_err(err)?);
    for p in &paths {
        let (end, fwd) = track_bundle(&b, p, &cfg).map_err(err)?;
        let (home, rev) = track_bundle(&end, &p.reverse(), &cfg).map_err(err)?;
        worst_residual = worst_residual.max(fwd.max_residual).max(rev.max_residual);
        let e = extract_permutation(&b, &home).map_err(err)?;
        ensure!(e.is_identity(), "out and back permutes the roots: {e}");
        for r in &home.roots {
            let d = (r.z - b.get(r.label).expect("same labels")).norm();
            worst_return = worst_return.max(d);
        }
    }
    ensure!(
        worst_residual < 1e-12,
        "residual reached {worst_residual:e}"
    );
    ensure!(
        worst_return < 1e-8,
        "reverse transport off by {worst_return:e}"
    );
    Ok(format!(
        "max residual {worst_residual:.1e}, max return error {worst_return:.1e}"
    ))
}

fn figures() -> Outcome {
    let (report, files) = cmd_figures(&[1, 2, 3, 4], 0.5).map_err(err)?;
    ensure!(files.len() == 4, "{} SVG files", files.len());
    for f in &files {
        ensure!(
            f.name.ends_with(".svg") && f.contents.starts_with("<svg"),
            "{} is not an SVG",
            f.name
        );
    }
    let x = real_root();
    let fig = |id: u8| {
        report
            .figures
            .iter()
            .find(|f| f.id == id)
            .expect("figure present")
    };
    let marker = |id: u8, label: &str| {
        fig(id)
            .markers
            .iter()
            .find(|m| m.label == label)
            .map(|m| m.point)
            .ok_or_else(|| format!("figure {id} has no marker {label}"))
    };

    ensure!(
        (marker(1, "root")? - x).norm() < 1e-15,
        "figure 1 root marker"
    );
    ensure!(
        (marker(1, "(0, 1)")? - c(0.0, 1.0)).norm() < 1e-15,
        "figure 1 misses (0, 1)"
    );
    ensure!(
        (marker(2, "start")? - x).norm() < 1e-15,
        "figure 2 starts off the real root"
    );
    for id in [3, 4] {
        for k in -1..=3_i64 {
            let m = marker(id, &format!("a_{k}"))?;
            let want = c(-1.0, (2 * k + 1) as f64 * PI);
            ensure!((m - want).norm() < 1e-12, "figure {id}: a_{k} at {m}");
        }
        for w in &fig(id).windings {
            let want = i64::from(w.n == 2);
            ensure!(
                w.winding == want,
                "figure {id}: winding about a_{} is {}",
                w.n,
                w.winding
            );
        }
    }
    let note = fig(4).annotation.clone().unwrap_or_default();
    ensure!(
        note.contains("wind(a_2) = 1"),
        "figure 4 annotation {note:?}"
    );
    ensure!(
        files[3].contents.contains("wind(a_2) = 1"),
        "annotation missing from SVG"
    );
    Ok("4 SVGs, root, lattice markers and winding annotation verified".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("critical lattice", critical_lattice),
        ("real root", real_root_bounds),
        ("oracle equivalence", oracle_equivalence),
        ("transpositions", transpositions),
        ("homotopy equivalence", homotopy),
        ("symmetric group", symmetric_group),
        ("group laws", group_laws),
        ("tracking soundness", tracking_soundness),
        ("figure regeneration", figures),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_owned()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
