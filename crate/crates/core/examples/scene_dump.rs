//! Samples one scene with explicit building footprints and reports who sees
//! whom. Pass a seed as the first argument.

use rishap::geometry::{NetworkRealization, SystemParams, VisibilityMode};
use rishap::montecarlo::{evaluate_scene, trial_rng, SimOptions};

fn main() -> rishap::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let params = SystemParams::default();
    let mut rng = trial_rng(seed, 0);
    let scene = NetworkRealization::sample(&params, VisibilityMode::Explicit, &mut rng)?;

    println!("window radius {:.0} m", scene.window_radius);
    println!("{} buildings", scene.rects.len());
    println!("{} HAPs, {} visible", scene.haps.len(), scene.n_visible_haps());
    let visible_ris = scene.ris_visible.iter().filter(|&&v| v).count();
    println!("{} RISs, {visible_ris} visible", scene.riss.len());

    let options = SimOptions { mode: VisibilityMode::Explicit, nearest_hap_interferes: true };
    let out = evaluate_scene(&scene, &params, &options, &mut rng);
    match out.sir {
        Some(s) => println!("SIR {:.2} dB via RIS at {:.1} m, HAP at {:.0} m", 10.0 * s.log10(), out.r_g, out.r_q),
        None => println!("no visible RIS: user isolated"),
    }
    Ok(())
}
