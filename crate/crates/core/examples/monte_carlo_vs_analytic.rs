//! Simulated and analytic coverage side by side, with standard errors.

use rishap::analytic::AnalyticModel;
use rishap::geometry::SystemParams;
use rishap::montecarlo::{run_batch, SimOptions};

fn main() -> rishap::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let params = SystemParams { num_re: 256, ..SystemParams::default() };
    let model = AnalyticModel::new(&params)?;

    let db: Vec<f64> = (-20..=20).step_by(5).map(f64::from).collect();
    let th: Vec<f64> = db.iter().map(|d| 10f64.powf(d / 10.0)).collect();
    let options = SimOptions { nearest_hap_interferes: true, ..SimOptions::default() };
    let stats = run_batch(&params, &options, trials, 7, &th)?;

    println!("s_th_db,analytic,simulated,std_error");
    for (d, pt) in db.iter().zip(&stats.coverage) {
        println!("{d},{:.4},{:.4},{:.4}", model.coverage(pt.threshold)?, pt.probability, pt.std_error);
    }
    println!(
        "capacity: analytic {:.4}, simulated {:.4} ± {:.4} bit/s/Hz",
        model.capacity()?.value,
        stats.capacity,
        stats.capacity_se
    );
    println!(
        "isolated {:.2}%, interference-free {:.2}%",
        100.0 * stats.isolated_fraction(),
        100.0 * stats.interference_free_fraction()
    );
    Ok(())
}
