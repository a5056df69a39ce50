//! Analytic coverage probability against the SIR threshold for three RIS
//! sizes, default urban scenario.

use rishap::analytic::AnalyticModel;
use rishap::geometry::SystemParams;

fn main() -> rishap::Result<()> {
    let sizes = [64, 128, 256];
    let models = sizes
        .iter()
        .map(|&num_re| AnalyticModel::new(&SystemParams { num_re, ..SystemParams::default() }))
        .collect::<rishap::Result<Vec<_>>>()?;

    println!("s_th_db,{}", sizes.map(|l| format!("L{l}")).join(","));
    for db in (-30..=30).step_by(5) {
        let t = 10f64.powf(db as f64 / 10.0);
        let row = models
            .iter()
            .map(|m| m.coverage(t).map(|c| format!("{c:.4}")))
            .collect::<rishap::Result<Vec<_>>>()?;
        println!("{db},{}", row.join(","));
    }
    Ok(())
}
