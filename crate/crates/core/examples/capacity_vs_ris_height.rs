//! Ergodic capacity against RIS height for two RIS sizes and two K-factors.
//! Also reports whether the closed form was usable at each point.

use rishap::analytic::AnalyticModel;
use rishap::geometry::SystemParams;

fn main() -> rishap::Result<()> {
    println!("h_ris,num_re,k,capacity,closed_form");
    for (num_re, k) in [(128, 1.0), (128, 10.0), (256, 1.0), (256, 10.0)] {
        for h_ris in [10.0, 25.0, 50.0, 75.0, 100.0, 150.0, 200.0] {
            let mut p = SystemParams { h_ris, num_re, ..SystemParams::default() };
            p.set_k_factor(k);
            let est = AnalyticModel::new(&p)?.capacity()?;
            let cf = est.closed_form.map_or_else(|| "skipped".to_string(), |v| format!("{v:.5}"));
            println!("{h_ris},{num_re},{k},{:.5},{cf}", est.value);
        }
    }
    Ok(())
}
