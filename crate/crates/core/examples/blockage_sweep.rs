//! Coverage at 0 dB against building density for several building sizes:
//! denser or larger buildings hide interfering HAPs.

use rishap::analytic::AnalyticModel;
use rishap::geometry::{mean_visible_haps, SystemParams};

fn main() -> rishap::Result<()> {
    println!("lambda_b,size,coverage,visible_haps");
    for size in [15.0, 25.0, 35.0] {
        for i in 1..=12 {
            let lambda_b = 2.5e-5 * i as f64;
            let mut p = SystemParams { lambda_b, lambda_hap: 15e-6, num_re: 256, ..SystemParams::default() };
            p.set_mean_len_wid(size);
            let c = AnalyticModel::new(&p)?.coverage(1.0)?;
            println!("{lambda_b:.3e},{size},{c:.4},{:.3}", mean_visible_haps(&p)?);
        }
    }
    Ok(())
}
