//! Distance moments, power moments and the gamma fit, checked against a
//! short simulation.

use rishap::analytic::{fit_gamma, moment_rg, moment_rh, moment_rq, PowerMoments};
use rishap::geometry::SystemParams;
use rishap::montecarlo::{run_batch, SimOptions};

fn main() -> rishap::Result<()> {
    let p = SystemParams::default();
    for t in [1.0, 2.0, 4.0] {
        println!(
            "t={t}: E[R_h^-tε] = {:.4e}  E[R_g^-tε/2] = {:.4e}  E[R_q^-tε/2] = {:.4e}",
            moment_rh(t, &p)?,
            moment_rg(t, &p)?,
            moment_rq(t, &p)?
        );
    }

    let m = PowerMoments::new(&p)?;
    let fit = fit_gamma(&p)?;
    println!("gamma fit: {fit:?}");

    let options = SimOptions { nearest_hap_interferes: true, ..SimOptions::default() };
    let s = run_batch(&p, &options, 20_000, 3, &[])?;
    let rows = [
        ("E[A_N]", m.mean_an, s.a_n.mean, s.a_n.mean_se),
        ("Var[A_N]", m.var_an(), s.a_n.variance, s.a_n.variance_se),
        ("E[A_D]", m.mean_ad, s.a_d.mean, s.a_d.mean_se),
        ("Var[A_D]", m.var_ad(), s.a_d.variance, s.a_d.variance_se),
    ];
    println!("quantity,analytic,simulated,std_error,z");
    for (name, an, mc, se) in rows {
        println!("{name},{an:.4e},{mc:.4e},{se:.2e},{:+.2}", (mc - an) / se);
    }
    Ok(())
}
