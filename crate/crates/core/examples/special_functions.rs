//! A tour of the special-function layer.

use rishap::specfun::*;

fn main() -> Result<()> {
    println!("ln Γ(170)            = {}", ln_gamma(170.0)?);
    println!("Γ(0.5)²              = {}", gamma(0.5)?.powi(2));
    println!("ψ(1)                 = {}", digamma(1.0)?);

    // the plain value underflows, the scaled and log forms do not
    let x = 39_269.908_169_872_41;
    println!("Γ(0, {x})       = {:e}", upper_incomplete_gamma(0.0, x)?);
    println!("e^x Γ(0, x)          = {:e}", exp_scaled_upper_gamma(0.0, x)?);
    println!("ln Γ(0, x)           = {}", ln_upper_incomplete_gamma(0.0, x)?);

    println!("1F1(2; 1; 3)         = {} (e³·4 = {})", hyp1f1(2.0, 1.0, 3.0)?, 3f64.exp() * 4.0);
    println!("2F1(1, 2; 3; 0.75)   = {}", hyp2f1(1.0, 2.0, 3.0, 0.75)?);
    println!("2F1(1.2, 2.3; 3.5; -7) = {}", hyp2f1(1.2, 2.3, 3.5, -7.0)?);
    println!("reg 2F1(1, 1; -1; 0.4) = {}", hyp2f1_regularized(1.0, 1.0, -1.0, 0.4)?);
    println!("reg 3F2(1,1,2.5; 2,0.5; 0.5) = {}", hyp3f2_regularized(1.0, 1.0, 2.5, 2.0, 0.5, 0.5)?);

    match hyp2f1(1.0, 1.0, 2.0, 1.0) {
        Ok(v) => println!("2F1 at z = 1: {v}"),
        Err(e) => println!("2F1 at z = 1: {e}"),
    }

    let spec = QuadratureSpec::relative(1e-12);
    let q = adaptive_quad(|t: f64| (-t * t).exp(), 0.0, f64::INFINITY, &spec)?;
    println!("∫₀^∞ e^(-t²) dt      = {q} (√π/2 = {})", std::f64::consts::PI.sqrt() / 2.0);
    Ok(())
}
