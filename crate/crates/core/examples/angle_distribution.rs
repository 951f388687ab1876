//! Kloosterman angles over P_q(a) against the Sato-Tate measure.
//!
//! cargo run --release --example angle_distribution -- 1 8

use kloosha::algebra::{build_field, FieldElem, Tower};
use kloosha::curve::CurveParams;
use kloosha::distribution::{angle_sample, distribution_report, sato_tate_cdf};
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (gamma, a) = match args[..] {
        [g, a] => (g, a as u32),
        _ => (1, 8),
    };
    let params = CurveParams::new(Tower::new(&build_field(3, 1, None)?), FieldElem(gamma), a)?;
    let sample = angle_sample(&params, DEFAULT_BUDGET)?;
    let n = sample.angles.len() as f64;
    println!("{} angles", sample.angles.len());
    for k in 1..=8 {
        let t = k as f64 * std::f64::consts::PI / 8.0;
        let emp = sample.angles.iter().filter(|&&x| x <= t).count() as f64 / n;
        println!("F({t:.3}): empirical {emp:.4}  Sato-Tate {:.4}", sato_tate_cdf(t));
    }
    let r = distribution_report(&sample, 3)?;
    println!("KS {:.4}, mean W {:.4} (error {:.4}), moments {:?}", r.ks_distance, r.w_integral, r.w_error, r.moments);
    println!("margins {:?} against epsilon {:.2e}", r.margins, r.epsilon_a);
    Ok(())
}
