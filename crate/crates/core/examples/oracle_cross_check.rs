//! Compares the product formula with the double-sum oracle and with the
//! Euler product of local point counts.
//!
//! cargo run --release --example oracle_cross_check -- 3 2 2

use kloosha::algebra::{build_field, FieldElem, Tower};
use kloosha::curve::CurveParams;
use kloosha::lfunction::{
    closed_form_lpolynomial, coeffs_from_power_sums, complete_by_functional_equation, default_n_max, log_coeffs_of,
    oracle_log_coeffs, oracle_point_counts,
};
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, gamma, a) = match args[..] {
        [p, g, a] => (p, g, a as u32),
        _ => (3, 2, 2),
    };
    let params = CurveParams::new(Tower::new(&build_field(p, 1, None)?), FieldElem(gamma), a)?;
    let l = closed_form_lpolynomial(&params, DEFAULT_BUDGET)?;
    let n = default_n_max(params.q(), DEFAULT_BUDGET).min(params.b());
    let oracle = oracle_log_coeffs(&params, n, DEFAULT_BUDGET)?;
    let closed = log_coeffs_of(&l, n);
    for k in 1..=n {
        println!("c_{k}: oracle {:>12}  product {:>12}", oracle.get(k), closed.get(k));
    }
    let partial = coeffs_from_power_sums(&oracle)?;
    match complete_by_functional_equation(&partial, params.b(), params.q()) {
        Ok((full, sign)) => println!("completed from the oracle (sign {sign}): equal to the product: {}", full == l),
        Err(e) => println!("oracle prefix too short to complete: {e}"),
    }
    let counts = oracle_point_counts(&params, n.min(6) as u32, DEFAULT_BUDGET)?;
    let series = counts.truncated_series();
    println!("Euler product over {} places matches through T^{}: {}", counts.entries.len(), series.len() - 1, series[..] == l.coeffs[..series.len()]);
    Ok(())
}
