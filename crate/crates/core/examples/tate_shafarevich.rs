//! The central value L(E, 1/q) and the order of Sha from the BSD formula.
//!
//! cargo run --release --example tate_shafarevich -- 3 2 4

use kloosha::algebra::{build_field, FieldElem, Tower};
use kloosha::bsd::{central_value_bounds_check, sha_order};
use kloosha::curve::CurveParams;
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, gamma, a) = match args[..] {
        [p, g, a] => (p, g, a as u32),
        _ => (3, 2, 4),
    };
    let params = CurveParams::new(Tower::new(&build_field(p, 1, None)?), FieldElem(gamma), a)?;
    let r = sha_order(&params, DEFAULT_BUDGET)?;
    let root = r.sha_order.sqrt();
    println!("L(1/q) = {}", r.central_value);
    println!("|Sha| = {} = {}^2 (square: {})", r.sha_order, root, r.is_perfect_square);
    println!("gcd(|Sha|, p) = {}, ord_p L(1/q) = {}", r.gcd_with_p, r.ordp_central);
    let b = central_value_bounds_check(&params, &r.central_value);
    println!("log L(1/q) / log H = {:.6}, Brauer-Siegel ratio {:.6}", b.mid, r.brauer_siegel.ratio);
    Ok(())
}
