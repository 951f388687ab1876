//! Gauss and Kloosterman sums at every place of degree dividing a, with
//! the Salie form and the Kloosterman angle.
//!
//! cargo run --example character_sums -- 5 1 2

use kloosha::algebra::{build_field, places_p, FieldElem, Tower};
use kloosha::charsums::{angle_of, gauss_sum, kloosterman_sum, salie_check};
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, gamma, a) = match args[..] {
        [p, g, a] => (p, g, a as u32),
        _ => (5, 1, 2),
    };
    let tower = Tower::new(&build_field(p, 1, None)?);
    let gamma = FieldElem(gamma);
    for v in &places_p(&tower, a)?.places {
        let g = gauss_sum(v, DEFAULT_BUDGET)?;
        let kl = kloosterman_sum(v, gamma, DEFAULT_BUDGET)?;
        let theta = angle_of(&kl, 1)?.theta;
        let salie = salie_check(v, gamma, DEFAULT_BUDGET)?;
        println!("{:<14} g = {:<24} Kl = {:<24} theta = {theta:.6} salie {salie}", v.display(), g.value, kl.value);
    }
    Ok(())
}
