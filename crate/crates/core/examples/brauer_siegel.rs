//! log |Sha| / log H for a = 1..8 at q = 3.
//!
//! cargo run --release --example brauer_siegel -- 1

use kloosha::algebra::{build_field, FieldElem, Tower};
use kloosha::bsd::{central_value_bounds_check, sha_order};
use kloosha::curve::CurveParams;
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let gamma: u64 = std::env::args().nth(1).map_or(1, |g| g.parse().expect("integer gamma"));
    let tower = Tower::new(&build_field(3, 1, None)?);
    println!("{:>2} {:>8} {:>10} {:>10} {:>10}", "a", "digits", "ratio", "mid", "a*|mid|");
    for a in 1..=8 {
        let params = CurveParams::new(tower.clone(), FieldElem(gamma), a)?;
        let r = sha_order(&params, DEFAULT_BUDGET)?;
        let b = central_value_bounds_check(&params, &r.central_value);
        let digits = r.sha_order.to_string().len();
        println!("{a:>2} {digits:>8} {:>10.6} {:>10.6} {:>10.6}", r.brauer_siegel.ratio, b.mid, b.envelope);
    }
    Ok(())
}
