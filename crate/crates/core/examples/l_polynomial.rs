//! The L-polynomial as a product over places, with its functional equation,
//! Newton polygon and root check.
//!
//! cargo run --release --example l_polynomial -- 3 1 2

use kloosha::algebra::{build_field, FieldElem, Tower};
use kloosha::curve::CurveParams;
use kloosha::lfunction::{closed_form_lpolynomial, functional_equation_sign, newton_polygon, rh_check};
use kloosha::DEFAULT_BUDGET;

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, gamma, a) = match args[..] {
        [p, g, a] => (p, g, a as u32),
        _ => (3, 1, 2),
    };
    let params = CurveParams::new(Tower::new(&build_field(p, 1, None)?), FieldElem(gamma), a)?;
    let l = closed_form_lpolynomial(&params, DEFAULT_BUDGET)?;
    let shown: Vec<String> = l.coeffs.iter().take(10).map(|c| c.to_string()).collect();
    println!("deg L = {}, first coefficients [{}]", l.degree(), shown.join(", "));
    println!("functional equation sign {}", functional_equation_sign(&l)?);
    for (slope, mult) in newton_polygon(&l, p, 1).slopes {
        println!("slope {slope} with multiplicity {mult}");
    }
    let rh = rh_check(&l)?;
    println!("max ||z| - 1| over the roots of L(T/q): {:.2e} after {} iterations", rh.max_deviation, rh.iterations);
    Ok(())
}
