//! Discriminant, j-invariant, bad reduction, torsion and the 2-isogeny identity.
//!
//! cargo run --example curve_invariants -- 3 2 2

use kloosha::algebra::{build_field, format_poly, FieldElem, Tower};
use kloosha::curve::{bad_places_report, curve_invariants, isogeny_identity_check, torsion_structure, CurveParams};

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, gamma, a) = match args[..] {
        [p, g, a] => (p, g, a as u32),
        _ => (3, 2, 2),
    };
    let params = CurveParams::new(Tower::new(&build_field(p, 1, None)?), FieldElem(gamma), a)?;
    let inv = curve_invariants(&params);
    let field = params.field();
    println!("E: y^2 = x^3 + ({}) x^2 + {} x", format_poly(field, &params.wp(), "t"), params.gamma_label());
    println!("Delta = {}", format_poly(field, &inv.disc, "t"));
    println!("j has numerator degree {} and denominator degree {}", inv.j_num.len() - 1, inv.j_den.len() - 1);
    println!("log_q H = {}, log_q N = {}, tamagawa = {}, deg L = {}", inv.logq_h, inv.logq_n, inv.tamagawa, inv.b_degree);
    let bad = bad_places_report(&params)?;
    println!("bad reduction: {:?}", bad);
    println!("torsion: {:?}", torsion_structure(&params));
    println!("2-isogeny identity: {}", isogeny_identity_check(&params));
    Ok(())
}
