//! Builds F_q, lists P_q(a) and compares its size with the prime-polynomial bounds.
//!
//! cargo run --example fields_and_places -- 3 1 4

use kloosha::algebra::{build_field, place_count_bounds, places_p, Tower};

fn main() -> kloosha::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, f, a) = match args[..] {
        [p, f, a] => (p, f as u32, a as u32),
        _ => (3, 1, 4),
    };
    let spec = build_field(p, f, None)?;
    println!("F_{} with modulus coefficients {:?}", p.pow(f), spec.modulus);
    let tower = Tower::new(&spec);
    let places = places_p(&tower, a)?;
    for v in places.places.iter().take(12) {
        println!("  deg {}  {}", v.degree, v.display());
    }
    if places.len() > 12 {
        println!("  ... {} more", places.len() - 12);
    }
    let (lo, hi) = place_count_bounds(tower.q(), a);
    println!("|P| = {}, sum of degrees = {}, bounds [{lo:.1}, {hi:.1}]", places.len(), places.degree_sum());
    Ok(())
}
