use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::charsums::{place_sums, AdditiveCharacter, PlaceSums};
use crate::curve::CurveParams;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

use super::LPolynomial;

/// `prod_v (1 - g(v) Kl(v) T^d + g(v)^2 q^d T^{2d})` over `P_q(a)`.
pub fn closed_form_lpolynomial(params: &CurveParams, budget: f64) -> Result<LPolynomial> {
    closed_form_with_character(params, AdditiveCharacter::default(), budget)
}

/// The same product computed with the additive character `psi_q(c x)`.
pub fn closed_form_with_character(params: &CurveParams, chi: AdditiveCharacter, budget: f64) -> Result<LPolynomial> {
    let places = params.places()?;
    let b = params.b() as f64;
    let p = params.p() as f64;
    let cost = places.len() as f64 * b * (p - 1.0) * (p - 1.0);
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget });
    }
    let sums = place_sums(&places, params.gamma, chi, budget)?;
    let l = expand_place_factors(params.q(), params.p() as u32, &sums)?;
    if l.coeffs.len() != params.b() + 1 {
        return Err(Error::Config(format!("expanded degree {} differs from b = {}", l.coeffs.len() - 1, params.b())));
    }
    Ok(l)
}

/// Multiplies out the per-place quadratic factors in `Z[zeta_p][T]` and
/// checks that every coefficient is an ordinary integer.
pub fn expand_place_factors(q: u64, p: u32, sums: &[PlaceSums]) -> Result<LPolynomial> {
    let total: usize = sums.iter().map(|s| 2 * s.gauss.place.degree as usize).sum();
    let mut c: Vec<CycInt> = vec![CycInt::zero(p); total + 1];
    c[0] = CycInt::one(p);
    let mut deg = 0usize;
    for s in sums {
        let d = s.gauss.place.degree as usize;
        let g = &s.gauss.value;
        let lin = -&(g * &s.kloosterman.value);
        let quad = (g * g).as_rational_integer()? * BigInt::from(q).pow(d as u32);
        deg += 2 * d;
        for k in (d..=deg).rev() {
            let mut acc = &lin * &c[k - d];
            if k >= 2 * d {
                acc = &acc + &c[k - 2 * d].scale(&quad);
            }
            c[k] = &c[k] + &acc;
        }
    }
    let coeffs = c.iter().map(|x| x.as_rational_integer()).collect::<Result<Vec<_>>>()?;
    debug_assert!(coeffs[0].is_one());
    Ok(LPolynomial { q, coeffs })
}
