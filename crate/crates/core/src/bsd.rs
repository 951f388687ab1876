//! The central value `L(E, 1/q)`, the order of the Tate-Shafarevich group
//! from the BSD formula, and the Brauer-Siegel ratio.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::Serialize;

use crate::charsums::PlaceSums;
use crate::curve::CurveParams;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::lfunction::valuation;

/// Natural log of a positive integer of any size, from its bit length and top 64 bits.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "log of a non-positive integer");
    let bits = x.bits();
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).ln();
    }
    let sh = bits - 64;
    let top = (x >> sh as usize).iter_u64_digits().next().unwrap();
    (top as f64).ln() + sh as f64 * std::f64::consts::LN_2
}

/// `q^{q^a - 1} L(1/q) = prod_v (q^d - g(v) Kl(v) + g(v)^2)`, an integer.
pub fn central_numerator(q: u64, sums: &[PlaceSums]) -> Result<BigInt> {
    let p = sums.first().map_or(3, |s| s.gauss.value.p());
    let mut acc = CycInt::one(p);
    for s in sums {
        let g = &s.gauss.value;
        let qd = CycInt::from_int(p, BigInt::from(q).pow(s.gauss.place.degree));
        let factor = &(&qd - &(g * &s.kloosterman.value)) + &(g * g);
        acc = &acc * &factor;
    }
    acc.as_rational_integer()
}

/// `L(E, 1/q)` as an exact rational, from the product over places.
pub fn central_value(params: &CurveParams, budget: f64) -> Result<BigRational> {
    let sums = params.place_sums(budget)?;
    central_value_from_sums(params, &sums)
}

pub fn central_value_from_sums(params: &CurveParams, sums: &[PlaceSums]) -> Result<BigRational> {
    let n = central_numerator(params.q(), sums)?;
    if n.is_zero() {
        return Err(Error::VanishingCentralValue);
    }
    let v = BigRational::new(n, BigInt::from(params.q()).pow(params.qa() - 1));
    assert!(v.is_positive(), "central value is positive");
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrauerSiegel {
    /// `log |Sha| / log H`.
    pub ratio: f64,
    /// `1 - log q / log H + log L(1/q) / log H`.
    pub decomposition: f64,
    pub decomposition_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShaReport {
    pub central_value: BigRational,
    pub sha_order: BigInt,
    pub is_perfect_square: bool,
    pub gcd_with_p: BigInt,
    /// `ord_p L(1/q)` normalized so that `ord(q) = 1`.
    pub ordp_central: BigRational,
    pub brauer_siegel: BrauerSiegel,
    pub logq_h: u64,
}

/// `log H = ((q^a + 1)/2) log q`.
pub fn ln_height(params: &CurveParams) -> f64 {
    ((params.qa() + 1) / 2) as f64 * (params.q() as f64).ln()
}

/// Brauer-Siegel ratio and the identity it satisfies through the central value.
pub fn brauer_siegel_of(params: &CurveParams, sha: &BigInt, central: &BigRational) -> BrauerSiegel {
    let lnh = ln_height(params);
    let ratio = ln_big(sha) / lnh;
    let ln_l = ln_big(central.numer()) - ln_big(central.denom());
    let decomposition = 1.0 - (params.q() as f64).ln() / lnh + ln_l / lnh;
    BrauerSiegel { ratio, decomposition, decomposition_error: (ratio - decomposition).abs() }
}

pub fn sha_order(params: &CurveParams, budget: f64) -> Result<ShaReport> {
    let sums = params.place_sums(budget)?;
    sha_order_from_sums(params, &sums)
}

/// `|Sha| = q^{(q^a+1)/2 - 1} L(1/q)` and its consistency data.
pub fn sha_order_from_sums(params: &CurveParams, sums: &[PlaceSums]) -> Result<ShaReport> {
    let central = central_value_from_sums(params, sums)?;
    sha_order_from_central(params, central)
}

pub fn sha_order_from_central(params: &CurveParams, central: BigRational) -> Result<ShaReport> {
    let q = BigInt::from(params.q());
    let logq_h = (params.qa() + 1) / 2;
    let scaled = &central * BigRational::from_integer(q.clone().pow(logq_h - 1));
    if !scaled.is_integer() || !scaled.is_positive() {
        return Err(Error::NonIntegerSha(scaled.to_string()));
    }
    let sha = scaled.to_integer();
    let root = sha.sqrt();
    let p = BigInt::from(params.p());
    let f = params.field().degree() as i64;
    let vp = valuation(central.numer(), params.p()) as i64 - valuation(central.denom(), params.p()) as i64;
    let ordp_central = BigRational::new(BigInt::from(vp), BigInt::from(f));
    Ok(ShaReport {
        brauer_siegel: brauer_siegel_of(params, &sha, &central),
        is_perfect_square: &root * &root == sha,
        gcd_with_p: sha.gcd(&p),
        ordp_central,
        sha_order: sha,
        central_value: central,
        logq_h,
    })
}

/// `log L(1/q) / log H` and the envelope `a |.|`; the constants bounding it are not asserted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralValueBounds {
    pub mid: f64,
    pub envelope: f64,
}

pub fn central_value_bounds_check(params: &CurveParams, central: &BigRational) -> CentralValueBounds {
    let mid = (ln_big(central.numer()) - ln_big(central.denom())) / ln_height(params);
    CentralValueBounds { mid, envelope: params.a as f64 * mid.abs() }
}

/// `-(q^a - 1)/2`, the expected normalized valuation of the central value.
pub fn expected_ordp(params: &CurveParams) -> BigRational {
    BigRational::new(-BigInt::from(params.qa() - 1), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::algebra::{build_field, FieldElem, Tower};

    fn params(gamma: u64, a: u32) -> CurveParams {
        CurveParams::new(Tower::new(&build_field(3, 1, None).unwrap()), FieldElem(gamma), a).unwrap()
    }

    #[test]
    fn level_one_over_f3() {
        let r1 = sha_order(&params(1, 1), 1e9).unwrap();
        assert_eq!(r1.central_value, BigRational::new(1.into(), 3.into()));
        assert_eq!(r1.sha_order, BigInt::one());
        assert_eq!(r1.brauer_siegel.ratio, 0.0);
        let r2 = sha_order(&params(2, 1), 1e9).unwrap();
        assert_eq!(r2.central_value, BigRational::new(4.into(), 3.into()));
        assert_eq!(r2.sha_order, BigInt::from(4));
        assert!(r2.is_perfect_square);
        assert!((r2.brauer_siegel.ratio - 4f64.ln() / 9f64.ln()).abs() < 1e-12);
        assert_eq!(r2.ordp_central, expected_ordp(&params(2, 1)));
    }

    #[test]
    fn bounds_mid() {
        let c = central_value(&params(2, 1), 1e9).unwrap();
        assert!((central_value_bounds_check(&params(2, 1), &c).mid - 0.1309).abs() < 1e-4);
        let c = central_value(&params(1, 1), 1e9).unwrap();
        assert!((central_value_bounds_check(&params(1, 1), &c).mid + 0.5).abs() < 1e-12);
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(3).pow(5000u32);
        assert!((ln_big(&x) / (5000.0 * 3f64.ln()) - 1.0).abs() < 1e-14);
        assert_eq!(ln_big(&BigInt::one()), 0.0);
    }
}
