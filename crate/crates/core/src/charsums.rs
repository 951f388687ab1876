//! Gauss and Kloosterman sums at the places of `F_q(t)`.
//!
//! At a place `v` of degree `d` with root `beta` the additive character is
//! `x -> zeta_p^{Tr(beta x)}` on `F_{q^d}` (absolute trace to `F_p`). Sums are
//! accumulated as histograms of `zeta_p` exponents and converted to
//! [`CycInt`] once.

use std::f64::consts::{FRAC_PI_2, PI};

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Embedding, FieldElem, FiniteField, Place, PlaceSet, Tower};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

/// The additive character `x -> psi_q(c x)` of `F_q`; `c = 1` is the canonical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveCharacter {
    pub scale: FieldElem,
}

impl Default for AdditiveCharacter {
    fn default() -> Self {
        AdditiveCharacter { scale: FieldElem::ONE }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussValue {
    pub place: Place,
    pub value: CycInt,
    /// `iota_1(g) = q^{d/2} i^{epsilon_class}`.
    pub epsilon_class: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct KloostermanValue {
    pub place: Place,
    pub gamma: FieldElem,
    pub value: CycInt,
    /// `q^{deg v}`, the product of the two Frobenius eigenvalues.
    #[serde(serialize_with = "ser_display")]
    pub modulus_norm: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct Angle {
    pub theta: f64,
    pub degree: u32,
    pub embedding: u32,
}

#[derive(Clone, Debug)]
pub struct PlaceSums {
    pub gauss: GaussValue,
    pub kloosterman: KloostermanValue,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn check_budget(cost: f64, budget: f64) -> Result<()> {
    if cost > budget {
        Err(Error::BudgetExceeded { cost, budget })
    } else {
        Ok(())
    }
}

/// `-sum_x lambda(x) zeta^{Tr(beta x)}` over `field`.
pub fn gauss_sum_raw(field: &FiniteField, beta: FieldElem) -> CycInt {
    let p = field.p() as usize;
    let mut hist = vec![0i64; p];
    if let Some(t) = field.tables() {
        let lb = t.log[beta.0 as usize] as usize;
        let n = t.n as usize;
        for i in 0..n {
            let tr = t.trace[t.exp[lb + i] as usize] as usize;
            hist[tr] += if i % 2 == 0 { 1 } else { -1 };
        }
    } else {
        for x in 1..field.size() {
            let x = FieldElem(x);
            let tr = field.trace(field.mul(beta, x)) as usize;
            hist[tr] += field.quadratic_character(x) as i64;
        }
    }
    for h in hist.iter_mut() {
        *h = -*h;
    }
    CycInt::from_counts(p as u32, &hist)
}

/// `-sum_{x != 0} zeta^{Tr(beta (x + alpha/x))}` over `field`.
pub fn kloosterman_sum_raw(field: &FiniteField, beta: FieldElem, alpha: FieldElem) -> CycInt {
    let p = field.p() as usize;
    let mut hist = vec![0i64; p];
    if let Some(t) = field.tables() {
        let n = t.n as usize;
        let lb = t.log[beta.0 as usize] as usize;
        let lba = (lb + t.log[alpha.0 as usize] as usize) % n;
        for i in 0..n {
            let a = t.trace[t.exp[lb + i] as usize] as usize;
            let b = t.trace[t.exp[lba + n - i] as usize] as usize;
            hist[(a + b) % p] -= 1;
        }
    } else {
        for x in 1..field.size() {
            let x = FieldElem(x);
            let y = field.add(x, field.div(alpha, x).unwrap());
            hist[field.trace(field.mul(beta, y)) as usize] -= 1;
        }
    }
    CycInt::from_counts(p as u32, &hist)
}

/// `-sum_y lambda(y^2 - 4 alpha) zeta^{Tr(beta y)}`, which equals the Kloosterman sum.
pub fn salie_form_raw(field: &FiniteField, beta: FieldElem, alpha: FieldElem) -> CycInt {
    let p = field.p() as usize;
    let mut hist = vec![0i64; p];
    let four_alpha = field.scale(alpha, 4);
    for y in 0..field.size() {
        let y = FieldElem(y);
        let l = field.quadratic_character(field.sub(field.mul(y, y), four_alpha));
        hist[field.trace(field.mul(beta, y)) as usize] -= l as i64;
    }
    CycInt::from_counts(p as u32, &hist)
}

/// The root used for the character at `place`, twisted by `chi`.
fn twisted_beta(place: &Place, chi: AdditiveCharacter) -> FieldElem {
    place.ext.field.mul(place.beta, place.ext.embed(chi.scale))
}

/// `q^{d/2} i^k`-classification of a Gauss sum, certified exactly.
fn epsilon_class(place: &Place, g: &CycInt) -> u8 {
    let q = place.ext.q();
    let d = place.degree;
    let qd = BigInt::from(q).pow(d);
    let lam = if (q.pow(d) - 1) / 2 % 2 == 0 { 1 } else { -1 };
    let sq = (g * g).as_rational_integer().expect("Gauss sum squared is rational");
    assert_eq!(sq, &qd * lam, "g(v)^2 = lambda_v(-1) q^d");
    let z = g.complex_embedding(1).unwrap();
    let r = (q as f64).powf(d as f64 / 2.0);
    let k = ((z.im.atan2(z.re) / FRAC_PI_2).round() as i64).rem_euclid(4) as u8;
    let axis = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][k as usize];
    assert!((z.re - r * axis.0).hypot(z.im - r * axis.1) <= 1e-6 * r, "Gauss sum lies on an axis");
    // An odd class means g is purely imaginary, so conjugation negates it.
    let conj = g.conj();
    assert_eq!(k % 2 == 1, lam == -1);
    assert!(if k % 2 == 1 { conj == -g } else { conj == *g });
    k
}

pub fn gauss_sum(place: &Place, budget: f64) -> Result<GaussValue> {
    gauss_sum_with(place, AdditiveCharacter::default(), budget)
}

pub fn gauss_sum_with(place: &Place, chi: AdditiveCharacter, budget: f64) -> Result<GaussValue> {
    check_budget(place.ext.field.size() as f64, budget)?;
    let value = gauss_sum_raw(&place.ext.field, twisted_beta(place, chi));
    let epsilon_class = epsilon_class(place, &value);
    Ok(GaussValue { place: place.clone(), value, epsilon_class })
}

pub fn kloosterman_sum(place: &Place, gamma: FieldElem, budget: f64) -> Result<KloostermanValue> {
    kloosterman_sum_with(place, gamma, AdditiveCharacter::default(), budget)
}

pub fn kloosterman_sum_with(
    place: &Place,
    gamma: FieldElem,
    chi: AdditiveCharacter,
    budget: f64,
) -> Result<KloostermanValue> {
    if gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    check_budget(place.ext.field.size() as f64, budget)?;
    let value = kloosterman_sum_raw(&place.ext.field, twisted_beta(place, chi), place.ext.embed(gamma));
    assert!(value.is_totally_real(), "Kloosterman sums are totally real");
    assert_eq!(value.ord_one_minus_zeta(), Some(0), "Kloosterman sums are p-adic units");
    Ok(KloostermanValue {
        place: place.clone(),
        gamma,
        value,
        modulus_norm: BigInt::from(place.ext.q()).pow(place.degree),
    })
}

/// Whether the Salie form reproduces the Kloosterman sum exactly.
pub fn salie_check(place: &Place, gamma: FieldElem, budget: f64) -> Result<bool> {
    let kv = kloosterman_sum(place, gamma, budget)?;
    let s = salie_form_raw(&place.ext.field, place.beta, place.ext.embed(gamma));
    Ok(s == kv.value)
}

/// `s_m = kl^m + kl'^m` from `s_0 = 2`, `s_1 = Kl`, `s_{m+1} = Kl s_m - q^d s_{m-1}`.
pub fn kloosterman_power_sum(kv: &KloostermanValue, m: u32) -> CycInt {
    let p = kv.value.p();
    let mut prev = CycInt::from_int(p, 2);
    if m == 0 {
        return prev;
    }
    let mut cur = kv.value.clone();
    for _ in 1..m {
        let next = &(&kv.value * &cur) - &prev.scale(&kv.modulus_norm);
        prev = cur;
        cur = next;
    }
    cur
}

/// `theta` in `(0, pi)` with `2 q^{d/2} cos(theta) = iota_k(Kl)`.
pub fn angle_of(kv: &KloostermanValue, k: u32) -> Result<Angle> {
    let z = kv.value.complex_embedding(k)?;
    let d = kv.place.degree;
    let r = z.re / (2.0 * (kv.place.ext.q() as f64).powf(d as f64 / 2.0));
    if !(r > -1.0 && r < 1.0) {
        return Err(Error::DegenerateAngle { degree: d });
    }
    let theta = r.acos();
    debug_assert!(theta > 0.0 && theta < PI);
    Ok(Angle { theta, degree: d, embedding: k })
}

/// `beta` and `gamma` carried into `F_{q^{dm}}` along one embedding of `F_{q^d}`.
fn lift(tower: &Tower, place: &Place, gamma: FieldElem, m: u32) -> Result<(std::sync::Arc<crate::algebra::ExtField>, FieldElem, FieldElem)> {
    let big = tower.extension(place.degree * m)?;
    let e = Embedding::new(&place.ext.field, &big.field)?;
    let beta = e.apply(&big.field, place.beta);
    let g = e.apply(&big.field, place.ext.embed(gamma));
    Ok((big, beta, g))
}

/// Direct Gauss sum over `F_{q^{dm}}` with the lifted character.
pub fn lifted_gauss_sum(tower: &Tower, place: &Place, m: u32, budget: f64) -> Result<CycInt> {
    check_budget((tower.q() as f64).powi((place.degree * m) as i32), budget)?;
    let (big, beta, _) = lift(tower, place, FieldElem::ONE, m)?;
    Ok(gauss_sum_raw(&big.field, beta))
}

/// Direct Kloosterman sum over `F_{q^{dm}}` with the lifted character.
pub fn lifted_kloosterman_sum(tower: &Tower, place: &Place, gamma: FieldElem, m: u32, budget: f64) -> Result<CycInt> {
    if gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    check_budget((tower.q() as f64).powi((place.degree * m) as i32), budget)?;
    let (big, beta, g) = lift(tower, place, gamma, m)?;
    Ok(kloosterman_sum_raw(&big.field, beta, g))
}

/// Gauss and Kloosterman sums at every place of `places`, in place order.
pub fn place_sums(places: &PlaceSet, gamma: FieldElem, chi: AdditiveCharacter, budget: f64) -> Result<Vec<PlaceSums>> {
    if gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    let cost: f64 = places.places.iter().map(|v| 2.0 * v.ext.field.size() as f64).sum();
    check_budget(cost, budget)?;
    places
        .places
        .par_iter()
        .map(|v| {
            Ok(PlaceSums {
                gauss: gauss_sum_with(v, chi, f64::INFINITY)?,
                kloosterman: kloosterman_sum_with(v, gamma, chi, f64::INFINITY)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_field, places_p};

    const B: f64 = 1e9;

    fn f3_places() -> (std::sync::Arc<Tower>, Vec<Place>) {
        let t = Tower::new(&build_field(3, 1, None).unwrap());
        let s = places_p(&t, 1).unwrap();
        (t.clone(), s.places.clone())
    }

    fn c3(a: i64, b: i64) -> CycInt {
        CycInt::from_coeffs(3, vec![a.into(), b.into()])
    }

    #[test]
    fn gauss_sums_over_f3() {
        let (_, ps) = f3_places();
        // ps[0] = t + 1 (beta = 2), ps[1] = t + 2 (beta = 1)
        let g1 = gauss_sum(&ps[1], B).unwrap();
        assert_eq!(g1.value, c3(-1, -2));
        assert_eq!(g1.epsilon_class, 3);
        let g2 = gauss_sum(&ps[0], B).unwrap();
        assert_eq!(g2.value, c3(1, 2));
        assert_eq!(g2.epsilon_class, 1);
    }

    #[test]
    fn kloosterman_sums_over_f3() {
        let (_, ps) = f3_places();
        assert_eq!(kloosterman_sum(&ps[1], FieldElem(1), B).unwrap().value, c3(1, 0));
        assert_eq!(kloosterman_sum(&ps[1], FieldElem(2), B).unwrap().value, c3(-2, 0));
        assert_eq!(kloosterman_sum(&ps[0], FieldElem(2), B).unwrap().value, c3(-2, 0));
        assert_eq!(kloosterman_sum(&ps[0], FieldElem(0), B).unwrap_err(), Error::ZeroGamma);
    }

    #[test]
    fn power_sums_and_lift() {
        let (t, ps) = f3_places();
        let kv = kloosterman_sum(&ps[1], FieldElem(1), B).unwrap();
        assert_eq!(kloosterman_power_sum(&kv, 0), CycInt::from_int(3, 2));
        assert_eq!(kloosterman_power_sum(&kv, 2), CycInt::from_int(3, -5));
        assert_eq!(lifted_kloosterman_sum(&t, &ps[1], FieldElem(1), 2, B).unwrap(), CycInt::from_int(3, -5));
    }

    #[test]
    fn angles() {
        let (_, ps) = f3_places();
        let a = angle_of(&kloosterman_sum(&ps[1], FieldElem(1), B).unwrap(), 1).unwrap();
        assert!((a.theta - 1.27795).abs() < 1e-5);
        let b = angle_of(&kloosterman_sum(&ps[1], FieldElem(2), B).unwrap(), 1).unwrap();
        assert!((b.theta - 2.18628).abs() < 1e-5);
    }

    #[test]
    fn budget_is_enforced() {
        let (_, ps) = f3_places();
        assert!(matches!(gauss_sum(&ps[0], 2.0), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn salie_over_f5() {
        let t = Tower::new(&build_field(5, 1, None).unwrap());
        let s = places_p(&t, 1).unwrap();
        for v in &s.places {
            for g in 1..5 {
                assert!(salie_check(v, FieldElem(g), B).unwrap());
            }
        }
    }
}
