//! All complex roots of `L(T/q)` by Ehrlich-Aberth iteration.
//!
//! Roots are held in fixed point (`BigInt / 2^prec`) and the polynomial is
//! evaluated exactly on those values, so the evaluation error is absolute and
//! does not grow with the size of the integer coefficients. Only the Newton
//! ratio and the Aberth correction sum are formed in `f64`, from exactly
//! computed differences.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::LPolynomial;

/// Largest degree accepted by [`rh_check`].
pub const RH_DEGREE_LIMIT: usize = 1000;

const MAX_ITER: usize = 800;

#[derive(Clone, Debug, Serialize)]
pub struct RhReport {
    /// `max_i | |z_i| - 1 |` over the roots of `L(T/q)`.
    pub max_deviation: f64,
    pub iterations: usize,
    pub degree: usize,
}

#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

/// A complex `BigInt` pair as `f64` components sharing one binary exponent.
fn split_pair(re: &BigInt, im: &BigInt) -> (f64, f64, i64) {
    let bits = re.bits().max(im.bits()) as i64;
    let sh = (bits - 60).max(0);
    let (r, i) = if sh == 0 { (re.clone(), im.clone()) } else { (re >> sh as usize, im >> sh as usize) };
    (r.to_f64().unwrap(), i.to_f64().unwrap(), sh)
}

/// `round(x 2^prec)`.
fn to_fixed(x: f64, prec: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let (m, e) = {
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), exp - 1075) };
        (if x < 0.0 { -m } else { m }, e)
    };
    let shift = e + prec as i64;
    let m = BigInt::from(m);
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

fn mul(a: &Fx, b: &Fx, prec: u32) -> Fx {
    Fx {
        re: (&a.re * &b.re - &a.im * &b.im) >> prec as usize,
        im: (&a.re * &b.im + &a.im * &b.re) >> prec as usize,
    }
}

/// `P(z)` and `P'(z)` by Horner on fixed-point coefficients.
fn horner(c: &[BigInt], z: &Fx, prec: u32) -> (Fx, Fx) {
    let n = c.len() - 1;
    let mut p = Fx { re: c[n].clone(), im: BigInt::zero() };
    let mut dp = Fx { re: BigInt::zero(), im: BigInt::zero() };
    for k in (0..n).rev() {
        dp = mul(&dp, z, prec);
        dp.re += &p.re;
        dp.im += &p.im;
        p = mul(&p, z, prec);
        p.re += &c[k];
    }
    (p, dp)
}

/// Roots of `sum_k coeffs[k] (z/scale)^k`, returned as `f64` pairs together
/// with the total iteration count. A `k`-fold root is only resolved to about
/// `2^{-prec/k}`, so the working precision doubles until the iteration settles
/// below [`STEP_TOL`].
pub(crate) fn aberth(coeffs: &[BigInt], scale: &BigInt) -> Result<(Vec<(f64, f64)>, usize)> {
    let n = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let mut prec = 128u32.max(64 + 2 * n as u32);
    let mut total = 0;
    loop {
        let (roots, iters, settled) = aberth_at(&coeffs[..=n], scale, prec)?;
        total += iters;
        if settled {
            return Ok((roots, total));
        }
        if prec >= MAX_PREC {
            return Err(Error::RootFindingFailure(total));
        }
        prec *= 2;
    }
}

/// Largest step accepted as converged when the iteration stalls on a cluster.
const STEP_TOL: f64 = 1e-13;

const MAX_PREC: u32 = 16384;

fn aberth_at(coeffs: &[BigInt], scale: &BigInt, prec: u32) -> Result<(Vec<(f64, f64)>, usize, bool)> {
    let n = coeffs.len() - 1;
    let mut c: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut sk = BigInt::from(1);
    for coeff in coeffs {
        c.push((coeff << prec as usize).div_floor(&sk));
        sk *= scale;
    }
    let phase = 0.7 / n as f64;
    let mut z: Vec<Fx> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64 + phase;
            Fx { re: to_fixed(a.cos(), prec), im: to_fixed(a.sin(), prec) }
        })
        .collect();
    let tol = 2f64.powi(-((prec / 2) as i32 - 8).min(1000));
    let mut history: Vec<f64> = Vec::new();
    for iter in 1..=MAX_ITER {
        let mut max_step = 0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, &z[i], prec);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let (pr, pi, ep) = split_pair(&p.re, &p.im);
            let (dr, di, ed) = split_pair(&dp.re, &dp.im);
            let den = dr * dr + di * di;
            if den == 0.0 {
                // Stationary point: nudge off it.
                z[i].re += to_fixed(1e-3, prec);
                continue;
            }
            let sc = 2f64.powi((ep - ed).clamp(-2000, 2000) as i32);
            let nr = (pr * dr + pi * di) / den * sc;
            let ni = (pi * dr - pr * di) / den * sc;
            let (mut sr, mut si) = (0f64, 0f64);
            for (j, zj) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let (ar, ai, e) = split_pair(&(&z[i].re - &zj.re), &(&z[i].im - &zj.im));
                let m2 = ar * ar + ai * ai;
                if m2 == 0.0 {
                    continue;
                }
                let f = 2f64.powi((prec as i64 - e).clamp(-2000, 2000) as i32);
                sr += ar / m2 * f;
                si -= ai / m2 * f;
            }
            // w = N / (1 - N S)
            let (tr, ti) = (1.0 - (nr * sr - ni * si), -(nr * si + ni * sr));
            let td = tr * tr + ti * ti;
            let (wr, wi) = if td == 0.0 || !td.is_finite() {
                (nr, ni)
            } else {
                ((nr * tr + ni * ti) / td, (ni * tr - nr * ti) / td)
            };
            z[i].re -= to_fixed(wr, prec);
            z[i].im -= to_fixed(wi, prec);
            max_step = max_step.max(wr.hypot(wi));
        }
        if !max_step.is_finite() {
            return Ok((finish(&z, prec), iter, false));
        }
        history.push(max_step);
        if max_step < tol {
            return Ok((finish(&z, prec), iter, true));
        }
        // Clusters of a multiple root converge only linearly and stall at the
        // precision floor; accept once the step has stopped shrinking there.
        if iter > 20 && max_step > 0.5 * history[iter - 11] && max_step < 1e-3 {
            return Ok((finish(&z, prec), iter, max_step < STEP_TOL));
        }
    }
    Ok((finish(&z, prec), MAX_ITER, false))
}

fn finish(z: &[Fx], prec: u32) -> Vec<(f64, f64)> {
    z.iter()
        .map(|v| {
            let (r, i, e) = split_pair(&v.re, &v.im);
            let f = 2f64.powi((e - prec as i64) as i32);
            (r * f, i * f)
        })
        .collect()
}

/// Largest `m` such that every nonzero coefficient sits at an exponent divisible by `m`.
fn support_gcd(c: &[BigInt]) -> usize {
    c.iter().enumerate().skip(1).filter(|(_, x)| !x.is_zero()).fold(0usize, |g, (i, _)| g.gcd(&i)).max(1)
}

/// Finds every root of `L(T/q)` and reports the largest deviation of `|z|` from 1.
pub fn rh_check(l: &LPolynomial) -> Result<RhReport> {
    let degree = l.degree();
    if degree > RH_DEGREE_LIMIT {
        return Err(Error::RootFindingBudget { degree, limit: RH_DEGREE_LIMIT });
    }
    // A polynomial in T^m is checked in u = T^m, whose roots must have |u| = q^-m.
    let m = support_gcd(&l.coeffs[..=degree]);
    let reduced: Vec<BigInt> = l.coeffs[..=degree].iter().step_by(m).cloned().collect();
    let scale = BigInt::from(l.q).pow(m as u32);
    let (roots, iterations) = aberth(&reduced, &scale)?;
    let max_deviation = roots.iter().map(|&(r, i)| (r.hypot(i).powf(1.0 / m as f64) - 1.0).abs()).fold(0.0, f64::max);
    Ok(RhReport { max_deviation, iterations, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(q: u64, c: &[i64]) -> LPolynomial {
        LPolynomial { q, coeffs: c.iter().map(|&x| BigInt::from(x)).collect() }
    }

    #[test]
    fn small_examples_are_on_the_circle() {
        assert!(rh_check(&lp(3, &[1, 0, -15, 0, 81])).unwrap().max_deviation < 1e-9);
        assert!(rh_check(&lp(3, &[1, 0, -6, 0, 81])).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn double_root() {
        assert!(rh_check(&lp(3, &[1, -6, 9])).unwrap().max_deviation < 1e-9);
        assert!(rh_check(&lp(5, &[1, -20, 150, -500, 625])).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn sixfold_root_needs_more_precision() {
        // (1 - 3T)^6 (1 + 3T)^6
        let c = [1i64, 0, -54, 0, 1215, 0, -14580, 0, 98415, 0, -354294, 0, 531441];
        assert!(rh_check(&lp(3, &c)).unwrap().max_deviation < 1e-9);
        let c = [1i64, -18, 135, -540, 1215, -1458, 729];
        assert!(rh_check(&lp(3, &c)).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn off_circle_roots_are_reported() {
        // 1 - T has its root at 1, i.e. |z| = q = 3 after rescaling.
        let r = rh_check(&lp(3, &[1, -1])).unwrap();
        assert!((r.max_deviation - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_point_conversion() {
        assert_eq!(to_fixed(1.5, 4), BigInt::from(24));
        assert_eq!(to_fixed(-0.25, 8), BigInt::from(-64));
    }
}
