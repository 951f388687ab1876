//! Brute-force routes to `L(E, T)` that never touch Gauss or Kloosterman sums.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{format_poly, irreducibles_with_roots, FieldElem, FiniteField, Poly, Tables};
use crate::curve::CurveParams;
use crate::error::{Error, Result};

use super::LogLCoeffs;

/// Largest `n` with `q^{2n} <= budget`.
pub fn default_n_max(q: u64, budget: f64) -> usize {
    let mut n = 0usize;
    while (q as f64).powi(2 * (n as i32 + 1)) <= budget {
        n += 1;
    }
    n
}

/// `sum_{x in F} lambda(x^3 + z x^2 + gamma x)`.
fn cubic_character_sum(field: &FiniteField, z: FieldElem, gamma: FieldElem) -> i64 {
    match field.tables() {
        Some(t) => cubic_sum_tables(t, z, gamma),
        None => (1..field.size())
            .map(|x| {
                let x = FieldElem(x);
                let inner = field.add(field.mul(x, field.add(x, z)), gamma);
                (field.quadratic_character(x) * field.quadratic_character(inner)) as i64
            })
            .sum(),
    }
}

/// Same sum in the log domain: `lambda(x) lambda(x^2 + z x + gamma)` with
/// the additions done through the Zech table.
fn cubic_sum_tables(t: &Tables, z: FieldElem, gamma: FieldElem) -> i64 {
    let n = t.n as usize;
    let lg = t.log[gamma.0 as usize] as usize;
    let lz = if z.is_zero() { None } else { Some(t.log[z.0 as usize] as usize) };
    let mut acc = 0i64;
    for i in 0..n {
        let lx2 = 2 * i % n;
        // s = x^2 + z x
        let ls = match lz {
            None => Some(lx2),
            Some(lz) => {
                let lzx = (lz + i) % n;
                let zz = t.zech[(lzx + n - lx2) % n];
                if zz == Tables::NONE {
                    None
                } else {
                    Some((lx2 + zz as usize) % n)
                }
            }
        };
        // s + gamma
        let lu = match ls {
            None => Some(lg),
            Some(ls) => {
                let zz = t.zech[(lg + n - ls) % n];
                if zz == Tables::NONE {
                    None
                } else {
                    Some(ls + zz as usize)
                }
            }
        };
        if let Some(lu) = lu {
            acc += if (lu + i) % 2 == 0 { 1 } else { -1 };
        }
    }
    acc
}

fn frobenius_power(field: &FiniteField, x: FieldElem, qa: u64) -> FieldElem {
    field.pow(x, qa)
}

/// `c_n = sum_{tau, x in F_{q^n}} lambda(x^3 + (tau^{q^a} - tau) x^2 + gamma x)` for `n = 1..=n_max`.
pub fn oracle_log_coeffs(params: &CurveParams, n_max: usize, budget: f64) -> Result<LogLCoeffs> {
    let cost = (params.q() as f64).powi(2 * n_max as i32);
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget });
    }
    let qa = params.qa();
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let ext = params.tower.extension(n as u32)?;
        let field = &ext.field;
        let gamma = ext.embed(params.gamma);
        let mut hist: HashMap<FieldElem, u64> = HashMap::new();
        for tau in 0..field.size() {
            let tau = FieldElem(tau);
            let z = field.sub(frobenius_power(field, tau, qa), tau);
            *hist.entry(z).or_default() += 1;
        }
        let mut zs: Vec<(FieldElem, u64)> = hist.into_iter().collect();
        zs.sort();
        let total: i128 =
            zs.par_iter().map(|&(z, count)| count as i128 * cubic_character_sum(field, z, gamma) as i128).sum();
        values.push(BigInt::from(total));
    }
    Ok(LogLCoeffs { values })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCountEntry {
    pub place: String,
    #[serde(skip)]
    pub poly: Poly,
    pub degree: u32,
    pub a_v: i64,
    pub bad: bool,
}

/// Trace of Frobenius at every finite place of degree at most `d_max`.
#[derive(Clone, Debug, Serialize)]
pub struct PointCountTable {
    pub q: u64,
    pub d_max: u32,
    pub entries: Vec<PointCountEntry>,
}

impl PointCountTable {
    /// `prod_v L_v(T^{deg v})^{-1} mod T^{d_max + 1}` with `L_v = 1 - a_v T + q T^2`
    /// at good places, `1 - a_v T` at multiplicative ones and `1` at infinity.
    pub fn truncated_series(&self) -> Vec<BigInt> {
        let len = self.d_max as usize + 1;
        let mut s = vec![BigInt::zero(); len];
        s[0] = BigInt::one();
        for e in &self.entries {
            let d = e.degree as usize;
            let av = BigInt::from(e.a_v);
            let qd = BigInt::from(self.q).pow(e.degree);
            for k in d..len {
                let mut v = &av * &s[k - d];
                if !e.bad && k >= 2 * d {
                    v -= &qd * &s[k - 2 * d];
                }
                s[k] += v;
            }
        }
        s
    }
}

/// Counts `a_v = -sum_x lambda_v(x^3 + wp(beta) x^2 + gamma x)` at all finite places of degree `<= d_max`.
pub fn oracle_point_counts(params: &CurveParams, d_max: u32, budget: f64) -> Result<PointCountTable> {
    let cost = (params.q() as f64).powi(2 * d_max as i32);
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget });
    }
    let qa = params.qa();
    let base = params.field();
    let mut entries = Vec::new();
    for d in 1..=d_max {
        let (ext, list) = irreducibles_with_roots(&params.tower, d)?;
        let field = &ext.field;
        let gamma = ext.embed(params.gamma);
        let four_gamma = field.scale(gamma, 4);
        let qd = params.q().pow(d);
        let mut rows: Vec<PointCountEntry> = list
            .par_iter()
            .map(|(beta, poly)| {
                let z = field.sub(frobenius_power(field, *beta, qa), *beta);
                let a_v = -cubic_character_sum(field, z, gamma);
                let bad = field.sub(field.mul(z, z), four_gamma).is_zero();
                if bad {
                    assert!(a_v == 1 || a_v == -1, "multiplicative reduction has a_v = +-1");
                } else {
                    assert!((a_v * a_v) as u64 <= 4 * qd, "Hasse bound");
                }
                PointCountEntry { place: format_poly(base, poly, "t"), poly: poly.clone(), degree: d, a_v, bad }
            })
            .collect();
        entries.append(&mut rows);
    }
    Ok(PointCountTable { q: params.q(), d_max, entries })
}
