use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::{LPolynomial, LogLCoeffs};

/// Power sums of the inverse roots: `s_n = -n c_n - sum_{j<n} c_j s_{n-j}`.
pub fn log_coeffs_of(l: &LPolynomial, n_max: usize) -> LogLCoeffs {
    let c = |j: usize| l.coeffs.get(j).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut v = -c(n) * BigInt::from(n);
        for j in 1..n {
            let cj = c(j);
            if !cj.is_zero() {
                v -= cj * &s[n - j - 1];
            }
        }
        s.push(v);
    }
    LogLCoeffs { values: s }
}

/// Inverts [`log_coeffs_of`]: coefficients `c_0..c_n` from `s_1..s_n`.
pub fn coeffs_from_power_sums(s: &LogLCoeffs) -> Result<Vec<BigInt>> {
    let mut c = vec![BigInt::one()];
    for n in 1..=s.n_max() {
        let mut acc = s.get(n).clone();
        for j in 1..n {
            if !c[j].is_zero() {
                acc += &c[j] * s.get(n - j);
            }
        }
        let (qt, r) = acc.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::NotRational(format!("power sums give a non-integral coefficient at n = {n}")));
        }
        c.push(-qt);
    }
    Ok(c)
}

/// The sign `e` with `c_{b-k} = e q^{b-2k} c_k` for every `k`.
pub fn functional_equation_sign(l: &LPolynomial) -> Result<i8> {
    let b = l.degree();
    let q = BigInt::from(l.q);
    let top = &l.coeffs[b];
    let qb = q.clone().pow(b);
    let eps: i8 = if *top == qb {
        1
    } else if *top == -&qb {
        -1
    } else {
        return Err(Error::NoFunctionalEquation);
    };
    for k in 0..=b / 2 {
        let rhs = &l.coeffs[k] * q.clone().pow(b - 2 * k) * BigInt::from(eps);
        if l.coeffs[b - k] != rhs {
            return Err(Error::NoFunctionalEquation);
        }
    }
    Ok(eps)
}

/// Completes `c_0..c_m` (`m >= b/2`) to the full degree-`b` polynomial.
/// The sign comes from the middle coefficient when it is nonzero, otherwise
/// from any known pair `(c_k, c_{b-k})`.
pub fn complete_by_functional_equation(partial: &[BigInt], b: usize, q: u64) -> Result<(LPolynomial, i8)> {
    let m = partial.len() - 1;
    if m < b / 2 {
        return Err(Error::SignUndetermined);
    }
    let qb = BigInt::from(q);
    let mut eps = None;
    if !partial[b / 2].is_zero() {
        eps = Some(1i8);
    }
    for k in (0..b / 2).rev() {
        if eps.is_some() {
            break;
        }
        if b - k <= m && !partial[k].is_zero() {
            let scaled = &partial[k] * qb.clone().pow(b - 2 * k);
            eps = if partial[b - k] == scaled {
                Some(1)
            } else if partial[b - k] == -scaled {
                Some(-1)
            } else {
                return Err(Error::NoFunctionalEquation);
            };
        }
    }
    let eps = eps.ok_or(Error::SignUndetermined)?;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); b + 1];
    for k in 0..=b {
        if k <= m {
            coeffs[k] = partial[k].clone();
        } else {
            let j = b - k;
            coeffs[k] = &partial[j] * qb.clone().pow(k - j) * BigInt::from(eps);
        }
    }
    for k in 0..=b.min(m) {
        let j = b - k;
        if j <= m && k <= j && coeffs[j] != &coeffs[k] * qb.clone().pow(j - k) * BigInt::from(eps) {
            return Err(Error::NoFunctionalEquation);
        }
    }
    if partial.get(b + 1..).unwrap_or(&[]).iter().any(|c| !c.is_zero()) {
        return Err(Error::NoFunctionalEquation);
    }
    Ok((LPolynomial { q, coeffs }, eps))
}

/// `v_p(n)` for `n != 0`.
pub fn valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let mut chunk = p;
    let mut k = 1u64;
    while chunk.checked_mul(p).is_some_and(|c| c < 1 << 62) {
        chunk *= p;
        k += 1;
    }
    let mut x = n.abs();
    let mut v = 0u64;
    let big_chunk = BigInt::from(chunk);
    loop {
        let (qt, r) = x.div_rem(&big_chunk);
        if !r.is_zero() {
            break;
        }
        x = qt;
        v += k;
    }
    let bp = BigInt::from(p);
    loop {
        let (qt, r) = x.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        x = qt;
        v += 1;
    }
}

/// Slopes of the lower convex hull of `(i, v_p(c_i) / f)`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    #[serde(serialize_with = "ser_slopes")]
    pub slopes: Vec<(Ratio<i64>, usize)>,
}

fn ser_slopes<S: serde::Serializer>(v: &[(Ratio<i64>, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(r, m)| (r.to_string(), *m)))
}

impl NewtonPolygon {
    /// Multiplicity of `slope`, zero if absent.
    pub fn multiplicity(&self, slope: Ratio<i64>) -> usize {
        self.slopes.iter().find(|(s, _)| *s == slope).map_or(0, |(_, m)| *m)
    }
}

pub fn newton_polygon(l: &LPolynomial, p: u64, f: u32) -> NewtonPolygon {
    let pts: Vec<(i64, i64)> = l
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(c, p) as i64))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as i128 * (pt.1 - a.1) as i128 - (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Ratio<i64>, usize)> = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let s = Ratio::new(dy, dx * f as i64);
        match slopes.last_mut() {
            Some((last, m)) if *last == s => *m += dx as usize,
            _ => slopes.push((s, dx as usize)),
        }
    }
    NewtonPolygon { slopes }
}
