//! Exact arithmetic in `Z[zeta_p]` and `Q(zeta_p)`.
//!
//! A [`CycInt`] stores coefficients on the power basis `1, zeta, ..., zeta^{p-2}`.
//! Inputs with a `zeta^{p-1}` term are reduced through
//! `zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

/// A floating-point value of `iota_k(x)`, the embedding `zeta -> e^{2 pi i k / p}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl ComplexApprox {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![BigInt::zero(); p as usize - 1] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, BigInt::one())
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta^e`.
    pub fn zeta_pow(p: u32, e: u64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(e % p as u64) as usize] = 1;
        Self::from_counts(p, &counts)
    }

    /// `sum_j counts[j] zeta^j` for `j < p`.
    pub fn from_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[p as usize - 1];
        CycInt { p, coeffs: counts[..p as usize - 1].iter().map(|&c| BigInt::from(c - top)).collect() }
    }

    /// Same as [`CycInt::from_counts`] for big coefficients.
    pub fn from_exponent_coeffs(p: u32, mut v: Vec<BigInt>) -> Self {
        assert_eq!(v.len(), p as usize);
        let top = v.pop().unwrap();
        if !top.is_zero() {
            for c in v.iter_mut() {
                *c -= &top;
            }
        }
        CycInt { p, coeffs: v }
    }

    /// Builds from power-basis coefficients; a length of `p` is reduced, shorter inputs are padded.
    pub fn from_coeffs(p: u32, mut v: Vec<BigInt>) -> Self {
        if v.len() == p as usize {
            return Self::from_exponent_coeffs(p, v);
        }
        assert!(v.len() < p as usize);
        v.resize(p as usize - 1, BigInt::zero());
        CycInt { p, coeffs: v }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::MixedPrimes(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % p] += a * b;
                }
            }
        }
        Ok(Self::from_exponent_coeffs(self.p, acc))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// The automorphism `zeta -> zeta^k`, `k` a unit mod `p`.
    pub fn galois(&self, k: u32) -> Result<Self> {
        if k % self.p == 0 {
            return Err(Error::InvalidEmbedding { k, p: self.p });
        }
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            acc[i * k as usize % p] += a;
        }
        Ok(Self::from_exponent_coeffs(self.p, acc))
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.p - 1).unwrap()
    }

    /// `N_{Q(zeta)/Q}`, the product of all Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let mut acc = self.clone();
        for k in 2..self.p {
            acc = &acc * &self.galois(k).unwrap();
        }
        acc.as_rational_integer().expect("norm is rational")
    }

    /// The value as an ordinary integer, if every non-constant coefficient vanishes.
    pub fn as_rational_integer(&self) -> Result<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// `iota_k(x) = sum c_i e^{2 pi i k i / p}`, summed with Neumaier compensation.
    pub fn complex_embedding(&self, k: u32) -> Result<ComplexApprox> {
        if k % self.p == 0 {
            return Err(Error::InvalidEmbedding { k, p: self.p });
        }
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * PI * ((i as u64 * k as u64) % self.p as u64) as f64 / self.p as f64;
            re.add(c * ang.cos());
            im.add(c * ang.sin());
        }
        Ok(ComplexApprox { re: re.sum(), im: im.sum() })
    }

    /// Valuation at the prime `(1 - zeta)` above `p`; `None` for zero.
    pub fn ord_one_minus_zeta(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        let content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut vp = 0u64;
        let mut pk = BigInt::one();
        while (&content / &pk).is_multiple_of(&p) {
            pk *= &p;
            vp += 1;
        }
        let mut x: Vec<BigInt> = self.coeffs.iter().map(|c| c / &pk).collect();
        let mut ord = vp * (self.p as u64 - 1);
        loop {
            let s: BigInt = x.iter().sum();
            if !s.is_multiple_of(&p) {
                return Some(ord);
            }
            let s = s / &p;
            let mut run = BigInt::zero();
            for (i, c) in x.iter_mut().enumerate() {
                run += &*c;
                *c = &run - &s * BigInt::from(i + 1);
            }
            ord += 1;
        }
    }

    /// True when fixed by complex conjugation.
    pub fn is_totally_real(&self) -> bool {
        self.conj() == *self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, o: &CycInt) -> CycInt {
                self.$call(o).expect("operands share p")
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, o: CycInt) -> CycInt {
                (&self).$call(&o).expect("operands share p")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Binary operation with the ring check surfaced as an error.
pub fn cyc_arith(lhs: &CycInt, rhs: &CycInt, op: CycOp) -> Result<CycInt> {
    match op {
        CycOp::Add => lhs.try_add(rhs),
        CycOp::Sub => lhs.try_sub(rhs),
        CycOp::Mul => lhs.try_mul(rhs),
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntWire {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycIntWire { p: self.p, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycIntWire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if w.p < 3 || coeffs.len() >= w.p as usize + 1 {
            return Err(serde::de::Error::custom("bad cyclotomic integer"));
        }
        Ok(CycInt::from_coeffs(w.p, coeffs))
    }
}

/// An element of `Q(zeta_p)` as `num / den` with `den > 0` and no common integer factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.coeffs.iter().fold(den.clone(), |g, c| g.gcd(c));
        let g = if den.is_negative() { -g } else { g };
        CycRat { num: CycInt { p: num.p, coeffs: num.coeffs.iter().map(|c| c / &g).collect() }, den: den / g }
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        Ok(Self::new(self.num.try_mul(&o.num)?, &self.den * &o.den))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let n = self.num.scale(&o.den).try_add(&o.num.scale(&self.den))?;
        Ok(Self::new(n, &self.den * &o.den))
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        Ok(BigRational::new(self.num.as_rational_integer()?, self.den.clone()))
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
    fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}
