//! Finite fields `F_{p^k} = F_p[X]/(m(X))` for odd primes `p`.
//!
//! An element is stored as a packed base-`p` integer: digit `i` is the
//! coefficient of `X^i`. Comparing two elements therefore compares their
//! coefficient vectors lexicographically from the top coefficient down, and
//! "least element" always means least packed index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::PolyRing;

/// Fields up to this size get log/antilog, Zech and trace tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field description: characteristic, degree over `F_p` and the monic
/// defining polynomial (lowest degree first, leading 1 included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }
}

/// Packed base-`p` element index. Only meaningful together with its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElem(pub u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Validates `(p, f, modulus)` and returns a field spec. Without a modulus
/// the least monic irreducible of degree `f` is chosen.
pub fn build_field(p: u64, f: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge(p as u128));
    }
    if f == 0 {
        return Err(Error::BadModulus { expected: 0 });
    }
    let size = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
    if size >= 1u128 << 62 {
        return Err(Error::FieldTooLarge(size));
    }
    let p32 = p as u32;
    match modulus {
        None => Ok(FieldSpec { p: p32, f, modulus: canonical_modulus(p32, f) }),
        Some(m) => {
            if m.len() != f as usize + 1 || m[f as usize] != 1 || m.iter().any(|&c| c >= p32) {
                return Err(Error::BadModulus { expected: f });
            }
            let prime = FiniteField::prime(p32);
            let ring = PolyRing::new(&prime);
            let poly: Vec<FieldElem> = m.iter().map(|&c| FieldElem(c as u64)).collect();
            if !ring.is_irreducible(&poly) {
                return Err(Error::ReducibleModulus { p });
            }
            Ok(FieldSpec { p: p32, f, modulus: m.to_vec() })
        }
    }
}

/// Least (by packed index of the lower coefficients) monic irreducible of degree `f` over `F_p`.
pub fn canonical_modulus(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    let prime = FiniteField::prime(p);
    let ring = PolyRing::new(&prime);
    let count = (p as u64).pow(f);
    for idx in 0..count {
        let mut poly: Vec<FieldElem> = prime_digits(idx, p as u64, f as usize).into_iter().map(FieldElem).collect();
        poly.push(FieldElem::ONE);
        if ring.is_irreducible(&poly) {
            return poly.iter().map(|c| c.0 as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_digits(mut x: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

/// Lookup tables for a field of size at most [`TABLE_LIMIT`].
#[derive(Debug, Clone)]
pub struct Tables {
    /// Order of the multiplicative group.
    pub n: u32,
    pub generator: FieldElem,
    /// `log[x]` for `x != 0`.
    pub log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2n`.
    pub exp: Vec<u32>,
    /// `zech[j] = log(1 + g^j)`, or `u32::MAX` when `1 + g^j = 0`.
    pub zech: Vec<u32>,
    /// Absolute trace to `F_p` of every element.
    pub trace: Vec<u32>,
}

impl Tables {
    pub const NONE: u32 = NO_LOG;
}

/// Arithmetic in one concrete field.
#[derive(Debug, Clone)]
pub struct FiniteField {
    spec: FieldSpec,
    p: u64,
    k: usize,
    size: u64,
    modulus: Vec<u64>,
    trace_basis: Vec<u64>,
    tables: Option<Tables>,
}

impl FiniteField {
    /// The prime field `F_p` (modulus `X`). `p` must be an odd prime.
    pub fn prime(p: u32) -> Self {
        Self::from_spec(&FieldSpec { p, f: 1, modulus: vec![0, 1] })
    }

    /// Builds arithmetic for a validated spec.
    pub fn from_spec(spec: &FieldSpec) -> Self {
        let p = spec.p as u64;
        let k = spec.f as usize;
        let mut field = FiniteField {
            spec: spec.clone(),
            p,
            k,
            size: p.pow(spec.f),
            modulus: spec.modulus.iter().map(|&c| c as u64).collect(),
            trace_basis: Vec::new(),
            tables: None,
        };
        field.trace_basis = (0..k)
            .map(|j| {
                let mut e = FieldElem(p.pow(j as u32));
                let mut s = FieldElem::ZERO;
                for _ in 0..k {
                    s = field.add(s, e);
                    e = field.pow(e, p);
                }
                debug_assert!(s.0 < p);
                s.0
            })
            .collect();
        if field.size <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.k
    }
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn tables(&self) -> Option<&Tables> {
        self.tables.as_ref()
    }

    pub fn digits(&self, x: FieldElem) -> Vec<u64> {
        prime_digits(x.0, self.p, self.k)
    }

    pub fn from_digits(&self, d: &[u64]) -> FieldElem {
        let mut v = 0u64;
        for &c in d.iter().rev() {
            v = v * self.p + c % self.p;
        }
        FieldElem(v)
    }

    /// The constant `c mod p`.
    pub fn from_int(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.p as i64) as u64)
    }

    /// The class of `X` in this field, i.e. the root of its own modulus.
    pub fn x(&self) -> FieldElem {
        if self.k == 1 {
            FieldElem((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElem(self.p)
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        if self.k == 1 {
            return FieldElem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u64, 1u64);
        for _ in 0..self.k {
            r += ((x % p + y % p) % p) * pw;
            pw *= p;
            x /= p;
            y /= p;
        }
        FieldElem(r)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.scale(a, self.p - 1)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplies by the prime-field scalar `c`.
    pub fn scale(&self, a: FieldElem, c: u64) -> FieldElem {
        let p = self.p;
        let c = c % p;
        if self.k == 1 {
            return FieldElem(((a.0 as u128 * c as u128) % p as u128) as u64);
        }
        let (mut x, mut r, mut pw) = (a.0, 0u64, 1u64);
        for _ in 0..self.k {
            r += ((x % p) * c % p) * pw;
            pw *= p;
            x /= p;
        }
        FieldElem(r)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return FieldElem(t.exp[i] as u64);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        if self.k == 1 {
            return FieldElem(((a.0 as u128 * b.0 as u128) % p as u128) as u64);
        }
        let k = self.k;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = c * self.modulus[j] % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = (t.log[a.0 as usize] as u128 * e as u128 % t.n as u128) as usize;
            return FieldElem(t.exp[l] as u64);
        }
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            return Some(FieldElem(t.exp[((t.n - l) % t.n) as usize] as u64));
        }
        Some(self.pow(a, self.size - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Absolute trace `Tr_{F/F_p}` as a residue in `[0, p)`.
    pub fn trace(&self, x: FieldElem) -> u64 {
        if let Some(t) = &self.tables {
            return t.trace[x.0 as usize] as u64;
        }
        let p = self.p;
        let mut v = x.0;
        let mut s = 0u64;
        for &tj in &self.trace_basis {
            s = (s + (v % p) * tj) % p;
            v /= p;
        }
        s
    }

    /// The quadratic character: 0 at 0, otherwise +1 on squares and -1 elsewhere.
    pub fn quadratic_character(&self, x: FieldElem) -> i8 {
        if x.0 == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return if t.log[x.0 as usize] % 2 == 0 { 1 } else { -1 };
        }
        if self.pow(x, (self.size - 1) / 2) == FieldElem::ONE {
            1
        } else {
            -1
        }
    }

    /// Absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.p)
    }

    fn build_tables(&self) -> Tables {
        let n = self.size - 1;
        let primes = prime_divisors(n);
        let generator = (2..self.size)
            .map(FieldElem)
            .find(|&g| primes.iter().all(|&l| self.pow(g, n / l) != FieldElem::ONE))
            .or(if n == 1 { Some(FieldElem::ONE) } else { None })
            .expect("multiplicative group is cyclic");
        let n32 = n as usize;
        let mut exp = vec![0u32; 2 * n32];
        let mut log = vec![NO_LOG; self.size as usize];
        let mut cur = FieldElem::ONE;
        for i in 0..n32 {
            exp[i] = cur.0 as u32;
            exp[i + n32] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_generic(cur, generator);
        }
        let zech = (0..n32)
            .map(|j| {
                let s = self.add(FieldElem(exp[j] as u64), FieldElem::ONE);
                if s.0 == 0 {
                    NO_LOG
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        let mut trace = vec![0u32; self.size as usize];
        let p = self.p as usize;
        let mut block = 1usize;
        for &tj in &self.trace_basis {
            for idx in block..block * p {
                let d = idx / block;
                trace[idx] = ((trace[idx % block] as u64 + d as u64 * tj) % self.p) as u32;
            }
            block *= p;
        }
        Tables { n: n as u32, generator, log, exp, zech, trace }
    }
}

/// A field homomorphism `small -> big`, fixed by the image of `X`.
#[derive(Debug, Clone)]
pub struct Embedding {
    p: u64,
    small_k: usize,
    /// Image of `X^j` for `j < small_k`.
    powers: Vec<FieldElem>,
}

impl Embedding {
    /// Sends `X` to the least root of the small modulus inside `big`.
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self> {
        let (ks, kb) = (small.degree(), big.degree());
        if small.p() != big.p() {
            return Err(Error::Config("embedding between different characteristics".into()));
        }
        if kb % ks != 0 {
            return Err(Error::NotADivisor { degree: ks as u32, level: kb as u32 });
        }
        if ks == 1 {
            return Ok(Embedding { p: small.p(), small_k: 1, powers: vec![FieldElem::ONE] });
        }
        let q = small.size();
        let e = (big.size() - 1) / (q - 1);
        let primes = prime_divisors(q - 1);
        let h = (2..big.size())
            .map(|y| big.pow(FieldElem(y), e))
            .find(|&h| primes.iter().all(|&l| big.pow(h, (q - 1) / l) != FieldElem::ONE))
            .expect("subfield has a generator");
        let m = &small.spec().modulus;
        let eval = |z: FieldElem| {
            m.iter().rev().fold(FieldElem::ZERO, |acc, &c| big.add(big.mul(acc, z), FieldElem(c as u64)))
        };
        let mut root = None;
        let mut z = FieldElem::ONE;
        for _ in 0..q - 1 {
            if eval(z).is_zero() && root.is_none_or(|r: FieldElem| z < r) {
                root = Some(z);
            }
            z = big.mul(z, h);
        }
        let root = root.expect("the modulus splits in the subfield");
        let mut powers = Vec::with_capacity(ks);
        let mut cur = FieldElem::ONE;
        for _ in 0..ks {
            powers.push(cur);
            cur = big.mul(cur, root);
        }
        Ok(Embedding { p: small.p(), small_k: ks, powers })
    }

    /// The identity map of `field` onto itself.
    pub fn identity(field: &FiniteField) -> Self {
        let k = field.degree();
        let powers = (0..k as u32).map(|j| FieldElem(field.p().pow(j))).collect();
        Embedding { p: field.p(), small_k: k, powers }
    }

    pub fn apply(&self, big: &FiniteField, x: FieldElem) -> FieldElem {
        if self.small_k == 1 {
            return x;
        }
        let mut v = x.0;
        let mut acc = FieldElem::ZERO;
        for &pw in &self.powers {
            let d = v % self.p;
            v /= self.p;
            if d != 0 {
                acc = big.add(acc, big.scale(pw, d));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FiniteField {
        FiniteField::from_spec(&build_field(3, 2, None).unwrap())
    }

    #[test]
    fn rejects_bad_characteristics() {
        assert_eq!(build_field(2, 1, None), Err(Error::EvenCharacteristic));
        assert_eq!(build_field(9, 1, None), Err(Error::NonPrimeP(9)));
        assert_eq!(build_field(3, 2, Some(&[1, 1])), Err(Error::BadModulus { expected: 2 }));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // X^2 + 2 = (X + 1)(X + 2) over F_3.
        assert!(matches!(build_field(3, 2, Some(&[2, 0, 1])), Err(Error::ReducibleModulus { .. })));
        assert!(build_field(3, 2, Some(&[1, 0, 1])).is_ok());
    }

    #[test]
    fn canonical_modulus_of_f9() {
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(5, 2), vec![2, 0, 1]);
    }

    #[test]
    fn tables_agree_with_generic_arithmetic() {
        let f = f9();
        for a in 0..9 {
            for b in 0..9 {
                let (a, b) = (FieldElem(a), FieldElem(b));
                assert_eq!(f.mul(a, b), f.mul_generic(a, b));
            }
        }
    }

    #[test]
    fn quadratic_character_counts_squares() {
        let f = f9();
        let squares = (1..9).filter(|&x| f.quadratic_character(FieldElem(x)) == 1).count();
        assert_eq!(squares, 4);
        // -1 is a square in F_9 but not in F_3.
        assert_eq!(f.quadratic_character(f.from_int(-1)), 1);
        assert_eq!(FiniteField::prime(3).quadratic_character(FieldElem(2)), -1);
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f = f9();
        for a in 0..9 {
            for b in 0..9 {
                let s = f.add(FieldElem(a), FieldElem(b));
                assert_eq!(f.trace(s), (f.trace(FieldElem(a)) + f.trace(FieldElem(b))) % 3);
            }
        }
        assert_eq!(f.trace(FieldElem::ONE), 2);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = f9();
        let big = FiniteField::from_spec(&build_field(3, 4, None).unwrap());
        let e = Embedding::new(&small, &big).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let (a, b) = (FieldElem(a), FieldElem(b));
                assert_eq!(e.apply(&big, small.mul(a, b)), big.mul(e.apply(&big, a), e.apply(&big, b)));
                assert_eq!(e.apply(&big, small.add(a, b)), big.add(e.apply(&big, a), e.apply(&big, b)));
            }
        }
    }
}
