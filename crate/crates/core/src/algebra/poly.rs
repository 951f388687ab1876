//! Dense univariate polynomials over a [`FiniteField`], lowest degree first.
//! The zero polynomial is the empty vector; results are always trimmed.

use super::field::{prime_divisors, FieldElem, FiniteField};

pub type Poly = Vec<FieldElem>;

#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    pub field: &'a FiniteField,
}

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[FieldElem]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a FiniteField) -> Self {
        PolyRing { field }
    }

    pub fn x(&self) -> Poly {
        vec![FieldElem::ZERO, FieldElem::ONE]
    }

    pub fn constant(&self, c: FieldElem) -> Poly {
        let mut v = vec![c];
        trim(&mut v);
        v
    }

    /// `t^n`.
    pub fn monomial(&self, c: FieldElem, n: usize) -> Poly {
        if c.is_zero() {
            return Vec::new();
        }
        let mut v = vec![FieldElem::ZERO; n + 1];
        v[n] = c;
        v
    }

    pub fn add(&self, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        let f = self.field;
        let mut out: Poly = (0..a.len().max(b.len()))
            .map(|i| {
                let x = a.get(i).copied().unwrap_or_default();
                let y = b.get(i).copied().unwrap_or_default();
                f.add(x, y)
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn neg(&self, a: &[FieldElem]) -> Poly {
        a.iter().map(|&c| self.field.neg(c)).collect()
    }

    pub fn sub(&self, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[FieldElem], c: FieldElem) -> Poly {
        let mut out: Poly = a.iter().map(|&x| self.field.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = self.field;
        let (a, b) = if nonzero_count(a) <= nonzero_count(b) { (a, b) } else { (b, a) };
        let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn divrem(&self, a: &[FieldElem], b: &[FieldElem]) -> (Poly, Poly) {
        let f = self.field;
        let db = degree(b).expect("division by zero polynomial");
        let lead_inv = f.inv(b[db]).unwrap();
        let support: Vec<(usize, FieldElem)> =
            b[..db].iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect();
        let mut r: Poly = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![FieldElem::ZERO; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let m = f.mul(c, lead_inv);
            q[i - db] = m;
            r[i] = FieldElem::ZERO;
            for &(j, bj) in &support {
                let k = i - db + j;
                r[k] = f.sub(r[k], f.mul(m, bj));
            }
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn rem(&self, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[FieldElem]) -> Poly {
        match degree(a) {
            None => Vec::new(),
            Some(d) => self.scale(a, self.field.inv(a[d]).unwrap()),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, a: &[FieldElem], b: &[FieldElem]) -> Poly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn powmod(&self, base: &[FieldElem], mut e: u64, m: &[FieldElem]) -> Poly {
        let mut acc = self.rem(&[FieldElem::ONE], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, a: &[FieldElem]) -> Poly {
        let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, &c)| self.field.scale(c, i as u64)).collect();
        trim(&mut out);
        out
    }

    pub fn eval(&self, a: &[FieldElem], x: FieldElem) -> FieldElem {
        let f = self.field;
        a.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Rabin's test: `X^{q^d} = X mod B` and `gcd(X^{q^{d/l}} - X, B) = 1` for primes `l | d`.
    pub fn is_irreducible(&self, b: &[FieldElem]) -> bool {
        let d = match degree(b) {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = self.field.size();
        let x = self.x();
        let mut frob = vec![self.rem(&x, b)];
        for _ in 0..d {
            let next = self.powmod(frob.last().unwrap(), q, b);
            frob.push(next);
        }
        if frob[d] != self.rem(&x, b) {
            return false;
        }
        prime_divisors(d as u64).into_iter().all(|l| {
            let g = self.gcd(&self.sub(&frob[d / l as usize], &x), b);
            g.len() == 1
        })
    }

    pub fn is_squarefree(&self, b: &[FieldElem]) -> bool {
        if degree(b).is_none() {
            return false;
        }
        let d = self.derivative(b);
        if d.is_empty() {
            // Every exponent is a multiple of p, so b is a p-th power.
            return degree(b) == Some(0);
        }
        self.gcd(b, &d).len() == 1
    }
}

fn nonzero_count(a: &[FieldElem]) -> usize {
    a.iter().filter(|c| !c.is_zero()).count()
}

/// Readable form such as `t^2 + 2t + 1`. Coefficients of `F_{p^f}` with
/// `f > 1` are shown as their digit vectors, e.g. `(1:2)`.
pub fn format_poly(field: &FiniteField, a: &[FieldElem], var: &str) -> String {
    let coef = |c: FieldElem| {
        if field.degree() == 1 {
            c.0.to_string()
        } else {
            let d: Vec<String> = field.digits(c).iter().map(|x| x.to_string()).collect();
            format!("({})", d.join(":"))
        }
    };
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = if c == FieldElem::ONE && i > 0 { String::new() } else { coef(c) };
        terms.push(match i {
            0 => cs,
            1 => format!("{cs}{var}"),
            _ => format!("{cs}{var}^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[u64]) -> Poly {
        cs.iter().map(|&c| FieldElem(c)).collect()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = FiniteField::prime(5);
        let r = PolyRing::new(&f);
        let a = p(&[1, 2, 3, 4, 1, 2]);
        let b = p(&[3, 0, 2]);
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.len() < 3);
    }

    #[test]
    fn irreducible_quadratics_over_f3() {
        let f = FiniteField::prime(3);
        let r = PolyRing::new(&f);
        let count = (0..9).filter(|&i| r.is_irreducible(&p(&[i % 3, i / 3, 1]))).count();
        assert_eq!(count, 3);
    }

    #[test]
    fn squarefree_detects_repeated_factor() {
        let f = FiniteField::prime(3);
        let r = PolyRing::new(&f);
        assert!(!r.is_squarefree(&p(&[1, 2, 1])));
        assert!(r.is_squarefree(&p(&[1, 0, 1])));
        // t^3 has zero derivative in characteristic 3.
        assert!(!r.is_squarefree(&p(&[0, 0, 0, 1])));
    }

    #[test]
    fn formatting() {
        let f = FiniteField::prime(3);
        assert_eq!(format_poly(&f, &p(&[1, 2, 1]), "t"), "t^2 + 2t + 1");
        assert_eq!(format_poly(&f, &p(&[2, 1]), "t"), "t + 2");
    }
}
