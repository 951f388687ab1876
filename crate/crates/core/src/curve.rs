//! The curve `E: y^2 = x^3 + wp(t) x^2 + gamma x` over `F_q(t)` with
//! `wp(t) = t^{q^a} - t`: Weierstrass data, global invariants, reduction
//! data and torsion.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{places_p, FieldElem, FieldSpec, FiniteField, PlaceSet, Poly, PolyRing, Tower};
use crate::charsums::{place_sums, AdditiveCharacter, PlaceSums};
use crate::error::{Error, Result};

/// One member of the family, `E_{gamma, a}`.
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub tower: Arc<Tower>,
    pub gamma: FieldElem,
    pub a: u32,
}

impl CurveParams {
    pub fn new(tower: Arc<Tower>, gamma: FieldElem, a: u32) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroGamma);
        }
        if gamma.0 >= tower.q() {
            return Err(Error::Config(format!("gamma index {} is outside F_{}", gamma.0, tower.q())));
        }
        if a == 0 {
            return Err(Error::InvalidLevel);
        }
        if (tower.q() as u128).checked_pow(a).is_none_or(|v| v > 1 << 40) {
            return Err(Error::FieldTooLarge((tower.q() as u128).saturating_pow(a)));
        }
        Ok(CurveParams { tower, gamma, a })
    }

    pub fn field(&self) -> &FiniteField {
        self.tower.base()
    }

    pub fn spec(&self) -> &FieldSpec {
        self.tower.base().spec()
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn p(&self) -> u64 {
        self.tower.p()
    }

    /// `q^a`.
    pub fn qa(&self) -> u64 {
        self.q().pow(self.a)
    }

    /// Degree of the L-polynomial, `2(q^a - 1)`.
    pub fn b(&self) -> usize {
        2 * (self.qa() as usize - 1)
    }

    /// `wp_a(t) = t^{q^a} - t`.
    pub fn wp(&self) -> Poly {
        let f = self.field();
        let mut v = vec![FieldElem::ZERO; self.qa() as usize + 1];
        v[1] = f.neg(FieldElem::ONE);
        v[self.qa() as usize] = FieldElem::ONE;
        v
    }

    pub fn places(&self) -> Result<Arc<PlaceSet>> {
        places_p(&self.tower, self.a)
    }

    /// Gauss and Kloosterman sums at every place of `P_q(a)`.
    pub fn place_sums(&self, budget: f64) -> Result<Vec<PlaceSums>> {
        place_sums(&*self.places()?, self.gamma, AdditiveCharacter::default(), budget)
    }

    /// Gamma written as a decimal residue (`f = 1`) or digit vector.
    pub fn gamma_label(&self) -> String {
        let f = self.field();
        if f.degree() == 1 {
            self.gamma.0.to_string()
        } else {
            f.digits(self.gamma).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(":")
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveInvariants {
    #[serde(serialize_with = "ser_poly")]
    pub j_num: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub j_den: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub disc: Poly,
    /// `log_q H = (q^a + 1)/2`, an integer since `q` is odd.
    pub logq_h: u64,
    pub logq_n: u64,
    pub tamagawa: u32,
    pub b_degree: u64,
    pub torsion_order: u32,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|c| c.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct InfiniteFiber {
    #[serde(rename = "type")]
    pub kind: String,
    pub delta: u64,
    pub conductor_exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BadReductionReport {
    pub finite_places_degree_sum: u64,
    pub squarefree: bool,
    pub infinite_fiber: InfiniteFiber,
    pub finite_fiber_type: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionPoint {
    Infinity,
    Affine {
        #[serde(serialize_with = "ser_poly")]
        x: Poly,
        #[serde(serialize_with = "ser_poly")]
        y: Poly,
    },
}

/// `wp^2 - 4 gamma`, whose zeros are the finite places of bad reduction.
pub fn bad_polynomial(params: &CurveParams) -> Poly {
    let f = params.field();
    let r = PolyRing::new(f);
    let wp = params.wp();
    r.sub(&r.mul(&wp, &wp), &[f.scale(params.gamma, 4)])
}

/// `j = c4^3 / Delta` in lowest terms with a monic denominator.
pub fn j_invariant(params: &CurveParams) -> (Poly, Poly) {
    let (c4, delta) = weierstrass_c4_delta(params);
    let r = PolyRing::new(params.field());
    let num = r.mul(&r.mul(&c4, &c4), &c4);
    reduce_fraction(&r, &num, &delta)
}

fn reduce_fraction(r: &PolyRing, num: &[FieldElem], den: &[FieldElem]) -> (Poly, Poly) {
    let g = r.gcd(num, den);
    let num = r.divrem(num, &g).0;
    let den = r.divrem(den, &g).0;
    let lead = *den.last().unwrap();
    let inv = r.field.inv(lead).unwrap();
    (r.scale(&num, inv), r.scale(&den, inv))
}

/// `c4` and `Delta` from the b-invariants of `[0, wp, 0, gamma, 0]`.
fn weierstrass_c4_delta(params: &CurveParams) -> (Poly, Poly) {
    let f = params.field();
    let r = PolyRing::new(f);
    let a2 = params.wp();
    let a4 = r.constant(params.gamma);
    let c = |k: i64| f.from_int(k);
    let b2 = r.scale(&a2, c(4));
    let b4 = r.scale(&a4, c(2));
    let b8 = r.neg(&r.mul(&a4, &a4));
    let c4 = r.sub(&r.mul(&b2, &b2), &r.scale(&b4, c(24)));
    // b6 = 0, so Delta = -b2^2 b8 - 8 b4^3.
    let delta = r.sub(&r.neg(&r.mul(&r.mul(&b2, &b2), &b8)), &r.scale(&r.mul(&r.mul(&b4, &b4), &b4), c(8)));
    (c4, delta)
}

pub fn curve_invariants(params: &CurveParams) -> CurveInvariants {
    let f = params.field();
    let r = PolyRing::new(f);
    let wp = params.wp();
    let wp2 = r.mul(&wp, &wp);
    let bad = bad_polynomial(params);
    let g2 = f.mul(params.gamma, params.gamma);
    let disc = r.scale(&bad, f.scale(g2, 16));
    let (_, delta) = weierstrass_c4_delta(params);
    assert_eq!(delta, disc, "Delta = 16 gamma^2 (wp^2 - 4 gamma)");
    let (j_num, j_den) = j_invariant(params);
    let three = r.sub(&wp2, &[f.scale(params.gamma, 3)]);
    let closed_num = r.scale(&r.mul(&r.mul(&three, &three), &three), f.from_int(256));
    let closed_den = r.scale(&bad, g2);
    assert_eq!((j_num.clone(), j_den.clone()), reduce_fraction(&r, &closed_num, &closed_den));
    let qa = params.qa();
    let inv = CurveInvariants {
        j_num,
        j_den,
        disc,
        logq_h: (qa + 1) / 2,
        logq_n: 2 * (qa + 1),
        tamagawa: 4,
        b_degree: 2 * (qa - 1),
        torsion_order: 2,
    };
    debug_assert_eq!(inv.logq_n, 4 * inv.logq_h);
    inv
}

pub fn bad_places_report(params: &CurveParams) -> Result<BadReductionReport> {
    let r = PolyRing::new(params.field());
    let bad = bad_polynomial(params);
    let qa = params.qa();
    let squarefree = r.is_squarefree(&bad);
    if !squarefree {
        return Err(Error::NonSquarefreeDiscriminant);
    }
    let degree_sum = (bad.len() - 1) as u64;
    let report = BadReductionReport {
        finite_places_degree_sum: degree_sum,
        squarefree,
        infinite_fiber: InfiniteFiber { kind: format!("I*_{{{}}}", 4 * qa), delta: 4 * qa + 6, conductor_exponent: 2 },
        finite_fiber_type: "I_1 at each divisor of wp^2 - 4 gamma".into(),
    };
    assert_eq!(degree_sum, 2 * qa);
    assert_eq!(report.finite_places_degree_sum + report.infinite_fiber.delta, 12 * (qa + 1) / 2);
    Ok(report)
}

/// `{O, (0, 0)}`. The other 2-torsion points would need a root of
/// `x^2 + wp x + gamma` in `F_q[t]`, i.e. a square discriminant, which a
/// squarefree polynomial of positive degree is not.
pub fn torsion_structure(params: &CurveParams) -> Vec<TorsionPoint> {
    let f = params.field();
    let r = PolyRing::new(f);
    let wp = params.wp();
    // f(0) = 0 puts (0, 0) on the curve.
    let x0: Poly = Vec::new();
    let rhs = r.add(&r.mul(&r.mul(&x0, &x0), &r.add(&x0, &wp)), &r.scale(&x0, params.gamma));
    assert!(rhs.is_empty());
    let bad = bad_polynomial(params);
    assert!(bad.len() > 1 && r.is_squarefree(&bad), "x^2 + wp x + gamma has no polynomial root");
    vec![TorsionPoint::Infinity, TorsionPoint::Affine { x: Vec::new(), y: Vec::new() }]
}

/// Laurent polynomials over `F_q` in `x`, `w` and a symbolic `g`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Laurent(BTreeMap<[i32; 3], FieldElem>);

impl Laurent {
    fn term(c: FieldElem, e: [i32; 3]) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Laurent(m)
    }

    fn add(&self, o: &Self, f: &FiniteField) -> Self {
        let mut m = self.0.clone();
        for (e, &c) in &o.0 {
            let v = f.add(m.get(e).copied().unwrap_or_default(), c);
            if v.is_zero() {
                m.remove(e);
            } else {
                m.insert(*e, v);
            }
        }
        Laurent(m)
    }

    fn neg(&self, f: &FiniteField) -> Self {
        Laurent(self.0.iter().map(|(e, &c)| (*e, f.neg(c))).collect())
    }

    fn mul(&self, o: &Self, f: &FiniteField) -> Self {
        let mut acc = Laurent::default();
        for (e1, &c1) in &self.0 {
            for (e2, &c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                acc = acc.add(&Laurent::term(f.mul(c1, c2), e), f);
            }
        }
        acc
    }
}

/// Checks that `(X, Y) = (y^2/x^2 - w, y (1 - gamma/x^2))` satisfies
/// `Y^2 = (X + w)(X^2 - 4 gamma)` on `y^2 = x^3 + w x^2 + gamma x`, as an
/// identity of Laurent polynomials in `x` and an indeterminate `w`. With
/// `symbolic_gamma` the constant is an indeterminate too.
pub fn isogeny_identity_holds(field: &FiniteField, gamma: FieldElem, symbolic_gamma: bool) -> bool {
    isogeny_residual_vanishes(field, gamma, symbolic_gamma, 4)
}

fn isogeny_residual_vanishes(field: &FiniteField, gamma: FieldElem, symbolic_gamma: bool, k: i64) -> bool {
    let f = field;
    let one = FieldElem::ONE;
    let t = |c: FieldElem, e: [i32; 3]| Laurent::term(c, e);
    let g = if symbolic_gamma { t(one, [0, 0, 1]) } else { t(gamma, [0, 0, 0]) };
    let x = t(one, [1, 0, 0]);
    let w = t(one, [0, 1, 0]);
    let x_inv2 = t(one, [-2, 0, 0]);
    // y^2 = f(x)
    let y2 = x.mul(&x, f).mul(&x, f).add(&w.mul(&x, f).mul(&x, f), f).add(&g.mul(&x, f), f);
    let big_x = y2.mul(&x_inv2, f).add(&w.neg(f), f);
    let factor = t(one, [0, 0, 0]).add(&g.mul(&x_inv2, f).neg(f), f);
    let big_y2 = y2.mul(&factor, f).mul(&factor, f);
    let four_g = g.mul(&t(f.from_int(k), [0, 0, 0]), f);
    let rhs = big_x.add(&w, f).mul(&big_x.mul(&big_x, f).add(&four_g.neg(f), f), f);
    big_y2.add(&rhs.neg(f), f).0.is_empty()
}

pub fn isogeny_identity_check(params: &CurveParams) -> bool {
    isogeny_identity_holds(params.field(), params.gamma, false)
}
