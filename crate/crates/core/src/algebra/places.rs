//! Monic irreducibles over `F_q` and the place set `P_q(a)`: the finite
//! places of degree dividing `a`, other than `t`.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

use super::field::FieldElem;
use super::poly::{format_poly, Poly, PolyRing};
use super::tower::{ExtField, Tower};

/// A finite place of `F_q(t)`: a monic irreducible `pi_v` of degree `d`
/// and a root `beta` of it in `F_{q^d}`, the least one in its Frobenius orbit.
#[derive(Clone, Debug)]
pub struct Place {
    pub poly: Poly,
    pub degree: u32,
    pub beta: FieldElem,
    pub ext: Arc<ExtField>,
}

impl Place {
    /// The Frobenius orbit `beta, beta^q, ..., beta^{q^{d-1}}`.
    pub fn conjugates(&self) -> Vec<FieldElem> {
        let mut out = vec![self.beta];
        for _ in 1..self.degree {
            out.push(self.ext.frobenius_q(*out.last().unwrap()));
        }
        out
    }

    pub fn display(&self) -> String {
        format_poly(self.ext.base(), &self.poly, "t")
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Place", 3)?;
        st.serialize_field("poly", &self.poly.iter().map(|c| c.0).collect::<Vec<_>>())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("beta", &self.beta.0)?;
        st.end()
    }
}

/// `P_q(a)` in the order (degree, polynomial).
#[derive(Clone, Debug)]
pub struct PlaceSet {
    pub q: u64,
    pub a: u32,
    pub places: Vec<Place>,
}

impl PlaceSet {
    pub fn degree_sum(&self) -> u64 {
        self.places.iter().map(|v| v.degree as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
}

/// Compares monic polynomials of equal degree from the top coefficient down,
/// matching the packed-index order on coefficient vectors.
fn poly_order(a: &Poly, b: &Poly) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Frobenius orbits of exact size `d` in `F_{q^d}`, each as (least element, minimal polynomial).
fn orbits(ext: &Arc<ExtField>, include_zero: bool) -> Vec<(FieldElem, Poly)> {
    let field = &ext.field;
    let d = ext.degree as usize;
    let size = field.size() as usize;
    let mut seen = vec![false; size];
    let ring = PolyRing::new(field);
    let mut out = Vec::new();
    let start = if include_zero && d == 1 { 0 } else { 1 };
    for x in start..size {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![FieldElem(x as u64)];
        loop {
            let next = ext.frobenius_q(*orbit.last().unwrap());
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        for o in &orbit {
            seen[o.0 as usize] = true;
        }
        if orbit.len() != d {
            continue;
        }
        let mut m: Poly = vec![FieldElem::ONE];
        for &r in &orbit {
            m = ring.mul(&m, &[field.neg(r), FieldElem::ONE]);
        }
        let pulled: Poly = m.iter().map(|&c| ext.pullback(c).expect("minimal polynomial has base coefficients")).collect();
        out.push((FieldElem(x as u64), pulled));
    }
    out
}

/// Every monic irreducible of degree `d` over `F_q` (including `t`) with its least root in `F_{q^d}`.
pub fn irreducibles_with_roots(tower: &Arc<Tower>, d: u32) -> Result<(Arc<ExtField>, Vec<(FieldElem, Poly)>)> {
    let ext = tower.extension(d)?;
    let mut list = orbits(&ext, true);
    list.sort_by(|x, y| poly_order(&x.1, &y.1));
    Ok((ext, list))
}

/// All monic irreducibles of degree `d` over `F_q`, in ascending order.
pub fn enumerate_irreducibles(tower: &Arc<Tower>, d: u32) -> Result<Vec<Poly>> {
    let ext = tower.extension(d)?;
    let mut polys: Vec<Poly> = orbits(&ext, true).into_iter().map(|(_, m)| m).collect();
    polys.sort_by(poly_order);
    Ok(polys)
}

pub(crate) fn compute_places(tower: &Arc<Tower>, a: u32) -> Result<PlaceSet> {
    if a == 0 {
        return Err(Error::InvalidLevel);
    }
    let mut places = Vec::new();
    for d in divisors(a) {
        let ext = tower.extension(d)?;
        for (beta, poly) in orbits(&ext, false) {
            places.push(Place { poly, degree: d, beta, ext: ext.clone() });
        }
    }
    places.sort_by(|x, y| x.degree.cmp(&y.degree).then_with(|| poly_order(&x.poly, &y.poly)));
    let set = PlaceSet { q: tower.q(), a, places };
    debug_assert_eq!(set.degree_sum(), tower.q().pow(a) - 1);
    Ok(set)
}

/// `P_q(a)`: finite places of degree dividing `a` other than `t`.
pub fn places_p(tower: &Arc<Tower>, a: u32) -> Result<Arc<PlaceSet>> {
    tower.places(a)
}

/// Bounds on `|P_q(a)|` from the count of monic irreducibles: at least
/// `q^a/a - q^{a/2} - 1` and at most `sum_{n | a} q^n / n - 1`.
pub fn place_count_bounds(q: u64, a: u32) -> (f64, f64) {
    let qf = q as f64;
    let lower = qf.powi(a as i32) / a as f64 - qf.powf(a as f64 / 2.0) - 1.0;
    let upper = divisors(a).iter().map(|&n| qf.powi(n as i32) / n as f64).sum::<f64>() - 1.0;
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::build_field;

    fn tower(p: u64, f: u32) -> Arc<Tower> {
        Tower::new(&build_field(p, f, None).unwrap())
    }

    #[test]
    fn irreducible_counts_over_f3() {
        let t = tower(3, 1);
        assert_eq!(enumerate_irreducibles(&t, 1).unwrap().len(), 3);
        assert_eq!(enumerate_irreducibles(&t, 2).unwrap().len(), 3);
        assert_eq!(enumerate_irreducibles(&t, 4).unwrap().len(), 18);
    }

    #[test]
    fn places_at_level_one() {
        let t = tower(3, 1);
        let s = places_p(&t, 1).unwrap();
        let shown: Vec<(String, u64)> = s.places.iter().map(|v| (v.display(), v.beta.0)).collect();
        assert_eq!(shown, vec![("t + 1".to_string(), 2), ("t + 2".to_string(), 1)]);
    }

    #[test]
    fn place_counts_and_degree_sums() {
        let t = tower(3, 1);
        assert_eq!(places_p(&t, 2).unwrap().len(), 5);
        let s4 = places_p(&t, 4).unwrap();
        assert_eq!(s4.len(), 23);
        assert_eq!(s4.degree_sum(), 80);
    }

    #[test]
    fn places_over_f9() {
        let t = tower(3, 2);
        let s = places_p(&t, 2).unwrap();
        assert_eq!(s.degree_sum(), 80);
        let ring = PolyRing::new(t.base());
        for v in &s.places {
            assert!(ring.is_irreducible(&v.poly));
            let ev = v.poly.iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                v.ext.field.add(v.ext.field.mul(acc, v.beta), v.ext.embed(c))
            });
            assert!(ev.is_zero());
        }
    }
}
