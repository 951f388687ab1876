//! Finite fields, polynomials over them and places of `F_q(t)`.

pub mod field;
pub mod places;
pub mod poly;
pub mod tower;

pub use field::{build_field, canonical_modulus, Embedding, FieldElem, FieldSpec, FiniteField, Tables};
pub use places::{enumerate_irreducibles, irreducibles_with_roots, place_count_bounds, places_p, Place, PlaceSet};
pub use poly::{format_poly, Poly, PolyRing};
pub use tower::{ExtField, Tower};

/// The quadratic character of `F_q`.
pub fn quadratic_character(field: &FiniteField, x: FieldElem) -> i8 {
    field.quadratic_character(x)
}

/// `Tr_{F_{q^d}/F_q}(x) = x + x^q + ... + x^{q^{d-1}}`.
pub fn relative_trace(ext: &ExtField, x: FieldElem) -> FieldElem {
    let f = &ext.field;
    let mut acc = FieldElem::ZERO;
    let mut cur = x;
    for _ in 0..ext.degree {
        acc = f.add(acc, cur);
        cur = ext.frobenius_q(cur);
    }
    ext.pullback(acc).expect("trace lands in the base field")
}

pub fn is_squarefree(field: &FiniteField, poly: &[FieldElem]) -> bool {
    PolyRing::new(field).is_squarefree(poly)
}
