//! The base field `F_q` together with its extensions `F_{q^d}`.
//!
//! Each extension is `F_p[X]/(m_{fd})` for its own canonical modulus and
//! receives `F_q` through [`Embedding::new`]. The degree-1 extension is the
//! base field itself with the identity map.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

use super::field::{build_field, Embedding, FieldElem, FieldSpec, FiniteField};
use super::places::PlaceSet;

/// `F_{q^d}` with a fixed embedding of the base field.
#[derive(Debug)]
pub struct ExtField {
    pub field: FiniteField,
    /// Degree over the base field.
    pub degree: u32,
    q: u64,
    embed: Embedding,
    base_field: Arc<FiniteField>,
    pullback: OnceLock<HashMap<FieldElem, FieldElem>>,
}

impl ExtField {
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Image of a base-field element.
    pub fn embed(&self, x: FieldElem) -> FieldElem {
        self.embed.apply(&self.field, x)
    }

    /// Preimage of an element lying in the embedded base field.
    pub fn pullback(&self, y: FieldElem) -> Option<FieldElem> {
        if self.degree == 1 {
            return Some(y);
        }
        let map = self.pullback.get_or_init(|| {
            (0..self.base_field.size()).map(|x| (self.embed(FieldElem(x)), FieldElem(x))).collect()
        });
        map.get(&y).copied()
    }

    /// `x -> x^q`, the generator of `Gal(F_{q^d}/F_q)`.
    pub fn frobenius_q(&self, x: FieldElem) -> FieldElem {
        self.field.pow(x, self.q)
    }

    pub fn base(&self) -> &FiniteField {
        &self.base_field
    }
}

/// Lazily built extensions and place sets over one base field.
#[derive(Debug)]
pub struct Tower {
    base: Arc<FiniteField>,
    exts: Mutex<BTreeMap<u32, Arc<ExtField>>>,
    places: Mutex<BTreeMap<u32, Arc<PlaceSet>>>,
}

impl Tower {
    pub fn new(spec: &FieldSpec) -> Arc<Self> {
        Arc::new(Tower {
            base: Arc::new(FiniteField::from_spec(spec)),
            exts: Mutex::new(BTreeMap::new()),
            places: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    /// `F_{q^d}`, built on first use.
    pub fn extension(&self, d: u32) -> Result<Arc<ExtField>> {
        if let Some(e) = self.exts.lock().unwrap().get(&d) {
            return Ok(e.clone());
        }
        let ext = Arc::new(self.build_extension(d)?);
        Ok(self.exts.lock().unwrap().entry(d).or_insert(ext).clone())
    }

    fn build_extension(&self, d: u32) -> Result<ExtField> {
        let q = self.q();
        if d == 0 {
            return Err(Error::InvalidLevel);
        }
        let size = (q as u128).checked_pow(d).unwrap_or(u128::MAX);
        if size > super::field::TABLE_LIMIT as u128 * 64 {
            return Err(Error::FieldTooLarge(size));
        }
        if d == 1 {
            let field = (*self.base).clone();
            let embed = Embedding::identity(&field);
            return Ok(ExtField {
                field,
                degree: 1,
                q,
                embed,
                base_field: self.base.clone(),
                pullback: OnceLock::new(),
            });
        }
        let spec = build_field(self.p(), self.base.degree() as u32 * d, None)?;
        let field = FiniteField::from_spec(&spec);
        let embed = Embedding::new(&self.base, &field)?;
        Ok(ExtField { field, degree: d, q, embed, base_field: self.base.clone(), pullback: OnceLock::new() })
    }

    /// The places in `P_q(a)`, cached per level.
    pub fn places(self: &Arc<Self>, a: u32) -> Result<Arc<PlaceSet>> {
        if let Some(s) = self.places.lock().unwrap().get(&a) {
            return Ok(s.clone());
        }
        let set = Arc::new(super::places::compute_places(self, a)?);
        Ok(self.places.lock().unwrap().entry(a).or_insert(set).clone())
    }
}
