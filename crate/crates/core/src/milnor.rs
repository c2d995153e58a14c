//! Milnor K-groups in degrees 1 and 2 for finite fields and rational function fields
//! over them: symbol reduction, tame symbols, residue vectors, Weil reciprocity, and
//! norms along constant extensions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{make_field, Embedding, Extension, Field, FieldElem};
use crate::laurent::pow_signed;
use crate::linalg::RelativeBasis;
use crate::ratfunc::{Place, RationalFunc};
use crate::upoly::UPoly;

/// An element of `K_1(F) = F^×`, stored as its discrete log to the canonical generator.
#[derive(Clone, PartialEq, Eq)]
pub struct K1Class {
    field: Field,
    exponent: u64,
}

impl K1Class {
    pub fn from_raw(field: &Field, x: u32) -> Result<K1Class> {
        let exponent = field.log(x).ok_or(Error::ZeroEntry)? as u64;
        Ok(K1Class { field: field.clone(), exponent })
    }

    pub fn from_elem(x: &FieldElem) -> Result<K1Class> {
        Self::from_raw(x.field(), x.index())
    }

    pub fn trivial(field: &Field) -> K1Class {
        K1Class { field: field.clone(), exponent: 0 }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Exponent in `0..q-1`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_raw(&self) -> u32 {
        self.field.exp(self.exponent)
    }

    pub fn to_elem(&self) -> FieldElem {
        self.field.elem(self.to_raw())
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    fn group_order(&self) -> u64 {
        self.field.order() as u64 - 1
    }

    /// The group law (multiplication in `F^×`).
    pub fn mul(&self, other: &K1Class) -> Result<K1Class> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let exponent = (self.exponent + other.exponent) % self.group_order();
        Ok(K1Class { field: self.field.clone(), exponent })
    }

    pub fn pow(&self, k: i64) -> K1Class {
        let m = self.group_order() as i128;
        let exponent = ((self.exponent as i128 * k as i128).rem_euclid(m)) as u64;
        K1Class { field: self.field.clone(), exponent }
    }

    pub fn inv(&self) -> K1Class {
        self.pow(-1)
    }
}

impl fmt::Debug for K1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The element it represents, in the field element text format.
impl fmt::Display for K1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_elem())
    }
}

/// Why a symbol over a finite field is trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialityCertificate {
    /// Some entry equals 1.
    UnitEntry,
    /// Two entries sum to 1.
    Steinberg,
    /// Two entries sum to 0, and `{a, -a} = 0`.
    Negation,
    /// `K_q` of a finite field vanishes for `q ≥ 2`.
    FiniteFieldK2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolReduction {
    K1(K1Class),
    Trivial(TrivialityCertificate),
}

/// Reduces the symbol `{a_1, …, a_q}` over a finite field.
pub fn symbol_reduce(entries: &[FieldElem]) -> Result<SymbolReduction> {
    let first = entries.first().ok_or_else(|| Error::InvalidParams("empty symbol".into()))?;
    let field = first.field();
    if entries.iter().any(|e| e.field() != field) {
        return Err(Error::FieldMismatch("symbol entries over different fields".into()));
    }
    if entries.iter().any(FieldElem::is_zero) {
        return Err(Error::ZeroEntry);
    }
    if entries.len() == 1 {
        return Ok(SymbolReduction::K1(K1Class::from_elem(first)?));
    }
    if entries.iter().any(FieldElem::is_one) {
        return Ok(SymbolReduction::Trivial(TrivialityCertificate::UnitEntry));
    }
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            let sum = field.add(a.index(), b.index());
            if sum == 1 {
                return Ok(SymbolReduction::Trivial(TrivialityCertificate::Steinberg));
            }
            if sum == 0 {
                return Ok(SymbolReduction::Trivial(TrivialityCertificate::Negation));
            }
        }
    }
    Ok(SymbolReduction::Trivial(TrivialityCertificate::FiniteFieldK2))
}

/// The residue field `F = k(P)` of a place, with `k → F` and a chosen root `θ` of `P`.
#[derive(Clone, Debug)]
pub struct ResidueModel {
    place: Place,
    field: Field,
    embedding: Embedding,
    theta: u32,
}

impl ResidueModel {
    /// For a finite place, `F = F_{p^{n·deg P}}` with the canonical embedding of `k` and
    /// `θ` the smallest-index root of `P`. At infinity `F = k`.
    pub fn new(base: &Field, place: &Place) -> Result<ResidueModel> {
        match place {
            Place::Infinity => Ok(ResidueModel {
                place: place.clone(),
                field: base.clone(),
                embedding: Embedding::identity(base),
                theta: 0,
            }),
            Place::Finite(p) => {
                if p.field() != base {
                    return Err(Error::FieldMismatch(format!("place over {}, expected {base}", p.field())));
                }
                let deg = p.degree().ok_or(Error::ZeroPolynomial)? as u32;
                let field = make_field(base.characteristic(), base.degree() * deg)?;
                let embedding = Embedding::canonical(base, &field)?;
                let theta =
                    (0..field.order()).find(|&x| p.eval_embedded(&embedding, x) == 0).ok_or(Error::NotIrreducible)?;
                Ok(ResidueModel { place: place.clone(), field, embedding, theta })
            }
        }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// Value at the place of a function that is a unit there.
    pub fn reduce(&self, f: &RationalFunc) -> Result<u32> {
        if f.valuation(&self.place)? != 0 {
            return Err(Error::InvalidParams(format!("{f} is not a unit at {}", self.place)));
        }
        Ok(match &self.place {
            Place::Infinity => self.field.div(f.num().leading(), f.den().leading()).expect("nonzero"),
            Place::Finite(_) => {
                let num = f.num().eval_embedded(&self.embedding, self.theta);
                let den = f.den().eval_embedded(&self.embedding, self.theta);
                self.field.div(num, den).expect("unit at the place")
            }
        })
    }

    /// The unit part of `f` at the place: `f` divided by the uniformizer to its
    /// valuation.
    fn unit_part(&self, f: &RationalFunc, v: i64) -> Result<RationalFunc> {
        match &self.place {
            Place::Infinity => Ok(f.mul(&RationalFunc::x(f.field()).pow(v)?)),
            Place::Finite(p) => f.div(&RationalFunc::from_poly(p.clone()).pow(v)?),
        }
    }
}

/// `∂_P{f, g} = (-1)^{v(f)v(g)} (g^{v(f)} / f^{v(g)})(P)`, normalized so that
/// `∂{π, u} = ū` for a uniformizer `π` and a unit `u`.
pub fn tame_symbol(f: &RationalFunc, g: &RationalFunc, place: &Place) -> Result<K1Class> {
    let model = ResidueModel::new(f.field(), place)?;
    tame_symbol_in(&model, f, g)
}

fn tame_symbol_in(model: &ResidueModel, f: &RationalFunc, g: &RationalFunc) -> Result<K1Class> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), g.field())));
    }
    let vf = f.valuation(model.place())?;
    let vg = g.valuation(model.place())?;
    let field = model.field();
    let uf = model.reduce(&model.unit_part(f, vf)?)?;
    let ug = model.reduce(&model.unit_part(g, vg)?)?;
    let mut value = field.div(pow_signed(field, ug, vf), pow_signed(field, uf, vg)).expect("nonzero");
    if (vf * vg) % 2 != 0 {
        value = field.neg(value);
    }
    K1Class::from_raw(field, value)
}

/// An element of `K_2(k(x))` for finite `k`, given by its tame symbols. Only nontrivial
/// residues are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct K2Class {
    base: Field,
    residues: BTreeMap<Place, K1Class>,
}

impl K2Class {
    pub fn trivial(base: &Field) -> K2Class {
        K2Class { base: base.clone(), residues: BTreeMap::new() }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// Multiplies the residue at `place` by `value`, which must live in the residue field.
    pub fn insert(&mut self, place: Place, value: K1Class) -> Result<()> {
        let expected_degree = self.base.degree() * place.degree() as u32;
        if value.field().characteristic() != self.base.characteristic() || value.field().degree() != expected_degree {
            return Err(Error::FieldMismatch(format!(
                "residue at {place} lives in {}, expected degree {expected_degree}",
                value.field()
            )));
        }
        let updated = match self.residues.get(&place) {
            Some(old) => old.mul(&value)?,
            None => value,
        };
        if updated.is_trivial() {
            self.residues.remove(&place);
        } else {
            self.residues.insert(place, updated);
        }
        Ok(())
    }

    pub fn residue(&self, place: &Place) -> Option<&K1Class> {
        self.residues.get(place)
    }

    pub fn residues(&self) -> impl Iterator<Item = (&Place, &K1Class)> {
        self.residues.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn mul(&self, other: &K2Class) -> Result<K2Class> {
        if self.base != other.base {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.base, other.base)));
        }
        let mut out = self.clone();
        for (p, c) in &other.residues {
            out.insert(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> K2Class {
        let mut out = K2Class::trivial(&self.base);
        for (p, c) in &self.residues {
            out.insert(p.clone(), c.pow(k)).expect("same residue field");
        }
        out
    }
}

impl fmt::Debug for K2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{place: value, …}`.
impl fmt::Display for K2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, c)) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {c}")?;
        }
        f.write_str("}")
    }
}

/// Places where `f` or `g` has a zero or a pole, infinity last.
fn joint_support(f: &RationalFunc, g: &RationalFunc) -> Result<Vec<Place>> {
    let mut places = f.support()?;
    places.extend(g.support()?);
    places.sort();
    places.dedup();
    Ok(places)
}

/// Tame symbols of `{f, g}` at every place, infinity included.
pub fn residue_vector(f: &RationalFunc, g: &RationalFunc) -> Result<K2Class> {
    let mut out = K2Class::trivial(f.field());
    for place in joint_support(f, g)? {
        let model = ResidueModel::new(f.field(), &place)?;
        out.insert(place, tame_symbol_in(&model, f, g)?)?;
    }
    Ok(out)
}

/// The factors `N_{k(P)/k}(∂_P{f, g})` over the support, and whether their product is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ReciprocityReport {
    pub factors: Vec<(Place, FieldElem)>,
    pub holds: bool,
}

pub fn weil_reciprocity_check(f: &RationalFunc, g: &RationalFunc) -> Result<ReciprocityReport> {
    let base = f.field();
    let mut factors = Vec::new();
    let mut product = 1u32;
    for place in joint_support(f, g)? {
        let model = ResidueModel::new(base, &place)?;
        let value = tame_symbol_in(&model, f, g)?;
        let ext = Extension::new(model.embedding().clone());
        let norm = ext.norm(&value.to_elem())?;
        product = base.mul(product, norm.index());
        factors.push((place, norm));
    }
    Ok(ReciprocityReport { factors, holds: product == 1 })
}

/// Restriction of a function to a constant extension `l(x)`.
pub fn restrict_function(f: &RationalFunc, e: &Embedding) -> Result<RationalFunc> {
    RationalFunc::new(f.num().map_coeffs(e), f.den().map_coeffs(e))
}

/// `N_{l(x)/k(x)}` on residue vectors: the residue at a base place `P` is the product of
/// `N_{l(P')/k(P)}` of the residues at the places `P'` above it.
///
/// The residue field `k(P)` is identified with a subfield of `l(P')` by sending the
/// chosen root of `P` to the chosen root of `P'`.
pub fn norm_pushforward(cls: &K2Class, k: &Field) -> Result<K2Class> {
    let l = cls.base();
    let ext =
        Extension::canonical(k, l).map_err(|_| Error::NotConstantExtension(format!("{k} is not a subfield of {l}")))?;
    let mut out = K2Class::trivial(k);
    for (place, value) in cls.residues() {
        let (base_place, local_norm) = match place {
            Place::Infinity => (Place::Infinity, ext.norm(&value.to_elem())?),
            Place::Finite(_) => push_finite(&ext, place, value)?,
        };
        out.insert(base_place, K1Class::from_elem(&local_norm)?)?;
    }
    Ok(out)
}

fn push_finite(ext: &Extension, place: &Place, value: &K1Class) -> Result<(Place, FieldElem)> {
    let (k, l) = (ext.base(), ext.top());
    let upper = ResidueModel::new(l, place)?;
    if value.field() != upper.field() {
        return Err(Error::FieldMismatch(format!("residue in {}, expected {}", value.field(), upper.field())));
    }
    let big = upper.field();
    let k_in_big = ext.embedding().then(upper.embedding())?;
    // Minimal polynomial over k of the chosen root above.
    let theta_up = upper.theta();
    let q = k.order() as u64;
    let mut orbit = alloc::vec![theta_up];
    loop {
        let next = big.pow(*orbit.last().unwrap(), q);
        if next == theta_up {
            break;
        }
        orbit.push(next);
    }
    let mut minpoly = UPoly::one(big);
    for &r in &orbit {
        minpoly = minpoly.mul(&UPoly::linear(big, r));
    }
    let coeffs = minpoly
        .coeffs()
        .iter()
        .map(|&c| k_in_big.preimage_raw(c).ok_or_else(|| Error::NotSubfield("minimal polynomial".into())))
        .collect::<Result<Vec<_>>>()?;
    let base_place = Place::Finite(UPoly::from_coeffs(k, coeffs));
    let lower = ResidueModel::new(k, &base_place)?;
    // Transport k(P) → l(P'): θ ↦ θ', coefficients in k through both embeddings.
    let small = lower.field();
    let basis = RelativeBasis::power_basis(lower.embedding().clone(), lower.theta())?;
    let image = |z: u32| -> u32 {
        basis.decompose(z).iter().rev().fold(0u32, |acc, &a| big.add(big.mul(acc, theta_up), k_in_big.apply_raw(a)))
    };
    let transport = Embedding::new(small, big, &big.elem(image(small.modulus_root())))?;
    let local = Extension::new(transport);
    Ok((base_place, local.norm(&value.to_elem())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(f: &Field, c: &[u32]) -> RationalFunc {
        RationalFunc::from_poly(UPoly::from_coeffs(f, c.to_vec()))
    }

    fn place(f: &Field, c: &[u32]) -> Place {
        Place::finite(UPoly::from_coeffs(f, c.to_vec())).unwrap()
    }

    #[test]
    fn symbol_reduce_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        match symbol_reduce(&[f3.elem(2)]).unwrap() {
            SymbolReduction::K1(c) => assert_eq!(c.exponent(), 1),
            other => panic!("{other:?}"),
        }
        let a = f5.elem(3);
        let b = f5.one().try_sub(&a).unwrap();
        assert_eq!(symbol_reduce(&[a.clone(), b]).unwrap(), SymbolReduction::Trivial(TrivialityCertificate::Steinberg));
        assert_eq!(symbol_reduce(&[f5.one(), a]).unwrap(), SymbolReduction::Trivial(TrivialityCertificate::UnitEntry));
        assert_eq!(symbol_reduce(&[f5.zero()]), Err(Error::ZeroEntry));
    }

    #[test]
    fn tame_symbol_examples() {
        let f3 = make_field(3, 1).unwrap();
        let x = RationalFunc::x(&f3);
        let two = K1Class::from_raw(&f3, 2).unwrap();
        assert_eq!(tame_symbol(&x, &poly(&f3, &[2, 1]), &place(&f3, &[0, 1])).unwrap(), two);
        assert_eq!(tame_symbol(&x, &poly(&f3, &[1, 1]), &place(&f3, &[1, 1])).unwrap(), two);
        assert!(tame_symbol(&poly(&f3, &[1, 1]), &poly(&f3, &[2, 1]), &place(&f3, &[0, 1])).unwrap().is_trivial());
    }

    #[test]
    fn uniformizer_against_unit_gives_the_unit() {
        let f5 = make_field(5, 1).unwrap();
        let x = RationalFunc::x(&f5);
        let g = poly(&f5, &[2, 1]);
        assert_eq!(tame_symbol(&x, &g, &place(&f5, &[0, 1])).unwrap(), K1Class::from_raw(&f5, 2).unwrap());
        assert_eq!(tame_symbol(&g, &x, &place(&f5, &[0, 1])).unwrap(), K1Class::from_raw(&f5, 3).unwrap());
    }

    #[test]
    fn residue_vector_examples() {
        let f3 = make_field(3, 1).unwrap();
        let x = RationalFunc::x(&f3);
        let v = residue_vector(&x, &poly(&f3, &[1, 1])).unwrap();
        let two = K1Class::from_raw(&f3, 2).unwrap();
        assert_eq!(v.residue(&place(&f3, &[0, 1])), None);
        assert_eq!(v.residue(&place(&f3, &[1, 1])), Some(&two));
        assert_eq!(v.residue(&Place::Infinity), Some(&two));
        assert!(residue_vector(&poly(&f3, &[2]), &poly(&f3, &[2])).unwrap().is_trivial());
        let v = residue_vector(&x, &x).unwrap();
        assert_eq!(v.residue(&place(&f3, &[0, 1])), Some(&two));
        assert_eq!(v.residue(&Place::Infinity), Some(&two));
    }

    #[test]
    fn reciprocity_examples() {
        let f3 = make_field(3, 1).unwrap();
        let x = RationalFunc::x(&f3);
        let r = weil_reciprocity_check(&x, &poly(&f3, &[1, 1])).unwrap();
        assert!(r.holds);
        let mut values: Vec<u32> = r.factors.iter().map(|(_, c)| c.index()).collect();
        values.sort();
        assert_eq!(values, vec![1, 2, 2]);
        let r = weil_reciprocity_check(&x, &poly(&f3, &[1, 0, 1])).unwrap();
        assert!(r.holds);
        assert!(r.factors.iter().any(|(p, _)| p.degree() == 2));
        assert!(weil_reciprocity_check(&poly(&f3, &[2]), &poly(&f3, &[2])).unwrap().factors.is_empty());
    }

    #[test]
    fn pushforward_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let y = f9.modulus_root();
        let minus_y = f9.neg(y);
        let below = place(&f3, &[1, 0, 1]);
        // c at (x - y)
        let c = K1Class::from_raw(&f9, f9.add(1, y)).unwrap();
        let mut cls = K2Class::trivial(&f9);
        cls.insert(place(&f9, &[minus_y, 1]), c.clone()).unwrap();
        let pushed = norm_pushforward(&cls, &f3).unwrap();
        assert_eq!(pushed.residue(&below), Some(&c));
        assert!(norm_pushforward(&K2Class::trivial(&f9), &f3).unwrap().is_trivial());
        // c at (x - y), c' at (x + y); c' in F_3 is fixed by the transport
        let c2 = K1Class::from_raw(&f9, 2).unwrap();
        cls.insert(place(&f9, &[y, 1]), c2.clone()).unwrap();
        let pushed = norm_pushforward(&cls, &f3).unwrap();
        assert_eq!(pushed.residue(&below), Some(&c.mul(&c2).unwrap()));
        let f2 = make_field(2, 1).unwrap();
        assert!(matches!(norm_pushforward(&cls, &f2), Err(Error::NotConstantExtension(_))));
    }

    #[test]
    fn pushforward_of_restriction_is_multiplication_by_degree() {
        let f3 = make_field(3, 1).unwrap();
        let f27 = make_field(3, 3).unwrap();
        let e = Embedding::canonical(&f3, &f27).unwrap();
        let f = poly(&f3, &[1, 2, 0, 1]);
        let g = RationalFunc::new(UPoly::from_coeffs(&f3, vec![2, 1]), UPoly::from_coeffs(&f3, vec![1, 0, 1])).unwrap();
        let below = residue_vector(&f, &g).unwrap();
        let above = residue_vector(&restrict_function(&f, &e).unwrap(), &restrict_function(&g, &e).unwrap()).unwrap();
        assert_eq!(norm_pushforward(&above, &f3).unwrap(), below.pow(3));
    }
}
