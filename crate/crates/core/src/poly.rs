//! Sparse multivariate polynomials with exponent-vector keys in graded lexicographic
//! order, generic over the coefficient ring.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::ratfunc::RationalFunc;
use crate::upoly::UPoly;

/// A commutative coefficient ring. `Ctx` is whatever is needed to build constants (the
/// base field, plus a precision for truncated series).
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
}

impl Ring for FieldElem {
    type Ctx = Field;

    fn zero_in(ctx: &Field) -> Self {
        ctx.zero()
    }
    fn one_in(ctx: &Field) -> Self {
        ctx.one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Ring for UPoly {
    type Ctx = Field;

    fn zero_in(ctx: &Field) -> Self {
        UPoly::zero(ctx)
    }
    fn one_in(ctx: &Field) -> Self {
        UPoly::one(ctx)
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

impl Ring for RationalFunc {
    type Ctx = Field;

    fn zero_in(ctx: &Field) -> Self {
        RationalFunc::zero(ctx)
    }
    fn one_in(ctx: &Field) -> Self {
        RationalFunc::one(ctx)
    }
    fn is_zero(&self) -> bool {
        RationalFunc::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: total degree first, then exponents with `X0` most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `nvars` variables `X0, X1, …` with coefficients in `C`. No zero
/// coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Ring> {
    ctx: C::Ctx,
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Forms over a finite field.
pub type Form = MultiPoly<FieldElem>;
/// Forms with coefficients in `k[t]`.
pub type TPoly = MultiPoly<UPoly>;

impl<C: Ring> MultiPoly<C> {
    pub fn zero(ctx: &C::Ctx, nvars: usize) -> Self {
        MultiPoly { ctx: ctx.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &C::Ctx, nvars: usize, c: C) -> Self {
        Self::monomial(ctx, nvars, Monomial::one(nvars), c)
    }

    pub fn one(ctx: &C::Ctx, nvars: usize) -> Self {
        Self::constant(ctx, nvars, C::one_in(ctx))
    }

    pub fn var(ctx: &C::Ctx, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(ctx, nvars, Monomial::var(nvars, i), C::one_in(ctx))
    }

    pub fn monomial(ctx: &C::Ctx, nvars: usize, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), nvars, "exponent vector length");
        let mut p = Self::zero(ctx, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(ctx: &C::Ctx, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Result<Self> {
        let mut p = Self::zero(ctx, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, got: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different numbers of variables");
        assert!(self.ctx == other.ctx, "polynomials over different coefficient rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.times(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(&self.ctx, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is a nonzero form.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True for the zero polynomial and for forms.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Replaces each variable `X_i` by `replacements[i]`. All replacements must be forms
    /// of one common degree (zero polynomials are allowed and kill the terms they enter).
    pub fn substitute(&self, replacements: &[Self]) -> Result<Self> {
        if replacements.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: replacements.len() });
        }
        let mut degree = None;
        for r in replacements {
            if r.ctx != self.ctx {
                return Err(Error::FieldMismatch("replacement over a different coefficient ring".into()));
            }
            if r.is_zero() {
                continue;
            }
            let d = r.homogeneous_degree().ok_or(Error::InhomogeneousReplacement)?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::InhomogeneousReplacement),
                _ => {}
            }
        }
        self.compose(replacements)
    }

    /// General substitution `X_i ↦ replacements[i]` with no homogeneity requirement.
    pub fn compose(&self, replacements: &[Self]) -> Result<Self> {
        if replacements.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: replacements.len() });
        }
        let target_nvars = match replacements.first() {
            Some(r) => r.nvars,
            None => 0,
        };
        if let Some(r) = replacements.iter().find(|r| r.nvars != target_nvars) {
            return Err(Error::ArityMismatch { expected: target_nvars, got: r.nvars });
        }
        let mut cache: Vec<Vec<Self>> =
            replacements.iter().map(|r| vec![Self::one(&self.ctx, target_nvars), r.clone()]).collect();
        let mut out = Self::zero(&self.ctx, target_nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&self.ctx, target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if replacements[i].is_zero() {
                    term = Self::zero(&self.ctx, target_nvars);
                    break;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&replacements[i]);
                    cache[i].push(next);
                }
                term = term.mul(&cache[i][e as usize]);
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = C::zero_in(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.times(x);
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    /// Moves the polynomial into `nvars` variables, sending `X_i` to `X_{map[i]}`.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(&self.ctx, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Moves `X_i` to `X_{i + offset}` inside `nvars` variables.
    pub fn shift_vars(&self, offset: usize, nvars: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).map(|i| i + offset).collect();
        self.relabel(nvars, &map)
    }

    /// Applies a coefficient map into another ring.
    pub fn map_coeffs<D: Ring>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::<D>::zero(ctx, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl MultiPoly<FieldElem> {
    pub fn field(&self) -> &Field {
        &self.ctx
    }

    /// Pushes coefficients through an embedding of fields.
    pub fn base_change(&self, e: &Embedding) -> Result<Form> {
        if e.sub() != &self.ctx {
            return Err(Error::FieldMismatch(format!(
                "embedding from {} applied to a form over {}",
                e.sub(),
                self.ctx
            )));
        }
        Ok(self.map_coeffs(e.sup(), |c| e.sup().elem(e.apply_raw(c.index()))))
    }

    /// Raw coefficients and exponent lists, ready for fast evaluation.
    pub fn compile(&self) -> CompiledForm {
        CompiledForm::new(self)
    }
}

/// A form flattened for repeated evaluation at raw field indices.
#[derive(Clone, Debug)]
pub struct CompiledForm {
    field: Field,
    nvars: usize,
    terms: Vec<(u32, Vec<(usize, u32)>)>,
}

impl CompiledForm {
    fn new(poly: &Form) -> CompiledForm {
        let terms = poly
            .terms()
            .map(|(m, c)| {
                let vars = m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
                (c.index(), vars)
            })
            .collect();
        CompiledForm { field: poly.field().clone(), nvars: poly.nvars(), terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Value at a point given by raw indices.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = &self.field;
        let order = (f.order() - 1) as u64;
        let mut acc = 0;
        'terms: for (c, vars) in &self.terms {
            let mut log = f.log(*c).expect("stored coefficients are nonzero") as u64;
            for &(i, e) in vars {
                match f.log(point[i]) {
                    Some(l) => log += l as u64 * e as u64,
                    None => continue 'terms,
                }
            }
            acc = f.add(acc, f.exp(log % order));
        }
        acc
    }

    /// Like [`CompiledForm::eval`] with the point's logarithms precomputed (`None` for 0).
    pub fn eval_logs(&self, logs: &[Option<u32>]) -> u32 {
        let f = &self.field;
        let order = (f.order() - 1) as u64;
        let mut acc = 0;
        'terms: for (c, vars) in &self.terms {
            let mut log = f.log(*c).expect("stored coefficients are nonzero") as u64;
            for &(i, e) in vars {
                match logs[i] {
                    Some(l) => log += l as u64 * e as u64,
                    None => continue 'terms,
                }
            }
            acc = f.add(acc, f.exp(log % order));
        }
        acc
    }
}

/// The binary form `F(X0, X1) = X1^m f(X0/X1)` of a polynomial `f` of degree `m`.
pub fn homogenize(minpoly: &UPoly) -> Result<Form> {
    let m = minpoly.degree().ok_or(Error::ZeroPolynomial)?;
    let field = minpoly.field();
    let terms = minpoly.coeffs().iter().enumerate().map(|(i, &c)| (vec![i as u32, (m - i) as u32], field.elem(c)));
    MultiPoly::from_terms(field, 2, terms)
}

/// A hypersurface in `P^n`: a nonzero form in `n + 1` variables.
#[derive(Clone, PartialEq, Debug)]
pub struct Hypersurface {
    poly: Form,
    degree: u32,
}

impl Hypersurface {
    pub fn new(poly: Form) -> Result<Hypersurface> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = poly.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        Ok(Hypersurface { poly, degree })
    }

    pub fn poly(&self) -> &Form {
        &self.poly
    }

    pub fn into_poly(self) -> Form {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    /// `n` for a hypersurface in `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.poly.nvars() - 1
    }
}

impl<C: Ring> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `c*X0^a*X1^b + …`, highest term first; `0` for the zero polynomial. Coefficients whose
/// own text contains spaces are parenthesized.
impl<C: Ring> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let cs = c.to_string();
            if cs.contains(' ') {
                write!(f, "({cs})")?;
            } else {
                f.write_str(&cs)?;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*X{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, ascending.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    }
    out.sort();
    out
}

/// The form `Σ c_i m_i` whose coefficient vector over `monos` is given by the base-`q`
/// digits of `index` (first monomial least significant).
pub fn form_from_index(field: &Field, nvars: usize, monos: &[Monomial], mut index: u64) -> Form {
    let q = field.order() as u64;
    let mut out = Form::zero(field, nvars);
    for m in monos {
        let c = (index % q) as u32;
        index /= q;
        if c != 0 {
            out.terms.insert(m.clone(), field.elem(c));
        }
    }
    out
}

/// Number of forms of one degree, `q^(#monomials)`, if it fits in a `u64`.
pub fn form_count(field: &Field, monos: &[Monomial]) -> Option<u64> {
    (field.order() as u64).checked_pow(monos.len() as u32)
}

/// Whether the form's leading coefficient (on its largest monomial) is 1.
pub fn is_monic_form(f: &Form) -> bool {
    f.terms.iter().next_back().map(|(_, c)| c.is_one()).unwrap_or(false)
}

/// Builds a form from a compact list of `(coefficient index, exponents)` pairs.
pub fn form(field: &Field, nvars: usize, terms: &[(u32, &[u32])]) -> Form {
    MultiPoly::from_terms(field, nvars, terms.iter().map(|(c, e)| (e.to_vec(), field.elem(*c))))
        .expect("exponent vectors of the stated length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn substitute_examples() {
        let f3 = make_field(3, 1).unwrap();
        let target = form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        let r0 = form(&f3, 4, &[(1, &[2, 0, 0, 0]), (1, &[0, 2, 0, 0])]);
        let r1 = form(&f3, 4, &[(1, &[0, 0, 2, 0]), (1, &[0, 0, 0, 2])]);
        let got = target.substitute(&[r0.clone(), r1.clone()]).unwrap();
        assert_eq!(got, r0.pow(2).add(&r1.pow(2)));
        assert_eq!(got.homogeneous_degree(), Some(4));
        assert_eq!(got.num_terms(), 6);

        let f2 = make_field(2, 1).unwrap();
        let target = form(&f2, 2, &[(1, &[1, 1])]);
        let t0t1 = form(&f2, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let t0 = form(&f2, 2, &[(1, &[1, 0])]);
        let got = target.substitute(&[t0t1, t0]).unwrap();
        assert_eq!(got, form(&f2, 2, &[(1, &[2, 0]), (1, &[1, 1])]));

        let x0 = form(&f3, 1, &[(1, &[1])]);
        assert_eq!(x0.substitute(core::slice::from_ref(&r0)).unwrap(), r0);
    }

    #[test]
    fn substitute_errors() {
        let f3 = make_field(3, 1).unwrap();
        let target = form(&f3, 2, &[(1, &[1, 1])]);
        let a = form(&f3, 2, &[(1, &[1, 0])]);
        let b = form(&f3, 2, &[(1, &[2, 0])]);
        let c = form(&f3, 2, &[(1, &[2, 0]), (1, &[1, 0])]);
        assert_eq!(target.substitute(core::slice::from_ref(&a)), Err(Error::ArityMismatch { expected: 2, got: 1 }));
        assert_eq!(target.substitute(&[a.clone(), b]), Err(Error::InhomogeneousReplacement));
        assert_eq!(target.substitute(&[c, a.clone()]), Err(Error::InhomogeneousReplacement));
        let zero = Form::zero(&f3, 2);
        assert!(target.substitute(&[a, zero]).unwrap().is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let f3 = make_field(3, 1).unwrap();
        let p = form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(p.evaluate(&[f3.one(), f3.one()]).unwrap(), f3.elem(2));
        assert_eq!(p.evaluate(&[f3.zero(), f3.zero()]).unwrap(), f3.zero());
        let f9 = make_field(3, 2).unwrap();
        let p9 = p.base_change(&Embedding::canonical(&f3, &f9).unwrap()).unwrap();
        assert_eq!(p9.evaluate(&[f9.elem(3), f9.one()]).unwrap(), f9.zero());
        assert_eq!(p9.compile().eval(&[3, 1]), 0);
        assert!(p.evaluate(&[f3.one()]).is_err());
    }

    #[test]
    fn homogenize_examples() {
        let f3 = make_field(3, 1).unwrap();
        let h = homogenize(&UPoly::from_coeffs(&f3, vec![1, 0, 1])).unwrap();
        assert_eq!(h, form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]));
        let f2 = make_field(2, 1).unwrap();
        let h = homogenize(&UPoly::from_coeffs(&f2, vec![1, 1, 1])).unwrap();
        assert_eq!(h, form(&f2, 2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]));
        let h = homogenize(&UPoly::linear(&f3, 2)).unwrap();
        assert_eq!(h, form(&f3, 2, &[(1, &[1, 0]), (1, &[0, 1])]));
        assert_eq!(homogenize(&UPoly::zero(&f3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(1, 5).len(), 1);
        let f2 = make_field(2, 1).unwrap();
        let monos = monomials(3, 2);
        assert_eq!(form_count(&f2, &monos), Some(64));
        let f = form_from_index(&f2, 3, &monos, 63);
        assert_eq!(f.num_terms(), 6);
    }

    #[test]
    fn display_format() {
        let f3 = make_field(3, 1).unwrap();
        let p = form(&f3, 2, &[(1, &[2, 0]), (2, &[1, 1])]);
        assert_eq!(p.to_string(), "3^1:[1]*X0^2 + 3^1:[2]*X0^1*X1^1");
        assert_eq!(Form::zero(&f3, 2).to_string(), "0");
    }
}
