//! Finite fields `F_{p^n}` for small `p` and `n`.
//!
//! A field is described by its characteristic, its degree over the prime field and a
//! modulus: the lexicographically smallest monic irreducible polynomial of degree `n`
//! over `F_p`, comparing coefficient tuples from the leading coefficient down to the
//! constant term. Elements are stored by their *index*: the integer `Σ c_i p^i` built
//! from their coordinates `c_i` in the power basis of a root `y` of the modulus.
//! Index order is the element order used for every deterministic scan in the crate.
//!
//! Subfields are never identified implicitly. An inclusion `k ⊆ l` is an explicit
//! [`Embedding`], and [`Extension`] packages the canonical one together with the norm
//! and trace maps.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest characteristic accepted by [`make_field`].
pub const MAX_PRIME: u32 = 17;
/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

const NO_LOG: u32 = u32::MAX;

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u8>>,
    generator: u32,
}

/// A finite field `F_{p^n}`. Cloning is cheap; all clones share their tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Builds `F_{p^n}` with the default size caps.
pub fn make_field(p: u32, n: u32) -> Result<Field> {
    make_field_capped(p, n, MAX_FIELD_ORDER)
}

/// Builds `F_{p^n}`, refusing fields larger than `cap` (itself clamped to
/// [`MAX_FIELD_ORDER`]).
pub fn make_field_capped(p: u32, n: u32, cap: u64) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::CompositeP(p as u64));
    }
    if p > MAX_PRIME {
        return Err(Error::SizeExceeded(format!("characteristic {p} > {MAX_PRIME}")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("extension degree must be at least 1".into()));
    }
    let cap = cap.min(MAX_FIELD_ORDER);
    let q = (p as u64)
        .checked_pow(n)
        .filter(|&q| q <= cap)
        .ok_or_else(|| Error::SizeExceeded(format!("{p}^{n} exceeds the field cap {cap}")))?;
    Ok(Field(Arc::new(Inner::build(p, n, q as u32))))
}

pub(crate) mod fp {
    //! Dense polynomials over a prime field, coefficients low to high.
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            if c != 0 {
                let shift = top - dm;
                for (i, &mi) in m.iter().enumerate() {
                    let sub = (c as u64 * mi as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = alloc::vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = rem(&[1], m, p);
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = alloc::vec![0u32; a.len().max(b.len())];
        for (i, x) in r.iter_mut().enumerate() {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            *x = (ai + p - bi) % p;
        }
        trim(&mut r);
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test for a monic polynomial over `F_p`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = alloc::vec![0, 1];
        let mut powers = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        powers.push(h.clone());
        for _ in 0..n {
            h = powmod(&h, p as u64, f, p);
            powers.push(h.clone());
        }
        if powers[n] != rem(&x, f, p) {
            return false;
        }
        for r in super::prime_factors(n as u64) {
            let hk = &powers[n / r as usize];
            let g = gcd(f, &sub(hk, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Inner {
    fn build(p: u32, n: u32, q: u32) -> Inner {
        let modulus = smallest_irreducible(p, n);
        let to_coords = |mut idx: u32| {
            let mut c = vec![0u32; n as usize];
            for slot in c.iter_mut() {
                *slot = idx % p;
                idx /= p;
            }
            c
        };
        let to_index = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                let coords = to_coords(g);
                factors.iter().all(|&r| {
                    let pw = fp::powmod(&coords, order / r, &modulus, p);
                    pw != [1]
                })
            })
            .expect("a finite field has a primitive element");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let g = to_coords(generator);
        let mut cur = vec![1u32];
        for (k, slot) in exp.iter_mut().enumerate() {
            let mut padded = cur.clone();
            padded.resize(n as usize, 0);
            let idx = to_index(&padded);
            *slot = idx;
            log[idx as usize] = k as u32;
            cur = fp::mulmod(&cur, &g, &modulus, p);
        }

        let neg: Vec<u32> = (0..q)
            .map(|i| {
                let c: Vec<u32> = to_coords(i).into_iter().map(|d| (p - d) % p).collect();
                to_index(&c)
            })
            .collect();
        // zech[k] = log(1 + g^k)
        let zech: Vec<u32> = exp
            .iter()
            .map(|&e| {
                let c0 = e % p;
                let bumped = e - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let mut inner = Inner { p, n, q, modulus, exp, log, zech, neg, add_table: None, generator };
        if p != 2 && q <= 256 {
            let mut table = vec![0u8; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = inner.add_digits(a, b) as u8;
                }
            }
            inner.add_table = Some(table);
        }
        inner
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut r = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    }
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for t in 0..count {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut rest = t;
        for _ in 0..n {
            f.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The canonical primitive element: the primitive element of smallest index.
    pub fn generator(&self) -> u32 {
        self.0.generator
    }

    /// Root of the modulus, i.e. the element with coordinates `[0, 1, 0, …]`. For a prime
    /// field this is `0`.
    pub fn modulus_root(&self) -> u32 {
        if self.0.n == 1 {
            0
        } else {
            self.0.p
        }
    }

    pub fn elem(&self, index: u32) -> FieldElem {
        assert!(index < self.0.q, "index {index} out of range for {self}");
        FieldElem { field: self.clone(), value: index }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// Image of an integer under `Z → F_p ⊆ F`.
    pub fn from_int(&self, c: i64) -> FieldElem {
        self.elem(c.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() != self.0.n as usize {
            return Err(Error::ArityMismatch { expected: self.0.n as usize, got: coords.len() });
        }
        if coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidParams(format!("coordinate not reduced mod {}", self.0.p)));
        }
        Ok(self.elem(self.index_of_coords(coords)))
    }

    pub fn coords_of(&self, mut index: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let c = index % p;
                index /= p;
                c
            })
            .collect()
    }

    pub fn index_of_coords(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q).map(move |i| self.elem(i))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a ^ b;
        }
        if let Some(table) = &inner.add_table {
            return table[(a * inner.q + b) as usize] as u32;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let order = inner.q - 1;
        let la = inner.log[a as usize];
        let lb = inner.log[b as usize];
        let k = if lb >= la { lb - la } else { lb + order - la };
        let z = inner.zech[k as usize];
        if z == NO_LOG {
            0
        } else {
            inner.exp[((la as u64 + z as u64) % order as u64) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        let s = inner.log[a as usize] + inner.log[b as usize];
        let order = inner.q - 1;
        inner.exp[(if s >= order { s - order } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        let l = inner.log[a as usize];
        Some(inner.exp[((order - l) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a as usize] as u64;
        inner.exp[((l * (e % order)) % order) as usize]
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        let mut e = 1u64;
        let order = (self.0.q - 1) as u64;
        for _ in 0..k {
            e = e * self.0.p as u64 % order.max(1);
        }
        self.pow(a, if order == 1 { 1 } else { e })
    }

    /// Inverse Frobenius `a ↦ a^(1/p)`.
    pub fn frobenius_inverse(&self, a: u32) -> u32 {
        self.frobenius(a, self.0.n - 1)
    }

    /// Discrete logarithm to the canonical generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        let l = self.0.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    /// `g^k` for the canonical generator `g`.
    pub fn exp(&self, k: u64) -> u32 {
        let order = (self.0.q - 1) as u64;
        self.0.exp[(k % order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let order = (self.0.q - 1) as u64;
        Some(order / num_integer::gcd(l, order))
    }

    pub fn is_subfield_of(&self, other: &Field) -> bool {
        self.0.p == other.0.p && other.0.n.is_multiple_of(self.0.n)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.n == other.0.n)
    }
}

impl Eq for Field {}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.p, self.0.n).cmp(&(other.0.p, other.0.n))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.n)
    }
}

/// An element together with the field it belongs to.
///
/// The operator impls panic when the operands live in different fields; the
/// `try_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: u32,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords_of(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)))
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        let v = self.field.div(self.value, other.value).ok_or(Error::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.field.inv(self.value).map(|v| self.with(v)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.with(self.field.pow(self.value, e))
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.with(self.field.frobenius(self.value, 1))
    }

    fn with(&self, value: u32) -> FieldElem {
        FieldElem { field: self.field.clone(), value }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.cmp(&other.field).then(self.value.cmp(&other.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl core::ops::$trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$try(rhs).expect("arithmetic across different fields")
            }
        }
        impl core::ops::$trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$try(&rhs).expect("arithmetic across different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl core::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with(self.field.neg(self.value))
    }
}

impl core::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p^n:[c_0,c_1,…]`
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.field)?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A field homomorphism `sub → sup`, determined by the image of the modulus root of
/// `sub`.
#[derive(Clone)]
pub struct Embedding {
    sub: Field,
    sup: Field,
    image_of_generator: u32,
    table: Vec<u32>,
    inverse: Vec<(u32, u32)>,
}

impl Embedding {
    pub fn new(sub: &Field, sup: &Field, image_of_generator: &FieldElem) -> Result<Embedding> {
        if !sub.is_subfield_of(sup) {
            return Err(Error::DegreeMismatch(format!("{sub} does not embed in {sup}")));
        }
        if image_of_generator.field() != sup {
            return Err(Error::FieldMismatch(format!(
                "generator image lives in {}, expected {sup}",
                image_of_generator.field()
            )));
        }
        let img = image_of_generator.index();
        if sub.degree() > 1 && eval_raw(sup, |i| sub.modulus()[i], sub.modulus().len(), img) != 0 {
            return Err(Error::InvalidParams(format!("{image_of_generator} is not a root of the modulus of {sub}")));
        }
        Ok(Self::build(sub, sup, img))
    }

    /// The embedding sending the modulus root of `sub` to its smallest-index root in
    /// `sup`.
    pub fn canonical(sub: &Field, sup: &Field) -> Result<Embedding> {
        if !sub.is_subfield_of(sup) {
            return Err(Error::DegreeMismatch(format!("{sub} does not embed in {sup}")));
        }
        let img = if sub.degree() == 1 {
            0
        } else {
            (0..sup.order())
                .find(|&x| eval_raw(sup, |i| sub.modulus()[i], sub.modulus().len(), x) == 0)
                .expect("the modulus of a subfield splits in the larger field")
        };
        Ok(Self::build(sub, sup, img))
    }

    pub fn identity(field: &Field) -> Embedding {
        Self::build(field, field, field.modulus_root())
    }

    fn build(sub: &Field, sup: &Field, img: u32) -> Embedding {
        let n = sub.degree() as usize;
        let mut powers = Vec::with_capacity(n);
        let mut cur = 1u32;
        for _ in 0..n {
            powers.push(cur);
            cur = sup.mul(cur, img);
        }
        let table: Vec<u32> = (0..sub.order())
            .map(|i| sub.coords_of(i).iter().zip(&powers).fold(0u32, |acc, (&c, &pw)| sup.add(acc, sup.mul(c, pw))))
            .collect();
        let mut inverse: Vec<(u32, u32)> = table.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        inverse.sort_unstable();
        Embedding { sub: sub.clone(), sup: sup.clone(), image_of_generator: img, table, inverse }
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn image_of_generator(&self) -> FieldElem {
        self.sup.elem(self.image_of_generator)
    }

    #[inline]
    pub fn apply_raw(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn apply(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field() != &self.sub {
            return Err(Error::FieldMismatch(format!("{} is not in {}", x, self.sub)));
        }
        Ok(self.sup.elem(self.apply_raw(x.index())))
    }

    pub fn preimage_raw(&self, y: u32) -> Option<u32> {
        self.inverse.binary_search_by_key(&y, |&(img, _)| img).ok().map(|pos| self.inverse[pos].1)
    }

    pub fn preimage(&self, y: &FieldElem) -> Option<FieldElem> {
        if y.field() != &self.sup {
            return None;
        }
        self.preimage_raw(y.index()).map(|v| self.sub.elem(v))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if self.sup != other.sub {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.sup, other.sub)));
        }
        Ok(Self::build(&self.sub, &other.sup, other.apply_raw(self.image_of_generator)))
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({} -> {}, y -> {})", self.sub, self.sup, self.image_of_generator())
    }
}

fn eval_raw(field: &Field, coeff: impl Fn(usize) -> u32, len: usize, x: u32) -> u32 {
    (0..len).rev().fold(0u32, |acc, i| field.add(field.mul(acc, x), coeff(i)))
}

/// A finite extension `l/k` realised through an explicit embedding, with the norm and
/// trace maps down to `k`.
#[derive(Clone, Debug)]
pub struct Extension {
    embedding: Embedding,
    degree: u32,
}

impl Extension {
    pub fn new(embedding: Embedding) -> Extension {
        let degree = embedding.sup().degree() / embedding.sub().degree();
        Extension { embedding, degree }
    }

    /// `l/k` through the canonical embedding.
    pub fn canonical(k: &Field, l: &Field) -> Result<Extension> {
        if !k.is_subfield_of(l) {
            return Err(Error::NotSubfield(format!("{k} is not a subfield of {l}")));
        }
        Ok(Self::new(Embedding::canonical(k, l)?))
    }

    pub fn base(&self) -> &Field {
        self.embedding.sub()
    }

    pub fn top(&self) -> &Field {
        self.embedding.sup()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `x ↦ x^|k|` applied `j` times.
    pub fn conjugate_raw(&self, x: u32, j: u32) -> u32 {
        let top = self.top();
        let order = (top.order() - 1) as u64;
        let qk = self.base().order() as u64;
        let mut e = 1u64;
        for _ in 0..j {
            e = e * qk % order;
        }
        top.pow(x, if e == 0 { order } else { e })
    }

    /// `N_{l/k}(x)` as an element of the top field (it lies in the image of `k`).
    pub fn norm_raw(&self, x: u32) -> u32 {
        let top = self.top();
        let qk = self.base().order() as u64;
        // 1 + q + … + q^(m-1) = (q^m - 1)/(q - 1)
        let e = (top.order() as u64 - 1) / (qk - 1);
        top.pow(x, e)
    }

    pub fn trace_raw(&self, x: u32) -> u32 {
        (0..self.degree).fold(0u32, |acc, j| self.top().add(acc, self.conjugate_raw(x, j)))
    }

    fn check_top(&self, x: &FieldElem) -> Result<()> {
        if x.field() != self.top() {
            return Err(Error::NotSubfield(format!("{} is not an element of {}", x, self.top())));
        }
        Ok(())
    }

    pub fn norm(&self, x: &FieldElem) -> Result<FieldElem> {
        self.check_top(x)?;
        let v = self.norm_raw(x.index());
        let pre = self.embedding.preimage_raw(v).expect("norms land in the base field");
        Ok(self.base().elem(pre))
    }

    pub fn trace(&self, x: &FieldElem) -> Result<FieldElem> {
        self.check_top(x)?;
        let v = self.trace_raw(x.index());
        let pre = self.embedding.preimage_raw(v).expect("traces land in the base field");
        Ok(self.base().elem(pre))
    }
}

/// `N_{l/k}(x)` through the canonical embedding `k ⊆ l`.
pub fn norm(l: &Field, k: &Field, x: &FieldElem) -> Result<FieldElem> {
    Extension::canonical(k, l)?.norm(x)
}

/// `Tr_{l/k}(x)` through the canonical embedding `k ⊆ l`.
pub fn trace(l: &Field, k: &Field, x: &FieldElem) -> Result<FieldElem> {
    Extension::canonical(k, l)?.trace(x)
}

/// The exponent `e ∈ [0, q-2]` with `base^e = x`.
pub fn discrete_log(field: &Field, base: &FieldElem, x: &FieldElem) -> Result<u64> {
    if base.field() != field || x.field() != field {
        return Err(Error::FieldMismatch(format!("arguments must lie in {field}")));
    }
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let order = field.order() as u64 - 1;
    if base.is_zero() || field.multiplicative_order(base.index()) != Some(order) {
        return Err(Error::NotGenerator);
    }
    if order == 1 {
        return Ok(0);
    }
    let lb = field.log(base.index()).unwrap() as u64;
    let lx = field.log(x.index()).unwrap() as u64;
    let lb_inv = crate::util::inv_mod(lb, order).expect("generator logs are units");
    Ok(lx * lb_inv % order)
}
