//! Dense univariate polynomials over a finite field.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Extension, Field, FieldElem};

/// Largest number of candidate divisors [`UPoly::factor`] is willing to try per degree.
const FACTOR_SCAN_CAP: u64 = 2_000_000;

/// A polynomial `Σ c_i x^i` with coefficients stored low to high and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl UPoly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<u32>) -> UPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.order()));
        UPoly { field: field.clone(), coeffs }
    }

    pub fn from_elems(field: &Field, coeffs: &[FieldElem]) -> Result<UPoly> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("{c} is not in {field}")));
            }
            raw.push(c.index());
        }
        Ok(Self::from_coeffs(field, raw))
    }

    pub fn zero(field: &Field) -> UPoly {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Field) -> UPoly {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u32) -> UPoly {
        Self::from_coeffs(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> UPoly {
        Self::monomial(field, 1, 1)
    }

    pub fn monomial(field: &Field, c: u32, k: usize) -> UPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// `x - c`.
    pub fn linear(field: &Field, c: u32) -> UPoly {
        Self::from_coeffs(field, vec![field.neg(c), 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &UPoly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> UPoly {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut result = Self::one(&self.field);
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

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> UPoly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_elem(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch(format!("{x} is not in {}", self.field)));
        }
        Ok(self.field.elem(self.eval(x.index())))
    }

    /// Evaluates at a point of a larger field, pushing coefficients through `e`.
    pub fn eval_embedded(&self, e: &Embedding, x: u32) -> u32 {
        let big = e.sup();
        self.coeffs.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), e.apply_raw(c)))
    }

    /// Applies an embedding to each coefficient.
    pub fn map_coeffs(&self, e: &Embedding) -> UPoly {
        assert!(e.sub() == &self.field, "embedding source is not the coefficient field");
        Self::from_coeffs(e.sup(), self.coeffs.iter().map(|&c| e.apply_raw(c)).collect())
    }

    /// Applies an arbitrary map to each coefficient, landing in `target`.
    pub fn map_raw(&self, target: &Field, f: impl Fn(u32) -> u32) -> UPoly {
        Self::from_coeffs(target, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> UPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self::from_coeffs(&self.field, coeffs)
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.field), |acc, &c| acc.mul(g).add(&Self::constant(&self.field, c)))
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.from_int(i as i64).index())).collect();
        Self::from_coeffs(f, coeffs)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &UPoly) -> Result<UPoly> {
        let mut result = Self::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(result)
    }

    /// Rabin's irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.order() as u64;
        let x = Self::x(&self.field);
        let mut powers = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        powers.push(h.clone());
        for _ in 0..n {
            h = h.powmod(q, &f).expect("nonzero modulus");
            powers.push(h.clone());
        }
        if powers[n] != x.rem(&f).expect("nonzero modulus") {
            return false;
        }
        crate::field::prime_factors(n as u64).into_iter().all(|r| f.gcd(&powers[n / r as usize].sub(&x)).is_one())
    }

    /// Monic irreducible factors with multiplicities, by trial division in increasing
    /// degree. Factors are sorted.
    pub fn factor(&self) -> Result<Vec<(UPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = &self.field;
        let q = field.order() as u64;
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1usize;
        while rest.deg() >= 2 * d as i64 {
            let count = q.checked_pow(d as u32).filter(|&c| c <= FACTOR_SCAN_CAP).ok_or_else(|| {
                Error::SizeExceeded(format!("factoring a degree {} polynomial over {field}", rest.deg()))
            })?;
            for t in 0..count {
                if rest.deg() < 2 * d as i64 {
                    break;
                }
                let cand = monic_from_index(field, d, t);
                let mut mult = 0;
                while let Some(quot) = rest.exact_div(&cand) {
                    rest = quot;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((cand, mult));
                }
            }
            d += 1;
        }
        if rest.deg() >= 1 {
            match out.iter_mut().find(|(f, _)| *f == rest) {
                Some(entry) => entry.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        Ok(out)
    }

    /// Roots in the coefficient field, in index order.
    pub fn roots(&self) -> Vec<u32> {
        (0..self.field.order()).filter(|&x| self.eval(x) == 0).collect()
    }
}

/// Minimal polynomial over the base of `ext` of an element `theta` of the top field,
/// as the product over its Frobenius orbit.
pub fn minimal_polynomial(ext: &Extension, theta: u32) -> UPoly {
    let top = ext.top();
    let mut orbit = Vec::new();
    let mut cur = theta;
    loop {
        orbit.push(cur);
        cur = ext.conjugate_raw(cur, 1);
        if cur == theta {
            break;
        }
    }
    let product = orbit.iter().fold(UPoly::one(top), |acc, &root| acc.mul(&UPoly::linear(top, root)));
    let emb = ext.embedding();
    product.map_raw(ext.base(), |c| emb.preimage_raw(c).expect("minimal polynomial is defined over the base"))
}

/// The monic polynomial of degree `d` whose lower coefficients are the base-`q` digits of
/// `t`.
pub fn monic_from_index(field: &Field, d: usize, mut t: u64) -> UPoly {
    let q = field.order() as u64;
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push((t % q) as u32);
        t /= q;
    }
    coeffs.push(1);
    UPoly::from_coeffs(field, coeffs)
}

/// Monic irreducible polynomials of degree `d` over `field`, in index order.
pub fn irreducibles(field: &Field, d: usize) -> Vec<UPoly> {
    let q = field.order() as u64;
    (0..q.pow(d as u32)).map(|t| monic_from_index(field, d, t)).filter(UPoly::is_irreducible).collect()
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for UPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Terms from the top degree down with coefficients in the field element format, e.g.
/// `3^1:[1]*x^2 + 3^1:[2]`.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

impl UPoly {
    /// Displays with a chosen variable name.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayUPoly { poly: self, var }
    }
}

struct DisplayUPoly<'a> {
    poly: &'a UPoly,
    var: &'a str,
}

impl fmt::Display for DisplayUPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", self.poly.field.elem(c))?;
            if i > 0 {
                write!(f, "*{}^{}", self.var, i)?;
            }
        }
        Ok(())
    }
}
