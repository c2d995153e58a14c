//! Rational functions in one variable over a finite field, and the places of the
//! projective line.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::UPoly;

/// A reduced fraction `num/den` with `den` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunc {
    num: UPoly,
    den: UPoly,
}

impl RationalFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<RationalFunc> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", num.field(), den.field())));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let field = num.field().clone();
            return Ok(RationalFunc { num, den: UPoly::one(&field) });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc_inv = den.field().inv(den.leading()).expect("nonzero");
        Ok(RationalFunc { num: num.scale(lc_inv), den: den.scale(lc_inv) })
    }

    pub fn from_poly(p: UPoly) -> RationalFunc {
        let field = p.field().clone();
        RationalFunc { num: p, den: UPoly::one(&field) }
    }

    pub fn zero(field: &Field) -> RationalFunc {
        Self::from_poly(UPoly::zero(field))
    }

    pub fn one(field: &Field) -> RationalFunc {
        Self::from_poly(UPoly::one(field))
    }

    pub fn constant(field: &Field, c: u32) -> RationalFunc {
        Self::from_poly(UPoly::constant(field, c))
    }

    /// The variable.
    pub fn x(field: &Field) -> RationalFunc {
        Self::from_poly(UPoly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RationalFunc) -> RationalFunc {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RationalFunc {
        RationalFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RationalFunc) -> RationalFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunc) -> RationalFunc {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<RationalFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunc) -> Result<RationalFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: u32) -> RationalFunc {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: i64) -> Result<RationalFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `f(x^k)`, i.e. the substitution `x = v^k`.
    pub fn inflate(&self, k: usize) -> RationalFunc {
        Self::new(self.num.inflate(k), self.den.inflate(k)).expect("nonzero denominator")
    }

    /// Order of vanishing at a place.
    pub fn valuation(&self, place: &Place) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(match place {
            Place::Infinity => self.den.deg() - self.num.deg(),
            Place::Finite(p) => multiplicity(&self.num, p) as i64 - multiplicity(&self.den, p) as i64,
        })
    }

    /// Places where the function has a zero or a pole, infinity last.
    pub fn support(&self) -> Result<Vec<Place>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut places: Vec<Place> = Vec::new();
        for part in [&self.num, &self.den] {
            for (f, _) in part.factor()? {
                places.push(Place::Finite(f));
            }
        }
        if self.num.deg() != self.den.deg() {
            places.push(Place::Infinity);
        }
        places.sort();
        places.dedup();
        Ok(places)
    }
}

fn multiplicity(f: &UPoly, p: &UPoly) -> u32 {
    let mut count = 0;
    let mut rest = f.clone();
    while let Some(q) = rest.exact_div(p) {
        rest = q;
        count += 1;
    }
    count
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num/den` with each polynomial in the `UPoly` text format, parenthesized.
impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

impl RationalFunc {
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayRat { func: self, var }
    }
}

struct DisplayRat<'a> {
    func: &'a RationalFunc,
    var: &'a str,
}

impl fmt::Display for DisplayRat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.func.num.display_with(self.var), self.func.den.display_with(self.var))
    }
}

/// A closed point of the projective line over the coefficient field: a monic
/// irreducible polynomial, or the point at infinity with uniformizer `1/x`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(UPoly),
    Infinity,
}

impl Place {
    /// Checks that `p` is monic irreducible.
    pub fn finite(p: UPoly) -> Result<Place> {
        if !p.is_monic() || !p.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(Place::Finite(p))
    }

    /// Degree of the residue field over the base.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Orders rational functions by numerator then denominator.
impl PartialOrd for RationalFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use alloc::vec;

    #[test]
    fn reduction_and_monic_denominator() {
        let f = make_field(3, 1).unwrap();
        let num = UPoly::from_coeffs(&f, vec![2, 2]); // 2x + 2
        let den = UPoly::from_coeffs(&f, vec![2, 0, 2]); // 2x^2 + 2
        let r = RationalFunc::new(num.mul(&UPoly::linear(&f, 1)), den.mul(&UPoly::linear(&f, 1))).unwrap();
        assert!(r.den().is_monic());
        assert_eq!(r.den().deg(), 2);
        assert_eq!(r.num(), &UPoly::from_coeffs(&f, vec![1, 1]));
    }

    #[test]
    fn valuations() {
        let f = make_field(3, 1).unwrap();
        let x = RationalFunc::x(&f);
        let xp1 = RationalFunc::from_poly(UPoly::from_coeffs(&f, vec![1, 1]));
        let r = x.mul(&x).div(&xp1).unwrap();
        assert_eq!(r.valuation(&Place::Finite(UPoly::x(&f))).unwrap(), 2);
        assert_eq!(r.valuation(&Place::Finite(xp1.num().clone())).unwrap(), -1);
        assert_eq!(r.valuation(&Place::Infinity).unwrap(), -1);
        assert_eq!(r.support().unwrap().len(), 3);
    }

    #[test]
    fn field_operations() {
        let f = make_field(5, 1).unwrap();
        let a = RationalFunc::new(UPoly::from_coeffs(&f, vec![1, 2]), UPoly::from_coeffs(&f, vec![3, 0, 1])).unwrap();
        let b = RationalFunc::new(UPoly::from_coeffs(&f, vec![4, 0, 1]), UPoly::from_coeffs(&f, vec![1, 1])).unwrap();
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()), RationalFunc::one(&f));
    }

    #[test]
    fn place_requires_irreducible() {
        let f = make_field(3, 1).unwrap();
        assert!(Place::finite(UPoly::from_coeffs(&f, vec![1, 0, 1])).is_ok());
        assert_eq!(Place::finite(UPoly::from_coeffs(&f, vec![2, 0, 1])), Err(Error::NotIrreducible));
    }
}
