//! Truncated Laurent series over finite fields, norms from unramified extensions and
//! their Hensel lifting, and the residue and specialization maps on `F_q((t))`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Extension, Field, FieldElem};
use crate::milnor::K1Class;
use crate::poly::Ring;
use crate::upoly::UPoly;

/// Precision of series that are exact (finitely many terms, nothing truncated).
pub const EXACT: i64 = i64::MAX / 4;

/// `Σ_{e ≥ val} c_e t^e + O(t^prec)`.
///
/// Coefficients are raw field indices starting at `val`, without trailing zeros; missing
/// entries below `prec` are zero. A series with no nonzero known coefficient has `val == prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    val: i64,
    coeffs: Vec<u32>,
    prec: i64,
}

impl TruncatedSeries {
    /// The series `Σ coeffs[i] t^(start + i) + O(t^prec)`.
    pub fn new(field: &Field, start: i64, coeffs: Vec<u32>, prec: i64) -> Result<TruncatedSeries> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InvalidParams(format!("{c} is not an element of {field}")));
        }
        let prec = prec.min(EXACT);
        if start + coeffs.len() as i64 > prec && coeffs[(prec - start).max(0) as usize..].iter().any(|&c| c != 0) {
            return Err(Error::InsufficientPrecision { needed: start + coeffs.len() as i64, available: prec });
        }
        Ok(Self::normalized(field, start, coeffs, prec))
    }

    fn normalized(field: &Field, start: i64, mut coeffs: Vec<u32>, prec: i64) -> TruncatedSeries {
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        match coeffs.iter().position(|&c| c != 0) {
            Some(lead) => {
                coeffs.drain(..lead);
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                TruncatedSeries { field: field.clone(), val: start + lead as i64, coeffs, prec }
            }
            None => TruncatedSeries { field: field.clone(), val: prec, coeffs: Vec::new(), prec },
        }
    }

    /// A polynomial in `t`, known to precision `prec` (or exactly, with [`EXACT`]).
    pub fn from_poly(p: &UPoly, prec: i64) -> TruncatedSeries {
        Self::normalized(p.field(), 0, p.coeffs().to_vec(), prec.min(EXACT))
    }

    pub fn constant(field: &Field, c: u32, prec: i64) -> TruncatedSeries {
        Self::normalized(field, 0, vec![c], prec.min(EXACT))
    }

    pub fn one(field: &Field, prec: i64) -> TruncatedSeries {
        Self::constant(field, 1, prec)
    }

    /// `O(t^prec)`.
    pub fn zero(field: &Field, prec: i64) -> TruncatedSeries {
        Self::normalized(field, prec.min(EXACT), Vec::new(), prec.min(EXACT))
    }

    /// `c t^e`, exactly.
    pub fn monomial(field: &Field, c: u32, e: i64) -> TruncatedSeries {
        Self::normalized(field, e, vec![c], EXACT)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// No nonzero coefficient is known.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, if some coefficient below the precision is nonzero.
    pub fn valuation(&self) -> Result<i64> {
        if self.is_known_zero() {
            if self.is_exact() {
                return Err(Error::ZeroEntry);
            }
            return Err(Error::UnknownValuation);
        }
        Ok(self.val)
    }

    /// Leading coefficient as a raw index.
    pub fn leading(&self) -> Result<u32> {
        self.valuation()?;
        Ok(self.coeffs[0])
    }

    pub fn coeff(&self, e: i64) -> Result<u32> {
        if e >= self.prec {
            return Err(Error::InsufficientPrecision { needed: e + 1, available: self.prec });
        }
        if e < self.val {
            return Ok(0);
        }
        Ok(self.coeffs.get((e - self.val) as usize).copied().unwrap_or(0))
    }

    /// Coefficients from the valuation on, without trailing zeros.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Forgets everything from `t^prec` on.
    pub fn truncate(&self, prec: i64) -> TruncatedSeries {
        let prec = prec.min(self.prec);
        Self::normalized(&self.field, self.val, self.coeffs.clone(), prec)
    }

    /// The known part below `prec` as a polynomial in `t`; needs valuation ≥ 0.
    pub fn to_poly(&self, prec: i64) -> Result<UPoly> {
        if prec > self.prec {
            return Err(Error::InsufficientPrecision { needed: prec, available: self.prec });
        }
        if !self.is_known_zero() && self.val < 0 {
            return Err(Error::InvalidParams("series has a pole".into()));
        }
        let coeffs = (0..prec.max(0)).map(|e| self.coeff(e)).collect::<Result<Vec<_>>>()?;
        Ok(UPoly::from_coeffs(&self.field, coeffs))
    }

    fn check(&self, other: &TruncatedSeries) {
        assert!(self.field == other.field, "series over different fields");
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check(other);
        let prec = self.prec.min(other.prec);
        let start = self.val.min(other.val);
        let end = prec.min(self.end().max(other.end()));
        let coeffs = (start..end.max(start))
            .map(|e| self.field.add(self.coeff(e).unwrap_or(0), other.coeff(e).unwrap_or(0)))
            .collect();
        Self::normalized(&self.field, start, coeffs, prec)
    }

    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn neg(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        TruncatedSeries { field: self.field.clone(), val: self.val, coeffs, prec: self.prec }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::normalized(&self.field, self.val, coeffs, self.prec)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check(other);
        let from_self = if self.is_exact() { EXACT } else { sat_add(other.val, self.prec) };
        let from_other = if other.is_exact() { EXACT } else { sat_add(self.val, other.prec) };
        let prec = from_self.min(from_other);
        let val = self.val + other.val;
        if self.is_known_zero() || other.is_known_zero() {
            return Self::zero(&self.field, prec);
        }
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(prec - val).max(0) as usize;
        let mut out = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = self.field.add(out[i + j], self.field.mul(a, b));
            }
        }
        Self::normalized(&self.field, val, out, prec)
    }

    /// Multiplicative inverse. Exact series must be monomials; truncate others first.
    pub fn inv(&self) -> Result<TruncatedSeries> {
        let v = self.valuation()?;
        let u0 = self.coeffs[0];
        let u0_inv = self.field.inv(u0).expect("leading coefficient is nonzero");
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(&self.field, u0_inv, -v));
            }
            return Err(Error::InsufficientPrecision { needed: EXACT, available: self.end() });
        }
        let rel = (self.prec - v) as usize;
        let mut b = vec![0u32; rel];
        b[0] = u0_inv;
        for k in 1..rel {
            let mut acc = 0;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = self.field.add(acc, self.field.mul(self.coeffs[i], b[k - i]));
            }
            b[k] = self.field.neg(self.field.mul(acc, u0_inv));
        }
        Ok(Self::normalized(&self.field, -v, b, -v + rel as i64))
    }

    pub fn div(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<TruncatedSeries> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(&self.field, EXACT);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Applies a raw coefficient map into `target` (an embedding or a Frobenius power).
    pub fn map_raw(&self, target: &Field, f: impl Fn(u32) -> u32) -> TruncatedSeries {
        Self::normalized(target, self.val, self.coeffs.iter().map(|&c| f(c)).collect(), self.prec)
    }

    /// Whether the series lies in `1 + t·F[[t]]`.
    pub fn is_principal_unit(&self) -> bool {
        !self.is_known_zero() && self.val == 0 && self.coeffs[0] == 1
    }
}

pub(crate) fn pow_signed(field: &Field, a: u32, e: i64) -> u32 {
    let x = field.pow(a, e.unsigned_abs());
    if e < 0 {
        field.inv(x).expect("nonzero base")
    } else {
        x
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(EXACT)
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `val:v prec:N [c_v,…,c_{N-1}]` with coefficients as raw indices; exact series print
/// `prec:inf`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "val:{} prec:inf [", self.val)?;
        } else {
            write!(f, "val:{} prec:{} [", self.val, self.prec)?;
        }
        let len = if self.is_exact() { self.coeffs.len() as i64 } else { self.prec - self.val };
        for i in 0..len {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.coeffs.get(i as usize).copied().unwrap_or(0))?;
        }
        f.write_str("]")
    }
}

impl Ring for TruncatedSeries {
    type Ctx = Field;

    fn zero_in(ctx: &Field) -> Self {
        Self::zero(ctx, EXACT)
    }

    fn one_in(ctx: &Field) -> Self {
        Self::one(ctx, EXACT)
    }

    /// Only the exact zero counts, so terms known to be `O(t^N)` keep their precision.
    fn is_zero(&self) -> bool {
        self.is_known_zero() && self.is_exact()
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

/// `N_{L0((t))/K0((t))}(β)`: the product of the coefficientwise Frobenius conjugates.
pub fn unramified_norm(l0: &Field, k0: &Field, beta: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ext = Extension::canonical(k0, l0)?;
    if beta.field() != l0 {
        return Err(Error::FieldMismatch(format!("series over {}, expected {l0}", beta.field())));
    }
    let mut prod = TruncatedSeries::one(l0, EXACT);
    for j in 0..ext.degree() {
        prod = prod.mul(&beta.map_raw(l0, |c| ext.conjugate_raw(c, j)));
    }
    let emb = ext.embedding();
    Ok(prod.map_raw(k0, |c| emb.preimage_raw(c).expect("norm coefficients lie in the base field")))
}

/// The smallest-index `c ∈ L0` with `Tr_{L0/K0}(c) = b`.
pub fn trace_solve(l0: &Field, k0: &Field, b: &FieldElem) -> Result<FieldElem> {
    let ext = Extension::canonical(k0, l0)?;
    if b.field() != k0 {
        return Err(Error::FieldMismatch(format!("{b} is not in {k0}")));
    }
    let target = ext.embedding().apply_raw(b.index());
    let c =
        (0..l0.order()).find(|&c| ext.trace_raw(c) == target).expect("trace of a finite field extension is surjective");
    Ok(l0.elem(c))
}

/// A series `β` over `L0` with `N(β) ≡ α mod t^prec`, built one coefficient at a time:
/// at step `N` the ratio `α / N(β)` is `1 + b_N t^N + …` and `β` is multiplied by
/// `1 + c_N t^N` with `Tr(c_N) = b_N`.
pub fn hensel_norm_lift(l0: &Field, k0: &Field, alpha: &TruncatedSeries, prec: i64) -> Result<TruncatedSeries> {
    let ext = Extension::canonical(k0, l0)?;
    if alpha.field() != k0 {
        return Err(Error::FieldMismatch(format!("series over {}, expected {k0}", alpha.field())));
    }
    if prec < 1 {
        return Err(Error::InvalidParams(format!("precision {prec} must be positive")));
    }
    if alpha.precision() < prec {
        return Err(Error::InsufficientPrecision { needed: prec, available: alpha.precision() });
    }
    if !alpha.is_principal_unit() {
        return Err(Error::NotPrincipalUnit);
    }
    let alpha = alpha.truncate(prec);
    let mut beta = TruncatedSeries::one(l0, prec);
    for step in 1..prec {
        let norm = unramified_norm(l0, k0, &beta)?;
        let ratio = alpha.mul(&norm.truncate(step + 1).inv()?);
        let b = ratio.coeff(step)?;
        if b == 0 {
            continue;
        }
        let c = trace_solve(l0, k0, &k0.elem(b))?;
        let factor = TruncatedSeries::new(l0, 0, unit_step(step, c.index()), prec)?;
        beta = beta.mul(&factor);
    }
    debug_assert_eq!(unramified_norm(l0, k0, &beta)?, alpha, "norm lift at {}", ext.degree());
    Ok(beta)
}

fn unit_step(step: i64, c: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; step as usize + 1];
    coeffs[0] = 1;
    coeffs[step as usize] = c;
    coeffs
}

/// The `ℓ`-th root of a principal unit congruent to 1, for `ℓ` prime to the
/// characteristic.
pub fn principal_unit_root(u: &TruncatedSeries, ell: u64) -> Result<TruncatedSeries> {
    let field = u.field().clone();
    let p = field.characteristic() as u64;
    if ell == 0 || ell.is_multiple_of(p) {
        return Err(Error::InvalidParams(format!("root order {ell} must be prime to {p}")));
    }
    if !u.is_principal_unit() {
        return Err(Error::NotPrincipalUnit);
    }
    if u.is_exact() {
        return Err(Error::InsufficientPrecision { needed: EXACT, available: u.end() });
    }
    let prec = u.precision();
    let ell_inv = field.inv(field.from_int((ell % p) as i64).index()).expect("ℓ is prime to p");
    let mut w = TruncatedSeries::one(&field, prec);
    for step in 1..prec {
        let delta = u.sub(&w.pow(ell as i64)?).coeff(step)?;
        if delta != 0 {
            let c = field.mul(delta, ell_inv);
            let mut coeffs = vec![0u32; step as usize + 1];
            coeffs[step as usize] = c;
            w = w.add(&TruncatedSeries::new(&field, 0, coeffs, prec)?);
        }
    }
    Ok(w)
}

/// Level of a symbol in the filtration `U_q^1 ⊆ U_q ⊆ K_q` of `F((t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UnitFiltrationTag {
    /// Nontrivial residue.
    Kq,
    /// Trivial residue, nontrivial specialization.
    Uq,
    /// Trivial residue and specialization, with a presentation by symbols carrying a
    /// principal-unit entry.
    Uq1,
}

impl fmt::Display for UnitFiltrationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitFiltrationTag::Kq => "K_q",
            UnitFiltrationTag::Uq => "U_q",
            UnitFiltrationTag::Uq1 => "U_q^1",
        })
    }
}

/// A Milnor K-class of the residue field, in degree 0, 1 or 2. Degree 2 is always
/// trivial over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueClass {
    K0(i64),
    K1(K1Class),
    K2Trivial,
}

impl ResidueClass {
    pub fn is_trivial(&self) -> bool {
        match self {
            ResidueClass::K0(v) => *v == 0,
            ResidueClass::K1(c) => c.is_trivial(),
            ResidueClass::K2Trivial => true,
        }
    }
}

/// Result of [`residue_and_specialize`].
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSpec {
    pub residue: ResidueClass,
    /// Present exactly when the residue is trivial.
    pub specialization: Option<ResidueClass>,
    pub tag: UnitFiltrationTag,
    /// For `U_q^1`: symbols, each with an entry in `1 + tF[[t]]`, whose sum is the input.
    /// In degree 2 the leading-coefficient symbol is left out; it vanishes in `K_2` of
    /// the residue field.
    pub presentation: Vec<Vec<TruncatedSeries>>,
}

/// Splits `a = c t^v u` with `u` a principal unit; returns `(v, c, u)`.
pub fn unit_decomposition(a: &TruncatedSeries) -> Result<(i64, u32, TruncatedSeries)> {
    let v = a.valuation()?;
    let c = a.leading()?;
    let field = a.field();
    let c_inv = field.inv(c).expect("nonzero");
    let u = TruncatedSeries::normalized(field, 0, a.coeffs.clone(), a.prec - v).scale(c_inv);
    Ok((v, c, u))
}

/// Residue and specialization of a symbol of length 1 or 2 over `F((t))`, normalized so
/// that `∂{t, u} = ū`.
pub fn residue_and_specialize(entries: &[TruncatedSeries]) -> Result<ResidueSpec> {
    let first = entries.first().ok_or_else(|| Error::InvalidParams("empty symbol".into()))?;
    let field = first.field().clone();
    if entries.iter().any(|e| e.field() != &field) {
        return Err(Error::FieldMismatch("symbol entries over different fields".into()));
    }
    for e in entries {
        if e.is_known_zero() {
            return Err(if e.is_exact() { Error::ZeroEntry } else { Error::UnknownValuation });
        }
    }
    match entries.len() {
        1 => {
            let (v, c, u) = unit_decomposition(first)?;
            if v != 0 {
                return Ok(ResidueSpec {
                    residue: ResidueClass::K0(v),
                    specialization: None,
                    tag: UnitFiltrationTag::Kq,
                    presentation: Vec::new(),
                });
            }
            let spec = K1Class::from_raw(&field, c)?;
            let tag = if spec.is_trivial() { UnitFiltrationTag::Uq1 } else { UnitFiltrationTag::Uq };
            let presentation = if spec.is_trivial() { vec![vec![u]] } else { Vec::new() };
            Ok(ResidueSpec {
                residue: ResidueClass::K0(0),
                specialization: Some(ResidueClass::K1(spec)),
                tag,
                presentation,
            })
        }
        2 => {
            let (v, a0, u1) = unit_decomposition(&entries[0])?;
            let (w, b0, u2) = unit_decomposition(&entries[1])?;
            // (-1)^{vw} b0^v / a0^w
            let mut value = field.div(pow_signed(&field, b0, v), pow_signed(&field, a0, w)).expect("nonzero");
            if (v * w) % 2 != 0 {
                value = field.neg(value);
            }
            let residue = K1Class::from_raw(&field, value)?;
            if !residue.is_trivial() {
                return Ok(ResidueSpec {
                    residue: ResidueClass::K1(residue),
                    specialization: None,
                    tag: UnitFiltrationTag::Kq,
                    presentation: Vec::new(),
                });
            }
            let lead_a = TruncatedSeries::monomial(&field, a0, v);
            let lead_b = TruncatedSeries::monomial(&field, b0, w);
            let presentation = vec![vec![lead_a, u2.clone()], vec![u1.clone(), lead_b], vec![u1, u2]];
            Ok(ResidueSpec {
                residue: ResidueClass::K1(residue),
                specialization: Some(ResidueClass::K2Trivial),
                tag: UnitFiltrationTag::Uq1,
                presentation,
            })
        }
        q => Err(Error::InvalidParams(format!("symbols of length {q} are not supported"))),
    }
}
