//! Lang's iterated composition of forms, its growth law, and normic forms for
//! extensions of finite fields.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Extension, Field};
use crate::poly::{homogenize, Form, Hypersurface, MultiPoly};
use crate::upoly::minimal_polynomial;

/// Largest variable count [`lang_compose`] will expand to.
pub const MAX_LANG_VARS: u64 = 256;

/// Shape of a Lang composition: `Φ` has degree `e` in `N + 1` variables, and there are
/// `r` forms `F_j` of degree `d` in `n + 1` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LangParams {
    pub n: u32,
    pub r: u32,
    pub e: u32,
    pub d: u32,
    pub big_n: u32,
}

impl LangParams {
    pub fn new(n: u32, r: u32, e: u32, d: u32, big_n: u32) -> Result<LangParams> {
        let p = LangParams { n, r, e, d, big_n };
        p.validate()?;
        Ok(p)
    }

    /// `r ≥ 1`, `e, d ≥ 1`, and `Φ` has at least one full block of `r` variables.
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.e == 0 || self.d == 0 {
            return Err(Error::InvalidParams("r, e and d must be positive".into()));
        }
        if self.big_n + 1 < self.r {
            return Err(Error::InvalidParams(format!(
                "N + 1 = {} variables cannot hold r = {} block values",
                self.big_n + 1,
                self.r
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthEntry {
    pub mu: u32,
    /// Number of variables of `Φ^(μ)`.
    pub vars: BigUint,
    /// Degree of `Φ^(μ)`.
    pub degree: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSequence {
    pub params: LangParams,
    pub entries: Vec<GrowthEntry>,
}

/// An exact positive rational `num/den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: BigUint,
    pub den: BigUint,
}

impl Ratio {
    fn new(num: BigUint, den: BigUint) -> Ratio {
        let g = num_integer::Integer::gcd(&num, &den);
        if g.is_zero() {
            return Ratio { num, den };
        }
        Ratio { num: num / &g, den: den / g }
    }

    pub fn gt(&self, other: &Ratio) -> bool {
        &self.num * &other.den > &other.num * &self.den
    }

    pub fn le(&self, other: &Ratio) -> bool {
        !self.gt(other)
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.num) / big_to_f64(&self.den)
    }
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_u64_digits().iter().rev().fold(0.0, |acc, &d| acc * 18446744073709551616.0 + d as f64)
}

/// Ratio analysis of `N_μ / D_μ^i` along a growth sequence.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub i: u32,
    pub ratios: Vec<Ratio>,
    /// Step factors `ratio_{μ+1} / ratio_μ`, indexed from `μ = 1`.
    pub factors: Vec<Ratio>,
    /// `(n+1) / (r d^i)`.
    pub limit: Ratio,
    /// Every factor lies within `limit · r / N_μ` of the limit.
    pub deviation_bounded: bool,
    /// Smallest `μ_0` such that the ratios strictly increase from `μ_0` up to the end.
    pub increasing_from: Option<u32>,
}

/// `N_μ` and `D_μ` for `μ = 1..=mu_max`.
pub fn growth_sequence(params: LangParams, mu_max: u32) -> Result<GrowthSequence> {
    params.validate()?;
    if mu_max == 0 {
        return Err(Error::InvalidParams("mu_max must be at least 1".into()));
    }
    let mut entries = Vec::with_capacity(mu_max as usize);
    let mut vars = BigUint::from(params.big_n + 1);
    let mut degree = BigUint::from(params.e);
    for mu in 1..=mu_max {
        if mu > 1 {
            vars = BigUint::from(params.n + 1) * (&vars / params.r);
            degree *= params.d;
        }
        entries.push(GrowthEntry { mu, vars: vars.clone(), degree: degree.clone() });
    }
    Ok(GrowthSequence { params, entries })
}

impl GrowthSequence {
    /// Recomputes every entry from the recurrences, and the degrees from the closed form.
    pub fn verify_recurrence(&self) -> bool {
        let p = &self.params;
        let mut prev: Option<&GrowthEntry> = None;
        for entry in &self.entries {
            let ok = match prev {
                None => entry.mu == 1 && entry.vars == BigUint::from(p.big_n + 1) && entry.degree == BigUint::from(p.e),
                Some(prev) => {
                    entry.mu == prev.mu + 1
                        && entry.vars == BigUint::from(p.n + 1) * (&prev.vars / p.r)
                        && entry.degree == &prev.degree * p.d
                        && entry.degree == BigUint::from(p.e) * BigUint::from(p.d).pow(entry.mu - 1)
                }
            };
            if !ok {
                return false;
            }
            prev = Some(entry);
        }
        true
    }

    pub fn ratio_report(&self, i: u32) -> RatioReport {
        let p = &self.params;
        let ratios: Vec<Ratio> = self.entries.iter().map(|e| Ratio::new(e.vars.clone(), e.degree.pow(i))).collect();
        let d_i = BigUint::from(p.d).pow(i);
        let limit = Ratio::new(BigUint::from(p.n + 1), BigUint::from(p.r) * &d_i);
        let mut factors = Vec::new();
        let mut deviation_bounded = true;
        for w in self.entries.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            if prev.vars.is_zero() {
                deviation_bounded = false;
                factors.push(Ratio { num: BigUint::zero(), den: BigUint::one() });
                continue;
            }
            let factor = Ratio::new(&next.vars * prev.degree.pow(i), &prev.vars * next.degree.pow(i));
            // |factor - limit| <= limit * r / N_μ, cross-multiplied.
            let a = &factor.num * &limit.den;
            let b = &limit.num * &factor.den;
            let diff = if a > b { a - b } else { b - a };
            deviation_bounded &= diff * &prev.vars <= &limit.num * BigUint::from(p.r) * &factor.den;
            factors.push(factor);
        }
        let mut start = ratios.len().saturating_sub(1);
        while start > 0 && ratios[start].gt(&ratios[start - 1]) {
            start -= 1;
        }
        let increasing_from = (start + 1 < ratios.len()).then_some(start as u32 + 1);
        RatioReport { i, ratios, factors, limit, deviation_bounded, increasing_from }
    }
}

fn check_form(f: &Form) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::InvalidParams("zero form".into()));
    }
    f.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

/// Parameters of the composition of `phi` with `fs`.
pub fn lang_params(phi: &Form, fs: &[Form]) -> Result<LangParams> {
    let e = check_form(phi)?;
    let first = fs.first().ok_or_else(|| Error::InvalidParams("need at least one form F".into()))?;
    let d = check_form(first)?;
    for f in fs {
        if f.field() != phi.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), phi.field())));
        }
        if f.nvars() != first.nvars() {
            return Err(Error::ArityMismatch { expected: first.nvars(), got: f.nvars() });
        }
        if check_form(f)? != d {
            return Err(Error::InvalidParams("the forms F must share one degree".into()));
        }
    }
    LangParams::new(first.nvars() as u32 - 1, fs.len() as u32, e, d, phi.nvars() as u32 - 1)
}

/// `Φ^(μ)`: `Φ^(1) = Φ`, and `Φ^(μ)` feeds consecutive blocks of `n + 1` fresh variables
/// through `(F_1, …, F_r)` into the variables of `Φ^(μ-1)`, setting leftover trailing
/// variables to zero.
pub fn lang_compose(phi: &Form, fs: &[Form], mu: u32) -> Result<Form> {
    let params = lang_params(phi, fs)?;
    if mu == 0 {
        return Err(Error::InvalidParams("mu must be at least 1".into()));
    }
    let growth = growth_sequence(params, mu)?;
    let last = &growth.entries[mu as usize - 1].vars;
    if *last > BigUint::from(MAX_LANG_VARS) {
        return Err(Error::SizeExceeded(format!("Φ^({mu}) would have {last} variables")));
    }
    let field = phi.field().clone();
    let r = params.r as usize;
    let width = params.n as usize + 1;
    let mut current = phi.clone();
    for _ in 1..mu {
        let blocks = current.nvars() / r;
        let new_vars = width * blocks;
        let replacements: Vec<Form> = (0..current.nvars())
            .map(|v| {
                if v < blocks * r {
                    fs[v % r].shift_vars((v / r) * width, new_vars)
                } else {
                    MultiPoly::zero(&field, new_vars)
                }
            })
            .collect();
        current = current.substitute(&replacements)?;
    }
    Ok(current)
}

/// Largest ambient dimension accepted by [`normic_form`].
pub const MAX_NORMIC_DIM: u32 = 63;

/// A hypersurface over `k` with points over exactly those extensions of `k` that contain
/// `l`, of ambient dimension at least `min_dim`.
///
/// The binary form is the homogenized minimal polynomial over `k` of the modulus root of
/// `l`; it is iterated with itself until there are enough variables.
pub fn normic_form(l: &Field, k: &Field, min_dim: u32) -> Result<Hypersurface> {
    let ext = Extension::canonical(k, l)?;
    if ext.degree() == 1 {
        return Err(Error::TrivialExtension);
    }
    if min_dim == 0 || min_dim > MAX_NORMIC_DIM {
        return Err(Error::SizeExceeded(format!("dimension {min_dim} outside 1..={MAX_NORMIC_DIM}")));
    }
    let f = homogenize(&minimal_polynomial(&ext, l.modulus_root()))?;
    let mut mu = 1;
    while (1u64 << mu) - 1 < min_dim as u64 {
        mu += 1;
    }
    Hypersurface::new(lang_compose(&f, core::slice::from_ref(&f), mu)?)
}

/// The norm form `N_{l/k}(X_0 + X_1 ω + … + X_{m-1} ω^{m-1})` with `ω` the modulus root
/// of `l`, expanded over `k`.
pub fn norm_form(l: &Field, k: &Field) -> Result<Hypersurface> {
    let ext = Extension::canonical(k, l)?;
    let m = ext.degree() as usize;
    if m == 1 {
        return Err(Error::TrivialExtension);
    }
    let omega = l.modulus_root();
    let mut product = Form::one(l, m);
    for j in 0..m as u32 {
        let conj = ext.conjugate_raw(omega, j);
        let mut linear = Form::zero(l, m);
        let mut pw = 1;
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 1;
            linear.add_term(crate::poly::Monomial::new(e), l.elem(pw));
            pw = l.mul(pw, conj);
        }
        product = product.mul(&linear);
    }
    let emb = ext.embedding();
    let mut out = Form::zero(k, m);
    for (mono, c) in product.terms() {
        let pre = emb.preimage_raw(c.index()).expect("norm form coefficients lie in the base field");
        out.add_term(mono.clone(), k.elem(pre));
    }
    Hypersurface::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::form;

    fn params(n: u32, r: u32, e: u32, d: u32, big_n: u32) -> LangParams {
        LangParams::new(n, r, e, d, big_n).unwrap()
    }

    #[test]
    fn growth_powers_of_two() {
        let g = growth_sequence(params(1, 1, 2, 2, 1), 10).unwrap();
        for e in &g.entries {
            assert_eq!(e.vars, BigUint::from(2u32).pow(e.mu));
            assert_eq!(e.degree, BigUint::from(2u32).pow(e.mu));
        }
        assert!(g.verify_recurrence());
    }

    #[test]
    fn growth_ratio_five_quarters() {
        let g = growth_sequence(params(4, 1, 2, 2, 4), 8).unwrap();
        let rep = g.ratio_report(2);
        let mut expected = Ratio::new(BigUint::from(5u32), BigUint::from(4u32));
        for r in &rep.ratios {
            assert_eq!(r, &expected);
            expected = Ratio::new(&expected.num * 5u32, &expected.den * 4u32);
        }
        assert!(rep.factors.iter().all(|f| *f == rep.limit));
        assert_eq!(rep.increasing_from, Some(1));
        assert!(rep.deviation_bounded);
    }

    #[test]
    fn growth_base_case_and_errors() {
        let g = growth_sequence(params(2, 2, 3, 2, 5), 1).unwrap();
        assert_eq!(g.entries[0].vars, BigUint::from(6u32));
        assert_eq!(g.entries[0].degree, BigUint::from(3u32));
        assert!(LangParams::new(1, 3, 2, 2, 1).is_err());
        assert!(growth_sequence(params(1, 1, 2, 2, 1), 0).is_err());
    }

    #[test]
    fn growth_with_floor_converges() {
        // N_μ mod r ≠ 0 along the way; factor tends to (n+1)/(r d^i) = 7/6.
        let g = growth_sequence(params(6, 3, 1, 2, 4), 50).unwrap();
        let rep = g.ratio_report(1);
        assert!(rep.deviation_bounded);
        let last = rep.factors.last().unwrap();
        assert!((last.to_f64() - 7.0 / 6.0).abs() < 1e-9);
        assert!(rep.increasing_from.is_some());
    }

    #[test]
    fn compose_examples() {
        let f3 = make_field(3, 1).unwrap();
        let phi = form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(lang_compose(&phi, core::slice::from_ref(&phi), 1).unwrap(), phi);
        let got = lang_compose(&phi, core::slice::from_ref(&phi), 2).unwrap();
        let a = form(&f3, 4, &[(1, &[2, 0, 0, 0]), (1, &[0, 2, 0, 0])]);
        let b = form(&f3, 4, &[(1, &[0, 0, 2, 0]), (1, &[0, 0, 0, 2])]);
        assert_eq!(got, a.pow(2).add(&b.pow(2)));

        let f2 = make_field(2, 1).unwrap();
        let phi = form(&f2, 2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]);
        let got = lang_compose(&phi, core::slice::from_ref(&phi), 2).unwrap();
        assert_eq!(got.nvars(), 4);
        assert_eq!(got.homogeneous_degree(), Some(4));
    }

    #[test]
    fn compose_pads_with_zero() {
        // N + 1 = 3 variables, r = 2: X2 receives the zero polynomial.
        let f2 = make_field(2, 1).unwrap();
        let phi = form(&f2, 3, &[(1, &[1, 0, 0]), (1, &[0, 0, 1])]);
        let fs = [form(&f2, 2, &[(1, &[1, 0])]), form(&f2, 2, &[(1, &[0, 1])])];
        let got = lang_compose(&phi, &fs, 2).unwrap();
        assert_eq!(got, form(&f2, 2, &[(1, &[1, 0])]));
    }

    #[test]
    fn normic_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let h = normic_form(&f9, &f3, 1).unwrap();
        assert_eq!(h.poly(), &form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]));
        let h = normic_form(&f9, &f3, 3).unwrap();
        assert_eq!(h.ambient_dim(), 3);
        assert_eq!(h.degree(), 4);
        assert_eq!(normic_form(&f3, &f3, 1), Err(Error::TrivialExtension));
    }

    #[test]
    fn norm_form_examples() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let h = norm_form(&f4, &f2).unwrap();
        assert_eq!(h.poly(), &form(&f2, 2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]));
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let h = norm_form(&f9, &f3).unwrap();
        assert_eq!(h.poly(), &form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]));
        assert_eq!(h.poly().evaluate(&[f3.one(), f3.zero()]).unwrap(), f3.one());
    }
}
