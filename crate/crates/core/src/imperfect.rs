//! The imperfect field `F_q(u)` of characteristic `p`: decomposition along the
//! `p`-basis `1, u, …, u^{p-1}`, preimages under the purely inseparable norm from
//! `F_q(u^{1/p})`, and the associated normic binary form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::make_field;
use crate::poly::{Form, MultiPoly};
use crate::ratfunc::RationalFunc;
use crate::upoly::UPoly;

/// `λ_0, …, λ_{p-1}` with `x = Σ λ_i^p u^i`.
pub fn p_basis_decompose(x: &RationalFunc) -> Vec<RationalFunc> {
    let field = x.field().clone();
    let p = field.characteristic() as usize;
    if x.is_zero() {
        return vec![RationalFunc::zero(&field); p];
    }
    let den = x.den();
    // x = num·den^{p-1} / den^p
    let m = x.num().mul(&den.pow(p as u64 - 1));
    let mut parts = vec![Vec::new(); p];
    for (e, &c) in m.coeffs().iter().enumerate() {
        let part = &mut parts[e % p];
        let k = e / p;
        if part.len() <= k {
            part.resize(k + 1, 0);
        }
        part[k] = field.frobenius_inverse(c);
    }
    parts
        .into_iter()
        .map(|coeffs| RationalFunc::new(UPoly::from_coeffs(&field, coeffs), den.clone()).expect("nonzero denominator"))
        .collect()
}

/// `Σ λ_i^p u^i`.
pub fn p_basis_compose(lambdas: &[RationalFunc]) -> Result<RationalFunc> {
    let first = lambdas.first().ok_or_else(|| Error::InvalidParams("empty decomposition".into()))?;
    let field = first.field();
    let p = field.characteristic() as i64;
    let u = RationalFunc::x(field);
    let mut acc = RationalFunc::zero(field);
    for (i, l) in lambdas.iter().enumerate() {
        acc = acc.add(&l.pow(p)?.mul(&u.pow(i as i64)?));
    }
    Ok(acc)
}

/// Whether `a` is a `p`-th power in `F_q(u)`.
pub fn is_pth_power(a: &RationalFunc) -> bool {
    p_basis_decompose(a).iter().skip(1).all(RationalFunc::is_zero)
}

/// `y = Σ λ_i v^i` in `F_q(v)`, `v^p = u`, so that `y^p = x(v^p)`.
pub fn insep_norm_preimage(x: &RationalFunc) -> Result<RationalFunc> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let field = x.field();
    let p = field.characteristic() as usize;
    let v = RationalFunc::x(field);
    let mut y = RationalFunc::zero(field);
    for (i, l) in p_basis_decompose(x).iter().enumerate() {
        y = y.add(&l.inflate(p).mul(&v.pow(i as i64)?));
    }
    Ok(y)
}

/// `X_0^p + a X_1^p` over `F_q(u)`, for `a` not a `p`-th power.
pub fn insep_normic_hypersurface(a: &RationalFunc) -> Result<MultiPoly<RationalFunc>> {
    if is_pth_power(a) {
        return Err(Error::IsPthPower);
    }
    let field = a.field();
    let p = field.characteristic();
    MultiPoly::from_terms(field, 2, [(vec![p, 0], RationalFunc::one(field)), (vec![0, p], a.clone())])
}

/// Sign inside the pair of forms `(X_0^p ± cX_1^p)^p - c(X_2^p ± cX_3^p)^p`, `c ∈ {a, b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSign {
    Plus,
    Minus,
}

/// Evaluates both forms of the two-generator pair at
/// `[±a^{1/p} : 1 : ±a^{1/p}/b^{1/p²} : 1/b^{1/p²}]` over `F_p(s, w)` with `a = s^{p²}`,
/// `b = w^{p²}`. The point is scaled by `w` to clear denominators, and `negate_point`
/// selects the minus signs. Both residuals vanish exactly when the point lies on both
/// forms.
pub fn pair_residuals(p: u32, sign: PairSign, negate_point: bool) -> Result<[Form; 2]> {
    let field = make_field(p, 1)?;
    let s = Form::var(&field, 2, 0);
    let w = Form::var(&field, 2, 1);
    let one = Form::one(&field, 2);
    let a = s.pow(p * p);
    let b = w.pow(p * p);
    let a_root = s.pow(p);
    let lead = if negate_point { a_root.neg() } else { a_root };
    let point = [lead.mul(&w), w.clone(), lead, one];
    let residual = |c: &Form| -> Form {
        let inner = |x: &Form, y: &Form| -> Form {
            let cy = c.mul(&y.pow(p));
            match sign {
                PairSign::Plus => x.pow(p).add(&cy),
                PairSign::Minus => x.pow(p).sub(&cy),
            }
        };
        inner(&point[0], &point[1]).pow(p).sub(&c.mul(&inner(&point[2], &point[3]).pow(p)))
    };
    Ok([residual(&a), residual(&b)])
}

/// Exponent-wise description of a bivariate polynomial, for reports.
pub fn bivariate_terms(f: &Form) -> Vec<(u32, u32, u32)> {
    f.terms().map(|(m, c)| (m.exps()[0], m.exps()[1], c.index())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Monomial;

    fn poly(f: &Field, c: &[u32]) -> RationalFunc {
        RationalFunc::from_poly(UPoly::from_coeffs(f, c.to_vec()))
    }

    #[test]
    fn decomposition_examples() {
        let f3 = make_field(3, 1).unwrap();
        let d = p_basis_decompose(&poly(&f3, &[0, 1, 1]));
        assert_eq!(d, vec![RationalFunc::zero(&f3), RationalFunc::one(&f3), RationalFunc::one(&f3)]);
        let x = RationalFunc::new(UPoly::one(&f3), UPoly::from_coeffs(&f3, vec![1, 1])).unwrap();
        let d = p_basis_decompose(&x);
        let inv = x.clone();
        assert_eq!(d, vec![inv.clone(), inv.scale(2), inv]);
        assert_eq!(p_basis_compose(&d).unwrap(), x);
        let f9 = make_field(3, 2).unwrap();
        let c = f9.modulus_root();
        let d = p_basis_decompose(&RationalFunc::constant(&f9, c));
        assert_eq!(d[0], RationalFunc::constant(&f9, f9.frobenius_inverse(c)));
        assert!(d[1].is_zero() && d[2].is_zero());
    }

    #[test]
    fn preimage_examples() {
        let f3 = make_field(3, 1).unwrap();
        let u = RationalFunc::x(&f3);
        assert_eq!(insep_norm_preimage(&u).unwrap(), u);
        assert_eq!(insep_norm_preimage(&poly(&f3, &[0, 1, 1])).unwrap(), poly(&f3, &[0, 1, 1]));
        let x = RationalFunc::new(UPoly::one(&f3), UPoly::from_coeffs(&f3, vec![1, 1])).unwrap();
        let y = insep_norm_preimage(&x).unwrap();
        let expected =
            RationalFunc::new(UPoly::from_coeffs(&f3, vec![1, 2, 1]), UPoly::from_coeffs(&f3, vec![1, 0, 0, 1]))
                .unwrap();
        assert_eq!(y, expected);
        assert_eq!(y.pow(3).unwrap(), x.inflate(3));
        assert_eq!(insep_norm_preimage(&RationalFunc::zero(&f3)), Err(Error::ZeroArgument));
    }

    #[test]
    fn normic_form_examples() {
        let f3 = make_field(3, 1).unwrap();
        let u = RationalFunc::x(&f3);
        let h = insep_normic_hypersurface(&u).unwrap();
        assert_eq!(h.coeff(&Monomial::new(vec![0, 3])), u);
        assert_eq!(insep_normic_hypersurface(&u.pow(3).unwrap()), Err(Error::IsPthPower));
        assert!(insep_normic_hypersurface(&poly(&f3, &[1, 1])).is_ok());
    }

    #[test]
    fn two_generator_pair() {
        assert!(pair_residuals(3, PairSign::Minus, false).unwrap().iter().all(Form::is_zero));
        assert!(pair_residuals(3, PairSign::Plus, true).unwrap().iter().all(Form::is_zero));
        assert!(pair_residuals(2, PairSign::Plus, false).unwrap().iter().all(Form::is_zero));
        assert!(!pair_residuals(3, PairSign::Plus, false).unwrap().iter().all(Form::is_zero));
    }
}
