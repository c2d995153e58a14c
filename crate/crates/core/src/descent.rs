//! Weil restriction of hypersurfaces along finite field extensions, expansion of forms
//! over `k[t]` in powers of `t`, and truncation of series coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Extension, Field};
use crate::laurent::TruncatedSeries;
use crate::linalg::RelativeBasis;
use crate::points::Variety;
use crate::poly::{monomials, Form, Hypersurface, Monomial, MultiPoly, TPoly};
use crate::upoly::UPoly;

/// The forms `F_0, …, F_{m-1}` over `k` with `H(Σ_j T_{i,j} ω^j) = Σ_j F_j ω^j`, where
/// `ω` is the modulus root of `l` and `T_{i,j}` is variable `i·m + j`.
#[derive(Clone, Debug)]
pub struct RestrictionSystem {
    base: Field,
    ext: Field,
    m: usize,
    forms: Vec<Form>,
}

impl RestrictionSystem {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// All `m` components, including any that vanish identically.
    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// Common zero locus of the nonzero components.
    pub fn variety(&self) -> Result<Variety> {
        Variety::from_forms(self.forms.iter().filter(|f| !f.is_zero()).cloned().collect())
    }
}

pub fn weil_restrict(h: &Hypersurface, k: &Field) -> Result<RestrictionSystem> {
    let l = h.field();
    let ext = Extension::canonical(k, l).map_err(|_| Error::NotSubfield(format!("{k} is not a subfield of {l}")))?;
    let m = ext.degree() as usize;
    let omega = l.modulus_root();
    let nvars = h.poly().nvars();
    let total = nvars * m;
    let replacements: Vec<Form> = (0..nvars)
        .map(|i| {
            let mut lin = Form::zero(l, total);
            let mut pw = 1u32;
            for j in 0..m {
                lin.add_term(Monomial::var(total, i * m + j), l.elem(pw));
                pw = l.mul(pw, omega);
            }
            lin
        })
        .collect();
    let expanded = h.poly().substitute(&replacements)?;
    let basis = RelativeBasis::power_basis(ext.embedding().clone(), omega)?;
    let mut forms = vec![Form::zero(k, total); m];
    for (mono, c) in expanded.terms() {
        for (j, a) in basis.decompose(c.index()).into_iter().enumerate() {
            forms[j].add_term(mono.clone(), k.elem(a));
        }
    }
    Ok(RestrictionSystem { base: k.clone(), ext: l.clone(), m, forms })
}

/// Weil restriction of every form of one degree and arity along a fixed `l/k`. The
/// restriction is `k`-linear in the coefficients, so the images of `ω^b X^μ` are computed
/// once and combined.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    base: Field,
    m: usize,
    nvars: usize,
    basis: RelativeBasis,
    out_monos: Vec<Monomial>,
    /// `images[(μ, b)][j]`: dense coefficients of `F_j` for the input `ω^b X^μ`.
    images: BTreeMap<(Monomial, usize), Vec<Vec<u32>>>,
}

impl RestrictionMap {
    pub fn new(l: &Field, k: &Field, nvars: usize, degree: u32) -> Result<RestrictionMap> {
        let ext =
            Extension::canonical(k, l).map_err(|_| Error::NotSubfield(format!("{k} is not a subfield of {l}")))?;
        let m = ext.degree() as usize;
        let omega = l.modulus_root();
        let basis = RelativeBasis::power_basis(ext.embedding().clone(), omega)?;
        let out_monos = monomials(nvars * m, degree);
        let position: BTreeMap<&Monomial, usize> = out_monos.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
        let mut images = BTreeMap::new();
        let mut pw = 1u32;
        for b in 0..m {
            for mono in monomials(nvars, degree) {
                let h = Hypersurface::new(Form::monomial(l, nvars, mono.clone(), l.elem(pw)))?;
                let sys = weil_restrict(&h, k)?;
                let dense = sys
                    .forms
                    .iter()
                    .map(|f| {
                        let mut v = vec![0u32; out_monos.len()];
                        for (mo, c) in f.terms() {
                            v[position[mo]] = c.index();
                        }
                        v
                    })
                    .collect();
                images.insert((mono, b), dense);
            }
            pw = l.mul(pw, omega);
        }
        Ok(RestrictionMap { base: k.clone(), m, nvars, basis, out_monos, images })
    }

    /// The restriction of `h`, which must have the arity and degree the map was built for.
    pub fn apply(&self, h: &Form) -> Result<Vec<Form>> {
        if h.nvars() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: h.nvars() });
        }
        let k = &self.base;
        let mut dense = vec![vec![0u32; self.out_monos.len()]; self.m];
        for (mono, c) in h.terms() {
            for (b, a) in self.basis.decompose(c.index()).into_iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let image = self.images.get(&(mono.clone(), b)).ok_or(Error::NotHomogeneous)?;
                for (acc, img) in dense.iter_mut().zip(image) {
                    for (x, &y) in acc.iter_mut().zip(img) {
                        if y != 0 {
                            *x = k.add(*x, k.mul(a, y));
                        }
                    }
                }
            }
        }
        Ok(dense
            .into_iter()
            .map(|v| {
                let mut f = Form::zero(k, self.nvars * self.m);
                for (mo, c) in self.out_monos.iter().zip(v) {
                    f.add_term(mo.clone(), k.elem(c));
                }
                f
            })
            .collect())
    }
}

/// Largest `t`-degree among the coefficients.
pub fn t_degree(f: &TPoly) -> usize {
    f.terms().filter_map(|(_, c)| c.degree()).max().unwrap_or(0)
}

/// The forms `F_0, …, F_{ds+M}` with `F(Σ_r T_{0,r} t^r, …) = Σ_m F_m t^m`, where `d` is
/// the degree of `F`, `M` its `t`-degree, and `T_{i,r}` is variable `i·(s+1) + r`.
pub fn t_expand(f: &TPoly, s: usize) -> Result<Vec<Form>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)? as usize;
    let k = f.ctx().clone();
    let nvars = f.nvars();
    let total = nvars * (s + 1);
    let replacements: Vec<TPoly> = (0..nvars)
        .map(|i| {
            let mut lin = TPoly::zero(&k, total);
            for r in 0..=s {
                lin.add_term(Monomial::var(total, i * (s + 1) + r), UPoly::monomial(&k, 1, r));
            }
            lin
        })
        .collect();
    let expanded = f.substitute(&replacements)?;
    let count = d * s + t_degree(f) + 1;
    let mut forms = vec![Form::zero(&k, total); count];
    for (mono, c) in expanded.terms() {
        for (e, &a) in c.coeffs().iter().enumerate() {
            forms[e].add_term(mono.clone(), k.elem(a));
        }
    }
    Ok(forms)
}

/// The smallest `s` exceeding `(M+1)d^i + n + 1`. Requires `d^{i+1} ≤ n`; the returned
/// value satisfies `(sd + M + 1)d^i ≤ (s+1)(n+1) - 1`.
pub fn stability_s_bound(big_m: u64, d: u64, i: u32, n: u64) -> Result<u64> {
    let overflow = || Error::SizeExceeded(format!("bound for M={big_m}, d={d}, i={i}, n={n}"));
    let di = d.checked_pow(i).ok_or_else(overflow)?;
    let di1 = di.checked_mul(d).ok_or_else(overflow)?;
    if di1 > n {
        return Err(Error::HypothesisViolated(format!("d^(i+1) = {di1} > n = {n}")));
    }
    let s = (big_m as u128 + 1) * di as u128 + n as u128 + 2;
    let lhs = (s * d as u128 + big_m as u128 + 1) * di as u128;
    let rhs = (s + 1) * (n as u128 + 1) - 1;
    if lhs > rhs {
        return Err(Error::HypothesisViolated(format!("certificate failed: {lhs} > {rhs}")));
    }
    u64::try_from(s).map_err(|_| overflow())
}

/// Truncates every coefficient below `t^nu`. Coefficients must be integral and known to
/// precision at least `nu`.
pub fn truncate_series_coeffs(f: &MultiPoly<TruncatedSeries>, nu: i64) -> Result<TPoly> {
    let k = f.ctx().clone();
    let mut out = TPoly::zero(&k, f.nvars());
    for (mono, c) in f.terms() {
        out.add_term(mono.clone(), c.to_poly(nu)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::form;

    #[test]
    fn restriction_example() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let w = f4.modulus_root();
        let h = Hypersurface::new(form(&f4, 2, &[(1, &[2, 0]), (w, &[0, 2])])).unwrap();
        let sys = weil_restrict(&h, &f2).unwrap();
        // variables T00, T01, T10, T11
        assert_eq!(sys.forms()[0], form(&f2, 4, &[(1, &[2, 0, 0, 0]), (1, &[0, 2, 0, 0]), (1, &[0, 0, 0, 2])]));
        assert_eq!(sys.forms()[1], form(&f2, 4, &[(1, &[0, 2, 0, 0]), (1, &[0, 0, 2, 0])]));
    }

    #[test]
    fn restriction_along_trivial_extension() {
        let f3 = make_field(3, 1).unwrap();
        let h = Hypersurface::new(form(&f3, 3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1]), (2, &[0, 0, 2])])).unwrap();
        let sys = weil_restrict(&h, &f3).unwrap();
        assert_eq!(sys.forms(), &[h.poly().clone()]);
        let f9 = make_field(3, 2).unwrap();
        let f27 = make_field(3, 3).unwrap();
        let h9 = Hypersurface::new(form(&f9, 2, &[(1, &[1, 0])])).unwrap();
        assert!(matches!(weil_restrict(&h9, &f27), Err(Error::NotSubfield(_))));
    }

    #[test]
    fn basis_aligned_points_stay_points() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let e = crate::field::Embedding::canonical(&f3, &f9).unwrap();
        let h3 = form(&f3, 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]);
        let h = Hypersurface::new(h3.base_change(&e).unwrap()).unwrap();
        let sys = weil_restrict(&h, &f3).unwrap();
        for x in crate::points::enumerate_points(&crate::points::Variety::from_forms(vec![h3]).unwrap(), &f3).unwrap() {
            let mut pt = vec![f3.zero(); 6];
            for (i, c) in x.coords().iter().enumerate() {
                pt[2 * i] = c.clone();
            }
            for fj in sys.forms() {
                assert!(fj.evaluate(&pt).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn linear_restriction_matches_direct() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let map = RestrictionMap::new(&f9, &f3, 3, 2).unwrap();
        let monos = monomials(3, 2);
        for idx in [1u64, 77, 5000, 123456, 531440] {
            let h = crate::poly::form_from_index(&f9, 3, &monos, idx);
            let direct = weil_restrict(&Hypersurface::new(h.clone()).unwrap(), &f3).unwrap();
            assert_eq!(map.apply(&h).unwrap(), direct.forms());
        }
    }

    fn tpoly(k: &Field, nvars: usize, terms: &[(&[u32], &[u32])]) -> TPoly {
        TPoly::from_terms(k, nvars, terms.iter().map(|(e, c)| (e.to_vec(), UPoly::from_coeffs(k, c.to_vec())))).unwrap()
    }

    #[test]
    fn t_expansion_example() {
        let f3 = make_field(3, 1).unwrap();
        let f = tpoly(&f3, 2, &[(&[2, 0], &[1]), (&[0, 2], &[0, 1])]);
        let forms = t_expand(&f, 1).unwrap();
        let expected = [
            form(&f3, 4, &[(1, &[2, 0, 0, 0])]),
            form(&f3, 4, &[(2, &[1, 1, 0, 0]), (1, &[0, 0, 2, 0])]),
            form(&f3, 4, &[(1, &[0, 2, 0, 0]), (2, &[0, 0, 1, 1])]),
            form(&f3, 4, &[(1, &[0, 0, 0, 2])]),
        ];
        assert_eq!(forms, expected);
        let forms = t_expand(&f, 0).unwrap();
        assert_eq!(forms, [form(&f3, 2, &[(1, &[2, 0])]), form(&f3, 2, &[(1, &[0, 2])])]);
        let g = tpoly(&f3, 2, &[(&[1, 1], &[2])]);
        let forms = t_expand(&g, 1).unwrap();
        assert_eq!(forms.len(), 3);
        assert!(!forms[2].is_zero());
    }

    #[test]
    fn s_bound_examples() {
        assert_eq!(stability_s_bound(1, 2, 1, 4).unwrap(), 10);
        assert_eq!(stability_s_bound(0, 1, 0, 1).unwrap(), 4);
        assert!(matches!(stability_s_bound(0, 2, 1, 3), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn truncation_examples() {
        let f2 = make_field(2, 1).unwrap();
        let series = |c: &[u32], prec| TruncatedSeries::new(&f2, 0, c.to_vec(), prec).unwrap();
        let f = MultiPoly::<TruncatedSeries>::from_terms(
            &f2,
            2,
            [(vec![2, 0], series(&[1], 10)), (vec![0, 2], series(&[1, 1, 0, 1], 10))],
        )
        .unwrap();
        let expected = tpoly(&f2, 2, &[(&[2, 0], &[1]), (&[0, 2], &[1, 1])]);
        assert_eq!(truncate_series_coeffs(&f, 2).unwrap(), expected);
        assert_eq!(t_degree(&truncate_series_coeffs(&f, 1).unwrap()), 0);
        assert_eq!(truncate_series_coeffs(&f, 4).unwrap().coeff(&Monomial::new(vec![0, 2])).coeffs(), &[1, 1, 0, 1]);
        assert!(matches!(truncate_series_coeffs(&f, 11), Err(Error::InsufficientPrecision { .. })));
    }
}
