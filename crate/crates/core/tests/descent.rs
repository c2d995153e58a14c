mod common;

use common::{random_poly, rng};
use kklab_core::descent::{stability_s_bound, t_degree, t_expand, weil_restrict};
use kklab_core::field::{make_field, Embedding};
use kklab_core::points::{has_point_in, Variety};
use kklab_core::poly::{form_from_index, monomials, TPoly};
use kklab_core::{Field, FieldElem, Hypersurface, Monomial, UPoly};
use proptest::prelude::*;
use rand::Rng;

fn random_tpoly(k: &Field, nvars: usize, d: u32, max_t: usize, r: &mut impl Rng) -> TPoly {
    loop {
        let mut f = TPoly::zero(k, nvars);
        for m in monomials(nvars, d) {
            if r.gen_bool(0.6) {
                f.add_term(m, random_poly(k, max_t, r));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn t_expansion_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = make_field(if r.gen_bool(0.5) { 2 } else { 3 }, 1).unwrap();
        let nvars = r.gen_range(1..=3);
        let d = r.gen_range(1..=3);
        let s = r.gen_range(0..=3);
        let f = random_tpoly(&k, nvars, d, 3, &mut r);
        let forms = t_expand(&f, s).unwrap();
        prop_assert_eq!(forms.len(), d as usize * s + t_degree(&f) + 1);
        for g in &forms {
            prop_assert_eq!(g.nvars(), nvars * (s + 1));
            prop_assert!(g.is_zero() || g.homogeneous_degree() == Some(d));
        }
        // Exact: Σ F_m t^m reassembled over k[t] equals F(Σ_r T_{i,r} t^r).
        let total = nvars * (s + 1);
        let mut reassembled = TPoly::zero(&k, total);
        for (m, g) in forms.iter().enumerate() {
            for (mono, c) in g.terms() {
                reassembled.add_term(mono.clone(), UPoly::monomial(&k, c.index(), m));
            }
        }
        let lifts: Vec<TPoly> = (0..nvars)
            .map(|i| {
                let mut lin = TPoly::zero(&k, total);
                for rr in 0..=s {
                    lin.add_term(Monomial::var(total, i * (s + 1) + rr), UPoly::monomial(&k, 1, rr));
                }
                lin
            })
            .collect();
        prop_assert_eq!(&reassembled, &f.compose(&lifts).unwrap());
        // Pointwise: evaluating at T values in k agrees with evaluating F at the t-polynomials.
        let vals: Vec<u32> = (0..total).map(|_| r.gen_range(0..k.order())).collect();
        let xs: Vec<UPoly> = (0..nvars)
            .map(|i| UPoly::from_coeffs(&k, vals[i * (s + 1)..(i + 1) * (s + 1)].to_vec()))
            .collect();
        let lhs = f.evaluate(&xs).unwrap();
        let pt: Vec<FieldElem> = vals.iter().map(|&v| k.elem(v)).collect();
        let rhs = UPoly::from_coeffs(&k, forms.iter().map(|g| g.evaluate(&pt).unwrap().index()).collect());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_bound_certificate(big_m in 0u64..20, d in 1u64..4, i in 0u32..3, extra in 0u64..10) {
        let n = d.pow(i + 1) + extra;
        let s = stability_s_bound(big_m, d, i, n).unwrap();
        prop_assert_eq!(s, (big_m + 1) * d.pow(i) + n + 2);
        prop_assert!((s * d + big_m + 1) * d.pow(i) < (s + 1) * (n + 1));
    }

    #[test]
    fn restriction_point_equivalence_sampled(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, k) = if r.gen_bool(0.5) { (2, make_field(2, 1).unwrap()) } else { (3, make_field(3, 1).unwrap()) };
        let l = make_field(p, 2).unwrap();
        let nvars = r.gen_range(2..=3);
        let d = r.gen_range(1..=2);
        let monos = monomials(nvars, d);
        let total = (l.order() as u64).pow(monos.len() as u32);
        let h = loop {
            let g = form_from_index(&l, nvars, &monos, r.gen_range(1..total));
            if !g.is_zero() { break g; }
        };
        let h = Hypersurface::new(h).unwrap();
        let sys = weil_restrict(&h, &k).unwrap();
        let z = sys.variety().unwrap();
        let hv = Variety::hypersurface(h.clone());
        // k' = k: lk' = l; k' = l (degree 2): lk' = l
        prop_assert_eq!(has_point_in(&z, &k).unwrap(), has_point_in(&hv, &l).unwrap());
        prop_assert_eq!(has_point_in(&z, &l).unwrap(), has_point_in(&hv, &l).unwrap());
        // Restricting a form defined over k: basis-aligned points survive.
        let _ = Embedding::canonical(&k, &l).unwrap();
    }
}

#[test]
fn restriction_of_anisotropic_binary_forms() {
    // X0² + ωX1²-type forms with no points over l restrict to systems with no points over k.
    let k = make_field(3, 1).unwrap();
    let l = make_field(3, 2).unwrap();
    let monos = monomials(2, 2);
    let mut anisotropic = 0;
    for idx in 1..(9u64.pow(3)) {
        let h = Hypersurface::new(form_from_index(&l, 2, &monos, idx)).unwrap();
        let hv = Variety::hypersurface(h.clone());
        let z = weil_restrict(&h, &k).unwrap().variety().unwrap();
        let has = has_point_in(&hv, &l).unwrap();
        assert_eq!(has_point_in(&z, &k).unwrap(), has);
        anisotropic += usize::from(!has);
    }
    assert!(anisotropic > 0);
}
