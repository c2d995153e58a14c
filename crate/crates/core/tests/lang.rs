mod common;

use common::rng;
use kklab_core::field::make_field;
use kklab_core::lang::{growth_sequence, lang_compose, normic_form, LangParams};
use kklab_core::points::{has_point_over, Variety};
use kklab_core::poly::{form_from_index, monomials, Form};
use kklab_core::{FieldElem, Hypersurface};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn growth_closed_form_for_single_forms(n in 0u32..5, e in 1u32..4, d in 1u32..4, big_n in 0u32..6, mu in 1u32..30) {
        let params = LangParams::new(n, 1, e, d, big_n).unwrap();
        let seq = growth_sequence(params, mu).unwrap();
        prop_assert!(seq.verify_recurrence());
        let last = seq.entries.last().unwrap();
        prop_assert_eq!(&last.vars, &(BigUint::from(big_n + 1) * BigUint::from(n + 1).pow(mu - 1)));
        prop_assert_eq!(&last.degree, &(BigUint::from(e) * BigUint::from(d).pow(mu - 1)));
    }

    #[test]
    fn growth_vars_never_increase_faster_than_bound(n in 0u32..5, r in 1u32..4, big_n in 3u32..9, mu in 2u32..20) {
        let params = LangParams::new(n, r, 1, 1, big_n).unwrap();
        let seq = growth_sequence(params, mu).unwrap();
        prop_assert!(seq.verify_recurrence());
        for w in seq.entries.windows(2) {
            prop_assert!(w[1].vars.clone() * BigUint::from(r) <= w[0].vars.clone() * BigUint::from(n + 1));
        }
    }

    #[test]
    fn composition_evaluates_blockwise(seed in any::<u64>()) {
        let f = make_field(3, 1).unwrap();
        let mut r = rng(seed);
        let r_count = r.gen_range(1..=2usize);
        let phi_monos = monomials(3, 2);
        let phi = loop {
            let g = form_from_index(&f, 3, &phi_monos, r.gen_range(0..3u64.pow(6)));
            if !g.is_zero() { break g; }
        };
        let f_monos = monomials(2, 2);
        let fs: Vec<Form> = (0..r_count)
            .map(|_| loop {
                let g = form_from_index(&f, 2, &f_monos, r.gen_range(0..27));
                if !g.is_zero() { break g; }
            })
            .collect();
        let composed = lang_compose(&phi, &fs, 2).unwrap();
        let blocks = 3 / r_count;
        prop_assert_eq!(composed.nvars(), 2 * blocks);
        let pt: Vec<FieldElem> = (0..composed.nvars()).map(|_| f.elem(r.gen_range(0..3))).collect();
        let inner: Vec<FieldElem> = (0..3)
            .map(|v| {
                if v < blocks * r_count {
                    let b = v / r_count;
                    fs[v % r_count].evaluate(&pt[2 * b..2 * b + 2]).unwrap()
                } else {
                    f.zero()
                }
            })
            .collect();
        prop_assert_eq!(composed.evaluate(&pt).unwrap(), phi.evaluate(&inner).unwrap());
    }
}

#[test]
fn normic_forms_detect_the_extension() {
    for (p, k_deg, l_deg) in [(2, 1, 2), (3, 1, 2), (2, 1, 3)] {
        let k = make_field(p, k_deg).unwrap();
        let l = make_field(p, l_deg).unwrap();
        for dim in [1, 3] {
            let h = normic_form(&l, &k, dim).unwrap();
            assert!(h.poly().nvars() as u32 > dim);
            let v = Variety::hypersurface(h);
            for j in 1..=4 {
                let expected = j % (l_deg / k_deg) == 0;
                if (p as u64).pow(j) > 81 && v.nvars() > 2 {
                    continue;
                }
                assert_eq!(has_point_over(&v, j).unwrap(), expected, "F_{p}^{l_deg}/F_{p}^{k_deg}, dim {dim}, j {j}");
            }
        }
    }
}

#[test]
fn composition_preserves_anisotropy() {
    // Φ anisotropic over F_3 and F = Φ: Φ^(μ) stays anisotropic.
    let f = make_field(3, 1).unwrap();
    let phi = kklab_core::poly::form(&f, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
    for mu in 1..=3 {
        let h = Hypersurface::new(lang_compose(&phi, std::slice::from_ref(&phi), mu).unwrap()).unwrap();
        assert!(!has_point_over(&Variety::hypersurface(h), 1).unwrap());
    }
}
