mod common;

use common::{random_nonzero_poly, random_nonzero_ratfunc, rng};
use kklab_core::field::{make_field, Embedding};
use kklab_core::laurent::{residue_and_specialize, ResidueClass, TruncatedSeries};
use kklab_core::milnor::{
    norm_pushforward, residue_vector, restrict_function, symbol_reduce, tame_symbol, weil_reciprocity_check,
    SymbolReduction,
};
use kklab_core::{Field, Place, RationalFunc, UPoly};
use proptest::prelude::*;
use rand::Rng;

fn small_field(r: &mut impl Rng) -> Field {
    let p = [2, 3, 5][r.gen_range(0..3)];
    make_field(p, 1).unwrap()
}

fn non_constant(field: &Field, r: &mut impl Rng) -> RationalFunc {
    loop {
        let f = random_nonzero_ratfunc(field, 3, r);
        if !f.is_constant() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residue_vector_is_bilinear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small_field(&mut r);
        let f1 = random_nonzero_ratfunc(&k, 3, &mut r);
        let f2 = random_nonzero_ratfunc(&k, 3, &mut r);
        let g = random_nonzero_ratfunc(&k, 3, &mut r);
        let left = residue_vector(&f1.mul(&f2), &g).unwrap();
        let right = residue_vector(&f1, &g).unwrap().mul(&residue_vector(&f2, &g).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let swapped = residue_vector(&g, &f1.mul(&f2)).unwrap();
        prop_assert!(swapped.mul(&left).unwrap().is_trivial());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn steinberg_relation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small_field(&mut r);
        let f = non_constant(&k, &mut r);
        let g = RationalFunc::one(&k).sub(&f);
        prop_assert!(residue_vector(&f, &g).unwrap().is_trivial());
    }

    #[test]
    fn weil_reciprocity(seed in any::<u64>()) {
        let mut r = rng(seed);
        for p in [2, 3, 5] {
            let k = make_field(p, 1).unwrap();
            let f = random_nonzero_ratfunc(&k, 4, &mut r);
            let g = random_nonzero_ratfunc(&k, 4, &mut r);
            let report = weil_reciprocity_check(&f, &g).unwrap();
            prop_assert!(report.holds);
            let product = report.factors.iter().fold(1, |acc, (_, v)| k.mul(acc, v.index()));
            prop_assert_eq!(product, 1);
        }
    }

    #[test]
    fn constant_symbols_are_trivial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, n) = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)][r.gen_range(0..5)];
        let k = make_field(p, n).unwrap();
        let a = RationalFunc::constant(&k, r.gen_range(1..k.order()));
        let b = RationalFunc::constant(&k, r.gen_range(1..k.order()));
        prop_assert!(residue_vector(&a, &b).unwrap().is_trivial());
        let ea = k.elem(a.num().coeff(0));
        let eb = k.elem(b.num().coeff(0));
        let red = symbol_reduce(&[ea, eb]).unwrap();
        prop_assert!(matches!(red, SymbolReduction::Trivial(_)));
    }

    #[test]
    fn tame_symbol_matches_laurent_expansion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small_field(&mut r);
        let a = r.gen_range(0..k.order());
        // Force a zero or pole at x = a some of the time.
        let mut f = random_nonzero_ratfunc(&k, 3, &mut r);
        let mut g = random_nonzero_ratfunc(&k, 3, &mut r);
        let line = RationalFunc::from_poly(UPoly::linear(&k, a));
        f = f.mul(&line.pow(r.gen_range(-2..=2)).unwrap());
        g = g.mul(&line.pow(r.gen_range(-2..=2)).unwrap());
        let place = Place::finite(UPoly::linear(&k, a)).unwrap();
        let expected = tame_symbol(&f, &g, &place).unwrap();
        // x = a + t
        let shift = UPoly::linear(&k, k.neg(a));
        let expand = |h: &RationalFunc| -> TruncatedSeries {
            let num = TruncatedSeries::from_poly(&h.num().compose(&shift), 30);
            let den = TruncatedSeries::from_poly(&h.den().compose(&shift), 30);
            num.div(&den).unwrap()
        };
        let spec = residue_and_specialize(&[expand(&f), expand(&g)]).unwrap();
        match spec.residue {
            ResidueClass::K1(c) => prop_assert_eq!(c.to_raw(), expected.to_raw()),
            other => prop_assert!(false, "unexpected residue {:?}", other),
        }
    }

    #[test]
    fn pushforward_of_restriction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l) = match r.gen_range(0..3) {
            0 => (make_field(2, 1).unwrap(), make_field(2, 2).unwrap()),
            1 => (make_field(3, 1).unwrap(), make_field(3, 2).unwrap()),
            _ => (make_field(2, 1).unwrap(), make_field(2, 3).unwrap()),
        };
        let e = Embedding::canonical(&k, &l).unwrap();
        let f = random_nonzero_ratfunc(&k, 3, &mut r);
        let g = random_nonzero_ratfunc(&k, 3, &mut r);
        let below = residue_vector(&f, &g).unwrap();
        let above = residue_vector(&restrict_function(&f, &e).unwrap(), &restrict_function(&g, &e).unwrap()).unwrap();
        let degree = (l.degree() / k.degree()) as i64;
        prop_assert_eq!(norm_pushforward(&above, &k).unwrap(), below.pow(degree));
    }
}

#[test]
fn residue_at_each_place_of_a_uniformizer_pair() {
    // {P, u} at P is the reduction of u, for every monic irreducible P of degree ≤ 2.
    let k = make_field(3, 1).unwrap();
    let mut r = rng(7);
    for d in 1..=2 {
        for p in kklab_core::upoly::irreducibles(&k, d) {
            let place = Place::finite(p.clone()).unwrap();
            let u = loop {
                let u = random_nonzero_poly(&k, 3, &mut r);
                if u.rem(&p).unwrap().is_zero() {
                    continue;
                }
                break u;
            };
            let value =
                tame_symbol(&RationalFunc::from_poly(p.clone()), &RationalFunc::from_poly(u.clone()), &place).unwrap();
            let inverse = tame_symbol(&RationalFunc::from_poly(u), &RationalFunc::from_poly(p), &place).unwrap();
            assert!(value.mul(&inverse).unwrap().is_trivial());
        }
    }
}
