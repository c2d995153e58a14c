use kklab_core::field::{make_field, Embedding, Extension};
use kklab_core::Field;
use proptest::prelude::*;

const SHAPES: &[(u32, u32)] = &[(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 1), (13, 2), (17, 1)];

/// Schoolbook multiplication of coordinate vectors modulo the modulus.
fn oracle_mul(f: &Field, a: u32, b: u32) -> u32 {
    let p = f.characteristic() as u64;
    let n = f.degree() as usize;
    let (ca, cb) = (f.coords_of(a), f.coords_of(b));
    let mut prod = vec![0u64; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
        }
    }
    let m = f.modulus();
    for top in (n..2 * n).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for i in 0..n {
            prod[top - n + i] = (prod[top - n + i] + (p - c) * m[i] as u64) % p;
        }
    }
    let coords: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
    f.index_of_coords(&coords)
}

fn shape() -> impl Strategy<Value = (u32, u32)> {
    proptest::sample::select(SHAPES)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_matches_schoolbook((p, n) in shape(), a in any::<u32>(), b in any::<u32>()) {
        let f = make_field(p, n).unwrap();
        let (a, b) = (a % f.order(), b % f.order());
        prop_assert_eq!(f.mul(a, b), oracle_mul(&f, a, b));
    }

    #[test]
    fn field_axioms((p, n) in shape(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(p, n).unwrap();
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius_inverse(f.frobenius(a, 1)), a);
    }

    #[test]
    fn embeddings_are_homomorphisms(a in 0u32..16, b in 0u32..16) {
        let f16 = make_field(2, 4).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let e = Embedding::canonical(&f4, &f16).unwrap();
        let (a, b) = (a % 4, b % 4);
        prop_assert_eq!(e.apply_raw(f4.mul(a, b)), f16.mul(e.apply_raw(a), e.apply_raw(b)));
        prop_assert_eq!(e.apply_raw(f4.add(a, b)), f16.add(e.apply_raw(a), e.apply_raw(b)));
        prop_assert_eq!(e.preimage_raw(e.apply_raw(a)), Some(a));
    }

    #[test]
    fn norm_and_trace_laws(a0 in any::<u32>(), b0 in any::<u32>()) {
        for (k, l) in [((3, 1), (3, 2)), ((2, 1), (2, 3)), ((2, 2), (2, 4)), ((3, 1), (3, 3))] {
            let k = make_field(k.0, k.1).unwrap();
            let l = make_field(l.0, l.1).unwrap();
            let ext = Extension::canonical(&k, &l).unwrap();
            let (a, b) = (a0 % l.order(), b0 % l.order());
            prop_assert_eq!(ext.norm_raw(l.mul(a, b)), l.mul(ext.norm_raw(a), ext.norm_raw(b)));
            prop_assert_eq!(ext.trace_raw(l.add(a, b)), l.add(ext.trace_raw(a), ext.trace_raw(b)));
            // product and sum of the conjugates
            let q = k.order() as u64;
            let mut prod = 1;
            let mut sum = 0;
            let mut conj = a;
            for _ in 0..ext.degree() {
                prod = l.mul(prod, conj);
                sum = l.add(sum, conj);
                conj = l.pow(conj, q);
            }
            prop_assert_eq!(ext.norm_raw(a), prod);
            prop_assert_eq!(ext.trace_raw(a), sum);
            prop_assert!(ext.embedding().preimage_raw(prod).is_some());
            prop_assert!(ext.embedding().preimage_raw(sum).is_some());
        }
    }
}

#[test]
fn norm_and_trace_are_onto() {
    let k = make_field(3, 1).unwrap();
    let l = make_field(3, 4).unwrap();
    let ext = Extension::canonical(&k, &l).unwrap();
    let base = |v: u32| ext.embedding().preimage_raw(v).unwrap();
    let mut norms: Vec<u32> = (1..l.order()).map(|x| base(ext.norm_raw(x))).collect();
    norms.sort();
    norms.dedup();
    assert_eq!(norms, vec![1, 2]);
    let mut traces: Vec<u32> = (0..l.order()).map(|x| base(ext.trace_raw(x))).collect();
    traces.sort();
    traces.dedup();
    assert_eq!(traces, vec![0, 1, 2]);
}

#[test]
fn generator_is_smallest_primitive() {
    for &(p, n) in SHAPES {
        let f = make_field(p, n).unwrap();
        let full = f.order() as u64 - 1;
        let g = f.generator();
        assert_eq!(f.multiplicative_order(g), Some(full));
        assert!((1..g).all(|x| f.multiplicative_order(x) != Some(full)));
    }
}
