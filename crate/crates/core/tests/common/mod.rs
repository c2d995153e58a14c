#![allow(dead_code)]

use kklab_core::{Field, RationalFunc, UPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial of degree at most `max_deg`, possibly zero.
pub fn random_poly(field: &Field, max_deg: usize, rng: &mut impl Rng) -> UPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| rng.gen_range(0..field.order())).collect();
    UPoly::from_coeffs(field, coeffs)
}

pub fn random_nonzero_poly(field: &Field, max_deg: usize, rng: &mut impl Rng) -> UPoly {
    loop {
        let p = random_poly(field, max_deg, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_nonzero_ratfunc(field: &Field, max_deg: usize, rng: &mut impl Rng) -> RationalFunc {
    let num = random_nonzero_poly(field, max_deg, rng);
    let den = random_nonzero_poly(field, max_deg, rng);
    RationalFunc::new(num, den).unwrap()
}
