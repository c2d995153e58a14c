//! Weil reciprocity on `P^1`: the normed tame symbols of `{f, g}` multiply to 1.

use kklab_core::milnor::weil_reciprocity_check;
use kklab_core::{Field, RationalFunc, UPoly};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core_err, instance_rng};
use crate::config::Params;
use crate::error::Result;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["fields", "p", "n", "samples", "max_degree"];
pub(super) const ANCHORS: &[&str] =
    &["the product over all places, infinity included, of the norms of the tame symbols of {f, g} is 1"];

pub(super) fn random_poly(k: &Field, max_degree: usize, rng: &mut impl Rng) -> UPoly {
    loop {
        let deg = rng.gen_range(0..=max_degree);
        let f = UPoly::from_coeffs(k, (0..=deg).map(|_| rng.gen_range(0..k.order())).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

pub(super) fn random_ratfunc(k: &Field, max_degree: usize, rng: &mut impl Rng) -> RationalFunc {
    let num = random_poly(k, max_degree, rng);
    let den = random_poly(k, max_degree, rng);
    RationalFunc::new(num, den).expect("nonzero denominator")
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let fields = match p.field_pn()? {
        Some(k) => vec![k],
        None => p.fields("fields", "2, 3, 5")?,
    };
    let samples = p.u64_in("samples", 100, 1, 1_000_000)?;
    let seed = p.seed();
    let max_degree = p.u64_in("max_degree", 4, 0, 12)? as usize;
    let mut out = Vec::new();
    for (fi, k) in fields.iter().enumerate() {
        let outcomes: Vec<Option<Value>> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(seed, fi as u64 * samples + i);
                let f = random_ratfunc(k, max_degree, &mut rng);
                let g = random_ratfunc(k, max_degree, &mut rng);
                let report = weil_reciprocity_check(&f, &g).map_err(core_err("reciprocity"))?;
                let product = report.factors.iter().fold(1, |acc, (_, v)| k.mul(acc, v.index()));
                Ok((!report.holds || product != 1).then(|| {
                    json!({
                        "f": f.to_string(),
                        "g": g.to_string(),
                        "product": product,
                        "factors": report.factors.iter().map(|(pl, v)| json!([pl.to_string(), v.index()])).collect::<Vec<_>>(),
                    })
                }))
            })
            .collect::<Result<_>>()?;
        let (n, failure) = super::first_failure(outcomes);
        out.push(super::summarize(format!("Weil reciprocity over F_{}", k.order()), n, failure));
    }
    Ok(out)
}
