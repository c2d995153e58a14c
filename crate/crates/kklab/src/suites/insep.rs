//! The purely inseparable norm from `F_q(u^{1/p})` to `F_q(u)`: decomposition along the
//! `p`-basis, explicit preimages, and the two-generator point check.

use kklab_core::imperfect::{
    bivariate_terms, insep_norm_preimage, p_basis_compose, p_basis_decompose, pair_residuals, PairSign,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::reciprocity::random_ratfunc;
use super::{core_err, instance_rng};
use crate::config::Params;
use crate::error::Result;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["fields", "p", "n", "samples", "max_degree", "pair_primes"];
pub(super) const ANCHORS: &[&str] = &[
    "every x in F_q(u) is sum of lambda_i^p u^i, and y = sum of lambda_i v^i satisfies y^p = x",
    "the explicit point over the two-step inseparable extension lies on both forms of the pair",
];

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let fields = match p.field_pn()? {
        Some(k) => vec![k],
        None => p.fields("fields", "3, 5")?,
    };
    let samples = p.u64_in("samples", 100, 1, 1_000_000)?;
    let seed = p.seed();
    let max_degree = p.u64_in("max_degree", 4, 0, 12)? as usize;
    let pair_primes = p.u64_list("pair_primes", "2, 3")?;
    let mut out = Vec::new();
    for (fi, k) in fields.iter().enumerate() {
        let pp = k.characteristic() as i64;
        let outcomes: Vec<Option<Value>> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(seed, fi as u64 * samples + i);
                let x = random_ratfunc(k, max_degree, &mut rng);
                let parts = p_basis_decompose(&x);
                let back = p_basis_compose(&parts).map_err(core_err("compose"))?;
                let y = insep_norm_preimage(&x).map_err(core_err("preimage"))?;
                let yp = y.pow(pp).map_err(core_err("power"))?;
                let ok = back == x && yp == x.inflate(pp as usize) && parts.len() == pp as usize;
                Ok((!ok).then(|| {
                    json!({
                        "x": x.to_string(),
                        "parts": parts.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                        "y": y.to_string(),
                    })
                }))
            })
            .collect::<Result<_>>()?;
        let (n, failure) = super::first_failure(outcomes);
        out.push(super::summarize(format!("p-basis round trip and y^p = x over F_{}", k.order()), n, failure));
    }
    for &prime in &pair_primes {
        let prime = u32::try_from(prime).map_err(|_| crate::error::KklabError::config("pair prime too large"))?;
        let cases: Vec<(PairSign, bool, &str)> = if prime == 2 {
            vec![(PairSign::Plus, false, "plus signs")]
        } else {
            vec![(PairSign::Minus, false, "minus signs"), (PairSign::Plus, true, "plus signs, negated point")]
        };
        for (sign, negate, label) in cases {
            let residuals = pair_residuals(prime, sign, negate).map_err(core_err("pair"))?;
            let witness = residuals
                .iter()
                .any(|f| !f.is_zero())
                .then(|| json!({ "residuals": residuals.iter().map(bivariate_terms).collect::<Vec<_>>() }));
            out.push(PropertyResult::check(
                format!("two-generator pair point lies on both forms (p={prime}, {label})"),
                witness,
            ));
        }
    }
    Ok(out)
}
