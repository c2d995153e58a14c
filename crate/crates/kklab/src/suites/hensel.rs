//! Hensel lifting of norms in `K0((t))`: every principal unit is a norm from the
//! unramified extension `L0((t))`, one coefficient at a time.

use kklab_core::laurent::{hensel_norm_lift, TruncatedSeries};
use kklab_core::{Embedding, Field};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core_err, instance_rng};
use crate::config::Params;
use crate::error::{KklabError, Result};
use crate::format::parse_field;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["base", "extensions", "samples", "precision", "truncations"];
pub(super) const ANCHORS: &[&str] = &[
    "a principal unit of K0[[t]] is the norm of a series over the unramified extension, to any precision",
    "lifts at lower precision are truncations of lifts at higher precision",
];

/// Coefficients `0..n` of the product of the `[l0:k0]` coefficientwise Frobenius
/// conjugates of `beta`, computed by schoolbook multiplication.
fn norm_oracle(l0: &Field, k0: &Field, beta: &[u32], n: usize) -> Vec<u32> {
    let q = k0.order() as u64;
    let m = l0.degree() / k0.degree();
    let mut acc = vec![0; n];
    acc[0] = 1;
    let mut conj = beta.to_vec();
    for _ in 0..m {
        let mut next = vec![0; n];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in conj.iter().enumerate().take(n - i) {
                next[i + j] = l0.add(next[i + j], l0.mul(a, b));
            }
        }
        acc = next;
        conj = conj.iter().map(|&c| l0.pow(c, q)).collect();
    }
    acc
}

fn dense(s: &TruncatedSeries, n: usize) -> Result<Vec<u32>> {
    (0..n as i64).map(|e| s.coeff(e).map_err(core_err("coefficient"))).collect()
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let k0 = parse_field(&p.string("base", "3"), p.cap())?;
    let exts: Vec<Field> = crate::format::split_list(&p.string("extensions", "9, 27"))
        .map(|s| parse_field(s, p.cap()))
        .collect::<Result<_>>()?;
    let samples = p.u64_in("samples", 50, 1, 100_000)?;
    let prec = p.u64_in("precision", 20, 1, 500)? as i64;
    let truncations = p.u64_list("truncations", "5, 10, 20")?;
    if let Some(&t) = truncations.iter().find(|&&t| t == 0 || t as i64 > prec) {
        return Err(KklabError::config(format!("truncation {t} outside 1..={prec}")));
    }
    let alphas: Vec<TruncatedSeries> = (0..samples)
        .map(|i| {
            let mut rng = instance_rng(p.seed(), i);
            let mut coeffs: Vec<u32> = (0..prec).map(|_| rng.gen_range(0..k0.order())).collect();
            coeffs[0] = 1;
            TruncatedSeries::new(&k0, 0, coeffs, prec).map_err(core_err("series"))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for l0 in &exts {
        let emb = Embedding::canonical(&k0, l0).map_err(core_err("extension"))?;
        let outcomes: Vec<(Option<Value>, Option<Value>)> = alphas
            .par_iter()
            .map(|alpha| {
                let n = prec as usize;
                let beta = hensel_norm_lift(l0, &k0, alpha, prec).map_err(core_err("lift"))?;
                let norm = norm_oracle(l0, &k0, &dense(&beta, n)?, n);
                let expected: Vec<u32> = dense(alpha, n)?.iter().map(|&c| emb.apply_raw(c)).collect();
                let lift_fail = (norm != expected || beta.precision() != prec)
                    .then(|| json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "norm": norm }));
                let mut trunc_fail = None;
                for &t in &truncations {
                    let lower = hensel_norm_lift(l0, &k0, alpha, t as i64).map_err(core_err("lift"))?;
                    let norm_t = norm_oracle(l0, &k0, &dense(&lower, t as usize)?, t as usize);
                    if lower != beta.truncate(t as i64) || norm_t[..] != expected[..t as usize] {
                        trunc_fail = Some(json!({
                            "alpha": alpha.to_string(),
                            "precision": t,
                            "lift": lower.to_string(),
                            "full_lift": beta.to_string(),
                        }));
                        break;
                    }
                }
                Ok((lift_fail, trunc_fail))
            })
            .collect::<Result<_>>()?;
        let (lifts, truncs): (Vec<_>, Vec<_>) = outcomes.into_iter().unzip();
        let label = format!("F_{}/F_{}", l0.order(), k0.order());
        let (n, failure) = super::first_failure(lifts);
        out.push(super::summarize(format!("norm lift verified at precision {prec} ({label})"), n, failure));
        let (n, failure) = super::first_failure(truncs);
        out.push(super::summarize(format!("lifts consistent under truncation ({label})"), n, failure));
    }
    Ok(out)
}
