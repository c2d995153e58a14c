//! `t`-expansion: `F(Σ_r T_{i,r} t^r) = Σ_m F_m t^m` with `ds + M + 1` forms, and the
//! stability bound on `s`.

use kklab_core::descent::{stability_s_bound, t_degree, t_expand};
use kklab_core::poly::{monomials, Monomial, TPoly};
use kklab_core::{Field, UPoly};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core_err, instance_rng};
use crate::config::Params;
use crate::error::Result;
use crate::format::form_to_text;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] =
    &["fields", "samples", "s_max", "degree_max", "t_degree_max", "vars_max", "bound_samples"];
pub(super) const ANCHORS: &[&str] = &[
    "a form with coefficients in k[t] evaluated at polynomial points expands into ds+M+1 forms over k",
    "the chosen s exceeds (M+1)d^i+n+1 and satisfies (sd+M+1)d^i <= (s+1)(n+1)-1",
];

struct Shape {
    s_max: usize,
    degree_max: u32,
    t_degree_max: usize,
    vars_max: usize,
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let fields = p.fields("fields", "2, 3")?;
    let samples = p.u64_in("samples", 50, 1, 100_000)?;
    let shape = Shape {
        s_max: p.u64_in("s_max", 3, 0, 8)? as usize,
        degree_max: p.u64_in("degree_max", 3, 1, 5)? as u32,
        t_degree_max: p.u64_in("t_degree_max", 3, 0, 8)? as usize,
        vars_max: p.u64_in("vars_max", 3, 1, 4)? as usize,
    };
    let bound_samples = p.u64_in("bound_samples", 50, 1, 1_000_000)?;
    let seed = p.seed();
    let outcomes: Vec<Option<Value>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let k = &fields[rng.gen_range(0..fields.len())];
            expansion_instance(k, &shape, &mut rng)
        })
        .collect::<Result<_>>()?;
    let (n, failure) = super::first_failure(outcomes);
    let mut out = vec![super::summarize("t-expansion resubstitution identity and form count".into(), n, failure)];
    let outcomes: Vec<Option<Value>> = (0..bound_samples)
        .into_par_iter()
        .map(|i| bound_instance(&mut instance_rng(seed, samples + i)))
        .collect::<Result<_>>()?;
    let (n, failure) = super::first_failure(outcomes);
    out.push(super::summarize("stability bound on s certified".into(), n, failure));
    Ok(out)
}

fn random_tpoly(k: &Field, shape: &Shape, rng: &mut impl Rng) -> TPoly {
    let nvars = rng.gen_range(1..=shape.vars_max);
    let d = rng.gen_range(1..=shape.degree_max);
    loop {
        let mut f = TPoly::zero(k, nvars);
        for m in monomials(nvars, d) {
            if rng.gen_bool(0.5) {
                let deg = rng.gen_range(0..=shape.t_degree_max);
                let coeffs = (0..=deg).map(|_| rng.gen_range(0..k.order())).collect();
                f.add_term(m, UPoly::from_coeffs(k, coeffs));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn expansion_instance(k: &Field, shape: &Shape, rng: &mut impl Rng) -> Result<Option<Value>> {
    let f = random_tpoly(k, shape, rng);
    let s = rng.gen_range(0..=shape.s_max);
    let d = f.homogeneous_degree().expect("built homogeneous") as usize;
    let forms = t_expand(&f, s).map_err(core_err("t-expansion"))?;
    let nvars = f.nvars();
    let total = nvars * (s + 1);
    // Reassemble Σ F_m t^m and compare with F composed with the lifted variables.
    let mut reassembled = TPoly::zero(k, total);
    for (m, g) in forms.iter().enumerate() {
        for (mono, c) in g.terms() {
            reassembled.add_term(mono.clone(), UPoly::monomial(k, c.index(), m));
        }
    }
    let lifts: Vec<TPoly> = (0..nvars)
        .map(|i| {
            let mut lin = TPoly::zero(k, total);
            for r in 0..=s {
                lin.add_term(Monomial::var(total, i * (s + 1) + r), UPoly::monomial(k, 1, r));
            }
            lin
        })
        .collect();
    let direct = f.compose(&lifts).map_err(core_err("composition"))?;
    let count_ok = forms.len() == d * s + t_degree(&f) + 1;
    let degrees_ok = forms.iter().all(|g| g.is_zero() || g.homogeneous_degree() == Some(d as u32));
    if reassembled == direct && count_ok && degrees_ok {
        return Ok(None);
    }
    Ok(Some(json!({
        "field": k.to_string(),
        "polynomial": f.to_string(),
        "s": s,
        "forms": forms.iter().map(form_to_text).collect::<Vec<_>>(),
        "identity_holds": reassembled == direct,
        "count_ok": count_ok,
        "degrees_ok": degrees_ok,
    })))
}

fn bound_instance(rng: &mut impl Rng) -> Result<Option<Value>> {
    let d = rng.gen_range(1..=4u64);
    let i = rng.gen_range(0..=3u32);
    let n = d.pow(i + 1) + rng.gen_range(0..=20);
    let big_m = rng.gen_range(0..=30u64);
    let s = stability_s_bound(big_m, d, i, n).map_err(core_err("s bound"))?;
    let di = d.pow(i) as u128;
    let (s_, m_, n_, d_) = (s as u128, big_m as u128, n as u128, d as u128);
    let threshold = (m_ + 1) * di + n_ + 1;
    let smallest = s_ > threshold && s_ - 1 <= threshold;
    let certified = (s_ * d_ + m_ + 1) * di < (s_ + 1) * (n_ + 1);
    Ok((!(smallest && certified)).then(|| json!({ "M": big_m, "d": d, "i": i, "n": n, "s": s })))
}
