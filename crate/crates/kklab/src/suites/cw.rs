//! Chevalley–Warning: nonzero forms of degree `d ≤ n` in `n + 1` variables have a
//! projective zero, so the norm group of each is the whole unit group.

use kklab_core::points::{cw_scan, random_form, Sample, Variety};
use kklab_core::poly::{form_count, form_from_index, monomials, Form, Hypersurface};
use kklab_core::Field;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core_err, instance_rng, norm_group_finite};
use crate::config::Params;
use crate::error::{KklabError, Result};
use crate::format::{form_to_text, parse_field};
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["q", "fields", "n", "d", "n_max", "exhaustive_max_q", "samples", "norm_bound"];
pub(super) const ANCHORS: &[&str] = &[
    "a form of degree d in more than d variables over a finite field has a nontrivial zero",
    "the norm group of such a hypersurface is the full unit group",
];

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let fields: Vec<Field> =
        if p.has("q") { vec![parse_field(&p.string("q", ""), p.cap())?] } else { p.fields("fields", "2, 3, 5")? };
    let n_max = p.u64_in("n_max", 3, 1, 8)? as usize;
    let ns: Vec<usize> = if p.has("n") { vec![p.u64_in("n", 1, 1, 8)? as usize] } else { (1..=n_max).collect() };
    let fixed_d = if p.has("d") { Some(p.u64_in("d", 1, 1, 8)? as u32) } else { None };
    let exhaustive_max_q = p.u64("exhaustive_max_q", 2)?;
    let samples = p.u64_in("samples", 500, 1, 10_000_000)?;
    let norm_bound = p.u64_in("norm_bound", 2, 1, 8)? as u32;
    let mut out = Vec::new();
    let mut stream = 0u64;
    for k in &fields {
        for &n in &ns {
            let ds: Vec<u32> = match fixed_d {
                Some(d) if d as usize > n => {
                    return Err(KklabError::config(format!("d = {d} exceeds n = {n}")));
                }
                Some(d) => vec![d],
                None => (1..=n as u32).collect(),
            };
            for d in ds {
                stream += 1;
                let exhaustive = k.order() as u64 <= exhaustive_max_q;
                out.extend(check(k, n, d, exhaustive, samples, norm_bound, p, stream)?);
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn check(
    k: &Field,
    n: usize,
    d: u32,
    exhaustive: bool,
    samples: u64,
    norm_bound: u32,
    p: &Params,
    stream: u64,
) -> Result<Vec<PropertyResult>> {
    let nvars = n + 1;
    let monos = monomials(nvars, d);
    let sample = if exhaustive { Sample::All } else { Sample::Random(samples) };
    let report = cw_scan(k, n, d, sample, &mut instance_rng(p.seed(), stream)).map_err(core_err("scan"))?;
    let label = format!("F_{} n={n} d={d}", k.order());
    let mode = if exhaustive { "exhaustive" } else { "sampled" };
    let cw = PropertyResult::check(
        format!("every nonzero form has a projective zero ({label}, {mode})"),
        report.counterexample.as_ref().map(|f| json!({ "form": form_to_text(f) })),
    )
    .with_detail(json!({ "forms_checked": report.forms_checked }));
    // The same forms again, in the same order, for their norm groups.
    let cap = p.cap();
    let check_form = |f: Form| -> Result<Option<Value>> {
        let h = Hypersurface::new(f.clone()).map_err(core_err("form"))?;
        let group = norm_group_finite(&Variety::hypersurface(h), norm_bound, cap)?;
        Ok((!group.full).then(|| json!({ "form": form_to_text(&f), "group": group })))
    };
    let keep = |r: Result<Option<Value>>| match r {
        Ok(None) => None,
        other => Some(other),
    };
    let (count, first) = if exhaustive {
        let total = form_count(k, &monos).ok_or_else(|| KklabError::config("too many forms"))?;
        let first =
            (1..total).into_par_iter().map(|i| check_form(form_from_index(k, nvars, &monos, i))).find_map_first(keep);
        (total - 1, first)
    } else {
        let mut rng = instance_rng(p.seed(), stream);
        let forms: Vec<Form> = (0..samples)
            .map(|_| loop {
                let f = random_form(k, nvars, &monos, &mut rng);
                if !f.is_zero() {
                    break f;
                }
            })
            .collect();
        (samples, forms.into_par_iter().map(check_form).find_map_first(keep))
    };
    let failure = first.transpose()?.flatten();
    let norms = PropertyResult::check(format!("norm group is the full unit group ({label}, {mode})"), failure)
        .with_detail(json!({ "forms_checked": count, "bound": norm_bound }));
    Ok(vec![cw, norms])
}
