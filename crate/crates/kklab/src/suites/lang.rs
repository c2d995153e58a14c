//! Lang's composition: a zero of `Φ^(μ)` over an extension gives a common zero of the
//! `F_j` or a zero of `Φ` there. Outer forms with zeros over every extension satisfy
//! this for all inner forms; the others are combined with every tuple of inner forms.

use kklab_core::lang::lang_compose;
use kklab_core::poly::{form_from_index, monomials, CompiledForm, Form};
use kklab_core::Field;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{compile_in, core_err, extension, first_common_zero, monic_form_indices, zeros};
use crate::config::Params;
use crate::error::Result;
use crate::format::form_to_text;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["fields", "mu_max", "ext_max", "phi_vars_max", "form_vars_max", "degree_max"];
pub(super) const ANCHORS: &[&str] =
    &["a zero of the iterated composite over an extension yields a common zero of the inner forms or a zero of the outer form there"];

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let fields = p.fields("fields", "2, 3")?;
    let mu_max = p.u64_in("mu_max", 2, 2, 4)? as u32;
    let ext_max = p.u64_in("ext_max", 4, 1, 8)? as u32;
    let phi_vars_max = p.u64_in("phi_vars_max", 3, 2, 4)? as usize;
    let form_vars_max = p.u64_in("form_vars_max", 3, 2, 4)? as usize;
    let degree_max = p.u64_in("degree_max", 2, 1, 3)? as u32;
    let mut out = Vec::new();
    for k in &fields {
        let exts: Vec<Field> = (1..=ext_max).map(|j| extension(k, j, p.cap())).collect::<Result<_>>()?;
        let setup = Setup { k, exts: &exts, mu_max, form_vars_max, degree_max };
        out.push(setup.check(phi_vars_max)?);
    }
    Ok(out)
}

struct Setup<'a> {
    k: &'a Field,
    exts: &'a [Field],
    mu_max: u32,
    form_vars_max: usize,
    degree_max: u32,
}

/// An inner form with its zeros over each extension.
struct Inner {
    form: Form,
    zeros: Vec<Vec<Vec<u32>>>,
    compiled: Vec<CompiledForm>,
}

/// An outer form and the extensions (by position) over which it has no zero.
struct Outer {
    form: Form,
    empty: Vec<usize>,
}

impl Setup<'_> {
    fn forms(&self, nvars: usize, degree: u32) -> Vec<Form> {
        let monos = monomials(nvars, degree);
        monic_form_indices(self.k.order() as u64, monos.len())
            .map(|i| form_from_index(self.k, nvars, &monos, i))
            .collect()
    }

    fn check(&self, phi_vars_max: usize) -> Result<PropertyResult> {
        let mut outer_total = 0usize;
        let mut open: Vec<Outer> = Vec::new();
        for nvars in 2..=phi_vars_max {
            for e in 1..=self.degree_max {
                for form in self.forms(nvars, e) {
                    outer_total += 1;
                    let mut empty = Vec::new();
                    for (j, l) in self.exts.iter().enumerate() {
                        if first_common_zero(std::slice::from_ref(&form), l)?.is_none() {
                            empty.push(j);
                        }
                    }
                    if !empty.is_empty() {
                        open.push(Outer { form, empty });
                    }
                }
            }
        }
        let mut tuples = 0u64;
        let mut scanned = 0u64;
        let mut failure: Option<Value> = None;
        for nvars in 2..=self.form_vars_max {
            for d in 1..=self.degree_max {
                let inner: Vec<Inner> = self
                    .forms(nvars, d)
                    .into_iter()
                    .map(|form| {
                        let zeros = self.exts.iter().map(|l| zeros(&form, l)).collect::<Result<_>>()?;
                        let compiled = self.exts.iter().map(|l| compile_in(&form, l)).collect::<Result<_>>()?;
                        Ok(Inner { form, zeros, compiled })
                    })
                    .collect::<Result<_>>()?;
                let max_r = open.iter().map(|o| o.form.nvars()).max().unwrap_or(0);
                for r in 1..=max_r {
                    let outers: Vec<&Outer> = open.iter().filter(|o| o.form.nvars() >= r).collect();
                    let count = (inner.len() as u64).pow(r as u32);
                    let results: Vec<(u64, Option<Value>)> = (0..count)
                        .into_par_iter()
                        .map(|t| self.check_tuple(&inner, r, t, &outers))
                        .collect::<Result<_>>()?;
                    tuples += count;
                    for (s, f) in results {
                        scanned += s;
                        if failure.is_none() {
                            failure = f;
                        }
                    }
                }
            }
        }
        let property = format!("composite zeros come from inner or outer zeros over {}", self.k);
        Ok(PropertyResult::check(property, failure).with_detail(json!({
            "outer_forms": outer_total,
            "outer_forms_without_zeros_somewhere": open.len(),
            "inner_tuples": tuples,
            "composites_scanned": scanned,
        })))
    }

    /// Checks one inner tuple against every open outer form. Returns the number of
    /// composite scans and the first failure.
    fn check_tuple(&self, inner: &[Inner], r: usize, mut t: u64, outers: &[&Outer]) -> Result<(u64, Option<Value>)> {
        let mut picks = Vec::with_capacity(r);
        for _ in 0..r {
            picks.push(&inner[(t % inner.len() as u64) as usize]);
            t /= inner.len() as u64;
        }
        let z_empty = |j: usize| -> bool {
            !picks[0].zeros[j].iter().any(|pt| picks[1..].iter().all(|f| f.compiled[j].eval(pt) == 0))
        };
        let z_empty: Vec<bool> = (0..self.exts.len()).map(z_empty).collect();
        let fs: Vec<Form> = picks.iter().map(|f| f.form.clone()).collect();
        let mut scans = 0;
        for outer in outers {
            let targets: Vec<usize> = outer.empty.iter().copied().filter(|&j| z_empty[j]).collect();
            if targets.is_empty() {
                continue;
            }
            for mu in 2..=self.mu_max {
                let composite = lang_compose(&outer.form, &fs, mu).map_err(core_err("composition"))?;
                for &j in &targets {
                    scans += 1;
                    if let Some(pt) = first_common_zero(std::slice::from_ref(&composite), &self.exts[j])? {
                        let witness = json!({
                            "outer": form_to_text(&outer.form),
                            "inner": fs.iter().map(form_to_text).collect::<Vec<_>>(),
                            "mu": mu,
                            "extension_degree": j + 1,
                            "point": pt,
                        });
                        return Ok((scans, Some(witness)));
                    }
                }
            }
        }
        Ok((scans, None))
    }
}
