//! Weil restriction: for every form `H` over `l` and every extension `k'` of `k`, the
//! restricted system has a `k'`-point exactly when `H` has an `lk'`-point.

use kklab_core::descent::RestrictionMap;
use kklab_core::poly::{form_from_index, monomials, Form};
use kklab_core::{Extension, Field};
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core_err, extension, first_common_zero, monic_form_indices};
use crate::config::Params;
use crate::error::Result;
use crate::format::form_to_text;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["extensions", "dims", "degree_max", "ext_max"];
pub(super) const ANCHORS: &[&str] =
    &["the Weil restriction of H along l/k has a k'-point if and only if H has an lk'-point"];

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let exts = p.extensions("extensions", "4/2, 9/3")?;
    let dims = p.u64_list("dims", "1, 2")?;
    let degree_max = p.u64_in("degree_max", 2, 1, 4)? as u32;
    let ext_max = p.u64_in("ext_max", 2, 1, 6)? as u32;
    let mut out = Vec::new();
    for (l, k) in &exts {
        let m = Extension::canonical(k, l).map_err(core_err("extension"))?.degree();
        // k' = F_{q^j} and lk' = F_{q^lcm(m, j)}
        let mut targets = Vec::new();
        for j in 1..=ext_max {
            targets.push((j, extension(k, j, p.cap())?, extension(k, m.lcm(&j), p.cap())?));
        }
        for &dim in &dims {
            let nvars = dim as usize + 1;
            for degree in 1..=degree_max {
                out.push(check(l, k, nvars, degree, &targets)?);
            }
        }
    }
    Ok(out)
}

fn check(l: &Field, k: &Field, nvars: usize, degree: u32, targets: &[(u32, Field, Field)]) -> Result<PropertyResult> {
    let map = RestrictionMap::new(l, k, nvars, degree).map_err(core_err("restriction map"))?;
    let monos = monomials(nvars, degree);
    let indices: Vec<u64> = monic_form_indices(l.order() as u64, monos.len()).collect();
    let outcomes: Vec<(u64, Option<Value>)> = indices
        .par_iter()
        .map(|&idx| {
            let h = form_from_index(l, nvars, &monos, idx);
            let system: Vec<Form> =
                map.apply(&h).map_err(core_err("restriction"))?.into_iter().filter(|f| !f.is_zero()).collect();
            let mut with_points = 0;
            for (j, kj, lkj) in targets {
                let restricted = first_common_zero(&system, kj)?;
                let original = first_common_zero(std::slice::from_ref(&h), lkj)?;
                if restricted.is_some() != original.is_some() {
                    let witness = json!({
                        "form": form_to_text(&h),
                        "extension_degree": j,
                        "restricted_point": restricted,
                        "original_point": original,
                        "system": system.iter().map(form_to_text).collect::<Vec<_>>(),
                    });
                    return Ok((with_points, Some(witness)));
                }
                with_points += u64::from(original.is_some());
            }
            Ok((with_points, None))
        })
        .collect::<Result<_>>()?;
    let pairs_with_points: u64 = outcomes.iter().map(|(c, _)| c).sum();
    let failure = outcomes.into_iter().find_map(|(_, w)| w);
    Ok(PropertyResult::check(format!("restriction along {l}/{k}, degree {degree} in P^{}", nvars - 1), failure)
        .with_detail(json!({
            "forms_up_to_scalar": indices.len(),
            "extension_degrees": targets.iter().map(|t| t.0).collect::<Vec<_>>(),
            "cases_with_points": pairs_with_points,
            "cases_without_points": indices.len() as u64 * targets.len() as u64 - pairs_with_points,
        })))
}
