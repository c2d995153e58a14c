//! Normic forms: the form built for `l/k` has a zero over `F_{q^j}` exactly when
//! `[l:k]` divides `j`.

use kklab_core::lang::normic_form;
use kklab_core::Extension;
use rayon::prelude::*;
use serde_json::json;

use super::{core_err, extension, first_common_zero};
use crate::config::Params;
use crate::error::Result;
use crate::format::form_to_text;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["extensions", "dims", "ext_max"];
pub(super) const ANCHORS: &[&str] =
    &["the normic form of l/k has a point over a finite extension k' exactly when l is contained in k'"];

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let exts = p.extensions("extensions", "4/2, 9/3, 8/2")?;
    let dims = p.u64_list("dims", "1, 3")?;
    let ext_max = p.u64_in("ext_max", 4, 1, 12)? as u32;
    let mut out = Vec::new();
    for (l, k) in &exts {
        let m = Extension::canonical(k, l).map_err(core_err("extension"))?.degree();
        for &dim in &dims {
            let h = normic_form(l, k, dim as u32).map_err(core_err("normic form"))?;
            let fields = (1..=ext_max).map(|j| extension(k, j, p.cap())).collect::<Result<Vec<_>>>()?;
            let found: Vec<Option<Vec<u32>>> = fields
                .par_iter()
                .map(|kj| first_common_zero(std::slice::from_ref(h.poly()), kj))
                .collect::<Result<_>>()?;
            let mismatch = found.iter().enumerate().find(|(j, pt)| pt.is_some() != (*j as u32 + 1).is_multiple_of(m));
            let witness = mismatch.map(|(j, pt)| {
                json!({
                    "form": form_to_text(h.poly()),
                    "extension_degree": j + 1,
                    "expected_points": (j as u32 + 1).is_multiple_of(m),
                    "point": pt,
                })
            });
            let with_points: Vec<usize> =
                found.iter().enumerate().filter(|(_, pt)| pt.is_some()).map(|(j, _)| j + 1).collect();
            out.push(
                PropertyResult::check(format!("normic form of {l}/{k} in P^{}", h.ambient_dim()), witness).with_detail(
                    json!({ "degree": h.degree(), "requested_dim": dim, "degrees_with_points": with_points }),
                ),
            );
        }
    }
    Ok(out)
}
