//! Index divisibility along Lang's construction, and the index of norm forms.

use kklab_core::field::make_field;
use kklab_core::lang::{norm_form, normic_form};
use kklab_core::points::{index, index_divisibility_check, Variety};
use kklab_core::poly::{form, Form, Hypersurface};
use kklab_core::{Extension, Field};
use num_integer::gcd;
use rayon::prelude::*;
use serde_json::json;

use super::core_err;
use crate::config::Params;
use crate::error::{KklabError, Result};
use crate::format::form_to_text;
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["bound", "norm_forms"];
pub(super) const ANCHORS: &[&str] = &[
    "gcd of the indices of Z and of the previous composite divides the index of the next composite",
    "the norm form of an extension of degree m has index m",
];

struct Tuple {
    name: &'static str,
    phi: Form,
    zs: Vec<Form>,
    mu_max: u32,
}

fn fields(p: u32, m: u32) -> Result<(Field, Field)> {
    let k = make_field(p, 1).map_err(core_err("field"))?;
    let l = make_field(p, m).map_err(core_err("field"))?;
    Ok((k, l))
}

fn norm_of(p: u32, m: u32) -> Result<Form> {
    let (k, l) = fields(p, m)?;
    Ok(norm_form(&l, &k).map_err(core_err("norm form"))?.into_poly())
}

fn binary_normic(p: u32, m: u32) -> Result<Form> {
    let (k, l) = fields(p, m)?;
    Ok(normic_form(&l, &k, 1).map_err(core_err("normic form"))?.into_poly())
}

/// Ten fixed tuples over `F_2` and `F_3`, mixing anisotropic and isotropic outer forms
/// with inner forms of index 1, 2, 3 and with no points at all.
fn tuples() -> Result<Vec<Tuple>> {
    let f2 = make_field(2, 1).map_err(core_err("field"))?;
    let f3 = make_field(3, 1).map_err(core_err("field"))?;
    let sq = |k: &Field, i: usize| form(k, 2, &[(1, if i == 0 { &[2, 0] } else { &[0, 2] })]);
    let xy = |k: &Field| form(k, 2, &[(1, &[1, 1])]);
    Ok(vec![
        Tuple { name: "F_2: N(4/2) over N(4/2)", phi: norm_of(2, 2)?, zs: vec![norm_of(2, 2)?], mu_max: 3 },
        Tuple { name: "F_2: N(4/2) over cubic point", phi: norm_of(2, 2)?, zs: vec![binary_normic(2, 3)?], mu_max: 3 },
        Tuple {
            name: "F_2: N(4/2) over empty pair",
            phi: norm_of(2, 2)?,
            zs: vec![norm_of(2, 2)?, xy(&f2)],
            mu_max: 3,
        },
        Tuple {
            name: "F_2: N(8/2) over empty triple",
            phi: norm_of(2, 3)?,
            zs: vec![norm_of(2, 2)?, sq(&f2, 0), sq(&f2, 1)],
            mu_max: 2,
        },
        Tuple {
            name: "F_2: isotropic ternary over cubic point",
            phi: form(&f2, 3, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])]),
            zs: vec![binary_normic(2, 3)?],
            mu_max: 2,
        },
        Tuple { name: "F_3: N(9/3) over N(9/3)", phi: norm_of(3, 2)?, zs: vec![norm_of(3, 2)?], mu_max: 2 },
        Tuple { name: "F_3: N(9/3) over cubic point", phi: norm_of(3, 2)?, zs: vec![binary_normic(3, 3)?], mu_max: 2 },
        Tuple {
            name: "F_3: N(27/3) over quadratic triple",
            phi: norm_of(3, 3)?,
            zs: vec![norm_of(3, 2)?, form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])]), xy(&f3)],
            mu_max: 2,
        },
        Tuple { name: "F_3: N(9/3) over squares", phi: norm_of(3, 2)?, zs: vec![sq(&f3, 0), sq(&f3, 1)], mu_max: 2 },
        Tuple {
            name: "F_3: sum of three squares over N(9/3)",
            phi: form(&f3, 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            zs: vec![norm_of(3, 2)?; 3],
            mu_max: 2,
        },
    ])
}

fn check_cap(k: &Field, bound: u32, cap: u64) -> Result<()> {
    let size = (k.order() as u64).checked_pow(bound).filter(|&s| s <= cap);
    size.map(|_| ()).ok_or_else(|| KklabError::config(format!("F_{}^{bound} exceeds the field cap {cap}", k.order())))
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let bound = p.u64_in("bound", 4, 1, 12)? as u32;
    let norm_forms = p.extensions("norm_forms", "4/2, 8/2, 16/2, 9/3, 27/3")?;
    let tuples = tuples()?;
    for t in &tuples {
        check_cap(t.phi.field(), bound, p.cap())?;
    }
    let mut out: Vec<PropertyResult> = tuples
        .par_iter()
        .map(|t| {
            let zs: Vec<Hypersurface> =
                t.zs.iter()
                    .map(|f| Hypersurface::new(f.clone()))
                    .collect::<kklab_core::Result<_>>()
                    .map_err(core_err("form"))?;
            let phi = Hypersurface::new(t.phi.clone()).map_err(core_err("form"))?;
            let report = index_divisibility_check(&zs, &phi, t.mu_max, bound).map_err(core_err(t.name))?;
            let steps: Vec<_> = report
                .steps
                .iter()
                .map(
                    |s| json!({ "mu": s.mu, "index_z": s.index_z, "index_prev": s.index_prev, "index_mu": s.index_mu }),
                )
                .collect();
            let witness = (!report.passed()).then(|| {
                json!({
                    "outer": form_to_text(&t.phi),
                    "inner": t.zs.iter().map(form_to_text).collect::<Vec<_>>(),
                    "steps": steps,
                })
            });
            Ok(PropertyResult::check(format!("index divisibility ({})", t.name), witness)
                .with_detail(json!({ "bound": bound, "steps": steps })))
        })
        .collect::<Result<_>>()?;
    for (l, k) in &norm_forms {
        check_cap(k, bound, p.cap())?;
        let m = Extension::canonical(k, l).map_err(core_err("extension"))?.degree();
        let h = norm_form(l, k).map_err(core_err("norm form"))?;
        let report = index(&Variety::hypersurface(h.clone()), bound).map_err(core_err("index"))?;
        // Points over F_{q^j} exactly when l ⊗ F_{q^j} splits, i.e. gcd(j, m) > 1.
        let expected = (1..=bound).filter(|&j| gcd(j, m) > 1).fold(0, gcd) as u64;
        let witness = (report.index != expected).then(
            || json!({ "form": form_to_text(h.poly()), "index": report.index, "degree": m, "expected": expected }),
        );
        out.push(
            PropertyResult::check(format!("norm form of {l}/{k} (degree {m}) has index {expected}"), witness)
                .with_detail(json!({ "index": report.index, "degrees_with_points": report.degrees_with_points })),
        );
    }
    Ok(out)
}
