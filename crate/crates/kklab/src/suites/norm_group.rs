//! The subgroup of `F_q^×` generated by norms from the extensions `F_{q^j}`, `j ≤ bound`,
//! over which a variety has a point.

use kklab_core::points::{has_point_in, Variety};
use kklab_core::poly::Hypersurface;
use kklab_core::{Extension, Field};
use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

use super::{core_err, extension};
use crate::config::Params;
use crate::error::{KklabError, Result};
use crate::format::{form_to_text, parse_field};
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["field", "p", "n", "form", "bound"];
pub(super) const ANCHORS: &[&str] =
    &["norms from residue fields of closed points generate the unit group of a finite field once any point exists"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormGroup {
    pub q: u32,
    pub bound: u32,
    pub degrees_with_points: Vec<u32>,
    /// `N(g_j)` for a generator `g_j` of each `F_{q^j}^×` with points, as element indices.
    pub generators: Vec<u32>,
    /// Order of the generated subgroup; 1 when nothing is generated.
    pub order: u64,
    pub full: bool,
    /// No point over any scanned extension, so nothing is generated.
    pub inconclusive: bool,
}

/// Norm group of `v` from extensions of degree at most `bound`, under the field cap.
pub fn norm_group_finite(v: &Variety, bound: u32, cap: u64) -> Result<NormGroup> {
    if bound == 0 {
        return Err(KklabError::config("bound must be positive"));
    }
    let k = v.field();
    let q = k.order();
    let mut degrees = Vec::new();
    let mut generators = Vec::new();
    let mut order = 1u64;
    for j in 1..=bound {
        let kj: Field = extension(k, j, cap)?;
        if !has_point_in(v, &kj).map_err(core_err("point search"))? {
            continue;
        }
        degrees.push(j);
        let ext = Extension::canonical(k, &kj).map_err(core_err("extension"))?;
        let n = ext.norm(&kj.elem(kj.generator())).map_err(core_err("norm"))?;
        order = order.lcm(&k.multiplicative_order(n.index()).expect("norm of a unit"));
        generators.push(n.index());
    }
    generators.sort_unstable();
    generators.dedup();
    let inconclusive = degrees.is_empty();
    Ok(NormGroup {
        q,
        bound,
        degrees_with_points: degrees,
        generators,
        order,
        full: !inconclusive && order == q as u64 - 1,
        inconclusive,
    })
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let k = match p.field_pn()? {
        Some(k) => k,
        None => parse_field(&p.string("field", "3"), p.cap())?,
    };
    let bound = p.u64_in("bound", 4, 1, 32)? as u32;
    let f = p.form("form", &k)?;
    let h = Hypersurface::new(f).map_err(core_err("form"))?;
    let group = norm_group_finite(&Variety::hypersurface(h.clone()), bound, p.cap())?;
    let witness =
        (!group.inconclusive && !group.full).then(|| json!({ "form": form_to_text(h.poly()), "group": group }));
    let detail = serde_json::to_value(&group).expect("serializable");
    Ok(vec![PropertyResult::check(format!("norm group over F_{} is full once a point exists", k.order()), witness)
        .with_detail(detail)])
}
