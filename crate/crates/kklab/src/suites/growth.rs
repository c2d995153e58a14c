//! Growth of Lang's construction: `N_μ = (n+1)⌊N_{μ-1}/r⌋`, `D_μ = e d^{μ-1}`, and
//! `N_μ / D_μ^i` increasing geometrically when `r d^i ≤ n`.

use kklab_core::lang::{growth_sequence, LangParams, Ratio};
use serde_json::json;

use super::core_err;
use crate::config::Params;
use crate::error::{KklabError, Result};
use crate::report::PropertyResult;

pub(super) const KEYS: &[&str] = &["tuples", "mu_max", "n", "r", "e", "d", "big_n"];
pub(super) const ANCHORS: &[&str] = &[
    "variable count and degree of the iterated composite follow their recurrences",
    "the ratio of variables to the i-th power of the degree grows with step factor tending to (n+1)/(r d^i) when r d^i <= n",
];

/// `n:r:e:d[:N]`, with `N = n` when left out.
const DEFAULT_TUPLES: &str = "4:1:2:2 2:1:1:1 3:1:1:1 3:1:2:1 4:2:2:2:5 5:1:3:2 8:2:2:2:9 6:3:1:2:8 \
     8:1:2:2 9:1:3:3 9:2:2:2:9 10:3:2:3:11 16:1:2:2 16:2:2:2:17 27:1:3:3 12:4:2:1:15 7:1:1:2 \
     7:2:1:2:7 6:5:1:1:30 20:2:3:3:21";

/// Largest `i` examined for `d > 1`; with `d = 1` every `i` gives the same ratios.
const MAX_I: u32 = 8;

fn parse_tuple(text: &str) -> Result<LangParams> {
    let parts: Vec<u32> = text
        .split(':')
        .map(|s| s.parse().map_err(|_| KklabError::config(format!("tuple `{text}`: `{s}` is not an integer"))))
        .collect::<Result<_>>()?;
    let (n, r, e, d, big_n) = match parts[..] {
        [n, r, e, d] => (n, r, e, d, n),
        [n, r, e, d, big_n] => (n, r, e, d, big_n),
        _ => return Err(KklabError::config(format!("tuple `{text}` is not n:r:e:d[:N]"))),
    };
    LangParams::new(n, r, e, d, big_n).map_err(core_err("tuple"))
}

fn ratio_text(r: &Ratio) -> String {
    format!("{}/{}", r.num, r.den)
}

pub(super) fn run(p: &Params) -> Result<Vec<PropertyResult>> {
    let mu_max = p.u64_in("mu_max", 50, 2, 500)? as u32;
    let tuples: Vec<LangParams> = if p.has("n") {
        let n = p.u64("n", 0)? as u32;
        let tuple = LangParams::new(
            n,
            p.u64("r", 1)? as u32,
            p.u64("e", 2)? as u32,
            p.u64("d", 2)? as u32,
            p.u64("big_n", n as u64)? as u32,
        )
        .map_err(core_err("tuple"))?;
        vec![tuple]
    } else {
        crate::format::split_list(&p.string("tuples", DEFAULT_TUPLES)).map(parse_tuple).collect::<Result<_>>()?
    };
    let mut out = Vec::new();
    for t in tuples {
        let label = format!("n={} r={} e={} d={} N={}", t.n, t.r, t.e, t.d, t.big_n);
        let seq = growth_sequence(t, mu_max).map_err(core_err("growth"))?;
        let last = seq.entries.last().expect("mu_max >= 1");
        let recurrence = PropertyResult::check(
            format!("recurrences reproduced ({label})"),
            (!seq.verify_recurrence()).then(|| json!({ "tuple": label })),
        )
        .with_detail(json!({ "mu_max": mu_max, "vars_digits": last.vars.to_string().len() }));
        out.push(recurrence);
        let mut i = 1;
        while (t.r as u64) * (t.d as u64).pow(i) <= t.n as u64 && i <= MAX_I {
            let report = seq.ratio_report(i);
            let witness = (report.increasing_from.is_none() || !report.deviation_bounded).then(|| {
                json!({
                    "tuple": label,
                    "i": i,
                    "first_ratios": report.ratios.iter().take(6).map(ratio_text).collect::<Vec<_>>(),
                    "increasing_from": report.increasing_from,
                    "factors_within_bound": report.deviation_bounded,
                })
            });
            out.push(
                PropertyResult::check(format!("ratio grows geometrically ({label}, i={i})"), witness).with_detail(
                    json!({
                        "increasing_from": report.increasing_from,
                        "limit": ratio_text(&report.limit),
                        "final_factor_approx": report.factors.last().map(Ratio::to_f64),
                    }),
                ),
            );
            if t.d == 1 {
                break;
            }
            i += 1;
        }
    }
    Ok(out)
}
