//! The verification suites. Each suite reads its keys through [`Params`], runs pure
//! instances on the rayon pool, and merges the results in instance order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use kklab_core::points::scan_zeros;
use kklab_core::poly::{CompiledForm, Form};
use kklab_core::{Embedding, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentConfig, Params};
use crate::error::{KklabError, Result};
use crate::format::build_field;
use crate::report::{PropertyResult, Report};

mod cw;
mod growth;
mod hensel;
mod index;
mod insep;
mod lang;
mod norm_group;
mod normic;
mod reciprocity;
mod texpand;
mod weil;

pub use norm_group::{norm_group_finite, NormGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    LangCorrespondence,
    Growth,
    Normic,
    WeilRestrict,
    TExpand,
    CwScan,
    IndexDivisibility,
    Reciprocity,
    Hensel,
    InsepNorm,
    NormGroupFinite,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::LangCorrespondence,
        Suite::Growth,
        Suite::Normic,
        Suite::WeilRestrict,
        Suite::TExpand,
        Suite::CwScan,
        Suite::IndexDivisibility,
        Suite::Reciprocity,
        Suite::Hensel,
        Suite::InsepNorm,
        Suite::NormGroupFinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LangCorrespondence => "lang-correspondence",
            Suite::Growth => "growth",
            Suite::Normic => "normic",
            Suite::WeilRestrict => "weil-restrict",
            Suite::TExpand => "t-expand",
            Suite::CwScan => "cw-scan",
            Suite::IndexDivisibility => "index-divisibility",
            Suite::Reciprocity => "reciprocity",
            Suite::Hensel => "hensel",
            Suite::InsepNorm => "insep-norm",
            Suite::NormGroupFinite => "norm-group-finite",
        }
    }

    /// Suite-specific config keys.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Suite::LangCorrespondence => lang::KEYS,
            Suite::Growth => growth::KEYS,
            Suite::Normic => normic::KEYS,
            Suite::WeilRestrict => weil::KEYS,
            Suite::TExpand => texpand::KEYS,
            Suite::CwScan => cw::KEYS,
            Suite::IndexDivisibility => index::KEYS,
            Suite::Reciprocity => reciprocity::KEYS,
            Suite::Hensel => hensel::KEYS,
            Suite::InsepNorm => insep::KEYS,
            Suite::NormGroupFinite => norm_group::KEYS,
        }
    }

    /// Short statements of what the suite checks, echoed in the report header.
    pub fn anchors(self) -> &'static [&'static str] {
        match self {
            Suite::LangCorrespondence => lang::ANCHORS,
            Suite::Growth => growth::ANCHORS,
            Suite::Normic => normic::ANCHORS,
            Suite::WeilRestrict => weil::ANCHORS,
            Suite::TExpand => texpand::ANCHORS,
            Suite::CwScan => cw::ANCHORS,
            Suite::IndexDivisibility => index::ANCHORS,
            Suite::Reciprocity => reciprocity::ANCHORS,
            Suite::Hensel => hensel::ANCHORS,
            Suite::InsepNorm => insep::ANCHORS,
            Suite::NormGroupFinite => norm_group::ANCHORS,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = KklabError;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| KklabError::UnknownSuite(s.to_string()))
    }
}

pub fn run_suite(config: &ExperimentConfig) -> Result<Report> {
    let start = Instant::now();
    let params = Params::new(config);
    let results = match config.suite {
        Suite::LangCorrespondence => lang::run(&params)?,
        Suite::Growth => growth::run(&params)?,
        Suite::Normic => normic::run(&params)?,
        Suite::WeilRestrict => weil::run(&params)?,
        Suite::TExpand => texpand::run(&params)?,
        Suite::CwScan => cw::run(&params)?,
        Suite::IndexDivisibility => index::run(&params)?,
        Suite::Reciprocity => reciprocity::run(&params)?,
        Suite::Hensel => hensel::run(&params)?,
        Suite::InsepNorm => insep::run(&params)?,
        Suite::NormGroupFinite => norm_group::run(&params)?,
    };
    Ok(Report {
        suite: config.suite.name().to_string(),
        anchors: config.suite.anchors().iter().map(|s| s.to_string()).collect(),
        config: params.into_echo(),
        results,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Independent stream `stream` of the run's seed.
pub(crate) fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The extension of degree `j` of `k`, under the size cap.
pub(crate) fn extension(k: &Field, j: u32, cap: u64) -> Result<Field> {
    build_field(k.characteristic(), k.degree() * j, cap)
}

/// Indices (for `form_from_index`) of the forms on `m` monomials whose largest monomial
/// has coefficient 1: one representative per scalar class of nonzero forms.
pub(crate) fn monic_form_indices(q: u64, m: usize) -> impl Iterator<Item = u64> {
    (0..m as u32).flat_map(move |top| {
        let lead = q.pow(top);
        (0..lead).map(move |low| low + lead)
    })
}

/// `f` compiled for evaluation at points over `field`, an extension of its own field.
pub(crate) fn compile_in(f: &Form, field: &Field) -> Result<CompiledForm> {
    if f.field() == field {
        return Ok(f.compile());
    }
    let e = Embedding::canonical(f.field(), field).map_err(core_err("embedding"))?;
    Ok(f.base_change(&e).map_err(core_err("base change"))?.compile())
}

/// All normalized zeros of `f` over `field`.
pub(crate) fn zeros(f: &Form, field: &Field) -> Result<Vec<Vec<u32>>> {
    let compiled = [compile_in(f, field)?];
    let mut out = Vec::new();
    scan_zeros(&compiled, field, f.nvars(), |p| {
        out.push(p.to_vec());
        true
    })
    .map_err(|e| KklabError::core(format!("scan over {field}"), e))?;
    Ok(out)
}

/// Whether the forms have a common zero over `field`, and the first one.
pub(crate) fn first_common_zero(forms: &[Form], field: &Field) -> Result<Option<Vec<u32>>> {
    let compiled: Vec<CompiledForm> = forms.iter().map(|f| compile_in(f, field)).collect::<Result<_>>()?;
    let mut found = None;
    scan_zeros(&compiled, field, forms[0].nvars(), |p| {
        found = Some(p.to_vec());
        false
    })
    .map_err(|e| KklabError::core(format!("scan over {field}"), e))?;
    Ok(found)
}

pub(crate) fn core_err(context: &str) -> impl Fn(kklab_core::Error) -> KklabError + '_ {
    move |e| KklabError::core(context, e)
}

/// Merges per-instance outcomes: the number of instances, and the first failure in
/// instance order.
pub(crate) fn first_failure<T>(outcomes: Vec<Option<T>>) -> (usize, Option<T>) {
    let n = outcomes.len();
    (n, outcomes.into_iter().flatten().next())
}

pub(crate) fn summarize(property: String, checked: usize, failure: Option<serde_json::Value>) -> PropertyResult {
    PropertyResult::check(property, failure).with_detail(serde_json::json!({ "instances": checked }))
}
