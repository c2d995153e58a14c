//! Exhaustive search for projective points over finite fields, the index of a variety,
//! and the scans built on them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{make_field_capped, Embedding, Field, FieldElem, MAX_FIELD_ORDER};
use crate::lang::lang_compose;
use crate::poly::{form_count, form_from_index, monomials, CompiledForm, Form, Hypersurface};

/// Largest number of projective points a single scan may visit.
pub const MAX_SCAN_POINTS: u64 = 500_000_000;

/// Common zero locus of several forms in one projective space.
#[derive(Clone, Debug, PartialEq)]
pub struct Variety {
    forms: Vec<Hypersurface>,
}

impl Variety {
    pub fn new(forms: Vec<Hypersurface>) -> Result<Variety> {
        let first = forms.first().ok_or_else(|| Error::InvalidParams("a variety needs at least one form".into()))?;
        for h in &forms {
            if h.field() != first.field() {
                return Err(Error::FieldMismatch(format!("{} vs {}", h.field(), first.field())));
            }
            if h.poly().nvars() != first.poly().nvars() {
                return Err(Error::ArityMismatch { expected: first.poly().nvars(), got: h.poly().nvars() });
            }
        }
        Ok(Variety { forms })
    }

    /// Builds a variety from raw forms, rejecting zero and non-homogeneous ones.
    pub fn from_forms(forms: Vec<Form>) -> Result<Variety> {
        Self::new(forms.into_iter().map(Hypersurface::new).collect::<Result<_>>()?)
    }

    pub fn hypersurface(h: Hypersurface) -> Variety {
        Variety { forms: vec![h] }
    }

    pub fn forms(&self) -> &[Hypersurface] {
        &self.forms
    }

    pub fn field(&self) -> &Field {
        self.forms[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.forms[0].poly().nvars()
    }

    /// The forms over `field`, pushed through the canonical embedding.
    pub fn compile_over(&self, field: &Field) -> Result<Vec<CompiledForm>> {
        let k = self.field();
        if field == k {
            return Ok(self.forms.iter().map(|h| h.poly().compile()).collect());
        }
        let e = Embedding::canonical(k, field)?;
        self.forms.iter().map(|h| Ok(h.poly().base_change(&e)?.compile())).collect()
    }

    /// Field of degree `j` over the base field.
    pub fn extension(&self, j: u32) -> Result<Field> {
        let k = self.field();
        make_field_capped(k.characteristic(), k.degree() * j, MAX_FIELD_ORDER)
    }
}

/// A projective point with first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<FieldElem>,
}

impl ProjPoint {
    /// Normalizes a nonzero coordinate vector.
    pub fn new(coords: Vec<FieldElem>) -> Result<ProjPoint> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroArgument)?;
        let inv = lead.inv()?;
        let coords = coords.iter().map(|c| c.try_mul(&inv)).collect::<Result<_>>()?;
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn raw(&self) -> Vec<u32> {
        self.coords.iter().map(FieldElem::index).collect()
    }

    pub fn normalize(&self) -> ProjPoint {
        ProjPoint::new(self.coords.clone()).expect("stored points are nonzero")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" : ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Number of points of `P^(nvars-1)(F_q)`.
pub fn projective_size(q: u64, nvars: usize) -> Option<u64> {
    let qn = q.checked_pow(nvars as u32)?;
    Some((qn - 1) / (q - 1))
}

/// Visits the common zeros of `forms` over `field` in lexicographic order of normalized
/// coordinates. `visit` returns `false` to stop early.
pub fn scan_zeros(
    forms: &[CompiledForm],
    field: &Field,
    nvars: usize,
    mut visit: impl FnMut(&[u32]) -> bool,
) -> Result<()> {
    let q = field.order();
    if projective_size(q as u64, nvars).filter(|&t| t <= MAX_SCAN_POINTS).is_none() {
        return Err(Error::SizeExceeded(format!(
            "P^{} over {field} has too many points to scan",
            nvars.saturating_sub(1)
        )));
    }
    let mut point = vec![0u32; nvars];
    let mut logs: Vec<Option<u32>> = vec![None; nvars];
    for lead in (0..nvars).rev() {
        point.iter_mut().for_each(|c| *c = 0);
        logs.iter_mut().for_each(|l| *l = None);
        point[lead] = 1;
        logs[lead] = Some(0);
        loop {
            if forms.iter().all(|f| f.eval_logs(&logs) == 0) && !visit(&point) {
                return Ok(());
            }
            // Odometer over the tail, last coordinate fastest.
            let mut pos = nvars;
            let mut advanced = false;
            while pos > lead + 1 {
                pos -= 1;
                point[pos] += 1;
                if point[pos] < q {
                    logs[pos] = field.log(point[pos]);
                    advanced = true;
                    break;
                }
                point[pos] = 0;
                logs[pos] = None;
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(())
}

/// All normalized common zeros of the variety over `field` (an extension of its base).
pub fn enumerate_points(v: &Variety, field: &Field) -> Result<Vec<ProjPoint>> {
    let forms = v.compile_over(field)?;
    let mut out = Vec::new();
    scan_zeros(&forms, field, v.nvars(), |p| {
        out.push(ProjPoint { coords: p.iter().map(|&c| field.elem(c)).collect() });
        true
    })?;
    Ok(out)
}

/// The first common zero over `field`, if any.
pub fn first_point(v: &Variety, field: &Field) -> Result<Option<ProjPoint>> {
    let forms = v.compile_over(field)?;
    let mut found = None;
    scan_zeros(&forms, field, v.nvars(), |p| {
        found = Some(ProjPoint { coords: p.iter().map(|&c| field.elem(c)).collect() });
        false
    })?;
    Ok(found)
}

pub fn has_point_in(v: &Variety, field: &Field) -> Result<bool> {
    Ok(first_point(v, field)?.is_some())
}

/// Whether the variety has a point over the extension of degree `ext_degree`.
pub fn has_point_over(v: &Variety, ext_degree: u32) -> Result<bool> {
    if ext_degree == 0 {
        return Err(Error::InvalidParams("extension degree must be positive".into()));
    }
    has_point_in(v, &v.extension(ext_degree)?)
}

pub fn count_points(v: &Variety, field: &Field) -> Result<u64> {
    let forms = v.compile_over(field)?;
    let mut count = 0;
    scan_zeros(&forms, field, v.nvars(), |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub bound: u32,
    /// Degrees `j ≤ bound` over which the variety has a point.
    pub degrees_with_points: Vec<u32>,
    /// gcd of `degrees_with_points`, or 0 when that set is empty.
    pub index: u64,
}

impl IndexReport {
    pub fn determined(&self) -> bool {
        !self.degrees_with_points.is_empty()
    }
}

/// Index computed from extensions of degree at most `degree_bound`.
///
/// Degrees that are multiples of a degree with points are recorded without a scan, since
/// points over a subfield are points over the larger field.
pub fn index(v: &Variety, degree_bound: u32) -> Result<IndexReport> {
    if degree_bound == 0 {
        return Err(Error::InvalidParams("degree bound must be positive".into()));
    }
    let mut degrees: Vec<u32> = Vec::new();
    for j in 1..=degree_bound {
        if degrees.iter().any(|&d| j % d == 0) || has_point_over(v, j)? {
            degrees.push(j);
        }
    }
    let index = degrees.iter().fold(0u64, |g, &d| num_integer::gcd(g, d as u64));
    Ok(IndexReport { bound: degree_bound, degrees_with_points: degrees, index })
}

/// How many forms a Chevalley–Warning scan visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    All,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CwReport {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub forms_checked: u64,
    /// A nonzero form without a projective point, if one was found.
    pub counterexample: Option<Form>,
}

impl CwReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that nonzero forms of degree `d ≤ n` in `n + 1` variables over `field` have a
/// projective point, either for every form or for `count` random ones.
pub fn cw_scan<R: Rng + ?Sized>(field: &Field, n: usize, d: u32, sample: Sample, rng: &mut R) -> Result<CwReport> {
    if d as usize > n {
        return Err(Error::HypothesisViolated(format!("degree {d} exceeds n = {n}")));
    }
    if d == 0 {
        return Err(Error::InvalidParams("degree must be positive".into()));
    }
    let nvars = n + 1;
    let monos = monomials(nvars, d);
    let mut report = CwReport { q: field.order(), n, d, forms_checked: 0, counterexample: None };
    let check = |f: Form, report: &mut CwReport| -> Result<bool> {
        report.forms_checked += 1;
        let compiled = [f.compile()];
        let mut found = false;
        scan_zeros(&compiled, field, nvars, |_| {
            found = true;
            false
        })?;
        if !found {
            report.counterexample = Some(f);
        }
        Ok(found)
    };
    match sample {
        Sample::All => {
            let total = form_count(field, &monos)
                .filter(|&t| t <= 1 << 32)
                .ok_or_else(|| Error::SizeExceeded("too many forms for an exhaustive scan".into()))?;
            for idx in 1..total {
                if !check(form_from_index(field, nvars, &monos, idx), &mut report)? {
                    break;
                }
            }
        }
        Sample::Random(count) => {
            for _ in 0..count {
                let f = loop {
                    let f = random_form(field, nvars, &monos, rng);
                    if !f.is_zero() {
                        break f;
                    }
                };
                if !check(f, &mut report)? {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// A form with independent uniform coefficients on `monos`.
pub fn random_form<R: Rng + ?Sized>(field: &Field, nvars: usize, monos: &[crate::poly::Monomial], rng: &mut R) -> Form {
    let mut f = Form::zero(field, nvars);
    for m in monos {
        f.add_term(m.clone(), field.elem(rng.gen_range(0..field.order())));
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityStep {
    pub mu: u32,
    pub index_z: u64,
    pub index_prev: u64,
    pub index_mu: u64,
}

impl DivisibilityStep {
    /// `gcd(I(Z), I(Φ^(μ-1)))` divides `I(Φ^(μ))`, with 0 standing for an undetermined
    /// index (no points up to the bound).
    pub fn holds(&self) -> bool {
        let g = num_integer::gcd(self.index_z, self.index_prev);
        if g == 0 {
            self.index_mu == 0
        } else {
            self.index_mu.is_multiple_of(g)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub bound: u32,
    pub steps: Vec<DivisibilityStep>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(DivisibilityStep::holds)
    }
}

/// Index of a form; the zero form vanishes everywhere and has index 1.
fn form_index(f: &Form, bound: u32) -> Result<u64> {
    if f.is_zero() {
        return Ok(1);
    }
    Ok(index(&Variety::hypersurface(Hypersurface::new(f.clone())?), bound)?.index)
}

/// For `2 ≤ μ ≤ mu_max`, compares the indices of `Z = ∩ Z_j`, `Φ^(μ-1)` and `Φ^(μ)`
/// (`Φ^(1) = Φ`).
pub fn index_divisibility_check(
    zs: &[Hypersurface],
    phi: &Hypersurface,
    mu_max: u32,
    bound: u32,
) -> Result<DivisibilityReport> {
    let fs: Vec<Form> = zs.iter().map(|h| h.poly().clone()).collect();
    let index_z = index(&Variety::new(zs.to_vec())?, bound)?.index;
    let mut index_prev = form_index(phi.poly(), bound)?;
    let mut steps = Vec::new();
    for mu in 2..=mu_max {
        let next = lang_compose(phi.poly(), &fs, mu)?;
        let index_mu = form_index(&next, bound)?;
        steps.push(DivisibilityStep { mu, index_z, index_prev, index_mu });
        index_prev = index_mu;
    }
    Ok(DivisibilityReport { bound, steps })
}
