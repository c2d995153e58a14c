//! Text formats: field orders, lists, and forms written as `2*X0^2 + X0*X1 + X1^2`.

use std::fmt::Write as _;

use kklab_core::field::make_field_capped;
use kklab_core::poly::{Form, Monomial};
use kklab_core::{Field, FieldElem};

use crate::error::{KklabError, Result};

/// Splits `q` into `(p, n)` with `q = p^n`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((u32::try_from(p).ok()?, n))
}

/// `9` or `3^2`.
pub fn parse_field_order(text: &str) -> Result<(u32, u32)> {
    let text = text.trim();
    let bad = || KklabError::config(format!("`{text}` is not a prime power"));
    let (p, n) = match text.split_once('^') {
        Some((p, n)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            match prime_power(p) {
                Some((pp, 1)) if n > 0 => (pp, n),
                _ => return Err(bad()),
            }
        }
        None => prime_power(text.parse().map_err(|_| bad())?).ok_or_else(bad)?,
    };
    Ok((p, n))
}

pub fn build_field(p: u32, n: u32, cap: u64) -> Result<Field> {
    make_field_capped(p, n, cap).map_err(|e| KklabError::core(format!("field {p}^{n}"), e))
}

/// A field order such as `9`, built under `cap`.
pub fn parse_field(text: &str, cap: u64) -> Result<Field> {
    let (p, n) = parse_field_order(text)?;
    build_field(p, n, cap)
}

/// Comma- or space-separated items, empty entries dropped.
pub fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty())
}

pub fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    split_list(text)
        .map(|s| s.parse().map_err(|_| KklabError::config(format!("`{s}` is not a non-negative integer"))))
        .collect()
}

/// `l/k` pairs of field orders such as `9/3`.
pub fn parse_extension(text: &str, cap: u64) -> Result<(Field, Field)> {
    let (l, k) =
        text.split_once('/').ok_or_else(|| KklabError::config(format!("`{text}` is not an extension `l/k`")))?;
    Ok((parse_field(l, cap)?, parse_field(k, cap)?))
}

/// Inverse of [`parse_form`]. Coefficients are element indices; a coefficient 1 is left
/// out in front of a monomial.
pub fn form_to_text(f: &Form) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        let vars: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("X{i}") } else { format!("X{i}^{e}") })
            .collect();
        if vars.is_empty() {
            let _ = write!(out, "{}", c.index());
        } else {
            if !c.is_one() {
                let _ = write!(out, "{}*", c.index());
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}

/// Parses a sum of terms `c*X0^a*X1^b`. Coefficients are element indices below `q` or
/// coordinate vectors `[c0,c1,…]` in the power basis; a leading `-` negates a term.
/// Variables are `X<i>` or `x<i>`, and `nvars` of `None` means one more than the largest
/// index that occurs.
pub fn parse_form(field: &Field, text: &str, nvars: Option<usize>) -> Result<Form> {
    let bad = |msg: String| KklabError::config(format!("form `{text}`: {msg}"));
    let mut terms: Vec<(Vec<(usize, u32)>, FieldElem)> = Vec::new();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad("empty".into()));
    }
    let mut pieces: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes = cleaned.as_bytes();
    let mut depth = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > start {
                    pieces.push((negative, &cleaned[start..i]));
                } else if i > 0 {
                    return Err(bad("empty term".into()));
                }
                negative = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= cleaned.len() {
        return Err(bad("trailing sign".into()));
    }
    pieces.push((negative, &cleaned[start..]));
    for (neg, piece) in pieces {
        let mut coeff = field.one();
        let mut vars = Vec::new();
        for factor in piece.split('*') {
            if let Some(rest) = factor.strip_prefix(['X', 'x']) {
                let (var, exp) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad(format!("exponent in `{factor}`")))?),
                    None => (rest, 1),
                };
                let var: usize = var.parse().map_err(|_| bad(format!("variable `{factor}`")))?;
                vars.push((var, exp));
            } else if let Some(inner) = factor.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let coords: Vec<u32> = parse_u64_list(inner)?
                    .into_iter()
                    .map(|c| u32::try_from(c).map_err(|_| bad(format!("coordinate {c}"))))
                    .collect::<Result<_>>()?;
                let c = field.from_coords(&coords).map_err(|e| KklabError::core(format!("form `{text}`"), e))?;
                coeff = coeff.try_mul(&c).expect("same field");
            } else {
                let c: u64 = factor.parse().map_err(|_| bad(format!("factor `{factor}`")))?;
                if c >= field.order() as u64 {
                    return Err(bad(format!("coefficient index {c} is not below {}", field.order())));
                }
                coeff = coeff.try_mul(&field.elem(c as u32)).expect("same field");
            }
        }
        if neg {
            coeff = field.elem(field.neg(coeff.index()));
        }
        terms.push((vars, coeff));
    }
    let max_var = terms.iter().flat_map(|(v, _)| v.iter().map(|&(i, _)| i + 1)).max().unwrap_or(0);
    let nvars = match nvars {
        Some(n) if n < max_var => return Err(bad(format!("uses X{} but has only {n} variables", max_var - 1))),
        Some(n) => n,
        None => max_var.max(1),
    };
    let mut form = Form::zero(field, nvars);
    for (vars, c) in terms {
        let mut exps = vec![0u32; nvars];
        for (i, e) in vars {
            exps[i] += e;
        }
        form.add_term(Monomial::new(exps), c);
    }
    Ok(form)
}
