//! Parser for textual field specifications.
//!
//! Grammar:
//!
//! ```text
//! spec  := order [ "/" poly ]
//! order := q | p "^" h
//! poly  := term ( "+" term )*
//! term  := coef | [coef] "x" [ ["^"] exp ]
//! ```
//!
//! Coefficients are residues mod `p`; the polynomial must be monic of degree `h`.
//! Without a polynomial the built-in default for `F_q` is used.

use super::{format_poly, prime_power, Field, FieldCtx};
use crate::error::{Error, Result};

pub fn parse_field_spec(spec: &str) -> Result<Field> {
    let err = |msg: &str| Error::FieldSpec(spec.to_string(), msg.to_string());
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (order, poly) = match s.split_once('/') {
        Some((o, p)) => (o, Some(p)),
        None => (s.as_str(), None),
    };
    let (p, h) = match order.split_once('^') {
        Some((p, h)) => {
            let p: u32 = p.parse().map_err(|_| err("bad characteristic"))?;
            let h: u32 = h.parse().map_err(|_| err("bad exponent"))?;
            if h == 0 {
                return Err(err("exponent must be positive"));
            }
            (p, h)
        }
        None => {
            let q: u64 = order.parse().map_err(|_| err("bad field order"))?;
            prime_power(q)?
        }
    };
    match poly {
        None => FieldCtx::gf((p as u64).pow(h)),
        Some(text) => {
            let coeffs = parse_poly(text, p).map_err(|m| err(&m))?;
            if coeffs.len() != h as usize + 1 {
                return Err(Error::DegreeMismatch { expected: h as usize, got: coeffs.len().saturating_sub(1) });
            }
            FieldCtx::with_modulus(p, h, &coeffs)
        }
    }
}

/// The specification string that [`parse_field_spec`] maps back to `f`. Only
/// fields built directly over their prime field have one.
pub fn field_spec_string(f: &FieldCtx) -> Result<String> {
    if f.degree() == 1 {
        return Ok(f.characteristic().to_string());
    }
    if f.relative_degree() != f.degree() as usize {
        return Err(Error::InvalidArgument("relative extensions have no field specification".into()));
    }
    Ok(format!("{}^{}/{}", f.characteristic(), f.degree(), format_poly(f.modulus())))
}

/// Parses `x2+x+1`-style polynomials into coefficients mod `p`, low to high.
pub(crate) fn parse_poly(text: &str, p: u32) -> std::result::Result<Vec<u32>, String> {
    if text.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<u32> = Vec::new();
    for term in text.split('+') {
        if term.is_empty() {
            return Err("empty term".into());
        }
        let (coef, exp) = match term.find('x') {
            None => (term.parse::<u32>().map_err(|_| format!("bad term {term:?}"))?, 0usize),
            Some(pos) => {
                let c = &term[..pos];
                let c =
                    if c.is_empty() { 1 } else { c.parse::<u32>().map_err(|_| format!("bad coefficient {c:?}"))? };
                let e = term[pos + 1..].trim_start_matches('^');
                let e = if e.is_empty() { 1 } else { e.parse::<usize>().map_err(|_| format!("bad exponent {e:?}"))? };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + coef) % p;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}
