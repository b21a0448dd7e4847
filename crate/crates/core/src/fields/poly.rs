//! Dense univariate polynomials over a [`FieldCtx`], coefficients low to high.

use super::{Fe, FieldCtx};

pub(crate) fn trim(mut a: Vec<Fe>) -> Vec<Fe> {
    while a.last() == Some(&Fe::ZERO) {
        a.pop();
    }
    a
}

pub fn poly_mul(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub fn poly_divrem(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(*b.last().unwrap()).unwrap();
    let mut q = vec![Fe::ZERO; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn poly_eval(f: &FieldCtx, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// All monic polynomials of the given degree, in packed-coefficient order.
pub(crate) fn monic_polys(f: &FieldCtx, deg: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = f.order() as u64;
    let count = q.pow(deg as u32);
    (0..count).map(move |mut v| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(Fe((v % q) as u16));
            v /= q;
        }
        c.push(Fe::ONE);
        c
    })
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(f: &FieldCtx, a: &[Fe]) -> bool {
    let a = trim(a.to_vec());
    if a.len() < 2 {
        return false;
    }
    let deg = a.len() - 1;
    (1..=deg / 2).all(|k| monic_polys(f, k).all(|d| !poly_divrem(f, &a, &d).1.is_empty()))
}

/// The least monic irreducible polynomial of degree `deg` in packed-coefficient order.
pub fn least_irreducible(f: &FieldCtx, deg: usize) -> Vec<Fe> {
    monic_polys(f, deg).find(|c| is_irreducible(f, c)).expect("irreducible polynomials exist in every degree")
}

/// Formats coefficients (low to high) as e.g. `x2+x+1`; coefficients print as packed integers.
pub fn format_poly(a: &[Fe]) -> String {
    let mut terms = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = if c.0 == 1 && i > 0 { String::new() } else { c.0.to_string() };
        let term = match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles_small() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(format_poly(&least_irreducible(&f2, 2)), "x2+x+1");
        assert_eq!(format_poly(&least_irreducible(&f2, 3)), "x3+x+1");
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(format_poly(&least_irreducible(&f3, 2)), "x2+1");
    }

    #[test]
    fn divrem_reconstructs() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = vec![Fe(3), Fe(0), Fe(4), Fe(1), Fe(2)];
        let b = vec![Fe(1), Fe(2), Fe(3)];
        let (q, r) = poly_divrem(&f5, &a, &b);
        assert!(r.len() < b.len());
        let back = poly_mul(&f5, &q, &b);
        let mut sum = vec![Fe::ZERO; a.len()];
        for (i, c) in back.iter().enumerate() {
            sum[i] = f5.add(sum[i], *c);
        }
        for (i, c) in r.iter().enumerate() {
            sum[i] = f5.add(sum[i], *c);
        }
        assert_eq!(trim(sum), a);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_2 is (16 - 4) / 4 = 3
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(monic_polys(&f2, 4).filter(|c| is_irreducible(&f2, c)).count(), 3);
        // degree 2 over F_3: (9 - 3) / 2 = 3
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(monic_polys(&f3, 2).filter(|c| is_irreducible(&f3, c)).count(), 3);
    }
}
