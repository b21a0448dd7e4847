//! Exact arithmetic in small finite fields.
//!
//! A [`FieldCtx`] is either a prime field `F_p` or a simple extension
//! `B[x]/(f)` of another context `B`. Elements are handles ([`Fe`]) whose
//! integer value packs the power-basis coefficients over the immediate base,
//! lowest degree first: `c_0 + c_1 Q + c_2 Q^2 + ...` with `Q = |B|`. For a
//! tower `F_p ⊂ F_q ⊂ F_{q^t}` the base-`p` digits of the packed value are
//! the flattened power-basis coefficients, so element order is the order of
//! the coefficient vectors read from the highest degree down.
//!
//! Full addition and multiplication tables are computed once from the
//! polynomial arithmetic. There are no logarithm tables.

mod companion;
mod poly;
mod spec;

pub use companion::CompanionAlgebra;
pub use poly::{format_poly, is_irreducible, least_irreducible, poly_divrem, poly_eval, poly_mul};
pub use spec::{field_spec_string, parse_field_spec};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which operation tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// A field element handle, valid only together with the [`FieldCtx`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conway polynomials for every prime power `p^h <= 81`, coefficients low to high.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// Returns the built-in defining polynomial of `F_{p^h}` if one is tabulated.
pub fn conway_polynomial(p: u32, h: u32) -> Option<&'static [u32]> {
    CONWAY.iter().find(|(cp, ch, _)| *cp == p && *ch == h).map(|(_, _, c)| *c)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^h` into `(p, h)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, h))
}

/// A finite field with precomputed operation tables.
pub struct FieldCtx {
    p: u32,
    degree: u32,
    order: u32,
    base: Option<Field>,
    modulus: Vec<Fe>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || **a == **b,
                _ => false,
            }
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(p as u64, MAX_FIELD_ORDER as u64));
        }
        let n = p as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u16;
                mul[a * n + b] = ((a * b) % n) as u16;
            }
        }
        Ok(Arc::new(Self::from_tables(p, 1, p, None, Vec::new(), add, mul)))
    }

    /// The extension `base[x]/(modulus)`; `modulus` is given low to high and
    /// must be monic and irreducible over `base`.
    pub fn extension(base: &Field, modulus: &[Fe]) -> Result<Field> {
        let modulus = poly::trim(modulus.to_vec());
        let deg = modulus.len().saturating_sub(1);
        if deg == 0 {
            return Err(Error::InvalidArgument("modulus must have positive degree".into()));
        }
        if *modulus.last().unwrap() != Fe::ONE {
            return Err(Error::NotMonic);
        }
        let order = (base.order as u64).pow(deg as u32);
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge(order, MAX_FIELD_ORDER as u64));
        }
        if !poly::is_irreducible(base, &modulus) {
            return Err(Error::Reducible(poly::format_poly(&modulus)));
        }
        let order = order as u32;
        let n = order as usize;
        let bq = base.order as usize;
        let digits = |mut v: usize| -> Vec<Fe> {
            let mut out = Vec::with_capacity(deg);
            for _ in 0..deg {
                out.push(Fe((v % bq) as u16));
                v /= bq;
            }
            out
        };
        let pack = |c: &[Fe]| -> u16 {
            let mut v = 0usize;
            for x in c.iter().rev() {
                v = v * bq + x.index();
            }
            v as u16
        };
        let vecs: Vec<Vec<Fe>> = (0..n).map(digits).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let s: Vec<Fe> = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| base.add(*x, *y)).collect();
                let prod = poly::poly_mul(base, &vecs[a], &vecs[b]);
                let (_, mut r) = poly::poly_divrem(base, &prod, &modulus);
                r.resize(deg, Fe::ZERO);
                let sv = pack(&s);
                let pv = pack(&r);
                add[a * n + b] = sv;
                add[b * n + a] = sv;
                mul[a * n + b] = pv;
                mul[b * n + a] = pv;
            }
        }
        Ok(Arc::new(Self::from_tables(base.p, base.degree * deg as u32, order, Some(base.clone()), modulus, add, mul)))
    }

    /// `F_{p^h}` over `F_p` with the given monic modulus (coefficients mod p, low to high).
    pub fn with_modulus(p: u32, h: u32, modulus: &[u32]) -> Result<Field> {
        let prime = Self::prime(p)?;
        if h == 1 && modulus.is_empty() {
            return Ok(prime);
        }
        if modulus.len() != h as usize + 1 {
            return Err(Error::DegreeMismatch { expected: h as usize, got: modulus.len().saturating_sub(1) });
        }
        if modulus[h as usize] % p != 1 {
            return Err(Error::NotMonic);
        }
        let coeffs: Vec<Fe> = modulus.iter().map(|&c| Fe((c % p) as u16)).collect();
        Self::extension(&prime, &coeffs)
    }

    /// `F_q` with the default defining polynomial: the tabulated Conway polynomial
    /// when available, the least irreducible otherwise.
    pub fn gf(q: u64) -> Result<Field> {
        let (p, h) = prime_power(q)?;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge(q, MAX_FIELD_ORDER as u64));
        }
        let prime = Self::prime(p)?;
        if h == 1 {
            return Ok(prime);
        }
        match conway_polynomial(p, h) {
            Some(c) => Self::with_modulus(p, h, c),
            None => {
                let f = poly::least_irreducible(&prime, h as usize);
                Self::extension(&prime, &f)
            }
        }
    }

    fn from_tables(
        p: u32,
        degree: u32,
        order: u32,
        base: Option<Field>,
        modulus: Vec<Fe>,
        add: Vec<u16>,
        mul: Vec<u16>,
    ) -> Self {
        let n = order as usize;
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u16;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        FieldCtx { p, degree, order, base, modulus, add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The immediate base field, `None` for a prime field.
    pub fn base(&self) -> Option<&Field> {
        self.base.as_ref()
    }

    /// Monic modulus over the immediate base (empty for a prime field).
    pub fn modulus(&self) -> &[Fe] {
        &self.modulus
    }

    /// Degree over the immediate base.
    pub fn relative_degree(&self) -> usize {
        if self.modulus.is_empty() {
            1
        } else {
            self.modulus.len() - 1
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order as u16).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.order as u16).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.index() * self.order as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.index() * self.order as usize + b.index()])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            None
        } else {
            Some(Fe(self.inv[a.index()]))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^l)` with `l` taken modulo the degree over the prime field.
    pub fn frobenius(&self, a: Fe, l: i64) -> Fe {
        let l = l.rem_euclid(self.degree as i64) as u32;
        let mut x = a;
        for _ in 0..l {
            x = self.pow(x, self.p as u64);
        }
        x
    }

    /// Base-`p` digits of the packed value, lowest first (length = degree).
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0 as u32;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() != self.degree as usize {
            return Err(Error::DimensionMismatch { expected: self.degree as usize, got: coeffs.len() });
        }
        let mut v: u32 = 0;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidArgument(format!("coefficient {c} not reduced mod {}", self.p)));
            }
            v = v * self.p + c;
        }
        Ok(Fe(v as u16))
    }

    /// Coefficients over the immediate base, lowest first.
    pub fn base_coeffs(&self, a: Fe) -> Vec<Fe> {
        let bq = self.base.as_ref().map_or(self.order, |b| b.order) as u16;
        let d = self.relative_degree();
        let mut v = a.0;
        (0..d)
            .map(|_| {
                let c = Fe(v % bq);
                v /= bq;
                c
            })
            .collect()
    }

    pub fn from_base_coeffs(&self, coeffs: &[Fe]) -> Result<Fe> {
        let d = self.relative_degree();
        if coeffs.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: coeffs.len() });
        }
        let bq = self.base.as_ref().map_or(self.order, |b| b.order);
        let mut v: u32 = 0;
        for c in coeffs.iter().rev() {
            v = v * bq + c.0 as u32;
        }
        Ok(Fe(v as u16))
    }

    /// The residue class of `x` (the generator over the immediate base).
    pub fn generator(&self) -> Fe {
        match &self.base {
            None => Fe::ONE,
            // x ≡ -m_0 for a linear modulus
            Some(_) if self.relative_degree() == 1 => self.neg(self.modulus[0]),
            Some(b) => Fe(b.order as u16),
        }
    }

    /// Elements of the subfield of order `q0`, i.e. the roots of `X^{q0} - X`.
    pub fn subfield_elements(&self, q0: u64) -> Result<Vec<Fe>> {
        let (p0, d) = prime_power(q0)?;
        if p0 != self.p || !self.degree.is_multiple_of(d) {
            return Err(Error::InvalidArgument(format!("F_{q0} is not a subfield of F_{}", self.order)));
        }
        Ok(self.elements().filter(|&a| self.pow(a, q0) == a).collect())
    }

    /// Degree over `F_p` of the smallest subfield containing all of `elems`.
    pub fn generated_subfield_degree(&self, elems: &[Fe]) -> u32 {
        (1..=self.degree)
            .filter(|d| self.degree.is_multiple_of(*d))
            .find(|&d| {
                let q0 = (self.p as u64).pow(d);
                elems.iter().all(|&a| self.pow(a, q0) == a)
            })
            .unwrap_or(self.degree)
    }

    pub fn element(self: &Arc<Self>, value: Fe) -> Result<FieldElement> {
        if value.0 as u32 >= self.order {
            return Err(Error::InvalidArgument(format!("{} is not an element of F_{}", value.0, self.order)));
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Human-readable polynomial form over the immediate base.
    pub fn format(&self, a: Fe) -> String {
        if self.base.is_none() {
            return a.0.to_string();
        }
        format_poly(&self.base_coeffs(a))
    }
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element bundled with its field, for checked arithmetic across API boundaries.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({} in F_{})", self.field.format(self.value), self.field.order)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    /// Power-basis coefficients over `F_p`.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn frobenius(&self, l: i64) -> FieldElement {
        FieldElement { field: self.field.clone(), value: self.field.frobenius(self.value, l) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !(Arc::ptr_eq(&a.field, &b.field) || *a.field == *b.field) {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value).ok_or(Error::DivisionByZero)?,
    };
    Ok(FieldElement { field: f.clone(), value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        [2u64, 3, 4, 5, 7, 8, 9].iter().map(|&q| FieldCtx::gf(q).unwrap()).collect()
    }

    #[test]
    fn char_two_addition() {
        let f2 = FieldCtx::prime(2).unwrap();
        let one = f2.element(Fe::ONE).unwrap();
        let sum = field_arith(&one, &one, ArithOp::Add).unwrap();
        assert_eq!(sum.value(), Fe::ZERO);
    }

    #[test]
    fn f4_x_squared_is_x_plus_one() {
        let f4 = FieldCtx::with_modulus(2, 2, &[1, 1, 1]).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        assert_eq!(f4.coeffs(f4.frobenius(x, 1)), vec![1, 1]);
    }

    #[test]
    fn f3_self_division() {
        let f3 = FieldCtx::prime(3).unwrap();
        let two = f3.element(Fe(2)).unwrap();
        assert_eq!(field_arith(&two, &two, ArithOp::Div).unwrap().value(), Fe::ONE);
        let zero = f3.element(Fe::ZERO).unwrap();
        assert_eq!(field_arith(&two, &zero, ArithOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = FieldCtx::prime(2).unwrap().element(Fe::ONE).unwrap();
        let b = FieldCtx::prime(3).unwrap().element(Fe::ONE).unwrap();
        assert_eq!(field_arith(&a, &b, ArithOp::Mul), Err(Error::FieldMismatch));
        // structurally equal contexts are interchangeable
        let c = FieldCtx::prime(2).unwrap().element(Fe::ONE).unwrap();
        assert!(field_arith(&a, &c, ArithOp::Mul).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_has_order_degree() {
        for f in all_fields() {
            let h = f.degree() as i64;
            for a in f.elements() {
                assert_eq!(f.frobenius(a, 0), a);
                assert_eq!(f.frobenius(f.frobenius(a, 1), h - 1), a);
                assert_eq!(f.frobenius(a, -1), f.frobenius(a, h - 1));
                assert_eq!(f.frobenius(a, h), a);
            }
        }
    }

    #[test]
    fn conway_table_is_irreducible() {
        for &(p, h, c) in CONWAY {
            FieldCtx::with_modulus(p, h, c).unwrap();
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(FieldCtx::with_modulus(2, 2, &[1, 0, 1]), Err(Error::Reducible(_))));
        assert_eq!(FieldCtx::with_modulus(2, 2, &[1, 1, 0]).err(), Some(Error::NotMonic));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(81).unwrap(), (3, 4));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn subfields() {
        let f16 = FieldCtx::gf(16).unwrap();
        assert_eq!(f16.subfield_elements(4).unwrap().len(), 4);
        assert_eq!(f16.subfield_elements(2).unwrap(), vec![Fe(0), Fe(1)]);
        assert!(f16.subfield_elements(8).is_err());
        let f9 = FieldCtx::gf(9).unwrap();
        assert_eq!(f9.generated_subfield_degree(&[Fe(0), Fe(1), Fe(2)]), 1);
        assert_eq!(f9.generated_subfield_degree(&[Fe(3)]), 2);
    }

    #[test]
    fn tower_coefficients_flatten() {
        let f4 = FieldCtx::gf(4).unwrap();
        // F_16 = F_4[y]/(y^2 + y + w) with w the generator of F_4
        let w = f4.generator();
        let f16 = FieldCtx::extension(&f4, &[w, Fe::ONE, Fe::ONE]).unwrap();
        assert_eq!(f16.order(), 16);
        assert_eq!(f16.degree(), 4);
        let y = f16.generator();
        assert_eq!(f16.base_coeffs(y), vec![Fe::ZERO, Fe::ONE]);
        assert_eq!(f16.coeffs(y), vec![0, 0, 1, 0]);
        // base elements embed as constants
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(f16.mul(a, b), f4.mul(a, b));
                assert_eq!(f16.add(a, b), f4.add(a, b));
            }
        }
    }
}
