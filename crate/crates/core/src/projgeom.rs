//! Points and subspaces of `PG(m, q)` in canonical form.
//!
//! A point is a coordinate vector whose first nonzero entry is 1. A subspace
//! is stored by its reduced row echelon basis, so two subspaces are equal
//! exactly when their bases are equal. Projective dimension is `rank - 1`.
//! Enumeration is lexicographic on coordinates (points) or on the row-major
//! echelon basis (subspaces).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Fe, FieldCtx};
use crate::linalg::Matrix;

/// Default cap on the number of objects a single enumeration may produce.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_items: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_items: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(max_items: u128) -> Self {
        Budget { max_items }
    }

    pub fn check(&self, requested: u128) -> Result<()> {
        if requested > self.max_items {
            Err(Error::BudgetExceeded { requested, limit: self.max_items })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<Fe>,
}

impl ProjPoint {
    /// Normalizes `coords` so that its first nonzero entry is 1.
    pub fn new(f: &FieldCtx, coords: Vec<Fe>) -> Result<Self> {
        let lead = coords.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = f.inv(lead).unwrap();
        Ok(ProjPoint { coords: coords.into_iter().map(|x| f.mul(inv, x)).collect() })
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    /// Length of the coordinate vector (`m + 1` in `PG(m, q)`).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn into_coords(self) -> Vec<Fe> {
        self.coords
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the given row vectors; errors if they are all zero.
    pub fn from_rows(f: &FieldCtx, rows: &[Vec<Fe>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        let m = Matrix::from_rows(rows)?;
        let (basis, pivots) = m.rref(f);
        if pivots.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Subspace { basis })
    }

    pub fn point(p: &ProjPoint) -> Self {
        Subspace { basis: Matrix::new(1, p.len(), p.coords.clone()).expect("shape") }
    }

    /// Wraps a matrix already in reduced row echelon form with full rank.
    pub(crate) fn from_rref(basis: Matrix) -> Self {
        Subspace { basis }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.rows() - 1
    }

    /// Length of coordinate vectors in the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.basis.cols()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rank()).map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    /// Whether the vector lies in the underlying vector subspace.
    pub fn contains_vector(&self, f: &FieldCtx, v: &[Fe]) -> bool {
        if v.len() != self.ambient_len() {
            return false;
        }
        let mut w = v.to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(r).iter().enumerate() {
                w[j] = f.sub(w[j], f.mul(c, *x));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_point(&self, f: &FieldCtx, p: &ProjPoint) -> bool {
        self.contains_vector(f, p.coords())
    }

    pub fn contains(&self, f: &FieldCtx, other: &Subspace) -> bool {
        (0..other.rank()).all(|r| self.contains_vector(f, other.basis.row(r)))
    }

    /// All vectors `Σ c_i b_i` of the underlying vector space, zero included.
    pub fn vectors(&self, f: &FieldCtx) -> Vec<Vec<Fe>> {
        let q = f.order() as u64;
        let k = self.rank();
        let n = self.ambient_len();
        (0..q.pow(k as u32))
            .map(|mut v| {
                let mut out = vec![Fe::ZERO; n];
                for r in (0..k).rev() {
                    let c = Fe((v % q) as u16);
                    v /= q;
                    if c.is_zero() {
                        continue;
                    }
                    for (j, o) in out.iter_mut().enumerate() {
                        *o = f.add(*o, f.mul(c, self.basis.get(r, j)));
                    }
                }
                out
            })
            .collect()
    }

    /// The points of this subspace, sorted.
    pub fn points(&self, f: &FieldCtx) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = normalized_vectors(f, self.rank())
            .into_iter()
            .map(|c| {
                let mut out = vec![Fe::ZERO; self.ambient_len()];
                for (r, &x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, o) in out.iter_mut().enumerate() {
                        *o = f.add(*o, f.mul(x, self.basis.get(r, j)));
                    }
                }
                ProjPoint { coords: out }
            })
            .collect();
        pts.sort();
        pts
    }
}

/// Nonzero vectors of length `len` whose first nonzero entry is 1, sorted.
fn normalized_vectors(f: &FieldCtx, len: usize) -> Vec<Vec<Fe>> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for lead in 0..len {
        let free = len - lead - 1;
        for mut v in 0..q.pow(free as u32) {
            let mut c = vec![Fe::ZERO; len];
            c[lead] = Fe::ONE;
            for slot in c[lead + 1..].iter_mut().rev() {
                *slot = Fe((v % q) as u16);
                v /= q;
            }
            out.push(c);
        }
    }
    out.sort();
    out
}

fn checked_pow(q: u128, e: u32) -> Result<u128> {
    q.checked_pow(e).ok_or(Error::Overflow("power"))
}

/// Number of `(k-1)`-dimensional subspaces of `PG(m-1, q)`.
pub fn gaussian_binomial(m: u32, k: u32, q: u64) -> Result<u128> {
    if k > m {
        return Err(Error::InvalidArgument(format!("gaussian binomial [{m} over {k}] needs k <= m")));
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(checked_pow(q, m - i)? - 1).ok_or(Error::Overflow("gaussian binomial"))?;
        den = den.checked_mul(checked_pow(q, i + 1)? - 1).ok_or(Error::Overflow("gaussian binomial"))?;
    }
    Ok(num / den)
}

/// All points of `PG(m, q)` in lexicographic order.
pub fn enumerate_points(m: usize, f: &FieldCtx, budget: Budget) -> Result<Vec<ProjPoint>> {
    budget.check(gaussian_binomial(m as u32 + 1, 1, f.order() as u64)?)?;
    Ok(normalized_vectors(f, m + 1).into_iter().map(|coords| ProjPoint { coords }).collect())
}

/// All subspaces of vector dimension `rank` in `F_q^len`, sorted by echelon basis.
pub fn enumerate_subspaces(len: usize, rank: usize, f: &FieldCtx, budget: Budget) -> Result<Vec<Subspace>> {
    if rank == 0 || rank > len {
        return Err(Error::InvalidArgument(format!("no subspaces of rank {rank} in dimension {len}")));
    }
    budget.check(gaussian_binomial(len as u32, rank as u32, f.order() as u64)?)?;
    let q = f.order() as u64;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(rank);
    pivot_sets(len, rank, 0, &mut pivots, &mut |piv: &[usize]| {
        // free slots: (row r, column c) with c > piv[r] and c not a pivot
        let slots: Vec<(usize, usize)> =
            (0..rank).flat_map(|r| ((piv[r] + 1)..len).filter(|c| !piv.contains(c)).map(move |c| (r, c))).collect();
        for mut v in 0..q.pow(slots.len() as u32) {
            let mut m = Matrix::zeros(rank, len);
            for (r, &c) in piv.iter().enumerate() {
                m.set(r, c, Fe::ONE);
            }
            for &(r, c) in slots.iter().rev() {
                m.set(r, c, Fe((v % q) as u16));
                v /= q;
            }
            out.push(Subspace { basis: m });
        }
    });
    out.sort();
    Ok(out)
}

fn pivot_sets(len: usize, rank: usize, start: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if cur.len() == rank {
        emit(cur);
        return;
    }
    let remaining = rank - cur.len();
    for c in start..=(len - remaining) {
        cur.push(c);
        pivot_sets(len, rank, c + 1, cur, emit);
        cur.pop();
    }
}

/// Input to [`span`].
#[derive(Clone, Copy, Debug)]
pub enum SpanItem<'a> {
    Point(&'a ProjPoint),
    Subspace(&'a Subspace),
}

/// Smallest subspace containing every input.
pub fn span(f: &FieldCtx, items: &[SpanItem<'_>]) -> Result<Subspace> {
    let first_len = match items.first() {
        None => return Err(Error::EmptyInput),
        Some(SpanItem::Point(p)) => p.len(),
        Some(SpanItem::Subspace(s)) => s.ambient_len(),
    };
    let mut rows = Vec::new();
    for it in items {
        match it {
            SpanItem::Point(p) => {
                if p.len() != first_len {
                    return Err(Error::DimensionMismatch { expected: first_len, got: p.len() });
                }
                rows.push(p.coords().to_vec());
            }
            SpanItem::Subspace(s) => {
                if s.ambient_len() != first_len {
                    return Err(Error::DimensionMismatch { expected: first_len, got: s.ambient_len() });
                }
                rows.extend(s.basis().row_vecs());
            }
        }
    }
    Subspace::from_rows(f, &rows)
}

pub fn span_points(f: &FieldCtx, points: &[ProjPoint]) -> Result<Subspace> {
    let items: Vec<SpanItem<'_>> = points.iter().map(SpanItem::Point).collect();
    span(f, &items)
}

pub fn join(f: &FieldCtx, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    span(f, &[SpanItem::Subspace(a), SpanItem::Subspace(b)])
}

/// Rank of the join of two subspaces without materialising it.
pub fn join_rank(f: &FieldCtx, a: &Subspace, b: &Subspace) -> usize {
    let mut rows = a.basis().row_vecs();
    rows.extend(b.basis().row_vecs());
    Matrix::from_rows(&rows).map(|m| m.rank(f)).unwrap_or(0)
}

/// Intersection of two subspaces (Zassenhaus), `None` when they are disjoint.
pub fn intersect(f: &FieldCtx, a: &Subspace, b: &Subspace) -> Result<Option<Subspace>> {
    let n = a.ambient_len();
    if b.ambient_len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.ambient_len() });
    }
    let mut rows = Vec::with_capacity(a.rank() + b.rank());
    for r in 0..a.rank() {
        let mut row = a.basis().row(r).to_vec();
        row.extend_from_slice(a.basis().row(r));
        rows.push(row);
    }
    for r in 0..b.rank() {
        let mut row = b.basis().row(r).to_vec();
        row.extend(std::iter::repeat_n(Fe::ZERO, n));
        rows.push(row);
    }
    let (red, _) = Matrix::from_rows(&rows)?.rref(f);
    let inter: Vec<Vec<Fe>> = (0..red.rows())
        .filter(|&r| red.row(r)[..n].iter().all(|x| x.is_zero()))
        .map(|r| red.row(r)[n..].to_vec())
        .collect();
    if inter.is_empty() {
        Ok(None)
    } else {
        Subspace::from_rows(f, &inter).map(Some)
    }
}

/// A frame: `m + 2` points of `PG(m, q)`, any `m + 1` of which span the space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    points: Vec<ProjPoint>,
}

impl Frame {
    pub fn new(f: &FieldCtx, points: Vec<ProjPoint>) -> Result<Self> {
        let m = points.first().ok_or(Error::EmptyInput)?.len() - 1;
        if !is_frame(f, &points, m)? {
            return Err(Error::InvalidArgument("points do not form a frame".into()));
        }
        Ok(Frame { points })
    }

    /// `e_0, ..., e_m` and the all-ones point.
    pub fn standard(m: usize) -> Self {
        let mut points: Vec<ProjPoint> = (0..=m)
            .map(|i| {
                let mut c = vec![Fe::ZERO; m + 1];
                c[i] = Fe::ONE;
                ProjPoint { coords: c }
            })
            .collect();
        points.push(ProjPoint { coords: vec![Fe::ONE; m + 1] });
        Frame { points }
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 2
    }
}

pub fn is_frame(f: &FieldCtx, points: &[ProjPoint], m: usize) -> Result<bool> {
    if points.len() != m + 2 {
        return Err(Error::DimensionMismatch { expected: m + 2, got: points.len() });
    }
    if let Some(p) = points.iter().find(|p| p.len() != m + 1) {
        return Err(Error::DimensionMismatch { expected: m + 1, got: p.len() });
    }
    for skip in 0..points.len() {
        let rows: Vec<Vec<Fe>> =
            points.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p.coords().to_vec()).collect();
        if Matrix::from_rows(&rows)?.rank(f) != m + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scaled basis vectors `v_0..v_m` with `v_i ∝ P_i` and `Σ v_i ∝ P_{m+1}`.
pub fn frame_basis(f: &FieldCtx, frame: &Frame) -> Result<Vec<Vec<Fe>>> {
    let m = frame.dim();
    let pts = frame.points();
    // solve Σ c_i P_i = P_{m+1}: columns are the P_i
    let mut a = Matrix::zeros(m + 1, m + 2);
    for (i, p) in pts[..=m].iter().enumerate() {
        for (r, &x) in p.coords().iter().enumerate() {
            a.set(r, i, x);
        }
    }
    for (r, &x) in pts[m + 1].coords().iter().enumerate() {
        a.set(r, m + 1, x);
    }
    let (red, pivots) = a.rref(f);
    if pivots.len() != m + 1 || pivots.contains(&(m + 1)) {
        return Err(Error::InvalidArgument("points do not form a frame".into()));
    }
    Ok((0..=m)
        .map(|i| {
            let c = red.get(i, m + 1);
            pts[i].coords().iter().map(|&x| f.mul(c, x)).collect()
        })
        .collect())
}

/// Points whose coordinates relative to `frame` lie in the subfield of order `sub_order`.
pub fn subgeometry_points(f: &FieldCtx, sub_order: u64, frame: &Frame) -> Result<BTreeSet<ProjPoint>> {
    let sub = f.subfield_elements(sub_order)?;
    let basis = frame_basis(f, frame)?;
    let m = frame.dim();
    let len = m + 1;
    let mut out = BTreeSet::new();
    // normalized coefficient vectors over the subfield
    let q0 = sub.len() as u64;
    for lead in 0..len {
        let free = len - lead - 1;
        for mut v in 0..q0.pow(free as u32) {
            let mut c = vec![Fe::ZERO; len];
            c[lead] = Fe::ONE;
            for slot in c[lead + 1..].iter_mut().rev() {
                *slot = sub[(v % q0) as usize];
                v /= q0;
            }
            let mut x = vec![Fe::ZERO; len];
            for (i, &ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, xj) in x.iter_mut().enumerate() {
                    *xj = f.add(*xj, f.mul(ci, basis[i][j]));
                }
            }
            out.insert(ProjPoint::new(f, x)?);
        }
    }
    Ok(out)
}
