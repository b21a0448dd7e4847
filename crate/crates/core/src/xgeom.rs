//! The geometry `X(n, t, q)` inside `PG(n+t, q)`.
//!
//! Coordinates are `X_0, ..., X_{n+t}`. The fixed `n`-space `π` is
//! `X_0 = ... = X_{t-1} = 0`, so its points look like `(0, ..., 0, b_0, ..., b_n)`.
//! `W_j` is the `j`-th unit point and `Σ_j = ⟨π, W_j⟩`. A point `P` of `X`
//! (a `(t-1)`-space skew to `π`) meets `Σ_j` in `U_j = W_j + Σ_i a_{ij} e_{t+i}`,
//! which gives the `(n+1) × t` matrix `A_P = (a_{ij})`. In echelon form the basis
//! of `P` is `[I_t | A_Pᵀ]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Fe, Field};
use crate::incidence::{IncidenceStructure, Label};
use crate::linalg::Matrix;
use crate::projgeom::{enumerate_subspaces, gaussian_binomial, intersect, Budget, ProjPoint, Subspace};

#[derive(Clone, Debug)]
pub struct XSpec {
    n: usize,
    t: usize,
    field: Field,
}

impl XSpec {
    pub fn new(n: usize, t: usize, field: &Field) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidArgument(format!("X(n, t, q) needs n, t >= 1, got n={n} t={t}")));
        }
        Ok(XSpec { n, t, field: field.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Length of coordinate vectors of the ambient `PG(n+t, q)`.
    pub fn ambient_len(&self) -> usize {
        self.n + self.t + 1
    }

    fn unit(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ambient_len()];
        v[i] = Fe::ONE;
        v
    }

    pub fn pi(&self) -> Subspace {
        let rows: Vec<Vec<Fe>> = (self.t..self.ambient_len()).map(|i| self.unit(i)).collect();
        Subspace::from_rows(&self.field, &rows).expect("unit rows")
    }

    pub fn sigma(&self, j: usize) -> Subspace {
        let mut rows: Vec<Vec<Fe>> = vec![self.unit(j)];
        rows.extend((self.t..self.ambient_len()).map(|i| self.unit(i)));
        Subspace::from_rows(&self.field, &rows).expect("unit rows")
    }

    /// `I = ⟨W_0, ..., W_{t-1}⟩`, the point with zero matrix.
    pub fn base_point(&self) -> Subspace {
        let rows: Vec<Vec<Fe>> = (0..self.t).map(|j| self.unit(j)).collect();
        Subspace::from_rows(&self.field, &rows).expect("unit rows")
    }

    /// Embeds `b ∈ F_q^{n+1}` as the point `(0, ..., 0, b)` of `π`.
    pub fn pi_point(&self, b: &[Fe]) -> Result<ProjPoint> {
        if b.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: b.len() });
        }
        let mut c = vec![Fe::ZERO; self.t];
        c.extend_from_slice(b);
        ProjPoint::new(&self.field, c)
    }
}

/// Reads off `A_P` from the intersections `U_j = P ∩ Σ_j`.
pub fn coordinatize_point(p: &Subspace, spec: &XSpec) -> Result<Matrix> {
    let f = &spec.field;
    if p.ambient_len() != spec.ambient_len() {
        return Err(Error::DimensionMismatch { expected: spec.ambient_len(), got: p.ambient_len() });
    }
    if p.rank() != spec.t || intersect(f, p, &spec.pi())?.is_some() {
        return Err(Error::MeetsPi);
    }
    let mut a = Matrix::zeros(spec.n + 1, spec.t);
    for j in 0..spec.t {
        let u = intersect(f, p, &spec.sigma(j))?.ok_or(Error::MeetsPi)?;
        if u.rank() != 1 {
            return Err(Error::MeetsPi);
        }
        // u is normalized with a leading 1 in position j, since P is skew to π
        let row = u.basis().row(0);
        debug_assert_eq!(row[j], Fe::ONE);
        for i in 0..=spec.n {
            a.set(i, j, row[spec.t + i]);
        }
    }
    Ok(a)
}

/// The point of `X` with matrix `a`: the row space of `[I_t | aᵀ]`.
pub fn point_from_matrix(a: &Matrix, spec: &XSpec) -> Result<Subspace> {
    if a.shape() != (spec.n + 1, spec.t) {
        return Err(Error::DimensionMismatch { expected: (spec.n + 1) * spec.t, got: a.rows() * a.cols() });
    }
    let mut basis = Matrix::zeros(spec.t, spec.ambient_len());
    for j in 0..spec.t {
        basis.set(j, j, Fe::ONE);
        for i in 0..=spec.n {
            basis.set(j, spec.t + i, a.get(i, j));
        }
    }
    Ok(Subspace::from_rref(basis))
}

/// The unique point where a line of `X` meets `π`.
pub fn line_at_infinity(l: &Subspace, spec: &XSpec) -> Result<ProjPoint> {
    match intersect(&spec.field, l, &spec.pi())? {
        Some(s) if s.rank() == 1 && l.rank() == spec.t + 1 => Ok(s.points(&spec.field).remove(0)),
        _ => Err(Error::NotALineOfX),
    }
}

/// Builds `X(n, t, q)` from the subspace lattice: points are the rank-`t`
/// subspaces skew to `π`, lines the rank-`(t+1)` subspaces meeting `π` in one point.
pub fn build_x(spec: &XSpec, budget: Budget) -> Result<IncidenceStructure> {
    let f = &spec.field;
    let len = spec.ambient_len();
    let pi = spec.pi();
    let mut points = Vec::new();
    for s in enumerate_subspaces(len, spec.t, f, budget)? {
        if intersect(f, &s, &pi)?.is_none() {
            points.push(s);
        }
    }
    let mut lines = Vec::new();
    for s in enumerate_subspaces(len, spec.t + 1, f, budget)? {
        if matches!(intersect(f, &s, &pi)?, Some(m) if m.rank() == 1) {
            lines.push(s);
        }
    }
    let mut line_points = Vec::with_capacity(lines.len());
    for l in &lines {
        line_points.push((0..points.len()).filter(|&i| l.contains(f, &points[i])).collect());
    }
    let plabels = points.into_iter().map(|s| Label::Subspace(s.basis().clone())).collect();
    let llabels = lines.into_iter().map(|s| Label::Subspace(s.basis().clone())).collect();
    Ok(IncidenceStructure::new("x", plabels, llabels, line_points)?
        .with_meta("n", spec.n)
        .with_meta("t", spec.t)
        .with_meta("q", f.order()))
}

/// Recovers the subspace behind a point or line label of [`build_x`].
pub fn label_subspace(label: &Label) -> Result<Subspace> {
    match label {
        Label::Subspace(m) => Ok(Subspace::from_rref(m.clone())),
        _ => Err(Error::InvalidArgument("not a subspace label".into())),
    }
}

/// Number of line directions of `X(n, t, q)` found by exhaustion, next to the
/// closed forms `(q^{n+1}-1)/(q-1)` and `(q^n-1)/(q-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDirectionReport {
    pub n: usize,
    pub t: usize,
    pub q: u64,
    pub directions_exhaustive: u128,
    pub lines_per_direction: Vec<usize>,
    pub formula_n_plus_1: u128,
    pub formula_n: u128,
    pub formula_n_plus_1_matches: bool,
    pub formula_n_matches: bool,
}

pub fn line_direction_report(spec: &XSpec, budget: Budget) -> Result<LineDirectionReport> {
    let g = build_x(spec, budget)?;
    let mut by_dir: std::collections::BTreeMap<ProjPoint, usize> = Default::default();
    for lab in g.lines() {
        *by_dir.entry(line_at_infinity(&label_subspace(lab)?, spec)?).or_default() += 1;
    }
    let q = spec.field.order() as u64;
    let found = by_dir.len() as u128;
    let a = gaussian_binomial(spec.n as u32 + 1, 1, q)?;
    let b = gaussian_binomial(spec.n as u32, 1, q)?;
    let sizes: BTreeSet<usize> = by_dir.values().copied().collect();
    Ok(LineDirectionReport {
        n: spec.n,
        t: spec.t,
        q,
        directions_exhaustive: found,
        lines_per_direction: sizes.into_iter().collect(),
        formula_n_plus_1: a,
        formula_n: b,
        formula_n_plus_1_matches: a == found,
        formula_n_matches: b == found,
    })
}
