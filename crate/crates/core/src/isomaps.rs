//! Explicit maps between the models of `X(n, t, q)`.
//!
//! The chain is: subspaces of `PG(n+t, q)` → matrices (the coset model) →
//! affine points of `PG(n+1, q^t)` (a linear representation over the subline
//! or subgeometry `PG(n, q)` at infinity) → affine points of `PG(t(n+1), q)`
//! (the generalized linear representation over a Desarguesian spread).
//!
//! The `F_q`-basis of `F_{q^t}` is the power basis of the companion algebra
//! throughout, and a vector `(x_0, ..., x_n)` over `F_{q^t}` expands row-major to
//! `(exp(x_0) | ... | exp(x_n))`. With these two choices the maps commute exactly.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coset::{line_lookup, AutElement, CosetGeometry};
use crate::error::{Error, Result};
use crate::fields::{CompanionAlgebra, Fe, Field, FieldCtx};
use crate::incidence::{IncidenceStructure, Label};
use crate::linalg::{all_vectors, vector_index, Matrix};
use crate::linrep::{build_linrep, LinRepSpec};
use crate::pointsets::PointSet;
use crate::projgeom::{enumerate_points, subgeometry_points, Budget, Frame, ProjPoint, Subspace};
use crate::xgeom::{build_x, coordinatize_point, label_subspace, XSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MapStatus {
    Unchecked,
    FlagPreserving {
        flags: usize,
    },
    /// `witness` is a source flag `(point, line)` whose image is not a flag, when there is one.
    Failed {
        reason: String,
        witness: Option<(usize, usize)>,
    },
}

#[derive(Clone, Debug)]
pub struct GeometryMap {
    pub source: Arc<IncidenceStructure>,
    pub target: Arc<IncidenceStructure>,
    pub point_map: Vec<usize>,
    /// Filled in by [`verify_map`]; empty before.
    pub line_map: Vec<usize>,
    pub status: MapStatus,
}

pub const MAP_SCHEMA: &str = "finrep.map/1";

impl GeometryMap {
    pub fn new(source: Arc<IncidenceStructure>, target: Arc<IncidenceStructure>, point_map: Vec<usize>) -> Self {
        GeometryMap { source, target, point_map, line_map: Vec::new(), status: MapStatus::Unchecked }
    }

    pub fn is_flag_preserving(&self) -> bool {
        matches!(self.status, MapStatus::FlagPreserving { .. })
    }

    /// `other ∘ self`, unchecked.
    pub fn then(&self, other: &GeometryMap) -> Result<GeometryMap> {
        if other.source.num_points() != self.target.num_points() {
            return Err(Error::DimensionMismatch {
                expected: self.target.num_points(),
                got: other.source.num_points(),
            });
        }
        let pm = self.point_map.iter().map(|&p| other.point_map[p]).collect();
        Ok(GeometryMap::new(self.source.clone(), other.target.clone(), pm))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": MAP_SCHEMA,
            "source": { "kind": self.source.kind(), "meta": self.source.meta(), "points": self.source.num_points(), "lines": self.source.num_lines() },
            "target": { "kind": self.target.kind(), "meta": self.target.meta(), "points": self.target.num_points(), "lines": self.target.num_lines() },
            "point_map": self.point_map,
            "line_map": self.line_map,
            "verified": self.status,
        })
    }
}

fn fail(m: &mut GeometryMap, reason: String, witness: Option<(usize, usize)>) -> &MapStatus {
    m.line_map.clear();
    m.status = MapStatus::Failed { reason, witness };
    &m.status
}

/// Checks that the point map is a bijection and that it carries lines onto
/// lines; the induced line map is stored in `m.line_map`.
pub fn verify_map(m: &mut GeometryMap) -> &MapStatus {
    let (src, tgt) = (m.source.clone(), m.target.clone());
    if src.num_points() != tgt.num_points() || src.num_lines() != tgt.num_lines() {
        let r = format!(
            "sizes differ: {} points, {} lines versus {} points, {} lines",
            src.num_points(),
            src.num_lines(),
            tgt.num_points(),
            tgt.num_lines()
        );
        return fail(m, r, None);
    }
    if m.point_map.len() != src.num_points() {
        let r = format!("point map has length {}, expected {}", m.point_map.len(), src.num_points());
        return fail(m, r, None);
    }
    let mut hit = vec![false; tgt.num_points()];
    for (p, &img) in m.point_map.iter().enumerate() {
        if img >= hit.len() || std::mem::replace(&mut hit[img], true) {
            return fail(m, format!("point map is not a bijection at point {p}"), None);
        }
    }
    let lookup = line_lookup(&tgt);
    let mut line_map = Vec::with_capacity(src.num_lines());
    let mut used = vec![false; tgt.num_lines()];
    for l in 0..src.num_lines() {
        let pts = src.line_points(l);
        let mut img: Vec<usize> = pts.iter().map(|&p| m.point_map[p]).collect();
        img.sort_unstable();
        let Some(&tl) = lookup.get(&img) else {
            // name the first point that leaves the line through the images of the first two
            let (a, b) = (m.point_map[pts[0]], m.point_map[pts[1]]);
            let through = tgt.point_lines(a).iter().find(|&&x| tgt.is_flag(b, x)).copied();
            let bad = match through {
                None => pts[1],
                Some(x) => pts.iter().copied().find(|&p| !tgt.is_flag(m.point_map[p], x)).unwrap_or(pts[0]),
            };
            return fail(m, format!("line {l} is not mapped onto a line"), Some((bad, l)));
        };
        if std::mem::replace(&mut used[tl], true) {
            return fail(m, format!("two lines map onto target line {tl}"), Some((pts[0], l)));
        }
        line_map.push(tl);
    }
    m.line_map = line_map;
    m.status = MapStatus::FlagPreserving { flags: src.num_flags() };
    &m.status
}

fn require_verified(mut m: GeometryMap) -> Result<GeometryMap> {
    match verify_map(&mut m) {
        MapStatus::FlagPreserving { .. } => Ok(m),
        MapStatus::Failed { reason, .. } => Err(Error::Verification(reason.clone())),
        MapStatus::Unchecked => unreachable!("verify_map always decides"),
    }
}

/// `X(n, t, q)` onto its coset model by reading off the matrix of each point.
pub fn x_to_coset(spec: &XSpec, budget: Budget) -> Result<GeometryMap> {
    let x = build_x(spec, budget)?;
    let geom = CosetGeometry::new(spec.n(), spec.t(), spec.field())?;
    let coset = geom.build(budget)?;
    let point_map = x
        .points()
        .iter()
        .map(|lab| Ok(geom.index_of(&coordinatize_point(&label_subspace(lab)?, spec)?)))
        .collect::<Result<Vec<_>>>()?;
    require_verified(GeometryMap::new(Arc::new(x), Arc::new(coset), point_map))
}

/// The subgeometry `PG(n, q)` inside `PG(n, q^t)` as a point set.
pub fn base_subgeometry(alg: &CompanionAlgebra, n: usize) -> Result<PointSet> {
    let ext = alg.ext();
    let q = alg.base().order() as u64;
    PointSet::new(ext, n, subgeometry_points(ext, q, &Frame::standard(n))?)
}

fn matrix_to_ext(alg: &CompanionAlgebra, a: &Matrix) -> Result<Vec<Fe>> {
    (0..a.rows()).map(|r| alg.row_to_ext(a.row(r))).collect()
}

/// Coset model onto `T*_n(S)` with `S = PG(n, q)` at infinity of `PG(n+1, q^t)`.
/// Fails unless directions `b` go to the points `(b, 0)`, so that the image at
/// infinity is exactly the subgeometry.
pub fn coset_to_linrep(n: usize, t: usize, alg: &CompanionAlgebra, budget: Budget) -> Result<GeometryMap> {
    if alg.degree() != t {
        return Err(Error::DegreeMismatch { expected: t, got: alg.degree() });
    }
    let geom = CosetGeometry::new(n, t, alg.base())?;
    let coset = geom.build(budget)?;
    let s = base_subgeometry(alg, n)?;
    let lin = build_linrep(&LinRepSpec::from_infinity_set(&s)?, budget)?;
    let ext = alg.ext();
    let point_map =
        geom.points().map(|a| Ok(vector_index(ext, &matrix_to_ext(alg, &a)?))).collect::<Result<Vec<_>>>()?;
    let m = require_verified(GeometryMap::new(Arc::new(coset), Arc::new(lin), point_map))?;
    for (l, &tl) in m.line_map.iter().enumerate() {
        let (Some(Label::Coords(b)), Some(Label::Coords(k))) =
            (m.source.lines()[l].head(), m.target.lines()[tl].head())
        else {
            return Err(Error::Verification("unexpected line labels".into()));
        };
        // base field constants keep their index inside the extension
        if k[..=n] != b[..] || !k[n + 1].is_zero() {
            return Err(Error::Verification(format!("direction {b:?} is sent to {k:?} at infinity")));
        }
    }
    Ok(m)
}

/// `X(n, t, q)` onto `T*_n(S)`, the composite of the two maps above, verified again.
pub fn x_to_linrep(spec: &XSpec, alg: &CompanionAlgebra, budget: Budget) -> Result<GeometryMap> {
    let a = x_to_coset(spec, budget)?;
    let b = coset_to_linrep(spec.n(), spec.t(), alg, budget)?;
    require_verified(a.then(&b)?)
}

/// `𝓕(P)`: a point of `PG(n, q^t)` as a `(t-1)`-space of `PG(t(n+1)-1, q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpreadElement {
    pub source_point: ProjPoint,
    pub subspace: Subspace,
}

/// Row-major expansion of a vector over `F_{q^t}` into `F_q` coordinates.
pub fn expand(alg: &CompanionAlgebra, x: &[Fe]) -> Vec<Fe> {
    x.iter().flat_map(|&xi| alg.ext_to_row(xi)).collect()
}

pub fn field_reduce(p: &ProjPoint, alg: &CompanionAlgebra) -> Result<SpreadElement> {
    let ext = alg.ext();
    let t = alg.degree();
    let mut rows = Vec::with_capacity(t);
    let mut lambda = Fe::ONE;
    for _ in 0..t {
        let scaled: Vec<Fe> = p.coords().iter().map(|&c| ext.mul(lambda, c)).collect();
        rows.push(expand(alg, &scaled));
        lambda = ext.mul(lambda, alg.alpha());
    }
    let subspace = Subspace::from_rows(alg.base(), &rows)?;
    debug_assert_eq!(subspace.rank(), t);
    Ok(SpreadElement { source_point: p.clone(), subspace })
}

/// Whether the coordinates of `p`, read row-major as an `(n+1) × t` matrix, have rank one.
pub fn segre_membership(p: &ProjPoint, n: usize, t: usize, field: &FieldCtx) -> Result<bool> {
    let m = Matrix::new(n + 1, t, p.coords().to_vec())?;
    Ok(m.rank(field) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub n: usize,
    pub t: usize,
    pub q: u32,
    pub elements: usize,
    pub element_rank: usize,
    pub ambient_points: usize,
    pub covered_once: usize,
    pub is_partition: bool,
    pub segre_points: usize,
    pub segre_expected: u128,
    pub subgeometry_union: usize,
    pub union_all_rank_one: bool,
    pub union_equals_segre: bool,
}

impl SpreadReport {
    pub fn all_hold(&self) -> bool {
        self.is_partition
            && self.union_all_rank_one
            && self.union_equals_segre
            && self.segre_points as u128 == self.segre_expected
    }
}

/// Exhaustive checks that `𝓕` partitions `PG(t(n+1)-1, q)` and that the union of
/// `𝓕(S)` over the subgeometry is the rank-one locus.
pub fn spread_report(n: usize, alg: &CompanionAlgebra, budget: Budget) -> Result<SpreadReport> {
    let base = alg.base();
    let t = alg.degree();
    let len = t * (n + 1);
    let ambient = enumerate_points(len - 1, base, budget)?;
    let index = |p: &ProjPoint| ambient.binary_search(p).expect("ambient point");
    let mut cover = vec![0usize; ambient.len()];
    let mut ranks = BTreeSet::new();
    let points = enumerate_points(n, alg.ext(), budget)?;
    for p in &points {
        let e = field_reduce(p, alg)?;
        ranks.insert(e.subspace.rank());
        for x in e.subspace.points(base) {
            cover[index(&x)] += 1;
        }
    }
    let mut union = BTreeSet::new();
    for p in base_subgeometry(alg, n)?.points() {
        union.extend(field_reduce(p, alg)?.subspace.points(base));
    }
    let mut segre = BTreeSet::new();
    for p in &ambient {
        if segre_membership(p, n, t, base)? {
            segre.insert(p.clone());
        }
    }
    let q = base.order() as u128;
    let segre_expected = (q.pow(n as u32 + 1) - 1) * (q.pow(t as u32) - 1) / ((q - 1) * (q - 1));
    let covered_once = cover.iter().filter(|&&c| c == 1).count();
    Ok(SpreadReport {
        n,
        t,
        q: base.order(),
        elements: points.len(),
        element_rank: if ranks.len() == 1 { *ranks.iter().next().unwrap() } else { 0 },
        ambient_points: ambient.len(),
        covered_once,
        is_partition: covered_once == ambient.len() && ranks.len() == 1,
        segre_points: segre.len(),
        segre_expected,
        subgeometry_union: union.len(),
        union_all_rank_one: union.is_subset(&segre),
        union_equals_segre: union == segre,
    })
}

/// The Barlotti-Cofman model of `T*_n(K)`: affine points of `PG(n+1, q^t)` expand
/// to affine points of `PG(t(n+1), q)`, and a line with point `k` at infinity
/// becomes the `t`-space spanned by `𝓕(k)` and any of its expanded points.
/// The target is assembled from the images alone, with the labels used by
/// [`crate::linrep::build_gen_linrep`].
pub fn barlotti_cofman(spec: &LinRepSpec, alg: &CompanionAlgebra, budget: Budget) -> Result<GeometryMap> {
    let ext = alg.ext();
    if spec.field().order() != ext.order() || spec.field().modulus() != ext.modulus() {
        return Err(Error::FieldMismatch);
    }
    let base: &Field = alg.base();
    let n = spec.n();
    let source = build_linrep(spec, budget)?;
    let big = alg.degree() * (n + 1);
    let targets: Vec<Label> = all_vectors(base, big)
        .map(|mut v| {
            v.push(Fe::ONE);
            Label::Coords(v)
        })
        .collect();
    let mut point_map = Vec::with_capacity(source.num_points());
    for lab in source.points() {
        let Label::Coords(c) = lab else { return Err(Error::Verification("unexpected point label".into())) };
        point_map.push(vector_index(base, &expand(alg, &c[..=n])));
    }
    let mut lines = Vec::with_capacity(source.num_lines());
    let mut line_points = Vec::with_capacity(source.num_lines());
    for l in 0..source.num_lines() {
        let Some(Label::Coords(k)) = source.lines()[l].head() else {
            return Err(Error::Verification("unexpected line label".into()));
        };
        let e = field_reduce(&ProjPoint::new(ext, k[..=n].to_vec())?, alg)?;
        let padded: Vec<Vec<Fe>> = e
            .subspace
            .basis()
            .row_vecs()
            .into_iter()
            .map(|mut r| {
                r.push(Fe::ZERO);
                r
            })
            .collect();
        let at_inf = Subspace::from_rows(base, &padded)?;
        let mut pts: Vec<usize> = source.line_points(l).iter().map(|&p| point_map[p]).collect();
        pts.sort_unstable();
        lines.push(Label::pair(Label::Subspace(at_inf.basis().clone()), targets[pts[0]].clone()));
        line_points.push(pts);
    }
    let target = IncidenceStructure::new("barlotti-cofman", targets, lines, line_points)?
        .with_meta("m", big - 1)
        .with_meta("t", alg.degree())
        .with_meta("order", base.order())
        .with_meta("k_size", spec.k().len());
    require_verified(GeometryMap::new(Arc::new(source), Arc::new(target), point_map))
}

/// The spread elements `𝓕(k)` of the points of `K`, padded into the hyperplane
/// at infinity of `PG(t(n+1), q)`, as input for the generalized linear representation.
pub fn reduced_infinity_set(spec: &LinRepSpec, alg: &CompanionAlgebra) -> Result<Vec<Subspace>> {
    let n = spec.n();
    spec.k()
        .iter()
        .map(|k| {
            let e = field_reduce(&ProjPoint::new(alg.ext(), k.coords()[..=n].to_vec())?, alg)?;
            let rows: Vec<Vec<Fe>> = e
                .subspace
                .basis()
                .row_vecs()
                .into_iter()
                .map(|mut r| {
                    r.push(Fe::ZERO);
                    r
                })
                .collect();
            Subspace::from_rows(alg.base(), &rows)
        })
        .collect()
}

/// The semilinear map of `PG(n+t, q)` inducing `g` on `X(n, t, q)`: row vectors
/// go to `(v · M)^{σ^l}` with `M = [[C^{-T}, C^{-T} Aᵀ], [0, Bᵀ]]`.
pub fn collineation_matrix(g: &AutElement, field: &FieldCtx) -> Result<Matrix> {
    let t = g.c.rows();
    let n1 = g.b.rows();
    let cit = g.c.inverse(field)?.transpose();
    let z = cit.mul(field, &g.a.transpose())?;
    let bt = g.b.transpose();
    let mut m = Matrix::zeros(t + n1, t + n1);
    for i in 0..t {
        for j in 0..t {
            m.set(i, j, cit.get(i, j));
        }
        for j in 0..n1 {
            m.set(i, t + j, z.get(i, j));
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            m.set(t + i, t + j, bt.get(i, j));
        }
    }
    Ok(m)
}

/// Image of a subspace under `v ↦ (v · M)^{σ^l}`.
pub fn apply_collineation(s: &Subspace, m: &Matrix, l: u32, field: &FieldCtx) -> Result<Subspace> {
    let img = s.basis().mul(field, m)?.map(|x| field.frobenius(x, l as i64));
    Subspace::from_rows(field, &img.row_vecs())
}
