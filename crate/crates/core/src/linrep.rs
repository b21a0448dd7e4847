//! Linear representations and their generalized form.
//!
//! Both live in an affine space: the hyperplane at infinity is always the
//! coordinate hyperplane `X_{last} = 0`, and affine points are stored with last
//! coordinate 1. Points are indexed in lexicographic order of their affine part.
//! A line is labelled by its object at infinity (a point, or a subspace for the
//! generalized version) together with its least affine point.

use crate::error::{Error, Result};
use crate::fields::{Fe, Field, FieldCtx};
use crate::incidence::{IncidenceStructure, Label};
use crate::linalg::{all_vectors, vector_index};
use crate::pointsets::PointSet;
use crate::projgeom::{join_rank, Budget, ProjPoint, Subspace};

/// Parameters of `T*_n(K)`: `K` is a set of points of the hyperplane at
/// infinity of `PG(n+1, Q)`, given with `n + 2` coordinates ending in 0.
#[derive(Clone, Debug)]
pub struct LinRepSpec {
    n: usize,
    field: Field,
    k: Vec<ProjPoint>,
}

impl LinRepSpec {
    pub fn new(field: &Field, n: usize, k: impl IntoIterator<Item = ProjPoint>) -> Result<Self> {
        let mut pts: Vec<ProjPoint> = k.into_iter().collect();
        pts.sort();
        pts.dedup();
        for p in &pts {
            if p.len() != n + 2 {
                return Err(Error::DimensionMismatch { expected: n + 2, got: p.len() });
            }
            if !p.coords()[n + 1].is_zero() {
                return Err(Error::NotAtInfinity);
            }
        }
        Ok(LinRepSpec { n, field: field.clone(), k: pts })
    }

    /// Lifts a point set of `PG(n, Q)` into the hyperplane at infinity of `PG(n+1, Q)`.
    pub fn from_infinity_set(set: &PointSet) -> Result<Self> {
        let lifted = set.points().iter().map(|p| {
            let mut c = p.coords().to_vec();
            c.push(Fe::ZERO);
            ProjPoint::new(set.field(), c)
        });
        Self::new(set.field(), set.dim(), lifted.collect::<Result<Vec<_>>>()?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> &[ProjPoint] {
        &self.k
    }
}

fn affine_label(x: &[Fe]) -> Label {
    let mut c = x.to_vec();
    c.push(Fe::ONE);
    Label::Coords(c)
}

/// Groups the affine points into classes `x + D` for the vector subspace `D`
/// spanned by `dirs` (vectors of the affine part). Classes come out in order of
/// their least member, which is also the first member met in index order.
fn parallel_classes(f: &FieldCtx, vectors: &[Vec<Fe>], dirs: &Subspace) -> Vec<(usize, Vec<usize>)> {
    let offsets = dirs.vectors(f);
    let mut seen = vec![false; vectors.len()];
    let mut out = Vec::new();
    for (i, x) in vectors.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut members: Vec<usize> = offsets
            .iter()
            .map(|d| {
                let y: Vec<Fe> = x.iter().zip(d).map(|(&a, &b)| f.add(a, b)).collect();
                vector_index(f, &y)
            })
            .collect();
        members.sort_unstable();
        for &m in &members {
            seen[m] = true;
        }
        out.push((i, members));
    }
    out
}

fn affine_budget(f: &FieldCtx, len: usize, budget: Budget) -> Result<()> {
    let count = (f.order() as u128).checked_pow(len as u32).ok_or(Error::Overflow("affine point count"))?;
    budget.check(count)
}

/// Builds `T*_n(K)`: `Q^{n+1}` affine points, and the affine lines whose point at infinity is in `K`.
pub fn build_linrep(spec: &LinRepSpec, budget: Budget) -> Result<IncidenceStructure> {
    let f = &spec.field;
    let n = spec.n;
    affine_budget(f, n + 1, budget)?;
    let vectors: Vec<Vec<Fe>> = all_vectors(f, n + 1).collect();
    let points: Vec<Label> = vectors.iter().map(|x| affine_label(x)).collect();
    let mut lines = Vec::new();
    let mut line_points = Vec::new();
    for k in &spec.k {
        let dir = Subspace::from_rows(f, &[k.coords()[..=n].to_vec()])?;
        for (least, members) in parallel_classes(f, &vectors, &dir) {
            lines.push(Label::pair(Label::Coords(k.coords().to_vec()), points[least].clone()));
            line_points.push(members);
        }
    }
    Ok(IncidenceStructure::new("linrep", points, lines, line_points)?
        .with_meta("n", n)
        .with_meta("order", f.order())
        .with_meta("k_size", spec.k.len()))
}

/// Builds `T*_{m, t-1}(K)` in `PG(m+1, q)`: `K` holds pairwise disjoint subspaces of
/// rank `t` inside the hyperplane at infinity (vectors of length `m + 2` ending in 0).
pub fn build_gen_linrep(
    m: usize,
    t: usize,
    field: &Field,
    k: &[Subspace],
    budget: Budget,
) -> Result<IncidenceStructure> {
    let f = field;
    for e in k {
        if e.ambient_len() != m + 2 {
            return Err(Error::DimensionMismatch { expected: m + 2, got: e.ambient_len() });
        }
        if e.rank() != t {
            return Err(Error::DimensionMismatch { expected: t, got: e.rank() });
        }
        if (0..e.rank()).any(|r| !e.basis().get(r, m + 1).is_zero()) {
            return Err(Error::NotAtInfinity);
        }
    }
    for (i, a) in k.iter().enumerate() {
        for b in &k[i + 1..] {
            if join_rank(f, a, b) != a.rank() + b.rank() {
                return Err(Error::OverlappingSubspaces);
            }
        }
    }
    affine_budget(f, m + 1, budget)?;
    let vectors: Vec<Vec<Fe>> = all_vectors(f, m + 1).collect();
    let points: Vec<Label> = vectors.iter().map(|x| affine_label(x)).collect();
    let mut sorted: Vec<&Subspace> = k.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut lines = Vec::new();
    let mut line_points = Vec::new();
    for e in sorted {
        let dirs =
            Subspace::from_rows(f, &e.basis().row_vecs().into_iter().map(|r| r[..=m].to_vec()).collect::<Vec<_>>())?;
        for (least, members) in parallel_classes(f, &vectors, &dirs) {
            lines.push(Label::pair(Label::Subspace(e.basis().clone()), points[least].clone()));
            line_points.push(members);
        }
    }
    Ok(IncidenceStructure::new("genlinrep", points, lines, line_points)?
        .with_meta("m", m)
        .with_meta("t", t)
        .with_meta("order", f.order())
        .with_meta("k_size", k.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldCtx;
    use crate::graph::point_graph;
    use crate::projgeom::{subgeometry_points, Frame};

    fn subline_spec(q: u64, sub: u64, n: usize) -> LinRepSpec {
        let f = FieldCtx::gf(q).unwrap();
        let s = PointSet::new(&f, n, subgeometry_points(&f, sub, &Frame::standard(n)).unwrap()).unwrap();
        LinRepSpec::from_infinity_set(&s).unwrap()
    }

    #[test]
    fn subline_in_pg2_4() {
        let g = build_linrep(&subline_spec(4, 2, 1), Budget::default()).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (16, 12));
        assert_eq!(g.line_sizes(), vec![4]);
        assert_eq!(g.max_lines_per_pair(), 1);
        let pg = point_graph(&g);
        assert!((0..16).all(|v| pg.degree(v) == 9));
    }

    #[test]
    fn single_point_is_one_parallel_class() {
        let f = FieldCtx::gf(3).unwrap();
        let p = ProjPoint::new(&f, vec![Fe(1), Fe(2), Fe(0)]).unwrap();
        let g = build_linrep(&LinRepSpec::new(&f, 1, [p]).unwrap(), Budget::default()).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (9, 3));
        assert!((0..9).all(|p| g.point_lines(p).len() == 1));
    }

    #[test]
    fn fano_at_infinity_of_pg3_4() {
        let g = build_linrep(&subline_spec(4, 2, 2), Budget::default()).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (64, 112));
        assert_eq!(g.line_sizes(), vec![4]);
    }

    #[test]
    fn rejects_affine_k() {
        let f = FieldCtx::gf(2).unwrap();
        let p = ProjPoint::new(&f, vec![Fe(1), Fe(1)]).unwrap();
        assert_eq!(LinRepSpec::new(&f, 0, [p]).err(), Some(Error::NotAtInfinity));
    }

    fn e(f: &FieldCtx, rows: &[&[u16]]) -> Subspace {
        Subspace::from_rows(f, &rows.iter().map(|r| r.iter().map(|&x| Fe(x)).collect()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn regulus_in_pg3_2() {
        let f = FieldCtx::gf(2).unwrap();
        // three lines of a regulus: rows span {(b0 a, b1 a)} for b in PG(1,2)
        let k = vec![
            e(&f, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]),
            e(&f, &[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0]]),
            e(&f, &[&[1, 0, 1, 0, 0], &[0, 1, 0, 1, 0]]),
        ];
        let g = build_gen_linrep(3, 2, &f, &k, Budget::default()).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (16, 12));
        assert_eq!(g.line_sizes(), vec![4]);
        assert_eq!(build_gen_linrep(3, 2, &f, &[], Budget::default()).unwrap().num_lines(), 0);
        let overlapping = vec![k[0].clone(), e(&f, &[&[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0]])];
        assert_eq!(
            build_gen_linrep(3, 2, &f, &overlapping, Budget::default()).err(),
            Some(Error::OverlappingSubspaces)
        );
    }

    #[test]
    fn rank_one_generalization_matches_linrep() {
        let spec = subline_spec(3, 3, 2);
        let g = build_linrep(&spec, Budget::default()).unwrap();
        let k: Vec<Subspace> = spec.k().iter().map(Subspace::point).collect();
        let h = build_gen_linrep(2, 1, spec.field(), &k, Budget::default()).unwrap();
        assert_eq!(g.points(), h.points());
        let lp = |s: &IncidenceStructure| (0..s.num_lines()).map(|l| s.line_points(l).to_vec()).collect::<Vec<_>>();
        assert_eq!(lp(&g), lp(&h));
    }
}
