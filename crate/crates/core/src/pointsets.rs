//! Point sets in a projective space: Property (*), spanning, and the closure
//! of a set under repeated spans and single-point intersections.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{field_spec_string, parse_field_spec, Fe, Field, FieldCtx};
use crate::linalg::Matrix;
use crate::projgeom::{
    enumerate_subspaces, frame_basis, intersect, span_points, subgeometry_points, Budget, Frame, ProjPoint, SpanItem,
    Subspace,
};

pub const POINTSET_SCHEMA: &str = "finrep.pointset/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    field: Field,
    points: BTreeSet<ProjPoint>,
}

impl PointSet {
    /// Collects points of `PG(dim, q)`; each must have `dim + 1` coordinates.
    pub fn new(field: &Field, dim: usize, points: impl IntoIterator<Item = ProjPoint>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != dim + 1 {
                return Err(Error::DimensionMismatch { expected: dim + 1, got: p.len() });
            }
            if p.coords().iter().any(|x| x.0 as u32 >= field.order()) {
                return Err(Error::InvalidArgument("coordinate outside the field".into()));
            }
            set.insert(p);
        }
        Ok(PointSet { dim, field: field.clone(), points: set })
    }

    pub fn from_coords(field: &Field, dim: usize, coords: &[Vec<Fe>]) -> Result<Self> {
        let pts = coords.iter().map(|c| ProjPoint::new(field, c.clone())).collect::<Result<Vec<_>>>()?;
        Self::new(field, dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &BTreeSet<ProjPoint> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    pub fn to_vec(&self) -> Vec<ProjPoint> {
        self.points.iter().cloned().collect()
    }

    /// `{"schema", "field", "dim", "points"}` with the field as a specification string.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "schema": POINTSET_SCHEMA,
            "field": field_spec_string(&self.field)?,
            "dim": self.dim,
            "points": self.points,
        }))
    }

    /// Reads the format of [`PointSet::to_json`]; coordinates need not be normalized.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            schema: String,
            field: String,
            dim: usize,
            points: Vec<Vec<u16>>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if raw.schema != POINTSET_SCHEMA {
            return Err(Error::InvalidArgument(format!("expected schema {POINTSET_SCHEMA}, got {}", raw.schema)));
        }
        let field = parse_field_spec(&raw.field)?;
        let coords: Vec<Vec<Fe>> = raw.points.into_iter().map(|c| c.into_iter().map(Fe).collect()).collect();
        for c in &coords {
            if c.iter().any(|x| x.0 as u32 >= field.order()) {
                return Err(Error::InvalidArgument("coordinate outside the field".into()));
            }
        }
        Self::from_coords(&field, raw.dim, &coords)
    }
}

/// A plane meeting the set in two intersecting lines, possibly minus their common point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub plane: Subspace,
    pub lines: [Subspace; 2],
    pub meet: ProjPoint,
    pub meet_in_set: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub holds: bool,
    pub planes_checked: usize,
    pub witness: Option<StarWitness>,
}

/// Checks Property (*), scanning planes in enumeration order and stopping at the first witness.
pub fn has_property_star(k: &PointSet, budget: Budget) -> Result<StarReport> {
    if k.dim < 2 {
        return Err(Error::InvalidArgument(format!("Property (*) needs dimension at least 2, got {}", k.dim)));
    }
    let f = &k.field;
    let q = f.order() as usize;
    let planes = enumerate_subspaces(k.dim + 1, 3, f, budget)?;
    let mut checked = 0;
    for plane in planes {
        checked += 1;
        let inside: Vec<ProjPoint> = k.points.iter().filter(|p| plane.contains_point(f, p)).cloned().collect();
        if inside.len() != 2 * q && inside.len() != 2 * q + 1 {
            continue;
        }
        if let Some(w) = two_line_pattern(f, &plane, &inside) {
            return Ok(StarReport { holds: false, planes_checked: checked, witness: Some(w) });
        }
    }
    Ok(StarReport { holds: true, planes_checked: checked, witness: None })
}

/// Decides whether `inside` (the set restricted to `plane`) is two intersecting
/// lines, or two intersecting lines minus the meet. Only lines carrying at least
/// `q` points of the set can take part, and those are found from point pairs.
fn two_line_pattern(f: &FieldCtx, plane: &Subspace, inside: &[ProjPoint]) -> Option<StarWitness> {
    let q = f.order() as usize;
    let set: HashSet<&ProjPoint> = inside.iter().collect();
    let mut heavy: Vec<Subspace> = Vec::new();
    let mut seen = HashSet::new();
    for (i, a) in inside.iter().enumerate() {
        for b in &inside[i + 1..] {
            let line = span_points(f, &[a.clone(), b.clone()]).expect("distinct points");
            if !seen.insert(line.clone()) {
                continue;
            }
            let on = line.points(f).iter().filter(|p| set.contains(p)).count();
            if on >= q {
                heavy.push(line);
            }
        }
    }
    heavy.sort();
    for (i, l1) in heavy.iter().enumerate() {
        for l2 in &heavy[i + 1..] {
            let meet = intersect(f, l1, l2).ok()??;
            let meet = meet.points(f).remove(0);
            let mut union: BTreeSet<ProjPoint> = l1.points(f).into_iter().collect();
            union.extend(l2.points(f));
            let got: BTreeSet<ProjPoint> = inside.iter().cloned().collect();
            let meet_in_set = got.contains(&meet);
            if !meet_in_set {
                union.remove(&meet);
            }
            if union == got {
                return Some(StarWitness { plane: plane.clone(), lines: [l1.clone(), l2.clone()], meet, meet_in_set });
            }
        }
    }
    None
}

pub fn spans_ambient(k: &PointSet) -> bool {
    if k.is_empty() {
        return false;
    }
    span_points(&k.field, &k.to_vec()).map(|s| s.rank() == k.dim + 1).unwrap_or(false)
}

/// Searches the set for `dim + 2` points in general position.
pub fn find_frame(k: &PointSet) -> Option<Frame> {
    if !spans_ambient(k) {
        return None;
    }
    let pts = k.to_vec();
    let mut chosen = Vec::with_capacity(k.dim + 2);
    if frame_dfs(&k.field, &pts, 0, k.dim, &mut chosen) {
        Some(Frame::new(&k.field, chosen.into_iter().map(|i| pts[i].clone()).collect()).expect("checked frame"))
    } else {
        None
    }
}

fn frame_dfs(f: &FieldCtx, pts: &[ProjPoint], start: usize, m: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == m + 2 {
        return true;
    }
    for i in start..pts.len() {
        if extends_general_position(f, pts, chosen, i, m) {
            chosen.push(i);
            if frame_dfs(f, pts, i + 1, m, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Whether `cand` together with every subset of `chosen` of size at most `m` stays independent.
fn extends_general_position(f: &FieldCtx, pts: &[ProjPoint], chosen: &[usize], cand: usize, m: usize) -> bool {
    let k = chosen.len();
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size > m {
            continue;
        }
        let mut rows: Vec<Vec<Fe>> =
            (0..k).filter(|b| mask & (1 << b) != 0).map(|b| pts[chosen[b]].coords().to_vec()).collect();
        rows.push(pts[cand].coords().to_vec());
        if Matrix::from_rows(&rows).expect("rows").rank(f) != size + 1 {
            return false;
        }
    }
    true
}

/// How [`closure`] obtained its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureMethod {
    /// Alternate span generation and single-point intersections until stable.
    SpanIntersect,
    /// On a projective line the recursion adds nothing, so the result is the
    /// subline through a frame over the subfield generated by the cross-ratios.
    SublineExtension,
}

impl ClosureMethod {
    pub fn for_dim(dim: usize) -> Self {
        if dim == 1 {
            ClosureMethod::SublineExtension
        } else {
            ClosureMethod::SpanIntersect
        }
    }
}

/// The smallest subgeometry containing `k`. Requires `k` to contain a frame.
pub fn closure(k: &PointSet) -> Result<PointSet> {
    if k.dim == 0 {
        return Err(Error::InvalidArgument("closure needs dimension at least 1".into()));
    }
    let frame = find_frame(k).ok_or(Error::NoFrame)?;
    match ClosureMethod::for_dim(k.dim) {
        ClosureMethod::SublineExtension => subline_closure(k, &frame),
        ClosureMethod::SpanIntersect => {
            let f = &k.field;
            let mut current = k.points.clone();
            loop {
                let next = closure_step(f, &current);
                if next.len() == current.len() {
                    return PointSet::new(f, k.dim, current);
                }
                current = next;
            }
        }
    }
}

/// One round: all spans of subsets, then every point that is the exact meet of two spans.
pub fn closure_step(f: &FieldCtx, points: &BTreeSet<ProjPoint>) -> BTreeSet<ProjPoint> {
    let pts: Vec<ProjPoint> = points.iter().cloned().collect();
    let mut spans: HashSet<Subspace> = pts.iter().map(Subspace::point).collect();
    let mut queue: VecDeque<Subspace> = spans.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        for p in &pts {
            if s.contains_point(f, p) {
                continue;
            }
            let bigger = crate::projgeom::span(f, &[SpanItem::Subspace(&s), SpanItem::Point(p)]).expect("same ambient");
            if spans.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut all: Vec<Subspace> = spans.into_iter().filter(|s| s.rank() > 1).collect();
    all.sort();
    let mut out = points.clone();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if let Ok(Some(m)) = intersect(f, a, b) {
                if m.rank() == 1 {
                    out.insert(m.points(f).remove(0));
                }
            }
        }
    }
    out
}

fn subline_closure(k: &PointSet, frame: &Frame) -> Result<PointSet> {
    let f = &k.field;
    let basis = frame_basis(f, frame)?;
    // coordinates of each point with respect to the scaled frame basis
    let mut ratios = Vec::new();
    for p in &k.points {
        let rows = vec![basis[0].clone(), basis[1].clone()];
        let b = Matrix::from_rows(&rows)?;
        let inv = b.inverse(f)?;
        let c = inv.left_mul_vec(f, p.coords())?;
        if !c[0].is_zero() {
            ratios.push(f.div(c[1], c[0]).unwrap());
        }
    }
    let d = f.generated_subfield_degree(&ratios);
    let q0 = (f.characteristic() as u64).pow(d);
    let pts = subgeometry_points(f, q0, frame)?;
    PointSet::new(f, k.dim, pts)
}

/// Independent classifier used to cross-check [`has_property_star`]: for every
/// plane, compare the restricted set with each pattern built from every pair of
/// distinct lines of the plane.
pub fn property_star_by_line_pairs(k: &PointSet, budget: Budget) -> Result<bool> {
    if k.dim < 2 {
        return Err(Error::InvalidArgument("dimension below 2".into()));
    }
    let f = &k.field;
    for plane in enumerate_subspaces(k.dim + 1, 3, f, budget)? {
        let pts = plane.points(f);
        let got: BTreeSet<ProjPoint> = pts.iter().filter(|p| k.contains(p)).cloned().collect();
        // lines of the plane: spans of pairs, deduplicated
        let mut lines: Vec<BTreeSet<ProjPoint>> = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                let l: BTreeSet<ProjPoint> = span_points(f, &[a.clone(), b.clone()])?.points(f).into_iter().collect();
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                let union: BTreeSet<ProjPoint> = l1.union(l2).cloned().collect();
                let meet: BTreeSet<ProjPoint> = l1.intersection(l2).cloned().collect();
                let punctured: BTreeSet<ProjPoint> = union.difference(&meet).cloned().collect();
                if got == union || got == punctured {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::enumerate_points;

    fn pts(f: &Field, cs: &[&[u16]]) -> Vec<ProjPoint> {
        cs.iter().map(|c| ProjPoint::new(f, c.iter().map(|&x| Fe(x)).collect()).unwrap()).collect()
    }

    #[test]
    fn json_round_trip() {
        let f = FieldCtx::gf(9).unwrap();
        let k = PointSet::new(&f, 2, pts(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 5, 7]])).unwrap();
        let j = k.to_json().unwrap();
        assert_eq!(j["field"], "3^2/x2+2x+2");
        assert_eq!(PointSet::from_json(&j).unwrap(), k);
        let mut bad = j.clone();
        bad["points"][0] = serde_json::json!([9, 0, 0]);
        assert!(PointSet::from_json(&bad).is_err());
        bad["schema"] = serde_json::json!("other");
        assert!(PointSet::from_json(&bad).is_err());
    }

    #[test]
    fn two_full_lines_fail() {
        let f3 = FieldCtx::gf(3).unwrap();
        let l1 = span_points(&f3, &pts(&f3, &[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let l2 = span_points(&f3, &pts(&f3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let k = PointSet::new(&f3, 2, l1.points(&f3).into_iter().chain(l2.points(&f3))).unwrap();
        assert_eq!(k.len(), 7);
        let r = has_property_star(&k, Budget::default()).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.plane.rank(), 3);
        assert!(w.meet_in_set);
        assert_eq!(w.meet.coords(), &[Fe(1), Fe(0), Fe(0)]);
        // minus the meet also fails
        let mut punctured = k.points().clone();
        punctured.remove(&w.meet);
        let kp = PointSet::new(&f3, 2, punctured).unwrap();
        let r = has_property_star(&kp, Budget::default()).unwrap();
        assert!(!r.holds && !r.witness.unwrap().meet_in_set);
    }

    #[test]
    fn fano_and_full_plane_hold() {
        let f4 = FieldCtx::gf(4).unwrap();
        let fano = PointSet::new(&f4, 2, subgeometry_points(&f4, 2, &Frame::standard(2)).unwrap()).unwrap();
        assert!(has_property_star(&fano, Budget::default()).unwrap().holds);
        let f3 = FieldCtx::gf(3).unwrap();
        let all = PointSet::new(&f3, 2, enumerate_points(2, &f3, Budget::default()).unwrap()).unwrap();
        assert!(has_property_star(&all, Budget::default()).unwrap().holds);
        let line = PointSet::new(&f3, 1, pts(&f3, &[&[1, 0]])).unwrap();
        assert!(has_property_star(&line, Budget::default()).is_err());
    }

    #[test]
    fn spanning() {
        let f4 = FieldCtx::gf(4).unwrap();
        let frame = PointSet::new(&f4, 2, Frame::standard(2).points().to_vec()).unwrap();
        assert!(spans_ambient(&frame));
        let hyper = PointSet::new(&f4, 2, pts(&f4, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])).unwrap();
        assert!(!spans_ambient(&hyper));
        assert_eq!(closure(&hyper).err(), Some(Error::NoFrame));
    }

    #[test]
    fn frame_closure_is_fano() {
        let f4 = FieldCtx::gf(4).unwrap();
        let frame = PointSet::new(&f4, 2, Frame::standard(2).points().to_vec()).unwrap();
        let c = closure(&frame).unwrap();
        let fano = subgeometry_points(&f4, 2, &Frame::standard(2)).unwrap();
        assert_eq!(c.points(), &fano);
        assert_eq!(closure(&c).unwrap(), c);
    }

    #[test]
    fn frame_in_general_position_needed() {
        // four points spanning the plane, three of them collinear, plus nothing else
        let f4 = FieldCtx::gf(4).unwrap();
        let k = PointSet::new(&f4, 2, pts(&f4, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(spans_ambient(&k));
        assert!(find_frame(&k).is_none());
    }

    #[test]
    fn line_closure_uses_cross_ratio_subfield() {
        let f4 = FieldCtx::gf(4).unwrap();
        let k = PointSet::new(&f4, 1, pts(&f4, &[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(ClosureMethod::for_dim(1), ClosureMethod::SublineExtension);
        let c = closure(&k).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.points(), k.points());
        // a fourth point with cross-ratio outside F_2 generates the whole line
        let w = f4.generator();
        let mut more = k.to_vec();
        more.push(ProjPoint::new(&f4, vec![Fe(1), w]).unwrap());
        let c = closure(&PointSet::new(&f4, 1, more).unwrap()).unwrap();
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn subgeometry_in_pg2_9_is_closed() {
        let f9 = FieldCtx::gf(9).unwrap();
        let sub = subgeometry_points(&f9, 3, &Frame::standard(2)).unwrap();
        let k = PointSet::new(&f9, 2, sub.clone()).unwrap();
        assert_eq!(closure(&k).unwrap().points(), &sub);
        let frame = PointSet::new(&f9, 2, Frame::standard(2).points().to_vec()).unwrap();
        assert_eq!(closure(&frame).unwrap().points(), &sub);
    }

    #[test]
    fn oracle_agrees_on_fixed_cases() {
        let f3 = FieldCtx::gf(3).unwrap();
        let l1 = span_points(&f3, &pts(&f3, &[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let l2 = span_points(&f3, &pts(&f3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let k = PointSet::new(&f3, 2, l1.points(&f3).into_iter().chain(l2.points(&f3))).unwrap();
        assert!(!property_star_by_line_pairs(&k, Budget::default()).unwrap());
        let single = PointSet::new(&f3, 2, l1.points(&f3)).unwrap();
        assert!(property_star_by_line_pairs(&single, Budget::default()).unwrap());
        assert!(has_property_star(&single, Budget::default()).unwrap().holds);
    }
}
