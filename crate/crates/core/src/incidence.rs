//! Point-line incidence structures with canonical labels.
//!
//! Every geometry in the crate is reduced to this form: an indexed list of
//! point labels, an indexed list of line labels and, for each line, the sorted
//! indices of its points. Labels are canonical keys, so two constructions that
//! describe the same geometry in the same coordinates produce equal label sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::Fe;
use crate::linalg::Matrix;

pub const INCIDENCE_SCHEMA: &str = "finrep.incidence/1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Label {
    /// Normalized homogeneous or affine coordinates.
    Coords(Vec<Fe>),
    /// Reduced row echelon basis of a subspace.
    Subspace(Matrix),
    /// A matrix over the base field.
    Matrix(Matrix),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    /// First component of a pair label.
    pub fn head(&self) -> Option<&Label> {
        match self {
            Label::Pair(a, _) => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    kind: String,
    meta: BTreeMap<String, String>,
    points: Vec<Label>,
    lines: Vec<Label>,
    line_points: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Validates and indexes a structure. `line_points[l]` lists the points of line `l`.
    pub fn new(kind: &str, points: Vec<Label>, lines: Vec<Label>, mut line_points: Vec<Vec<usize>>) -> Result<Self> {
        if lines.len() != line_points.len() {
            return Err(Error::DimensionMismatch { expected: lines.len(), got: line_points.len() });
        }
        let mut seen = BTreeSet::new();
        if !points.iter().all(|p| seen.insert(p)) {
            return Err(Error::InvalidArgument("duplicate point label".into()));
        }
        let mut seen = BTreeSet::new();
        if !lines.iter().all(|l| seen.insert(l)) {
            return Err(Error::InvalidArgument("duplicate line label".into()));
        }
        let mut point_lines = vec![Vec::new(); points.len()];
        for (l, pts) in line_points.iter_mut().enumerate() {
            pts.sort_unstable();
            pts.dedup();
            if pts.len() < 2 {
                return Err(Error::InvalidArgument(format!("line {l} has fewer than two points")));
            }
            for &p in pts.iter() {
                if p >= points.len() {
                    return Err(Error::InvalidArgument(format!("line {l} references point {p}")));
                }
                point_lines[p].push(l);
            }
        }
        Ok(IncidenceStructure {
            kind: kind.to_string(),
            meta: BTreeMap::new(),
            points,
            lines,
            line_points,
            point_lines,
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn num_flags(&self) -> usize {
        self.line_points.iter().map(Vec::len).sum()
    }

    pub fn points(&self) -> &[Label] {
        &self.points
    }

    pub fn lines(&self) -> &[Label] {
        &self.lines
    }

    pub fn line_points(&self, l: usize) -> &[usize] {
        &self.line_points[l]
    }

    pub fn point_lines(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn is_flag(&self, p: usize, l: usize) -> bool {
        self.line_points[l].binary_search(&p).is_ok()
    }

    /// All flags `(point, line)` ordered by line, then point.
    pub fn flags(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.line_points.iter().enumerate().flat_map(|(l, ps)| ps.iter().map(move |&p| (p, l)))
    }

    pub fn point_index(&self) -> HashMap<&Label, usize> {
        self.points.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }

    pub fn line_index(&self) -> HashMap<&Label, usize> {
        self.lines.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }

    /// Distinct line sizes, ascending.
    pub fn line_sizes(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.line_points.iter().map(Vec::len).collect();
        s.into_iter().collect()
    }

    /// Largest number of lines through a pair of distinct points.
    pub fn max_lines_per_pair(&self) -> usize {
        let mut best = 0;
        for p in 0..self.points.len() {
            let mut count: HashMap<usize, usize> = HashMap::new();
            for &l in &self.point_lines[p] {
                for &r in &self.line_points[l] {
                    if r != p {
                        *count.entry(r).or_default() += 1;
                    }
                }
            }
            best = best.max(count.values().copied().max().unwrap_or(0));
        }
        best
    }

    /// Equal point labels, equal line labels and equal flags, up to index order.
    pub fn same_labels(&self, other: &IncidenceStructure) -> bool {
        let key = |g: &IncidenceStructure| -> BTreeSet<(Label, Vec<Label>)> {
            g.lines
                .iter()
                .enumerate()
                .map(|(l, lab)| {
                    let mut pts: Vec<Label> = g.line_points[l].iter().map(|&p| g.points[p].clone()).collect();
                    pts.sort();
                    (lab.clone(), pts)
                })
                .collect()
        };
        let pts = |g: &IncidenceStructure| -> BTreeSet<Label> { g.points.iter().cloned().collect() };
        pts(self) == pts(other) && key(self) == key(other)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": INCIDENCE_SCHEMA,
            "kind": self.kind,
            "meta": self.meta,
            "counts": {
                "points": self.num_points(),
                "lines": self.num_lines(),
                "flags": self.num_flags(),
            },
            "points": self.points,
            "lines": self.lines,
            "line_points": self.line_points,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("incidence JSON: {what}"));
        if value.get("schema").and_then(|s| s.as_str()) != Some(INCIDENCE_SCHEMA) {
            return Err(bad("missing or unknown schema"));
        }
        let kind = value.get("kind").and_then(|s| s.as_str()).ok_or_else(|| bad("kind"))?;
        let points: Vec<Label> = serde_json::from_value(value.get("points").cloned().ok_or_else(|| bad("points"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let lines: Vec<Label> = serde_json::from_value(value.get("lines").cloned().ok_or_else(|| bad("lines"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let lp: Vec<Vec<usize>> =
            serde_json::from_value(value.get("line_points").cloned().ok_or_else(|| bad("line_points"))?)
                .map_err(|e| bad(&e.to_string()))?;
        let mut g = IncidenceStructure::new(kind, points, lines, lp)?;
        if let Some(meta) = value.get("meta").and_then(|m| m.as_object()) {
            for (k, v) in meta {
                g.meta.insert(k.clone(), v.as_str().unwrap_or_default().to_string());
            }
        }
        Ok(g)
    }

    /// Bipartite incidence graph in DIMACS edge format: vertices `1..=P` are
    /// points, `P+1..=P+L` are lines, one edge per flag.
    pub fn to_dimacs(&self) -> String {
        let np = self.num_points();
        let mut out = String::new();
        writeln!(out, "c {} incidence graph", self.kind).unwrap();
        writeln!(out, "c points={} lines={} flags={}", np, self.num_lines(), self.num_flags()).unwrap();
        writeln!(out, "p edge {} {}", np + self.num_lines(), self.num_flags()).unwrap();
        for (p, l) in self.flags() {
            writeln!(out, "e {} {}", p + 1, np + l + 1).unwrap();
        }
        out
    }

    /// Counts line as `key=value` pairs.
    pub fn summary(&self) -> String {
        format!("points={} lines={} flags={}", self.num_points(), self.num_lines(), self.num_flags())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u16]) -> Label {
        Label::Coords(v.iter().map(|&x| Fe(x)).collect())
    }

    fn triangle() -> IncidenceStructure {
        let pts = vec![c(&[0]), c(&[1]), c(&[2])];
        let lines = vec![c(&[0, 1]), c(&[0, 2]), c(&[1, 2])];
        IncidenceStructure::new("triangle", pts, lines, vec![vec![0, 1], vec![2, 0], vec![1, 2]]).unwrap()
    }

    #[test]
    fn indexes_and_flags() {
        let g = triangle();
        assert_eq!(g.num_flags(), 6);
        assert_eq!(g.line_points(1), &[0, 2]);
        assert_eq!(g.point_lines(0), &[0, 1]);
        assert!(g.is_flag(2, 1) && !g.is_flag(2, 0));
        assert_eq!(g.max_lines_per_pair(), 1);
        assert_eq!(g.line_sizes(), vec![2]);
    }

    #[test]
    fn rejects_malformed() {
        let pts = vec![c(&[0]), c(&[1])];
        assert!(IncidenceStructure::new("x", pts.clone(), vec![c(&[9])], vec![vec![0]]).is_err());
        assert!(IncidenceStructure::new("x", pts.clone(), vec![c(&[9])], vec![vec![0, 5]]).is_err());
        assert!(IncidenceStructure::new("x", vec![c(&[0]), c(&[0])], vec![], vec![]).is_err());
        assert!(IncidenceStructure::new("x", pts, vec![c(&[9]), c(&[9])], vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn json_roundtrip_and_dimacs() {
        let g = triangle().with_meta("q", 2);
        let j = g.to_json();
        let back = IncidenceStructure::from_json(&j).unwrap();
        assert!(back.same_labels(&g));
        assert_eq!(back.meta().get("q").map(String::as_str), Some("2"));
        let d = g.to_dimacs();
        assert!(d.contains("p edge 6 6"));
        assert_eq!(d.lines().filter(|l| l.starts_with("e ")).count(), 6);
    }

    #[test]
    fn same_labels_ignores_order() {
        let g = triangle();
        let pts = vec![c(&[2]), c(&[1]), c(&[0])];
        let lines = vec![c(&[1, 2]), c(&[0, 1]), c(&[0, 2])];
        let h = IncidenceStructure::new("other", pts, lines, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(g.same_labels(&h));
        let k = IncidenceStructure::new(
            "bad",
            g.points().to_vec(),
            g.lines().to_vec(),
            vec![vec![0, 1], vec![0, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(!g.same_labels(&k));
    }
}
