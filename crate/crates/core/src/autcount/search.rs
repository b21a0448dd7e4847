//! Backtracking automorphism and isomorphism search on vertex-colored graphs.
//!
//! Colorings are refined with 1-dimensional Weisfeiler-Leman: a vertex's new
//! color is its old color together with the multiset of its neighbours'
//! colors, and color ids are handed out in sorted order of these signatures.
//! The two colorings being matched are refined together so that equal ids
//! mean equal signatures on both sides.
//!
//! The group order is the product of orbit lengths along a base. The base is
//! read off the leftmost path of the search tree. Levels are processed from the
//! deepest up, so every automorphism already found fixes the current base
//! prefix and can be used to fill in orbits without further search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::incidence::IncidenceStructure;
use crate::projgeom::Budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<u32>>,
    colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn new(adj: Vec<Vec<u32>>, colors: Vec<u32>) -> Result<Self> {
        if adj.len() != colors.len() {
            return Err(Error::DimensionMismatch { expected: adj.len(), got: colors.len() });
        }
        let mut adj = adj;
        for ns in &mut adj {
            ns.sort_unstable();
            ns.dedup();
        }
        Ok(ColoredGraph { adj, colors })
    }

    /// The bipartite incidence graph: points first (color 0), then lines (color 1).
    pub fn from_incidence(g: &IncidenceStructure) -> Self {
        let np = g.num_points();
        let mut adj = vec![Vec::new(); np + g.num_lines()];
        for (p, l) in g.flags() {
            adj[p].push((np + l) as u32);
            adj[np + l].push(p as u32);
        }
        let colors = (0..adj.len()).map(|v| u32::from(v >= np)).collect();
        ColoredGraph::new(adj, colors).expect("consistent sizes")
    }

    pub fn from_graph(g: &Graph) -> Self {
        let adj = (0..g.num_vertices()).map(|v| g.neighbors(v).iter().map(|&u| u as u32).collect()).collect();
        ColoredGraph::new(adj, vec![0; g.num_vertices()]).expect("consistent sizes")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Whether `map` is a color-preserving isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &ColoredGraph, map: &[u32]) -> bool {
        if map.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; self.len()];
        for &w in map {
            if w as usize >= other.len() || std::mem::replace(&mut hit[w as usize], true) {
                return false;
            }
        }
        (0..self.len()).all(|v| {
            self.colors[v] == other.colors[map[v] as usize]
                && self.adj[v].len() == other.adj[map[v] as usize].len()
                && self.adj[v].iter().all(|&u| other.has_edge(map[v], map[u as usize]))
        })
    }
}

struct Search<'a> {
    g1: &'a ColoredGraph,
    g2: &'a ColoredGraph,
    nodes: u128,
    limit: u128,
}

type Coloring = Vec<u32>;

fn num_colors(c: &Coloring) -> usize {
    c.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { requested: self.nodes, limit: self.limit });
        }
        Ok(())
    }

    /// Refines both colorings to a common stable coloring; `false` if they diverge.
    fn refine(&self, c1: &mut Coloring, c2: &mut Coloring) -> bool {
        let mut count = num_colors(c1);
        loop {
            let sig = |g: &ColoredGraph, c: &Coloring| -> Vec<Vec<u32>> {
                (0..g.len())
                    .map(|v| {
                        let mut s: Vec<u32> = Vec::with_capacity(g.adj[v].len() + 1);
                        s.push(c[v]);
                        let start = s.len();
                        s.extend(g.adj[v].iter().map(|&u| c[u as usize]));
                        s[start..].sort_unstable();
                        s
                    })
                    .collect()
            };
            let s1 = sig(self.g1, c1);
            let s2 = sig(self.g2, c2);
            let mut ids: BTreeMap<&Vec<u32>, u32> = BTreeMap::new();
            for s in s1.iter().chain(&s2) {
                ids.insert(s, 0);
            }
            for (i, v) in ids.values_mut().enumerate() {
                *v = i as u32;
            }
            let mut h1 = vec![0usize; ids.len()];
            let mut h2 = vec![0usize; ids.len()];
            for (v, s) in s1.iter().enumerate() {
                c1[v] = ids[s];
                h1[c1[v] as usize] += 1;
            }
            for (v, s) in s2.iter().enumerate() {
                c2[v] = ids[s];
                h2[c2[v] as usize] += 1;
            }
            if h1 != h2 {
                return false;
            }
            if ids.len() == count {
                return true;
            }
            count = ids.len();
        }
    }

    /// Individualizes `v` on the left and `w` on the right, then refines.
    fn individualize(&self, c1: &Coloring, v: u32, c2: &Coloring, w: u32) -> Option<(Coloring, Coloring)> {
        if c1[v as usize] != c2[w as usize] {
            return None;
        }
        let fresh = num_colors(c1) as u32;
        let mut a = c1.clone();
        let mut b = c2.clone();
        a[v as usize] = fresh;
        b[w as usize] = fresh;
        self.refine(&mut a, &mut b).then_some((a, b))
    }

    /// Vertices of the first smallest non-singleton cell, or `None` when discrete.
    fn target_cell(c: &Coloring) -> Option<(u32, Vec<u32>)> {
        let mut cells: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (v, &col) in c.iter().enumerate() {
            cells.entry(col).or_default().push(v as u32);
        }
        cells.into_iter().filter(|(_, vs)| vs.len() > 1).min_by_key(|(col, vs)| (vs.len(), *col))
    }

    fn cell_of(c: &Coloring, color: u32) -> Vec<u32> {
        (0..c.len() as u32).filter(|&v| c[v as usize] == color).collect()
    }

    fn leaf_map(c1: &Coloring, c2: &Coloring) -> Vec<u32> {
        let mut by_color = vec![0u32; c2.len()];
        for (w, &col) in c2.iter().enumerate() {
            by_color[col as usize] = w as u32;
        }
        c1.iter().map(|&col| by_color[col as usize]).collect()
    }

    /// Finds one isomorphism compatible with the two (equitable) colorings.
    fn find_one(&mut self, c1: &Coloring, c2: &Coloring) -> Result<Option<Vec<u32>>> {
        self.tick()?;
        let Some((color, cell)) = Self::target_cell(c1) else {
            let map = Self::leaf_map(c1, c2);
            return Ok(self.g1.is_isomorphism(self.g2, &map).then_some(map));
        };
        let v = cell[0];
        for w in Self::cell_of(c2, color) {
            if let Some((a, b)) = self.individualize(c1, v, c2, w) {
                if let Some(m) = self.find_one(&a, &b)? {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    }

    fn find_all(&mut self, c1: &Coloring, c2: &Coloring, out: &mut Vec<Vec<u32>>) -> Result<()> {
        self.tick()?;
        let Some((color, cell)) = Self::target_cell(c1) else {
            let map = Self::leaf_map(c1, c2);
            if self.g1.is_isomorphism(self.g2, &map) {
                out.push(map);
            }
            return Ok(());
        };
        let v = cell[0];
        for w in Self::cell_of(c2, color) {
            if let Some((a, b)) = self.individualize(c1, v, c2, w) {
                self.find_all(&a, &b, out)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub order: u128,
    pub base: Vec<u32>,
    pub orbit_sizes: Vec<u64>,
    /// Sorted; each is a permutation of all vertices.
    pub generators: Vec<Vec<u32>>,
    pub nodes: u128,
}

fn orbit(start: u32, gens: &[Vec<u32>], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Order and generators of the color-preserving automorphism group. The
/// budget caps the number of search-tree nodes.
pub fn automorphism_group(g: &ColoredGraph, budget: Budget) -> Result<AutReport> {
    let mut s = Search { g1: g, g2: g, nodes: 0, limit: budget.max_items };
    let n = g.len();
    let mut c0 = g.colors.clone();
    let mut c0b = g.colors.clone();
    s.refine(&mut c0, &mut c0b);
    let mut levels: Vec<Coloring> = vec![c0];
    let mut base = Vec::new();
    while let Some((_, cell)) = Search::target_cell(levels.last().unwrap()) {
        let c = levels.last().unwrap();
        let v = cell[0];
        let (next, _) = s.individualize(c, v, c, v).expect("same vertex on both sides");
        base.push(v);
        levels.push(next);
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut orbit_sizes = vec![0u64; base.len()];
    for i in (0..base.len()).rev() {
        let c = &levels[i];
        let v = base[i];
        let mut in_orbit = orbit(v, &gens, n);
        for w in Search::cell_of(c, c[v as usize]) {
            if in_orbit[w as usize] {
                continue;
            }
            s.tick()?;
            if let Some((a, b)) = s.individualize(c, v, c, w) {
                if let Some(perm) = s.find_one(&a, &b)? {
                    gens.push(perm);
                    in_orbit = orbit(v, &gens, n);
                }
            }
        }
        orbit_sizes[i] = in_orbit.iter().filter(|&&x| x).count() as u64;
    }
    let order = orbit_sizes
        .iter()
        .try_fold(1u128, |acc, &k| acc.checked_mul(k as u128))
        .ok_or(Error::Overflow("group order"))?;
    gens.sort();
    gens.dedup();
    Ok(AutReport { order, base, orbit_sizes, generators: gens, nodes: s.nodes })
}

/// Every color-preserving isomorphism from `g1` onto `g2`, as vertex maps.
/// The search follows a fixed path on the `g1` side and branches on `g2`.
pub fn all_isomorphisms(g1: &ColoredGraph, g2: &ColoredGraph, budget: Budget) -> Result<Vec<Vec<u32>>> {
    if g1.len() != g2.len() {
        return Ok(Vec::new());
    }
    let mut s = Search { g1, g2, nodes: 0, limit: budget.max_items };
    let mut a = g1.colors.clone();
    let mut b = g2.colors.clone();
    let mut out = Vec::new();
    if s.refine(&mut a, &mut b) {
        s.find_all(&a, &b, &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// Brute-force automorphism count of an incidence structure (points map to points, lines to lines).
pub fn brute_force_automorphisms(g: &IncidenceStructure, budget: Budget) -> Result<AutReport> {
    automorphism_group(&ColoredGraph::from_incidence(g), budget)
}

/// Order of the group of automorphisms fixing each listed point of `g`.
pub fn pointwise_stabilizer_order(g: &IncidenceStructure, points: &[usize], budget: Budget) -> Result<u128> {
    let mut cg = ColoredGraph::from_incidence(g);
    for (i, &p) in points.iter().enumerate() {
        if p >= g.num_points() {
            return Err(Error::InvalidArgument(format!("no point {p}")));
        }
        cg.colors[p] = 2 + i as u32;
    }
    Ok(automorphism_group(&cg, budget)?.order)
}

/// Greedily picks points, in index order, that shrink the pointwise stabilizer
/// until it is trivial.
pub fn point_base(g: &IncidenceStructure, budget: Budget) -> Result<Vec<usize>> {
    let mut base = Vec::new();
    let mut order = pointwise_stabilizer_order(g, &base, budget)?;
    for p in 0..g.num_points() {
        if order == 1 {
            break;
        }
        base.push(p);
        let o = pointwise_stabilizer_order(g, &base, budget)?;
        if o < order {
            order = o;
        } else {
            base.pop();
        }
    }
    Ok(base)
}

/// Splits a vertex permutation of the incidence graph into point and line permutations.
pub fn split_incidence_perm(g: &IncidenceStructure, perm: &[u32]) -> (Vec<usize>, Vec<usize>) {
    let np = g.num_points();
    let pts = perm[..np].iter().map(|&x| x as usize).collect();
    let lines = perm[np..].iter().map(|&x| x as usize - np).collect();
    (pts, lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Fe;
    use crate::incidence::Label;

    fn single_line(k: usize) -> IncidenceStructure {
        let pts: Vec<Label> = (0..k).map(|i| Label::Coords(vec![Fe(i as u16)])).collect();
        IncidenceStructure::new("line", pts, vec![Label::Coords(vec![])], vec![(0..k).collect()]).unwrap()
    }

    #[test]
    fn single_line_is_symmetric_group() {
        for (k, fact) in [(2, 2u128), (3, 6), (4, 24), (5, 120), (6, 720)] {
            let r = brute_force_automorphisms(&single_line(k), Budget::default()).unwrap();
            assert_eq!(r.order, fact);
        }
    }

    #[test]
    fn small_graphs() {
        let cycle = |n: usize| Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
        assert_eq!(automorphism_group(&ColoredGraph::from_graph(&cycle(5)), Budget::default()).unwrap().order, 10);
        assert_eq!(automorphism_group(&ColoredGraph::from_graph(&cycle(6)), Budget::default()).unwrap().order, 12);
        assert_eq!(automorphism_group(&ColoredGraph::from_graph(&Graph::path(4)), Budget::default()).unwrap().order, 2);
        assert_eq!(
            automorphism_group(&ColoredGraph::from_graph(&Graph::complete(5)), Budget::default()).unwrap().order,
            120
        );
        // Petersen graph
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = ColoredGraph::from_graph(&Graph::from_edges(10, edges));
        let r = automorphism_group(&petersen, Budget::default()).unwrap();
        assert_eq!(r.order, 120);
        for g in &r.generators {
            assert!(petersen.is_isomorphism(&petersen, g));
        }
        assert_eq!(all_isomorphisms(&petersen, &petersen, Budget::default()).unwrap().len(), 120);
    }

    #[test]
    fn non_isomorphic_graphs_have_no_maps() {
        let a = ColoredGraph::from_graph(&Graph::path(4));
        let b = ColoredGraph::from_graph(&Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]));
        assert!(all_isomorphisms(&a, &b, Budget::default()).unwrap().is_empty());
        let c = ColoredGraph::from_graph(&Graph::path(5));
        assert!(all_isomorphisms(&a, &c, Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let k = ColoredGraph::from_graph(&Graph::complete(6));
        assert!(matches!(all_isomorphisms(&k, &k, Budget::new(10)), Err(Error::BudgetExceeded { .. })));
    }
}
