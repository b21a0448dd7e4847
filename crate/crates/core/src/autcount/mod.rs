//! Group orders: closed forms, brute-force automorphism counts, and the
//! extension check for linear representations of a set and its closure.

pub mod formulas;
pub mod search;
pub mod srg;

pub use formulas::*;
pub use search::{
    all_isomorphisms, automorphism_group, brute_force_automorphisms, point_base, pointwise_stabilizer_order,
    split_incidence_perm, AutReport, ColoredGraph,
};
pub use srg::{srg_check, SrgResult};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coset::line_lookup;
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::isomaps::{verify_map, GeometryMap};
use crate::linrep::{build_linrep, LinRepSpec};
use crate::pointsets::{closure, PointSet};
use crate::projgeom::Budget;

/// Every isomorphism from `g1` onto `g2` (points to points, lines to lines),
/// each verified. Empty exactly when the structures are not isomorphic.
pub fn enumerate_isomorphisms(
    g1: &Arc<IncidenceStructure>,
    g2: &Arc<IncidenceStructure>,
    budget: Budget,
) -> Result<Vec<GeometryMap>> {
    if g1.num_points() != g2.num_points() || g1.num_lines() != g2.num_lines() {
        return Ok(Vec::new());
    }
    let maps = all_isomorphisms(&ColoredGraph::from_incidence(g1), &ColoredGraph::from_incidence(g2), budget)?;
    maps.iter()
        .map(|perm| {
            let (points, _) = split_incidence_perm(g1, perm);
            let mut m = GeometryMap::new(g1.clone(), g2.clone(), points);
            if !verify_map(&mut m).eq(&crate::isomaps::MapStatus::FlagPreserving { flags: g1.num_flags() }) {
                return Err(Error::Verification("search returned a map that is not an isomorphism".into()));
            }
            Ok(m)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureExtensionReport {
    pub k_size: usize,
    pub closure_size: usize,
    pub points: usize,
    pub lines_k: usize,
    pub lines_closure: usize,
    pub aut_order_k: u128,
    pub aut_order_closure: u128,
    pub generators_checked: usize,
    /// Index of the first generator that does not map lines of the closure's representation to lines.
    pub failing_generator: Option<usize>,
}

impl ClosureExtensionReport {
    pub fn all_extend(&self) -> bool {
        self.failing_generator.is_none()
    }
}

/// Computes the automorphism group of `T*(K)` by search and checks that each
/// generator also permutes the lines of `T*(closure(K))`. Both structures share
/// the affine point set, so the generator's point permutation is reused as is.
pub fn closure_extension_check(k: &PointSet, budget: Budget) -> Result<ClosureExtensionReport> {
    let cl = closure(k)?;
    let small = build_linrep(&LinRepSpec::from_infinity_set(k)?, budget)?;
    let big = build_linrep(&LinRepSpec::from_infinity_set(&cl)?, budget)?;
    if small.points() != big.points() {
        return Err(Error::Verification("representations have different point sets".into()));
    }
    let aut = brute_force_automorphisms(&small, budget)?;
    let aut_big = brute_force_automorphisms(&big, budget)?;
    let lookup = line_lookup(&big);
    let mut failing = None;
    for (i, g) in aut.generators.iter().enumerate() {
        let (perm, _) = split_incidence_perm(&small, g);
        let ok = (0..big.num_lines()).all(|l| {
            let mut img: Vec<usize> = big.line_points(l).iter().map(|&p| perm[p]).collect();
            img.sort_unstable();
            lookup.contains_key(&img)
        });
        if !ok {
            failing = Some(i);
            break;
        }
    }
    Ok(ClosureExtensionReport {
        k_size: k.len(),
        closure_size: cl.len(),
        points: small.num_points(),
        lines_k: small.num_lines(),
        lines_closure: big.num_lines(),
        aut_order_k: aut.order,
        aut_order_closure: aut_big.order,
        generators_checked: aut.generators.len(),
        failing_generator: failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Fe, FieldCtx};
    use crate::xgeom::{build_x, XSpec};

    #[test]
    fn brute_force_matches_formula_on_small_x() {
        for (n, t, q) in [(1, 2, 2), (1, 2, 3)] {
            let f = FieldCtx::gf(q).unwrap();
            let g = build_x(&XSpec::new(n, t, &f).unwrap(), Budget::default()).unwrap();
            let r = brute_force_automorphisms(&g, Budget::default()).unwrap();
            assert_eq!(r.order, order_stab_pi(n as u32, t as u32, q).unwrap(), "X({n},{t},{q})");
            let cg = ColoredGraph::from_incidence(&g);
            assert!(r.generators.iter().all(|p| cg.is_isomorphism(&cg, p)));
        }
    }

    #[test]
    fn three_points_of_a_subline_extend() {
        let f = FieldCtx::gf(9).unwrap();
        let k = PointSet::from_coords(&f, 1, &[vec![Fe(1), Fe(0)], vec![Fe(0), Fe(1)], vec![Fe(1), Fe(1)]]).unwrap();
        let r = closure_extension_check(&k, Budget::default()).unwrap();
        assert_eq!((r.k_size, r.closure_size, r.points, r.lines_k, r.lines_closure), (3, 4, 81, 27, 36));
        assert_eq!(r.aut_order_closure, 93312);
        assert_eq!(r.aut_order_k, 23328);
        assert!(r.all_extend(), "{r:?}");
    }

    #[test]
    fn two_points_have_no_closure() {
        let f = FieldCtx::gf(4).unwrap();
        let k = PointSet::from_coords(&f, 1, &[vec![Fe(1), Fe(0)], vec![Fe(0), Fe(1)]]).unwrap();
        assert_eq!(closure_extension_check(&k, Budget::default()).err(), Some(Error::NoFrame));
    }
}
