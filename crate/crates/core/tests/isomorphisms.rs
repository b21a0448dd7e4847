use std::collections::HashSet;
use std::sync::Arc;

use finrep::autcount::enumerate_isomorphisms;
use finrep::coset::{AutGroup, CosetGeometry};
use finrep::isomaps::{coset_to_linrep, x_to_coset};
use finrep::linrep::{build_linrep, LinRepSpec};
use finrep::projgeom::enumerate_points;
use finrep::xgeom::{build_x, XSpec};
use finrep::{Budget, CompanionAlgebra, FieldCtx};

#[test]
fn x_and_coset_have_576_isomorphisms_at_q2() {
    let f = FieldCtx::gf(2).unwrap();
    let x = Arc::new(build_x(&XSpec::new(1, 2, &f).unwrap(), Budget::default()).unwrap());
    let c = Arc::new(CosetGeometry::new(1, 2, &f).unwrap().build(Budget::default()).unwrap());
    let isos = enumerate_isomorphisms(&x, &c, Budget::new(1_000_000)).unwrap();
    assert_eq!(isos.len(), 576);
    let distinct: HashSet<_> = isos.iter().map(|m| m.point_map.clone()).collect();
    assert_eq!(distinct.len(), 576);
    // the explicit coordinatization is one of them
    let m = x_to_coset(&XSpec::new(1, 2, &f).unwrap(), Budget::default()).unwrap();
    assert!(distinct.contains(&m.point_map));
}

#[test]
fn four_points_at_infinity_is_not_the_subline_model() {
    let f4 = FieldCtx::gf(4).unwrap();
    let line: Vec<_> = enumerate_points(1, &f4, Budget::default()).unwrap();
    let pad = |p: &finrep::ProjPoint| {
        let mut c = p.coords().to_vec();
        c.push(finrep::Fe::ZERO);
        finrep::ProjPoint::new(&f4, c).unwrap()
    };
    let four = LinRepSpec::new(&f4, 1, line.iter().take(4).map(pad)).unwrap();
    let three = LinRepSpec::new(&f4, 1, line.iter().take(3).map(pad)).unwrap();
    let a = Arc::new(build_linrep(&four, Budget::default()).unwrap());
    let b = Arc::new(build_linrep(&three, Budget::default()).unwrap());
    assert_eq!(a.num_points(), b.num_points());
    assert!(enumerate_isomorphisms(&a, &b, Budget::new(1_000_000)).unwrap().is_empty());
    // while the three-point set is isomorphic to itself in 576 ways
    assert_eq!(enumerate_isomorphisms(&b, &b, Budget::new(1_000_000)).unwrap().len(), 576);
}

#[test]
fn every_group_element_transported_to_linrep_is_an_isomorphism() {
    let f = FieldCtx::gf(2).unwrap();
    let alg = CompanionAlgebra::standard(&f, 2).unwrap();
    let geom = CosetGeometry::new(1, 2, &f).unwrap();
    let m = coset_to_linrep(1, 2, &alg, Budget::default()).unwrap();
    let all: HashSet<Vec<usize>> = enumerate_isomorphisms(&m.source, &m.target, Budget::new(1_000_000))
        .unwrap()
        .into_iter()
        .map(|g| g.point_map)
        .collect();
    assert_eq!(all.len(), 576);
    let grp = AutGroup::new(&geom);
    let points: Vec<_> = geom.points().collect();
    let mut seen = HashSet::new();
    for g in grp.elements(Budget::default()).unwrap() {
        let perm = grp.point_permutation(&geom, &points, &g);
        let composite: Vec<usize> = perm.iter().map(|&i| m.point_map[i as usize]).collect();
        assert!(all.contains(&composite));
        seen.insert(composite);
    }
    // the quotient by the scalar kernel is all of Aut at q = 2
    assert_eq!(seen.len(), 576);
}

#[test]
fn subline_models_agree_at_q3() {
    let f = FieldCtx::gf(3).unwrap();
    let alg = CompanionAlgebra::standard(&f, 2).unwrap();
    let m = coset_to_linrep(1, 2, &alg, Budget::default()).unwrap();
    assert!(m.is_flag_preserving());
    assert_eq!((m.source.num_points(), m.source.num_lines()), (81, 36));
}
