//! Frozen values from sources independent of this crate: textbook group
//! orders, the Conway polynomial tables, and hand counts of small geometries.

use finrep::autcount::{order_gl, order_pgammal, order_pgl, order_stab_pi, srg_check};
use finrep::fields::field_spec_string;
use finrep::graph::point_graph;
use finrep::projgeom::{enumerate_points, enumerate_subspaces, gaussian_binomial};
use finrep::xgeom::{build_x, XSpec};
use finrep::{Budget, FieldCtx};

#[test]
fn classical_group_orders() {
    assert_eq!(order_gl(2, 2).unwrap(), 6);
    assert_eq!(order_gl(3, 2).unwrap(), 168);
    assert_eq!(order_pgl(2, 4).unwrap(), 60);
    assert_eq!(order_pgammal(2, 4).unwrap(), 120);
    assert_eq!(order_pgl(2, 9).unwrap(), 720);
    assert_eq!(order_pgammal(2, 9).unwrap(), 1440);
    assert_eq!(order_pgl(3, 3).unwrap(), 5616);
    assert_eq!(order_pgl(4, 2).unwrap(), 20160);
    assert_eq!(order_pgammal(3, 4).unwrap(), 120960);
}

#[test]
fn stabilizer_orders_for_small_cases() {
    assert_eq!(order_stab_pi(1, 2, 2).unwrap(), 576);
    assert_eq!(order_stab_pi(1, 2, 3).unwrap(), 93312);
}

#[test]
fn conway_polynomials() {
    for (q, s) in [
        (4, "2^2/x2+x+1"),
        (8, "2^3/x3+x+1"),
        (9, "3^2/x2+2x+2"),
        (16, "2^4/x4+x+1"),
        (25, "5^2/x2+4x+2"),
        (27, "3^3/x3+2x+1"),
        (49, "7^2/x2+6x+3"),
        (81, "3^4/x4+2x3+2"),
    ] {
        assert_eq!(field_spec_string(&FieldCtx::gf(q).unwrap()).unwrap(), s, "q = {q}");
    }
}

#[test]
fn gaussian_binomials_and_enumeration() {
    let f2 = FieldCtx::gf(2).unwrap();
    assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
    assert_eq!(gaussian_binomial(5, 2, 3).unwrap(), 1210);
    assert_eq!(enumerate_subspaces(4, 2, &f2, Budget::default()).unwrap().len(), 35);
    assert_eq!(enumerate_points(3, &FieldCtx::gf(3).unwrap(), Budget::default()).unwrap().len(), 40);
}

#[test]
fn x_counts() {
    // q^{t(n+1)} points; q^{tn} lines in each of (q^{n+1}-1)/(q-1) parallel classes
    for (n, t, q, points, lines) in [(1, 2, 2, 16, 12), (1, 2, 3, 81, 36), (2, 2, 2, 64, 112), (1, 3, 2, 64, 24)] {
        let f = FieldCtx::gf(q).unwrap();
        let x = build_x(&XSpec::new(n, t, &f).unwrap(), Budget::new(10_000_000)).unwrap();
        assert_eq!((x.num_points(), x.num_lines()), (points, lines), "X({n},{t},{q})");
        assert!(x.line_sizes().iter().all(|&s| s == (q as usize).pow(t as u32)));
        assert_eq!(x.max_lines_per_pair(), 1);
    }
}

#[test]
fn point_graph_is_the_shrikhande_parameter_set() {
    let f = FieldCtx::gf(2).unwrap();
    let x = build_x(&XSpec::new(1, 2, &f).unwrap(), Budget::default()).unwrap();
    let r = srg_check(&point_graph(&x));
    assert_eq!(r.params(), Some((16, 9, Some(4), Some(6))));
}
