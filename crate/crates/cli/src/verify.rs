use std::collections::HashSet;

use clap::ValueEnum;
use finrep::autcount::{
    brute_force_automorphisms, closure_extension_check, order_stab_pi, point_base, pointwise_stabilizer_order,
    srg_check, GroupOrderReport, SrgResult,
};
use finrep::coset::{check_action_axiom, line_lookup, AutGroup, CosetGeometry};
use finrep::graph::point_graph;
use finrep::isomaps::{
    barlotti_cofman, base_subgeometry, coset_to_linrep, reduced_infinity_set, spread_report, x_to_coset, x_to_linrep,
    GeometryMap,
};
use finrep::linrep::{build_gen_linrep, LinRepSpec};
use finrep::pointsets::{closure, has_property_star, property_star_by_line_pairs, PointSet};
use finrep::projgeom::{enumerate_points, span_points, Frame};
use finrep::xgeom::{line_direction_report, XSpec};
use finrep::{Fe, Field, ProjPoint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::structures::{algebra, build, Kind};
use crate::{usage, Params};

pub const REPORT_SCHEMA: &str = "finrep.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    IsoXCoset,
    IsoCosetLinrep,
    IsoXLinrep,
    Barlotti,
    Orders,
    Brute,
    Srg,
    Closure,
    PropertyStar,
    StarOracle,
    Directions,
    Group,
    Spread,
    ClosureExtension,
}

pub struct Report {
    pub check: String,
    pub pass: bool,
    entries: Vec<(String, Value)>,
    /// Bulky data that goes to the JSON report only.
    extra: Vec<(String, Value)>,
}

impl Report {
    fn new(check: Check) -> Self {
        let name = check.to_possible_value().expect("no skipped variants").get_name().to_string();
        Report { check: name, pass: true, entries: Vec::new(), extra: Vec::new() }
    }

    fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    fn put_extra(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.extra.push((key.to_string(), value.into()));
        self
    }

    pub fn key_values(&self) -> String {
        let mut out = format!("check={}\n", self.check);
        for (k, v) in &self.entries {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}={text}\n"));
        }
        out.push_str(if self.pass { "result=pass\n" } else { "result=fail\n" });
        out
    }

    pub fn to_json(&self) -> Value {
        let mut details = serde_json::Map::new();
        for (k, v) in self.entries.iter().chain(&self.extra) {
            details.insert(k.clone(), v.clone());
        }
        json!({ "schema": REPORT_SCHEMA, "check": self.check, "pass": self.pass, "details": details })
    }
}

fn map_entries(r: &mut Report, m: &GeometryMap) {
    let flags = m.source.num_flags();
    r.put("source", m.source.kind())
        .put("target", m.target.kind())
        .put("points", m.source.num_points())
        .put("lines", m.source.num_lines())
        .put("flags", format!("{}/{}", if m.is_flag_preserving() { flags } else { 0 }, flags));
    r.put_extra("map", m.to_json());
    r.pass &= m.is_flag_preserving();
}

fn x_spec(params: &Params) -> anyhow::Result<XSpec> {
    Ok(XSpec::new(params.n()?, params.t()?, &params.field()?)?)
}

fn params_entries(r: &mut Report, params: &Params) -> anyhow::Result<()> {
    r.put("n", params.n()?).put("t", params.t()?).put("q", params.field()?.order());
    Ok(())
}

fn coords(p: &ProjPoint) -> Vec<u16> {
    p.coords().iter().map(|x| x.0).collect()
}

/// The points of `--input`, or the standard frame of `PG(n, q)` without one.
fn input_or_frame(params: &Params) -> anyhow::Result<PointSet> {
    match params.read_input()? {
        Some(k) => Ok(k),
        None => {
            let n = params.n()?;
            Ok(PointSet::new(&params.field()?, n, Frame::standard(n).points().to_vec())?)
        }
    }
}

/// The order `q0` with `|PG(n, q0)| = size`, if there is one.
fn subgeometry_order(n: usize, size: usize) -> Option<u64> {
    (2u64..=1024).find(|&q0| (0..=n as u32).map(|i| q0.pow(i)).sum::<u64>() == size as u64)
}

/// A random subset of `PG(2, q)`: half the time two concurrent lines (with or
/// without their meet) plus a little noise, otherwise a uniform subset.
pub fn random_plane_set(rng: &mut ChaCha8Rng, all: &[ProjPoint], f: &Field) -> finrep::Result<PointSet> {
    let mut sh = all.to_vec();
    sh.shuffle(rng);
    let mut pts: Vec<ProjPoint> = Vec::new();
    if rng.gen_bool(0.5) {
        let (p, a, b) = (&sh[0], &sh[1], &sh[2]);
        pts.extend(span_points(f, &[p.clone(), a.clone()])?.points(f));
        pts.extend(span_points(f, &[p.clone(), b.clone()])?.points(f));
        if rng.gen_bool(0.5) {
            pts.retain(|x| x != p);
        }
        let extra = rng.gen_range(0..3);
        pts.extend(sh[3..].iter().take(extra).cloned());
    } else {
        let size = rng.gen_range(3..=all.len());
        pts.extend(sh.into_iter().take(size));
    }
    PointSet::new(f, 2, pts)
}

pub fn run(check: Check, params: &Params) -> anyhow::Result<Report> {
    let budget = params.budget();
    let mut r = Report::new(check);
    match check {
        Check::IsoXCoset => {
            params_entries(&mut r, params)?;
            map_entries(&mut r, &x_to_coset(&x_spec(params)?, budget)?);
        }
        Check::IsoCosetLinrep => {
            params_entries(&mut r, params)?;
            let alg = algebra(params)?;
            let m = coset_to_linrep(params.n()?, params.t()?, &alg, budget)?;
            r.put("infinity_points", base_subgeometry(&alg, params.n()?)?.len());
            map_entries(&mut r, &m);
        }
        Check::IsoXLinrep => {
            params_entries(&mut r, params)?;
            map_entries(&mut r, &x_to_linrep(&x_spec(params)?, &algebra(params)?, budget)?);
        }
        Check::Barlotti => {
            params_entries(&mut r, params)?;
            let alg = algebra(params)?;
            let (n, t) = (params.n()?, params.t()?);
            let spec = LinRepSpec::from_infinity_set(&base_subgeometry(&alg, n)?)?;
            let m = barlotti_cofman(&spec, &alg, budget)?;
            let gen = build_gen_linrep(t * (n + 1) - 1, t, alg.base(), &reduced_infinity_set(&spec, &alg)?, budget)?;
            let same = m.target.same_labels(&gen);
            map_entries(&mut r, &m);
            r.put("identical_to_genlinrep", same);
            r.pass &= same;
        }
        Check::Orders => {
            let (n, t, q) = (params.n()? as u32, params.t()? as u32, params.field()?.order() as u64);
            let o = GroupOrderReport::compute(n, t, q)?;
            params_entries(&mut r, params)?;
            r.put("full_order", o.full_order.to_string())
                .put("segre_stab_order", o.segre_stab_order.to_string())
                .put("persp_order", o.persp_order.to_string())
                .put("geometric_order", o.geometric_order.to_string())
                .put("ratio", o.ratio.to_string())
                .put("identity", format!("{}={}x{}", o.full_order, o.ratio, o.geometric_order))
                .put("matrix_group_order", o.matrix_group_order.to_string())
                .put("matrix_kernel_order", o.matrix_kernel_order.to_string());
            r.pass = o.all_hold();
        }
        Check::Brute => {
            let on = params.on.unwrap_or(Kind::X);
            let g = build(on, params)?;
            let a = brute_force_automorphisms(&g, budget)?;
            params_entries(&mut r, params)?;
            let expected = order_stab_pi(params.n()? as u32, params.t()? as u32, params.field()?.order() as u64)?;
            r.put("structure", g.kind())
                .put("order", a.order.to_string())
                .put("expected", expected.to_string())
                .put("generators", a.generators.len())
                .put("nodes", a.nodes.to_string());
            r.put_extra("base", json!(a.base)).put_extra("orbit_sizes", json!(a.orbit_sizes));
            r.put_extra("generator_permutations", json!(a.generators));
            r.pass = a.order == expected;
        }
        Check::Srg => {
            let g = build(params.on.unwrap_or(Kind::X), params)?;
            let pg = point_graph(&g);
            r.put("structure", g.kind());
            match srg_check(&pg) {
                SrgResult::Strong { v, k, lambda, mu, degenerate } => {
                    r.put("v", v)
                        .put("k", k)
                        .put("lambda", json!(lambda))
                        .put("mu", json!(mu))
                        .put("degenerate", degenerate);
                }
                SrgResult::NotStrong { reason, witness } => {
                    r.put("reason", reason).put("witness", json!(witness));
                    r.pass = false;
                }
            }
        }
        Check::Closure => {
            let k = input_or_frame(params)?;
            let c = closure(&k)?;
            let again = closure(&c)?;
            r.put("dim", k.dim())
                .put("field_order", k.field().order())
                .put("k_size", k.len())
                .put("closure_size", c.len())
                .put("subgeometry_order", json!(subgeometry_order(k.dim(), c.len())))
                .put("idempotent", again == c);
            r.put_extra("closure_points", json!(c.points().iter().map(coords).collect::<Vec<_>>()));
            r.pass = k.points().is_subset(c.points()) && again == c;
        }
        Check::PropertyStar => {
            let k = params.read_input()?.ok_or_else(|| usage("property-star needs --input"))?;
            let s = has_property_star(&k, budget)?;
            let oracle = property_star_by_line_pairs(&k, budget)?;
            r.put("k_size", k.len())
                .put("planes_checked", s.planes_checked)
                .put("holds", s.holds)
                .put("oracle_agrees", s.holds == oracle);
            if let Some(w) = &s.witness {
                let rows = |m: &finrep::Matrix| -> Vec<Vec<u16>> {
                    m.row_vecs().iter().map(|r| r.iter().map(|x| x.0).collect()).collect()
                };
                r.put("witness_plane", json!(rows(w.plane.basis())))
                    .put("witness_lines", json!([rows(w.lines[0].basis()), rows(w.lines[1].basis())]))
                    .put("witness_meet", json!(coords(&w.meet)))
                    .put("meet_in_set", w.meet_in_set);
            }
            r.pass = s.holds && s.holds == oracle;
        }
        Check::StarOracle => {
            let f = params.field()?;
            let all = enumerate_points(2, &f, budget)?;
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            let (mut agree, mut without) = (0, 0);
            for _ in 0..params.samples {
                let k = random_plane_set(&mut rng, &all, &f)?;
                let fast = has_property_star(&k, budget)?.holds;
                let oracle = property_star_by_line_pairs(&k, budget)?;
                agree += usize::from(fast == oracle);
                without += usize::from(!oracle);
            }
            r.put("q", f.order())
                .put("seed", params.seed)
                .put("samples", params.samples)
                .put("agree", agree)
                .put("without_star", without);
            r.pass = agree == params.samples;
        }
        Check::Directions => {
            let d = line_direction_report(&x_spec(params)?, budget)?;
            params_entries(&mut r, params)?;
            r.put("directions_exhaustive", d.directions_exhaustive.to_string())
                .put("lines_per_direction", json!(d.lines_per_direction))
                .put("formula_n_plus_1", d.formula_n_plus_1.to_string())
                .put("formula_n", d.formula_n.to_string())
                .put("formula_n_consistent", d.formula_n_matches);
            r.pass = d.formula_n_plus_1_matches;
        }
        Check::Group => {
            params_entries(&mut r, params)?;
            group_check(&mut r, params)?;
        }
        Check::Spread => {
            params_entries(&mut r, params)?;
            let s = spread_report(params.n()?, &algebra(params)?, budget)?;
            r.put("elements", s.elements)
                .put("element_rank", s.element_rank)
                .put("ambient_points", s.ambient_points)
                .put("partition", s.is_partition)
                .put("segre_points", s.segre_points)
                .put("segre_expected", s.segre_expected.to_string())
                .put("union_equals_segre", s.union_equals_segre);
            r.pass = s.all_hold();
        }
        Check::ClosureExtension => {
            let k = input_or_frame(params)?;
            let c = closure_extension_check(&k, budget)?;
            let q0 = subgeometry_order(k.dim(), c.closure_size);
            r.put("k_size", c.k_size)
                .put("closure_size", c.closure_size)
                .put("subgeometry_order", json!(q0))
                .put("points", c.points)
                .put("lines_k", c.lines_k)
                .put("lines_closure", c.lines_closure)
                .put("aut_order_k", c.aut_order_k.to_string())
                .put("aut_order_closure", c.aut_order_closure.to_string())
                .put("generators_checked", c.generators_checked)
                .put("all_extend", c.all_extend())
                .put("normative", q0.is_some_and(|q| q > 2));
            r.pass = c.all_extend();
        }
    }
    Ok(r)
}

fn group_check(r: &mut Report, params: &Params) -> anyhow::Result<()> {
    let budget = params.budget();
    let (n, t, f) = (params.n()?, params.t()?, params.field()?);
    let q = f.order() as u64;
    let geom = CosetGeometry::new(n, t, &f)?;
    let grp = AutGroup::new(&geom);
    let s = geom.build(budget)?;
    let lookup = line_lookup(&s);
    let points: Vec<_> = geom.points().collect();
    let elements = grp.elements(budget)?;
    let mut trivial = 0usize;
    let mut lines_ok = true;
    for g in &elements {
        let p = grp.point_permutation(&geom, &points, g);
        trivial += usize::from(p.iter().enumerate().all(|(i, &x)| i == x as usize));
        lines_ok &= (0..s.num_lines()).all(|l| {
            let mut img: Vec<usize> = s.line_points(l).iter().map(|&x| p[x] as usize).collect();
            img.sort_unstable();
            lookup.contains_key(&img)
        });
    }
    let zero = geom.index_of(&points[0].map(|_| Fe::ZERO));
    let images: HashSet<usize> =
        points.iter().map(|a| geom.index_of(&grp.act(&grp.translation(a), &points[zero]))).collect();
    let sharp = images.len() == points.len();
    let expected = order_stab_pi(n as u32, t as u32, q)?;
    let quotient_ok = elements.len() as u128 == grp.order()? && grp.order()? / (q as u128 - 1) == expected;
    r.put("group_order", elements.len()).put("quotient", (elements.len() as u128 / (q as u128 - 1)).to_string());
    r.put("acting_trivially", trivial).put("lines_preserved", lines_ok).put("translations_sharp", sharp);
    r.pass = quotient_ok && trivial == q as usize - 1 && lines_ok && sharp;
    if !lines_ok {
        // comparing on a base is only sound for automorphisms
        return Ok(());
    }
    let base = point_base(&s, budget)?;
    let base_ok = pointwise_stabilizer_order(&s, &base, budget)? == 1;
    let axiom = check_action_axiom(&geom, &base, budget)?;
    r.put("base", json!(base)).put("axiom_pairs", axiom.pairs.to_string());
    if let Some((g2, g1)) = &axiom.counterexample {
        r.put("counterexample", json!([g2.to_json(), g1.to_json()]));
    }
    r.pass &= base_ok && axiom.counterexample.is_none();
    Ok(())
}
