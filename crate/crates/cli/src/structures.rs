use std::collections::BTreeMap;

use clap::ValueEnum;
use finrep::coset::CosetGeometry;
use finrep::graph::point_graph;
use finrep::isomaps::{base_subgeometry, reduced_infinity_set};
use finrep::linrep::{build_gen_linrep, build_linrep, LinRepSpec};
use finrep::xgeom::{build_x, XSpec};
use finrep::{CompanionAlgebra, IncidenceStructure};

use crate::{Format, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// `T*_n(K)`, with `K` from `--input` or the subgeometry `PG(n, q)` in `PG(n, q^t)`.
    Linrep,
    /// The generalized representation over the spread elements of `PG(n, q)`.
    Genlinrep,
    X,
    Coset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    /// Cayley graph of the matrix group with rank-one connection set.
    Cayley,
    /// Collinearity graph of `X(n, t, q)`.
    Pointgraph,
    X,
    Coset,
    Linrep,
    Genlinrep,
}

pub fn algebra(params: &Params) -> anyhow::Result<CompanionAlgebra> {
    Ok(CompanionAlgebra::standard(&params.field()?, params.t()?)?)
}

pub fn build(kind: Kind, params: &Params) -> anyhow::Result<IncidenceStructure> {
    let budget = params.budget();
    Ok(match kind {
        Kind::X => build_x(&XSpec::new(params.n()?, params.t()?, &params.field()?)?, budget)?,
        Kind::Coset => CosetGeometry::new(params.n()?, params.t()?, &params.field()?)?.build(budget)?,
        Kind::Linrep => {
            let spec = match params.read_input()? {
                Some(k) => LinRepSpec::from_infinity_set(&k)?,
                None => LinRepSpec::from_infinity_set(&base_subgeometry(&algebra(params)?, params.n()?)?)?,
            };
            build_linrep(&spec, budget)?
        }
        Kind::Genlinrep => {
            let alg = algebra(params)?;
            let (n, t) = (params.n()?, params.t()?);
            let spec = LinRepSpec::from_infinity_set(&base_subgeometry(&alg, n)?)?;
            build_gen_linrep(t * (n + 1) - 1, t, alg.base(), &reduced_infinity_set(&spec, &alg)?, budget)?
        }
    })
}

pub fn export(kind: ExportKind, params: &Params) -> anyhow::Result<String> {
    let (graph, name, meta) = match kind {
        ExportKind::Cayley => {
            let (n, t, f) = (params.n()?, params.t()?, params.field()?);
            let g = CosetGeometry::new(n, t, &f)?.cayley_graph(params.budget())?;
            let meta = BTreeMap::from([
                ("n".to_string(), n.to_string()),
                ("t".to_string(), t.to_string()),
                ("q".to_string(), f.order().to_string()),
            ]);
            (g, "cayley", meta)
        }
        ExportKind::Pointgraph => {
            let s = build(Kind::X, params)?;
            (point_graph(&s), "pointgraph", s.meta().clone())
        }
        other => {
            let kind = match other {
                ExportKind::X => Kind::X,
                ExportKind::Coset => Kind::Coset,
                ExportKind::Linrep => Kind::Linrep,
                _ => Kind::Genlinrep,
            };
            let s = build(kind, params)?;
            return Ok(match params.format {
                Format::Json => serde_json::to_string_pretty(&s.to_json())? + "\n",
                Format::Dimacs => s.to_dimacs(),
            });
        }
    };
    Ok(match params.format {
        Format::Json => serde_json::to_string_pretty(&graph.to_json(name, &meta))? + "\n",
        Format::Dimacs => {
            let tags: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
            graph.to_dimacs(&format!("{name} {}", tags.join(" ")))
        }
    })
}
