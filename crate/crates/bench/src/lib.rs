//! Fixtures shared by the benchmarks.

use finrep::coset::CosetGeometry;
use finrep::xgeom::XSpec;
use finrep::{Budget, CompanionAlgebra, FieldCtx, IncidenceStructure};

/// Parameters small enough to run in a benchmark loop.
pub const CASES: [(usize, usize, u64); 3] = [(1, 2, 2), (1, 2, 3), (2, 2, 2)];

pub fn spec(n: usize, t: usize, q: u64) -> XSpec {
    XSpec::new(n, t, &FieldCtx::gf(q).expect("prime power")).expect("valid parameters")
}

pub fn algebra(q: u64, t: usize) -> CompanionAlgebra {
    CompanionAlgebra::standard(&FieldCtx::gf(q).expect("prime power"), t).expect("irreducible exists")
}

pub fn coset(n: usize, t: usize, q: u64) -> IncidenceStructure {
    let f = FieldCtx::gf(q).expect("prime power");
    CosetGeometry::new(n, t, &f).and_then(|g| g.build(Budget::default())).expect("fits the default budget")
}
