//! The matrix model of `X(n, t, q)` and its automorphism group.
//!
//! Points are the `(n+1) × t` matrices over `F_q`. For a direction
//! `b ∈ PG(n, q)` the rank-one matrices `bᵀa` form a subgroup `L_b` of `(M, +)`,
//! and the lines are the cosets of these subgroups.
//!
//! The group acting on this model consists of quadruples `(A, B, C, l)` with
//! `B ∈ GL(n+1, q)`, `C ∈ GL(t, q)` and `l` taken mod `h` where `q = p^h`. The
//! action is `P ↦ (B P C + A)^{σ^l}` with `σ` the Frobenius map `x ↦ x^p`
//! applied entrywise, and the product is
//!
//! ```text
//! (A2,B2,C2,l2)∘(A1,B1,C1,l1) = (B2' A1 C2' + A2', B2' B1, C1 C2', l1 + l2),  X' = X^{σ^{-l1}}
//! ```
//!
//! With these conventions `act(g2∘g1, P) = act(g2, act(g1, P))`.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Fe, Field, FieldCtx};
use crate::graph::Graph;
use crate::incidence::{IncidenceStructure, Label};
use crate::linalg::{all_matrices, Matrix};
use crate::projgeom::{enumerate_points, Budget, ProjPoint};

pub type MatrixPoint = Matrix;

/// A line of the matrix model: the coset `rep + L_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineCoset {
    pub b: ProjPoint,
    pub rep: MatrixPoint,
}

impl LineCoset {
    pub fn label(&self) -> Label {
        Label::pair(Label::Coords(self.b.coords().to_vec()), Label::Matrix(self.rep.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct CosetGeometry {
    n: usize,
    t: usize,
    field: Field,
}

impl CosetGeometry {
    pub fn new(n: usize, t: usize, field: &Field) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidArgument(format!("the matrix model needs n, t >= 1, got n={n} t={t}")));
        }
        Ok(CosetGeometry { n, t, field: field.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_points(&self) -> Result<u128> {
        (self.field.order() as u128).checked_pow(((self.n + 1) * self.t) as u32).ok_or(Error::Overflow("point count"))
    }

    /// All points in row-major lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = MatrixPoint> + '_ {
        all_matrices(&self.field, self.n + 1, self.t)
    }

    /// Position of `m` in the order of [`CosetGeometry::points`].
    pub fn index_of(&self, m: &MatrixPoint) -> usize {
        crate::linalg::vector_index(&self.field, m.data())
    }

    pub fn point_at(&self, mut idx: usize) -> MatrixPoint {
        let q = self.field.order() as usize;
        let len = (self.n + 1) * self.t;
        let mut data = vec![Fe::ZERO; len];
        for slot in data.iter_mut().rev() {
            *slot = Fe((idx % q) as u16);
            idx /= q;
        }
        Matrix::new(self.n + 1, self.t, data).expect("shape")
    }

    pub fn directions(&self) -> Vec<ProjPoint> {
        enumerate_points(self.n, &self.field, Budget::default()).expect("small projective space")
    }

    /// `bᵀa`, the outer product of a column `b` and a row `a`.
    pub fn rank_one(&self, b: &[Fe], a: &[Fe]) -> MatrixPoint {
        let f = &self.field;
        let data = b.iter().flat_map(|&bi| a.iter().map(move |&aj| f.mul(bi, aj))).collect();
        Matrix::new(b.len(), a.len(), data).expect("shape")
    }

    /// The subgroup `L_b`, in the order of `a`.
    pub fn subgroup(&self, b: &ProjPoint) -> Vec<MatrixPoint> {
        crate::linalg::all_vectors(&self.field, self.t).map(|a| self.rank_one(b.coords(), &a)).collect()
    }

    pub fn coset_members(&self, b: &ProjPoint, x: &MatrixPoint) -> Vec<MatrixPoint> {
        let f = &self.field;
        let mut out: Vec<MatrixPoint> = self.subgroup(b).iter().map(|d| x.add(f, d).expect("shape")).collect();
        out.sort();
        out
    }

    /// The line with direction `b` through `x`, with its least member as representative.
    pub fn line_through(&self, b: &ProjPoint, x: &MatrixPoint) -> LineCoset {
        let rep = self.coset_members(b, x).swap_remove(0);
        LineCoset { b: b.clone(), rep }
    }

    pub fn build(&self, budget: Budget) -> Result<IncidenceStructure> {
        let total = self.num_points()?;
        budget.check(total)?;
        let f = &self.field;
        let points: Vec<MatrixPoint> = self.points().collect();
        let mut lines = Vec::new();
        let mut line_points = Vec::new();
        for b in self.directions() {
            let sub = self.subgroup(&b);
            let mut seen = vec![false; points.len()];
            for (i, x) in points.iter().enumerate() {
                if seen[i] {
                    continue;
                }
                let mut members: Vec<usize> = sub.iter().map(|d| self.index_of(&x.add(f, d).expect("shape"))).collect();
                members.sort_unstable();
                for &m in &members {
                    seen[m] = true;
                }
                lines.push(LineCoset { b: b.clone(), rep: x.clone() }.label());
                line_points.push(members);
            }
        }
        let labels = points.into_iter().map(Label::Matrix).collect();
        Ok(IncidenceStructure::new("coset", labels, lines, line_points)?
            .with_meta("n", self.n)
            .with_meta("t", self.t)
            .with_meta("q", f.order()))
    }

    /// Whether `p - q` has rank exactly one.
    pub fn cayley_adjacency(&self, p: &MatrixPoint, q: &MatrixPoint) -> bool {
        p.sub(&self.field, q).map(|d| d.rank(&self.field) == 1).unwrap_or(false)
    }

    /// The Cayley graph of `(M, +)` with the nonzero rank-one matrices as connection set.
    pub fn cayley_graph(&self, budget: Budget) -> Result<Graph> {
        budget.check(self.num_points()?)?;
        let f = &self.field;
        let mut conn: Vec<MatrixPoint> = Vec::new();
        for b in self.directions() {
            conn.extend(self.subgroup(&b).into_iter().filter(|m| !m.is_zero()));
        }
        let pts: Vec<MatrixPoint> = self.points().collect();
        let edges = pts
            .iter()
            .enumerate()
            .flat_map(|(i, x)| conn.iter().map(move |d| (i, self.index_of(&x.add(f, d).expect("shape")))));
        Ok(Graph::from_edges(pts.len(), edges.collect::<Vec<_>>()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AutElement {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub l: u32,
}

impl AutElement {
    pub fn to_json(&self) -> serde_json::Value {
        let rows =
            |m: &Matrix| -> Vec<Vec<u16>> { (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.0).collect()).collect() };
        serde_json::json!({ "A": rows(&self.a), "B": rows(&self.b), "C": rows(&self.c), "l": self.l })
    }
}

/// The group of quadruples acting on a [`CosetGeometry`].
#[derive(Clone, Debug)]
pub struct AutGroup {
    n: usize,
    t: usize,
    field: Field,
}

fn gl(f: &FieldCtx, m: usize) -> Vec<Matrix> {
    all_matrices(f, m, m).filter(|x| x.is_invertible(f)).collect()
}

pub fn frobenius_matrix(f: &FieldCtx, m: &Matrix, l: i64) -> Matrix {
    m.map(|x| f.frobenius(x, l))
}

impl AutGroup {
    pub fn new(geom: &CosetGeometry) -> Self {
        AutGroup { n: geom.n, t: geom.t, field: geom.field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn h(&self) -> u32 {
        self.field.degree()
    }

    pub fn element(&self, a: Matrix, b: Matrix, c: Matrix, l: i64) -> Result<AutElement> {
        let f = &self.field;
        if a.shape() != (self.n + 1, self.t) {
            return Err(Error::DimensionMismatch { expected: (self.n + 1) * self.t, got: a.rows() * a.cols() });
        }
        if b.shape() != (self.n + 1, self.n + 1) || c.shape() != (self.t, self.t) {
            return Err(Error::InvalidArgument("B or C has the wrong shape".into()));
        }
        if !b.is_invertible(f) || !c.is_invertible(f) {
            return Err(Error::Singular);
        }
        Ok(AutElement { a, b, c, l: l.rem_euclid(self.h() as i64) as u32 })
    }

    pub fn identity(&self) -> AutElement {
        AutElement {
            a: Matrix::zeros(self.n + 1, self.t),
            b: Matrix::identity(self.n + 1),
            c: Matrix::identity(self.t),
            l: 0,
        }
    }

    pub fn translation(&self, a: &Matrix) -> AutElement {
        AutElement { a: a.clone(), ..self.identity() }
    }

    fn frob(&self, m: &Matrix, l: i64) -> Matrix {
        frobenius_matrix(&self.field, m, l)
    }

    /// `g2 ∘ g1`: first `g1`, then `g2`.
    pub fn compose(&self, g2: &AutElement, g1: &AutElement) -> AutElement {
        let f = &self.field;
        let back = -(g1.l as i64);
        let b2 = self.frob(&g2.b, back);
        let c2 = self.frob(&g2.c, back);
        let a2 = self.frob(&g2.a, back);
        let a = b2.mul(f, &g1.a).and_then(|x| x.mul(f, &c2)).and_then(|x| x.add(f, &a2)).expect("shapes");
        AutElement {
            a,
            b: b2.mul(f, &g1.b).expect("shapes"),
            c: g1.c.mul(f, &c2).expect("shapes"),
            l: (g1.l + g2.l) % self.h(),
        }
    }

    /// `(-(B⁻¹AC⁻¹)^{σ^l}, (B⁻¹)^{σ^l}, (C⁻¹)^{σ^l}, -l)`.
    pub fn inverse(&self, g: &AutElement) -> AutElement {
        let f = &self.field;
        let l = g.l as i64;
        let bi = g.b.inverse(f).expect("invertible");
        let ci = g.c.inverse(f).expect("invertible");
        let a = bi.mul(f, &g.a).and_then(|x| x.mul(f, &ci)).expect("shapes");
        let a = self.frob(&a, l).map(|x| f.neg(x));
        AutElement { a, b: self.frob(&bi, l), c: self.frob(&ci, l), l: (self.h() - g.l) % self.h() }
    }

    pub fn act(&self, g: &AutElement, p: &MatrixPoint) -> MatrixPoint {
        let f = &self.field;
        let x = g.b.mul(f, p).and_then(|x| x.mul(f, &g.c)).and_then(|x| x.add(f, &g.a)).expect("shapes");
        self.frob(&x, g.l as i64)
    }

    /// Image of a line direction: `b ↦ (b Bᵀ)^{σ^l}`, normalized.
    pub fn act_on_direction(&self, g: &AutElement, b: &ProjPoint) -> ProjPoint {
        let f = &self.field;
        let v = g.b.transpose().left_mul_vec(f, b.coords()).expect("shape");
        let v: Vec<Fe> = v.into_iter().map(|x| f.frobenius(x, g.l as i64)).collect();
        ProjPoint::new(f, v).expect("invertible B keeps b nonzero")
    }

    pub fn act_on_line(&self, geom: &CosetGeometry, g: &AutElement, line: &LineCoset) -> LineCoset {
        geom.line_through(&self.act_on_direction(g, &line.b), &self.act(g, &line.rep))
    }

    pub fn order(&self) -> Result<u128> {
        let q = self.field.order() as u64;
        let tr = (q as u128).checked_pow(((self.n + 1) * self.t) as u32).ok_or(Error::Overflow("group order"))?;
        let gb = crate::autcount::order_gl(self.n as u32 + 1, q)?;
        let gc = crate::autcount::order_gl(self.t as u32, q)?;
        tr.checked_mul(gb)
            .and_then(|x| x.checked_mul(gc))
            .and_then(|x| x.checked_mul(self.h() as u128))
            .ok_or(Error::Overflow("group order"))
    }

    /// Every element, translations varying fastest.
    pub fn elements(&self, budget: Budget) -> Result<Vec<AutElement>> {
        budget.check(self.order()?)?;
        let f = &self.field;
        let gb = gl(f, self.n + 1);
        let gc = gl(f, self.t);
        let translations: Vec<Matrix> = all_matrices(f, self.n + 1, self.t).collect();
        let mut out = Vec::new();
        for l in 0..self.h() {
            for c in &gc {
                for b in &gb {
                    for a in &translations {
                        out.push(AutElement { a: a.clone(), b: b.clone(), c: c.clone(), l });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AutElement {
        let f = &self.field;
        let q = f.order() as u16;
        let rand_matrix = |r: usize, c: usize, rng: &mut R| {
            Matrix::new(r, c, (0..r * c).map(|_| Fe(rng.gen_range(0..q))).collect()).expect("shape")
        };
        let a = rand_matrix(self.n + 1, self.t, rng);
        let b = loop {
            let m = rand_matrix(self.n + 1, self.n + 1, rng);
            if m.is_invertible(f) {
                break m;
            }
        };
        let c = loop {
            let m = rand_matrix(self.t, self.t, rng);
            if m.is_invertible(f) {
                break m;
            }
        };
        AutElement { a, b, c, l: rng.gen_range(0..self.h()) }
    }

    /// `(0, λI, λ⁻¹I, 0)` for every nonzero `λ`.
    pub fn kernel_elements(&self) -> Vec<AutElement> {
        let f = &self.field;
        f.nonzero()
            .map(|lam| AutElement {
                a: Matrix::zeros(self.n + 1, self.t),
                b: Matrix::scalar(self.n + 1, lam),
                c: Matrix::scalar(self.t, f.inv(lam).unwrap()),
                l: 0,
            })
            .collect()
    }

    /// The permutation of point indices induced by `g`.
    pub fn point_permutation(&self, geom: &CosetGeometry, points: &[MatrixPoint], g: &AutElement) -> Vec<u32> {
        points.iter().map(|p| geom.index_of(&self.act(g, p)) as u32).collect()
    }
}

/// Outcome of [`check_action_axiom`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub pairs: u128,
    pub base: Vec<usize>,
    /// `(g2, g1)` with `act(g2∘g1) ≠ act(g2)∘act(g1)`.
    pub counterexample: Option<(AutElement, AutElement)>,
}

/// Checks `act(g2∘g1) = act(g2)∘act(g1)` for every ordered pair of elements.
///
/// Products are computed through index tables for `B₂B₁`, `C₁C₂`, `B A C`,
/// matrix addition and the Frobenius map, so each pair costs a handful of
/// lookups. The two sides are compared on the points of `base` only. This is
/// sound when every element acts as an automorphism and no non-trivial
/// automorphism fixes `base` pointwise, since both sides are then automorphisms
/// agreeing on a base. Both conditions are the caller's to establish.
pub fn check_action_axiom(geom: &CosetGeometry, base: &[usize], budget: Budget) -> Result<AxiomReport> {
    let grp = AutGroup::new(geom);
    let f = &geom.field;
    let h = grp.h() as usize;
    let gb = gl(f, geom.n + 1);
    let gc = gl(f, geom.t);
    let points: Vec<MatrixPoint> = geom.points().collect();
    let (nb, nc, na) = (gb.len(), gc.len(), points.len());
    let total = h * nc * nb * na;
    budget.check((total as u128) * (total as u128))?;
    if na > u16::MAX as usize || base.iter().any(|&x| x >= na) {
        return Err(Error::InvalidArgument("base points out of range".into()));
    }
    let b_index: HashMap<&Matrix, u32> = gb.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
    let c_index: HashMap<&Matrix, u32> = gc.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
    let mul = |x: &Matrix, y: &Matrix| x.mul(f, y).expect("shapes");
    let mut mul_b = Vec::with_capacity(nb * nb);
    for b2 in &gb {
        mul_b.extend(gb.iter().map(|b1| b_index[&mul(b2, b1)]));
    }
    let mut mul_c = Vec::with_capacity(nc * nc);
    for c1 in &gc {
        mul_c.extend(gc.iter().map(|c2| c_index[&mul(c1, c2)]));
    }
    let mut frob_b = Vec::with_capacity(h * nb);
    let mut frob_c = Vec::with_capacity(h * nc);
    let mut frob_a = Vec::with_capacity(h * na);
    for l in 0..h as i64 {
        frob_b.extend(gb.iter().map(|m| b_index[&frobenius_matrix(f, m, -l)] as usize));
        frob_c.extend(gc.iter().map(|m| c_index[&frobenius_matrix(f, m, -l)] as usize));
        frob_a.extend(points.iter().map(|m| geom.index_of(&frobenius_matrix(f, m, -l))));
    }
    let mut bac = Vec::with_capacity(nb * nc * na);
    for b in &gb {
        for c in &gc {
            bac.extend(points.iter().map(|a| geom.index_of(&mul(&mul(b, a), c)) as u16));
        }
    }
    let mut add_a = Vec::with_capacity(na * na);
    for x in &points {
        add_a.extend(points.iter().map(|y| geom.index_of(&x.add(f, y).expect("shapes")) as u32));
    }
    let elements = grp.elements(Budget::new(u128::MAX))?;
    let mut perms: Vec<u16> = Vec::with_capacity(total * na);
    for g in &elements {
        perms.extend(points.iter().map(|p| geom.index_of(&grp.act(g, p)) as u16));
    }
    // the tables must reproduce `compose`, or the loop below checks some other law
    let decode = |g: usize| (g / (na * nb * nc), (g / (na * nb)) % nc, (g / na) % nb, g % na);
    let product = |g2: usize, g1: usize| -> usize {
        let ((l2, c2, b2, a2), (l1, c1, b1, a1)) = (decode(g2), decode(g1));
        let (b2p, c2p, a2p) = (frob_b[l1 * nb + b2], frob_c[l1 * nc + c2], frob_a[l1 * na + a2]);
        let a = add_a[a2p * na + bac[(b2p * nc + c2p) * na + a1] as usize] as usize;
        (((l1 + l2) % h * nc + mul_c[c1 * nc + c2p] as usize) * nb + mul_b[b2p * nb + b1] as usize) * na + a
    };
    let index_of = |g: &AutElement| {
        ((g.l as usize * nc + c_index[&g.c] as usize) * nb + b_index[&g.b] as usize) * na + geom.index_of(&g.a)
    };
    let stride = (total / 61).max(1);
    for g2 in (0..total).step_by(stride) {
        for g1 in (stride / 3..total).step_by(stride) {
            if product(g2, g1) != index_of(&grp.compose(&elements[g2], &elements[g1])) {
                return Err(Error::Verification("product tables disagree with compose".into()));
            }
        }
    }
    let k = base.len();
    let mut on_base: Vec<u16> = Vec::with_capacity(total * k);
    for g in 0..total {
        on_base.extend(base.iter().map(|&x| perms[g * na + x]));
    }
    for g2 in 0..total {
        let a2 = g2 % na;
        let b2 = (g2 / na) % nb;
        let c2 = (g2 / (na * nb)) % nc;
        let l2 = g2 / (na * nb * nc);
        let p2 = &perms[g2 * na..(g2 + 1) * na];
        for l1 in 0..h {
            let (b2p, c2p, a2p) = (frob_b[l1 * nb + b2], frob_c[l1 * nc + c2], frob_a[l1 * na + a2]);
            let l = (l1 + l2) % h;
            let row_bac = &bac[(b2p * nc + c2p) * na..][..na];
            let row_add = &add_a[a2p * na..][..na];
            for c1 in 0..nc {
                let cc = mul_c[c1 * nc + c2p] as usize;
                for b1 in 0..nb {
                    let bb = mul_b[b2p * nb + b1] as usize;
                    let prod_start = ((l * nc + cc) * nb + bb) * na;
                    let g1_start = ((l1 * nc + c1) * nb + b1) * na;
                    for a1 in 0..na {
                        let prod = prod_start + row_add[row_bac[a1] as usize] as usize;
                        let g1 = g1_start + a1;
                        let lhs = &on_base[prod * k..][..k];
                        let rhs = &on_base[g1 * k..][..k];
                        if lhs.iter().zip(rhs).any(|(&x, &y)| x != p2[y as usize]) {
                            return Ok(AxiomReport {
                                pairs: (g2 * total + g1) as u128 + 1,
                                base: base.to_vec(),
                                counterexample: Some((elements[g2].clone(), elements[g1].clone())),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport { pairs: (total as u128) * (total as u128), base: base.to_vec(), counterexample: None })
}

/// Looks up lines by their sorted member indices.
pub fn line_lookup(g: &IncidenceStructure) -> HashMap<Vec<usize>, usize> {
    (0..g.num_lines()).map(|l| (g.line_points(l).to_vec(), l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn geom(n: usize, t: usize, q: u64) -> CosetGeometry {
        CosetGeometry::new(n, t, &FieldCtx::gf(q).unwrap()).unwrap()
    }

    #[test]
    fn counts_and_subgroup_lines() {
        let g = geom(1, 2, 2);
        let s = g.build(Budget::default()).unwrap();
        assert_eq!((s.num_points(), s.num_lines(), g.directions().len()), (16, 12, 3));
        assert_eq!(s.line_sizes(), vec![4]);
        let idx = s.line_index();
        for b in g.directions() {
            let zero = Matrix::zeros(2, 2);
            let l = g.line_through(&b, &zero);
            assert_eq!(l.rep, zero);
            let li = idx[&l.label()];
            let members: Vec<usize> = g.subgroup(&b).iter().map(|m| g.index_of(m)).collect();
            let mut members = members;
            members.sort_unstable();
            assert_eq!(s.line_points(li), &members[..]);
        }
        assert_eq!(geom(1, 2, 3).build(Budget::default()).unwrap().num_lines(), 36);
    }

    #[test]
    fn collinear_iff_rank_one_difference() {
        let g = geom(1, 2, 2);
        let s = g.build(Budget::default()).unwrap();
        let pts: Vec<Matrix> = g.points().collect();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let collinear = i != j && s.point_lines(i).iter().any(|&l| s.is_flag(j, l));
                assert_eq!(collinear, g.cayley_adjacency(&pts[i], &pts[j]));
                assert_eq!(g.cayley_adjacency(&pts[i], &pts[j]), g.cayley_adjacency(&pts[j], &pts[i]));
            }
        }
        let g2 = geom(2, 2, 2);
        let mut id = Matrix::zeros(3, 2);
        id.set(0, 0, Fe::ONE);
        id.set(1, 1, Fe::ONE);
        assert!(!g2.cayley_adjacency(&id, &Matrix::zeros(3, 2)));
        assert_eq!(g.cayley_graph(Budget::default()).unwrap().num_edges(), 72);
    }

    #[test]
    fn identity_inverse_and_associativity() {
        for q in [2u64, 4, 3] {
            let g = geom(1, 2, q);
            let grp = AutGroup::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..100 {
                let x = grp.random(&mut rng);
                let y = grp.random(&mut rng);
                let z = grp.random(&mut rng);
                assert_eq!(grp.compose(&grp.identity(), &x), x);
                assert_eq!(grp.compose(&x, &grp.identity()), x);
                assert_eq!(grp.compose(&x, &grp.inverse(&x)), grp.identity());
                assert_eq!(grp.compose(&grp.inverse(&x), &x), grp.identity());
                assert_eq!(grp.compose(&grp.compose(&z, &y), &x), grp.compose(&z, &grp.compose(&y, &x)));
            }
        }
    }

    #[test]
    fn action_axiom_with_frobenius() {
        let g = geom(1, 2, 4);
        let grp = AutGroup::new(&g);
        let pts: Vec<Matrix> = g.points().step_by(7).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = grp.random(&mut rng);
            let y = grp.random(&mut rng);
            let xy = grp.compose(&y, &x);
            for p in &pts {
                assert_eq!(grp.act(&xy, p), grp.act(&y, &grp.act(&x, p)));
            }
        }
    }

    #[test]
    fn translations_and_kernel() {
        let g = geom(1, 2, 3);
        let grp = AutGroup::new(&g);
        let p = g.point_at(17);
        let a = g.point_at(40);
        assert_eq!(grp.act(&grp.translation(&a), &p), p.add(g.field(), &a).unwrap());
        let k = grp.kernel_elements();
        assert_eq!(k.len(), 2);
        for el in &k {
            assert!(g.points().all(|p| grp.act(el, &p) == p));
        }
        assert_eq!(AutGroup::new(&geom(1, 2, 2)).kernel_elements(), vec![AutGroup::new(&geom(1, 2, 2)).identity()]);
    }

    #[test]
    fn directions_transform_by_transpose() {
        let g = geom(1, 2, 2);
        let grp = AutGroup::new(&g);
        let s = g.build(Budget::default()).unwrap();
        let lookup = line_lookup(&s);
        let idx = s.line_index();
        let pts: Vec<Matrix> = g.points().collect();
        for el in grp.elements(Budget::default()).unwrap() {
            let perm = grp.point_permutation(&g, &pts, &el);
            for l in 0..s.num_lines() {
                let mut img: Vec<usize> = s.line_points(l).iter().map(|&p| perm[p] as usize).collect();
                img.sort_unstable();
                let target = lookup[&img];
                let Label::Pair(b, rep) = &s.lines()[l] else { panic!() };
                let (Label::Coords(b), Label::Matrix(rep)) = (&**b, &**rep) else { panic!() };
                let line = LineCoset { b: ProjPoint::new(g.field(), b.clone()).unwrap(), rep: rep.clone() };
                assert_eq!(idx[&grp.act_on_line(&g, &el, &line).label()], target);
            }
        }
    }

    #[test]
    fn order_matches_enumeration() {
        let grp = AutGroup::new(&geom(1, 2, 2));
        assert_eq!(grp.order().unwrap(), 576);
        assert_eq!(grp.elements(Budget::default()).unwrap().len(), 576);
        assert_eq!(AutGroup::new(&geom(1, 2, 4)).order().unwrap(), 256 * 180 * 180 * 2);
    }

    #[test]
    fn action_axiom_over_all_pairs_with_frobenius() {
        let g = geom(1, 1, 4);
        let s = g.build(Budget::default()).unwrap();
        let base = crate::autcount::point_base(&s, Budget::default()).unwrap();
        assert_eq!(crate::autcount::pointwise_stabilizer_order(&s, &base, Budget::default()).unwrap(), 1);
        let r = check_action_axiom(&g, &base, Budget::new(u128::MAX)).unwrap();
        assert_eq!(r.counterexample, None);
        assert_eq!(r.pairs, 17280 * 17280);
    }

    #[test]
    fn json_shape() {
        let grp = AutGroup::new(&geom(1, 2, 2));
        let j = grp.identity().to_json();
        assert_eq!(j["B"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(j["l"], 0);
    }
}
