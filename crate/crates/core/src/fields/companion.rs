//! The matrix field `H = F_q[M]` generated by the companion matrix of an
//! irreducible polynomial, together with the polynomial model of `F_{q^t}`.
//!
//! Rows of length `t` are coordinate vectors in the basis `1, α, ..., α^{t-1}`
//! of `F_{q^t}`, where `α` is the class of `x`. With the block layout
//!
//! ```text
//!     ( 0     I_{t-1} )
//! M = ( -m_0  -m_1 ... -m_{t-1} )
//! ```
//!
//! right multiplication `r ↦ r·M` is multiplication by `α`. This is checked at
//! construction.

use super::poly::{is_irreducible, least_irreducible, trim};
use super::{Fe, Field, FieldCtx};
use crate::error::{Error, Result};
use crate::linalg::{all_matrices, Matrix};

#[derive(Clone, Debug)]
pub struct CompanionAlgebra {
    base: Field,
    t: usize,
    f: Vec<Fe>,
    companion: Matrix,
    ext: Field,
}

impl CompanionAlgebra {
    /// Builds the algebra for the monic irreducible `f` (coefficients low to high, including the leading 1).
    pub fn new(base: &Field, f: &[Fe]) -> Result<Self> {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return Err(Error::InvalidArgument("polynomial must have positive degree".into()));
        }
        if *f.last().unwrap() != Fe::ONE {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(base, &f) {
            return Err(Error::Reducible(super::format_poly(&f)));
        }
        let t = f.len() - 1;
        let mut m = Matrix::zeros(t, t);
        for i in 0..t.saturating_sub(1) {
            m.set(i, i + 1, Fe::ONE);
        }
        for (j, &c) in f[..t].iter().enumerate() {
            m.set(t - 1, j, base.neg(c));
        }
        let ext = FieldCtx::extension(base, &f)?;
        let alg = CompanionAlgebra { base: base.clone(), t, f, companion: m, ext };
        alg.self_test()?;
        Ok(alg)
    }

    /// Uses the least monic irreducible polynomial of degree `t` over `base`.
    pub fn standard(base: &Field, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let f = least_irreducible(base, t);
        Self::new(base, &f)
    }

    fn self_test(&self) -> Result<()> {
        let fm = self.eval_at_companion(&self.f)?;
        if !fm.is_zero() {
            return Err(Error::CompanionOrientation);
        }
        // I, M, ..., M^{t-1} independent: no proper divisor of f annihilates M
        let powers: Vec<Vec<Fe>> = (0..self.t)
            .map(|k| self.companion.pow(&self.base, k as u32).map(|p| p.data().to_vec()))
            .collect::<Result<_>>()?;
        if Matrix::from_rows(&powers)?.rank(&self.base) != self.t {
            return Err(Error::CompanionOrientation);
        }
        let alpha = self.alpha();
        for i in 0..self.t {
            let mut e = vec![Fe::ZERO; self.t];
            e[i] = Fe::ONE;
            let shifted = self.companion.left_mul_vec(&self.base, &e)?;
            if self.row_to_ext(&shifted)? != self.ext.mul(self.row_to_ext(&e)?, alpha) {
                return Err(Error::CompanionOrientation);
            }
        }
        Ok(())
    }

    /// `p(M)` for a polynomial with coefficients in the base field.
    pub fn eval_at_companion(&self, p: &[Fe]) -> Result<Matrix> {
        let mut acc = Matrix::zeros(self.t, self.t);
        for &c in p.iter().rev() {
            acc = acc.mul(&self.base, &self.companion)?.add(&self.base, &Matrix::scalar(self.t, c))?;
        }
        Ok(acc)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.t
    }

    /// Coefficients of `f`, low to high, including the leading 1.
    pub fn polynomial(&self) -> &[Fe] {
        &self.f
    }

    pub fn companion(&self) -> &Matrix {
        &self.companion
    }

    /// `F_{q^t}` as `F_q[x]/(f)`.
    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn alpha(&self) -> Fe {
        self.ext.generator()
    }

    pub fn row_to_ext(&self, row: &[Fe]) -> Result<Fe> {
        if row.len() != self.t {
            return Err(Error::DimensionMismatch { expected: self.t, got: row.len() });
        }
        self.ext.from_base_coeffs(row)
    }

    pub fn ext_to_row(&self, x: Fe) -> Vec<Fe> {
        self.ext.base_coeffs(x)
    }

    /// `a_0 I + a_1 M + ... + a_{t-1} M^{t-1}`.
    pub fn element_matrix(&self, coeffs: &[Fe]) -> Result<Matrix> {
        if coeffs.len() != self.t {
            return Err(Error::DimensionMismatch { expected: self.t, got: coeffs.len() });
        }
        self.eval_at_companion(coeffs)
    }

    /// The matrix in `H` corresponding to `x ∈ F_{q^t}`.
    pub fn matrix_of(&self, x: Fe) -> Matrix {
        self.element_matrix(&self.ext_to_row(x)).expect("row length equals t")
    }

    /// All `q^t` matrices of `H`, indexed by the corresponding element of `F_{q^t}`.
    pub fn elements(&self) -> Vec<Matrix> {
        self.ext.elements().map(|x| self.matrix_of(x)).collect()
    }

    /// All row vectors of length `t` over the base field.
    pub fn rows(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        all_matrices(&self.base, 1, self.t).map(|m| m.data().to_vec())
    }
}
