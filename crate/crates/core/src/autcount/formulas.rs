//! Closed-form group orders, all in checked `u128` arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::prime_power;
use crate::projgeom::gaussian_binomial;

fn pow(q: u64, e: u32) -> Result<u128> {
    (q as u128).checked_pow(e).ok_or(Error::Overflow("power"))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

/// `(q^hi - 1)(q^{hi-1} - 1)...(q^lo - 1)`, both ends inclusive; 1 when `lo > hi`.
pub fn q_factorial_range(q: u64, lo: u32, hi: u32) -> Result<u128> {
    (lo..=hi).try_fold(1u128, |acc, i| mul(acc, pow(q, i)? - 1))
}

pub fn order_gl(m: u32, q: u64) -> Result<u128> {
    (0..m).try_fold(1u128, |acc, i| mul(acc, pow(q, m)? - pow(q, i)?))
}

pub fn order_pgl(m: u32, q: u64) -> Result<u128> {
    if m == 0 {
        return Err(Error::InvalidArgument("PGL(0, q) is undefined".into()));
    }
    Ok(order_gl(m, q)? / (q as u128 - 1))
}

pub fn order_pgammal(m: u32, q: u64) -> Result<u128> {
    let (_, h) = prime_power(q)?;
    mul(order_pgl(m, q)?, h as u128)
}

fn check_nt(n: u32, t: u32) -> Result<()> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidArgument(format!("orders need n, t >= 1, got n={n} t={t}")));
    }
    Ok(())
}

/// `q^{t(n+1)} q^{t(t-1)/2} (q^t-1)...(q-1) |PΓL(n+1,q)|`.
pub fn order_stab_pi(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let mut x = pow(q, t * (n + 1))?;
    x = mul(x, pow(q, t * (t - 1) / 2)?)?;
    x = mul(x, q_factorial_range(q, 1, t)?)?;
    mul(x, order_pgammal(n + 1, q)?)
}

/// `|PΓL(n+t+1, q)|` divided by the number of `n`-spaces of `PG(n+t, q)`.
pub fn order_stab_pi_by_quotient(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let full = order_pgammal(n + t + 1, q)?;
    let subspaces = gaussian_binomial(n + t + 1, n + 1, q)?;
    if full % subspaces != 0 {
        return Err(Error::NonIntegralRatio { num: full, den: subspaces });
    }
    Ok(full / subspaces)
}

/// `|Persp_q(H)| = q^m (q - 1)` for a hyperplane `H` of `PG(m, q)`.
pub fn order_persp(m: u32, q: u64) -> Result<u128> {
    mul(pow(q, m)?, q as u128 - 1)
}

/// Stabilizer of a system of the Segre variety, assembled from its pieces:
/// perspectivities with axis the hyperplane at infinity, `PGL(n+1,q) × PGL(t,q)`, and field automorphisms.
pub fn order_stab_segre(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let (_, h) = prime_power(q)?;
    let mut x = order_persp(t * (n + 1), q)?;
    x = mul(x, order_pgl(n + 1, q)?)?;
    x = mul(x, order_pgl(t, q)?)?;
    mul(x, h as u128)
}

/// The same order as the expanded product `q^{t(n+1)}(q-1) q^{t(t-1)/2} (q^t-1)...(q^2-1) |PΓL(n+1,q)|`.
pub fn order_stab_segre_product(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let mut x = mul(pow(q, t * (n + 1))?, q as u128 - 1)?;
    x = mul(x, pow(q, t * (t - 1) / 2)?)?;
    x = mul(x, q_factorial_range(q, 2, t)?)?;
    mul(x, order_pgammal(n + 1, q)?)
}

/// `q^{t(n+1)} (q^t - 1) t |PΓL(n+1,q)|`.
pub fn geometric_order(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let mut x = mul(pow(q, t * (n + 1))?, pow(q, t)? - 1)?;
    x = mul(x, t as u128)?;
    mul(x, order_pgammal(n + 1, q)?)
}

/// `q^{t(t-1)/2} (q^{t-1}-1)...(q-1) / t`, which must be an integer.
pub fn ratio(n: u32, t: u32, q: u64) -> Result<u128> {
    check_nt(n, t)?;
    let num = mul(pow(q, t * (t - 1) / 2)?, q_factorial_range(q, 1, t - 1)?)?;
    if num % t as u128 != 0 {
        return Err(Error::NonIntegralRatio { num, den: t as u128 });
    }
    Ok(num / t as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrderReport {
    pub n: u32,
    pub t: u32,
    pub q: u64,
    pub h: u32,
    pub full_order: u128,
    pub full_order_by_quotient: u128,
    pub segre_stab_order: u128,
    pub segre_stab_product: u128,
    pub persp_order: u128,
    pub geometric_order: u128,
    pub ratio: u128,
    pub matrix_group_order: u128,
    pub matrix_kernel_order: u128,
    pub segre_equals_full: bool,
    pub ratio_identity_holds: bool,
    pub matrix_quotient_equals_full: bool,
}

impl GroupOrderReport {
    pub fn compute(n: u32, t: u32, q: u64) -> Result<Self> {
        let (_, h) = prime_power(q)?;
        let full_order = order_stab_pi(n, t, q)?;
        let full_order_by_quotient = order_stab_pi_by_quotient(n, t, q)?;
        let segre_stab_order = order_stab_segre(n, t, q)?;
        let segre_stab_product = order_stab_segre_product(n, t, q)?;
        let geometric = geometric_order(n, t, q)?;
        let r = ratio(n, t, q)?;
        let matrix_group_order =
            mul(mul(mul(pow(q, t * (n + 1))?, order_gl(n + 1, q)?)?, order_gl(t, q)?)?, h as u128)?;
        let matrix_kernel_order = q as u128 - 1;
        Ok(GroupOrderReport {
            n,
            t,
            q,
            h,
            full_order,
            full_order_by_quotient,
            segre_stab_order,
            segre_stab_product,
            persp_order: order_persp(t * (n + 1), q)?,
            geometric_order: geometric,
            ratio: r,
            matrix_group_order,
            matrix_kernel_order,
            segre_equals_full: segre_stab_order == full_order
                && segre_stab_product == full_order
                && full_order_by_quotient == full_order,
            ratio_identity_holds: mul(geometric, r)? == full_order,
            matrix_quotient_equals_full: matrix_group_order % matrix_kernel_order == 0
                && matrix_group_order / matrix_kernel_order == full_order,
        })
    }

    pub fn all_hold(&self) -> bool {
        self.segre_equals_full && self.ratio_identity_holds && self.matrix_quotient_equals_full
    }
}

/// The acceptance grid: `n, t ∈ {1, 2, 3}` with `n + t ≤ 5` and `q ∈ {2, 3, 4}`.
pub fn acceptance_grid() -> Vec<(u32, u32, u64)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for t in 1..=3 {
            if n + t > 5 {
                continue;
            }
            for q in [2, 3, 4] {
                out.push((n, t, q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_orders() {
        assert_eq!(order_pgl(2, 2).unwrap(), 6);
        assert_eq!(order_gl(4, 2).unwrap(), 20160);
        assert_eq!(order_pgl(4, 2).unwrap(), 20160);
        assert_eq!(order_pgammal(2, 4).unwrap(), 120);
        assert_eq!(order_pgammal(3, 2).unwrap(), 168);
    }

    #[test]
    fn product_endpoints() {
        assert_eq!(q_factorial_range(2, 1, 2).unwrap(), 3);
        // t = 2: the range from q^2 - 1 down to q^2 - 1 has exactly one factor
        assert_eq!(q_factorial_range(3, 2, 2).unwrap(), 8);
        assert_eq!(q_factorial_range(3, 2, 1).unwrap(), 1);
        assert_eq!(q_factorial_range(2, 1, 0).unwrap(), 1);
    }

    #[test]
    fn spot_values() {
        assert_eq!(order_stab_pi(1, 2, 2).unwrap(), 576);
        assert_eq!(order_stab_pi(1, 2, 3).unwrap(), 93312);
        assert_eq!(order_stab_segre(1, 2, 2).unwrap(), 576);
        assert_eq!(order_persp(4, 2).unwrap(), 16);
        assert_eq!(geometric_order(1, 2, 2).unwrap(), 576);
        assert_eq!(geometric_order(1, 2, 3).unwrap(), 31104);
        assert_eq!(geometric_order(2, 2, 2).unwrap(), 64512);
        assert_eq!(ratio(1, 2, 2).unwrap(), 1);
        assert_eq!(ratio(1, 2, 3).unwrap(), 3);
        assert_eq!(ratio(1, 3, 2).unwrap(), 8);
    }

    #[test]
    fn grid_identities() {
        let grid = acceptance_grid();
        assert_eq!(grid.len(), 24);
        for (n, t, q) in grid {
            let r = GroupOrderReport::compute(n, t, q).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(order_stab_pi(0, 2, 2).is_err());
        assert!(ratio(1, 0, 2).is_err());
        assert!(order_pgammal(2, 6).is_err());
    }
}
