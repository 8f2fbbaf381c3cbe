//! K-theoretic Gromov-Witten invariants, the dual Schubert basis and the
//! symmetric triple-product functional.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::giambelli::QkRing;
use crate::partition::{hat_bar, remove_cols, GrassCtx, Partition};
use crate::qring::{QKElement, QPoly};

/// `I_d(O_kappa, O_nu^dual)`: one iff `nu` is `kappa` with its first `d`
/// rows and columns removed.
pub fn two_point_dual(ctx: &GrassCtx, kappa: &Partition, nu: &Partition, d: u32) -> Result<u8> {
    ctx.check(kappa)?;
    ctx.check(nu)?;
    Ok((hat_bar(kappa, d as usize) == *nu) as u8)
}

/// `I_d(O_kappa, O_nu)`: one iff `kappa_i + nu_{m+d+1-i} <= k + d` for all
/// `d < i <= m`.
pub fn two_point_sheaf(ctx: &GrassCtx, kappa: &Partition, nu: &Partition, d: u32) -> Result<u8> {
    ctx.check(kappa)?;
    ctx.check(nu)?;
    let (m, k, d) = (ctx.m(), ctx.k(), d as usize);
    let ok = (d + 1..=m).all(|i| kappa.row(i) + nu.row(m + d + 1 - i) <= k + d);
    Ok(ok as u8)
}

fn gw_from_product(
    ring: &QkRing,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    d: u32,
    two_point: fn(&GrassCtx, &Partition, &Partition, u32) -> Result<u8>,
) -> Result<BigInt> {
    let ctx = ring.ctx();
    ctx.check(nu)?;
    let prod = ring.star(lambda, mu)?;
    let mut total = BigInt::zero();
    for (kappa, poly) in prod.terms() {
        for (deg, c) in poly.terms() {
            if deg <= d && two_point(&ctx, kappa, nu, d - deg)? == 1 {
                total += c;
            }
        }
    }
    Ok(total)
}

/// `I_d(O_lambda, O_mu, O_nu^dual) = sum N^{kappa,d-e}_{lambda,mu} I_e(O_kappa, O_nu^dual)`.
pub fn gw_dual(
    ring: &QkRing,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    d: u32,
) -> Result<BigInt> {
    gw_from_product(ring, lambda, mu, nu, d, two_point_dual)
}

/// `I_d(O_lambda, O_mu, O_nu) = sum N^{kappa,d-e}_{lambda,mu} I_e(O_kappa, O_nu)`.
pub fn gw_sheaf(
    ring: &QkRing,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    d: u32,
) -> Result<BigInt> {
    gw_from_product(ring, lambda, mu, nu, d, two_point_sheaf)
}

/// Three-point invariants `I_d(O_lambda, O_mu, O_nu)` with `l(lambda) <= d`,
/// evaluated as an ordinary K-theory Euler characteristic on Gr(b, n),
/// `b = min(m + d, n)`, after removing the first `d` columns of each
/// partition.
///
/// Rings for the target Grassmannians are built on demand and kept.
pub struct SpecialGw {
    ctx: GrassCtx,
    targets: RwLock<HashMap<usize, Arc<QkRing>>>,
}

impl SpecialGw {
    pub fn new(ctx: GrassCtx) -> Self {
        SpecialGw {
            ctx,
            targets: RwLock::new(HashMap::new()),
        }
    }

    fn target(&self, b: usize) -> Arc<QkRing> {
        if let Some(r) = self.targets.read().get(&b) {
            return r.clone();
        }
        let ring = Arc::new(QkRing::new(
            GrassCtx::new(b, self.ctx.n()).expect("b < n checked by caller"),
        ));
        self.targets.write().entry(b).or_insert(ring).clone()
    }

    pub fn compute(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        d: u32,
    ) -> Result<BigInt> {
        for x in [lambda, mu, nu] {
            self.ctx.check(x)?;
        }
        if d == 0 || lambda.len() > d as usize {
            return Err(Error::Precondition(format!(
                "special invariant needs d >= 1 and l(lambda) <= d, got lambda = {lambda}, d = {d}"
            )));
        }
        let d = d as usize;
        let b = (self.ctx.m() + d).min(self.ctx.n());
        if b == self.ctx.n() {
            // Gr(n, n) is a point
            return Ok(BigInt::one());
        }
        let target = self.target(b);
        let [lh, mh, nh] = [lambda, mu, nu].map(|x| remove_cols(x, d));
        let first = target.star(&lh, &mh)?.classical_part();
        let second = target
            .star_general(&first, &target.schubert(&nh)?)?
            .classical_part();
        Ok(second.chi_q().coeff(0))
    }
}

/// One-shot form of [`SpecialGw::compute`].
pub fn special_gw(
    ctx: &GrassCtx,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    d: u32,
) -> Result<BigInt> {
    SpecialGw::new(*ctx).compute(lambda, mu, nu, d)
}

/// The dual basis element `t_q * O_{lambda^dual}` with
/// `t_q = (1 - O_1) / (1 - q)`.
///
/// Its coefficients are power series in `q`, so it is stored as
/// `(1 - q)^{-1}` times the polynomial element `(1 - O_1) * O_{lambda^dual}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasisElement {
    pub lambda: Partition,
    pub numerator: QKElement,
}

impl DualBasisElement {
    /// `chi^q(x * self)`, exact because the `(1 - q)` factor always cancels.
    pub fn pair(&self, ring: &QkRing, x: &QKElement) -> Result<QPoly> {
        ring.star_general(x, &self.numerator)?
            .chi_q()
            .divide_by_one_minus_q()
    }
}

impl fmt::Display for DualBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - q)^-1 * ({})", self.numerator)
    }
}

/// `(1 - O_1) * x`.
pub fn times_t(ring: &QkRing, x: &QKElement) -> QKElement {
    x.try_sub(&ring.act_special(1, x)).expect("same ring")
}

pub fn dual_basis_element(ring: &QkRing, lambda: &Partition) -> Result<DualBasisElement> {
    let ctx = ring.ctx();
    let dual = ctx.dual(lambda)?;
    let numerator = times_t(ring, &ring.schubert(&dual)?);
    Ok(DualBasisElement {
        lambda: lambda.clone(),
        numerator,
    })
}

/// `sum_d N^{nu^dual,d}_{lambda,mu} q^d`, computed as
/// `chi^q(t_q * O_lambda * O_mu * O_nu)`.
pub fn sym3(ring: &QkRing, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<QPoly> {
    let first = ring.star(lambda, mu)?;
    let triple = ring.star_general(&first, &ring.schubert(nu)?)?;
    times_t(ring, &triple).chi_q().divide_by_one_minus_q()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[i64]) -> Partition {
        Partition::new(rows).unwrap()
    }

    fn gr(m: usize, n: usize) -> GrassCtx {
        GrassCtx::new(m, n).unwrap()
    }

    #[test]
    fn two_point_values() {
        let c = gr(2, 4);
        assert_eq!(two_point_dual(&c, &p(&[2, 1]), &p(&[]), 1).unwrap(), 1);
        assert_eq!(two_point_dual(&c, &p(&[2, 2]), &p(&[1]), 1).unwrap(), 1);
        assert_eq!(two_point_dual(&c, &p(&[2, 1]), &p(&[2, 1]), 0).unwrap(), 1);
        assert_eq!(two_point_dual(&c, &p(&[2, 1]), &p(&[1]), 0).unwrap(), 0);
        assert_eq!(two_point_sheaf(&c, &p(&[2, 2]), &p(&[2, 2]), 1).unwrap(), 0);
        assert_eq!(two_point_sheaf(&c, &p(&[2, 2]), &p(&[2, 2]), 2).unwrap(), 1);
        assert_eq!(two_point_sheaf(&c, &p(&[]), &p(&[]), 0).unwrap(), 1);
    }

    #[test]
    fn gromov_witten_examples() {
        let r = QkRing::new(gr(2, 4));
        assert_eq!(
            gw_dual(&r, &p(&[2, 1]), &p(&[2, 1]), &p(&[2, 1]), 1).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            gw_dual(&r, &p(&[2]), &p(&[2]), &p(&[1]), 1).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            gw_sheaf(&r, &p(&[2, 1]), &p(&[2, 1]), &p(&[1]), 1).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn special_examples() {
        let c = gr(2, 4);
        assert_eq!(
            special_gw(&c, &p(&[]), &p(&[]), &p(&[]), 1).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            special_gw(&c, &p(&[1]), &p(&[2, 2]), &p(&[2, 2]), 1).unwrap(),
            BigInt::zero()
        );
        assert!(matches!(
            special_gw(&c, &p(&[1, 1]), &p(&[]), &p(&[]), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sym3_unit() {
        let r = QkRing::new(gr(2, 4));
        assert_eq!(
            sym3(&r, &p(&[]), &p(&[]), &p(&[2, 2])).unwrap(),
            QPoly::one()
        );
        assert_eq!(sym3(&r, &p(&[]), &p(&[]), &p(&[])).unwrap(), QPoly::zero());
        assert_eq!(
            sym3(&r, &p(&[2, 1]), &p(&[2, 1]), &p(&[1])).unwrap(),
            -QPoly::q()
        );
    }
}
