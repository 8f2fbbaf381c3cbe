//! Small quantum cohomology engine used only as a cross-check: Bertram's
//! quantum Pieri rule and the Giambelli determinant expanded over
//! permutations. Elements reuse [`QKElement`] with graded coefficients.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::{GrassCtx, Partition};
use crate::pieri::horizontal_strips;
use crate::qring::{QKElement, QPoly};

/// `sigma_i * sigma_lambda` in QH(Gr(m, n)).
pub fn qh_pieri(ctx: &GrassCtx, i: usize, lambda: &Partition) -> Result<QKElement> {
    ctx.check(lambda)?;
    let mut out = QKElement::zero(*ctx);
    if i == 0 {
        out.add_poly(lambda.clone(), &QPoly::one());
        return Ok(out);
    }
    if i > ctx.k() {
        return Ok(out);
    }
    for nu in horizontal_strips(ctx, lambda) {
        if nu.weight() == lambda.weight() + i {
            out.add_poly(nu, &QPoly::one());
        }
    }
    // q-term: lambda_1 - 1 >= nu_1 >= lambda_2 - 1 >= nu_2 >= ... >= lambda_m - 1 >= nu_m >= 0
    let target = (lambda.weight() + i).checked_sub(ctx.n());
    if let Some(target) = target {
        let m = ctx.m();
        if lambda.row(m) >= 1 {
            let ranges: Vec<_> = (1..=m)
                .map(|r| (lambda.row(r + 1).saturating_sub(1), lambda.row(r) - 1))
                .collect();
            for rows in ranges
                .iter()
                .map(|&(lo, hi)| lo..=hi)
                .multi_cartesian_product()
            {
                if rows.iter().sum::<usize>() == target {
                    out.add_poly(Partition::from_rows(rows), &QPoly::q());
                }
            }
        }
    }
    Ok(out)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sigma_lambda * sigma_mu`, with `sigma_lambda = det(sigma_{lambda_i + j - i})`.
pub fn qh_star(ctx: &GrassCtx, lambda: &Partition, mu: &Partition) -> Result<QKElement> {
    ctx.check(lambda)?;
    ctx.check(mu)?;
    let l = lambda.len();
    let k = ctx.k() as i64;
    let start = QKElement::schubert(*ctx, mu)?;
    let mut total = QKElement::zero(*ctx);
    for perm in (0..l).permutations(l) {
        let indices: Vec<i64> = (0..l)
            .map(|i| lambda.row(i + 1) as i64 + perm[i] as i64 - i as i64)
            .collect();
        if indices.iter().any(|&p| p < 0 || p > k) {
            continue;
        }
        let mut acc = start.clone();
        for &p in &indices {
            let mut next = QKElement::zero(*ctx);
            for (kappa, c) in acc.terms() {
                next.add_scaled(&qh_pieri(ctx, p as usize, kappa)?, c);
            }
            acc = next;
            if acc.is_zero() {
                break;
            }
        }
        total.add_scaled(&acc, &QPoly::constant(permutation_sign(&perm)));
    }
    Ok(total)
}

/// The quantum Littlewood-Richardson number: coefficient of `q^d sigma_nu`
/// in `sigma_lambda * sigma_mu`.
pub fn quantum_lr(
    ctx: &GrassCtx,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    d: u32,
) -> Result<BigInt> {
    ctx.check(nu)?;
    let lhs = nu.weight() + ctx.n() * d as usize;
    let rhs = lambda.weight() + mu.weight();
    if lhs != rhs {
        return Err(Error::Grading { lhs, rhs });
    }
    Ok(qh_star(ctx, lambda, mu)?.coefficient(nu, d))
}

/// Every coefficient is non-negative.
pub fn is_positive(x: &QKElement) -> bool {
    x.flat_terms().iter().all(|(_, _, c)| *c >= BigInt::zero())
}
