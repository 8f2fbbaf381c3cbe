//! Pieri rules: Lenart's rule in ordinary K-theory and the quantum K-theory
//! rule for multiplying by a special class `O_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{
    hat_bar, is_horizontal_strip, is_rook_strip, skew_rows, GrassCtx, Partition,
};
use crate::qring::{QKElement, QPoly};

/// `binom(x, y)`, zero unless `0 <= y <= x`.
pub fn binom(x: i64, y: i64) -> BigInt {
    if y < 0 || x < 0 || y > x {
        return BigInt::zero();
    }
    let y = y.min(x - y);
    let mut acc = BigInt::one();
    for j in 0..y {
        acc *= x - j;
        acc /= j + 1;
    }
    acc
}

pub(crate) fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Degree-zero coefficient of `O_nu` in `O_i * O_lambda` (stable; no
/// rectangle). For `i <= 0`, `O_i = 1`.
pub fn lenart_coeff(i: i64, lambda: &Partition, nu: &Partition) -> BigInt {
    if i <= 0 {
        return if lambda == nu {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if !is_horizontal_strip(lambda, nu) {
        return BigInt::zero();
    }
    let size = (nu.weight() - lambda.weight()) as i64;
    if size < i {
        return BigInt::zero();
    }
    let rows = skew_rows(lambda, nu).expect("horizontal strip implies containment") as i64;
    sign(size - i) * binom(rows - 1, size - i)
}

fn check_index(ctx: &GrassCtx, i: i64) -> Result<usize> {
    if i < 0 || i as usize > ctx.k() {
        return Err(Error::SpecialIndex {
            index: i,
            max: ctx.k(),
        });
    }
    Ok(i as usize)
}

/// Every `nu` in the rectangle with `nu / lambda` a horizontal strip.
pub(crate) fn horizontal_strips(ctx: &GrassCtx, lambda: &Partition) -> Vec<Partition> {
    let m = ctx.m();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(m);
    fn go(
        r: usize,
        m: usize,
        k: usize,
        lambda: &Partition,
        rows: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if r > m {
            out.push(Partition::from_rows(rows.iter().copied()));
            return;
        }
        let hi = if r == 1 { k } else { lambda.row(r - 1) };
        for v in lambda.row(r)..=hi {
            rows.push(v);
            go(r + 1, m, k, lambda, rows, out);
            rows.pop();
        }
    }
    go(1, m, ctx.k(), lambda, &mut rows, &mut out);
    out
}

/// Lenart's rule restricted to the rectangle; terms outside it vanish in
/// K(Gr(m, n)).
pub fn classical_pieri(ctx: &GrassCtx, i: i64, lambda: &Partition) -> Result<QKElement> {
    let i = check_index(ctx, i)?;
    ctx.check(lambda)?;
    let mut out = QKElement::zero(*ctx);
    if i == 0 {
        out.add_poly(lambda.clone(), &QPoly::one());
        return Ok(out);
    }
    for nu in horizontal_strips(ctx, lambda) {
        let c = lenart_coeff(i as i64, lambda, &nu);
        out.add_poly(nu, &QPoly::constant(c));
    }
    Ok(out)
}

/// Coefficient of `q O_nu` in `O_i * O_lambda`.
///
/// Nonzero only when `lambda` has `m` rows and `nu` arises by deleting outer
/// rim boxes with at least one per row, i.e.
/// `lambda_{r+1} - 1 <= nu_r <= lambda_r - 1` for every row `r`.
pub fn quantum_pieri_q_coeff(ctx: &GrassCtx, i: i64, lambda: &Partition, nu: &Partition) -> BigInt {
    let m = ctx.m();
    if i <= 0 || lambda.len() != m || nu.len() > m {
        return BigInt::zero();
    }
    for r in 1..=m {
        let v = nu.row(r) as i64;
        let lo = lambda.row(r + 1) as i64 - 1;
        let hi = lambda.row(r) as i64 - 1;
        if v < lo || v > hi {
            return BigInt::zero();
        }
    }
    let e = nu.weight() as i64 + ctx.n() as i64 - i - lambda.weight() as i64;
    // rows of nu meeting the rim, bottom rim row (row m) excluded
    let r = (1..m)
        .filter(|&row| nu.row(row) >= lambda.row(row + 1).max(1))
        .count() as i64;
    if e < 0 || e > r {
        return BigInt::zero();
    }
    sign(e) * binom(r, e)
}

/// Candidates `nu` for the degree-one part of `O_i * O_lambda`.
pub(crate) fn rim_removals(ctx: &GrassCtx, lambda: &Partition) -> Vec<Partition> {
    let m = ctx.m();
    if lambda.len() != m {
        return Vec::new();
    }
    let ranges: Vec<(usize, usize)> = (1..=m)
        .map(|r| (lambda.row(r + 1).saturating_sub(1), lambda.row(r) - 1))
        .collect();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(m);
    fn go(r: usize, ranges: &[(usize, usize)], rows: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if r == ranges.len() {
            out.push(Partition::from_rows(rows.iter().copied()));
            return;
        }
        let (lo, hi) = ranges[r];
        for v in lo..=hi {
            rows.push(v);
            go(r + 1, ranges, rows, out);
            rows.pop();
        }
    }
    go(0, &ranges, &mut rows, &mut out);
    out
}

/// The full quantum Pieri product `O_i * O_lambda`; never has `q^2` terms.
pub fn quantum_pieri(ctx: &GrassCtx, i: i64, lambda: &Partition) -> Result<QKElement> {
    let mut out = classical_pieri(ctx, i, lambda)?;
    if i > 0 {
        for nu in rim_removals(ctx, lambda) {
            let c = quantum_pieri_q_coeff(ctx, i, lambda, &nu);
            out.add_poly(nu, &QPoly::monomial(c, 1));
        }
    }
    debug_assert!(out.max_q_degree().unwrap_or(0) <= 1);
    Ok(out)
}

/// Recomputes `quantum_pieri_q_coeff` as a sum of stable Lenart
/// coefficients over the `(m+1)`-row shapes `(j, nu_1+1, ..., nu_m+1)`.
pub fn deg1_via_stable(ctx: &GrassCtx, i: i64, lambda: &Partition, nu: &Partition) -> BigInt {
    let m = ctx.m();
    let tail: Vec<usize> = nu.padded(m).into_iter().map(|v| v + 1).collect();
    let mut total = BigInt::zero();
    for j in nu.first_row() + 1..=ctx.k() {
        let shape = Partition::from_rows(std::iter::once(j).chain(tail.iter().copied()));
        total += lenart_coeff(i, lambda, &shape);
    }
    total
}

/// `O_1 * O_mu` via rook strips.
///
/// Classical part: `sum (-1)^{|lambda/mu| - 1} O_lambda` over nonempty rook
/// strips `lambda / mu` in the rectangle. Quantum part, present only when
/// `mu_1 = k` and `l(mu) = m`: `q sum (-1)^{|nu/c|} O_nu` over rook strips
/// `nu / c` inside the `(m-1) x (k-1)` rectangle, where `c` is `mu` with its
/// first row and column removed.
pub fn mult_box(ctx: &GrassCtx, mu: &Partition) -> Result<QKElement> {
    ctx.check(mu)?;
    let (m, k) = (ctx.m(), ctx.k());
    let mut out = QKElement::zero(*ctx);
    for lambda in rook_strips(mu, m, k) {
        let size = (lambda.weight() - mu.weight()) as i64;
        if size > 0 {
            out.add_poly(lambda, &QPoly::constant(sign(size - 1)));
        }
    }
    if mu.first_row() == k && mu.len() == m {
        let core = hat_bar(mu, 1);
        for nu in rook_strips(&core, m - 1, k - 1) {
            let size = (nu.weight() - core.weight()) as i64;
            out.add_poly(nu, &QPoly::monomial(sign(size), 1));
        }
    }
    Ok(out)
}

/// Every `lambda` inside the `rows x cols` rectangle with `lambda / mu` a rook
/// strip (including `mu` itself).
fn rook_strips(mu: &Partition, rows: usize, cols: usize) -> Vec<Partition> {
    if !mu.fits(rows, cols) {
        return Vec::new();
    }
    let base = mu.padded(rows);
    (0u32..1 << rows)
        .filter_map(|mask| {
            let cand: Vec<usize> = base
                .iter()
                .enumerate()
                .map(|(r, &v)| v + ((mask >> r) & 1) as usize)
                .collect();
            if cand.windows(2).any(|w| w[0] < w[1]) || cand.first().copied().unwrap_or(0) > cols {
                return None;
            }
            let lambda = Partition::from_rows(cand);
            is_rook_strip(mu, &lambda).then_some(lambda)
        })
        .collect()
}
