//! Degree-zero oracle built on stable Grothendieck polynomials in finitely
//! many variables.
//!
//! `G_lambda(x_1..x_N)` is expanded over set-valued tableaux; a product
//! `G_lambda * G_mu` is then peeled back into the `G` basis by triangular
//! elimination. Nothing here touches the Pieri/Giambelli path.
//!
//! Polynomials may be truncated at a total degree bound: since
//! `G_nu = s_nu + (higher degree)`, the elimination is exact for every `nu`
//! whose weight is within the bound.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;

pub type Exponent = Vec<u16>;

/// A polynomial in `x_1..x_N` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: HashMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], BigInt::from(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigInt) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let vanished = match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += c;
                slot.is_zero()
            }
            None => {
                self.terms.insert(exp.clone(), c);
                false
            }
        };
        if vanished {
            self.terms.remove(&exp);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &BigInt) {
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    /// Product, dropping monomials of total degree above `max_degree`.
    pub fn mul_truncated(&self, other: &MultiPoly, max_degree: Option<usize>) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, a) in &self.terms {
            let da = degree(ea);
            for (eb, b) in &other.terms {
                if max_degree.is_some_and(|cap| da + degree(eb) > cap) {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree(e)).min()
    }
}

fn degree(e: &[u16]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// `G_lambda(x_1..x_N)` over all set-valued tableaux.
pub fn grothendieck_poly(lambda: &Partition, nvars: usize) -> MultiPoly {
    grothendieck_poly_truncated(lambda, nvars, None)
}

/// `G_lambda(x_1..x_N)` keeping only monomials of degree `<= max_degree`.
///
/// Boxes are filled in row-major order with nonempty subsets; a box's
/// minimum must be `>=` the maximum of its left neighbour and `>` the maximum
/// of the box above.
pub fn grothendieck_poly_truncated(
    lambda: &Partition,
    nvars: usize,
    max_degree: Option<usize>,
) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if lambda.len() > nvars {
        return out;
    }
    let boxes: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let heights: Vec<usize> = (0..lambda.first_row())
        .map(|c| lambda.parts().iter().filter(|&&p| p > c).count())
        .collect();
    let cap = max_degree.unwrap_or(usize::MAX);
    let mut acc: HashMap<Exponent, i64> = HashMap::new();
    let mut state = Filling {
        lambda,
        boxes: &boxes,
        heights: &heights,
        nvars,
        cap,
        maxes: vec![Vec::new(); lambda.len()],
        exp: vec![0; nvars],
        entries: 0,
    };
    state.fill(0, &mut acc);
    for (e, c) in acc {
        out.add_term(e, BigInt::from(c));
    }
    out
}

struct Filling<'a> {
    lambda: &'a Partition,
    boxes: &'a [(usize, usize)],
    heights: &'a [usize],
    nvars: usize,
    cap: usize,
    /// maximum entry of every filled box, per row
    maxes: Vec<Vec<usize>>,
    exp: Exponent,
    entries: usize,
}

impl Filling<'_> {
    fn fill(&mut self, idx: usize, acc: &mut HashMap<Exponent, i64>) {
        if idx == self.boxes.len() {
            let excess = self.entries - self.lambda.weight();
            *acc.entry(self.exp.clone()).or_insert(0) +=
                if excess.is_multiple_of(2) { 1 } else { -1 };
            return;
        }
        let (r, c) = self.boxes[idx];
        let remaining = self.boxes.len() - idx - 1;
        let mut lo = 0;
        if c > 0 {
            lo = lo.max(self.maxes[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(self.maxes[r - 1][c] + 1);
        }
        // boxes below in this column need strictly larger entries
        let below = self.heights[c] - r - 1;
        if self.nvars < below + 1 || lo > self.nvars - 1 - below {
            return;
        }
        let hi = self.nvars - 1 - below;
        let width = hi - lo + 1;
        for bits in 1u32..(1u32 << width) {
            let size = bits.count_ones() as usize;
            if self.entries + size + remaining > self.cap {
                continue;
            }
            let top = lo + (31 - bits.leading_zeros()) as usize;
            for v in 0..width {
                if bits >> v & 1 == 1 {
                    self.exp[lo + v] += 1;
                }
            }
            self.entries += size;
            self.maxes[r].push(top);
            self.fill(idx + 1, acc);
            self.maxes[r].pop();
            self.entries -= size;
            for v in 0..width {
                if bits >> v & 1 == 1 {
                    self.exp[lo + v] -= 1;
                }
            }
        }
    }
}

/// Expands a symmetric polynomial in the basis `{G_nu : l(nu) <= N}`.
///
/// With `max_degree` set, only coefficients of `nu` with `|nu| <=
/// max_degree` are produced (and `f` may itself be truncated there).
pub fn expand_in_g_basis(
    f: &MultiPoly,
    max_degree: Option<usize>,
) -> Result<BTreeMap<Partition, BigInt>> {
    let nvars = f.nvars();
    let bound = max_degree.unwrap_or_else(|| nvars * (f.max_degree().unwrap_or(0) + nvars));
    let mut residue = f.clone();
    let mut out = BTreeMap::new();
    while let Some(low) = residue.min_degree() {
        if low > bound {
            if max_degree.is_some() {
                break;
            }
            return Err(Error::NonSymmetric(format!(
                "residue survives past degree bound {bound}"
            )));
        }
        let (lead, c) = residue
            .terms()
            .filter(|(e, _)| degree(e) == low)
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonempty residue");
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonSymmetric(format!(
                "leading exponent {lead:?} is not a partition"
            )));
        }
        let nu = Partition::from_rows(lead.iter().map(|&x| x as usize));
        let g = grothendieck_poly_truncated(&nu, nvars, Some(bound));
        residue.add_scaled(&g, &-c.clone());
        out.insert(nu, c);
    }
    Ok(out)
}

/// `G_lambda * G_mu` expanded in the `G` basis using `nvars` variables and
/// keeping shapes of weight `<= max_weight`. Exact for every `nu` with
/// `l(nu) <= nvars`.
pub fn k0_product(
    lambda: &Partition,
    mu: &Partition,
    nvars: usize,
    max_weight: usize,
) -> Result<BTreeMap<Partition, BigInt>> {
    let cap = Some(max_weight);
    let g = grothendieck_poly_truncated(lambda, nvars, cap)
        .mul_truncated(&grothendieck_poly_truncated(mu, nvars, cap), cap);
    expand_in_g_basis(&g, cap)
}

/// The ordinary K-theory structure constant `N^{nu,0}_{lambda,mu}`.
pub fn k0_constant(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
    if nu.weight() < lambda.weight() + mu.weight() {
        return Ok(BigInt::zero());
    }
    let nvars = (lambda.len() + mu.len()).max(nu.len()).max(1);
    k0_constant_with(lambda, mu, nu, nvars)
}

/// [`k0_constant`] with an explicit variable count.
pub fn k0_constant_with(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    nvars: usize,
) -> Result<BigInt> {
    let expansion = k0_product(lambda, mu, nvars, nu.weight())?;
    Ok(expansion.get(nu).cloned().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[i64]) -> Partition {
        Partition::new(rows).unwrap()
    }

    fn poly(nvars: usize, terms: &[(&[u16], i64)]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in terms {
            out.add_term(e.to_vec(), BigInt::from(*c));
        }
        out
    }

    #[test]
    fn small_grothendieck_polynomials() {
        // tableaux {1}, {2}, {1,2}
        assert_eq!(
            grothendieck_poly(&p(&[1]), 2),
            poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], -1)])
        );
        assert_eq!(grothendieck_poly(&p(&[]), 3), MultiPoly::one(3));
        assert!(grothendieck_poly(&p(&[1, 1]), 1).is_zero());
        // G_2(x1, x2) = x1^2 + x1x2 + x2^2 - x1^2x2 - x1x2^2
        assert_eq!(
            grothendieck_poly(&p(&[2]), 2),
            poly(
                2,
                &[
                    (&[2, 0], 1),
                    (&[1, 1], 1),
                    (&[0, 2], 1),
                    (&[2, 1], -1),
                    (&[1, 2], -1)
                ]
            )
        );
    }

    #[test]
    fn truncation_matches_full_polynomial() {
        let full = grothendieck_poly(&p(&[2, 1]), 3);
        let cut = grothendieck_poly_truncated(&p(&[2, 1]), 3, Some(4));
        for (e, c) in full.terms() {
            if degree(e) <= 4 {
                assert_eq!(cut.coeff(e), *c);
            }
        }
        assert!(cut.terms().all(|(e, _)| degree(e) <= 4));
    }

    #[test]
    fn expansion_examples() {
        let g1 = grothendieck_poly(&p(&[1]), 2);
        let sq = g1.mul_truncated(&g1, None);
        let got = expand_in_g_basis(&sq, None).unwrap();
        let want: BTreeMap<_, _> = [
            (p(&[1, 1]), BigInt::from(1)),
            (p(&[2]), BigInt::from(1)),
            (p(&[2, 1]), BigInt::from(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        let unit = expand_in_g_basis(&MultiPoly::one(2), None).unwrap();
        assert_eq!(
            unit.into_iter().collect::<Vec<_>>(),
            vec![(p(&[]), BigInt::from(1))]
        );
        let g = grothendieck_poly(&p(&[2, 1]), 3);
        let basis = expand_in_g_basis(&g, None).unwrap();
        assert_eq!(
            basis.into_iter().collect::<Vec<_>>(),
            vec![(p(&[2, 1]), BigInt::from(1))]
        );
    }

    #[test]
    fn non_symmetric_input_is_rejected() {
        let f = poly(2, &[(&[0, 1], 1)]);
        assert!(matches!(
            expand_in_g_basis(&f, None),
            Err(Error::NonSymmetric(_))
        ));
    }

    #[test]
    fn constants() {
        assert_eq!(
            k0_constant(&p(&[1]), &p(&[1]), &p(&[2, 1])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            k0_constant(&p(&[1]), &p(&[1]), &p(&[1, 1])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            k0_constant(&p(&[2]), &p(&[1]), &p(&[2])).unwrap(),
            BigInt::zero()
        );
    }
}
