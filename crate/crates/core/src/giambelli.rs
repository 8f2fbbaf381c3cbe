//! Giambelli polynomials `P_lambda(O_1, ..., O_k)` and the quantum product
//! obtained by letting them act through the Pieri rule.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use parking_lot::RwLock;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{remove_cols, skew_cols, GrassCtx, Partition};
use crate::pieri::{binom, quantum_pieri, sign};
use crate::qring::{QKElement, QPoly};

/// `O_lambda` written as a polynomial in the special classes.
///
/// A node is a sum of `coeff * O_p * child`; the unit class has no terms.
/// Children are shared between parents, so the structure is a DAG keyed by
/// partition.
#[derive(Debug)]
pub struct GiambelliExpr {
    shape: Partition,
    terms: Vec<GiambelliTerm>,
}

#[derive(Debug)]
pub struct GiambelliTerm {
    pub coeff: BigInt,
    pub special: usize,
    pub child: Arc<GiambelliExpr>,
}

impl GiambelliExpr {
    pub fn unit() -> Self {
        GiambelliExpr {
            shape: Partition::empty(),
            terms: Vec::new(),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn terms(&self) -> &[GiambelliTerm] {
        &self.terms
    }

    pub fn is_unit(&self) -> bool {
        self.terms.is_empty() && self.shape.is_empty()
    }

    /// Longest chain of special-class applications.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.child.depth())
            .max()
            .unwrap_or(0)
    }

    /// Expanded commutative monomials: sorted special indices (descending)
    /// mapped to their integer coefficient.
    pub fn monomials(&self) -> BTreeMap<Vec<usize>, BigInt> {
        let mut out = BTreeMap::new();
        if self.is_unit() {
            out.insert(Vec::new(), BigInt::one());
            return out;
        }
        for t in &self.terms {
            for (mono, c) in t.child.monomials() {
                let mut key = mono;
                key.push(t.special);
                key.sort_unstable_by(|a, b| b.cmp(a));
                *out.entry(key).or_insert_with(BigInt::zero) += &t.coeff * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Renders the expanded polynomial, e.g. `O[1]*O[1] + O[2]*O[1] - O[2]`.
impl fmt::Display for GiambelliExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self.monomials();
        if monos.is_empty() {
            return write!(f, "0");
        }
        // longer monomials first, then by indices
        let mut ordered: Vec<_> = monos.into_iter().collect();
        ordered.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| b.0.cmp(&a.0)));
        for (i, (mono, c)) in ordered.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || mono.is_empty() {
                factors.push(mag.to_string());
            }
            factors.extend(mono.iter().map(|p| format!("O[{p}]")));
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn cached<K, V, F>(map: &RwLock<HashMap<K, Arc<V>>>, key: &K, compute: F) -> Arc<V>
where
    K: Hash + Eq + Clone,
    F: FnOnce() -> V,
{
    if let Some(v) = map.read().get(key) {
        return v.clone();
    }
    // computed outside the lock; the first insertion wins
    let value = Arc::new(compute());
    map.write().entry(key.clone()).or_insert(value).clone()
}

/// The ring QK(Gr(m, n)) with memoized Pieri products, Giambelli
/// expressions and Schubert products.
///
/// Safe to share between threads; every cache is insert-once.
pub struct QkRing {
    ctx: GrassCtx,
    pieri: RwLock<HashMap<(usize, Partition), Arc<QKElement>>>,
    giambelli: RwLock<HashMap<Partition, Arc<GiambelliExpr>>>,
    products: RwLock<HashMap<(Partition, Partition), Arc<QKElement>>>,
}

impl QkRing {
    pub fn new(ctx: GrassCtx) -> Self {
        QkRing {
            ctx,
            pieri: RwLock::new(HashMap::new()),
            giambelli: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.ctx.partitions()
    }

    pub fn schubert(&self, lambda: &Partition) -> Result<QKElement> {
        QKElement::schubert(self.ctx, lambda)
    }

    /// Memoized `O_p * O_lambda` for `1 <= p <= k`.
    pub(crate) fn pieri(&self, p: usize, lambda: &Partition) -> Arc<QKElement> {
        cached(&self.pieri, &(p, lambda.clone()), || {
            quantum_pieri(&self.ctx, p as i64, lambda).expect("validated Pieri input")
        })
    }

    /// `O_p * x` by linearity over the Pieri rule.
    pub fn act_special(&self, p: usize, x: &QKElement) -> QKElement {
        let mut out = QKElement::zero(self.ctx);
        for (kappa, c) in x.terms() {
            out.add_scaled(&self.pieri(p, kappa), c);
        }
        out
    }

    pub fn giambelli_expr(&self, lambda: &Partition) -> Result<Arc<GiambelliExpr>> {
        self.ctx.check(lambda)?;
        Ok(self.expr(lambda))
    }

    fn expr(&self, lambda: &Partition) -> Arc<GiambelliExpr> {
        if let Some(v) = self.giambelli.read().get(lambda) {
            return v.clone();
        }
        let built = self.build_expr(lambda);
        cached(&self.giambelli, lambda, || built)
    }

    fn build_expr(&self, lambda: &Partition) -> GiambelliExpr {
        match lambda.len() {
            0 => GiambelliExpr::unit(),
            1 => GiambelliExpr {
                shape: lambda.clone(),
                terms: vec![GiambelliTerm {
                    coeff: BigInt::one(),
                    special: lambda.first_row(),
                    child: self.expr(&Partition::empty()),
                }],
            },
            _ => {
                let a = lambda.first_row();
                let mu = Partition::from_rows(lambda.parts()[1..].iter().copied());
                let mu_hat = remove_cols(&mu, 1);
                let mut terms = Vec::new();
                for nu in vertical_strips_below(&mu) {
                    let strip = (mu.weight() - nu.weight()) as i64;
                    let cols = skew_cols(&mu_hat, &nu).expect("mu_hat is inside nu") as i64;
                    let child = self.expr(&nu);
                    for p in a..=self.ctx.k() {
                        let shift = (p - a) as i64;
                        let c = sign(strip) * binom(shift - 1 + cols, shift - strip);
                        if !c.is_zero() {
                            terms.push(GiambelliTerm {
                                coeff: c,
                                special: p,
                                child: child.clone(),
                            });
                        }
                    }
                }
                terms.sort_by(|x, y| {
                    x.special
                        .cmp(&y.special)
                        .then_with(|| x.child.shape.cmp(&y.child.shape))
                });
                GiambelliExpr {
                    shape: lambda.clone(),
                    terms,
                }
            }
        }
    }

    /// Lets `expr` act on `x`, innermost special class first.
    pub fn apply(&self, expr: &GiambelliExpr, x: &QKElement) -> Result<QKElement> {
        if x.ctx() != self.ctx {
            return Err(crate::error::Error::ContextMismatch(self.ctx, x.ctx()));
        }
        let mut memo = HashMap::new();
        Ok(self.eval(expr, x, &mut memo))
    }

    fn eval(
        &self,
        expr: &GiambelliExpr,
        x: &QKElement,
        memo: &mut HashMap<Partition, QKElement>,
    ) -> QKElement {
        if expr.is_unit() {
            return x.clone();
        }
        if let Some(v) = memo.get(&expr.shape) {
            return v.clone();
        }
        let mut out = QKElement::zero(self.ctx);
        for t in &expr.terms {
            let inner = self.eval(&t.child, x, memo);
            let acted = self.act_special(t.special, &inner);
            out.add_scaled(&acted, &QPoly::constant(t.coeff.clone()));
        }
        memo.insert(expr.shape.clone(), out.clone());
        out
    }

    /// The quantum product `O_lambda * O_mu`.
    pub fn star(&self, lambda: &Partition, mu: &Partition) -> Result<Arc<QKElement>> {
        self.ctx.check(lambda)?;
        self.ctx.check(mu)?;
        Ok(self.star_unchecked(lambda, mu))
    }

    pub(crate) fn star_unchecked(&self, lambda: &Partition, mu: &Partition) -> Arc<QKElement> {
        cached(&self.products, &(lambda.clone(), mu.clone()), || {
            let expr = self.expr(lambda);
            let mut memo = HashMap::new();
            let prod = self.eval(&expr, &QKElement::basis(self.ctx, mu.clone()), &mut memo);
            debug_assert!(prod.max_q_degree().unwrap_or(0) as usize <= lambda.len());
            prod
        })
    }

    /// `N^{nu,d}_{lambda,mu}`.
    pub fn structure_constant(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        d: u32,
    ) -> Result<BigInt> {
        self.ctx.check(nu)?;
        Ok(self.star(lambda, mu)?.coefficient(nu, d))
    }

    /// Bilinear extension of `star` to arbitrary elements.
    pub fn star_general(&self, x: &QKElement, y: &QKElement) -> Result<QKElement> {
        x.try_add(&QKElement::zero(self.ctx))?;
        y.try_add(&QKElement::zero(self.ctx))?;
        let mut out = QKElement::zero(self.ctx);
        for (kappa, c) in y.terms() {
            let expr = self.expr(kappa);
            let mut memo = HashMap::new();
            let acted = self.eval(&expr, x, &mut memo);
            out.add_scaled(&acted, c);
        }
        Ok(out)
    }

    /// Every product computed so far, sorted by `(lambda, mu)`.
    pub fn cached_products(&self) -> Vec<(Partition, Partition, Arc<QKElement>)> {
        let mut out: Vec<_> = self
            .products
            .read()
            .iter()
            .map(|((a, b), p)| (a.clone(), b.clone(), p.clone()))
            .collect();
        out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        out
    }

    /// Seeds the product cache, e.g. from a table stored on disk. An entry
    /// already present is kept.
    pub fn preload(&self, lambda: &Partition, mu: &Partition, product: QKElement) -> Result<()> {
        self.ctx.check(lambda)?;
        self.ctx.check(mu)?;
        if product.ctx() != self.ctx {
            return Err(Error::ContextMismatch(product.ctx(), self.ctx));
        }
        self.products
            .write()
            .entry((lambda.clone(), mu.clone()))
            .or_insert_with(|| Arc::new(product));
        Ok(())
    }

    /// `O_lambda * O_mu` for every unordered pair `lambda <= mu`, in the
    /// global order; pairs are computed in parallel.
    pub fn full_table(&self) -> Vec<(Partition, Partition, Arc<QKElement>)> {
        let all = self.partitions();
        let pairs: Vec<(Partition, Partition)> = all
            .iter()
            .enumerate()
            .flat_map(|(i, a)| all[i..].iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        pairs
            .into_par_iter()
            .map(|(a, b)| {
                let prod = self.star_unchecked(&a, &b);
                (a, b, prod)
            })
            .collect()
    }
}

/// Every `nu ⊆ mu` with `mu / nu` a vertical strip.
fn vertical_strips_below(mu: &Partition) -> Vec<Partition> {
    let rows = mu.parts();
    (0u32..1 << rows.len())
        .filter_map(|mask| {
            let cand: Vec<usize> = rows
                .iter()
                .enumerate()
                .map(|(r, &v)| v - ((mask >> r) & 1) as usize)
                .collect();
            cand.windows(2)
                .all(|w| w[0] >= w[1])
                .then(|| Partition::from_rows(cand))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[i64]) -> Partition {
        Partition::new(rows).unwrap()
    }

    fn ring(m: usize, n: usize) -> QkRing {
        QkRing::new(GrassCtx::new(m, n).unwrap())
    }

    fn el(r: &QkRing, s: &str) -> QKElement {
        QKElement::parse_text(r.ctx(), s).unwrap()
    }

    #[test]
    fn giambelli_shapes() {
        let r = ring(2, 4);
        let e21 = r.giambelli_expr(&p(&[2, 1])).unwrap();
        assert_eq!(e21.terms().len(), 1);
        assert_eq!(e21.terms()[0].special, 2);
        assert_eq!(e21.terms()[0].child.shape(), &p(&[1]));
        assert_eq!(e21.to_string(), "O[2]*O[1]");
        let e11 = r.giambelli_expr(&p(&[1, 1])).unwrap();
        assert_eq!(e11.to_string(), "O[2]*O[1] + O[1]*O[1] - O[2]");
        assert!(r.giambelli_expr(&p(&[])).unwrap().is_unit());
        assert!(r.giambelli_expr(&p(&[3])).is_err());
    }

    #[test]
    fn apply_examples() {
        let r = ring(2, 4);
        let unit = r.schubert(&p(&[])).unwrap();
        let x = el(&r, "q*O[1] - O[2,2]");
        assert_eq!(r.apply(&GiambelliExpr::unit(), &x).unwrap(), x);
        let e21 = r.giambelli_expr(&p(&[2, 1])).unwrap();
        assert_eq!(r.apply(&e21, &unit).unwrap(), el(&r, "O[2,1]"));
        let o21 = r.schubert(&p(&[2, 1])).unwrap();
        assert_eq!(
            r.apply(&e21, &o21).unwrap(),
            el(&r, "q*O[1,1] + q*O[2] - q*O[2,1]")
        );
    }

    #[test]
    fn star_examples() {
        let r = ring(2, 4);
        assert_eq!(*r.star(&p(&[2, 2]), &p(&[2, 2])).unwrap(), el(&r, "q^2"));
        assert_eq!(*r.star(&p(&[2, 1]), &p(&[1, 1])).unwrap(), el(&r, "q*O[1]"));
        assert_eq!(*r.star(&p(&[]), &p(&[2, 1])).unwrap(), el(&r, "O[2,1]"));
        assert_eq!(
            r.structure_constant(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 1]), 1)
                .unwrap(),
            BigInt::from(-1)
        );
        let r36 = ring(3, 6);
        assert_eq!(
            r36.structure_constant(&p(&[2]), &p(&[3, 2, 1]), &p(&[2, 1]), 1)
                .unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn star_general_examples() {
        let r = ring(2, 4);
        let x = el(&r, "q*O[1]");
        let y = el(&r, "O[1]");
        assert_eq!(
            r.star_general(&x, &y).unwrap(),
            el(&r, "q*O[1,1] + q*O[2] - q*O[2,1]")
        );
        assert!(r
            .star_general(&QKElement::zero(r.ctx()), &y)
            .unwrap()
            .is_zero());
        let other = QKElement::zero(GrassCtx::new(2, 5).unwrap());
        assert!(r.star_general(&other, &y).is_err());
    }

    #[test]
    fn full_table_is_ordered() {
        let r = ring(2, 4);
        let table = r.full_table();
        assert_eq!(table.len(), 21);
        assert!(table
            .windows(2)
            .all(|w| (&w[0].0, &w[0].1) < (&w[1].0, &w[1].1)));
    }
}
