use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::QPoly;
use crate::error::{Error, Result};
use crate::partition::{GrassCtx, Partition};

/// A finite combination `sum c_{nu}(q) O_nu` in QK(Gr(m, n)).
#[derive(Clone, PartialEq, Eq)]
pub struct QKElement {
    ctx: GrassCtx,
    terms: BTreeMap<Partition, QPoly>,
}

/// One `coeff * q^d * O_nu` term of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub nu: Partition,
    pub d: u32,
    #[serde(with = "bigint_json")]
    pub coeff: BigInt,
}

impl QKElement {
    pub fn zero(ctx: GrassCtx) -> Self {
        QKElement {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `O_lambda`.
    pub fn schubert(ctx: GrassCtx, lambda: &Partition) -> Result<Self> {
        ctx.check(lambda)?;
        Ok(Self::basis(ctx, lambda.clone()))
    }

    pub(crate) fn basis(ctx: GrassCtx, lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, QPoly::one());
        QKElement { ctx, terms }
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of Schubert classes with a nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// `(nu, c_nu(q))` pairs in the global partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QPoly)> {
        self.terms.iter()
    }

    pub fn poly(&self, nu: &Partition) -> QPoly {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    /// The integer `N` such that this element contains `N q^d O_nu`.
    pub fn coefficient(&self, nu: &Partition, d: u32) -> BigInt {
        self.terms.get(nu).map(|p| p.coeff(d)).unwrap_or_default()
    }

    /// `(nu, d, coeff)` triples ordered by `d`, then by partition.
    pub fn flat_terms(&self) -> Vec<(Partition, u32, BigInt)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .flat_map(|(nu, p)| p.terms().map(move |(d, c)| (nu.clone(), d, c.clone())))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn max_q_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(QPoly::degree).max()
    }

    /// The `q^0` layer, i.e. the image in ordinary K-theory.
    pub fn classical_part(&self) -> QKElement {
        let mut out = QKElement::zero(self.ctx);
        for (nu, p) in &self.terms {
            out.add_poly(nu.clone(), &QPoly::constant(p.coeff(0)));
        }
        out
    }

    pub fn add_term(&mut self, nu: Partition, d: u32, c: BigInt) -> Result<()> {
        self.ctx.check(&nu)?;
        self.add_poly(nu, &QPoly::monomial(c, d));
        Ok(())
    }

    pub(crate) fn add_poly(&mut self, nu: Partition, p: &QPoly) {
        if p.is_zero() {
            return;
        }
        let vanished = match self.terms.get_mut(&nu) {
            Some(slot) => {
                *slot += p;
                slot.is_zero()
            }
            None => {
                self.terms.insert(nu.clone(), p.clone());
                false
            }
        };
        if vanished {
            self.terms.remove(&nu);
        }
    }

    /// `self += c * other` for elements of the same ring.
    pub(crate) fn add_scaled(&mut self, other: &QKElement, c: &QPoly) {
        debug_assert_eq!(self.ctx, other.ctx);
        if c.is_zero() {
            return;
        }
        for (nu, p) in &other.terms {
            self.add_poly(nu.clone(), &(p * c));
        }
    }

    fn same_ctx(&self, other: &QKElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx, other.ctx))
        }
    }

    pub fn try_add(&self, other: &QKElement) -> Result<QKElement> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &QPoly::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &QKElement) -> Result<QKElement> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-QPoly::one());
        Ok(out)
    }

    pub fn negate(&self) -> QKElement {
        self.scale(&-QPoly::one())
    }

    pub fn scale(&self, c: &QPoly) -> QKElement {
        let mut out = QKElement::zero(self.ctx);
        out.add_scaled(self, c);
        out
    }

    /// The q-linear Euler characteristic sending every `O_lambda` to 1.
    pub fn chi_q(&self) -> QPoly {
        let mut out = QPoly::zero();
        for p in self.terms.values() {
            out += p;
        }
        out
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.flat_terms()
            .into_iter()
            .map(|(nu, d, coeff)| TermRecord { nu, d, coeff })
            .collect()
    }

    pub fn from_records(ctx: GrassCtx, records: &[TermRecord]) -> Result<QKElement> {
        let mut out = QKElement::zero(ctx);
        for r in records {
            out.add_term(r.nu.clone(), r.d, r.coeff.clone())?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("term records always serialize")
    }

    pub fn from_json(ctx: GrassCtx, json: &str) -> Result<QKElement> {
        let records: Vec<TermRecord> =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        QKElement::from_records(ctx, &records)
    }

    /// Parses the text rendering produced by `Display`.
    pub fn parse_text(ctx: GrassCtx, text: &str) -> Result<QKElement> {
        let bad = || Error::Malformed(text.to_string());
        let mut out = QKElement::zero(ctx);
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for (negative, body) in split_signed_terms(text).ok_or_else(bad)? {
            let mut coeff = BigInt::one();
            let mut d = 0u32;
            let mut nu = Partition::empty();
            for factor in body.split('*').map(str::trim) {
                if let Some(rest) = factor.strip_prefix("O[") {
                    let rows = rest.strip_suffix(']').ok_or_else(bad)?;
                    nu = rows.parse()?;
                } else if factor == "q" {
                    d += 1;
                } else if let Some(exp) = factor.strip_prefix("q^") {
                    d += exp.parse::<u32>().map_err(|_| bad())?;
                } else {
                    coeff *= BigInt::from_str(factor).map_err(|_| bad())?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(nu, d, coeff)?;
        }
        Ok(out)
    }
}

fn split_signed_terms(text: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = text.as_bytes();
    let mut i = 0;
    if bytes.first() == Some(&b'-') {
        negative = true;
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let body = text[start..i].trim();
                if body.is_empty() {
                    return None;
                }
                out.push((negative, body));
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    let body = text[start..].trim();
    if body.is_empty() {
        return None;
    }
    out.push((negative, body));
    Some(out)
}

/// Renders terms as `[c*]q^d*O[p1,...]` joined by signed `+`/`-`.
impl fmt::Display for QKElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.flat_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (nu, d, c)) in terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            match d {
                0 => {}
                1 => factors.push("q".to_string()),
                _ => factors.push(format!("q^{d}")),
            }
            if !nu.is_empty() {
                let rows: Vec<String> = nu.parts().iter().map(|r| r.to_string()).collect();
                factors.push(format!("O[{}]", rows.join(",")));
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QKElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

/// `|nu| + n d`, the grade of `q^d O_nu` in the topological filtration.
pub fn filtration_grade(ctx: &GrassCtx, nu: &Partition, d: u32) -> usize {
    nu.weight() + ctx.n() * d as usize
}

pub(crate) mod bigint_json {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{
        de::Error as _, ser::Error as _, Deserialize, Deserializer, Serialize, Serializer,
    };

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&x.to_string())
            .map_err(S::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}
