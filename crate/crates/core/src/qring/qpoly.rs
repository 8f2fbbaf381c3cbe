use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with arbitrary-precision integer coefficients.
/// Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), 0)
    }

    pub fn q() -> Self {
        QPoly::monomial(BigInt::one(), 1)
    }

    pub fn one_minus_q() -> Self {
        QPoly::from_coeffs([(0, BigInt::one()), (1, -BigInt::one())])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, d: u32) -> Self {
        let mut p = QPoly::zero();
        p.add_term(d, c);
        p
    }

    pub fn from_coeffs(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut p = QPoly::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: u32) -> BigInt {
        self.coeffs.get(&d).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn add_term(&mut self, d: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(&d, x)| (d, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: u32) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, x)| (d + by, x.clone()))
                .collect(),
        }
    }

    /// Value at `q = 1`, i.e. the sum of the coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact quotient by `1 - q`.
    pub fn divide_by_one_minus_q(&self) -> Result<QPoly> {
        if !self.at_one().is_zero() {
            return Err(Error::NotDivisible(self.to_string()));
        }
        let Some(top) = self.degree() else {
            return Ok(QPoly::zero());
        };
        // p = (1 - q) s  =>  s_j = p_0 + ... + p_j
        let mut running = BigInt::zero();
        let mut out = QPoly::zero();
        for j in 0..top {
            running += self.coeff(j);
            out.add_term(j, running.clone());
        }
        Ok(out)
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_term(d, c.clone());
        }
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (&d, c) in &rhs.coeffs {
            self.add_term(d, -c);
        }
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "q")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
