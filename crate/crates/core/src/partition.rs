//! Young diagrams and the ambient Grassmannian rectangle.
//!
//! Boxes use 1-based `(row, col)` coordinates in English notation (row 1 on
//! top). Rows past the length of a partition read as zero everywhere.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition stored canonically: strictly positive, weakly decreasing rows.
///
/// The total order is the global deterministic order used for every output:
/// weight ascending, then row sequences compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from row lengths, dropping trailing zeros.
    pub fn new(rows: &[i64]) -> Result<Self> {
        if rows.iter().any(|&r| r < 0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(rows.to_vec()));
        }
        let parts = rows
            .iter()
            .take_while(|&&r| r > 0)
            .map(|&r| r as usize)
            .collect();
        Ok(Partition { parts })
    }

    /// Builds a partition from rows already known to be weakly decreasing.
    /// Trailing zeros are trimmed.
    pub fn from_rows(rows: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<usize> = rows.into_iter().collect();
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]), "{parts:?}");
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Row `i` (1-based); zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first_row(&self) -> usize {
        self.row(1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        Partition::from_rows((1..=cols).map(|j| self.parts.iter().filter(|&&p| p >= j).count()))
    }

    /// Diagram containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first_row() <= cols
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        col >= 1 && self.row(row) >= col
    }

    /// The row vector padded (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|i| self.row(i)).collect()
    }

    /// Rectangular partition with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Partition {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text form: comma separated rows, `""` or `"0"` for the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let rows = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::PartitionParse(s.to_string()))?;
        Partition::new(&rows)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<i64>::deserialize(deserializer)?;
        Partition::new(&rows).map_err(serde::de::Error::custom)
    }
}

/// The Grassmannian Gr(m, n) of m-planes in n-space; Schubert classes are
/// indexed by partitions inside the m x k rectangle, k = n - m.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassCtx {
    m: usize,
    n: usize,
}

impl GrassCtx {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidContext { m, n });
        }
        Ok(GrassCtx { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.m
    }

    pub fn rectangle(&self) -> Partition {
        Partition::rectangle(self.m, self.k())
    }

    pub fn fits(&self, lambda: &Partition) -> bool {
        lambda.fits(self.m, self.k())
    }

    pub fn check(&self, lambda: &Partition) -> Result<()> {
        if self.fits(lambda) {
            Ok(())
        } else {
            Err(Error::OutOfRectangle {
                partition: lambda.clone(),
                rows: self.m,
                cols: self.k(),
            })
        }
    }

    /// Poincaré dual: the 180° rotated complement inside the rectangle.
    pub fn dual(&self, lambda: &Partition) -> Result<Partition> {
        self.check(lambda)?;
        let k = self.k();
        Ok(Partition::from_rows(
            (1..=self.m).rev().map(|i| k - lambda.row(i)),
        ))
    }

    /// All partitions in the rectangle, in the global order; there are
    /// `binom(n, m)` of them.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rows = Vec::with_capacity(self.m);
        fill_rows(self.m, self.k(), &mut rows, &mut out);
        out.sort();
        out
    }
}

fn fill_rows(rows_left: usize, bound: usize, rows: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rows_left == 0 {
        out.push(Partition::from_rows(rows.iter().copied()));
        return;
    }
    for r in 0..=bound {
        rows.push(r);
        fill_rows(rows_left - 1, r, rows, out);
        rows.pop();
    }
}

impl fmt::Display for GrassCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.m, self.n)
    }
}

impl fmt::Debug for GrassCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Removes the first `d` columns ("hat").
pub fn remove_cols(lambda: &Partition, d: usize) -> Partition {
    Partition::from_rows(lambda.parts().iter().map(|&p| p.saturating_sub(d)))
}

/// Removes the top `d` rows ("bar").
pub fn remove_rows(lambda: &Partition, d: usize) -> Partition {
    Partition::from_rows(lambda.parts().iter().skip(d).copied())
}

/// Removes the first `d` rows and the first `d` columns.
pub fn hat_bar(lambda: &Partition, d: usize) -> Partition {
    remove_cols(&remove_rows(lambda, d), d)
}

/// `nu / lambda` has at most one box in each column.
pub fn is_horizontal_strip(lambda: &Partition, nu: &Partition) -> bool {
    lambda.is_contained_in(nu) && (1..=nu.len()).all(|i| nu.row(i + 1) <= lambda.row(i))
}

/// `nu / lambda` has at most one box in each row.
pub fn is_vertical_strip(lambda: &Partition, nu: &Partition) -> bool {
    lambda.is_contained_in(nu) && (1..=nu.len()).all(|i| nu.row(i) <= lambda.row(i) + 1)
}

/// At most one box in every row and every column.
pub fn is_rook_strip(lambda: &Partition, nu: &Partition) -> bool {
    is_horizontal_strip(lambda, nu) && is_vertical_strip(lambda, nu)
}

/// Number of non-empty rows of `nu / lambda`.
pub fn skew_rows(lambda: &Partition, nu: &Partition) -> Result<usize> {
    ensure_contained(lambda, nu)?;
    Ok((1..=nu.len())
        .filter(|&i| nu.row(i) > lambda.row(i))
        .count())
}

/// Number of non-empty columns of `nu / lambda`.
pub fn skew_cols(lambda: &Partition, nu: &Partition) -> Result<usize> {
    ensure_contained(lambda, nu)?;
    Ok((lambda.first_row() + 1..=nu.first_row()).count()
        + (1..=lambda.first_row())
            .filter(|&j| {
                let col = |p: &Partition| p.parts().iter().filter(|&&r| r >= j).count();
                col(nu) > col(lambda)
            })
            .count())
}

fn ensure_contained(inner: &Partition, outer: &Partition) -> Result<()> {
    if inner.is_contained_in(outer) {
        Ok(())
    } else {
        Err(Error::NotContained {
            inner: inner.clone(),
            outer: outer.clone(),
        })
    }
}

/// Boxes of `lambda` with no box strictly to the South-East.
pub fn outer_rim(lambda: &Partition) -> BTreeSet<(usize, usize)> {
    let mut rim = BTreeSet::new();
    for i in 1..=lambda.len() {
        let lo = lambda.row(i + 1).max(1);
        for j in lo..=lambda.row(i) {
            rim.insert((i, j));
        }
    }
    rim
}

/// All partitions in the rectangle, in the global order.
pub fn partitions_in_rectangle(ctx: &GrassCtx) -> Vec<Partition> {
    ctx.partitions()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[i64]) -> Partition {
        Partition::new(rows).unwrap()
    }

    fn ctx(m: usize, n: usize) -> GrassCtx {
        GrassCtx::new(m, n).unwrap()
    }

    #[test]
    fn make_partition_canonicalizes() {
        assert_eq!(p(&[2, 1, 0]).parts(), &[2, 1]);
        assert!(p(&[]).is_empty());
        assert_eq!(
            Partition::new(&[1, 2]),
            Err(Error::InvalidPartition(vec![1, 2]))
        );
        assert!(Partition::new(&[2, -1]).is_err());
        assert_eq!(p(&[0, 0]), Partition::empty());
    }

    #[test]
    fn parse_text_form() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(2,2)".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn context_validation() {
        assert!(GrassCtx::new(0, 3).is_err());
        assert!(GrassCtx::new(3, 3).is_err());
        assert_eq!(ctx(2, 5).k(), 3);
        assert_eq!(ctx(2, 5).rectangle(), p(&[3, 3]));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(ctx(2, 4).dual(&p(&[2, 1])).unwrap(), p(&[1]));
        assert_eq!(ctx(2, 4).dual(&p(&[])).unwrap(), p(&[2, 2]));
        assert_eq!(ctx(3, 6).dual(&p(&[3, 2, 1])).unwrap(), p(&[2, 1]));
        assert!(matches!(
            ctx(2, 4).dual(&p(&[3])),
            Err(Error::OutOfRectangle { .. })
        ));
    }

    #[test]
    fn remove_rows_and_cols() {
        assert_eq!(remove_cols(&p(&[5, 5, 3]), 1), p(&[4, 4, 2]));
        assert_eq!(remove_cols(&p(&[2, 1]), 2), p(&[]));
        assert_eq!(remove_cols(&p(&[3, 1]), 0), p(&[3, 1]));
        assert_eq!(remove_rows(&p(&[4, 3, 2, 1]), 2), p(&[2, 1]));
        assert_eq!(remove_rows(&p(&[2, 2]), 5), p(&[]));
        assert_eq!(remove_rows(&p(&[3, 1]), 0), p(&[3, 1]));
        assert_eq!(hat_bar(&p(&[2, 1]), 1), p(&[]));
        assert_eq!(hat_bar(&p(&[4, 3, 2, 1]), 2), p(&[]));
        assert_eq!(hat_bar(&p(&[5, 5, 3]), 1), p(&[4, 2]));
    }

    #[test]
    fn strips() {
        assert!(is_horizontal_strip(&p(&[1]), &p(&[2, 1])));
        assert!(!is_horizontal_strip(&p(&[1, 1]), &p(&[2, 2])));
        assert!(!is_horizontal_strip(&p(&[2]), &p(&[1, 1])));
        assert!(!is_vertical_strip(&p(&[1]), &p(&[2, 2])));
        assert!(is_rook_strip(&p(&[2, 1]), &p(&[2, 2])));
        assert!(is_rook_strip(&p(&[1]), &p(&[2])));
        assert!(is_horizontal_strip(&p(&[1]), &p(&[2])));
        assert!(is_vertical_strip(&p(&[1]), &p(&[2])));
    }

    #[test]
    fn skew_counts() {
        assert_eq!(skew_rows(&p(&[1]), &p(&[2, 1])).unwrap(), 2);
        assert_eq!(skew_cols(&p(&[]), &p(&[1])).unwrap(), 1);
        assert_eq!(skew_rows(&p(&[3, 1]), &p(&[3, 1])).unwrap(), 0);
        assert_eq!(skew_cols(&p(&[2, 1]), &p(&[3, 2, 2])).unwrap(), 3);
        assert!(skew_rows(&p(&[2]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn outer_rim_examples() {
        let rim: Vec<_> = outer_rim(&p(&[3, 2, 1])).into_iter().collect();
        assert_eq!(rim, vec![(1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]);
        assert_eq!(
            outer_rim(&p(&[1])).into_iter().collect::<Vec<_>>(),
            vec![(1, 1)]
        );
        assert_eq!(
            outer_rim(&p(&[2, 2])).into_iter().collect::<Vec<_>>(),
            vec![(1, 2), (2, 1), (2, 2)]
        );
    }

    #[test]
    fn rectangle_enumeration() {
        let all = ctx(2, 4).partitions();
        let expect: Vec<Partition> = [&[][..], &[1], &[1, 1], &[2], &[2, 1], &[2, 2]]
            .iter()
            .map(|r| p(r))
            .collect();
        assert_eq!(all, expect);
        assert_eq!(ctx(1, 2).partitions(), vec![p(&[]), p(&[1])]);
        assert_eq!(ctx(3, 6).partitions().len(), 20);
        assert_eq!(ctx(4, 8).partitions().len(), 70);
    }

    #[test]
    fn conjugate_transposes() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
    }
}
