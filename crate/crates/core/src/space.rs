//! Finite convergence spaces encoded as reflexive digraphs.
//!
//! An arrow `x -> y` means `y` is a limit of the principal ultrafilter at `x`.
//! Row `x` of the adjacency matrix is therefore `lim {x}↑`, and every row
//! contains its own point (centered axiom).

use crate::error::{capacity, Error, Result};
use crate::pointset::{universe_mask, Point, PointSet, CAPACITY};

/// A finite pretopology on labelled points.
///
/// Equality is label-and-arrow equality on identically ordered label tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvergenceSpace {
    labels: Vec<String>,
    out: Vec<u64>,
    inn: Vec<u64>,
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// `a, b, c, ...` up to 26 points, `p0, p1, ...` beyond.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("p{i}")).collect()
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    capacity("number of points", CAPACITY, labels.len())?;
    for (i, l) in labels.iter().enumerate() {
        if !is_identifier(l) {
            return Err(Error::InvalidLabel(l.clone()));
        }
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn transpose(rows: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; rows.len()];
    for (x, &row) in rows.iter().enumerate() {
        let mut r = row;
        while r != 0 {
            let y = r.trailing_zeros() as usize;
            r &= r - 1;
            t[y] |= 1 << x;
        }
    }
    t
}

impl ConvergenceSpace {
    /// Builds a space from labels and labelled arrows; loops are implicit and
    /// duplicate arrows collapse.
    pub fn new<L, A, S>(labels: L, arrows: A) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        A: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        let index = |l: &str| labels.iter().position(|x| x == l).ok_or_else(|| Error::UnknownLabel(l.to_string()));
        let mut out = vec![0u64; n];
        for (src, dst) in arrows {
            let x = index(src.as_ref())?;
            let y = index(dst.as_ref())?;
            out[x] |= 1 << y;
        }
        Ok(Self::from_rows_unchecked(labels, out))
    }

    /// Builds a space from out-neighbourhood rows; loops are added.
    pub fn from_rows(labels: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        check_labels(&labels)?;
        if rows.len() != labels.len() {
            return Err(Error::Precondition(format!("{} adjacency rows for {} labels", rows.len(), labels.len())));
        }
        let mask = universe_mask(labels.len());
        if let Some(bad) = rows.iter().find(|r| *r & !mask != 0) {
            let point = 63 - (bad & !mask).leading_zeros() as usize;
            return Err(Error::PointOutOfRange { point, size: labels.len() });
        }
        Ok(Self::from_rows_unchecked(labels, rows))
    }

    pub(crate) fn from_rows_unchecked(labels: Vec<String>, mut out: Vec<u64>) -> Self {
        for (x, row) in out.iter_mut().enumerate() {
            *row |= 1 << x;
        }
        let inn = transpose(&out);
        ConvergenceSpace { labels, out, inn }
    }

    /// The discrete space on `n` points (loops only).
    pub fn discrete(n: usize) -> Self {
        assert!(n <= CAPACITY);
        Self::from_rows_unchecked(default_labels(n), vec![0; n])
    }

    /// The antidiscrete space on `n` points (every arrow).
    pub fn antidiscrete(n: usize) -> Self {
        assert!(n <= CAPACITY);
        Self::from_rows_unchecked(default_labels(n), vec![universe_mask(n); n])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p.0]
    }

    pub fn point(&self, label: &str) -> Result<Point> {
        self.labels.iter().position(|l| l == label).map(Point).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(Point)
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, indices: I) -> PointSet {
        PointSet::from_indices(self.len(), indices)
    }

    pub fn set_of<I, S>(&self, labels: I) -> Result<PointSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.point(l.as_ref())?);
        }
        Ok(s)
    }

    /// Members of `set` as labels, in point order.
    pub fn set_labels(&self, set: &PointSet) -> Vec<&str> {
        set.iter().map(|p| self.label(p)).collect()
    }

    pub fn check_point(&self, p: Point) -> Result<()> {
        if p.0 < self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point: p.0, size: self.len() })
        }
    }

    pub fn check_set(&self, set: &PointSet) -> Result<()> {
        if set.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::SetOutOfRange { set: set.universe(), space: self.len() })
        }
    }

    /// `lim {x}↑`, the out-neighbourhood of `x` (contains `x`).
    #[inline]
    pub fn out(&self, x: Point) -> PointSet {
        PointSet::from_bits_unchecked(self.len(), self.out[x.0])
    }

    /// In-neighbourhood of `x` (contains `x`).
    #[inline]
    pub fn inn(&self, x: Point) -> PointSet {
        PointSet::from_bits_unchecked(self.len(), self.inn[x.0])
    }

    #[inline]
    pub(crate) fn out_rows(&self) -> &[u64] {
        &self.out
    }

    #[inline]
    pub(crate) fn in_rows(&self) -> &[u64] {
        &self.inn
    }

    #[inline]
    pub fn has_arrow(&self, x: Point, y: Point) -> bool {
        self.out[x.0] >> y.0 & 1 == 1
    }

    /// Non-loop arrows in row-major order.
    pub fn arrows(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.out.iter().enumerate().flat_map(|(x, &row)| {
            PointSet::from_bits_unchecked(self.len(), row & !(1 << x)).iter().map(move |y| (Point(x), y))
        })
    }

    pub fn arrow_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum::<usize>() - self.len()
    }

    /// True when every arrow of `self` is an arrow of `other` (same labels).
    pub fn arrows_subset_of(&self, other: &Self) -> bool {
        self.len() == other.len() && self.out.iter().zip(&other.out).all(|(a, b)| a & !b == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.out == self.inn
    }

    pub fn is_transitive(&self) -> bool {
        self.out
            .iter()
            .all(|&row| PointSet::from_bits_unchecked(self.len(), row).iter().all(|y| self.out[y.0] & !row == 0))
    }

    /// Induced sub-digraph on `a`, points renumbered in ascending order, labels kept.
    pub fn subspace(&self, a: &PointSet) -> Result<Self> {
        self.check_set(a)?;
        Ok(self.subspace_unchecked(a))
    }

    pub(crate) fn subspace_unchecked(&self, a: &PointSet) -> Self {
        let members: Vec<Point> = a.iter().collect();
        let labels = members.iter().map(|&p| self.labels[p.0].clone()).collect();
        let out = members
            .iter()
            .map(|&x| {
                members.iter().enumerate().filter(|(_, &y)| self.has_arrow(x, y)).fold(0u64, |row, (j, _)| row | 1 << j)
            })
            .collect();
        Self::from_rows_unchecked(labels, out)
    }

    /// Finite product: `(x, y) -> (x', y')` iff `x -> x'` and `y -> y'`.
    /// Point `(x, y)` has index `x * other.len() + y` and label `x_y`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.len(), other.len());
        capacity("product size", CAPACITY, n1 * n2)?;
        let mut labels = Vec::with_capacity(n1 * n2);
        let mut out = Vec::with_capacity(n1 * n2);
        for x in 0..n1 {
            for y in 0..n2 {
                labels.push(format!("{}_{}", self.labels[x], other.labels[y]));
                let mut row = 0u64;
                for x2 in self.out(Point(x)).iter() {
                    row |= other.out[y] << (x2.0 * n2);
                }
                out.push(row);
            }
        }
        // labels like a_b could collide (a_b x c vs a x b_c); fall back to positional labels
        if check_labels(&labels).is_err() {
            labels = default_labels(n1 * n2);
        }
        Ok(Self::from_rows_unchecked(labels, out))
    }

    /// Topological modification: reflexive-transitive closure of the arrows.
    pub fn t_modification(&self) -> Self {
        let n = self.len();
        let mut rows = self.out.clone();
        // Warshall on bit rows
        for k in 0..n {
            let rk = rows[k];
            for row in rows.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= rk;
                }
            }
        }
        Self::from_rows_unchecked(self.labels.clone(), rows)
    }

    /// Reciprocal modification: symmetric closure of the arrows.
    pub fn r_modification(&self) -> Self {
        let rows = self.out.iter().zip(&self.inn).map(|(o, i)| o | i).collect();
        Self::from_rows_unchecked(self.labels.clone(), rows)
    }

    /// The dual pretopology: every arrow reversed.
    pub fn star_dual(&self) -> Self {
        ConvergenceSpace { labels: self.labels.clone(), out: self.inn.clone(), inn: self.out.clone() }
    }

    pub fn with_labels<I, S>(&self, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::from_rows(labels.into_iter().map(Into::into).collect(), self.out.clone())
    }
}

impl std::fmt::Debug for ConvergenceSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arrows: Vec<String> = self.arrows().map(|(x, y)| format!("{}->{}", self.label(x), self.label(y))).collect();
        write!(f, "ConvergenceSpace[{}]{{{}}}", self.labels.join(" "), arrows.join(", "))
    }
}
