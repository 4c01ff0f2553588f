//! T-subspaces: subsets on which the topological modification commutes with
//! taking the subspace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::{Point, PointSet};
use crate::space::ConvergenceSpace;

/// A directed path; consecutive points are joined by arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub points: Vec<Point>,
}

impl PathWitness {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether every step is an arrow of `space`.
    pub fn is_valid_in(&self, space: &ConvergenceSpace) -> bool {
        !self.points.is_empty()
            && self.points.iter().all(|p| p.0 < space.len())
            && self.points.windows(2).all(|w| space.has_arrow(w[0], w[1]))
    }
}

/// Backward BFS layers: `dist[x]` is the length of a shortest path `x ~> target` inside `within`.
fn distances_to(space: &ConvergenceSpace, target: Point, within: u64) -> Vec<Option<usize>> {
    let mut dist = vec![None; space.len()];
    dist[target.0] = Some(0);
    let mut seen = 1u64 << target.0;
    let mut frontier = seen;
    let mut d = 0;
    let rows = space.in_rows();
    while frontier != 0 {
        d += 1;
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[x];
        }
        next &= within & !seen;
        seen |= next;
        let mut n = next;
        while n != 0 {
            let x = n.trailing_zeros() as usize;
            n &= n - 1;
            dist[x] = Some(d);
        }
        frontier = next;
    }
    dist
}

/// Shortest directed path from `a` to `b`, optionally confined to `within`.
/// Among shortest paths the lexicographically least sequence of indices wins.
pub fn find_path(
    space: &ConvergenceSpace,
    a: Point,
    b: Point,
    within: Option<&PointSet>,
) -> Result<Option<PathWitness>> {
    space.check_point(a)?;
    space.check_point(b)?;
    let mask = match within {
        Some(w) => {
            space.check_set(w)?;
            if !w.contains(a) || !w.contains(b) {
                return Err(Error::Precondition("path endpoints must lie in the restricting set".into()));
            }
            w.bits()
        }
        None => space.full().bits(),
    };
    let dist = distances_to(space, b, mask);
    let Some(mut remaining) = dist[a.0] else {
        return Ok(None);
    };
    let mut points = vec![a];
    let mut cur = a;
    while remaining > 0 {
        let next = space
            .out(cur)
            .iter()
            .find(|y| mask >> y.0 & 1 == 1 && dist[y.0] == Some(remaining - 1))
            .expect("a BFS layer always has a successor");
        points.push(next);
        cur = next;
        remaining -= 1;
    }
    Ok(Some(PathWitness { points }))
}

/// Whether `T(ξ|A) = (Tξ)|A`, decided by comparing the two digraphs.
pub fn is_t_subspace(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    Ok(is_t_subspace_with(space, &space.t_modification(), a))
}

pub(crate) fn is_t_subspace_with(space: &ConvergenceSpace, t: &ConvergenceSpace, a: &PointSet) -> bool {
    if a.len() <= 1 {
        return true;
    }
    space.subspace_unchecked(a).t_modification() == t.subspace_unchecked(a)
}

/// Bit-level form of the digraph comparison, used by the property checker.
pub(crate) fn t_subspace_bits(out: &[u64], t: &[u64], mask: u64) -> bool {
    let mut local: Vec<(usize, u64)> = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let x = m.trailing_zeros() as usize;
        m &= m - 1;
        local.push((x, out[x] & mask));
    }
    for k in 0..local.len() {
        let (kx, rk) = local[k];
        for (_, row) in local.iter_mut() {
            if *row >> kx & 1 == 1 {
                *row |= rk;
            }
        }
    }
    local.iter().all(|&(x, row)| row == t[x] & mask)
}

/// Forward reachability from `x` through points of `within`.
fn reach(space: &ConvergenceSpace, x: Point, within: u64) -> u64 {
    let rows = space.out_rows();
    let mut seen = 1u64 << x.0;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let y = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[y];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// The lexicographically least pair `(a, b)` in `A × A` with a path `a ~> b`
/// in the whole space but none inside `A`; `None` iff `A` is a T-subspace.
pub fn t_subspace_defect_witness(space: &ConvergenceSpace, a: &PointSet) -> Result<Option<(Point, Point)>> {
    space.check_set(a)?;
    let everywhere = space.full().bits();
    for x in a.iter() {
        let missing = reach(space, x, everywhere) & !reach(space, x, a.bits()) & a.bits();
        if missing != 0 {
            return Ok(Some((x, Point(missing.trailing_zeros() as usize))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{is_closed, is_open};
    use crate::fixtures::*;

    fn set(s: &ConvergenceSpace, labels: &[&str]) -> PointSet {
        s.set_of(labels.iter().copied()).unwrap()
    }

    #[test]
    fn find_path_examples() {
        let l = line3();
        let p = find_path(&l, Point(0), Point(2), None).unwrap().unwrap();
        assert_eq!(p.points, vec![Point(0), Point(1), Point(2)]);
        assert!(p.is_valid_in(&l));
        assert_eq!(find_path(&l, Point(0), Point(2), Some(&set(&l, &["a", "c"]))).unwrap(), None);
        for x in l.points() {
            assert_eq!(find_path(&l, x, x, None).unwrap().unwrap().points, vec![x]);
        }
        assert!(find_path(&l, Point(0), Point(5), None).is_err());
        assert!(find_path(&l, Point(0), Point(2), Some(&set(&l, &["a"]))).is_err());
    }

    #[test]
    fn find_path_breaks_ties_canonically() {
        // a -> b -> d and a -> c -> d are both shortest; b precedes c
        let s = ConvergenceSpace::new(["a", "b", "c", "d"], [("a", "c"), ("a", "b"), ("c", "d"), ("b", "d")]).unwrap();
        let p = find_path(&s, Point(0), Point(3), None).unwrap().unwrap();
        assert_eq!(p.points, vec![Point(0), Point(1), Point(3)]);
    }

    #[test]
    fn t_subspace_examples() {
        let l = line3();
        assert!(!is_t_subspace(&l, &set(&l, &["a", "c"])).unwrap());
        assert!(is_t_subspace(&l, &set(&l, &["a"])).unwrap());
        assert!(is_t_subspace(&l, &set(&l, &["c"])).unwrap());
        assert!(is_t_subspace(&l, &set(&l, &["b"])).unwrap());

        let sq = square_acd();
        assert!(is_t_subspace(&sq, &set(&sq, &["a", "b", "c"])).unwrap());
        assert!(is_t_subspace(&sq, &set(&sq, &["a", "c", "d"])).unwrap());
        assert!(!is_t_subspace(&sq, &set(&sq, &["a", "c"])).unwrap());

        let k = kite();
        for a in PointSet::all(4) {
            if is_open(&k, &a) || is_closed(&k, &a) {
                assert!(is_t_subspace(&k, &a).unwrap());
            }
        }
    }

    #[test]
    fn defect_witness_examples() {
        let l = line3();
        assert_eq!(t_subspace_defect_witness(&l, &set(&l, &["a", "c"])).unwrap(), Some((Point(0), Point(2))));
        let sym = square_symmetric();
        assert_eq!(t_subspace_defect_witness(&sym, &set(&sym, &["a", "c"])).unwrap(), Some((Point(0), Point(2))));
        let k = kite();
        let closed = set(&k, &["a", "b"]);
        assert!(is_closed(&k, &closed));
        assert_eq!(t_subspace_defect_witness(&k, &closed).unwrap(), None);
    }
}
