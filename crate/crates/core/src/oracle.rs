//! Brute-force reference implementations.
//!
//! Everything here works from raw arrow queries (`has_arrow`) and the textbook
//! definitions: clopen subsets for connectedness, the defining set for the
//! enclosure, the intermediate-set quantifier for enclosing, and the
//! closed-set implication for T-subspaces. Nothing in this module calls the
//! adherence, closure or connectivity code it is used to check.

use crate::error::{capacity, Error, Result};
use crate::pointset::{Point, PointSet};
use crate::space::ConvergenceSpace;

/// Largest set the exponential oracles accept.
pub const ORACLE_LIMIT: usize = 20;

/// Bound on `n` for the filter-enumerating oracle.
pub const FILTER_ORACLE_LIMIT: usize = 3;

/// Arrows of the subspace on `members`, as per-member bitmasks over member positions.
struct LocalGraph {
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl LocalGraph {
    fn new(space: &ConvergenceSpace, members: &[usize]) -> Self {
        let m = members.len();
        let mut out = vec![0u32; m];
        let mut inn = vec![0u32; m];
        for i in 0..m {
            for j in 0..m {
                if space.has_arrow(Point(members[i]), Point(members[j])) {
                    out[i] |= 1 << j;
                    inn[j] |= 1 << i;
                }
            }
        }
        LocalGraph { out, inn }
    }

    /// Closed: no arrow leaves `c`. Open: no arrow enters `c`.
    fn is_clopen(&self, c: u32) -> bool {
        (0..self.out.len()).filter(|i| c >> i & 1 == 1).all(|i| self.out[i] & !c == 0 && self.inn[i] & !c == 0)
    }
}

fn members(a: &PointSet) -> Vec<usize> {
    (0..a.universe()).filter(|&i| a.contains(Point(i))).collect()
}

/// Connectedness by definition: the only clopen subsets of `(A, ξ|A)` are `∅` and `A`.
pub fn connected_by_clopen(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    capacity("oracle set size", ORACLE_LIMIT, a.len())?;
    let ms = members(a);
    let g = LocalGraph::new(space, &ms);
    let all = if ms.is_empty() { 0 } else { (1u32 << ms.len()) - 1 };
    Ok((1..all).all(|c| !g.is_clopen(c)))
}

fn require_connected_nonempty(space: &ConvergenceSpace, a: &PointSet, what: &'static str) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet(what));
    }
    if !connected_by_clopen(space, a)? {
        return Err(Error::Disconnected(what));
    }
    Ok(())
}

/// `e(A) = {x : A ∪ {x} is connected}`, evaluated literally.
pub fn enclosure_brute(space: &ConvergenceSpace, a: &PointSet) -> Result<PointSet> {
    space.check_set(a)?;
    require_connected_nonempty(space, a, "enclosure_brute")?;
    let mut e = PointSet::empty(space.len());
    for x in 0..space.len() {
        if connected_by_clopen(space, &a.with(Point(x)))? {
            e.insert(Point(x));
        }
    }
    Ok(e)
}

/// `S` encloses `A` iff every `B` with `A ⊆ B ⊆ S` is connected.
pub fn encloses_brute(space: &ConvergenceSpace, s: &PointSet, a: &PointSet) -> Result<bool> {
    space.check_set(s)?;
    space.check_set(a)?;
    require_connected_nonempty(space, a, "encloses_brute")?;
    if !a.is_subset(s) {
        return Err(Error::Precondition("encloses_brute requires A ⊆ S".into()));
    }
    let extra = members(&s.difference(a));
    capacity("oracle set size", ORACLE_LIMIT, extra.len())?;
    for mask in 0u32..(1u32 << extra.len()) {
        let mut b = *a;
        for (i, &x) in extra.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.insert(Point(x));
            }
        }
        if !connected_by_clopen(space, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn adherence_by_arrows(space: &ConvergenceSpace, b: &[bool]) -> Vec<bool> {
    let n = space.len();
    (0..n).map(|y| b[y] || (0..n).any(|x| b[x] && space.has_arrow(Point(x), Point(y)))).collect()
}

fn closure_by_arrows(space: &ConvergenceSpace, b: &[bool]) -> Vec<bool> {
    let mut cur = b.to_vec();
    loop {
        let next = adherence_by_arrows(space, &cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `A` is a T-subspace iff `adh B ∩ A = B ⟹ cl B ∩ A = B` for every `B ⊆ A`.
pub fn t_subspace_brute(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    capacity("oracle set size", ORACLE_LIMIT, a.len())?;
    let ms = members(a);
    let n = space.len();
    let in_a: Vec<bool> = (0..n).map(|x| a.contains(Point(x))).collect();
    for mask in 0u32..(1u32 << ms.len()) {
        let mut b = vec![false; n];
        for (i, &x) in ms.iter().enumerate() {
            b[x] = mask >> i & 1 == 1;
        }
        let trace = |s: &[bool]| -> Vec<bool> { (0..n).map(|x| s[x] && in_a[x]).collect() };
        if trace(&adherence_by_arrows(space, &b)) == b && trace(&closure_by_arrows(space, &b)) != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `k` with `adh^k A = cl A` for all `A`, scanning every subset.
pub fn defect_brute(space: &ConvergenceSpace) -> Result<usize> {
    capacity("oracle space size", ORACLE_LIMIT, space.len())?;
    let n = space.len();
    let mut worst = 0;
    for mask in 0u64..(1u64 << n) {
        let a: Vec<bool> = (0..n).map(|x| mask >> x & 1 == 1).collect();
        let cl = closure_by_arrows(space, &a);
        let (mut cur, mut k) = (a, 0);
        while cur != cl {
            cur = adherence_by_arrows(space, &cur);
            k += 1;
        }
        worst = worst.max(k);
    }
    Ok(worst)
}

/// Every proper filter on an `n`-point set, as the list of its members (bitmasks).
pub fn filters(n: usize) -> Result<Vec<Vec<u64>>> {
    capacity("filter enumeration size", FILTER_ORACLE_LIMIT, n)?;
    let subsets = 1usize << n;
    let mut out = Vec::new();
    // a family is a bitmask over the 2^n subsets
    for family in 1u64..(1u64 << subsets) {
        let has = |s: usize| family >> s & 1 == 1;
        if has(0) {
            continue;
        }
        let upward = (0..subsets).all(|s| !has(s) || (0..subsets).all(|t| t & s != s || has(t)));
        let meets = (0..subsets).all(|s| (0..subsets).all(|t| !(has(s) && has(t)) || has(s & t)));
        if upward && meets {
            out.push((0..subsets).filter(|&s| has(s)).map(|s| s as u64).collect());
        }
    }
    Ok(out)
}

/// `lim F = ⋂_{A ∈ F#} adh A`, with adherence taken from raw arrows.
pub fn lim_of_filter(space: &ConvergenceSpace, filter: &[u64]) -> Vec<bool> {
    let n = space.len();
    let mut lim = vec![true; n];
    for h in 0u64..(1u64 << n) {
        if filter.iter().all(|&f| f & h != 0) {
            let hs: Vec<bool> = (0..n).map(|x| h >> x & 1 == 1).collect();
            let adh = adherence_by_arrows(space, &hs);
            for x in 0..n {
                lim[x] &= adh[x];
            }
        }
    }
    lim
}

/// Openness by definition: `lim F ∩ A ≠ ∅ ⟹ A ∈ F` over every filter.
pub fn open_by_filters(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    let am = a.bits();
    for f in filters(space.len())? {
        let lim = lim_of_filter(space, &f);
        let meets = (0..space.len()).any(|x| lim[x] && a.contains(Point(x)));
        if meets && !f.contains(&am) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closedness by definition: `A ∈ F ⟹ lim F ⊆ A` over every filter.
pub fn closed_by_filters(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    let am = a.bits();
    for f in filters(space.len())? {
        if f.contains(&am) {
            let lim = lim_of_filter(space, &f);
            if (0..space.len()).any(|x| lim[x] && !a.contains(Point(x))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
