//! Operator algebra on a fixed space: principal limits, vicinities, adherence,
//! closure, topological defect and the open/closed predicates.
//!
//! On a finite set every filter is principal, so a filter is represented by
//! its generating set `F0` and `lim {F0}↑ = ⋂_{a ∈ F0} lim {a}↑`.

use serde::{Deserialize, Serialize};

use crate::error::{capacity, Error, Result};
use crate::pointset::{Point, PointSet};
use crate::space::ConvergenceSpace;

/// Bound on `n` for operations that enumerate all subsets of the space.
pub const ENUMERATION_LIMIT: usize = 24;

#[inline]
fn same_universe(space: &ConvergenceSpace, a: &PointSet) {
    assert_eq!(a.universe(), space.len(), "set universe does not match the space");
}

#[inline]
fn union_rows(rows: &[u64], a: &PointSet) -> u64 {
    a.iter().fold(a.bits(), |acc, p| acc | rows[p.index()])
}

/// Limit of the principal filter generated by `base`.
pub fn lim_principal(space: &ConvergenceSpace, base: &PointSet) -> Result<PointSet> {
    space.check_set(base)?;
    if base.is_empty() {
        return Err(Error::EmptyFilterBase);
    }
    let rows = space.out_rows();
    let bits = base.iter().fold(space.full().bits(), |acc, p| acc & rows[p.index()]);
    Ok(PointSet::from_bits(space.len(), bits).unwrap())
}

/// Minimal member of the vicinity filter of `x`: its in-neighbourhood.
pub fn vicinity(space: &ConvergenceSpace, x: Point) -> Result<PointSet> {
    space.check_point(x)?;
    Ok(space.inn(x))
}

/// Principal adherence: `A` together with its out-neighbours.
#[inline]
pub fn adh(space: &ConvergenceSpace, a: &PointSet) -> PointSet {
    same_universe(space, a);
    PointSet::from_bits(space.len(), union_rows(space.out_rows(), a)).unwrap()
}

/// Adherence in the dual pretopology: `A` together with its in-neighbours.
#[inline]
pub fn adh_star(space: &ConvergenceSpace, a: &PointSet) -> PointSet {
    same_universe(space, a);
    PointSet::from_bits(space.len(), union_rows(space.in_rows(), a)).unwrap()
}

/// `k`-fold adherence; points reachable from `A` by paths of length at most `k`.
pub fn iterated_adh(space: &ConvergenceSpace, a: &PointSet, k: usize) -> PointSet {
    let mut cur = *a;
    for _ in 0..k {
        let next = adh(space, &cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Closure in the topological modification: forward reachability from `A`.
pub fn closure(space: &ConvergenceSpace, a: &PointSet) -> PointSet {
    closure_steps(space, a).0
}

/// Closure and the number of adherence steps needed to reach it.
fn closure_steps(space: &ConvergenceSpace, a: &PointSet) -> (PointSet, usize) {
    same_universe(space, a);
    let rows = space.out_rows();
    let mut cur = a.bits();
    let mut frontier = cur;
    let mut steps = 0;
    loop {
        let mut next = cur;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[x];
        }
        if next == cur {
            return (PointSet::from_bits(space.len(), cur).unwrap(), steps);
        }
        frontier = next & !cur;
        cur = next;
        steps += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectProfile {
    /// Adherence iterations needed to close each singleton.
    pub per_point: Vec<usize>,
    pub defect: usize,
}

/// Least `k` such that `adh^k A = cl A` for every `A`. Adherence is additive,
/// so the maximum over singletons bounds every subset.
pub fn topological_defect(space: &ConvergenceSpace) -> DefectProfile {
    let per_point: Vec<usize> =
        space.points().map(|x| closure_steps(space, &PointSet::singleton(space.len(), x)).1).collect();
    let defect = per_point.iter().copied().max().unwrap_or(0);
    DefectProfile { per_point, defect }
}

// A set is open iff `lim F ∩ A ≠ ∅ ⟹ A ∈ F` for every filter F and closed iff
// `A ∈ F ⟹ lim F ⊆ A`. Principal ultrafilters suffice: for F = {F0}↑ a point
// of lim F = ⋂ out(a) lying in A has an arrow from every a ∈ F0, so openness
// against singletons already forces F0 ⊆ A; dually a point of lim F ⊆ out(a)
// for some a ∈ F0 ∩ A. The filter-enumerating oracle checks this on n ≤ 3.

/// No arrow enters `A` from outside.
pub fn is_open(space: &ConvergenceSpace, a: &PointSet) -> bool {
    adh_star(space, a) == *a
}

/// No arrow leaves `A`.
pub fn is_closed(space: &ConvergenceSpace, a: &PointSet) -> bool {
    adh(space, a) == *a
}

pub fn is_clopen(space: &ConvergenceSpace, a: &PointSet) -> bool {
    is_open(space, a) && is_closed(space, a)
}

/// All open sets, ascending in canonical set order.
pub fn open_sets(space: &ConvergenceSpace) -> Result<Vec<PointSet>> {
    capacity("open-set enumeration size", ENUMERATION_LIMIT, space.len())?;
    Ok(PointSet::all(space.len()).filter(|a| is_open(space, a)).collect())
}
