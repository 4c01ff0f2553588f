//! Connectedness, components, enclosure and sandwiched sets.
//!
//! A finite convergence space is connected exactly when its digraph is weakly
//! connected, so every connectivity question reduces to undirected reachability
//! inside the induced subgraph. The empty space and the empty set count as
//! connected.

use serde::Serialize;

use crate::calculus::{adh, adh_star, closure, ENUMERATION_LIMIT};
use crate::error::{capacity, Error, Result};
use crate::pointset::PointSet;
use crate::space::ConvergenceSpace;
use crate::verify::{CheckOutcome, ClaimId, Subject, Witness};

/// Undirected neighbourhood rows (`out | in`).
pub(crate) fn symmetric_rows(space: &ConvergenceSpace) -> Vec<u64> {
    space.out_rows().iter().zip(space.in_rows()).map(|(o, i)| o | i).collect()
}

/// Undirected reachability from the least member of `mask`, staying inside `mask`.
#[inline]
pub(crate) fn reach_within(sym: &[u64], mask: u64, start: u64) -> u64 {
    let mut seen = start & mask;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= sym[x];
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[inline]
pub(crate) fn connected_bits(sym: &[u64], mask: u64) -> bool {
    mask == 0 || reach_within(sym, mask, mask & mask.wrapping_neg()) == mask
}

pub fn is_connected(space: &ConvergenceSpace) -> bool {
    connected_bits(&symmetric_rows(space), space.full().bits())
}

/// Connectedness of `A` as a subspace.
pub fn is_connected_subset(space: &ConvergenceSpace, a: &PointSet) -> Result<bool> {
    space.check_set(a)?;
    Ok(connected_bits(&symmetric_rows(space), a.bits()))
}

pub fn components(space: &ConvergenceSpace) -> Vec<PointSet> {
    components_of(space, &space.full())
}

/// Components of the subspace on `A`, as subsets of the ambient space,
/// ordered by least member.
pub fn components_within(space: &ConvergenceSpace, a: &PointSet) -> Result<Vec<PointSet>> {
    space.check_set(a)?;
    Ok(components_of(space, a))
}

fn components_of(space: &ConvergenceSpace, a: &PointSet) -> Vec<PointSet> {
    let sym = symmetric_rows(space);
    let mut rest = a.bits();
    let mut out = Vec::new();
    while rest != 0 {
        let comp = reach_within(&sym, rest, rest & rest.wrapping_neg());
        out.push(PointSet::from_bits(space.len(), comp).unwrap());
        rest &= !comp;
    }
    out
}

fn check_enclosable(space: &ConvergenceSpace, a: &PointSet, what: &'static str) -> Result<()> {
    space.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet(what));
    }
    if !is_connected_subset(space, a)? {
        return Err(Error::Disconnected(what));
    }
    Ok(())
}

/// The enclosure `e(A) = adh A ∪ adh* A` of a nonempty connected set: the
/// points `x` for which `A ∪ {x}` stays connected.
pub fn enclosure(space: &ConvergenceSpace, a: &PointSet) -> Result<PointSet> {
    check_enclosable(space, a, "enclosure")?;
    Ok(adh(space, a).union(&adh_star(space, a)))
}

/// Whether every `B` with `A ⊆ B ⊆ S` is connected, decided as `S ⊆ e(A)`.
pub fn encloses(space: &ConvergenceSpace, s: &PointSet, a: &PointSet) -> Result<bool> {
    space.check_set(s)?;
    check_enclosable(space, a, "encloses")?;
    if !a.is_subset(s) {
        return Err(Error::Precondition("encloses requires A ⊆ S".into()));
    }
    Ok(s.is_subset(&enclosure(space, a)?))
}

/// Checks that `cl A` encloses `A` for every nonempty connected `A`.
///
/// Connected sets are scanned in canonical set order. A failure carries `A`
/// and the disconnected `B = A ∪ {x}` for the least `x ∈ cl A \ e(A)`.
pub fn has_sandwich_property(space: &ConvergenceSpace) -> Result<CheckOutcome> {
    capacity("sandwich-property enumeration size", ENUMERATION_LIMIT, space.len())?;
    let sym = symmetric_rows(space);
    let subject = Subject::Claim(ClaimId::SandwichPropertyUniversal);
    for a in PointSet::all(space.len()).skip(1) {
        if !connected_bits(&sym, a.bits()) {
            continue;
        }
        let cl = closure(space, &a);
        let e = adh(space, &a).union(&adh_star(space, &a));
        if let Some(x) = cl.difference(&e).first() {
            let b = a.with(x);
            let explanation = format!(
                "cl A = {{{}}} is not inside e(A) = {{{}}}; B = {{{}}} lies between A and cl A but is disconnected",
                space.set_labels(&cl).join(" "),
                space.set_labels(&e).join(" "),
                space.set_labels(&b).join(" "),
            );
            return Ok(CheckOutcome::fail(subject, Witness::new(space.clone(), vec![("A", a), ("B", b)], explanation)));
        }
    }
    Ok(CheckOutcome::pass(subject))
}

/// Some connected `A ⊆ B` with `B ⊆ cl A`, or `None`.
///
/// Candidates are tried by ascending size, then in canonical set order, so the
/// witness is deterministic.
pub fn is_sandwiched(space: &ConvergenceSpace, b: &PointSet) -> Result<Option<PointSet>> {
    space.check_set(b)?;
    capacity("sandwiched-set search size", ENUMERATION_LIMIT, space.len())?;
    let sym = symmetric_rows(space);
    Ok(sandwich_witness(space, &sym, b))
}

pub(crate) fn sandwich_witness(space: &ConvergenceSpace, sym: &[u64], b: &PointSet) -> Option<PointSet> {
    let mut candidates: Vec<PointSet> = b.subsets().collect();
    candidates.sort_by_key(|a| (a.len(), a.bits()));
    candidates.into_iter().find(|a| connected_bits(sym, a.bits()) && b.is_subset(&closure(space, a)))
}

/// Where `B` sits in the implication diagram
///
/// ```text
/// ξ-connected  ⟹  ξ-sandwiched  ⟹  Tξ-connected
///      ⇕               ⇓                ⇓
/// rξ-connected ⟹  rξ-sandwiched ⟹  T(rξ)-connected
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichClassification {
    pub xi_connected: bool,
    pub sandwiched: bool,
    pub t_connected: bool,
    pub r_sandwiched: bool,
    pub tr_connected: bool,
    /// The sandwiching set when `sandwiched`.
    pub witness: Option<PointSet>,
}

impl SandwichClassification {
    /// Diagram arrows that fail for this classification; empty when consistent.
    pub fn diagram_violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.xi_connected && !self.sandwiched {
            v.push("connected => sandwiched");
        }
        if self.sandwiched && !self.t_connected {
            v.push("sandwiched => T-connected");
        }
        if self.sandwiched && !self.r_sandwiched {
            v.push("sandwiched => r-sandwiched");
        }
        if self.t_connected && !self.tr_connected {
            v.push("T-connected => T(r)-connected");
        }
        if self.xi_connected && !self.r_sandwiched {
            v.push("r-connected => r-sandwiched");
        }
        if self.r_sandwiched && !self.tr_connected {
            v.push("r-sandwiched => T(r)-connected");
        }
        if self.sandwiched != self.witness.is_some() {
            v.push("witness present iff sandwiched");
        }
        v
    }
}

pub fn classify_sandwich(space: &ConvergenceSpace, b: &PointSet) -> Result<SandwichClassification> {
    space.check_set(b)?;
    capacity("sandwich classification size", ENUMERATION_LIMIT, space.len())?;
    let r = space.r_modification();
    Ok(classify_with(space, &r, &space.t_modification(), &r.t_modification(), b))
}

pub(crate) fn classify_with(
    space: &ConvergenceSpace,
    r: &ConvergenceSpace,
    t: &ConvergenceSpace,
    tr: &ConvergenceSpace,
    b: &PointSet,
) -> SandwichClassification {
    let sym = symmetric_rows(space);
    let witness = sandwich_witness(space, &sym, b);
    SandwichClassification {
        xi_connected: connected_bits(&sym, b.bits()),
        sandwiched: witness.is_some(),
        t_connected: connected_bits(&symmetric_rows(t), b.bits()),
        r_sandwiched: sandwich_witness(r, &symmetric_rows(r), b).is_some(),
        tr_connected: connected_bits(&symmetric_rows(tr), b.bits()),
        witness,
    }
}
