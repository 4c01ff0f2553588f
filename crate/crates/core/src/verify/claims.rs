//! Searches for counterexamples to the claim catalog.

use super::catalog::ClaimId;
use super::generate::{enumerate_spaces, MAX_ENUMERATION_N};
use super::outcome::{CheckOutcome, Subject, Witness};
use crate::calculus::{adh, adh_star, closure, iterated_adh};
use crate::connectivity::{has_sandwich_property, is_connected_subset};
use crate::error::{capacity, Error, Result};
use crate::pointset::PointSet;
use crate::space::ConvergenceSpace;

/// The first violation of `claim` in enumeration order over spaces with at
/// most `max_n` points, or `None` if none is found within `budget` instances.
///
/// Spaces are scanned by size, then in enumeration order. For C1 an instance
/// is a pair `(A, k)` with `A` in canonical set order and `k = 1 ..= n + 1`;
/// for C2 an instance is a space.
pub fn search_counterexample(claim: ClaimId, max_n: usize, budget: Option<u64>) -> Result<Option<CheckOutcome>> {
    capacity("claim search size", MAX_ENUMERATION_N, max_n)?;
    let mut left = budget.unwrap_or(u64::MAX);
    for n in 0..=max_n {
        for space in enumerate_spaces(n)? {
            match claim {
                ClaimId::IteratedRAdherence => {
                    let r = space.r_modification();
                    let star = space.star_dual();
                    for a in PointSet::all(n) {
                        for k in 1..=n + 1 {
                            if left == 0 {
                                return Ok(None);
                            }
                            left -= 1;
                            if let Some(w) = iterated_violation(&space, &r, &star, &a, k) {
                                return Ok(Some(CheckOutcome::fail(Subject::Claim(claim), w)));
                            }
                        }
                    }
                }
                ClaimId::SandwichPropertyUniversal => {
                    if left == 0 {
                        return Ok(None);
                    }
                    left -= 1;
                    let out = has_sandwich_property(&space)?;
                    if !out.passed() {
                        return Ok(Some(out));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn iterated_violation(
    space: &ConvergenceSpace,
    r: &ConvergenceSpace,
    star: &ConvergenceSpace,
    a: &PointSet,
    k: usize,
) -> Option<Witness> {
    let lhs = iterated_adh(r, a, k);
    let rhs = iterated_adh(space, a, k).union(&iterated_adh(star, a, k));
    if lhs == rhs {
        return None;
    }
    let fmt = |s: &PointSet| space.set_labels(s).join(" ");
    let explanation = format!("adh^{k} in rξ gives {{{}}} but adh^{k} A ∪ adh*^{k} A = {{{}}}", fmt(&lhs), fmt(&rhs));
    Some(Witness::new(space.clone(), vec![("A", *a)], explanation).with_parameter(k))
}

/// Re-checks a claim witness with the public operators; `true` when the
/// violation reproduces.
pub fn replay_claim(claim: ClaimId, witness: &Witness) -> Result<bool> {
    let space = &witness.space;
    let a = witness.set("A").ok_or_else(|| Error::Precondition("witness has no set A".into()))?;
    space.check_set(&a)?;
    match claim {
        ClaimId::IteratedRAdherence => {
            let k = witness.parameter.ok_or_else(|| Error::Precondition("witness has no k".into()))?;
            let lhs = iterated_adh(&space.r_modification(), &a, k);
            let rhs = iterated_adh(space, &a, k).union(&iterated_adh(&space.star_dual(), &a, k));
            Ok(lhs != rhs)
        }
        ClaimId::SandwichPropertyUniversal => {
            if a.is_empty() || !is_connected_subset(space, &a)? {
                return Ok(false);
            }
            let e = adh(space, &a).union(&adh_star(space, &a));
            let cl = closure(space, &a);
            if cl.is_subset(&e) {
                return Ok(false);
            }
            // B, when recorded, must be a disconnected set between A and cl A.
            match witness.set("B") {
                Some(b) => Ok(a.is_subset(&b) && b.is_subset(&cl) && !is_connected_subset(space, &b)?),
                None => Ok(true),
            }
        }
    }
}
