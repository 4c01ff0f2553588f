//! Differential checks: fast operators against the brute-force oracles.

use std::collections::BTreeMap;

use super::exec::Execution;
use super::generate::{counter_draw, enumerate_spaces, random_space, sample_parameters, MAX_ENUMERATION_N};
use crate::calculus::{is_closed, is_open, lim_principal, topological_defect};
use crate::connectivity::{components_within, encloses, enclosure, is_connected_subset};
use crate::error::{capacity, Result};
use crate::oracle::{
    closed_by_filters, connected_by_clopen, defect_brute, encloses_brute, enclosure_brute, filters, lim_of_filter,
    open_by_filters, t_subspace_brute, FILTER_ORACLE_LIMIT,
};
use crate::pointset::PointSet;
use crate::space::ConvergenceSpace;
use crate::tsubspace::is_t_subspace;

/// Largest space size for the exhaustive agreement sweep.
pub const AGREEMENT_EXHAUSTIVE_LIMIT: usize = 4;

/// Disagreements kept in a report; the count is always complete.
const KEEP: usize = 16;

// salt separating the subset draws from the space draws
const SUBSET_STREAM: u64 = 0x5EED_5E75;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub check: &'static str,
    pub space: ConvergenceSpace,
    pub sets: Vec<PointSet>,
    pub fast: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    /// Comparisons per check name.
    pub comparisons: BTreeMap<&'static str, u64>,
    pub disagreement_count: u64,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn total(&self) -> u64 {
        self.comparisons.values().sum()
    }

    pub fn agrees(&self) -> bool {
        self.disagreement_count == 0
    }

    fn compare<T: PartialEq + std::fmt::Debug>(
        &mut self,
        check: &'static str,
        space: &ConvergenceSpace,
        sets: &[PointSet],
        fast: T,
        oracle: T,
    ) {
        *self.comparisons.entry(check).or_default() += 1;
        if fast != oracle {
            self.disagreement_count += 1;
            if self.disagreements.len() < KEEP {
                self.disagreements.push(Disagreement {
                    check,
                    space: space.clone(),
                    sets: sets.to_vec(),
                    fast: format!("{fast:?}"),
                    oracle: format!("{oracle:?}"),
                });
            }
        }
    }

    fn merge(&mut self, other: AgreementReport) {
        for (k, v) in other.comparisons {
            *self.comparisons.entry(k).or_default() += v;
        }
        self.disagreement_count += other.disagreement_count;
        let room = KEEP.saturating_sub(self.disagreements.len());
        self.disagreements.extend(other.disagreements.into_iter().take(room));
    }
}

/// Connectedness, enclosure and T-subspace checks for one `A` (and each given `S ⊇ A`).
fn compare_subset(r: &mut AgreementReport, space: &ConvergenceSpace, a: &PointSet, supersets: &[PointSet]) {
    let conn = is_connected_subset(space, a).unwrap();
    r.compare("connected", space, &[*a], conn, connected_by_clopen(space, a).unwrap());
    r.compare("t-subspace", space, &[*a], is_t_subspace(space, a).unwrap(), t_subspace_brute(space, a).unwrap());
    if a.is_empty() || !conn {
        return;
    }
    r.compare("enclosure", space, &[*a], enclosure(space, a).unwrap(), enclosure_brute(space, a).unwrap());
    for s in supersets {
        r.compare("encloses", space, &[*a, *s], encloses(space, s, a).unwrap(), encloses_brute(space, s, a).unwrap());
    }
}

fn compare_filters(r: &mut AgreementReport, space: &ConvergenceSpace, fs: &[Vec<u64>]) {
    for a in PointSet::all(space.len()) {
        r.compare("open", space, &[a], is_open(space, &a), open_by_filters(space, &a).unwrap());
        r.compare("closed", space, &[a], is_closed(space, &a), closed_by_filters(space, &a).unwrap());
        if a.is_empty() {
            continue;
        }
        let principal: Vec<u64> = PointSet::all(space.len()).filter(|s| a.is_subset(s)).map(|s| s.bits()).collect();
        debug_assert!(fs.contains(&principal));
        let lim = lim_of_filter(space, &principal);
        let oracle = PointSet::from_indices(space.len(), (0..space.len()).filter(|&x| lim[x]));
        r.compare("principal-limit", space, &[a], lim_principal(space, &a).unwrap(), oracle);
    }
}

fn exhaustive_space(space: &ConvergenceSpace) -> AgreementReport {
    let mut r = AgreementReport::default();
    let n = space.len();
    for a in PointSet::all(n) {
        let supersets: Vec<PointSet> = a.complement().subsets().map(|extra| a.union(&extra)).collect();
        compare_subset(&mut r, space, &a, &supersets);
    }
    r.compare("defect", space, &[], topological_defect(space).defect, defect_brute(space).unwrap());
    if n <= FILTER_ORACLE_LIMIT {
        compare_filters(&mut r, space, &filters(n).unwrap());
    }
    r
}

/// Every space with at most `max_n` points, every subset `A`, and every
/// `S ⊇ A` for the enclosing relation.
pub fn agree_exhaustive(max_n: usize, exec: Execution) -> Result<AgreementReport> {
    capacity("agreement sweep size", AGREEMENT_EXHAUSTIVE_LIMIT.min(MAX_ENUMERATION_N), max_n)?;
    let mut total = AgreementReport::default();
    for n in 0..=max_n {
        let spaces: Vec<ConvergenceSpace> = enumerate_spaces(n)?.collect();
        for part in exec.map(&spaces, exhaustive_space) {
            total.merge(part);
        }
    }
    Ok(total)
}

/// The `index`-th sampled instance: a space of 6 to 8 points, a random subset
/// `A`, the component of `A` through its least point (so the enclosure is
/// defined), and a random superset `S` of that component.
pub fn sampled_instance(seed: u64, index: u64) -> (ConvergenceSpace, PointSet, PointSet, PointSet) {
    let (n, p, space_seed) = sample_parameters(8, seed, index);
    let space = random_space(n, p, space_seed).expect("sample size within capacity");
    let full = space.full().bits();
    let salt = seed ^ SUBSET_STREAM;
    let mut a_bits = counter_draw(salt, 2 * index) & full;
    if a_bits == 0 {
        a_bits = 1;
    }
    let a = PointSet::from_bits(n, a_bits).unwrap();
    let comp = components_within(&space, &a).unwrap().remove(0);
    let s = PointSet::from_bits(n, comp.bits() | counter_draw(salt, 2 * index + 1) & full).unwrap();
    (space, a, comp, s)
}

fn sampled_one(seed: u64, index: u64) -> AgreementReport {
    let mut r = AgreementReport::default();
    let (space, a, comp, s) = sampled_instance(seed, index);
    compare_subset(&mut r, &space, &a, &[]);
    compare_subset(&mut r, &space, &comp, &[s]);
    r.compare("t-subspace", &space, &[s], is_t_subspace(&space, &s).unwrap(), t_subspace_brute(&space, &s).unwrap());
    r.compare("defect", &space, &[], topological_defect(&space).defect, defect_brute(&space).unwrap());
    r
}

/// `count` seeded random instances at 6 to 8 points.
pub fn agree_sampled(count: u64, seed: u64, exec: Execution) -> AgreementReport {
    let indices: Vec<u64> = (0..count).collect();
    let mut total = AgreementReport::default();
    for chunk in indices.chunks(4096) {
        for part in exec.map(chunk, |&i| sampled_one(seed, i)) {
            total.merge(part);
        }
    }
    total
}
