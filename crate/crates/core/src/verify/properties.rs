//! The property catalog: each entry is a quantifier over instances (subsets,
//! pairs of subsets, iteration counts, product factors) of one space, and a
//! predicate that reports a violation for a single instance.
//!
//! The checker caches per-space tables (connectedness, closure, adherence,
//! T-subspaces) built by calling the public operators once per subset; the
//! predicates then read those tables. Replaying a witness rebuilds the tables
//! on the witness space and evaluates the predicate on the stored instance.

use std::cell::OnceCell;
use std::ops::ControlFlow;

use super::catalog::PropertyId;
use super::generate::enumerate_spaces;
use super::outcome::{CheckOutcome, Subject, Witness};
use crate::calculus::{adh, adh_star, closure, is_clopen, is_closed, is_open, iterated_adh, topological_defect};
use crate::connectivity::{connected_bits, enclosure, is_connected, is_connected_subset, symmetric_rows};
use crate::error::{capacity, Error, Result};
use crate::oracle::{connected_by_clopen, enclosure_brute};
use crate::pointset::{Point, PointSet};
use crate::space::ConvergenceSpace;
use crate::tsubspace::{t_subspace_bits, t_subspace_defect_witness};

/// Largest space `check_property` accepts.
pub const PROPERTY_LIMIT: usize = 10;

/// Largest space on which the enclosure theorem is also compared with the
/// brute-force oracle inside the property check.
pub const ENCLOSURE_ORACLE_LIMIT: usize = 6;

/// One quantifier instance. Sets are raw masks over the space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Instance {
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub k: Option<usize>,
}

impl Instance {
    fn global() -> Self {
        Instance::default()
    }

    fn a(a: u64) -> Self {
        Instance { a: Some(a), ..Default::default() }
    }

    fn ab(a: u64, b: u64) -> Self {
        Instance { a: Some(a), b: Some(b), k: None }
    }

    fn ak(a: u64, k: usize) -> Self {
        Instance { a: Some(a), b: None, k: Some(k) }
    }
}

/// Role names of the `a` and `b` slots in witnesses.
fn roles(p: PropertyId) -> (&'static str, &'static str) {
    match p {
        PropertyId::EnclosesIff => ("A", "S"),
        PropertyId::NotTSub => ("S", "B"),
        PropertyId::SandwichDiagram => ("B", "B"),
        _ => ("A", "B"),
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Scan {
    pub instances: u64,
    pub failure: Option<(Instance, Option<ConvergenceSpace>, String)>,
}

/// Per-space cache shared by all properties.
pub(crate) struct Ctx<'a> {
    s: &'a ConvergenceSpace,
    n: usize,
    r: ConvergenceSpace,
    t: ConvergenceSpace,
    tr: OnceCell<ConvergenceSpace>,
    star: OnceCell<ConvergenceSpace>,
    conn: Vec<bool>,
    tconn: OnceCell<Vec<bool>>,
    rconn: OnceCell<Vec<bool>>,
    trconn: OnceCell<Vec<bool>>,
    adh: OnceCell<Vec<u64>>,
    adh_star: OnceCell<Vec<u64>>,
    cl: OnceCell<Vec<u64>>,
    rcl: OnceCell<Vec<u64>>,
    encl: OnceCell<Vec<u64>>,
    tsub: OnceCell<Vec<bool>>,
    defect: OnceCell<usize>,
    by_size: OnceCell<Vec<u64>>,
}

fn conn_table(space: &ConvergenceSpace) -> Vec<bool> {
    let sym = symmetric_rows(space);
    (0..1u64 << space.len()).map(|m| connected_bits(&sym, m)).collect()
}

fn op_table(space: &ConvergenceSpace, op: impl Fn(&ConvergenceSpace, &PointSet) -> PointSet) -> Vec<u64> {
    PointSet::all(space.len()).map(|a| op(space, &a).bits()).collect()
}

impl<'a> Ctx<'a> {
    pub fn new(s: &'a ConvergenceSpace) -> Result<Self> {
        capacity("property-check space size", PROPERTY_LIMIT, s.len())?;
        Ok(Ctx {
            s,
            n: s.len(),
            r: s.r_modification(),
            t: s.t_modification(),
            tr: OnceCell::new(),
            star: OnceCell::new(),
            conn: conn_table(s),
            tconn: OnceCell::new(),
            rconn: OnceCell::new(),
            trconn: OnceCell::new(),
            adh: OnceCell::new(),
            adh_star: OnceCell::new(),
            cl: OnceCell::new(),
            rcl: OnceCell::new(),
            encl: OnceCell::new(),
            tsub: OnceCell::new(),
            defect: OnceCell::new(),
            by_size: OnceCell::new(),
        })
    }

    #[inline]
    fn set(&self, bits: u64) -> PointSet {
        PointSet::from_bits(self.n, bits).expect("mask within universe")
    }

    fn masks(&self) -> impl Iterator<Item = u64> {
        0..1u64 << self.n
    }

    fn full(&self) -> u64 {
        self.s.full().bits()
    }

    fn label_set(&self, bits: u64) -> String {
        format!("{{{}}}", self.s.set_labels(&self.set(bits)).join(" "))
    }

    fn tr(&self) -> &ConvergenceSpace {
        self.tr.get_or_init(|| self.r.t_modification())
    }

    fn star(&self) -> &ConvergenceSpace {
        self.star.get_or_init(|| self.s.star_dual())
    }

    fn tconn(&self) -> &[bool] {
        self.tconn.get_or_init(|| conn_table(&self.t))
    }

    fn rconn(&self) -> &[bool] {
        self.rconn.get_or_init(|| {
            PointSet::all(self.n).map(|a| is_connected_subset(&self.r, &a).expect("same universe")).collect()
        })
    }

    fn trconn(&self) -> &[bool] {
        self.trconn.get_or_init(|| conn_table(self.tr()))
    }

    fn adh_t(&self) -> &[u64] {
        self.adh.get_or_init(|| op_table(self.s, adh))
    }

    fn adh_star_t(&self) -> &[u64] {
        self.adh_star.get_or_init(|| op_table(self.s, adh_star))
    }

    fn cl(&self) -> &[u64] {
        self.cl.get_or_init(|| op_table(self.s, closure))
    }

    fn rcl(&self) -> &[u64] {
        self.rcl.get_or_init(|| op_table(&self.r, closure))
    }

    /// `e(A)` for nonempty connected `A`, zero elsewhere.
    fn encl(&self) -> &[u64] {
        self.encl.get_or_init(|| {
            PointSet::all(self.n)
                .map(|a| {
                    if !a.is_empty() && self.conn[a.bits() as usize] {
                        enclosure(self.s, &a).unwrap().bits()
                    } else {
                        0
                    }
                })
                .collect()
        })
    }

    fn tsub(&self) -> &[bool] {
        self.tsub
            .get_or_init(|| self.masks().map(|m| t_subspace_bits(self.s.out_rows(), self.t.out_rows(), m)).collect())
    }

    fn defect(&self) -> usize {
        *self.defect.get_or_init(|| topological_defect(self.s).defect)
    }

    /// All masks by ascending size, then ascending value.
    fn by_size(&self) -> &[u64] {
        self.by_size.get_or_init(|| {
            let mut v: Vec<u64> = self.masks().collect();
            v.sort_by_key(|m| (m.count_ones(), *m));
            v
        })
    }

    fn sandwich(&self, conn: &[bool], cl: &[u64], b: u64) -> Option<u64> {
        self.by_size().iter().copied().find(|&a| a & !b == 0 && conn[a as usize] && b & !cl[a as usize] == 0)
    }

    fn product_factors(&self) -> Vec<ConvergenceSpace> {
        let mut f: Vec<ConvergenceSpace> =
            (1..=2).flat_map(|n| enumerate_spaces(n).expect("small enumeration")).collect();
        if self.n >= 1 && self.n * self.n <= crate::pointset::CAPACITY {
            f.push(self.s.clone());
        }
        f
    }

    /// Runs every instance of `p`, stopping at the first violation.
    pub fn scan(&self, p: PropertyId) -> Scan {
        let mut scan = Scan::default();
        let _ = self.scan_into(p, &mut scan);
        scan
    }

    fn visit(&self, p: PropertyId, inst: Instance, scan: &mut Scan) -> ControlFlow<()> {
        scan.instances += 1;
        match self.violation(p, &inst, None) {
            Some(msg) => {
                scan.failure = Some((inst, None, msg));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    }

    fn scan_into(&self, p: PropertyId, scan: &mut Scan) -> ControlFlow<()> {
        use PropertyId::*;
        let n = self.n;
        let conn = &self.conn;
        let connected = || self.masks().filter(move |&m| conn[m as usize]);
        match p {
            FiniteConnected
            | Defect1Connect
            | RConnect
            | RAdhBase
            | EnclosureTheorem
            | OpenClosedT
            | TPathCharacterization
            | TSubConnect
            | SandwichDiagram
            | ClosureConnected => {
                if p == Defect1Connect && self.defect() > 1 {
                    return ControlFlow::Continue(());
                }
                for a in self.masks() {
                    let admissible = match p {
                        ClosureConnected | EnclosureTheorem => conn[a as usize] && (a != 0 || p == ClosureConnected),
                        OpenClosedT => {
                            let set = self.set(a);
                            is_closed(self.s, &set) || is_open(self.s, &set)
                        }
                        TSubConnect => self.tsub()[a as usize],
                        _ => true,
                    };
                    if admissible {
                        self.visit(p, Instance::a(a), scan)?;
                    }
                }
            }
            AdhSandwich => {
                for a in connected() {
                    let hi = self.adh_t()[a as usize];
                    for b in self.set(hi & !a).subsets() {
                        self.visit(p, Instance::ab(a, a | b.bits()), scan)?;
                    }
                }
            }
            UnionConnected => {
                let cs: Vec<u64> = connected().filter(|&m| m != 0).collect();
                for (i, &a) in cs.iter().enumerate() {
                    for &b in &cs[i + 1..] {
                        if a & b != 0 {
                            self.visit(p, Instance::ab(a, b), scan)?;
                        }
                    }
                }
                for x in 0..n {
                    self.visit(p, Instance { k: Some(x), ..Default::default() }, scan)?;
                }
            }
            IteratedAdhConnected => {
                for a in connected() {
                    for k in 0..=n {
                        self.visit(p, Instance::ak(a, k), scan)?;
                    }
                }
            }
            RReflector => {
                self.visit(p, Instance::global(), scan)?;
                for a in self.masks() {
                    self.visit(p, Instance::a(a), scan)?;
                }
            }
            StarDuality => {
                for a in self.masks() {
                    self.visit(p, Instance::a(a), scan)?;
                    for b in self.masks() {
                        self.visit(p, Instance::ab(a, b), scan)?;
                    }
                }
            }
            EnclosesIff => {
                for a in connected().filter(|&m| m != 0) {
                    for extra in self.set(self.full() & !a).subsets() {
                        self.visit(p, Instance::ab(a, a | extra.bits()), scan)?;
                    }
                }
            }
            NotTSub => {
                for s in self.masks() {
                    let gap = self.cl()[s as usize] & !self.adh_t()[s as usize];
                    for x in self.set(gap).iter() {
                        self.visit(p, Instance::ak(s, x.index()), scan)?;
                    }
                }
            }
            AllTIffDefect1 => {
                self.visit(p, Instance::global(), scan)?;
            }
            SandwichedBetweenRAdherences => {
                for a in connected() {
                    let set = self.set(a);
                    for k in 0..=n {
                        let lo = iterated_adh(&self.r, &set, k).bits();
                        let hi = iterated_adh(&self.r, &set, k + 1).bits();
                        for extra in self.set(hi & !lo).subsets() {
                            self.visit(p, Instance { a: Some(a), b: Some(lo | extra.bits()), k: Some(k) }, scan)?;
                        }
                        if lo == hi {
                            break;
                        }
                    }
                }
            }
            ProductConnected => {
                if n == 0 {
                    return ControlFlow::Continue(());
                }
                for other in self.product_factors() {
                    for order in 0..2 {
                        scan.instances += 1;
                        let inst = Instance { k: Some(order), ..Default::default() };
                        if let Some(msg) = self.violation(p, &inst, Some(&other)) {
                            scan.failure = Some((inst, Some(other), msg));
                            return ControlFlow::Break(());
                        }
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// The violation message for one instance, or `None` when the instance
    /// satisfies the property (including when its hypothesis fails).
    pub fn violation(&self, p: PropertyId, inst: &Instance, other: Option<&ConvergenceSpace>) -> Option<String> {
        use PropertyId::*;
        let s = self.s;
        let conn = &self.conn;
        let a = inst.a.unwrap_or(0);
        let b = inst.b.unwrap_or(0);
        let ai = a as usize;
        let aset = self.set(a);
        let fail = |cond: bool, msg: &dyn Fn() -> String| if cond { Some(msg()) } else { None };
        match p {
            FiniteConnected => {
                let oracle = connected_by_clopen(s, &aset).ok()?;
                fail(conn[ai] != oracle, &|| {
                    format!("weak connectivity says {} but the clopen oracle says {oracle}", conn[ai])
                })
            }
            AdhSandwich => {
                let hyp = conn[ai] && a & !b == 0 && b & !self.adh_t()[ai] == 0;
                fail(hyp && !conn[b as usize], &|| {
                    format!("{} lies between A and adh A but is disconnected", self.label_set(b))
                })
            }
            ClosureConnected => {
                let cl = closure(s, &aset).bits();
                fail(conn[ai] && !conn[cl as usize], &|| format!("cl A = {} is disconnected", self.label_set(cl)))
            }
            UnionConnected => {
                if let Some(x) = inst.k {
                    let x = Point(x);
                    if x.index() >= self.n {
                        return None;
                    }
                    let union =
                        self.masks().filter(|&m| conn[m as usize] && m >> x.index() & 1 == 1).fold(0, |acc, m| acc | m);
                    fail(!conn[union as usize], &|| {
                        format!("union of all connected sets through {} is disconnected", s.label(x))
                    })
                } else {
                    let hyp = conn[ai] && conn[b as usize] && a & b != 0;
                    fail(hyp && !conn[(a | b) as usize], &|| {
                        format!("A ∪ B = {} is disconnected", self.label_set(a | b))
                    })
                }
            }
            IteratedAdhConnected => {
                let k = inst.k?;
                let it = iterated_adh(s, &aset, k).bits();
                fail(conn[ai] && !conn[it as usize], &|| format!("adh^{k} A = {} is disconnected", self.label_set(it)))
            }
            Defect1Connect => {
                let defect = self.defect();
                let t = self.tconn()[ai];
                fail(defect <= 1 && conn[ai] != t, &|| {
                    format!("defect {defect} but connectedness {} differs from T-connectedness {t}", conn[ai])
                })
            }
            RReflector => {
                if inst.a.is_none() {
                    if self.r.r_modification() != self.r {
                        return Some("r is not idempotent".into());
                    }
                    if !s.arrows_subset_of(&self.r) {
                        return Some("r removed an arrow".into());
                    }
                    return None;
                }
                let lhs = self.r.subspace(&aset).ok()?;
                let rhs = s.subspace(&aset).ok()?.r_modification();
                if lhs != rhs {
                    return Some("(rξ)|A differs from r(ξ|A)".into());
                }
                let (c1, c2) = (is_clopen(s, &aset), is_clopen(&self.r, &aset));
                fail(c1 != c2, &|| format!("clopen in ξ: {c1}, clopen in rξ: {c2}"))
            }
            RConnect => {
                let r = self.rconn()[ai];
                fail(conn[ai] != r, &|| format!("ξ-connected {} but rξ-connected {r}", conn[ai]))
            }
            RAdhBase => {
                let lhs = adh(&self.r, &aset).bits();
                let rhs = self.adh_t()[ai] | self.adh_star_t()[ai];
                fail(lhs != rhs, &|| {
                    format!("adh_r A = {} but adh A ∪ adh* A = {}", self.label_set(lhs), self.label_set(rhs))
                })
            }
            StarDuality => {
                if inst.b.is_none() {
                    let open_star = is_open(self.star(), &aset);
                    let closed = is_closed(s, &aset);
                    return fail(open_star != closed, &|| format!("open in ξ*: {open_star}, closed in ξ: {closed}"));
                }
                let left = b & self.adh_t()[ai] != 0;
                let right = a & self.adh_star_t()[b as usize] != 0;
                fail(left != right, &|| format!("B ∩ adh A ≠ ∅ is {left} but A ∩ adh* B ≠ ∅ is {right}"))
            }
            EnclosureTheorem => {
                if a == 0 || !conn[ai] {
                    return None;
                }
                let e = enclosure(s, &aset).ok()?.bits();
                let via_r = adh(&self.r, &aset).bits();
                let by_def = (0..self.n).filter(|&x| conn[(a | 1 << x) as usize]).fold(0u64, |acc, x| acc | 1 << x);
                if e != via_r {
                    return Some(format!("e(A) = {} but adh_r A = {}", self.label_set(e), self.label_set(via_r)));
                }
                if e != by_def {
                    return Some(format!(
                        "e(A) = {} but {{x : A ∪ {{x}} connected}} = {}",
                        self.label_set(e),
                        self.label_set(by_def)
                    ));
                }
                if self.n <= ENCLOSURE_ORACLE_LIMIT {
                    let brute = enclosure_brute(s, &aset).ok()?.bits();
                    return fail(e != brute, &|| {
                        format!(
                            "e(A) = {} but the brute-force oracle gives {}",
                            self.label_set(e),
                            self.label_set(brute)
                        )
                    });
                }
                None
            }
            EnclosesIff => {
                if a == 0 || !conn[ai] || a & !b != 0 {
                    return None;
                }
                let fast = b & !self.encl()[ai] == 0;
                let by_def = self.set(b & !a).subsets().all(|extra| conn[(a | extra.bits()) as usize]);
                fail(fast != by_def, &|| format!("S ⊆ e(A) is {fast} but every intermediate set connected is {by_def}"))
            }
            OpenClosedT => {
                let hyp = is_closed(s, &aset) || is_open(s, &aset);
                fail(hyp && !self.tsub()[ai], &|| "open or closed set is not a T-subspace".into())
            }
            NotTSub => {
                let x = inst.k?;
                if x >= self.n {
                    return None;
                }
                let hyp = self.cl()[ai] >> x & 1 == 1 && self.adh_t()[ai] >> x & 1 == 0;
                let with_x = a | 1 << x;
                fail(hyp && self.tsub()[with_x as usize], &|| {
                    format!("{} ∈ cl S \\ adh S yet S ∪ {{x}} is a T-subspace", s.label(Point(x)))
                })
            }
            AllTIffDefect1 => {
                let low = self.defect() <= 1;
                let all_t = self.tsub().iter().all(|&t| t);
                fail(low != all_t, &|| format!("defect {} but every subset a T-subspace is {all_t}", self.defect()))
            }
            TPathCharacterization => {
                let by_paths = t_subspace_defect_witness(s, &aset).ok()?.is_none();
                let by_graphs = self.tsub()[ai];
                fail(by_paths != by_graphs, &|| {
                    format!("digraph comparison says {by_graphs} but the path criterion says {by_paths}")
                })
            }
            TSubConnect => {
                let t = self.tconn()[ai];
                fail(self.tsub()[ai] && conn[ai] != t, &|| {
                    format!("T-subspace with ξ-connected {} but Tξ-connected {t}", conn[ai])
                })
            }
            SandwichDiagram => {
                let xi = conn[ai];
                let sandwiched = self.sandwich(conn, self.cl(), a).is_some();
                let t = self.tconn()[ai];
                let rs = self.sandwich(self.rconn(), self.rcl(), a).is_some();
                let tr = self.trconn()[ai];
                let arrows = [
                    (xi && !sandwiched, "connected => sandwiched"),
                    (sandwiched && !t, "sandwiched => T-connected"),
                    (xi != self.rconn()[ai], "connected <=> r-connected"),
                    (self.rconn()[ai] && !rs, "r-connected => r-sandwiched"),
                    (rs && !tr, "r-sandwiched => T(r)-connected"),
                    (sandwiched && !rs, "sandwiched => r-sandwiched"),
                    (t && !tr, "T-connected => T(r)-connected"),
                    (t && self.tsub()[ai] && !xi, "T-connected T-subspace => connected"),
                ];
                arrows.iter().find(|(broken, _)| *broken).map(|(_, name)| format!("diagram arrow fails: {name}"))
            }
            SandwichedBetweenRAdherences => {
                let k = inst.k?;
                if !conn[ai] {
                    return None;
                }
                let lo = iterated_adh(&self.r, &aset, k).bits();
                let hi = iterated_adh(&self.r, &aset, k + 1).bits();
                let hyp = lo & !b == 0 && b & !hi == 0;
                fail(hyp && !conn[b as usize], &|| {
                    format!("B lies between adh_r^{k} A and adh_r^{} A but is disconnected", k + 1)
                })
            }
            ProductConnected => {
                let other = other?;
                if self.n == 0 || other.is_empty() {
                    return None;
                }
                let prod = if inst.k == Some(1) { other.product(s) } else { s.product(other) }.ok()?;
                let lhs = is_connected(&prod);
                let rhs = is_connected(s) && is_connected(other);
                fail(lhs != rhs, &|| format!("product connected is {lhs} but both factors connected is {rhs}"))
            }
        }
    }

    pub fn witness(&self, p: PropertyId, inst: &Instance, other: Option<ConvergenceSpace>, msg: String) -> Witness {
        let (ra, rb) = roles(p);
        let mut sets = Vec::new();
        if let Some(a) = inst.a {
            sets.push((ra, self.set(a)));
        }
        if let Some(b) = inst.b {
            sets.push((rb, self.set(b)));
        }
        let mut w = Witness::new(self.s.clone(), sets, msg);
        w.other = other;
        w.parameter = inst.k;
        w
    }
}

/// Checks one catalog property over every admissible instance of `space`.
pub fn check_property(p: PropertyId, space: &ConvergenceSpace) -> Result<CheckOutcome> {
    let ctx = Ctx::new(space)?;
    Ok(outcome_of(&ctx, p, ctx.scan(p)))
}

pub(crate) fn outcome_of(ctx: &Ctx<'_>, p: PropertyId, scan: Scan) -> CheckOutcome {
    match scan.failure {
        None => CheckOutcome::pass(Subject::Property(p)),
        Some((inst, other, msg)) => CheckOutcome::fail(Subject::Property(p), ctx.witness(p, &inst, other, msg)),
    }
}

/// Re-evaluates the instance stored in `witness`; `true` when the violation reproduces.
pub fn replay_property(p: PropertyId, witness: &Witness) -> Result<bool> {
    let ctx = Ctx::new(&witness.space)?;
    let (ra, rb) = roles(p);
    let get = |role: &str| -> Result<Option<u64>> {
        match witness.set(role) {
            Some(s) => {
                witness.space.check_set(&s)?;
                Ok(Some(s.bits()))
            }
            None => Ok(None),
        }
    };
    let inst = Instance { a: get(ra)?, b: if ra == rb { None } else { get(rb)? }, k: witness.parameter };
    if p == PropertyId::ProductConnected && witness.other.is_none() {
        return Err(Error::Precondition("product witness without a second factor".into()));
    }
    Ok(ctx.violation(p, &inst, witness.other.as_ref()).is_some())
}
