//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use convspace::calculus::{adh, closure, is_closed, is_open, open_sets, topological_defect, vicinity};
use convspace::connectivity::{classify_sandwich, has_sandwich_property, is_connected_subset, is_sandwiched};
use convspace::fixtures;
use convspace::format::{parse_space, render_dot, SpaceDocument};
use convspace::tsubspace::{find_path, is_t_subspace, t_subspace_defect_witness};
use convspace::verify::generate::counter_draw;
use convspace::verify::{
    agree_exhaustive, agree_sampled, random_space, replay_claim, run_suite, search_counterexample, strip_metadata,
    ClaimId, EdgeProbability, Execution, PropertyId, SuiteBounds,
};
use convspace::{ConvergenceSpace, Point, PointSet};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convspace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn set(s: &ConvergenceSpace, labels: &[&str]) -> PointSet {
    s.set_of(labels.iter().copied()).unwrap()
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(failures: Vec<String>, summary: String) -> Verdict {
    if failures.is_empty() {
        Verdict { ok: true, detail: summary }
    } else {
        Verdict { ok: false, detail: format!("{summary}; failed: {}", failures.join("; ")) }
    }
}

fn fixture_facts() -> Verdict {
    let start = Instant::now();
    let l = fixtures::line3();
    let t = fixtures::triangle();
    let sq = fixtures::square_acd();
    let sym = fixtures::square_symmetric();
    let k = fixtures::kite();
    let s2 = fixtures::sierpinski();
    let kite_cls = classify_sandwich(&k, &set(&k, &["a", "b", "d"])).unwrap();
    let kite_ac = classify_sandwich(&k, &set(&k, &["a", "c"])).unwrap();
    let relabel = |s: ConvergenceSpace, ls: &[&str]| s.with_labels(ls.iter().copied()).unwrap();
    let facts: Vec<(&str, bool)> = vec![
        ("sierpinski is the single arrow 0 -> 1", s2.arrows().collect::<Vec<_>>() == [(Point(0), Point(1))]),
        ("sierpinski has defect 1", topological_defect(&s2).defect == 1),
        (
            "line3 out-neighbourhoods",
            l.out(Point(0)) == set(&l, &["a", "b"])
                && l.out(Point(1)) == set(&l, &["b", "c"])
                && l.out(Point(2)) == set(&l, &["c"]),
        ),
        ("line3 vicinity of c is {b,c}", vicinity(&l, Point(2)).unwrap() == set(&l, &["b", "c"])),
        ("line3 adh{a} = {a,b}", adh(&l, &set(&l, &["a"])) == set(&l, &["a", "b"])),
        (
            "line3 open sets are {}, {a}, {a,b}, X",
            open_sets(&l).unwrap() == [l.empty_set(), set(&l, &["a"]), set(&l, &["a", "b"]), l.full()],
        ),
        ("line3 T adds a -> c", l.t_modification().has_arrow(Point(0), Point(2))),
        (
            "line3 subspace {a,c} is discrete",
            l.subspace(&set(&l, &["a", "c"])).unwrap() == relabel(ConvergenceSpace::discrete(2), &["a", "c"]),
        ),
        ("line3 {a,c} is disconnected", !is_connected_subset(&l, &set(&l, &["a", "c"])).unwrap()),
        ("line3 {a,c} is not a T-subspace", !is_t_subspace(&l, &set(&l, &["a", "c"])).unwrap()),
        (
            "line3 {a,c} defect witness (a, c)",
            t_subspace_defect_witness(&l, &set(&l, &["a", "c"])).unwrap() == Some((Point(0), Point(2))),
        ),
        (
            "line3 path a b c",
            find_path(&l, Point(0), Point(2), None).unwrap().map(|p| p.points)
                == Some(vec![Point(0), Point(1), Point(2)]),
        ),
        (
            "line3 no path a ~> c inside {a,c}",
            find_path(&l, Point(0), Point(2), Some(&set(&l, &["a", "c"]))).unwrap().is_none(),
        ),
        ("triangle adh{a} = {a,b}", adh(&t, &set(&t, &["a"])) == set(&t, &["a", "b"])),
        ("triangle cl{a} = {a,b,c}", closure(&t, &set(&t, &["a"])) == t.full()),
        ("triangle r-modification is antidiscrete", t.r_modification() == ConvergenceSpace::antidiscrete(3)),
        ("triangle every subset connected", PointSet::all(3).all(|a| is_connected_subset(&t, &a).unwrap())),
        ("triangle has the sandwich property", has_sandwich_property(&t).unwrap().passed()),
        ("square-acd subspace {a,b,c} has arrows a->b, b->c", {
            let sub = sq.subspace(&set(&sq, &["a", "b", "c"])).unwrap();
            sub.arrows().collect::<Vec<_>>() == [(Point(0), Point(1)), (Point(1), Point(2))]
        }),
        ("square-acd {a,b,c} is a T-subspace", is_t_subspace(&sq, &set(&sq, &["a", "b", "c"])).unwrap()),
        ("square-acd {a,c,d} is a T-subspace", is_t_subspace(&sq, &set(&sq, &["a", "c", "d"])).unwrap()),
        ("square-acd {a,c} is not a T-subspace", !is_t_subspace(&sq, &set(&sq, &["a", "c"])).unwrap()),
        (
            "square-acd (T)|{a,c} is a Sierpinski copy",
            sq.t_modification().subspace(&set(&sq, &["a", "c"])).unwrap()
                == relabel(fixtures::sierpinski(), &["a", "c"]),
        ),
        (
            "square-symmetric {a,b,c}, {a,c,d} are T-subspaces",
            is_t_subspace(&sym, &set(&sym, &["a", "b", "c"])).unwrap()
                && is_t_subspace(&sym, &set(&sym, &["a", "c", "d"])).unwrap(),
        ),
        (
            "square-symmetric {a,b,c}, {a,c,d} neither open nor closed",
            ["a b c", "a c d"].iter().all(|s| {
                let a = sym.set_of(s.split(' ')).unwrap();
                !is_open(&sym, &a) && !is_closed(&sym, &a)
            }),
        ),
        (
            "square-symmetric {a,c} defect witness (a, c)",
            t_subspace_defect_witness(&sym, &set(&sym, &["a", "c"])).unwrap() == Some((Point(0), Point(2))),
        ),
        (
            "kite T adds d -> b",
            k.t_modification().has_arrow(Point(3), Point(1)) && k.t_modification().arrow_count() == 4,
        ),
        ("kite cl{d} = {d,c,b}", closure(&k, &set(&k, &["d"])) == set(&k, &["b", "c", "d"])),
        ("kite {a,b} is closed", is_closed(&k, &set(&k, &["a", "b"]))),
        ("kite {a,b,d} is disconnected", !is_connected_subset(&k, &set(&k, &["a", "b", "d"])).unwrap()),
        ("kite {a,b,d} is not sandwiched", is_sandwiched(&k, &set(&k, &["a", "b", "d"])).unwrap().is_none()),
        (
            "kite {a,b,d} classification",
            !kite_cls.xi_connected
                && !kite_cls.sandwiched
                && kite_cls.t_connected
                && kite_cls.r_sandwiched
                && kite_cls.tr_connected,
        ),
        ("kite {a,c} T(r)-connected but not T-connected", kite_ac.tr_connected && !kite_ac.t_connected),
        (
            "kite T(r) is antidiscrete",
            k.r_modification().t_modification() == relabel(ConvergenceSpace::antidiscrete(4), &["a", "b", "c", "d"]),
        ),
        (
            "kite r-closure of a singleton is X",
            k.points().all(|x| closure(&k.r_modification(), &PointSet::singleton(4, x)) == k.full()),
        ),
        (
            "kite DOT edges a->b, c->b, d->c",
            render_dot(&k).lines().filter(|l| l.contains("->")).map(str::trim).collect::<Vec<_>>()
                == ["\"a\" -> \"b\";", "\"c\" -> \"b\";", "\"d\" -> \"c\";"],
        ),
        ("cli: adh --space fixtures:triangle --set a prints a b", {
            let o = cli(&["adh", "--space", "fixtures:triangle", "--set", "a"]);
            o.status.code() == Some(0) && stdout(&o) == "a b\n"
        }),
    ];
    let elapsed = start.elapsed();
    let mut failures: Vec<String> = facts.iter().filter(|(_, ok)| !ok).map(|(name, _)| name.to_string()).collect();
    if elapsed > Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(failures, format!("{} facts in {:.3} s", facts.len(), elapsed.as_secs_f64()))
}

fn exhaustive_suite() -> Verdict {
    let start = Instant::now();
    let r = run_suite(SuiteBounds::exhaustive(4), PropertyId::ALL, Execution::Sequential).unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if r.exhaustive_spaces != 4166 {
        failures.push(format!("{} spaces", r.exhaustive_spaces));
    }
    if r.tallies.len() != 20 || r.tallies.iter().any(|t| t.spaces != 4166 || t.instances == 0) {
        failures.push("some property was not run on every space".into());
    }
    for t in r.tallies.iter().filter(|t| t.failures > 0) {
        failures.push(format!("{} failed {} times", t.property, t.failures));
    }
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        failures,
        format!(
            "P1-P20 over {} spaces, {} instances, {} failures, {:.2} s sequential",
            r.exhaustive_spaces,
            r.total_instances(),
            r.total_failures(),
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let small = agree_exhaustive(4, Execution::Parallel).unwrap();
    let sampled = agree_sampled(10_000, 7, Execution::Parallel);
    let mut failures = Vec::new();
    for (what, r) in [("n <= 4", &small), ("sampled", &sampled)] {
        if !r.agrees() {
            failures.push(format!("{what}: {} disagreements, first {:?}", r.disagreement_count, r.disagreements[0]));
        }
    }
    let instances = sampled.comparisons.get("defect").copied().unwrap_or(0);
    if instances < 10_000 {
        failures.push(format!("only {instances} sampled instances"));
    }
    verdict(
        failures,
        format!(
            "{} comparisons on all n <= 4 spaces and subsets, {} on {instances} sampled instances at n 6-8, {:.2} s",
            small.total(),
            sampled.total(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn claim_search() -> Verdict {
    let mut failures = Vec::new();
    let start = Instant::now();
    let c1 = cli(&["claim", "C1", "--max-n", "3"]);
    let c1_time = start.elapsed();
    let out1 = stdout(&c1);
    if c1.status.code() != Some(1) {
        failures.push(format!("C1 exit {:?}", c1.status.code()));
    }
    if !out1.contains("witness points=a,b,c arrows=a>b,c>b A={a} k=2 ") {
        failures.push(format!("C1 witness is not vee, A={{a}}, k=2: {out1:?}"));
    }
    if !out1.contains("replay reproduced") {
        failures.push("C1 witness did not replay in the tool".into());
    }
    let start = Instant::now();
    let c2 = cli(&["claim", "C2", "--max-n", "3"]);
    let c2_time = start.elapsed();
    if c2.status.code() != Some(1) || !stdout(&c2).contains("replay reproduced") {
        failures.push(format!("C2: exit {:?}, output {:?}", c2.status.code(), stdout(&c2)));
    }
    for (name, d) in [("C1", c1_time), ("C2", c2_time)] {
        if d > Duration::from_secs(1) {
            failures.push(format!("{name} took {d:?}"));
        }
    }
    // library-side replays through the public operators
    for claim in [ClaimId::IteratedRAdherence, ClaimId::SandwichPropertyUniversal] {
        match search_counterexample(claim, 3, None).unwrap() {
            Some(o) if replay_claim(claim, o.witness.as_ref().unwrap()).unwrap() => {}
            _ => failures.push(format!("{claim} witness missing or not replayable")),
        }
    }
    let line3 = has_sandwich_property(&fixtures::line3()).unwrap();
    let line3_ok = line3.witness.as_ref().is_some_and(|w| replay_claim(ClaimId::SandwichPropertyUniversal, w).unwrap());
    let line3_cli = cli(&["sandwich-property", "--space", "fixtures:line3"]);
    if !line3_ok || line3_cli.status.code() != Some(1) {
        failures.push("line3 does not qualify as a C2 counterexample".into());
    }
    verdict(
        failures,
        format!(
            "C1 vee A={{a}} k=2 in {:.3} s, C2 in {:.3} s, line3 qualifies, witnesses replay",
            c1_time.as_secs_f64(),
            c2_time.as_secs_f64()
        ),
    )
}

fn determinism() -> Verdict {
    let args = ["verify", "--exhaustive", "4", "--sample-n", "8", "--samples", "10000", "--seed", "7"];
    let start = Instant::now();
    let a = cli(&args);
    let b = cli(&args);
    let (ta, tb) = (stdout(&a), stdout(&b));
    let mut failures = Vec::new();
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        failures.push(format!("exit codes {:?} {:?}", a.status.code(), b.status.code()));
    }
    if strip_metadata(&ta) != strip_metadata(&tb) {
        failures.push("reports differ outside the metadata lines".into());
    }
    let meta: Vec<&str> = ta.lines().filter(|l| l.starts_with("meta ")).collect();
    if meta.len() != 1 || !meta[0].starts_with("meta wall_clock_ms ") {
        failures.push(format!("unexpected metadata lines {meta:?}"));
    }
    if !ta.contains("spaces exhaustive=4166 sampled=10000") || !ta.contains("status pass") {
        failures.push("report does not cover the requested bounds or did not pass".into());
    }
    verdict(
        failures,
        format!(
            "two runs, {} report lines identical modulo `meta` line, {:.1} s",
            ta.lines().count(),
            start.elapsed().as_secs_f64()
        ),
    )
}

/// A random document: random identifier labels, a random arrow set in shuffled order.
fn random_document(i: u64) -> SpaceDocument {
    let draw = |j: u64| counter_draw(0xD0C5 ^ i.wrapping_mul(0x1_0000), j);
    let n = (draw(0) % 21) as usize;
    let p = EdgeProbability::new((draw(1) % 5) as u32, 4).unwrap();
    let labels: Vec<String> = (0..n)
        .map(|x| match draw(2 + x as u64) % 3 {
            0 => format!("p{x}"),
            1 => format!("n_{x}_{}", draw(100 + x as u64) % 1000),
            _ => format!("{x}{}", ["a", "B", "_z", "q9"][(draw(200 + x as u64) % 4) as usize]),
        })
        .collect();
    let space = random_space(n, p, draw(3)).unwrap().with_labels(labels).unwrap();
    let mut doc = SpaceDocument::from_space(&format!("doc-{i}"), &space);
    for j in (1..doc.arrows.len()).rev() {
        let k = (draw(300 + j as u64) % (j as u64 + 1)) as usize;
        doc.arrows.swap(j, k);
    }
    doc
}

fn round_trip() -> Verdict {
    let mut failures = Vec::new();
    for (name, space) in fixtures::all() {
        let doc = SpaceDocument::from_space(name, &space);
        if parse_space(&doc.render()).ok().as_ref() != Some(&doc) || doc.to_space().ok().as_ref() != Some(&space) {
            failures.push(format!("fixture {name}"));
        }
        let shown = cli(&["show", "--space", &format!("fixtures:{name}")]);
        if stdout(&shown) != doc.render() {
            failures.push(format!("show {name}"));
        }
    }
    let mut arrows = 0;
    for i in 0..1000 {
        let doc = random_document(i);
        arrows += doc.arrows.len();
        if parse_space(&doc.render()).ok().as_ref() != Some(&doc) {
            failures.push(format!("random document {i}"));
        }
    }
    let expected_sierpinski = "digraph {\n    \"0\";\n    \"1\";\n    \"0\" -> \"1\";\n}\n";
    if render_dot(&fixtures::sierpinski()) != expected_sierpinski {
        failures.push("sierpinski DOT".into());
    }
    for (name, space) in fixtures::all() {
        let one = cli(&["export-dot", "--space", &format!("fixtures:{name}")]);
        let two = cli(&["export-dot", "--space", &format!("fixtures:{name}")]);
        if one.stdout != two.stdout || stdout(&one) != render_dot(&space) {
            failures.push(format!("DOT for {name} is not stable"));
        }
    }
    let discrete = render_dot(&ConvergenceSpace::discrete(3));
    if discrete != "digraph {\n    \"a\";\n    \"b\";\n    \"c\";\n}\n" {
        failures.push("discrete DOT".into());
    }
    verdict(failures, format!("7 fixtures and 1000 random documents ({arrows} arrows) round-trip, DOT byte-stable"))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 6] = [
        ("fixture suite", fixture_facts),
        ("exhaustive suite", exhaustive_suite),
        ("oracle equivalence", oracle_equivalence),
        ("claim search", claim_search),
        ("determinism", determinism),
        ("round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.ok {
            failed += 1;
        }
        println!("criterion {} {name}: {} ({})", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
