//! Verification campaigns over the exhaustive and sampled instance streams.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::catalog::{PropertyId, CATALOG_VERSION};
use super::exec::Execution;
use super::generate::{count_up_to, sample_space, space_from_code, MAX_ENUMERATION_N};
use super::outcome::{Status, Witness, WitnessDoc};
use super::properties::{outcome_of, Ctx};
use crate::error::{capacity, Result};
use crate::space::ConvergenceSpace;

/// Largest sampled space size.
pub const MAX_SAMPLE_N: usize = 8;

const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    pub exhaustive_n: usize,
    pub sample_n: usize,
    pub sample_count: u64,
    pub seed: u64,
}

impl SuiteBounds {
    pub fn exhaustive(n: usize) -> Self {
        SuiteBounds { exhaustive_n: n, sample_n: 0, sample_count: 0, seed: 0 }
    }

    fn validate(&self) -> Result<()> {
        capacity("exhaustive suite size", MAX_ENUMERATION_N, self.exhaustive_n)?;
        if self.sample_count > 0 {
            capacity("sampled suite size", MAX_SAMPLE_N, self.sample_n)?;
        }
        Ok(())
    }

    fn sampling(&self) -> bool {
        self.sample_count > 0 && self.sample_n > 0
    }
}

/// Per-property totals. `failures` counts spaces with a violation; the witness
/// is the one from the earliest failing space in stream order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyTally {
    pub property: PropertyId,
    pub spaces: u64,
    pub instances: u64,
    pub failures: u64,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub bounds: SuiteBounds,
    pub exhaustive_spaces: u64,
    pub sampled_spaces: u64,
    pub tallies: Vec<PropertyTally>,
    /// Not part of the deterministic payload.
    pub wall_clock_ms: u128,
}

#[derive(Clone, Copy)]
enum Job {
    Enumerated(usize, u64),
    Sampled(u64),
}

impl Job {
    fn space(self, bounds: &SuiteBounds) -> ConvergenceSpace {
        match self {
            Job::Enumerated(n, code) => space_from_code(n, code),
            Job::Sampled(i) => sample_space(bounds.sample_n, bounds.seed, i),
        }
    }
}

fn jobs(bounds: &SuiteBounds) -> impl Iterator<Item = Job> {
    let exhaustive = (0..=bounds.exhaustive_n)
        .flat_map(|n| (0..1u64 << (n * n.saturating_sub(1))).map(move |code| Job::Enumerated(n, code)));
    let count = if bounds.sampling() { bounds.sample_count } else { 0 };
    exhaustive.chain((0..count).map(Job::Sampled))
}

type SpaceResult = Vec<(u64, Option<Witness>)>;

fn check_space(space: &ConvergenceSpace, properties: &[PropertyId]) -> SpaceResult {
    let ctx = Ctx::new(space).expect("suite spaces are within capacity");
    properties
        .iter()
        .map(|&p| {
            let scan = ctx.scan(p);
            let instances = scan.instances;
            (instances, outcome_of(&ctx, p, scan).witness)
        })
        .collect()
}

/// Runs `properties` over every enumerated space with at most
/// `bounds.exhaustive_n` points, then over `bounds.sample_count` seeded samples.
pub fn run_suite(bounds: SuiteBounds, properties: &[PropertyId], exec: Execution) -> Result<SuiteReport> {
    bounds.validate()?;
    let start = Instant::now();
    let mut tallies: Vec<PropertyTally> = properties
        .iter()
        .map(|&p| PropertyTally { property: p, spaces: 0, instances: 0, failures: 0, witness: None })
        .collect();
    let mut stream = jobs(&bounds);
    loop {
        let chunk: Vec<Job> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results = exec.map(&chunk, |job| check_space(&job.space(&bounds), properties));
        for result in results {
            for (tally, (instances, witness)) in tallies.iter_mut().zip(result) {
                tally.spaces += 1;
                tally.instances += instances;
                if let Some(w) = witness {
                    tally.failures += 1;
                    tally.witness.get_or_insert(w);
                }
            }
        }
    }
    Ok(SuiteReport {
        bounds,
        exhaustive_spaces: count_up_to(bounds.exhaustive_n),
        sampled_spaces: if bounds.sampling() { bounds.sample_count } else { 0 },
        tallies,
        wall_clock_ms: start.elapsed().as_millis(),
    })
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    format: &'static str,
    version: u32,
    catalog_version: u32,
    seed: u64,
    bounds: &'a SuiteBounds,
    spaces: SpacesDoc,
    properties: Vec<PropertyDoc>,
    total: TotalDoc,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<MetadataDoc>,
}

#[derive(Serialize)]
struct SpacesDoc {
    exhaustive: u64,
    sampled: u64,
}

#[derive(Serialize)]
struct PropertyDoc {
    code: &'static str,
    name: &'static str,
    spaces: u64,
    instances: u64,
    failures: u64,
    witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
struct TotalDoc {
    instances: u64,
    failures: u64,
}

#[derive(Serialize)]
struct MetadataDoc {
    wall_clock_ms: u128,
}

/// Prefix of report lines that carry run metadata rather than results.
pub const META_PREFIX: &str = "meta ";

impl SuiteReport {
    pub fn total_instances(&self) -> u64 {
        self.tallies.iter().map(|t| t.instances).sum()
    }

    pub fn total_failures(&self) -> u64 {
        self.tallies.iter().map(|t| t.failures).sum()
    }

    pub fn status(&self) -> Status {
        if self.total_failures() == 0 {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// Line-oriented report. Metadata lines start with [`META_PREFIX`].
    pub fn to_text(&self, include_metadata: bool) -> String {
        let b = &self.bounds;
        let mut s = String::from("convspace-report v1\n");
        let _ = writeln!(s, "catalog_version {CATALOG_VERSION}");
        let _ = writeln!(s, "seed {}", b.seed);
        let _ = writeln!(
            s,
            "bounds exhaustive_n={} sample_n={} sample_count={}",
            b.exhaustive_n, b.sample_n, b.sample_count
        );
        let _ = writeln!(s, "spaces exhaustive={} sampled={}", self.exhaustive_spaces, self.sampled_spaces);
        for t in &self.tallies {
            let _ = writeln!(
                s,
                "property {} {} spaces={} instances={} failures={}",
                t.property.code(),
                t.property.name(),
                t.spaces,
                t.instances,
                t.failures
            );
        }
        for t in &self.tallies {
            if let Some(w) = &t.witness {
                let _ = writeln!(s, "witness {} {}", t.property.code(), w.to_line());
            }
        }
        let _ = writeln!(s, "total instances={} failures={}", self.total_instances(), self.total_failures());
        let _ = writeln!(s, "status {}", if self.passed() { "pass" } else { "fail" });
        if include_metadata {
            let _ = writeln!(s, "{META_PREFIX}wall_clock_ms {}", self.wall_clock_ms);
        }
        s
    }

    /// JSON report; run metadata sits under a separate `metadata` key.
    pub fn to_json(&self, include_metadata: bool) -> String {
        let doc = ReportDoc {
            format: "convspace-report",
            version: 1,
            catalog_version: CATALOG_VERSION,
            seed: self.bounds.seed,
            bounds: &self.bounds,
            spaces: SpacesDoc { exhaustive: self.exhaustive_spaces, sampled: self.sampled_spaces },
            properties: self
                .tallies
                .iter()
                .map(|t| PropertyDoc {
                    code: t.property.code(),
                    name: t.property.name(),
                    spaces: t.spaces,
                    instances: t.instances,
                    failures: t.failures,
                    witness: t.witness.as_ref().map(Witness::to_doc),
                })
                .collect(),
            total: TotalDoc { instances: self.total_instances(), failures: self.total_failures() },
            status: self.status(),
            metadata: include_metadata.then_some(MetadataDoc { wall_clock_ms: self.wall_clock_ms }),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Drops metadata lines so two text reports can be compared.
pub fn strip_metadata(report: &str) -> String {
    report.lines().filter(|l| !l.starts_with(META_PREFIX)).map(|l| format!("{l}\n")).collect()
}
