//! The `convspace` command-line tool.
//!
//! Exit codes: 0 on success or pass, 1 when a property fails, a predicate
//! query answers false or a counterexample is found, 2 on usage, parse or
//! precondition errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use convspace::calculus::{
    adh, adh_star, closure, is_clopen, is_closed, is_open, iterated_adh, open_sets, topological_defect,
};
use convspace::connectivity::{
    classify_sandwich, components, components_within, encloses, enclosure, has_sandwich_property, is_connected,
    is_connected_subset, is_sandwiched,
};
use convspace::format::{parse_space_with_warnings, render_dot, SpaceDocument};
use convspace::tsubspace::{find_path, is_t_subspace, t_subspace_defect_witness};
use convspace::verify::{replay_claim, run_suite, search_counterexample, ClaimId, Execution, PropertyId, SuiteBounds};
use convspace::{fixtures, ConvergenceSpace, Error, PointSet};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CONVSPACE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "convspace", version, about = "Finite convergence spaces as reflexive digraphs")]
struct Cli {
    /// Worker threads for verification campaigns (default: all cores, or $CONVSPACE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpaceArg {
    /// A space file, or `fixtures:<name>`.
    #[arg(long)]
    space: String,
}

#[derive(Args, Debug)]
struct SetArgs {
    #[command(flatten)]
    space: SpaceArg,
    /// Labels separated by commas or spaces; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Modification {
    #[value(name = "T")]
    T,
    #[value(name = "r")]
    R,
    #[value(name = "star")]
    Star,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExecArg {
    Sequential,
    Parallel,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the space in file format.
    Show(SpaceArg),
    /// Adherence: the set plus its out-neighbours.
    Adh(SetArgs),
    /// Dual adherence: the set plus its in-neighbours.
    AdhStar(SetArgs),
    /// Closure (forward reachability).
    Cl(SetArgs),
    /// k-fold adherence.
    IterAdh {
        #[command(flatten)]
        args: SetArgs,
        #[arg(long)]
        k: usize,
    },
    /// Topological defect, with the per-point step counts.
    Defect(SpaceArg),
    Open(SetArgs),
    Closed(SetArgs),
    Clopen(SetArgs),
    /// All open sets, one per line.
    OpenSets(SpaceArg),
    /// Connectedness of the space, or of `--set` when given.
    Connected {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
    },
    /// Components of the space, or of `--set` when given.
    Components {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
    },
    /// Enclosure of a nonempty connected set.
    Enclosure(SetArgs),
    /// Whether `--superset` encloses `--set`.
    Encloses {
        #[command(flatten)]
        args: SetArgs,
        #[arg(long)]
        superset: String,
    },
    /// Whether the closure of every connected set encloses it.
    SandwichProperty(SpaceArg),
    /// A connected set sandwiching `--set`, if any.
    Sandwiched(SetArgs),
    /// Position of `--set` in the connectedness implication diagram.
    Classify(SetArgs),
    /// Whether `--set` is a T-subspace.
    Tsub(SetArgs),
    /// A pair of points joined by a path in the space but not inside `--set`.
    TsubWitness(SetArgs),
    /// Print a modification of the space.
    Modify {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(value_enum)]
        kind: Modification,
    },
    /// Print the product with `--other`.
    Product {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        other: String,
    },
    /// Run the property catalog over exhaustive and sampled spaces.
    Verify {
        /// Enumerate every space with at most this many points.
        #[arg(long, default_value_t = 4)]
        exhaustive: usize,
        /// Largest sampled space size.
        #[arg(long, default_value_t = 8)]
        sample_n: usize,
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated property codes or names; all when omitted.
        #[arg(long)]
        properties: Option<String>,
        #[arg(long)]
        json: bool,
        /// Leave out the wall-clock metadata.
        #[arg(long)]
        no_metadata: bool,
        #[arg(long, value_enum, default_value = "parallel")]
        execution: ExecArg,
    },
    /// Search for a counterexample to a claim (C1 or C2).
    Claim {
        claim: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Maximum number of instances to examine.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the space as a DOT digraph.
    ExportDot(SpaceArg),
    /// List fixture names, or print one fixture.
    Fixtures {
        name: Option<String>,
    },
}

struct Loaded {
    name: String,
    space: ConvergenceSpace,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn load(source: &str, err: &mut dyn Write) -> Result<Loaded, Failure> {
    if let Some(name) = source.strip_prefix("fixtures:") {
        return Ok(Loaded { name: name.to_string(), space: fixtures::by_name(name)? });
    }
    let text = std::fs::read_to_string(source).map_err(|e| Failure::Usage(format!("cannot read `{source}`: {e}")))?;
    let (doc, warnings) = parse_space_with_warnings(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    for w in warnings {
        let _ = writeln!(err, "warning: {source}:{}: {}", w.line, w.message);
    }
    Ok(Loaded { space: doc.to_space()?, name: doc.name })
}

fn parse_set(space: &ConvergenceSpace, text: &str) -> Result<PointSet, Failure> {
    let text = text.trim();
    let inner = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(text);
    let labels = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
    Ok(space.set_of(labels)?)
}

fn show_set(space: &ConvergenceSpace, set: &PointSet) -> String {
    if set.is_empty() {
        "{}".to_string()
    } else {
        space.set_labels(set).join(" ")
    }
}

fn boolean(out: &mut dyn Write, value: bool) -> i32 {
    let _ = writeln!(out, "{value}");
    i32::from(!value)
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0)
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if let Some(n) = cli.threads.or_else(threads_from_env) {
        // the global pool can be configured once per process; later calls keep the first setting
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = dispatch(cli.command, out, err);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn with_set(args: &SetArgs, err: &mut dyn Write) -> Result<(Loaded, PointSet), Failure> {
    let l = load(&args.space.space, err)?;
    let set = parse_set(&l.space, &args.set)?;
    Ok((l, set))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    macro_rules! say {
        ($($t:tt)*) => {{ let _ = writeln!(out, $($t)*); }};
    }
    match command {
        Command::Show(s) => {
            let l = load(&s.space, err)?;
            let _ = write!(out, "{}", SpaceDocument::from_space(&l.name, &l.space).render());
            Ok(0)
        }
        Command::Adh(a) => {
            let (l, s) = with_set(&a, err)?;
            say!("{}", show_set(&l.space, &adh(&l.space, &s)));
            Ok(0)
        }
        Command::AdhStar(a) => {
            let (l, s) = with_set(&a, err)?;
            say!("{}", show_set(&l.space, &adh_star(&l.space, &s)));
            Ok(0)
        }
        Command::Cl(a) => {
            let (l, s) = with_set(&a, err)?;
            say!("{}", show_set(&l.space, &closure(&l.space, &s)));
            Ok(0)
        }
        Command::IterAdh { args, k } => {
            let (l, s) = with_set(&args, err)?;
            say!("{}", show_set(&l.space, &iterated_adh(&l.space, &s, k)));
            Ok(0)
        }
        Command::Defect(s) => {
            let l = load(&s.space, err)?;
            let d = topological_defect(&l.space);
            say!("defect {}", d.defect);
            for (x, steps) in l.space.labels().iter().zip(&d.per_point) {
                say!("{x} {steps}");
            }
            Ok(0)
        }
        Command::Open(a) => {
            let (l, s) = with_set(&a, err)?;
            Ok(boolean(out, is_open(&l.space, &s)))
        }
        Command::Closed(a) => {
            let (l, s) = with_set(&a, err)?;
            Ok(boolean(out, is_closed(&l.space, &s)))
        }
        Command::Clopen(a) => {
            let (l, s) = with_set(&a, err)?;
            Ok(boolean(out, is_clopen(&l.space, &s)))
        }
        Command::OpenSets(s) => {
            let l = load(&s.space, err)?;
            for set in open_sets(&l.space)? {
                say!("{}", show_set(&l.space, &set));
            }
            Ok(0)
        }
        Command::Connected { space, set } => {
            let l = load(&space.space, err)?;
            let value = match set {
                Some(text) => is_connected_subset(&l.space, &parse_set(&l.space, &text)?)?,
                None => is_connected(&l.space),
            };
            Ok(boolean(out, value))
        }
        Command::Components { space, set } => {
            let l = load(&space.space, err)?;
            let comps = match set {
                Some(text) => components_within(&l.space, &parse_set(&l.space, &text)?)?,
                None => components(&l.space),
            };
            for c in comps {
                say!("{}", show_set(&l.space, &c));
            }
            Ok(0)
        }
        Command::Enclosure(a) => {
            let (l, s) = with_set(&a, err)?;
            say!("{}", show_set(&l.space, &enclosure(&l.space, &s)?));
            Ok(0)
        }
        Command::Encloses { args, superset } => {
            let (l, a) = with_set(&args, err)?;
            let s = parse_set(&l.space, &superset)?;
            Ok(boolean(out, encloses(&l.space, &s, &a)?))
        }
        Command::SandwichProperty(s) => {
            let l = load(&s.space, err)?;
            let outcome = has_sandwich_property(&l.space)?;
            match &outcome.witness {
                None => {
                    say!("pass");
                    Ok(0)
                }
                Some(w) => {
                    say!("fail");
                    for (role, set) in &w.sets {
                        say!("{role} {}", show_set(&l.space, set));
                    }
                    say!("{}", w.explanation);
                    Ok(1)
                }
            }
        }
        Command::Sandwiched(a) => {
            let (l, s) = with_set(&a, err)?;
            match is_sandwiched(&l.space, &s)? {
                Some(w) => {
                    say!("{}", show_set(&l.space, &w));
                    Ok(0)
                }
                None => {
                    say!("none");
                    Ok(1)
                }
            }
        }
        Command::Classify(a) => {
            let (l, s) = with_set(&a, err)?;
            let c = classify_sandwich(&l.space, &s)?;
            say!("connected {}", c.xi_connected);
            say!("sandwiched {}", c.sandwiched);
            say!("T-connected {}", c.t_connected);
            say!("r-sandwiched {}", c.r_sandwiched);
            say!("Tr-connected {}", c.tr_connected);
            if let Some(w) = &c.witness {
                say!("witness {}", show_set(&l.space, w));
            }
            let violations = c.diagram_violations();
            for v in &violations {
                say!("violation {v}");
            }
            Ok(i32::from(!violations.is_empty()))
        }
        Command::Tsub(a) => {
            let (l, s) = with_set(&a, err)?;
            Ok(boolean(out, is_t_subspace(&l.space, &s)?))
        }
        Command::TsubWitness(a) => {
            let (l, s) = with_set(&a, err)?;
            match t_subspace_defect_witness(&l.space, &s)? {
                None => {
                    say!("none");
                    Ok(0)
                }
                Some((x, y)) => {
                    let path = find_path(&l.space, x, y, None)?.expect("witness pairs are joined by a path");
                    let labels: Vec<&str> = path.points.iter().map(|&p| l.space.label(p)).collect();
                    say!("{} {}", l.space.label(x), l.space.label(y));
                    say!("path {}", labels.join(" -> "));
                    Ok(1)
                }
            }
        }
        Command::Modify { space, kind } => {
            let l = load(&space.space, err)?;
            let (m, suffix) = match kind {
                Modification::T => (l.space.t_modification(), "T"),
                Modification::R => (l.space.r_modification(), "r"),
                Modification::Star => (l.space.star_dual(), "star"),
            };
            let _ = write!(out, "{}", SpaceDocument::from_space(&format!("{}-{suffix}", l.name), &m).render());
            Ok(0)
        }
        Command::Product { space, other } => {
            let a = load(&space.space, err)?;
            let b = load(&other, err)?;
            let p = a.space.product(&b.space)?;
            let _ = write!(out, "{}", SpaceDocument::from_space(&format!("{}_x_{}", a.name, b.name), &p).render());
            Ok(0)
        }
        Command::Verify { exhaustive, sample_n, samples, seed, properties, json, no_metadata, execution } => {
            let selected: Vec<PropertyId> = match properties {
                None => PropertyId::ALL.to_vec(),
                Some(list) => list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<PropertyId>())
                    .collect::<Result<_, _>>()?,
            };
            let exec = match execution {
                ExecArg::Sequential => Execution::Sequential,
                ExecArg::Parallel => Execution::Parallel,
            };
            let bounds = SuiteBounds { exhaustive_n: exhaustive, sample_n, sample_count: samples, seed };
            let report = run_suite(bounds, &selected, exec)?;
            let text = if json { report.to_json(!no_metadata) } else { report.to_text(!no_metadata) };
            let _ = write!(out, "{text}");
            Ok(i32::from(!report.passed()))
        }
        Command::Claim { claim, max_n, budget } => {
            let id: ClaimId = claim.parse()?;
            match search_counterexample(id, max_n, budget)? {
                None => {
                    say!("claim {} {}: no counterexample with at most {max_n} points", id.code(), id.name());
                    Ok(0)
                }
                Some(outcome) => {
                    let w = outcome.witness.expect("failing outcome carries a witness");
                    let replayed = replay_claim(id, &w)?;
                    say!("claim {} {}: counterexample", id.code(), id.name());
                    say!("witness {}", w.to_line());
                    say!("replay {}", if replayed { "reproduced" } else { "not reproduced" });
                    Ok(1)
                }
            }
        }
        Command::ExportDot(s) => {
            let l = load(&s.space, err)?;
            let _ = write!(out, "{}", render_dot(&l.space));
            Ok(0)
        }
        Command::Fixtures { name } => {
            match name {
                None => {
                    for n in fixtures::NAMES {
                        say!("{n}");
                    }
                }
                Some(n) => {
                    let space = fixtures::by_name(&n)?;
                    let _ = write!(out, "{}", SpaceDocument::from_space(&n, &space).render());
                }
            }
            Ok(0)
        }
    }
}
