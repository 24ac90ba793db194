//! `copwin`: solve finite graphs, query the symbolic families, audit
//! certificates, simulate play and run the verification suites.
//!
//! Exit status: 0 success, 1 failure (failing suite, violation, rule error,
//! I/O), 2 usage error (bad flags or unparseable input; nothing is written).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use copwin::finite::io::{parse_graph, render_table, write_dot, write_edge_list};
use copwin::finite::{dismantle, eta_all, Dismantling, FiniteGraph};
use copwin::gen::{self, TruncationSpec};
use copwin::harness::{run_suite, suite_names, SuiteConfig};
use copwin::symbolic::sampler::sample_claim;
use copwin::symbolic::{
    certify, eta_bounds, rho_with_source, simulate, BudgetRobber, CertifyConfig, Claim, ConstructiveCop, CopPolicy,
    Family, GreedyCop, PlayTrace, ProofWitnesses, RandomRobber, RobberPolicy, SimOptions, StayRobber,
    StratifiedSampler, SymVertex, SymbolicGraph,
};
use copwin::Ordinal;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "copwin", version, about = "Ordinal capture times for cops and robbers")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a finite graph: the η table, η(G) and ρ(G).
    Solve {
        /// Edge list (`u v` per line, `#` comments) or undirected DOT.
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Print only η(robber, cop); vertices by label or index.
        #[arg(long, num_args = 2, value_names = ["ROBBER", "COP"])]
        pair: Option<Vec<String>>,
    },
    /// Dismantle a finite graph by deleting dominated vertices.
    Dismantle {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
    },
    /// Generate a finite graph as an edge list or DOT.
    Gen(GenArgs),
    /// Bounds on η(u, v) in G_γ, G_{γ+n} or the variant without diagonal edges.
    Eta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Robber vertex, `(a,b)` or `T(i)`.
        #[arg(long)]
        u: String,
        /// Cop vertex.
        #[arg(long)]
        v: String,
    },
    /// The maximum capture time ρ.
    Rho {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Audit claims of a family by recursive witness descent.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Family name, e.g. x-axis-cop, diagonal-pair, upper-assembly.
        #[arg(long)]
        family: String,
        /// Robber vertex of a single claim (with --v).
        #[arg(long, requires = "v")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
        /// Number of sampled claims when no pair is given.
        #[arg(long, default_value_t = 100, conflicts_with = "u")]
        samples: usize,
        /// Challenges drawn at the root of each descent.
        #[arg(long, default_value_t = 16)]
        root_samples: usize,
    },
    /// Play one game with the chosen policies.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        cop: String,
        #[arg(long)]
        robber: String,
        #[arg(long, value_enum, default_value_t = CopKind::Constructive)]
        cop_policy: CopKind,
        #[arg(long, value_enum, default_value_t = RobberKind::Random)]
        robber_policy: RobberKind,
        /// Budget for `--robber-policy budget`.
        #[arg(long, default_value_t = 5)]
        budget: u64,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        /// Let the robber move first.
        #[arg(long)]
        robber_first: bool,
    },
    /// Run a verification suite and write its report.
    Verify {
        /// One of the suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// `key = value` configuration file; --seed overrides its seed.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Normalize an ordinal expression, e.g. "w*2+5 + w".
    Ord {
        expr: Vec<String>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Infinite limit ordinal in the `w` grammar.
    #[arg(long)]
    gamma: String,
    /// Tail length n (0 for none).
    #[arg(long, default_value_t = 0)]
    tail: u64,
    /// Drop the diagonal clique.
    #[arg(long)]
    no_diagonal: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "kind")]
struct GenKind {
    /// Truncation of the grid family on {0..N-1}².
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    #[arg(long, value_name = "K")]
    path: Option<usize>,
    #[arg(long, value_name = "K")]
    cycle: Option<usize>,
    #[arg(long, value_name = "K")]
    complete: Option<usize>,
    /// Random graph on K vertices (edge probability --p, seeded).
    #[arg(long, value_name = "K")]
    random: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    kind: GenKind,
    /// Tail length for --grid.
    #[arg(long, default_value_t = 0)]
    tail: usize,
    /// Drop the diagonal clique for --grid.
    #[arg(long)]
    no_diagonal: bool,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Write DOT instead of an edge list.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CopKind {
    Constructive,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum RobberKind {
    Stay,
    Random,
    Budget,
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn runtime(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Runtime(e.into())
}

/// Text to emit and whether the command succeeded.
struct Output {
    text: String,
    ok: bool,
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output { text, ok: true })
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)
}

fn load_graph(path: &Path) -> Result<FiniteGraph, Failure> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display())).map_err(usage)
}

fn vertex_index(g: &FiniteGraph, s: &str) -> Result<usize, Failure> {
    if let Some(i) = g.index_of(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < g.vertex_count() => Ok(i),
        _ => Err(usage(anyhow!("no vertex {s:?} in the graph"))),
    }
}

fn symbolic_graph(a: &GraphArgs) -> Result<SymbolicGraph, Failure> {
    let gamma: Ordinal = a.gamma.parse().with_context(|| format!("--gamma {:?}", a.gamma)).map_err(usage)?;
    SymbolicGraph::new(gamma, a.tail, !a.no_diagonal).map_err(usage)
}

fn vertex(g: &SymbolicGraph, flag: &str, s: &str) -> Result<SymVertex, Failure> {
    let v: SymVertex = s.parse().with_context(|| format!("--{flag}")).map_err(usage)?;
    g.check(&v).with_context(|| format!("--{flag}")).map_err(usage)?;
    Ok(v)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Solve { graph, pair } => {
            let g = load_graph(graph)?;
            let pair = match pair {
                Some(p) => Some((vertex_index(&g, &p[0])?, vertex_index(&g, &p[1])?)),
                None => None,
            };
            let t = eta_all(&g).map_err(runtime)?;
            match pair {
                Some((u, v)) if structured => {
                    ok(pretty(&json!({ "robber": g.label(u), "cop": g.label(v), "eta": t.get(u, v) })))
                }
                Some((u, v)) => ok(format!("{}\n", t.get(u, v))),
                None if structured => ok(pretty(&serde_json::to_value(&t).map_err(runtime)?)),
                None => ok(render_table(&t)),
            }
        }
        Command::Dismantle { graph } => {
            let g = load_graph(graph)?;
            let d = dismantle(&g).map_err(runtime)?;
            if structured {
                return ok(pretty(&serde_json::to_value(&d).map_err(runtime)?));
            }
            let text = match &d {
                Dismantling::Order { eliminations, last } => {
                    let mut s = String::from("dismantlable\n");
                    for e in eliminations {
                        s += &format!("  remove {} (dominated by {})\n", g.label(e.vertex), g.label(e.dominator));
                    }
                    s + &format!("  last {}\n", g.label(*last))
                }
                Dismantling::NotDismantlable { remaining } => {
                    let names: Vec<&str> = remaining.iter().map(|&v| g.label(v)).collect();
                    format!("not dismantlable; no dominated vertex among {}\n", names.join(" "))
                }
            };
            ok(text)
        }
        Command::Gen(a) => {
            let k = &a.kind;
            let g = if let Some(n) = k.grid {
                gen::truncation(&TruncationSpec::new(n, a.tail, !a.no_diagonal)).map_err(usage)?
            } else if let Some(n) = k.path {
                gen::path(n)
            } else if let Some(n) = k.cycle {
                gen::cycle(n)
            } else if let Some(n) = k.complete {
                gen::complete(n)
            } else if let Some(n) = k.random {
                if !(0.0..=1.0).contains(&a.p) {
                    return Err(usage(anyhow!("--p must lie in [0, 1]")));
                }
                gen::random(n, a.p, cli.seed)
            } else {
                unreachable!("clap requires one generator")
            };
            ok(if a.dot { write_dot(&g) } else { write_edge_list(&g) })
        }
        Command::Eta { graph, u, v } => {
            let g = symbolic_graph(graph)?;
            let (u, v) = (vertex(&g, "u", u)?, vertex(&g, "v", v)?);
            let b = eta_bounds(&g, &u, &v).map_err(runtime)?;
            if structured {
                return ok(pretty(&json!({ "u": u, "v": v, "bounds": b })));
            }
            let mut s = format!("eta({u}, {v})\n  lower {}  ({})\n  upper {}  ({})\n", b.lower, b.lower_source, b.upper, b.upper_source);
            s += &if b.exact { format!("  exact {}\n", b.lower) } else { "  not exact\n".to_string() };
            ok(s)
        }
        Command::Rho { graph } => {
            let g = symbolic_graph(graph)?;
            let (r, source) = rho_with_source(&g);
            if structured {
                return ok(pretty(&json!({ "rho": r, "text": r.to_string(), "source": source })));
            }
            ok(format!("{r}\n"))
        }
        Command::Certify { graph, family, u, v, samples, root_samples } => {
            let g = symbolic_graph(graph)?;
            let fam = Family::from_name(family).ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                usage(anyhow!("unknown family {family:?}; expected one of {}", names.join(", ")))
            })?;
            if !fam.applies_to(&g) {
                return Err(usage(anyhow!("family {fam} does not apply to this graph")));
            }
            if *root_samples == 0 {
                return Err(usage(anyhow!("--root-samples must be positive")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let claims: Vec<Claim> = match (u, v) {
                (Some(u), Some(v)) => {
                    let (u, v) = (vertex(&g, "u", u)?, vertex(&g, "v", v)?);
                    vec![Claim::of_family(&g, fam, u, v).map_err(usage)?]
                }
                _ => (0..*samples).map(|_| sample_claim(&mut rng, &g, fam)).collect::<Result<_, _>>().map_err(runtime)?,
            };
            let cfg = CertifyConfig { root_samples: *root_samples, ..CertifyConfig::default() };
            let mut sampler = StratifiedSampler::new(ChaCha8Rng::seed_from_u64(cli.seed ^ 0x5eed));
            let mut rows = Vec::new();
            let mut failures = 0;
            let mut text = String::new();
            for c in claims {
                let head = format!("{} <= {} at rank {}", c.u, c.v, c.rank);
                match certify(&g, c.clone(), &mut sampler, &cfg, &ProofWitnesses) {
                    Ok(cert) => {
                        let s = cert.stats();
                        text += &format!("PASS {head}: nodes {} steps {} depth {}\n", s.nodes, s.steps, s.max_depth);
                        rows.push(json!({ "claim": c, "status": "pass", "stats": s }));
                    }
                    Err(e) => {
                        failures += 1;
                        text += &format!("FAIL {head}: {e}\n");
                        rows.push(json!({ "claim": c, "status": "fail", "error": e.to_string() }));
                    }
                }
            }
            text += &format!("{fam} ({}): {} audited, {failures} failed\n", fam.claim_id(&g), rows.len());
            let text = if structured {
                pretty(&json!({ "family": fam, "claim_id": fam.claim_id(&g), "failed": failures, "audits": rows }))
            } else {
                text
            };
            Ok(Output { text, ok: failures == 0 })
        }
        Command::Simulate { graph, cop, robber, cop_policy, robber_policy, budget, max_rounds, robber_first } => {
            let g = symbolic_graph(graph)?;
            let (c, r) = (vertex(&g, "cop", cop)?, vertex(&g, "robber", robber)?);
            if c == r {
                return Err(usage(anyhow!("cop and robber must start apart")));
            }
            let mut cp: Box<dyn CopPolicy> = match cop_policy {
                CopKind::Constructive => Box::new(ConstructiveCop),
                CopKind::Greedy => Box::new(GreedyCop),
            };
            let mut rp: Box<dyn RobberPolicy> = match robber_policy {
                RobberKind::Stay => Box::new(StayRobber),
                RobberKind::Random => Box::new(RandomRobber::new(ChaCha8Rng::seed_from_u64(cli.seed))),
                RobberKind::Budget => Box::new(BudgetRobber::new(*budget)),
            };
            let opts = SimOptions { max_rounds: *max_rounds, robber_first: *robber_first };
            let t = simulate(&g, cp.as_mut(), rp.as_mut(), c, r, &opts).map_err(runtime)?;
            if structured {
                return ok(pretty(&serde_json::to_value(&t).map_err(runtime)?));
            }
            ok(render_trace(&t))
        }
        Command::Verify { suite, config } => {
            if !suite_names().any(|n| n == suite) {
                let names: Vec<&str> = suite_names().collect();
                return Err(usage(anyhow!("unknown suite {suite:?}; expected one of {}", names.join(", "))));
            }
            let mut c = match config {
                Some(p) => SuiteConfig::parse(&read(p)?).map_err(usage)?,
                None => SuiteConfig::default(),
            };
            c.seed = cli.seed;
            let report = run_suite(suite, &c).map_err(usage)?;
            let text = if structured { report.to_structured().map_err(runtime)? } else { report.to_table() };
            Ok(Output { text, ok: report.exit_code == 0 })
        }
        Command::Ord { expr } => {
            if expr.is_empty() {
                return Err(usage(anyhow!("expected an ordinal expression")));
            }
            let joined = expr.join(" ");
            let a: Ordinal = joined.parse().with_context(|| format!("{joined:?}")).map_err(usage)?;
            if structured {
                return ok(pretty(&json!({ "text": a.to_string(), "terms": a })));
            }
            ok(format!("{a}\n"))
        }
    }
}

fn render_trace(t: &PlayTrace) -> String {
    let mut s = format!("cop {} vs robber {}\n", t.cop_policy, t.robber_policy);
    s += &format!("start  cop {}  robber {}\n", t.start.cop, t.start.robber);
    for (i, r) in t.rounds.iter().enumerate() {
        s += &format!("{:>5}  cop {}  robber {}  [{}]\n", i + 1, r.cop, r.robber, r.phase);
    }
    s += &match t.capture_after {
        Some(m) => format!("captured after {m} cop moves\n"),
        None => format!("not captured after {} cop moves\n", t.cop_moves),
    };
    s
}

/// Writes next to the target and renames, so a failed write leaves no
/// partial file.
fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".partial");
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&out.text, cli.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
