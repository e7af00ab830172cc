//! `procstar`: finite-quotient seminorms, witnesses and verification suites
//! from the command line.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use procstar::descriptor::GroupDescriptor;
use procstar::finite_group::{decompose_regular, FiniteGroup};
use procstar::group_algebra::{DiscreteGroup, GroupAlgebraElement};
use procstar::quotients::FiniteQuotient;
use procstar::seminorms::{heisenberg_chain, lattice_chain, seminorm, seminorm_via_irreps, sup_seminorm};
use procstar::suites::{run_suite, SUITES};
use procstar::tolerances::Config;
use procstar::witnesses::{free_group_u3_check, heisenberg_separation, rf_amen_witness, SearchRanges, SeparationOutcome};
use procstar::Error;

#[derive(Parser, Debug)]
#[command(name = "procstar", version, about = "Finite-quotient C*-seminorms of group algebras")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    #[arg(long, global = true, env = "PROCSTAR_TAU_ALG", default_value_t = procstar::tolerances::TAU_ALG)]
    tau_alg: f64,
    #[arg(long, global = true, env = "PROCSTAR_TAU_NORM", default_value_t = procstar::tolerances::TAU_NORM)]
    tau_norm: f64,
    #[arg(long, global = true, env = "PROCSTAR_TAU_SPEC", default_value_t = procstar::tolerances::TAU_SPEC)]
    tau_spec: f64,
    #[arg(long, global = true, env = "PROCSTAR_TAU_GROUP", default_value_t = procstar::tolerances::TAU_GROUP)]
    tau_group: f64,
    #[arg(long, global = true, env = "PROCSTAR_ORDER_CAP", default_value_t = procstar::tolerances::ORDER_CAP)]
    order_cap: usize,
    #[arg(long, global = true, env = "PROCSTAR_CLOSURE_CAP", default_value_t = procstar::tolerances::CLOSURE_CAP)]
    closure_cap: usize,
    #[arg(long, global = true, env = "PROCSTAR_MAX_WORD_LENGTH", default_value_t = procstar::tolerances::MAX_WORD_LENGTH)]
    max_word_length: usize,
    #[arg(long, global = true, env = "PROCSTAR_SEED", default_value_t = procstar::suites::DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "PROCSTAR_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long, global = true, env = "PROCSTAR_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// cyclic, elementary-abelian-2, dihedral, symmetric, heisenberg-mod
    #[arg(long, required_unless_present = "descriptor")]
    family: Option<String>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    params: Vec<i64>,
    /// A full group descriptor (inline JSON or a file).
    #[arg(long, conflicts_with = "family")]
    descriptor: Option<String>,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    /// Quotient descriptor (inline JSON or a file).
    #[arg(long, required_unless_present = "modulus")]
    quotient: Option<String>,
    /// Congruence quotient mod these moduli (one per lattice coordinate, or
    /// one for all).
    #[arg(long, value_delimiter = ',', conflicts_with = "quotient")]
    modulus: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Regular,
    Irreps,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, conjugacy classes and irrep dimensions of a finite group.
    GroupInfo(GroupArgs),
    /// Decompose the regular representation into irreducible blocks.
    Decompose(GroupArgs),
    /// The seminorm of an element at one finite quotient.
    Seminorm {
        #[arg(long)]
        element: PathBuf,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[arg(long, value_enum, default_value_t = Method::Regular)]
        method: Method,
    },
    /// Seminorms along a congruence chain and their running sup.
    SupSeminorm {
        #[arg(long)]
        element: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
    },
    /// The image of an element in a finite quotient's group algebra.
    Kappa {
        #[arg(long)]
        element: PathBuf,
        #[command(flatten)]
        quotient: QuotientArgs,
    },
    /// A separating finite quotient and vector for an element of Z^d or the
    /// Heisenberg group.
    Witness {
        #[arg(long)]
        element: PathBuf,
        /// Test vector; defaults to the identity delta.
        #[arg(long)]
        xi: Option<PathBuf>,
    },
    /// Search finite-range Heisenberg representations for one not killing
    /// the element.
    SeparateHeisenberg {
        #[arg(long)]
        element: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 24)]
        max_root_order: usize,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
    },
    /// Distances from the identity of short words in two U(3) generators.
    U3Check {
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
}

/// Exit status with the report printed before exiting.
enum Outcome {
    Ok(Value),
    Violation(Value),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Precision(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precision(_) | Error::DegenerateSplit { .. } => Failure::Precision(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn read_element(path: &Path, cfg: &Config) -> Result<GroupAlgebraElement, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    GroupAlgebraElement::from_json_str(&text, cfg.order_cap).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn finite_group(args: &GroupArgs, cfg: &Config) -> Result<Arc<FiniteGroup>, Failure> {
    let desc = match (&args.descriptor, &args.family) {
        (Some(d), _) => serde_json::from_value::<GroupDescriptor>(read_json(d)?).map_err(|e| Failure::Usage(e.to_string()))?,
        (None, Some(f)) => GroupDescriptor::new(f, &args.params),
        (None, None) => return Err(Failure::Usage("a group is required".into())),
    };
    Ok(Arc::new(FiniteGroup::build_with_cap(&desc.finite_family()?, cfg.order_cap)?))
}

fn quotient(args: &QuotientArgs, group: &DiscreteGroup, cfg: &Config) -> Result<FiniteQuotient, Failure> {
    let v = match &args.quotient {
        Some(q) => read_json(q)?,
        None => json!({"kind": "mod", "params": args.modulus}),
    };
    Ok(FiniteQuotient::from_json_in(&v, group, cfg.order_cap)?)
}

fn run(cmd: &Command, cfg: &Config, seed: u64) -> Result<Outcome, Failure> {
    Ok(match cmd {
        Command::GroupInfo(g) => {
            let f = finite_group(g, cfg)?;
            let classes = f.conjugacy_classes();
            let dec = decompose_regular(&f, seed, cfg)?;
            Outcome::Ok(json!({
                "group": f.label(),
                "order": f.order(),
                "abelian": f.is_abelian(),
                "conjugacy_classes": classes.len(),
                "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
                "irrep_dims": dec.dims(),
            }))
        }
        Command::Decompose(g) => {
            let f = finite_group(g, cfg)?;
            let dec = decompose_regular(&f, seed, cfg)?;
            let report = dec.verify(&f, cfg.tau_alg.max(1e-8));
            let v = json!({"summary": dec.summary(&f), "verification": report, "attempts": dec.attempts()});
            if report.passed {
                Outcome::Ok(v)
            } else {
                Outcome::Violation(v)
            }
        }
        Command::Seminorm { element, quotient: qa, method } => {
            let a = read_element(element, cfg)?;
            let q = quotient(qa, a.group(), cfg)?;
            let value = match method {
                Method::Regular => seminorm(&q, &a, cfg)?,
                Method::Irreps => {
                    let dec = decompose_regular(q.target(), seed, cfg)?;
                    seminorm_via_irreps(&q, &a, &dec)?
                }
            };
            Outcome::Ok(value.to_json())
        }
        Command::SupSeminorm { element, moduli } => {
            let a = read_element(element, cfg)?;
            let chain = match a.group() {
                DiscreteGroup::Lattice(d) => lattice_chain(*d, moduli, cfg.order_cap)?,
                DiscreteGroup::Heisenberg => heisenberg_chain(moduli, cfg.order_cap)?,
                g => return Err(Failure::Usage(format!("congruence chains need Z^d or the Heisenberg group, got {}", g.label()))),
            };
            Outcome::Ok(sup_seminorm(a.group(), &a, &chain, cfg)?.to_json())
        }
        Command::Kappa { element, quotient: qa } => {
            let a = read_element(element, cfg)?;
            let q = quotient(qa, a.group(), cfg)?;
            Outcome::Ok(json!({"quotient": q.to_json(), "image": q.kappa(&a)?.to_json()}))
        }
        Command::Witness { element, xi } => {
            let b = read_element(element, cfg)?;
            let xi = xi.as_deref().map(|p| read_element(p, cfg)).transpose()?;
            let w = rf_amen_witness(&b, xi.as_ref(), cfg)?;
            let cert = w.certify(&b, cfg)?;
            let mut v = w.to_json();
            v["certificate"] = serde_json::to_value(&cert).expect("certificate");
            if cert.passed() {
                Outcome::Ok(v)
            } else {
                Outcome::Violation(v)
            }
        }
        Command::SeparateHeisenberg { element, max_n, max_root_order, threshold } => {
            let a = read_element(element, cfg)?;
            let ranges = SearchRanges { max_n: *max_n, max_root_order: *max_root_order, threshold: *threshold, size_bound: cfg.closure_cap };
            let out = heisenberg_separation(&a, &ranges, cfg)?;
            let mut v = out.to_json();
            if let SeparationOutcome::Found { rep, .. } = &out {
                v["representation"] = rep.to_json();
            }
            Outcome::Ok(v)
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.iter().map(|s| s.0).collect() } else { vec![suite.as_str()] };
            if let Some(bad) = names.iter().find(|n| !SUITES.iter().any(|s| s.0 == **n)) {
                return Err(Failure::Usage(format!(
                    "unknown suite {bad:?}; available: all, {}",
                    SUITES.iter().map(|s| s.0).collect::<Vec<_>>().join(", ")
                )));
            }
            let reports = names.iter().map(|n| run_suite(n, seed, cfg)).collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed);
            let v = json!({
                "passed": passed,
                "suites": reports.iter().map(|r| serde_json::to_value(r).expect("report")).collect::<Vec<_>>(),
            });
            if passed {
                Outcome::Ok(v)
            } else {
                Outcome::Violation(v)
            }
        }
        Command::U3Check { max_length, threshold } => {
            if *max_length > cfg.max_word_length {
                return Err(Failure::Usage(format!("--max-length exceeds the word-length cap {}", cfg.max_word_length)));
            }
            let rep = free_group_u3_check(*max_length, *threshold)?;
            let v = serde_json::to_value(&rep).expect("report");
            if rep.passed {
                Outcome::Ok(v)
            } else {
                Outcome::Violation(v)
            }
        }
    })
}

fn render(v: &Value, cmd: &Command, format: Format) -> String {
    match (format, cmd) {
        (Format::Json, _) => output::to_json_string(v) + "\n",
        (Format::Text, Command::Verify { .. }) => {
            let mut s = String::new();
            for suite in v["suites"].as_array().into_iter().flatten() {
                let mark = |p: &Value| if p.as_bool() == Some(true) { "PASS" } else { "FAIL" };
                s += &format!("{} {}\n", mark(&suite["passed"]), suite["suite"].as_str().unwrap_or(""));
                for c in suite["checks"].as_array().into_iter().flatten() {
                    s += &format!("  {} {}\n", mark(&c["passed"]), c["name"].as_str().unwrap_or(""));
                }
            }
            s
        }
        (Format::Text, _) => output::to_text(v),
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = &cli.run;
    let cfg = Config {
        tau_alg: r.tau_alg,
        tau_norm: r.tau_norm,
        tau_spec: r.tau_spec,
        tau_group: r.tau_group,
        order_cap: r.order_cap,
        closure_cap: r.closure_cap,
        max_word_length: r.max_word_length,
        ..Config::default()
    };
    let result = cfg.validate().map_err(Failure::from).and_then(|_| run(&cli.command, &cfg, r.seed));
    let (value, code) = match result {
        Ok(Outcome::Ok(v)) => (v, 0),
        Ok(Outcome::Violation(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Precision(msg)) => {
            eprintln!("precision failure: {msg}");
            return ExitCode::from(3);
        }
    };
    if let Err(Failure::Usage(msg) | Failure::Precision(msg)) = emit(&render(&value, &cli.command, r.format), r.output.as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
