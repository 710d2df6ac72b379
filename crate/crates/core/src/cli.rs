//! Command-line front end. `run` is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
//! Diagnostics go to the error stream as `error[CODE]: message`.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::boolfn::{difference_set, equivalent, truth_table, truth_table_parallel};
use crate::constructions::{
    gadget, psi_g_network, remark1, s1_network, s2_network, theorem1_verify, theorem2_verify, vc_reduction_decide,
    ReductionVariant, VcInstance,
};
use crate::dot::{network_to_dot, tree_to_dot};
use crate::error::Error;
use crate::faults::enumerate_faults_parallel;
use crate::io;
use crate::limits::Limits;
use crate::network::{Assignment, Fault, FaultType, SwitchingNetwork};
use crate::symmetric::{shannon_network, SymmetricKind, SymmetricSpec};
use crate::treediag::{
    build_tree_exact, build_tree_greedy, function_classes, lemma1_bound, run_tree, verify_tree,
};

#[derive(Debug, Parser)]
#[command(name = "faultdiag", version, about = "Constant-fault diagnosis for switching networks")]
pub struct Cli {
    /// Print run metadata (version, start time, elapsed time) to stderr.
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a network document and list invariant violations.
    Validate {
        #[arg(long)]
        network: PathBuf,
    },
    /// Generate a named network.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
        #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
        format: Format,
    },
    /// Evaluate a (faulty) network on one input.
    Eval {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        fault: Option<PathBuf>,
        /// Bits in canonical variable order, first variable leftmost.
        #[arg(long)]
        input: String,
        /// Evaluate through simple-path enumeration instead of connectivity.
        #[arg(long)]
        paths: bool,
    },
    /// Print the truth table, one `bits value` line per input.
    Table {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        fault: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the functions of a network under two faults (λ if omitted).
    Equiv {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        fault_a: Option<PathBuf>,
        #[arg(long)]
        fault_b: Option<PathBuf>,
    },
    /// Fault-set operations.
    Faults {
        #[command(subcommand)]
        which: FaultsCommand,
    },
    /// Diagnostic decision trees.
    Tree {
        #[command(subcommand)]
        which: TreeCommand,
    },
    /// Lower bounds on tree depth.
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Desk-scale checks of the depth lower bounds.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Decide problems through the diagnosis reduction.
    Reduce {
        #[command(subcommand)]
        which: ReduceCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    AtLeast,
    EqualMid,
    NotEqualMid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Q1,
    Q2,
}

impl From<Variant> for ReductionVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Q1 => ReductionVariant::Q1,
            Variant::Q2 => ReductionVariant::Q2,
        }
    }
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Parallel-pair cells in series (2n edges, implements 1).
    S1 {
        #[arg(long)]
        n: usize,
    },
    /// Alternating x_i, ~x_i path (2n edges, implements 0).
    S2 {
        #[arg(long)]
        n: usize,
    },
    /// Ladder network for a symmetric function.
    Shannon(ShannonArgs),
    /// Clause chain implementing the graph's vertex-cover condition.
    PsiG {
        #[arg(long)]
        graph: PathBuf,
    },
    /// First reduction gadget, as a problem document with R = {λ, ρ}.
    Q1(GadgetArgs),
    /// Second reduction gadget, as a problem document with R = {λ, ρ}.
    Q2(GadgetArgs),
}

#[derive(Debug, Args)]
struct ShannonArgs {
    #[arg(long)]
    n: usize,
    /// Values t_0..t_n as a bit string (t_0 leftmost).
    #[arg(long, conflicts_with = "kind")]
    spectrum: Option<String>,
    #[arg(long, value_enum, required_unless_present = "spectrum")]
    kind: Option<Kind>,
    /// Minimum number of ones, for `--kind at-least`.
    #[arg(long)]
    threshold: Option<usize>,
}

#[derive(Debug, Args)]
struct GadgetArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    m: usize,
}

#[derive(Debug, Subcommand)]
enum FaultsCommand {
    /// List every fault of the given type, λ first.
    Enum {
        #[arg(long)]
        network: PathBuf,
        /// `01`, `0` or `1`.
        #[arg(long = "type")]
        fault_type: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TreeCommand {
    /// Build a tree solving a problem document.
    Build {
        #[arg(long)]
        problem: PathBuf,
        /// Minimum depth instead of greedy splitting.
        #[arg(long)]
        exact: bool,
    },
    /// Run a tree against a network with a fault and print the output fault.
    Run {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        fault: Option<PathBuf>,
    },
    /// Check that a tree solves a problem.
    Verify {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        problem: PathBuf,
    },
    /// Graphviz rendering of a tree.
    ExportDot {
        #[arg(long)]
        tree: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Minimum distinguishing set of one function class against the others.
    Lemma1 {
        #[arg(long)]
        problem: PathBuf,
        /// Index of the base class (classes in order of first appearance in R).
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// 2^n bound on S1/S2.
    Theorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long = "type")]
        fault_type: String,
    },
    /// binom(n, ceil(n/2)) bound on a network implementing the middle-layer function.
    Theorem2 {
        #[arg(long)]
        n: usize,
        #[arg(long = "type")]
        fault_type: String,
        /// Network to test; defaults to the ladder network.
        #[arg(long)]
        network: Option<PathBuf>,
    },
    /// Central binomial coefficient bound.
    Remark1 {
        #[arg(long, default_value_t = 20)]
        max_n: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ReduceCommand {
    /// Vertex cover of size at most m; prints YES or NO.
    Vc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Variant::Q1)]
        variant: Variant,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
    /// A check ran and came out negative. The report, if any, still goes to
    /// standard output so the failing row can be inspected.
    Check { message: String, report: Option<String> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "error[{}]: {e}", e.code()),
            Failure::Io(p, e) => write!(f, "error[E_IO]: {}: {e}", p.display()),
            Failure::Check { message, .. } => write!(f, "error[E_CHECK]: {message}"),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn load_network(path: &Path) -> std::result::Result<SwitchingNetwork, Failure> {
    Ok(io::parse_network(&read(path)?)?)
}

fn load_fault(path: Option<&PathBuf>) -> std::result::Result<Fault, Failure> {
    match path {
        Some(p) => Ok(io::parse_fault(&read(p)?)?),
        None => Ok(Fault::empty()),
    }
}

fn fault_type(s: &str) -> std::result::Result<FaultType, Failure> {
    Ok(s.parse()?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let started = SystemTime::now();
    let clock = Instant::now();
    let result = execute(cli.command);
    if cli.meta {
        let meta = serde_json::json!({
            "tool": "faultdiag",
            "version": env!("CARGO_PKG_VERSION"),
            "started_unix": started.duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            "elapsed_ms": clock.elapsed().as_millis() as u64,
        });
        let _ = writeln!(err, "{meta}");
    }
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(failure) => {
            if let Failure::Check { report: Some(r), .. } = &failure {
                let _ = out.write_all(r.as_bytes());
            }
            let _ = writeln!(err, "{failure}");
            1
        }
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Validate { network } => {
            let net = load_network(&network)?;
            Ok(format!(
                "valid: {} nodes, {} edges, {} inputs\n",
                net.nodes().len(),
                net.edge_count(),
                net.arity()
            ))
        }
        Command::Gen { which, format } => generate(which, format),
        Command::Eval {
            network,
            fault,
            input,
            paths,
        } => {
            let net = load_network(&network)?;
            let fault = load_fault(fault.as_ref())?;
            let a: Assignment = input.parse()?;
            let v = if paths {
                net.path_dnf_eval(&fault, &a, &Limits::default())?
            } else {
                net.evaluate(&fault, &a)?
            };
            Ok(format!("{}\n", v as u8))
        }
        Command::Table { network, fault, jobs } => {
            let net = load_network(&network)?;
            let fault = load_fault(fault.as_ref())?;
            let f = truth_table_parallel(&net, &fault, &Limits::default(), jobs)?;
            let mut s = String::with_capacity(f.len() * (f.arity() + 3));
            for i in 0..f.len() {
                s.push_str(&Assignment::from_index(i, f.arity()).to_string());
                s.push(' ');
                s.push(if f.value(i) { '1' } else { '0' });
                s.push('\n');
            }
            Ok(s)
        }
        Command::Equiv {
            network,
            fault_a,
            fault_b,
        } => {
            let net = load_network(&network)?;
            let fa = truth_table(&net, &load_fault(fault_a.as_ref())?)?;
            let fb = truth_table(&net, &load_fault(fault_b.as_ref())?)?;
            if equivalent(&fa, &fb)? {
                Ok("EQUIVALENT\n".into())
            } else {
                let mut s = String::from("DIFFERENT\n");
                for a in difference_set(&fa, &fb)? {
                    s.push_str(&format!("{a}\n"));
                }
                Ok(s)
            }
        }
        Command::Faults {
            which: FaultsCommand::Enum {
                network,
                fault_type: t,
                jobs,
            },
        } => {
            let net = load_network(&network)?;
            let t = fault_type(&t)?;
            let faults = enumerate_faults_parallel(&net, t, &Limits::default(), jobs)?;
            Ok(io::serialize_fault_set(t, &faults))
        }
        Command::Tree { which } => tree_command(which),
        Command::Bound {
            which: BoundCommand::Lemma1 { problem, base },
        } => {
            let problem = io::parse_problem(&read(&problem)?)?;
            let classes = function_classes(&problem)?;
            let r = lemma1_bound(&classes, base)?;
            Ok(json(&serde_json::json!({
                "classes": classes.len(),
                "base": base,
                "t": r.t,
                "witness": r.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })))
        }
        Command::Verify { which } => verify_command(which),
        Command::Reduce {
            which: ReduceCommand::Vc { graph, m, variant },
        } => {
            let g = io::parse_graph(&read(&graph)?)?;
            let inst = VcInstance::new(g, m)?;
            let yes = vc_reduction_decide(&inst, variant.into())?;
            Ok(if yes { "YES\n" } else { "NO\n" }.into())
        }
    }
}

fn generate(which: GenCommand, format: Format) -> CmdResult {
    let net = match which {
        GenCommand::S1 { n } => s1_network(n)?,
        GenCommand::S2 { n } => s2_network(n)?,
        GenCommand::Shannon(args) => {
            let spec = match (args.spectrum, args.kind) {
                (Some(bits), _) => {
                    let a: Assignment = bits.parse()?;
                    if a.len() != args.n + 1 {
                        return Err(Error::Arity {
                            expected: args.n + 1,
                            found: a.len(),
                        }
                        .into());
                    }
                    SymmetricSpec::new(a.bits().to_vec())?
                }
                (None, Some(kind)) => {
                    let kind = match kind {
                        Kind::AtLeast => SymmetricKind::AtLeast {
                            threshold: args.threshold.ok_or_else(|| {
                                Error::Precondition("--kind at-least needs --threshold".into())
                            })?,
                        },
                        Kind::EqualMid => SymmetricKind::EqualMid,
                        Kind::NotEqualMid => SymmetricKind::NotEqualMid,
                    };
                    SymmetricSpec::of_kind(kind, args.n)?
                }
                (None, None) => unreachable!("clap requires one of --spectrum/--kind"),
            };
            shannon_network(&spec)
        }
        GenCommand::PsiG { graph } => psi_g_network(&io::parse_graph(&read(&graph)?)?)?,
        GenCommand::Q1(args) => return generate_gadget(ReductionVariant::Q1, args, format),
        GenCommand::Q2(args) => return generate_gadget(ReductionVariant::Q2, args, format),
    };
    Ok(match format {
        Format::Json => io::serialize_network(&net),
        Format::Dot => network_to_dot(&net, None),
    })
}

fn tree_command(which: TreeCommand) -> CmdResult {
    match which {
        TreeCommand::Build { problem, exact } => {
            let problem = io::parse_problem(&read(&problem)?)?;
            let tree = if exact {
                build_tree_exact(&problem)?
            } else {
                build_tree_greedy(&problem)?
            };
            Ok(io::serialize_tree(&tree, problem.network().arity()))
        }
        TreeCommand::Run { tree, network, fault } => {
            let (tree, _) = io::parse_tree(&read(&tree)?)?;
            let net = load_network(&network)?;
            let table = truth_table(&net, &load_fault(fault.as_ref())?)?;
            let out = run_tree(&tree, |a| table.value_at(a))?;
            Ok(io::serialize_fault(out))
        }
        TreeCommand::Verify { tree, problem } => {
            let (tree, _) = io::parse_tree(&read(&tree)?)?;
            let problem = io::parse_problem(&read(&problem)?)?;
            if verify_tree(&tree, &problem)? {
                Ok(format!(
                    "VALID depth={} nodes={}\n",
                    tree.depth(),
                    tree.node_count()
                ))
            } else {
                Err(Failure::Check {
                    message: "tree does not solve the problem".into(),
                    report: None,
                })
            }
        }
        TreeCommand::ExportDot { tree } => {
            let (tree, _) = io::parse_tree(&read(&tree)?)?;
            Ok(tree_to_dot(&tree))
        }
    }
}

fn verify_command(which: VerifyCommand) -> CmdResult {
    match which {
        VerifyCommand::Theorem1 { n, fault_type: t } => {
            let r = theorem1_verify(n, fault_type(&t)?)?;
            checked(r.holds(), json(&r), "2^n lower-bound check failed")
        }
        VerifyCommand::Theorem2 {
            n,
            fault_type: t,
            network,
        } => {
            let t = fault_type(&t)?;
            let q = match network {
                Some(p) => load_network(&p)?,
                None => {
                    let kind = if t == FaultType::Zero {
                        SymmetricKind::EqualMid
                    } else {
                        SymmetricKind::NotEqualMid
                    };
                    shannon_network(&SymmetricSpec::of_kind(kind, n)?)
                }
            };
            let r = theorem2_verify(n, t, &q)?;
            checked(r.holds(), json(&r), "binomial lower-bound check failed")
        }
        VerifyCommand::Remark1 { max_n } => {
            let rows = remark1(max_n);
            let ok = rows.iter().all(|r| r.holds());
            checked(ok, json(&rows), "central binomial bound failed")
        }
    }
}

fn checked(ok: bool, report: String, msg: &str) -> CmdResult {
    if ok {
        Ok(report)
    } else {
        Err(Failure::Check {
            message: msg.into(),
            report: Some(report),
        })
    }
}

/// `gen q1|q2` emit a whole problem document rather than a bare network.
fn generate_gadget(variant: ReductionVariant, args: GadgetArgs, format: Format) -> CmdResult {
    let g = io::parse_graph(&read(&args.graph)?)?;
    let gd = gadget(&VcInstance::new(g, args.m)?, variant)?;
    Ok(match format {
        Format::Json => io::serialize_problem(&gd.problem()?),
        Format::Dot => network_to_dot(&gd.network, None),
    })
}
