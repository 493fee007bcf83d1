//! `qdual`: check self-duality and duality of prime monotone DNF files.
//!
//! Exit codes: 0 when the answer is true, 1 when it is false, 2 on any input
//! or configuration error. `bench` exits 1 if any run rejected an input that
//! brute force accepts.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdual::bench::{self, BenchConfig, Family};
use qdual::classical::Classical;
use qdual::corpus::AntichainParams;
use qdual::pipeline::{cross_validate, Agreement, CrossValidation};
use qdual::{
    generate_majority_phi, parse_dnf, quantum_dual_pair, quantum_self_dual, BooleanOracle, Error,
    MonotoneDNF, Route, SimConfig, Verdict, VerdictTrace,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "qdual",
    version,
    about = "Quantum-simulated duality checks for monotone DNFs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a formula is self-dual.
    SelfDual {
        path: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide whether the second formula is the dual of the first.
    Dual {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a generated formula in .dnf format.
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run a corpus and emit per-instance query counts as CSV.
    Bench {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchFamily::Random)]
        family: BenchFamily,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Counting register width (at least 2).
    #[arg(long)]
    t: Option<usize>,
    /// Accept only y = 2^(t-2) in the counting step.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t = Method::Quantum)]
    method: Method,
    #[arg(long)]
    json: bool,
    /// Drop implicants that contain another implicant instead of failing.
    #[arg(long)]
    minimize: bool,
}

impl RunArgs {
    fn sim_config(&self) -> SimConfig {
        SimConfig {
            seed: self.seed,
            strict: self.strict,
            counting_width: self.t,
            ..SimConfig::default()
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Quantum,
    Classical,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RouteArg {
    Direct,
    Reduction,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Direct => Route::Direct,
            RouteArg::Reduction => Route::Reduction,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenFamily {
    Majority,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BenchFamily {
    Random,
    Planted,
}

/// Failure carrying the process exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::SelfDual { path, run } => cmd_self_dual(&path, &run),
        Command::Dual { f, g, route, run } => cmd_dual(&f, &g, route.into(), &run),
        Command::Gen { family, n, output } => cmd_gen(family, n, output.as_deref()),
        Command::Bench {
            n_min,
            n_max,
            instances,
            seed,
            family,
            output,
        } => cmd_bench(n_min, n_max, instances, seed, family, output.as_deref()),
    }
}

fn read_dnf(path: &Path, minimize: bool) -> Result<MonotoneDNF, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_dnf(&text, minimize).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_classical_cap(n: usize) -> Result<(), Failure> {
    let cap = Classical::default().arity_cap;
    if n > cap {
        return Err(Error::ArityTooLarge { arity: n, cap }.into());
    }
    Ok(())
}

fn cmd_self_dual(path: &Path, run: &RunArgs) -> Result<bool, Failure> {
    let f = read_dnf(path, run.minimize)?;
    if run.method == Method::Classical {
        let verdict = Classical::default().is_self_dual_brute(&BooleanOracle::from_dnf(&f))?;
        return Ok(report_classical("self-dual", &verdict, run.json));
    }
    if run.method == Method::Both {
        check_classical_cap(f.num_vars())?;
    }
    let trace = quantum_self_dual(&f, &run.sim_config())?;
    let check = match run.method {
        Method::Both => Some(cross_validate(&f, None, &trace)?),
        _ => None,
    };
    Ok(report_quantum(
        "self-dual",
        &trace,
        check.as_ref(),
        run.json,
    ))
}

fn cmd_dual(f: &Path, g: &Path, route: Route, run: &RunArgs) -> Result<bool, Failure> {
    let f = read_dnf(f, run.minimize)?;
    let g = read_dnf(g, run.minimize)?;
    if f.num_vars() != g.num_vars() {
        return Err(Error::ArityMismatch {
            left: f.num_vars(),
            right: g.num_vars(),
        }
        .into());
    }
    if run.method == Method::Classical {
        let verdict = Classical::default()
            .is_dual_pair_brute(&BooleanOracle::from_dnf(&f), &BooleanOracle::from_dnf(&g))?;
        return Ok(report_classical("dual", &verdict, run.json));
    }
    if run.method == Method::Both {
        check_classical_cap(f.num_vars())?;
    }
    let trace = quantum_dual_pair(&f, &g, &run.sim_config(), route)?;
    let check = match run.method {
        Method::Both => Some(cross_validate(&f, Some(&g), &trace)?),
        _ => None,
    };
    Ok(report_quantum("dual", &trace, check.as_ref(), run.json))
}

fn describe(verdict: &Verdict) -> String {
    match verdict.witness {
        Some(x) => format!("{} ({:?}, witness {x})", verdict.answer, verdict.reason),
        None => format!("{} ({:?})", verdict.answer, verdict.reason),
    }
}

fn report_classical(label: &str, verdict: &Verdict, json: bool) -> bool {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "final": verdict })).unwrap()
        );
    } else {
        println!("{label}: {} [classical]", describe(verdict));
    }
    verdict.answer
}

fn report_quantum(
    label: &str,
    trace: &VerdictTrace,
    check: Option<&CrossValidation>,
    json: bool,
) -> bool {
    if json {
        match check {
            Some(c) => println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "trace": trace, "cross_validation": c }))
                    .unwrap()
            ),
            None => println!("{}", trace.to_json()),
        }
    } else {
        println!("{label}: {}", describe(&trace.verdict));
        for s in &trace.steps {
            let m_hat = s.m_hat.map(|m| format!(" m_hat={m}")).unwrap_or_default();
            println!(
                "  step {} {:?}: measured {:?}{m_hat} queries {} -> {:?}",
                s.step, s.kind, s.measured, s.queries, s.decision
            );
        }
        let q = trace.queries;
        println!(
            "queries: dj={} counting={} grover={} classical={}",
            q.dj, q.counting, q.grover, q.classical
        );
        if let Some(c) = check {
            println!(
                "classical: {}; agreement: {:?}",
                describe(&c.classical),
                c.agreement
            );
        }
    }
    if check.is_some_and(|c| c.agreement == Agreement::Defect) {
        eprintln!("warning: quantum rejected an input that brute force accepts");
    }
    trace.answer()
}

fn cmd_gen(family: GenFamily, n: usize, output: Option<&Path>) -> Result<bool, Failure> {
    let f = match family {
        GenFamily::Majority => generate_majority_phi(n)?,
    };
    let text = f.to_dnf_string();
    let count = f.implicants().len();
    match output {
        Some(path) => {
            fs::write(path, text)?;
            println!("implicants: {count}");
        }
        None => {
            print!("{text}");
            eprintln!("implicants: {count}");
        }
    }
    Ok(true)
}

fn cmd_bench(
    n_min: usize,
    n_max: usize,
    instances: usize,
    seed: u64,
    family: BenchFamily,
    output: Option<&Path>,
) -> Result<bool, Failure> {
    let config = BenchConfig {
        n_min,
        n_max,
        instances,
        seed,
        family: match family {
            BenchFamily::Random => Family::Random,
            BenchFamily::Planted => Family::Planted,
        },
        sim: SimConfig::default(),
    };
    let rows = bench::run_bench(&config)?;

    let mut csv = Vec::new();
    bench::write_csv(&rows, &mut csv)?;
    let mut log: Box<dyn Write> = match output {
        Some(path) => {
            fs::write(path, &csv)?;
            Box::new(io::stdout())
        }
        None => {
            io::stdout().write_all(&csv)?;
            Box::new(io::stderr())
        }
    };

    let sim = &config.sim;
    writeln!(
        log,
        "# family={:?} seed={seed} instances={instances} n={n_min}..={n_max} lambda={} R={}",
        config.family, sim.growth, sim.restarts
    )?;
    if config.family == Family::Random {
        let p = AntichainParams::for_arity(n_max);
        writeln!(
            log,
            "# generator: k in 1..=2n implicants, sizes in 1..=min(n, ceil(n/2)+1) (n={n_max}: {p:?})"
        )?;
    }
    writeln!(log, "n,mean_grover_queries,bound_9x2^(n/2)")?;
    for (n, mean) in bench::mean_grover_queries(&rows) {
        writeln!(log, "{n},{mean:.2},{:.2}", 9.0 * (n as f64 / 2.0).exp2())?;
    }
    let defects = rows
        .iter()
        .filter(|r| r.classical_answer && !r.quantum_answer)
        .count();
    let misses = rows.iter().filter(|r| !r.agree).count() - defects;
    writeln!(
        log,
        "# rows={} disagreements={misses} defects={defects}",
        rows.len()
    )?;
    Ok(defects == 0)
}
