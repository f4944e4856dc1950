//! `genimp`: evaluate connectives and implications, verify their laws,
//! export surfaces and probe implication classes.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use genimp::config::{self, BijectionSpec, GeneratorSpec, NegationSpec, Operator, OperatorSpec};
use genimp::{
    check_implication_axioms, check_property, check_tnorm_axioms, classes, compare_surfaces,
    find_associativity_counterexample, residual_numeric_detailed, ClassId, Negation64, Property, PropertyReport,
    SampleSpec, SurfaceGrid,
};

#[derive(Parser, Debug)]
#[command(name = "genimp", version, about = "Generated fuzzy implications: evaluation and verification")]
struct Cli {
    /// Points per axis of the uniform pair grid.
    #[arg(long, global = true, default_value_t = 101)]
    grid: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Absolute tolerance; 1e-9 for closed forms, 1e-6 when a numeric residual is involved.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Extra uniformly random pairs.
    #[arg(long, global = true, default_value_t = 1000)]
    random: usize,
    /// Points per axis of the triple grid.
    #[arg(long, global = true, default_value_t = 21)]
    triple_grid: usize,
    /// Extra uniformly random triples.
    #[arg(long, global = true, default_value_t = 2000)]
    random_triples: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a connective or implication at (x, y), or a unary map at x.
    Eval {
        spec: String,
        x: f64,
        y: Option<f64>,
        /// Read the spec as a unary map instead.
        #[arg(long, value_enum)]
        unary: Option<Unary>,
    },
    /// Check axioms and properties; exits nonzero iff one fails.
    Verify {
        spec: String,
        /// Comma-separated: axioms, I1, I2, I3, NP, EP, IP, OP, CP[:negation], tnorm, T1..T4, associativity.
        #[arg(long, value_delimiter = ',', default_value = "axioms")]
        props: Vec<String>,
    },
    /// Numeric residual sup{t | C(x,t) <= y} of a connective.
    Residual { spec: String, x: f64, y: f64 },
    /// Write the sampled surface as CSV (x,y,value).
    Surface {
        spec: String,
        #[arg(long = "n", default_value_t = 101)]
        n: usize,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest pointwise gap between two operators.
    Compare {
        left: String,
        right: String,
        /// Exit nonzero when the gap exceeds this.
        #[arg(long)]
        max_diff: Option<f64>,
    },
    /// Run class-membership probes; exits nonzero if any class excludes.
    Classify {
        spec: String,
        #[arg(long = "class", value_delimiter = ',')]
        classes: Vec<ClassArg>,
    },
    /// Search for a counterexample; exits 1 when one is found.
    Counterexample {
        spec: String,
        #[arg(long, value_enum)]
        law: Law,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Unary {
    Generator,
    Negation,
    Bijection,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Law {
    Associativity,
    #[value(name = "EP", alias = "ep")]
    Ep,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    #[value(name = "SN", alias = "sn")]
    Sn,
    #[value(name = "R-leftcont", alias = "r")]
    R,
    #[value(name = "phi-conjugate-LK", alias = "lk")]
    Lk,
}

impl From<ClassArg> for ClassId {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Sn => ClassId::SN,
            ClassArg::R => ClassId::RLeftCont,
            ClassArg::Lk => ClassId::PhiConjugateLK,
        }
    }
}

/// A user mistake that should exit with the usage status.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ERROR: u8 = 3;

impl Cli {
    fn sample(&self, spec: &OperatorSpec) -> SampleSpec {
        SampleSpec {
            grid_n: self.grid,
            random_count: self.random,
            triple_grid_n: self.triple_grid,
            random_triple_count: self.random_triples,
            seed: self.seed,
            tolerance: self.tol.unwrap_or_else(|| spec.default_tolerance()),
        }
    }
}

fn unit(name: &str, v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Usage(format!("{name} = {v} is outside [0, 1]")).into())
    }
}

fn load_operator(arg: &str) -> Result<(OperatorSpec, Operator<f64>)> {
    let spec = config::load_operator(arg).with_context(|| format!("cannot parse spec {arg}"))?;
    let op = spec.build::<f64>()?;
    Ok((spec, op))
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(v)?) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// `CP`, `CP:N2`, `CP:standard`, or `CP:` followed by a negation spec.
fn parse_negation(arg: &str) -> Result<Negation64> {
    let spec: NegationSpec = match arg {
        "" | "standard" | "N_S" | "NS" => NegationSpec::Standard,
        s if s.starts_with('N') && s[1..].parse::<f64>().is_ok() => NegationSpec::YagerNp { p: s[1..].parse()? },
        s => config::load(s).map_err(|e| Usage(format!("bad negation {s:?}: {e}")))?,
    };
    Ok(spec.build()?)
}

fn verify(cli: &Cli, spec_arg: &str, props: &[String]) -> Result<u8> {
    let (spec, op) = load_operator(spec_arg)?;
    let s = cli.sample(&spec);
    let mut reports: Vec<PropertyReport<f64>> = Vec::new();
    for raw in props {
        let name = raw.trim();
        let (head, tail) = name.split_once(':').unwrap_or((name, ""));
        let head = head.to_ascii_uppercase();
        match (&op, head.as_str()) {
            (Operator::Implication(i), "AXIOMS") => reports.extend(check_implication_axioms(i, &s)),
            (Operator::Implication(i), "I1" | "I2" | "I3") => {
                let set = check_implication_axioms(i, &s);
                reports.push(set.get(&head).cloned().expect("axiom report present"));
            }
            (Operator::Implication(i), "NP" | "EP" | "IP" | "OP" | "CP") => {
                let prop = match head.as_str() {
                    "NP" => Property::NP,
                    "EP" => Property::EP,
                    "IP" => Property::IP,
                    "OP" => Property::OP,
                    _ => Property::CP(parse_negation(tail)?),
                };
                reports.push(check_property(i, &prop, &s));
            }
            (Operator::Connective(c), "TNORM") => reports.extend(check_tnorm_axioms(c, &s)),
            (Operator::Connective(c), "T1" | "T2" | "T3" | "T4") => {
                let set = check_tnorm_axioms(c, &s);
                reports.push(set.get(&head).cloned().expect("t-norm report present"));
            }
            (Operator::Connective(c), "ASSOCIATIVITY") => reports.push(find_associativity_counterexample(c, &s)),
            (_, "AXIOMS" | "I1" | "I2" | "I3" | "NP" | "EP" | "IP" | "OP" | "CP") => {
                bail!(Usage(format!("{name} applies to implications, not connectives")))
            }
            (_, "TNORM" | "T1" | "T2" | "T3" | "T4" | "ASSOCIATIVITY") => {
                bail!(Usage(format!("{name} applies to connectives, not implications")))
            }
            _ => bail!(Usage(format!("unknown property {name:?}"))),
        }
    }
    print_json(&reports)?;
    if !cli.json {
        for r in &reports {
            let status = if r.holds() { "holds" } else { "FAILS" };
            match &r.witness {
                Some(w) if r.fails() => eprintln!(
                    "{:<14} {status} at {:?}: {} vs {} (|d| = {:e})",
                    r.property, w.point, w.lhs, w.rhs, w.discrepancy
                ),
                _ => eprintln!("{:<14} {status} on {} samples", r.property, r.checked),
            }
        }
    }
    Ok(if reports.iter().all(PropertyReport::holds) { 0 } else { EXIT_FAIL })
}

fn eval(cli: &Cli, spec: &str, x: f64, y: Option<f64>, unary: Option<Unary>) -> Result<u8> {
    let x = unit("x", x)?;
    if let Some(kind) = unary {
        if y.is_some() {
            bail!(Usage("unary maps take a single argument".into()));
        }
        let value = match kind {
            Unary::Generator => {
                let g = config::load::<GeneratorSpec>(spec)?.build::<f64>()?;
                json!(g.eval(x)?)
            }
            Unary::Negation => json!(config::load::<NegationSpec>(spec)?.build::<f64>()?.eval(x)),
            Unary::Bijection => json!(config::load::<BijectionSpec>(spec)?.build::<f64>()?.forward(x)),
        };
        if cli.json {
            print_json(&json!({ "x": x, "value": value }))?;
        } else {
            println!("{}", value.as_str().map(str::to_string).unwrap_or_else(|| value.to_string()));
        }
        return Ok(0);
    }
    let y = unit("y", y.ok_or_else(|| Usage("binary operators need both x and y".into()))?)?;
    let (_, op) = load_operator(spec)?;
    let v = genimp::BinaryOperator::apply(&op, x, y);
    if cli.json {
        print_json(&json!({ "operator": genimp::BinaryOperator::name(&op), "x": x, "y": y, "value": v }))?;
    } else {
        println!("{v}");
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Eval { spec, x, y, unary } => eval(cli, spec, *x, *y, *unary),
        Command::Verify { spec, props } => verify(cli, spec, props),
        Command::Residual { spec, x, y } => {
            let (x, y) = (unit("x", *x)?, unit("y", *y)?);
            let (_, op) = load_operator(spec)?;
            let c = op.connective().ok_or_else(|| Usage("residual needs a connective spec".into()))?;
            let r = residual_numeric_detailed(c, x, y);
            if cli.json {
                print_json(&json!({ "connective": c.label(), "x": x, "y": y, "value": r.value, "monotone": r.monotone }))?;
            } else {
                println!("{}", r.value);
            }
            Ok(0)
        }
        Command::Surface { spec, n, output } => {
            if *n < 2 {
                bail!(Usage(format!("--n must be at least 2, got {n}")));
            }
            let (_, op) = load_operator(spec)?;
            let grid = SurfaceGrid::sample(&op, *n)?;
            match output {
                Some(path) => grid.write_csv(path)?,
                None => grid.to_writer(std::io::stdout().lock())?,
            }
            Ok(0)
        }
        Command::Compare { left, right, max_diff } => {
            let (ls, l) = load_operator(left)?;
            let (_, r) = load_operator(right)?;
            let cmp = compare_surfaces(&l, &r, &cli.sample(&ls));
            print_json(&cmp)?;
            Ok(match max_diff {
                Some(m) if cmp.max_abs_diff > *m => EXIT_FAIL,
                _ => 0,
            })
        }
        Command::Classify { spec, classes: wanted } => {
            let (os, op) = load_operator(spec)?;
            let i = op.implication().ok_or_else(|| Usage("classify needs an implication spec".into()))?;
            let s = cli.sample(&os);
            let ids: Vec<ClassId> =
                if wanted.is_empty() { ClassId::ALL.to_vec() } else { wanted.iter().map(|&c| c.into()).collect() };
            let results: Vec<_> = ids.into_iter().map(|id| classes::probe(id, i, &s)).collect();
            print_json(&results)?;
            Ok(if results.iter().any(|r| r.excluded()) { EXIT_FAIL } else { 0 })
        }
        Command::Counterexample { spec, law } => {
            let (os, op) = load_operator(spec)?;
            let s = cli.sample(&os);
            let report = match (law, &op) {
                (Law::Associativity, Operator::Connective(c)) => find_associativity_counterexample(c, &s),
                (Law::Ep, Operator::Implication(i)) => check_property(i, &Property::EP, &s),
                (Law::Associativity, _) => bail!(Usage("associativity needs a connective spec".into())),
                (Law::Ep, _) => bail!(Usage("EP needs an implication spec".into())),
            };
            print_json(&json!({ "law": report.property, "witness": report.witness, "report": report }))?;
            Ok(if report.fails() { EXIT_FAIL } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_ERROR)
            }
        }
    }
}
