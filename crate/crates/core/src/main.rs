use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cwpoly::constructors::{fat_point_ideal, layered_sum, principal_borel, socle, veronese_type};
use cwpoly::experiment::{self, describe_counterexample, ExperimentParams, Report, Target, Verdict};
use cwpoly::io::{
    from_json_str, ideal_to_text, monomials_from_rows, parse_ideal, parse_multicomplex,
    read_to_string, IdealJson, MulticomplexJson, OrderJson, ShellingJson, WitnessJson,
};
use cwpoly::linear_quotients::{
    search_lq_order, synthesize_lq_order, verify_linear_quotients, GeneratorOrder, SearchOutcome,
    DEFAULT_SEARCH_BUDGET,
};
use cwpoly::multicomplex::{
    facet_ideal, ideal_to_multicomplex, ideal_to_multicomplex_on_support, search_shelling_order,
    shelling_order, verify_shelling, Multicomplex, ShellingCertificate, ShellingSearch,
};
use cwpoly::polymatroid::{
    has_strong_exchange, is_componentwise_polymatroidal, is_polymatroidal,
    verify_dual_exchange_bounded, verify_exchange_condition_bounded, ExchangeVerdict,
};
use cwpoly::monomial::parse_factors;
use cwpoly::random::SizeParams;
use cwpoly::{EquigeneratedIdeal, Error, Monomial, MonomialIdeal};

/// Componentwise polymatroidal ideals: exchange checks, linear-quotients orders, shellings
/// and seeded experiments.
///
/// Exit codes: 0 the property holds, 1 it fails (a witness is printed), 2 usage or input error.
#[derive(Parser, Debug)]
#[command(name = "cwpoly", version)]
struct Cli {
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Degree cap for bounded verifiers (default: top generator degree + 2).
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of variables for text input (default: the largest index that occurs).
    #[arg(long = "nvars", global = true)]
    nvars: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or cross-check an exchange property of an ideal.
    Check {
        #[arg(long, value_enum)]
        mode: CheckMode,
        input: PathBuf,
    },
    /// Produce a linear-quotients order of G(I).
    Order {
        #[arg(long, value_enum, default_value_t = Strategy::Paper)]
        strategy: Strategy,
        /// Skip the componentwise polymatroidal precheck before synthesis.
        #[arg(long)]
        unchecked: bool,
        input: PathBuf,
    },
    /// Verify a given generator order (order JSON or one monomial per line).
    VerifyOrder { input: PathBuf, order: PathBuf },
    /// Build an ideal from a family or an operation.
    #[command(subcommand)]
    Construct(Construct),
    /// Verify or synthesize a shelling of a multicomplex.
    Shell {
        #[arg(long, value_enum)]
        action: ShellAction,
        /// Facet order to verify (order JSON or one monomial per line).
        #[arg(long)]
        order: Option<PathBuf>,
        input: PathBuf,
    },
    /// Run a seeded experiment and write a JSON-lines report.
    Experiment(ExperimentArgs),
    /// Convert between ideal and multicomplex JSON.
    Convert {
        /// Restrict an ideal to the variables dividing some generator.
        #[arg(long)]
        restrict: bool,
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Cwp,
    Polymatroidal,
    Strong,
    ExchangeBounded,
    DualBounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Paper,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ShellAction {
    Verify,
    Synthesize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Powers,
    Socle,
    CwlqVsLq,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Veronese type ideal: all degree-d monomials bounded by a.
    Veronese {
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        #[arg(long)]
        d: u32,
    },
    /// Principal Borel ideal B(u).
    Borel {
        #[arg(long)]
        u: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Intersection of powers of variable ideals, e.g. --sets 1,2,3/1,3,4 --k 2,2.
    Fatpoints {
        #[arg(long)]
        sets: String,
        #[arg(long, value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long)]
        n: usize,
    },
    /// Sum of equigenerated layers, validated unless --no-validate.
    Layered {
        #[arg(long, value_delimiter = ',')]
        files: Vec<PathBuf>,
        #[arg(long)]
        no_validate: bool,
    },
    /// Socle of an equigenerated ideal.
    Socle { input: PathBuf },
    Power {
        #[arg(long)]
        k: u32,
        input: PathBuf,
    },
    Intersect { left: PathBuf, right: PathBuf },
    /// Graded component I<j>.
    Component {
        #[arg(long)]
        j: u32,
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long, value_enum, required_unless_present = "replay")]
    target: Option<TargetArg>,
    #[arg(long, required_unless_present = "replay")]
    trials: Option<u64>,
    #[arg(long, default_value_t = SizeParams::default().max_vars)]
    max_vars: usize,
    #[arg(long, default_value_t = SizeParams::default().max_degree)]
    max_degree: u32,
    #[arg(long, default_value_t = ExperimentParams::default().max_power)]
    max_power: u32,
    #[arg(long, default_value_t = ExperimentParams::default().max_gens)]
    max_gens: usize,
    /// Replay every record of an existing report instead of running trials.
    #[arg(long)]
    replay: Option<PathBuf>,
}

/// Outcome of a subcommand: the printed output and the exit code.
struct Outcome {
    json: Value,
    text: String,
    /// Printed verbatim in either format.
    raw: Option<String>,
    code: u8,
}

impl Outcome {
    fn new(json: Value, text: impl Into<String>, holds: bool) -> Self {
        Outcome {
            json,
            text: text.into(),
            raw: None,
            code: if holds { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut body = match (outcome.raw, cli.format) {
                (Some(raw), _) => raw,
                (None, Format::Json) => serde_json::to_string(&outcome.json).expect("serializable"),
                (None, Format::Text) => outcome.text,
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            if let Err(e) = emit(cli.out.as_deref(), &body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(Error::NotComponentwisePolymatroidal(w)) => {
            let json = json!({"error": "not componentwise polymatroidal", "witness": WitnessJson::from(&w)});
            let body = match cli.format {
                Format::Json => format!("{json}\n"),
                Format::Text => format!("not componentwise polymatroidal: {w}\n"),
            };
            if let Err(e) = emit(cli.out.as_deref(), &body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Check { mode, input } => cmd_check(cli, *mode, &read_ideal(cli, input)?),
        Command::Order {
            strategy,
            unchecked,
            input,
        } => cmd_order(cli, *strategy, *unchecked, &read_ideal(cli, input)?),
        Command::VerifyOrder { input, order } => {
            let ideal = read_ideal(cli, input)?;
            let order = read_order(order, ideal.nvars())?;
            let verified = verify_linear_quotients(&ideal, &order)?;
            Ok(order_outcome(&verified))
        }
        Command::Construct(c) => cmd_construct(cli, c),
        Command::Shell {
            action,
            order,
            input,
        } => cmd_shell(cli, *action, order.as_deref(), input),
        Command::Experiment(args) => cmd_experiment(cli, args),
        Command::Convert { restrict, input } => cmd_convert(*restrict, input),
    }
}

fn read_ideal(cli: &Cli, path: &Path) -> Result<MonomialIdeal, Error> {
    parse_ideal(&read_to_string(path)?, cli.nvars)
}

/// Order JSON (`{"order": [...]}`) or one monomial per line.
fn read_order(path: &Path, n: usize) -> Result<Vec<Monomial>, Error> {
    let text = read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        #[derive(serde::Deserialize)]
        struct OrderOnly {
            order: Vec<Vec<u32>>,
        }
        monomials_from_rows(n, from_json_str::<OrderOnly>(&text)?.order)
    } else {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.is_empty() {
            return Err(Error::EmptyInput);
        }
        lines.iter().map(|l| Monomial::parse(l, n)).collect()
    }
}

fn verdict_outcome(mode: &str, verdict: &ExchangeVerdict, bounded: Option<u32>) -> Outcome {
    let mut json = json!({"mode": mode, "holds": verdict.holds()});
    let mut text = verdict.holds().to_string();
    if let Some(cap) = bounded {
        json["bounded"] = json!(true);
        json["cap"] = json!(cap);
        text.push_str(&format!(" (bounded check: monomials of degree <= {cap} only)"));
    }
    if let Some(w) = verdict.witness() {
        json["witness"] = serde_json::to_value(WitnessJson::from(w)).expect("serializable");
        text.push_str(&format!("\nwitness: {w}"));
    }
    Outcome::new(json, text, verdict.holds())
}

fn cmd_check(cli: &Cli, mode: CheckMode, ideal: &MonomialIdeal) -> Result<Outcome, Error> {
    let equigenerated = || EquigeneratedIdeal::try_from(ideal.clone());
    let cap = || -> Result<u32, Error> {
        match cli.cap {
            Some(c) => Ok(c),
            None => Ok(ideal.degree_range().map(|(_, omega)| omega + 2).unwrap_or(2)),
        }
    };
    Ok(match mode {
        CheckMode::Cwp => verdict_outcome("cwp", &is_componentwise_polymatroidal(ideal), None),
        CheckMode::Polymatroidal => verdict_outcome("polymatroidal", &is_polymatroidal(&equigenerated()?), None),
        CheckMode::Strong => {
            let holds = has_strong_exchange(&equigenerated()?);
            Outcome::new(json!({"mode": "strong", "holds": holds}), holds.to_string(), holds)
        }
        CheckMode::ExchangeBounded => {
            let cap = cap()?;
            verdict_outcome("exchange-bounded", &verify_exchange_condition_bounded(ideal, cap)?, Some(cap))
        }
        CheckMode::DualBounded => {
            let cap = cap()?;
            verdict_outcome("dual-bounded", &verify_dual_exchange_bounded(ideal, cap)?, Some(cap))
        }
    })
}

fn order_text(order: &GeneratorOrder) -> String {
    let mut lines = vec![format!("valid: {}", order.is_valid())];
    for (k, u) in order.order.iter().enumerate() {
        let colon = order.certificate.iter().find(|s| s.position == k + 1);
        match colon {
            Some(step) => {
                let gens: Vec<String> = step.colon_generators.iter().map(|g| g.to_string()).collect();
                lines.push(format!("{}: {u}  colon ({})", k + 1, gens.join(", ")));
            }
            None => lines.push(format!("{}: {u}", k + 1)),
        }
    }
    lines.join("\n")
}

fn order_outcome(order: &GeneratorOrder) -> Outcome {
    Outcome::new(
        serde_json::to_value(OrderJson::from(order)).expect("serializable"),
        order_text(order),
        order.is_valid(),
    )
}

fn cmd_order(cli: &Cli, strategy: Strategy, unchecked: bool, ideal: &MonomialIdeal) -> Result<Outcome, Error> {
    let candidate = match strategy {
        Strategy::Paper => synthesize_lq_order(ideal, !unchecked)?,
        Strategy::Search => match search_lq_order(ideal, cli.budget) {
            SearchOutcome::Found(o) => o,
            other => {
                let status = other.status().as_str();
                return Ok(Outcome::new(json!({"status": status}), status, false));
            }
        },
    };
    // re-verify independently of how the order was produced
    let verified = verify_linear_quotients(ideal, &candidate.order)?;
    Ok(order_outcome(&verified))
}

fn ideal_outcome(ideal: &MonomialIdeal) -> Outcome {
    Outcome::new(
        serde_json::to_value(IdealJson::from(ideal)).expect("serializable"),
        ideal_to_text(ideal),
        true,
    )
}

fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    text.split('/')
        .map(|part| {
            part.split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| Error::Parse {
                        text: text.to_string(),
                        reason: format!("bad variable index {s:?}"),
                    })
                })
                .collect()
        })
        .collect()
}

fn cmd_construct(cli: &Cli, c: &Construct) -> Result<Outcome, Error> {
    let ideal = match c {
        Construct::Veronese { a, d } => {
            if a.is_empty() {
                return Err(Error::InvalidArgument("--a needs at least one entry".into()));
            }
            veronese_type(&Monomial::new(a.clone()), *d).into_ideal()
        }
        Construct::Borel { u, n } => {
            let n = match n {
                Some(n) => *n,
                None => parse_factors(u)?.iter().map(|f| f.0).max().unwrap_or(0),
            };
            let u = Monomial::parse(u, n)?;
            if u.is_one() {
                return Err(Error::InvalidArgument("u must have positive degree".into()));
            }
            principal_borel(&u).into_ideal()
        }
        Construct::Fatpoints { sets, k, n } => {
            let fat = fat_point_ideal(*n, &parse_sets(sets)?, k)?;
            for (i, j) in &fat.uncovered_pairs {
                eprintln!(
                    "warning: A{} ∪ A{} is not all of [{}]; componentwise polymatroidality is not guaranteed",
                    i + 1,
                    j + 1,
                    n
                );
            }
            fat.ideal
        }
        Construct::Layered { files, no_validate } => {
            let layers = files
                .iter()
                .map(|f| EquigeneratedIdeal::try_from(read_ideal(cli, f)?))
                .collect::<Result<Vec<_>, Error>>()?;
            if layers.is_empty() {
                return Err(Error::InvalidArgument("--files needs at least one layer".into()));
            }
            layered_sum(&layers, !no_validate)?
        }
        Construct::Socle { input } => socle(&EquigeneratedIdeal::try_from(read_ideal(cli, input)?)?)?.into_ideal(),
        Construct::Power { k, input } => read_ideal(cli, input)?.power(*k),
        Construct::Intersect { left, right } => {
            let a = read_ideal(cli, left)?;
            let b = read_ideal(cli, right)?;
            if a.nvars() != b.nvars() {
                return Err(Error::LengthMismatch {
                    left: a.nvars(),
                    right: b.nvars(),
                });
            }
            a.intersect(&b)
        }
        Construct::Component { j, input } => read_ideal(cli, input)?.component(*j).into_ideal(),
    };
    Ok(ideal_outcome(&ideal))
}

/// Multicomplex JSON, or any ideal input converted through its facet correspondence.
fn read_multicomplex(cli: &Cli, path: &Path) -> Result<Multicomplex, Error> {
    let text = read_to_string(path)?;
    if text.contains("\"facets\"") {
        parse_multicomplex(&text)
    } else {
        ideal_to_multicomplex(&parse_ideal(&text, cli.nvars)?)
    }
}

fn shelling_text(label: &str, c: &ShellingCertificate) -> String {
    let order: Vec<String> = c.order.iter().map(|a| a.to_string()).collect();
    let mut text = format!("{label}: {} [{}]", c.is_valid(), order.join(", "));
    if let Some(p) = c.first_failure {
        text.push_str(&format!(" (fails at position {p})"));
    }
    text
}

fn cmd_shell(cli: &Cli, action: ShellAction, order: Option<&Path>, input: &Path) -> Result<Outcome, Error> {
    let mc = read_multicomplex(cli, input)?;
    match action {
        ShellAction::Verify => {
            let path = order.ok_or_else(|| Error::InvalidArgument("verify needs --order".into()))?;
            let cert = verify_shelling(&mc, &read_order(path, mc.nvars())?)?;
            Ok(Outcome::new(
                serde_json::to_value(ShellingJson::from(&cert)).expect("serializable"),
                shelling_text("shelling", &cert),
                cert.is_valid(),
            ))
        }
        ShellAction::Synthesize => {
            let induced = shelling_order(&mc)?;
            let mut json = json!({"synthesized": ShellingJson::from(&induced), "search": null});
            let mut text = shelling_text("synthesized order is a shelling", &induced);
            let mut holds = induced.is_valid();
            if !holds {
                let search = search_shelling_order(&mc, cli.budget)?;
                let (status, found) = match &search {
                    ShellingSearch::Found(c) => ("found", Some(c)),
                    ShellingSearch::NoneFound => ("none found", None),
                    ShellingSearch::BudgetExhausted => ("budget exhausted", None),
                };
                json["search"] = json!({
                    "status": status,
                    "shelling": found.map(ShellingJson::from),
                });
                text.push_str(&format!("\nsearch: {status}"));
                if let Some(c) = found {
                    text.push('\n');
                    text.push_str(&shelling_text("searched order is a shelling", c));
                    holds = c.is_valid();
                }
            }
            Ok(Outcome::new(json, text, holds))
        }
    }
}

fn cmd_convert(restrict: bool, input: &Path) -> Result<Outcome, Error> {
    let text = read_to_string(input)?;
    if text.contains("\"facets\"") {
        let ideal = facet_ideal(&parse_multicomplex(&text)?);
        return Ok(ideal_outcome(&ideal));
    }
    let ideal = parse_ideal(&text, None)?;
    let (mc, support) = if restrict {
        ideal_to_multicomplex_on_support(&ideal)?
    } else {
        (ideal_to_multicomplex(&ideal)?, (0..ideal.nvars()).collect())
    };
    let mut json = serde_json::to_value(MulticomplexJson::from(&mc)).expect("serializable");
    if restrict {
        json["variables"] = json!(support.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    let facets: Vec<String> = mc.facets().iter().map(|f| format!("{:?}", f.exponents())).collect();
    Ok(Outcome::new(json, facets.join("\n"), true))
}

fn cmd_experiment(cli: &Cli, args: &ExperimentArgs) -> Result<Outcome, Error> {
    if let Some(path) = &args.replay {
        let file = fs::File::open(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        let report = Report::read_jsonl(BufReader::new(file))?;
        let summary = experiment::replay(&report)?;
        let json = json!({
            "records": summary.records,
            "all_match": summary.all_match(),
            "mismatched_trials": summary.mismatched_trials,
            "regenerated_mismatches": summary.regenerated_mismatches,
        });
        let text = format!("replayed {} records, all match: {}", summary.records, summary.all_match());
        return Ok(Outcome::new(json, text, summary.all_match()));
    }
    let target = match args.target.expect("required by clap") {
        TargetArg::Powers => Target::Powers,
        TargetArg::Socle => Target::Socle,
        TargetArg::CwlqVsLq => Target::CwlqVsLq,
    };
    let trials = args.trials.expect("required by clap");
    let seed = cli
        .seed
        .ok_or_else(|| Error::InvalidArgument("experiments need --seed".into()))?;
    if args.max_vars < 2 || args.max_degree < 1 {
        return Err(Error::InvalidArgument("need --max-vars >= 2 and --max-degree >= 1".into()));
    }
    let params = ExperimentParams {
        sizes: SizeParams {
            max_vars: args.max_vars,
            max_degree: args.max_degree,
        },
        max_power: args.max_power,
        max_gens: args.max_gens,
        budget: cli.budget,
    };
    let report = experiment::run(target, trials, seed, params)?;
    for r in report.records.iter().filter(|r| r.verdict == Verdict::Counterexample) {
        eprintln!("!!! {}", describe_counterexample(target, r));
    }
    let s = &report.summary;
    eprintln!(
        "{target}: {} trials, {} consistent, {} counterexamples, {} inconclusive",
        s.trials, s.consistent, s.counterexamples, s.inconclusive
    );
    let mut bytes = Vec::new();
    report.write_jsonl(&mut bytes).map_err(|e| Error::Io {
        path: "report".into(),
        reason: e.to_string(),
    })?;
    Ok(Outcome {
        json: Value::Null,
        text: String::new(),
        raw: Some(String::from_utf8(bytes).expect("JSON is UTF-8")),
        code: 0,
    })
}
