//! `sympdec`: exact stable decompositions of symplectic derivation Lie
//! algebras, invariant dimensions, and the cross-checking oracle, with
//! JSON or table output.
//!
//! Exit codes: 0 success/verified, 1 usage error, 2 verification failure,
//! 3 resource cap or unimplemented size.

mod cache;
mod envelope;
mod partitions;
mod render;

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use envelope::Envelope;
use partitions::{parse_partition, partition_to_json};
use render::render_table;
use sympdec_core as core;
use sympdec_core::{Decomposition, Error as CoreError, OracleCaps, Partition, Source};

#[derive(Parser)]
#[command(
    name = "sympdec",
    version,
    about = "Exact decompositions of symplectic derivation Lie algebras"
)]
struct Cli {
    /// Output format; defaults to table on a terminal, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Bypass the on-disk decomposition cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algebra {
    H,
    Lie,
    Assoc,
}

impl Algebra {
    fn name(self) -> &'static str {
        match self {
            Algebra::H => "h",
            Algebra::Lie => "lie",
            Algebra::Assoc => "assoc",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Characters,
    Symmetry,
    Dimensions,
    Oracle,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible decomposition of h(k), lie(k) or assoc(k).
    Decompose(DecomposeArgs),
    /// Conjugate-symmetry verdict for a decomposition (exit 2 when broken).
    Symmetry(SymmetryArgs),
    /// Sp-invariant dimensions of h(k), stable or per genus.
    Invariants(InvariantsArgs),
    /// Class functions and irreducible character values.
    Character(CharacterArgs),
    /// Run a verification suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Brute-force oracle computations (independent of the character path).
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long, value_enum)]
    algebra: Algebra,
    #[arg(long)]
    degree: u32,
    /// Annotate each row with its GL(2g) dimension at this genus.
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Args)]
struct SymmetryArgs {
    #[arg(long, value_enum)]
    algebra: Algebra,
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long)]
    degree: u32,
    /// Report the stable value (genus large).
    #[arg(long, conflicts_with = "genus")]
    stable: bool,
    /// Report the value at one genus.
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Args)]
struct CharacterArgs {
    /// One of: w, l, induced, irreducible.
    #[arg(long)]
    kind: String,
    /// Degree k for w/l/induced.
    #[arg(long)]
    degree: Option<u32>,
    /// Young diagram for --kind irreducible, e.g. "3,1,1".
    #[arg(long)]
    lambda: Option<String>,
    /// Cycle type to evaluate on, e.g. "5" or "2^2,1".
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 12)]
    max_degree: u32,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Kernel dimension of the bracket map at one (genus, degree).
    Kernel(OracleSizeArgs),
    /// sp(2g)-invariant dimension of h_{g,1}(k) by exact linear algebra.
    SpInvariants(OracleSizeArgs),
    /// Degree-k decomposition of the associative derivation algebra.
    Assoc(OracleAssocArgs),
}

#[derive(Args)]
struct OracleSizeArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct OracleAssocArgs {
    #[arg(long)]
    degree: u32,
    /// Genus to build the space at (default: smallest stable genus).
    #[arg(long)]
    genus: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() {
        Format::Table
    } else {
        Format::Json
    });

    let outcome = match &cli.command {
        Command::Decompose(args) => cmd_decompose(args, format, cli.no_cache),
        Command::Symmetry(args) => cmd_symmetry(args, format, cli.no_cache),
        Command::Invariants(args) => cmd_invariants(args, format),
        Command::Character(args) => cmd_character(args, format),
        Command::Verify(args) => cmd_verify(args, format),
        Command::Oracle(args) => cmd_oracle(args, format),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) => ExitCode::from(1),
                CliError::Core(CoreError::ResourceCap { .. }) => ExitCode::from(3),
                CliError::Core(_) => ExitCode::from(1),
            }
        }
    }
}

enum CliError {
    Usage(String),
    Core(CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type CmdResult = Result<ExitCode, CliError>;

/// Decomposition payload shared by the cache and the commands: entries in
/// canonical order, multiplicities as decimal strings.
fn decomposition_payload(dec: &Decomposition, algebra: &str, degree: u32) -> Value {
    let entries: Vec<Value> = dec
        .entries()
        .map(|(lam, m)| {
            json!({
                "multiplicity": m.to_string(),
                "partition": partition_to_json(lam),
            })
        })
        .collect();
    json!({
        "algebra": algebra,
        "boxes": dec.degree(),
        "degree": degree,
        "entries": entries,
    })
}

fn decomposition_from_payload(payload: &Value, source: Source) -> Option<Decomposition> {
    let boxes = payload.get("boxes")?.as_u64()? as u32;
    let mut entries = Vec::new();
    for e in payload.get("entries")?.as_array()? {
        let parts: Vec<u32> = e
            .get("partition")?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()?;
        let mult: num_bigint::BigUint = e.get("multiplicity")?.as_str()?.parse().ok()?;
        entries.push((Partition::new(parts).ok()?, mult));
    }
    Some(Decomposition::from_entries(boxes, source, entries))
}

/// Computes (or loads) a decomposition, writing through the cache.
fn obtain_decomposition(
    algebra: Algebra,
    degree: u32,
    no_cache: bool,
) -> Result<Decomposition, CliError> {
    if degree < 1 {
        return Err(usage("--degree must be at least 1"));
    }
    let source = match algebra {
        Algebra::H => Source::H { k: degree },
        Algebra::Lie => Source::Lie { k: degree },
        Algebra::Assoc => Source::Assoc { k: degree },
    };
    if !no_cache {
        if let Some(payload) = cache::load(algebra.name(), degree) {
            if let Some(dec) = decomposition_from_payload(&payload, source) {
                return Ok(dec);
            }
        }
    }
    let dec = match algebra {
        Algebra::H => core::decompose_h(degree),
        Algebra::Lie => core::decompose_lie(degree),
        Algebra::Assoc => {
            let caps = OracleCaps::default();
            let genus = (degree + 3) / 2;
            core::assoc_decompose(genus, degree, &caps)?
        }
    };
    if !no_cache {
        cache::store(
            algebra.name(),
            degree,
            &decomposition_payload(&dec, algebra.name(), degree),
        );
    }
    Ok(dec)
}

fn emit(envelope: Value, format: Format, table: impl FnOnce(&Value) -> String) -> ExitCode {
    match format {
        Format::Json => println!("{}", serde_json::to_string(&envelope).unwrap()),
        Format::Table => print!("{}", table(&envelope)),
    }
    ExitCode::SUCCESS
}

fn cmd_decompose(args: &DecomposeArgs, format: Format, no_cache: bool) -> CmdResult {
    let env = Envelope::start("decompose")
        .param("algebra", args.algebra.name())
        .param("degree", args.degree);
    let dec = obtain_decomposition(args.algebra, args.degree, no_cache)?;
    let mut payload = decomposition_payload(&dec, args.algebra.name(), args.degree);
    if let Some(g) = args.genus {
        if g < 1 {
            return Err(usage("--genus must be at least 1"));
        }
        let entries = payload["entries"].as_array_mut().unwrap();
        for ((lam, _), entry) in dec.entries().zip(entries.iter_mut()) {
            entry["gl_dimension"] = Value::String(core::gl_dimension(lam, 2 * g).to_string());
        }
        payload["genus"] = json!(g);
        payload["total_dimension"] = Value::String(core::dimension_of(&dec, g).to_string());
    }
    let env = match args.genus {
        Some(g) => env.param("genus", g),
        None => env,
    };
    Ok(emit(env.finish(payload), format, |v| {
        let p = &v["payload"];
        let with_dims = p.get("genus").is_some();
        let headers: Vec<&str> = if with_dims {
            vec!["partition", "multiplicity", "gl_dimension"]
        } else {
            vec!["partition", "multiplicity"]
        };
        let rows: Vec<Vec<String>> = p["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let mut row = vec![
                    compact(&e["partition"]),
                    e["multiplicity"].as_str().unwrap().to_string(),
                ];
                if with_dims {
                    row.push(e["gl_dimension"].as_str().unwrap().to_string());
                }
                row
            })
            .collect();
        let mut out = render_table(&headers, &rows);
        if with_dims {
            out.push_str(&format!(
                "total dimension at genus {}: {}\n",
                p["genus"],
                p["total_dimension"].as_str().unwrap()
            ));
        }
        out
    }))
}

fn cmd_symmetry(args: &SymmetryArgs, format: Format, no_cache: bool) -> CmdResult {
    let source = match args.algebra {
        Algebra::H => Source::H { k: args.degree },
        Algebra::Lie => Source::Lie { k: args.degree },
        Algebra::Assoc => Source::Assoc { k: args.degree },
    };
    let dec = obtain_decomposition(args.algebra, args.degree, no_cache)?;
    let report = core::check_conjugate_symmetry(&dec);
    let expected = if core::symmetry_guaranteed(source) {
        "guaranteed"
    } else {
        "not-guaranteed"
    };
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "conjugate": partition_to_json(&v.conjugate),
                "conjugate_multiplicity": v.conjugate_multiplicity.to_string(),
                "multiplicity": v.multiplicity.to_string(),
                "partition": partition_to_json(&v.partition),
            })
        })
        .collect();
    let payload = json!({
        "algebra": args.algebra.name(),
        "degree": args.degree,
        "expected": expected,
        "symmetric": report.symmetric,
        "violations": violations,
    });
    let env = Envelope::start("symmetry")
        .param("algebra", args.algebra.name())
        .param("degree", args.degree)
        .finish(payload);
    let code = if report.symmetric {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    };
    emit(env, format, |v| {
        let p = &v["payload"];
        let mut out = format!(
            "algebra {}  degree {}  expected: {}  verdict: {}\n",
            p["algebra"].as_str().unwrap(),
            p["degree"],
            p["expected"].as_str().unwrap(),
            if p["symmetric"].as_bool().unwrap() {
                "symmetric"
            } else {
                "asymmetric"
            }
        );
        let viol = p["violations"].as_array().unwrap();
        if !viol.is_empty() {
            let rows: Vec<Vec<String>> = viol
                .iter()
                .map(|e| {
                    vec![
                        compact(&e["partition"]),
                        e["multiplicity"].as_str().unwrap().to_string(),
                        compact(&e["conjugate"]),
                        e["conjugate_multiplicity"].as_str().unwrap().to_string(),
                    ]
                })
                .collect();
            out.push_str(&render_table(
                &["partition", "mult", "conjugate", "conj mult"],
                &rows,
            ));
        }
        out
    });
    Ok(code)
}

fn cmd_invariants(args: &InvariantsArgs, format: Format) -> CmdResult {
    if !args.stable && args.genus.is_none() {
        return Err(usage("pass --stable or --genus G"));
    }
    let k = args.degree;
    if k < 1 {
        return Err(usage("--degree must be at least 1"));
    }
    let mut values = Vec::new();
    if args.stable {
        values.push(json!({
            "dimension": core::stable_invariant_dim(k).to_string(),
            "genus": "stable",
            "method": "stable-even-column",
        }));
    }
    if let Some(g) = args.genus {
        if g < 1 {
            return Err(usage("--genus must be at least 1"));
        }
        let (dim, method) = if g == 1 && k.is_multiple_of(2) {
            (core::genus_one_invariant_dim(k)?, "genus-one")
        } else {
            (core::unstable_invariant_dim(k, g), "unstable")
        };
        values.push(json!({
            "dimension": dim.to_string(),
            "genus": g,
            "method": method,
        }));
    }
    let payload = json!({ "degree": k, "values": values });
    let env = Envelope::start("invariants")
        .param("degree", k)
        .param(
            "scope",
            if args.stable {
                "stable".to_string()
            } else {
                format!("genus-{}", args.genus.unwrap())
            },
        )
        .finish(payload);
    Ok(emit(env, format, |v| {
        let rows: Vec<Vec<String>> = v["payload"]["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                vec![
                    match &e["genus"] {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    },
                    e["dimension"].as_str().unwrap().to_string(),
                    e["method"].as_str().unwrap().to_string(),
                ]
            })
            .collect();
        render_table(&["genus", "dimension", "method"], &rows)
    }))
}

fn class_function_payload(cf: &core::ClassFunction) -> Vec<Value> {
    let mut support: Vec<_> = cf.support().collect();
    support.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    support
        .into_iter()
        .map(|(mu, v)| {
            json!({
                "class": partition_to_json(mu),
                "value": v.to_string(),
            })
        })
        .collect()
}

fn cmd_character(args: &CharacterArgs, format: Format) -> CmdResult {
    match args.kind.as_str() {
        "w" | "l" | "induced" => {
            let k = args
                .degree
                .ok_or_else(|| usage("--degree is required for this kind"))?;
            if k < 1 {
                return Err(usage("--degree must be at least 1"));
            }
            let cf = match args.kind.as_str() {
                "w" => core::chi_w(k),
                "l" => core::chi_l(k),
                _ => core::chi_induced(k),
            };
            let payload = json!({
                "degree": k,
                "group_degree": cf.degree(),
                "kind": args.kind,
                "values": class_function_payload(&cf),
            });
            let env = Envelope::start("character")
                .param("degree", k)
                .param("kind", args.kind.as_str())
                .finish(payload);
            Ok(emit(env, format, |v| {
                let rows: Vec<Vec<String>> = v["payload"]["values"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| vec![compact(&e["class"]), e["value"].as_str().unwrap().to_string()])
                    .collect();
                render_table(&["class", "value"], &rows)
            }))
        }
        "irreducible" => {
            let lam = parse_partition(
                args.lambda
                    .as_deref()
                    .ok_or_else(|| usage("--lambda is required for --kind irreducible"))?,
            )
            .map_err(usage)?;
            let mu = parse_partition(
                args.class
                    .as_deref()
                    .ok_or_else(|| usage("--class is required for --kind irreducible"))?,
            )
            .map_err(usage)?;
            let value = core::mn_character(&lam, &mu)?;
            let payload = json!({
                "class": partition_to_json(&mu),
                "kind": "irreducible",
                "lambda": partition_to_json(&lam),
                "value": value.to_string(),
            });
            let env = Envelope::start("character")
                .param("class", args.class.as_deref().unwrap())
                .param("kind", "irreducible")
                .param("lambda", args.lambda.as_deref().unwrap())
                .finish(payload);
            Ok(emit(env, format, |v| {
                format!(
                    "chi_{}({}) = {}\n",
                    compact(&v["payload"]["lambda"]),
                    compact(&v["payload"]["class"]),
                    v["payload"]["value"].as_str().unwrap()
                )
            }))
        }
        other => Err(usage(format!(
            "unknown --kind '{other}' (expected w, l, induced or irreducible)"
        ))),
    }
}

fn suite_payload(report: &core::SuiteReport) -> Value {
    json!({
        "checks": report
            .checks
            .iter()
            .map(|c| json!({
                "detail": c.detail,
                "name": c.name,
                "passed": c.passed,
            }))
            .collect::<Vec<_>>(),
        "passed": report.all_passed(),
        "suite": report.suite,
    })
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> CmdResult {
    if args.max_degree < 1 {
        return Err(usage("--max-degree must be at least 1"));
    }
    let reports = match args.suite {
        Suite::Characters => vec![core::characters_suite(args.max_degree)],
        Suite::Symmetry => vec![core::symmetry_suite(args.max_degree)],
        Suite::Dimensions => vec![core::dimensions_suite(args.max_degree)],
        Suite::Oracle => vec![core::oracle_suite(args.max_degree)],
        Suite::All => core::all_suites(args.max_degree),
    };
    let all_passed = reports.iter().all(|r| r.all_passed());
    let payload = json!({
        "passed": all_passed,
        "suites": reports.iter().map(suite_payload).collect::<Vec<_>>(),
    });
    let env = Envelope::start("verify")
        .param("max_degree", args.max_degree)
        .param(
            "suite",
            match args.suite {
                Suite::Characters => "characters",
                Suite::Symmetry => "symmetry",
                Suite::Dimensions => "dimensions",
                Suite::Oracle => "oracle",
                Suite::All => "all",
            },
        )
        .finish(payload);
    let code = if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    };
    emit(env, format, |v| {
        let mut out = String::new();
        for suite in v["payload"]["suites"].as_array().unwrap() {
            out.push_str(&format!("suite: {}\n", suite["suite"].as_str().unwrap()));
            let rows: Vec<Vec<String>> = suite["checks"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| {
                    vec![
                        c["name"].as_str().unwrap().to_string(),
                        if c["passed"].as_bool().unwrap() {
                            "PASS".to_string()
                        } else {
                            "FAIL".to_string()
                        },
                        c["detail"].as_str().unwrap().to_string(),
                    ]
                })
                .collect();
            out.push_str(&render_table(&["check", "result", "detail"], &rows));
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {}\n",
            if v["payload"]["passed"].as_bool().unwrap() {
                "PASS"
            } else {
                "FAIL"
            }
        ));
        out
    });
    Ok(code)
}

fn cmd_oracle(cmd: &OracleCommand, format: Format) -> CmdResult {
    let caps = OracleCaps::default();
    match cmd {
        OracleCommand::Kernel(args) => {
            if args.genus < 1 || args.degree < 1 {
                return Err(usage("--genus and --degree must be at least 1"));
            }
            let dim = core::bracket_kernel_dimension(args.genus, args.degree, &caps)?;
            let payload = json!({
                "degree": args.degree,
                "genus": args.genus,
                "kernel_dimension": dim.to_string(),
                "method": "oracle",
            });
            let env = Envelope::start("oracle-kernel")
                .param("degree", args.degree)
                .param("genus", args.genus)
                .finish(payload);
            Ok(emit(env, format, |v| {
                format!(
                    "kernel dimension of h_(g={},1)({}) = {}\n",
                    v["payload"]["genus"],
                    v["payload"]["degree"],
                    v["payload"]["kernel_dimension"].as_str().unwrap()
                )
            }))
        }
        OracleCommand::SpInvariants(args) => {
            if args.genus < 1 || args.degree < 1 {
                return Err(usage("--genus and --degree must be at least 1"));
            }
            let dim = core::sp_invariant_dimension(args.genus, args.degree, &caps)?;
            let payload = json!({
                "degree": args.degree,
                "dimension": dim.to_string(),
                "genus": args.genus,
                "method": "oracle",
            });
            let env = Envelope::start("oracle-sp-invariants")
                .param("degree", args.degree)
                .param("genus", args.genus)
                .finish(payload);
            Ok(emit(env, format, |v| {
                format!(
                    "sp-invariant dimension at genus {}, degree {} = {}\n",
                    v["payload"]["genus"],
                    v["payload"]["degree"],
                    v["payload"]["dimension"].as_str().unwrap()
                )
            }))
        }
        OracleCommand::Assoc(args) => {
            if args.degree < 1 {
                return Err(usage("--degree must be at least 1"));
            }
            let genus = args.genus.unwrap_or((args.degree + 3) / 2);
            if genus < 1 {
                return Err(usage("--genus must be at least 1"));
            }
            let dec = core::assoc_decompose(genus, args.degree, &caps)?;
            let mut payload = decomposition_payload(&dec, "assoc", args.degree);
            payload["method"] = Value::String("oracle".to_string());
            payload["computed_at_genus"] = json!(genus);
            let env = Envelope::start("oracle-assoc")
                .param("degree", args.degree)
                .param("genus", genus)
                .finish(payload);
            Ok(emit(env, format, |v| {
                let rows: Vec<Vec<String>> = v["payload"]["entries"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| {
                        vec![
                            compact(&e["partition"]),
                            e["multiplicity"].as_str().unwrap().to_string(),
                        ]
                    })
                    .collect();
                render_table(&["partition", "multiplicity"], &rows)
            }))
        }
    }
}

/// Compact JSON array rendering for tables: `[2,2]` instead of `[2, 2]`.
fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
        other => other.to_string(),
    }
}
