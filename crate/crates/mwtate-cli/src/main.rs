use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::json;

use mwtate::bockstein::{degeneracy_page, pages, Page};
use mwtate::checks::{run_suite, SUITES};
use mwtate::cohomology::{chow, mod2_motivic, mw_diagonal, witt_cohomology};
use mwtate::geometry::{blowup_eta_check, blowup_motive, hp1_classify, projective_bundle_hp1, Hp1Datum};
use mwtate::motives::{decompose, tensor, validate_complex, Attachment, MotiveError, NormalForm, TateComplex};
use mwtate::wittring::{CoefficientModel, GWElement};

const EXIT_MALFORMED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "mwtate", version, about = "Tate MW-motives over Euclidean fields")]
struct Cli {
    /// Coefficient model; only `minimal-euclidean` exists.
    #[arg(long, global = true, default_value = "minimal-euclidean")]
    model: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct BlocksArg {
    /// Normal form as inline JSON, e.g. `[{"kind":"free","weight":0}]`.
    #[arg(long)]
    blocks: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theory {
    Witt,
    Chow,
    ChowMod2,
    Mod2,
    MwDiagonal,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a cell complex into atomic blocks.
    Decompose {
        /// Path to complex JSON, or `-` for stdin.
        #[arg(long = "in")]
        input: String,
    },
    /// Tensor product of two normal forms.
    Tensor {
        #[arg(long, num_args = 1, required = true)]
        blocks: Vec<String>,
    },
    /// Bockstein pages of a normal form.
    Pages {
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long, conflicts_with = "range")]
        page: Option<u32>,
        /// Inclusive page range `a..b`.
        #[arg(long)]
        range: Option<String>,
    },
    /// Cohomology of a normal form.
    Cohomology {
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long, value_enum, default_value_t = Theory::Witt)]
        theory: Theory,
        /// Coefficient modulus for Witt cohomology; `0` means integral.
        #[arg(long, default_value = "0")]
        modulus: BigUint,
        /// Inclusive degree range `a..b` for the MW diagonal.
        #[arg(long, default_value = "-2..4")]
        range: String,
    },
    /// Classify a bundle on HP^1.
    ClassifyHp1 {
        #[arg(long)]
        rank: u32,
        /// Euler class `rank,signature` (rank 2).
        #[arg(long, conflicts_with = "c2", allow_hyphen_values = true)]
        euler: Option<String>,
        /// Second Chern class (rank at least 3).
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<BigInt>,
    },
    /// Cell complex of the projective bundle over HP^1 with the given Euler class.
    PbundleHp1 {
        /// Euler class `rank,signature`.
        #[arg(long, allow_hyphen_values = true)]
        euler: String,
    },
    /// Blow-up motive from a JSON request {x, z, n, th, g}.
    Blowup {
        #[arg(long = "in")]
        input: String,
    },
    /// Run a named property suite, or `all`.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Malformed(String),
    /// A report is printed on stdout before exiting.
    Validation(String),
}

impl From<MotiveError> for Failure {
    fn from(e: MotiveError) -> Self {
        match e {
            MotiveError::Json(m) => Failure::Malformed(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    json: serde_json::Value,
    table: String,
    /// Print the output but exit with a validation failure.
    failed: bool,
}

impl Output {
    fn ok(json: serde_json::Value, table: String) -> Outcome {
        Ok(Output { json, table, failed: false })
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Malformed(e.to_string()))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))
}

fn parse_blocks(s: &str) -> Result<NormalForm, Failure> {
    serde_json::from_str::<serde_json::Value>(s).map_err(|e| Failure::Malformed(e.to_string()))?;
    NormalForm::from_json(s).map_err(|e| match e {
        MotiveError::Json(m) if m.contains("invalid block") => Failure::Validation(m),
        other => other.into(),
    })
}

fn parse_gw(s: &str) -> Result<GWElement, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [r, sig] = parts.as_slice() else {
        return Err(Failure::Usage(format!("expected rank,signature, got {s:?}")));
    };
    let parse = |x: &str| x.parse::<BigInt>().map_err(|e| Failure::Usage(format!("{x:?}: {e}")));
    GWElement::new(parse(r)?, parse(sig)?).map_err(|e| Failure::Validation(e.to_string()))
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let (a, b) = s.split_once("..").ok_or_else(|| Failure::Usage(format!("expected a..b, got {s:?}")))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| Failure::Usage(format!("{x:?}: {e}")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(Failure::Usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

fn normal_form_output(a: &NormalForm) -> Outcome {
    Output::ok(serde_json::to_value(a).expect("normal forms serialise"), format!("{a}\n"))
}

fn cmd_decompose(input: &str) -> Outcome {
    let text = read_input(input)?;
    let c = TateComplex::from_json(&text)?;
    let report = validate_complex(&c);
    if !report.valid {
        return Ok(Output {
            table: format!("invalid complex: {:?}\n", report.violations),
            json: serde_json::to_value(&report).expect("reports serialise"),
            failed: true,
        });
    }
    normal_form_output(&decompose(&c)?)
}

fn cmd_pages(a: &NormalForm, page: Option<u32>, range: Option<&str>) -> Outcome {
    let (lo, hi) = match (page, range) {
        (Some(i), _) => (i, i),
        (None, Some(r)) => {
            let (a, b) = parse_range(r)?;
            let conv = |x: i64| u32::try_from(x).map_err(|_| Failure::Validation(format!("page {x} is below 2")));
            (conv(a)?, conv(b)?)
        }
        (None, None) => (2, degeneracy_page(a)),
    };
    let computed: Result<Vec<Page>, _> = (lo..=hi).map(|i| pages(a, i)).collect();
    let computed = computed.map_err(|e| Failure::Validation(e.to_string()))?;
    let table: String = computed.iter().map(Page::to_table).collect::<Vec<_>>().join("\n");
    let json = if page.is_some() { json!(computed[0]) } else { json!(computed) };
    Output::ok(json, table)
}

fn cmd_cohomology(a: &NormalForm, theory: Theory, modulus: &BigUint, range: &str) -> Outcome {
    let model = CoefficientModel::MinimalEuclidean.name();
    match theory {
        Theory::Witt | Theory::Chow | Theory::ChowMod2 => {
            let (name, g) = match theory {
                Theory::Witt => ("witt", witt_cohomology(a, modulus)),
                Theory::Chow => ("chow", chow(a, false)),
                _ => ("chow-mod2", chow(a, true)),
            };
            let table = g.iter().map(|(d, x)| format!("{d:>4}  {x}\n")).collect();
            let mut json = json!({"model": model, "theory": name, "groups": g});
            if theory == Theory::Witt {
                json["modulus"] = match u64::try_from(modulus) {
                    Ok(m) => json!(m),
                    Err(_) => json!(modulus.to_string()),
                };
            }
            Output::ok(json, table)
        }
        Theory::Mod2 => {
            let h = mod2_motivic(a);
            let table = h.generators.iter().map(|(p, q)| format!("({p}, {q})\n")).collect();
            Output::ok(json!({"model": model, "theory": "mod2", "generators": h.generators}), table)
        }
        Theory::MwDiagonal => {
            let (lo, hi) = parse_range(range)?;
            let rows: Vec<_> = (lo..=hi).map(|n| (n, mw_diagonal(a, n))).collect();
            let table = rows.iter().map(|(n, g)| format!("{n:>4}  {g}\n")).collect();
            let groups: Vec<_> = rows
                .iter()
                .map(|(n, g)| {
                    let mut entry = json!(g);
                    entry["degree"] = json!(n);
                    entry
                })
                .collect();
            Output::ok(json!({"model": model, "theory": "mw-diagonal", "groups": groups}), table)
        }
    }
}

fn cmd_classify(rank: u32, euler: Option<&str>, c2: Option<&BigInt>) -> Outcome {
    let datum = match (euler, c2) {
        (Some(e), None) => Hp1Datum::Euler(parse_gw(e)?),
        (None, Some(c)) => Hp1Datum::C2(c.clone()),
        _ => return Err(Failure::Usage("give exactly one of --euler or --c2".into())),
    };
    let class = hp1_classify(rank, &datum).map_err(|e| Failure::Validation(e.to_string()))?;
    let table = format!(
        "rank {}\nis_free {}\nstably_free_nontrivial {}\n",
        class.rank, class.is_free, class.stably_free_nontrivial
    );
    Output::ok(serde_json::to_value(&class).expect("classes serialise"), table)
}

fn cmd_pbundle(euler: &str) -> Outcome {
    let e = parse_gw(euler)?;
    let c = projective_bundle_hp1(&e).map_err(|e| Failure::Validation(e.to_string()))?;
    let a = decompose(&c)?;
    let table = format!("{}\n{a}\n", c.to_json());
    Output::ok(json!({"complex": c, "normal_form": a}), table)
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct BlowupRequest {
    x: TateComplex,
    z: NormalForm,
    n: i64,
    th: TateComplex,
    #[serde(default)]
    g: Vec<Attachment>,
}

fn cmd_blowup(input: &str) -> Outcome {
    let text = read_input(input)?;
    let req: BlowupRequest = serde_json::from_str(&text).map_err(|e| {
        if e.is_data() && e.to_string().contains("invalid block") {
            Failure::Validation(e.to_string())
        } else {
            Failure::Malformed(e.to_string())
        }
    })?;
    let b = blowup_motive(&req.x, &req.z, req.n, &req.th, &req.g).map_err(|e| Failure::Validation(e.to_string()))?;
    let check = blowup_eta_check(&b);
    let table = format!("total {}\ncone {}\neta {}\neta check {}\n", b.total, b.cone_part, b.eta_terms, check.holds);
    Output::ok(json!({"blowup": b, "eta_check": check}), table)
}

fn cmd_check(suite: &str, seed: u64) -> Outcome {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for name in names {
        log::info!("running suite {name} with seed {seed}");
        let r = run_suite(name, seed)
            .ok_or_else(|| Failure::Usage(format!("unknown suite {name:?}; known: all, {}", SUITES.join(", "))))?;
        reports.push(r);
    }
    let failed = reports.iter().any(|r| !r.passed);
    let table = reports
        .iter()
        .map(|r| format!("{:<16} {} ({} cases)\n", r.suite, if r.passed { "pass" } else { "FAIL" }, r.cases))
        .collect();
    let json = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
    Ok(Output { json, table, failed })
}

fn run(cli: &Cli) -> Outcome {
    cli.model.parse::<CoefficientModel>().map_err(Failure::Usage)?;
    match &cli.command {
        Command::Decompose { input } => cmd_decompose(input),
        Command::Tensor { blocks } => {
            let [a, b] = blocks.as_slice() else {
                return Err(Failure::Usage("tensor takes exactly two --blocks".into()));
            };
            normal_form_output(&tensor(&parse_blocks(a)?, &parse_blocks(b)?))
        }
        Command::Pages { blocks, page, range } => cmd_pages(&parse_blocks(&blocks.blocks)?, *page, range.as_deref()),
        Command::Cohomology { blocks, theory, modulus, range } => {
            cmd_cohomology(&parse_blocks(&blocks.blocks)?, *theory, modulus, range)
        }
        Command::ClassifyHp1 { rank, euler, c2 } => cmd_classify(*rank, euler.as_deref(), c2.as_ref()),
        Command::PbundleHp1 { euler } => cmd_pbundle(euler),
        Command::Blowup { input } => cmd_blowup(input),
        Command::Check { suite, seed } => cmd_check(suite, *seed),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MWTATE_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialise")),
                Format::Table => print!("{}", out.table),
            }
            if out.failed {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Malformed(m)) => {
            eprintln!("error: malformed input: {m}");
            ExitCode::from(EXIT_MALFORMED)
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            println!("{}", json!({"valid": false, "error": m}));
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
