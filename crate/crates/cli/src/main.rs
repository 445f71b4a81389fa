use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use k3lat_core::catalog::{build_todorov_lattice, standard_lattice, TodorovSpec};
use k3lat_core::criteria::{fm_partner_count, CriterionStatus, GenusClasses};
use k3lat_core::embed::{find_primitive_embedding, EmbeddingOptions, EmbeddingOutcome};
use k3lat_core::forms::{discriminant_form, FormJson, DEFAULT_ENUMERATION_BOUND, DEFAULT_NODE_BUDGET};
use k3lat_core::isometry::{automorphism_group, isometries_to_json, AutomorphismOptions};
use k3lat_core::json::{matrix_to_json, parse_embedding, parse_lattice, JsonInt, LatticeJson};
use k3lat_core::lattice::{embedding_index, orthogonal_complement, saturation};
use k3lat_core::verify::{verify_paper, VerifyOptions};
use k3lat_core::{Embedding, Error, GramLattice, Signature};

const EXIT_CLAIM: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "k3lat", version, about = "Lattice computations for K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: u64,
    /// Largest discriminant group that is enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    disc_bound: u64,
    /// Coordinate bound on the hyperbolic part of embedding candidates.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    embed_bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Toggle::On)]
    axioms: Toggle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a catalog lattice, a Todorov lattice or a lattice from a Gram file.
    Construct {
        /// Catalog name: U, E8minus, A1, K3, Mukai, diag(a,b,..).
        name: Option<String>,
        /// Todorov pair "alpha,k".
        #[arg(long, conflicts_with_all = ["name", "gram"])]
        todorov: Option<String>,
        /// Lattice JSON file.
        #[arg(long, conflicts_with = "name")]
        gram: Option<PathBuf>,
    },
    /// Run every claim check and print one row per claim.
    VerifyPaper,
    /// Run a single computation.
    Compute {
        #[arg(value_enum)]
        task: Task,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long)]
        amb: Option<PathBuf>,
        /// Class count for fm-count: "one" for a certified single class, or a number.
        #[arg(long)]
        classes: Option<String>,
        /// Comma-separated surjectivity verdicts for fm-count.
        #[arg(long, value_delimiter = ',')]
        verdicts: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Task {
    Disc,
    Complement,
    Saturate,
    Aut,
    Embed,
    FmCount,
}

enum Failure {
    Input(String),
    Budget(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(n) => Failure::Budget(json!({ "status": "budget_exceeded", "nodes": n })),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, u8), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn need<'a>(p: &'a Option<PathBuf>, flag: &str) -> std::result::Result<&'a Path, Failure> {
    p.as_deref().ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

#[derive(Serialize)]
struct LatticeOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    gram: Vec<Vec<JsonInt>>,
    rank: usize,
    signature: Signature,
    determinant: JsonInt,
    even: bool,
    disc_order: JsonInt,
    disc_invariant_factors: Vec<JsonInt>,
}

fn lattice_out(l: &GramLattice) -> Value {
    let a = discriminant_form(l);
    serde_json::to_value(LatticeOut {
        label: l.label().map(str::to_owned),
        gram: matrix_to_json(l.gram()),
        rank: l.rank(),
        signature: l.signature(),
        determinant: JsonInt(l.determinant().clone()),
        even: l.is_even(),
        disc_order: JsonInt(a.order()),
        disc_invariant_factors: a.factors().iter().map(|f| JsonInt(f.clone())).collect(),
    })
    .expect("serializable")
}

fn embedding_out(e: &Embedding) -> std::result::Result<Value, Failure> {
    let sub = e.sublattice()?;
    Ok(json!({
        "embedding": LatticeJson::from_embedding(e),
        "index": JsonInt(embedding_index(e)),
        "sublattice": lattice_out(&sub),
    }))
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), Failure> {
    let bad = || Failure::Input(format!("expected \"alpha,k\", got \"{s}\""));
    let (a, k) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        k.trim().parse().map_err(|_| bad())?,
    ))
}

fn construct(name: Option<String>, todorov: Option<String>, gram: Option<PathBuf>) -> Outcome {
    let l = match (name, todorov, gram) {
        (Some(n), None, None) => standard_lattice(&n)?,
        (None, Some(pair), None) => {
            let (a, k) = parse_pair(&pair)?;
            build_todorov_lattice(&TodorovSpec::reference(a, k)?)?.lattice
        }
        (None, None, Some(path)) => parse_lattice(&read(&path)?)?,
        _ => return Err(Failure::Input("give one of NAME, --todorov or --gram".into())),
    };
    Ok((lattice_out(&l), 0))
}

fn parse_status(s: &str) -> std::result::Result<CriterionStatus, Failure> {
    match s.trim().to_ascii_lowercase().as_str() {
        "certified" | "surjective" => Ok(CriterionStatus::Certified),
        "inconclusive" => Ok(CriterionStatus::Inconclusive),
        "refuted" | "not_surjective" => Ok(CriterionStatus::Refuted),
        other => Err(Failure::Input(format!("unknown verdict \"{other}\""))),
    }
}

fn compute(
    cli: &Cli,
    task: Task,
    input: &Option<PathBuf>,
    sub: &Option<PathBuf>,
    amb: &Option<PathBuf>,
    classes: &Option<String>,
    verdicts: &[String],
) -> Outcome {
    match task {
        Task::Disc => {
            let l = parse_lattice(&read(need(input, "in")?)?)?;
            let a = discriminant_form(&l);
            Ok((
                json!({
                    "order": JsonInt(a.order()),
                    "trivial": a.is_trivial(),
                    "length": a.factors().len(),
                    "milgram_signature": a.milgram_signature(),
                    "signature_mod_8": l.signature().mod8(),
                    "form": FormJson::from_form(&a),
                }),
                0,
            ))
        }
        Task::Complement => {
            let e = parse_embedding(&read(need(input, "in")?)?)?;
            Ok((embedding_out(&orthogonal_complement(&e))?, 0))
        }
        Task::Saturate => {
            let e = parse_embedding(&read(need(input, "in")?)?)?;
            let index = embedding_index(&e);
            let mut out = embedding_out(&saturation(&e))?;
            out["index_in_saturation"] = serde_json::to_value(JsonInt(index)).unwrap();
            Ok((out, 0))
        }
        Task::Aut => {
            let l = parse_lattice(&read(need(input, "in")?)?)?;
            let opts = AutomorphismOptions {
                node_budget: cli.node_budget,
                ..AutomorphismOptions::default()
            };
            match automorphism_group(&l, &opts) {
                Ok(g) => Ok((
                    json!({
                        "order": JsonInt(g.order.clone()),
                        "orbit_lengths": g.orbit_lengths,
                        "generators": isometries_to_json(&g.generators),
                        "nodes": g.nodes,
                    }),
                    0,
                )),
                Err(Error::BudgetExceeded(n)) => Err(Failure::Budget(json!({
                    "status": "budget_exceeded",
                    "nodes": n,
                    "lattice": lattice_out(&l),
                }))),
                Err(e) => Err(e.into()),
            }
        }
        Task::Embed => {
            let s = parse_lattice(&read(need(sub, "sub")?)?)?;
            let a = parse_lattice(&read(need(amb, "amb")?)?)?;
            let opts = EmbeddingOptions {
                box_bound: cli.embed_bound,
                node_budget: cli.node_budget,
                seed: cli.seed,
                ..EmbeddingOptions::default()
            };
            match find_primitive_embedding(&s, &a, &opts)? {
                EmbeddingOutcome::Found {
                    embedding,
                    nodes,
                    restart,
                } => {
                    let t = orthogonal_complement(&embedding);
                    Ok((
                        json!({
                            "status": "found",
                            "nodes": nodes,
                            "restart": restart,
                            "embedding": LatticeJson::from_embedding(&embedding),
                            "primitive": embedding_index(&embedding) == 1.into(),
                            "complement": embedding_out(&t)?,
                        }),
                        0,
                    ))
                }
                EmbeddingOutcome::NotFound { nodes } => Err(Failure::Budget(json!({
                    "status": "not_found",
                    "nodes": nodes,
                    "sub": lattice_out(&s),
                }))),
            }
        }
        Task::FmCount => {
            let classes = match classes.as_deref() {
                Some("one") => GenusClasses::CertifiedOne,
                Some(n) => GenusClasses::Count(
                    n.parse()
                        .map_err(|_| Failure::Input(format!("--classes expects \"one\" or a number, got \"{n}\"")))?,
                ),
                None => return Err(Failure::Input("missing --classes".into())),
            };
            let statuses = verdicts
                .iter()
                .map(|v| parse_status(v))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let count = fm_partner_count(classes, &statuses)?;
            Ok((serde_json::to_value(count).unwrap(), 0))
        }
    }
}

fn text_of(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_of(x, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(format: Format, v: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            text_of(v, 0, &mut s);
            s
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Construct { name, todorov, gram } => construct(name.clone(), todorov.clone(), gram.clone()),
        Command::VerifyPaper => {
            let opts = VerifyOptions {
                seed: cli.seed,
                node_budget: cli.node_budget,
                disc_bound: cli.disc_bound,
                embedding: EmbeddingOptions {
                    box_bound: cli.embed_bound,
                    ..EmbeddingOptions::default()
                },
                axioms: cli.axioms == Toggle::On,
            };
            let report = verify_paper(&opts)?;
            let code = if report.exit_code != 0 { EXIT_CLAIM } else { 0 };
            match cli.format {
                Format::Json => Ok((serde_json::to_value(&report).unwrap(), code)),
                Format::Text => Ok((Value::String(report.to_text()), code)),
            }
        }
        Command::Compute {
            task,
            input,
            sub,
            amb,
            classes,
            verdicts,
        } => compute(cli, *task, input, sub, amb, classes, verdicts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((Value::String(s), code)) => {
            print!("{s}");
            ExitCode::from(code)
        }
        Ok((v, code)) => {
            print!("{}", render(cli.format, &v));
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Budget(partial)) => {
            print!("{}", render(cli.format, &partial));
            eprintln!("error: search budget exhausted");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
