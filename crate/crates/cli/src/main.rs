mod render;
mod reproduce;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdouble::double::{format_fusion, fusion_row, ModularData, QuantumDouble};
use qdouble::group::{parse_group_spec, FiniteGroup, GroupError, GroupOps, DEFAULT_ORDER_CAP};
use qdouble::modinv::{classify_group, find_transposition_invariants};
use qdouble::trivalg::theorem34_permutation;
use qdouble::{character_table, GroupSpec};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "qdouble", version, about = "Exact modular data of quantum doubles of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group order accepted.
    #[arg(long, env = "QDOUBLE_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP, global = true)]
    cap: usize,
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also run the slower cross-checks (fusion oracle on every pair).
    #[arg(long, global = true)]
    slow: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of a group.
    Chartable { spec: String },
    /// Anyons of D(G) with dimensions and twists.
    Anyons { spec: String },
    /// The S matrix of D(G).
    Smatrix { spec: String },
    /// The twists T of D(G).
    Tmatrix { spec: String },
    /// Fusion rules; with two anyons, just their product.
    Fusion { spec: String, x: Option<String>, y: Option<String> },
    /// Transpositions of anyons that are modular invariants.
    Invariants {
        spec: String,
        /// Search for transpositions composed with charge conjugation.
        #[arg(long)]
        pj: bool,
    },
    /// The auto-equivalence of Z(AGL1:q) built from a twisted subgroup of G x G.
    Equivalence { spec: String },
    /// Decide whether G is the affine group of a near-field.
    Classify { spec: String },
    /// Reproduce a worked example: s3, a6, affine:<q> or toric.
    Reproduce { target: String },
}

pub enum CliError {
    Usage { message: String, hint: String },
    Compute { message: String, hint: String },
}

impl CliError {
    fn usage(message: impl Into<String>, hint: impl Into<String>) -> Self {
        CliError::Usage { message: message.into(), hint: hint.into() }
    }
    pub fn compute(message: impl Into<String>, hint: impl Into<String>) -> Self {
        CliError::Compute { message: message.into(), hint: hint.into() }
    }
    fn code(&self) -> u8 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Compute { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, h) = match self {
            CliError::Usage { message, hint } | CliError::Compute { message, hint } => (message, hint),
        };
        write!(f, "error: {m}\nhint: {h}")
    }
}

fn compute_err(e: impl fmt::Display) -> CliError {
    CliError::compute(e.to_string(), "this indicates an internal inconsistency; please report the command line")
}

fn build_group(spec: &str, cap: usize) -> Result<(GroupSpec, FiniteGroup), CliError> {
    let parsed = parse_group_spec(spec).map_err(|e| {
        CliError::usage(
            e.to_string(),
            "group specs look like Z:4, D:4, S:3, A:6, AGL1:5, NF:J9 or perm:[[1,0,2],[1,2,0]]",
        )
    })?;
    let g = parsed.build(cap).map_err(|e| match e {
        GroupError::CapExceeded { cap } => CliError::compute(
            format!("group order exceeds the cap of {cap}"),
            "raise the limit with --cap N or the QDOUBLE_ORDER_CAP environment variable",
        ),
        GroupError::NotPrimePower(q) => {
            CliError::usage(format!("{q} is not a prime power"), "AGL1:q needs q = p^k <= 64")
        }
        other => CliError::usage(other.to_string(), "check the generators and field size"),
    })?;
    Ok((parsed, g))
}

fn modular_data(qd: &QuantumDouble) -> Result<ModularData, CliError> {
    qd.modular_data().map_err(compute_err)
}

fn resolve_anyon(qd: &QuantumDouble, name: &str) -> Result<usize, CliError> {
    qd.anyon_by_name(name).ok_or_else(|| {
        CliError::usage(
            format!("unknown anyon {name:?}"),
            "use a name from `qdouble anyons <spec>` or a zero-based index",
        )
    })
}

/// Text and JSON renderings of one command's result.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
}

impl Output {
    pub fn new(text: String, json: impl Serialize) -> Self {
        Output { text, json: serde_json::to_value(json).expect("results serialize") }
    }
}

#[derive(Serialize)]
struct PairJson {
    x: usize,
    y: usize,
    x_name: String,
    y_name: String,
    chargeon_fluxion: bool,
}

#[derive(Serialize)]
struct FusionProductJson {
    group: String,
    x: String,
    y: String,
    product: Vec<(String, u32)>,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Chartable { spec } => {
            let (_, g) = build_group(spec, cli.cap)?;
            let t = character_table(&g);
            Ok(Output::new(render::character_table(&g, &t), t.to_json()))
        }
        Command::Anyons { spec } => {
            let (parsed, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            let t = qd.t_matrix();
            Ok(Output::new(render::anyons(&qd, &t), render::anyons_json(&parsed, &qd, &t)))
        }
        Command::Smatrix { spec } => {
            let (parsed, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            let s = qd.s_matrix();
            Ok(Output::new(render::matrix(qd.names(), &s), render::smatrix_json(&parsed, &qd, &s)))
        }
        Command::Tmatrix { spec } => {
            let (parsed, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            let t = qd.t_matrix();
            Ok(Output::new(render::twists(qd.names(), &t), render::tmatrix_json(&parsed, &qd, &t)))
        }
        Command::Fusion { spec, x, y } => {
            let (parsed, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            match (x, y) {
                (Some(x), Some(y)) => {
                    let (x, y) = (resolve_anyon(&qd, x)?, resolve_anyon(&qd, y)?);
                    let row = fusion_row(&qd, &qd.s_matrix(), x, y).map_err(compute_err)?;
                    if cli.slow {
                        let oracle = qd.fusion_oracle(x, y).map_err(compute_err)?;
                        if oracle.iter().zip(&row).any(|(&a, &b)| a != b as i128) {
                            return Err(compute_err("Verlinde and comultiplication fusion disagree"));
                        }
                    }
                    let product = row
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v > 0)
                        .map(|(z, &v)| (qd.name(z).to_string(), v))
                        .collect();
                    let json = FusionProductJson {
                        group: parsed.to_string(),
                        x: qd.name(x).into(),
                        y: qd.name(y).into(),
                        product,
                    };
                    Ok(Output::new(format!("{}\n", format_fusion(qd.names(), &row)), json))
                }
                (None, None) => {
                    let mut md = modular_data(&qd)?;
                    if md.fusion.is_none() {
                        md.fusion = Some(qdouble::double::fusion_tensor(&qd, &md.s).map_err(compute_err)?);
                    }
                    if cli.slow {
                        reproduce::cross_check_fusion(&qd, &md)?;
                    }
                    Ok(Output::new(render::fusion_table(&md), md.to_json()))
                }
                _ => Err(CliError::usage("fusion takes either no anyons or two", "e.g. `qdouble fusion S:3 C C`")),
            }
        }
        Command::Invariants { spec, pj } => {
            let (parsed, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            let md = modular_data(&qd)?;
            let e = qd.group().identity();
            let pairs: Vec<PairJson> = find_transposition_invariants(&md, *pj)
                .into_iter()
                .map(|(x, y)| {
                    let (ax, ay) = (&qd.anyons()[x], &qd.anyons()[y]);
                    let cf = |c: &qdouble::AnyonLabel, f: &qdouble::AnyonLabel| {
                        c.is_chargeon(e) && c.irrep != 0 && !f.is_chargeon(e) && f.is_fluxion()
                    };
                    PairJson {
                        x,
                        y,
                        x_name: qd.name(x).into(),
                        y_name: qd.name(y).into(),
                        chargeon_fluxion: cf(ax, ay) || cf(ay, ax),
                    }
                })
                .collect();
            let mut text = format!(
                "{} invariant transposition{}{}\n",
                pairs.len(),
                if pairs.len() == 1 { "" } else { "s" },
                if *pj { " composed with J" } else { "" }
            );
            for p in &pairs {
                text.push_str(&format!(
                    "({} {}){}\n",
                    p.x_name,
                    p.y_name,
                    if p.chargeon_fluxion { "  chargeon-fluxion" } else { "" }
                ));
            }
            let json = serde_json::json!({ "group": parsed.to_string(), "with_j": pj, "pairs": pairs });
            Ok(Output::new(text, json))
        }
        Command::Equivalence { spec } => {
            let q = match parse_group_spec(spec) {
                Ok(GroupSpec::Affine(q)) => q,
                _ => {
                    return Err(CliError::usage(
                        format!("{spec:?} is not of the form AGL1:q"),
                        "e.g. `qdouble equivalence AGL1:5`",
                    ))
                }
            };
            build_group(spec, cli.cap)?;
            let t = theorem34_permutation(q).map_err(compute_err)?;
            Ok(Output::new(format!("{t}\n"), t.to_json()))
        }
        Command::Classify { spec } => {
            let (_, g) = build_group(spec, cli.cap)?;
            let qd = QuantumDouble::new(g);
            let md = modular_data(&qd)?;
            let v = classify_group(&qd, &md);
            Ok(Output::new(v.to_string(), v.to_json()))
        }
        Command::Reproduce { target } => reproduce::run(target, cli.cap, cli.slow),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}\nhint: pass --threads at most once");
            return ExitCode::from(2);
        }
    }
    let result = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.code());
        }
    };
    let mut body = match cli.format {
        Format::Text => result.text.clone(),
        Format::Json => serde_json::to_string_pretty(&result.json).expect("values serialize") + "\n",
    };
    let reproduce_failed = matches!(cli.command, Command::Reproduce { .. })
        && result.json.get("passed").and_then(serde_json::Value::as_bool) == Some(false);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().write_all(std::mem::take(&mut body).as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}\nhint: check the --out path");
        return ExitCode::from(1);
    }
    if reproduce_failed {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
